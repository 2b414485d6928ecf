#!/usr/bin/env python3
# test_cli.py
# Tests for the einctl command line and the seeded verification runner

import json

import pytest

import main
from ein.codec import encode_matrix
from ein.config import SuiteConfig
from ein.lie_algebra import basis_U, uplus_basis
from ein.quadratic_forms import Signature
from ein.suite import REGISTRY, run_check, run_suite


def run(capsys, *argv):
    code = main.main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_flow_example(capsys):
    code, out, _ = run(capsys, "flow", "--p", "1", "--q", "2", "--point", "[0,0,0,1,0]", "--s", "1")
    assert code == 0
    assert out.strip() == '{"point":["1/1","0/1","0/1","1/1","0/1"]}'


def test_flow_pretty(capsys):
    code, out, _ = run(capsys, "flow", "--point", "[0,0,0,1,0]", "--pretty")
    assert code == 0
    assert out.strip() == "point: [1:0:0:1:0]"


def test_limit_and_vertex(capsys):
    code, out, _ = run(capsys, "limit", "--point", "[0,0,0,1,0]")
    assert code == 0
    result = json.loads(out)
    assert result["limit"] == ["1/1", "0/1", "0/1", "0/1", "0/1"]
    assert result["attractor_vertex"] == result["limit"]


def test_limit_of_fixed_point_is_domain_error(capsys):
    code, _, err = run(capsys, "limit", "--point", "[1,0,0,0,0]")
    assert code == 2
    assert "FixedSetError" in err


def test_holonomy_example(capsys):
    code, out, _ = run(capsys, "holonomy", "--s", "1", "--t", "1")
    assert code == 0
    result = json.loads(out)
    h = result["h"]
    assert [h[i][i] for i in range(5)] == ["2/1", "2/1", "1/1", "1/2", "1/2"]
    assert h[0][3] == "1/1"
    assert h[1][4] == "-1/1"
    assert result["c_t"] == "1/2"
    assert result["verified"] is True
    assert result["quotient_diagonal"] == ["1/1", "1/2", "1/4"]


def test_holonomy_with_S_conjugator(capsys):
    code, out, _ = run(capsys, "holonomy", "--s", "2", "--t", "1/3", "--conjugator", '["-1/2","1","1"]')
    assert code == 0
    result = json.loads(out)
    assert result["verified"] is True
    assert result["quotient_diagonal"] == ["1/1", "3/5", "9/25"]


def test_holonomy_at_pole(capsys):
    code, _, _ = run(capsys, "holonomy", "--s", "1", "--t", "-1")
    assert code == 2


def test_degree_from_file(capsys, tmp_path):
    sig = Signature(1, 2)
    path = tmp_path / "uplus.json"
    path.write_text(json.dumps({"signature": [1, 2], "basis": [encode_matrix(X.entries()) for X in uplus_basis(sig)]}))
    code, out, _ = run(capsys, "degree", "--basis", str(path))
    assert code == 0
    assert json.loads(out) == {"degree": 1}


def test_chart_roundtrip(capsys):
    code, out, _ = run(capsys, "chart", "--unproject", "[1,2,3]")
    assert code == 0
    point = json.loads(out)["point"]
    assert point == ["1/1", "-1/5", "-2/5", "-3/5", "-1/5"]
    code, out, _ = run(capsys, "chart", "--project", json.dumps(point))
    assert code == 0
    assert json.loads(out) == {"vector": ["1/1", "2/1", "3/1"]}


def test_centralizer_report(capsys):
    code, out, _ = run(capsys, "centralizer", "--p", "1", "--q", "2")
    assert code == 0
    result = json.loads(out)
    assert result["dimension"] == 6
    assert result["family_matches_kernel"] is True
    assert result["heisenberg"]["ideal_dimension"] == 3


def test_develop_single_segment(capsys):
    sig = Signature(1, 2)
    curve = [{"direction": encode_matrix(basis_U(sig, 1).entries()), "from": "0", "to": "2"}]
    code, out, _ = run(capsys, "develop", "--curve", json.dumps(curve))
    assert code == 0
    endpoint = json.loads(out)["endpoint"]
    # exp(2 U_1) = I + 2 U_1
    assert endpoint[1][0] == "2/1"
    assert endpoint[4][3] == "-2/1"


def test_malformed_json_is_input_error(capsys):
    code, _, err = run(capsys, "flow", "--point", "[0,0")
    assert code == 1
    assert "MalformedInput" in err


def test_off_cone_point_is_domain_error(capsys):
    code, _, err = run(capsys, "flow", "--point", "[1,0,0,0,1]")
    assert code == 2
    assert "NotNullError" in err


@pytest.mark.parametrize("argv", [
    ["flow", "--point", "[0,0,0,0,1]"],
    ["flow", "--point", "[0,0,0,0,1]", "--float"],
    ["limit", "--point", "[0,0,0,0,1]"],
    ["holonomy", "--s", "4/3", "--t", "1/2"],
    ["centralizer"],
], ids=["flow", "flow-float", "limit", "holonomy", "centralizer"])
def test_p_zero_refused_as_domain_error(capsys, argv):
    code, out, err = run(capsys, *argv, "--p", "0", "--q", "3")
    assert code == 2
    assert out == ""
    assert "PreconditionError" in err


def test_centralizer_of_subalgebra_at_p_zero(capsys, tmp_path):
    sig = Signature(0, 3)
    path = tmp_path / "sub.json"
    path.write_text(json.dumps({"signature": [0, 3], "basis": [encode_matrix(basis_U(sig, 1).entries())]}))
    code, out, _ = run(capsys, "centralizer", "--p", "0", "--q", "3", "--of", str(path))
    assert code == 0
    result = json.loads(out)
    assert result["projections"] is None
    assert "b_vanishing" not in result


def test_verify_at_p_zero_skips_flow_checks(capsys):
    code, out, _ = run(capsys, "verify", "--signatures", "0,3", "--trials", "1")
    assert code == 0
    report = json.loads(out)
    assert report["summary"]["fail"] == 0
    status = {r["name"]: r["status"] for r in report["checks"]}
    for name in ("base_factorization", "quotient_diagonal", "lambda_factorization", "g_theta",
                 "completeness_factorization", "flow_limit", "tau_flow_matches_matrix",
                 "lightcones_and_geodesics", "kernel_facts", "sl2_embedding", "b_vanishing"):
        assert status[name] == "skip", name
    assert status["stereo_roundtrip"] == "pass"
    print(f"✓ (0,3): {report['summary']}")


def test_usage_error_exits_with_one():
    with pytest.raises(SystemExit) as info:
        main.main(["no-such-command"])
    assert info.value.code == 1


def test_verify_list(capsys):
    code, out, _ = run(capsys, "verify", "--list")
    assert code == 0
    lines = out.strip().splitlines()
    assert "forms null_sampler" in lines
    assert "holonomy base_factorization" in lines
    assert len(lines) == sum(len(checks) for checks in REGISTRY.values())


def test_verify_unknown_suite(capsys):
    code, _, _ = run(capsys, "verify", "--suites", "forms,nope")
    assert code == 1


def test_verify_is_deterministic(capsys):
    argv = ["verify", "--suites", "forms", "--signatures", "1,2", "--trials", "2", "--seed", "7"]
    code, first, _ = run(capsys, *argv)
    assert code == 0
    _, second, _ = run(capsys, *argv)
    assert first == second
    report = json.loads(first)
    assert report["seed"] == 7
    assert report["summary"]["fail"] == 0
    skipped = [c for c in report["checks"] if c["suite"] != "forms"]
    assert skipped and all(c["status"] == "skip" and c["detail"] == "suite not selected" for c in skipped)


def test_seed_precedence(capsys, monkeypatch):
    monkeypatch.setenv("EINCTL_SEED", "5")
    argv = ["verify", "--suites", "forms", "--signatures", "1,2", "--trials", "1"]
    _, out, _ = run(capsys, *argv)
    assert json.loads(out)["seed"] == 5
    _, out, _ = run(capsys, *argv, "--seed", "9")
    assert json.loads(out)["seed"] == 9


def test_verify_output_file(capsys, tmp_path):
    target = tmp_path / "report.json"
    code, out, err = run(capsys, "verify", "--suites", "liealg", "--signatures", "1,2", "--trials", "1",
                         "--output", str(target))
    assert code == 0
    assert out == ""
    assert json.loads(target.read_text())["report_version"] == 1
    assert "passed" in err


def test_full_run_at_smallest_signature():
    cfg = SuiteConfig(signatures=[Signature(1, 2)], trials=1, seed=3)
    report = run_suite(cfg)
    failed = [(r.suite, r.name, r.detail) for r in report.records if r.status == "fail"]
    assert not failed
    assert report.ok
    print(f"✓ all suites at (1,2): {report.counts()}")


def test_b_vanishing_skips_without_witness():
    cfg = SuiteConfig(signatures=[Signature(2, 2)], trials=1, seed=3)
    record = run_check("centralizer", "b_vanishing", Signature(2, 2), cfg)
    assert record.status == "skip"


if __name__ == "__main__":
    raise SystemExit(pytest.main([__file__, "-v"]))
