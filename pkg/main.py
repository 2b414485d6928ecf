#!/usr/bin/env python3
# main.py
# einctl: command-line entry point for the ein toolkit

import sys
import json
import logging
import argparse

import numpy as np

from ein import cartan_holonomy as ch
from ein import centralizer_structure as cs
from ein import einstein_model as em
from ein import exact
from ein.codec import (
    decode_curve, decode_group_element, decode_subalgebra, decode_vector, dumps, encode_vector,
    load_json, render_matrix, to_jsonable,
)
from ein.config import (
    SUITE_NAMES, apply_environment, get_default_suite_config, parse_signature, parse_suites,
)
from ein.errors import EinError, InputError, NotCommutingError
from ein.lie_algebra import centralizer, element_T, iminus
from ein.nilpotency import lower_central_series
from ein.quadratic_forms import Signature, require_null_translations
from ein.suite import registered_checks, run_suite

logger = logging.getLogger("einctl")


class EinctlParser(argparse.ArgumentParser):
    """Usage errors are input errors: exit status 1."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(InputError.exit_code, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument('-v', '--verbose', action='count', default=0,
                        help='-v for progress logging, -vv for per-trial detail (stderr)')
    common.add_argument('--pretty', action='store_true',
                        help='Render matrices as aligned rational columns instead of JSON')
    common.add_argument('--float', dest='use_float', action='store_true',
                        help='Use the numpy float path where limits or developments are involved')

    signature = argparse.ArgumentParser(add_help=False)
    signature.add_argument('--p', type=int, default=1, help='Signature p (p <= q, p + q >= 3)')
    signature.add_argument('--q', type=int, default=2, help='Signature q')

    parser = EinctlParser(prog='einctl', description='Exact toolkit for Ein^{p,q} and its conformal group')
    sub = parser.add_subparsers(dest='command', metavar='command')
    sub.required = True

    flow = sub.add_parser('flow', parents=[common, signature], help='Apply the flow tau^s to a point')
    flow.add_argument('--point', required=True, help='Homogeneous coordinates as a JSON array')
    flow.add_argument('--s', default='1', help='Flow time (rational)')

    degree = sub.add_parser('degree', parents=[common], help='Nilpotence degree of a subalgebra')
    degree.add_argument('--basis', required=True, help='Subalgebra JSON {"signature": [p,q], "basis": [...]}')

    cent = sub.add_parser('centralizer', parents=[common, signature], help='Structure of the centralizer of T')
    cent.add_argument('--of', dest='of', default=None, help='Subalgebra JSON whose centralizer to compute')

    hol = sub.add_parser('holonomy', parents=[common, signature], help='Holonomy factorization h(s,t)')
    hol.add_argument('--s', required=True, help='Flow time (rational)')
    hol.add_argument('--t', required=True, help='Curve parameter (rational)')
    hol.add_argument('--conjugator', default=None,
                     help='Group element commuting with tau (matrix JSON) or a null u- vector for S')

    chart = sub.add_parser('chart', parents=[common, signature], help='Stereographic projection')
    direction = chart.add_mutually_exclusive_group(required=True)
    direction.add_argument('--project', metavar='POINT', help='Point of Ein to project to R^{p,q}')
    direction.add_argument('--unproject', metavar='VECTOR', help='Vector of R^{p,q} to lift to Ein')

    limit = sub.add_parser('limit', parents=[common, signature], help='Limit of tau^s y as s -> infinity')
    limit.add_argument('--point', required=True, help='Homogeneous coordinates as a JSON array')

    develop = sub.add_parser('develop', parents=[common, signature], help='Development of a piecewise curve')
    develop.add_argument('--curve', required=True,
                         help='JSON list of {"direction": matrix, "from": r, "to": r}')

    verify = sub.add_parser('verify', parents=[common], help='Run the seeded verification suites')
    verify.add_argument('--suites', '--suite', action='append', default=None,
                        help=f'Comma-separated suites ({", ".join(SUITE_NAMES)}); default all')
    verify.add_argument('--signatures', '--signature', action='append', default=None,
                        help='Signature p,q; repeat for several')
    verify.add_argument('--trials', type=int, default=None, help='Base trial count (default 100)')
    verify.add_argument('--seed', type=int, default=None, help='Seed (default 42, or EINCTL_SEED)')
    verify.add_argument('--jobs', type=int, default=1, help='Worker processes')
    verify.add_argument('--timings', action='store_true', help='Record per-check durations')
    verify.add_argument('--output', default=None, help='Write the report to this file')
    verify.add_argument('--list', action='store_true', help='List registered checks and exit')
    return parser


def _signature(args) -> Signature:
    return Signature(args.p, args.q)


def _point(text: str, sig: Signature) -> em.EinPoint:
    coords = decode_vector(load_json(text), sig.ambient_dim)
    return em.EinPoint.of(coords, sig)


def _float_point(text: str, sig: Signature) -> np.ndarray:
    data = load_json(text)
    if not isinstance(data, list) or len(data) != sig.ambient_dim:
        raise InputError(f"expected {sig.ambient_dim} homogeneous coordinates")
    return np.array([float(exact.fraction(x)) if not isinstance(x, float) else x for x in data])


def _is_matrix(value) -> bool:
    return (isinstance(value, list) and bool(value)
            and all(isinstance(row, (list, tuple)) and row and not isinstance(row[0], (list, tuple))
                    for row in value))


def emit(result: dict, pretty: bool):
    if not pretty:
        print(dumps(result))
        return
    for key in sorted(result):
        value = result[key]
        if isinstance(value, np.ndarray):
            value = value.tolist()
        if _is_matrix(value):
            print(f"{key}:")
            print(render_matrix(value))
        elif isinstance(value, list) and value and all(_is_matrix(m) for m in value):
            for k, mat in enumerate(value):
                print(f"{key}[{k}]:")
                print(render_matrix(mat))
        elif isinstance(value, em.EinPoint):
            print(f"{key}: {value}")
        else:
            print(f"{key}: {json.dumps(to_jsonable(value))}")


def cmd_flow(args) -> int:
    sig = _signature(args)
    require_null_translations(sig, "the flow tau^s")
    s = exact.fraction(args.s)
    if args.use_float:
        y = _float_point(args.point, sig)
        emit({"point": em.tau_flow_float(float(s), y, sig.n).tolist()}, args.pretty)
        return 0
    image = em.tau_flow(s, _point(args.point, sig))
    emit({"point": image if args.pretty else encode_vector(image.rep)}, args.pretty)
    return 0


def cmd_degree(args) -> int:
    h = decode_subalgebra(load_json(args.basis))
    series = lower_central_series(h)
    logger.info("lower central series dimensions %s", series.dimensions)
    emit({"degree": series.degree}, args.pretty)
    return 0


def cmd_centralizer(args) -> int:
    sig = _signature(args)
    if args.of is None:
        report = cs.ctau_basis(sig.p, sig.q)
        result = {
            "signature": sig.to_json(),
            "dimension": report.kernel.dimension,
            "expected_dimension": report.expected_dimension,
            "family_matches_kernel": report.passed,
            "basis": [X.entries() for X in report.kernel.basis],
            "heisenberg": cs.heis_structure_report(sig.p, sig.q).to_json(),
        }
        emit(result, args.pretty)
        return 0
    h = decode_subalgebra(load_json(args.of), sig)
    cent = centralizer(h)
    # slot coordinates and b-vanishing are read against T, which needs p >= 1
    has_slots = h.signature.p >= 1
    projections = []
    for C in (cent.basis if has_slots else []):
        try:
            e = cs.disassemble(C)
        except NotCommutingError:
            projections.append(None)
            continue
        projections.append({"a": e.a, "b": e.b, "c": e.c, "s": e.s, "x": list(e.x), "y": list(e.y)})
    result = {
        "signature": h.signature.to_json(),
        "subalgebra_dimension": h.dimension,
        "dimension": cent.dimension,
        "basis": [X.entries() for X in cent.basis],
        "projections": projections if has_slots else None,
    }
    if has_slots and h.contains(element_T(h.signature)):
        try:
            result["b_vanishing"] = {"passed": cs.centralizer_b_vanishing(h).passed}
        except EinError as err:
            logger.info("b-vanishing not applicable: %s", err)
    emit(result, args.pretty)
    return 0


def _conjugator(text: str, sig: Signature):
    data = load_json(text)
    if isinstance(data, list) and data and not isinstance(data[0], list):
        return ch.construct_S_element(iminus(decode_vector(data, sig.n), sig))
    return decode_group_element(data, sig)


def cmd_holonomy(args) -> int:
    sig = _signature(args)
    s, t = exact.fraction(args.s), exact.fraction(args.t)
    if args.conjugator is None:
        factorization = ch.base_factorization(s, sig)
        frame = ch.u_minus_frame(sig)
    else:
        g = _conjugator(args.conjugator, sig)
        factorization = ch.conjugated_factorization(g, s)
        frame = ch.u_minus_frame(sig, g)
    path = factorization.path(t)
    quotient = ch.adjoint_on_quotient(path, frame)
    result = {
        "signature": sig.to_json(),
        "s": s,
        "t": t,
        "c_t": factorization.reparam(t),
        "h": path.entries(),
        "generator": factorization.generator.entries(),
        "verified": factorization.verify(t),
        "quotient_diagonal": [quotient[i][i] for i in range(sig.n)],
    }
    emit(result, args.pretty)
    return 0 if result["verified"] else 3


def cmd_chart(args) -> int:
    sig = _signature(args)
    if args.project is not None:
        emit({"vector": encode_vector(em.stereo_forward(_point(args.project, sig)))}, args.pretty)
    else:
        v = decode_vector(load_json(args.unproject), sig.n)
        x = em.stereo_inverse(v, sig)
        emit({"point": x if args.pretty else encode_vector(x.rep)}, args.pretty)
    return 0


def cmd_limit(args) -> int:
    sig = _signature(args)
    require_null_translations(sig, "limits of the flow tau^s")
    if args.use_float:
        y = _float_point(args.point, sig)
        emit({"limit": em.tau_limit_float(y, sig.n).tolist()}, args.pretty)
        return 0
    y = _point(args.point, sig)
    limit, vertex = em.tau_limit(y), em.attractor_vertex(y)
    if args.pretty:
        emit({"limit": limit, "attractor_vertex": vertex}, True)
    else:
        emit({"limit": encode_vector(limit.rep), "attractor_vertex": encode_vector(vertex.rep)}, False)
    return 0


def cmd_develop(args) -> int:
    sig = _signature(args)
    curve = decode_curve(load_json(args.curve), sig)
    endpoint = ch.develop(curve)
    result = {"signature": sig.to_json(), "endpoint": endpoint.entries(), "segments": len(curve.segments)}
    if args.use_float:
        sampled = ch.develop_sampled(ch.curve_velocity_float(curve), float(curve.start), float(curve.end))
        result["sampled_endpoint"] = sampled.tolist()
        result["sampled_in_group"] = ch.is_group_float(sampled, sig, rtol=1e-9)
    emit(result, args.pretty)
    return 0


def cmd_verify(args) -> int:
    if args.list:
        for suite, name in registered_checks():
            print(f"{suite} {name}")
        return 0
    cfg = apply_environment(get_default_suite_config())
    if args.suites:
        cfg.suites = parse_suites(args.suites)
    if args.signatures:
        cfg.signatures = [parse_signature(text) for text in args.signatures]
    if args.trials is not None:
        cfg.trials = args.trials
    if args.seed is not None:
        cfg.seed = args.seed
    cfg.jobs = args.jobs
    cfg.timings = args.timings
    cfg.validate()

    print(f"Running suites {', '.join(cfg.suites)} on {len(cfg.signatures)} signatures "
          f"(seed {cfg.seed}, trials {cfg.trials})...", file=sys.stderr)
    report = run_suite(cfg)
    text = dumps(report.to_json())
    if args.output:
        with open(args.output, 'w') as f:
            f.write(text + "\n")
        print(f"Report written to {args.output}", file=sys.stderr)
    else:
        print(text)
    counts = report.counts()
    print(f"{counts['pass']} passed, {counts['fail']} failed, {counts['skip']} skipped", file=sys.stderr)
    return 0 if report.ok else 3


COMMANDS = {
    'flow': cmd_flow,
    'degree': cmd_degree,
    'centralizer': cmd_centralizer,
    'holonomy': cmd_holonomy,
    'chart': cmd_chart,
    'limit': cmd_limit,
    'develop': cmd_develop,
    'verify': cmd_verify,
}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)

    level = logging.WARNING if args.verbose == 0 else logging.INFO if args.verbose == 1 else logging.DEBUG
    logging.basicConfig(level=level, stream=sys.stderr, format='%(levelname)s %(name)s: %(message)s')

    try:
        return COMMANDS[args.command](args)
    except EinError as err:
        print(f"einctl: {type(err).__name__}: {err}", file=sys.stderr)
        return err.exit_code
    except KeyboardInterrupt:
        print("\nInterrupted by user.", file=sys.stderr)
        return 130


if __name__ == "__main__":
    sys.exit(main())
