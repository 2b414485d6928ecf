# config.py
# Verification suite configuration: default tables, validation and environment overrides

import logging
import os
from dataclasses import dataclass, field, replace
from typing import Dict, List, Optional, Sequence, Tuple

from .errors import InputError, MalformedInput, UnknownSuite
from .quadratic_forms import Signature

logger = logging.getLogger(__name__)

SUITE_NAMES = ("forms", "liealg", "nilpotency", "model", "holonomy", "centralizer")

SEED_ENV = "EINCTL_SEED"
MAX_SEED = 2 ** 64 - 1
DEFAULT_TRIALS = 100


@dataclass
class SuiteConfig:
    signatures: List[Signature] = field(default_factory=list)
    trials: int = DEFAULT_TRIALS
    seed: int = 42
    suites: Tuple[str, ...] = SUITE_NAMES
    jobs: int = 1
    timings: bool = False

    def validate(self) -> "SuiteConfig":
        if not isinstance(self.trials, int) or self.trials < 1:
            raise InputError(f"trials must be a positive integer, got {self.trials!r}")
        if not 0 <= self.seed <= MAX_SEED:
            raise InputError(f"seed must lie in 0 .. 2^64 - 1, got {self.seed}")
        if not self.suites:
            raise InputError("at least one suite must be selected")
        for name in self.suites:
            if name not in SUITE_NAMES:
                raise UnknownSuite(f"unknown suite {name!r}; choose from {', '.join(SUITE_NAMES)}")
        if not self.signatures:
            raise InputError("at least one signature is required")
        if self.jobs < 1:
            raise InputError(f"jobs must be at least 1, got {self.jobs}")
        return self

    def selects(self, suite: str) -> bool:
        return suite in self.suites

    def to_json(self) -> Dict:
        return {
            "signatures": [s.to_json() for s in self.signatures],
            "trials": self.trials,
            "seed": self.seed,
            "suites": list(self.suites),
        }


def get_default_suite_config() -> SuiteConfig:
    return SuiteConfig(
        signatures=[Signature(1, 2), Signature(1, 3), Signature(2, 2)],
        trials=DEFAULT_TRIALS,
        seed=42,
        suites=SUITE_NAMES,
    )


# Trial counts per check at the default of 100 trials; scaled linearly otherwise
CHECK_TRIALS = {
    "degree_bound": 200,
    "q_bracket_laws": 200,
    "flow_limit_float": 100,
    "base_factorization": 50,
    "null_line_boundary": 50,
    "conjugated_factorization": 20,
    "stereo_conformality": 20,
    "triangle_development": 20,
}


def scaled_trials(check: str, trials: int, default: Optional[int] = None) -> int:
    base = CHECK_TRIALS.get(check, default if default is not None else DEFAULT_TRIALS)
    return max(1, (base * trials) // DEFAULT_TRIALS)


def parse_signature(text: str) -> Signature:
    """Accept "p,q" or "(p,q)"."""
    cleaned = text.strip().strip("()[]")
    parts = [s.strip() for s in cleaned.split(",")]
    if len(parts) != 2:
        raise MalformedInput(f"signature must look like p,q, got {text!r}")
    try:
        return Signature(int(parts[0]), int(parts[1]))
    except ValueError:
        raise MalformedInput(f"signature must look like p,q, got {text!r}")


def parse_suites(names: Sequence[str]) -> Tuple[str, ...]:
    picked = []
    for entry in names:
        for name in entry.split(","):
            name = name.strip()
            if not name:
                continue
            if name not in SUITE_NAMES:
                raise UnknownSuite(f"unknown suite {name!r}; choose from {', '.join(SUITE_NAMES)}")
            if name not in picked:
                picked.append(name)
    return tuple(picked)


def apply_environment(cfg: SuiteConfig, environ: Optional[Dict[str, str]] = None) -> SuiteConfig:
    environ = os.environ if environ is None else environ
    raw = environ.get(SEED_ENV)
    if raw is None or raw == "":
        return cfg
    try:
        seed = int(raw, 0)
    except ValueError:
        raise MalformedInput(f"{SEED_ENV}={raw!r} is not an integer")
    logger.info("seed overridden by %s: %d", SEED_ENV, seed)
    return replace(cfg, seed=seed)
