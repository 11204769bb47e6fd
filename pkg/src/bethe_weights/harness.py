"""Seeded verification runs and exact single computations."""
from __future__ import annotations

import json
import time
from dataclasses import asdict, dataclass, field
from typing import Sequence

from .checks import CHECKS, first_mismatch, module_factors, variables_needed
from .evaluation import ModuleShape
from .multisets import PiMultiset
from .projection import w_P
from .scalars import SamplingExhausted, fmt, sample_point
from .trace import w_B

RETRY_BUDGET = 32
MAX_TRIALS = 1 << 16


class ConfigInvalid(ValueError):
    pass


@dataclass(frozen=True)
class RunConfig:
    N: int
    num_factors: int = 1
    pattern: tuple = ()
    seeds: tuple = (0,)
    trials: int = 1
    checks: tuple = tuple(CHECKS)
    # wall-clock timings make reports nondeterministic, so they are opt-in
    timing: bool = False

    def validate(self) -> None:
        if self.N < 2:
            raise ConfigInvalid("N must be at least 2")
        if self.num_factors < 0:
            raise ConfigInvalid("factor count must be non-negative")
        if any(c < 1 or c >= self.N for c in self.pattern):
            raise ConfigInvalid(f"pattern colours must lie in 1..{self.N - 1}")
        if not 1 <= self.trials <= MAX_TRIALS:
            raise ConfigInvalid(f"trials must lie in 1..{MAX_TRIALS}")
        if not self.seeds:
            raise ConfigInvalid("at least one seed is required")
        if any(s < 0 for s in self.seeds):
            raise ConfigInvalid("seeds must be non-negative")
        unknown = [c for c in self.checks if c not in CHECKS]
        if unknown:
            raise ConfigInvalid(f"unknown checks: {', '.join(unknown)}")

    def as_dict(self) -> dict:
        d = asdict(self)
        for k in ("pattern", "seeds", "checks"):
            d[k] = list(d[k])
        return d


@dataclass
class Record:
    check: str
    params: dict
    seed: int
    passed: bool
    witness: dict | None
    millis: int | None = None

    def as_dict(self) -> dict:
        return {
            "check": self.check,
            "params": self.params,
            "seed": self.seed,
            "pass": self.passed,
            "witness": self.witness,
            "millis": self.millis,
        }


@dataclass
class Report:
    config: RunConfig
    records: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.records)

    def to_json(self) -> str:
        doc = {"config": self.config.as_dict(), "pass": self.passed,
               "records": [r.as_dict() for r in self.records]}
        return json.dumps(doc, indent=2, sort_keys=True) + "\n"

    def to_text(self) -> str:
        lines = []
        for r in self.records:
            status = "PASS" if r.passed else "FAIL"
            timing = f" {r.millis} ms" if r.millis is not None else ""
            lines.append(f"{status} {r.check} seed={r.seed} {json.dumps(r.params, sort_keys=True)}{timing}")
            if r.witness:
                lines.append(f"     witness: {json.dumps(r.witness, sort_keys=True)}")
        lines.append(f"overall: {'PASS' if self.passed else 'FAIL'} ({len(self.records)} records)")
        return "\n".join(lines) + "\n"


def trial_seed(base: int, trial: int) -> int:
    return base * MAX_TRIALS + trial


def _witness(label: str, mismatch: dict) -> dict:
    out = {"comparison": label}
    for k, v in mismatch.items():
        out[k] = fmt(v) if k in ("lhs", "rhs") else v
    return out


def run_check(name: str, N: int, factors: int, pattern: PiMultiset, seed: int) -> tuple:
    """Evaluate one check, resampling on degenerate points.

    Returns ``(sample seed, passed, witness, params)``.
    """
    fn = CHECKS[name]
    nf = module_factors(name, factors)
    nvars = variables_needed(name, N, pattern)
    params = {"N": N, "factors": nf, "pattern": list(pattern.colours)}
    for attempt in range(RETRY_BUDGET):
        sample_seed = seed * RETRY_BUDGET + attempt
        point = sample_point(sample_seed, nf, nvars)
        try:
            comparisons = fn(N, nf, pattern, point)
        except ZeroDivisionError:
            continue
        for label, lhs, rhs in comparisons:
            mismatch = first_mismatch(lhs, rhs)
            if mismatch is not None:
                return sample_seed, False, _witness(label, mismatch), params
        params["comparisons"] = len(comparisons)
        return sample_seed, True, None, params
    raise SamplingExhausted(f"{name}: {RETRY_BUDGET} degenerate samples from seed {seed}")


def run(config: RunConfig) -> Report:
    config.validate()
    pattern = PiMultiset(config.pattern)
    report = Report(config)
    order = {name: k for k, name in enumerate(CHECKS)}
    for name in sorted(dict.fromkeys(config.checks), key=order.__getitem__):
        for base in config.seeds:
            for trial in range(config.trials):
                start = time.perf_counter()
                sample_seed, ok, witness, params = run_check(
                    name, config.N, config.num_factors, pattern, trial_seed(base, trial))
                millis = round((time.perf_counter() - start) * 1000) if config.timing else None
                report.records.append(Record(name, params, sample_seed, ok, witness, millis))
    return report


def serialize_vector(vec) -> list:
    return [{"index": i, "numerator": str(x.numerator), "denominator": str(x.denominator)}
            for i, x in vec.nonzero()]


def compute(kind: str, config: RunConfig, seed: int) -> str:
    """Exact weight-function value from one side, as a JSON document."""
    config.validate()
    fn = {"bethe": w_B, "projection": w_P}.get(kind)
    if fn is None:
        raise ConfigInvalid(f"unknown kind {kind!r}")
    I = PiMultiset(config.pattern)
    for attempt in range(RETRY_BUDGET):
        sample_seed = seed * RETRY_BUDGET + attempt
        point = sample_point(sample_seed, config.num_factors, len(I))
        shape = ModuleShape(config.N, point.z, point.q)
        try:
            vec = fn(shape, I, point.t)
        except ZeroDivisionError:
            continue
        doc = {
            "N": config.N,
            "pattern": list(I.colours),
            "sample": {"seed": sample_seed, "q": fmt(point.q), "z": [fmt(x) for x in point.z],
                       "t": [fmt(x) for x in point.t]},
            "dimension": vec.dim,
            "components": serialize_vector(vec),
        }
        return json.dumps(doc, indent=2, sort_keys=True) + "\n"
    raise SamplingExhausted(f"{RETRY_BUDGET} degenerate samples from seed {seed}")


def default_suite(seeds: Sequence[int] = (0,), trials: int = 5) -> list:
    """Every check at ``N ∈ {2, 3}``, up to two factors, patterns of size at most two."""
    from .multisets import all_patterns

    configs = []
    for N in (2, 3):
        for factors in (1, 2):
            for I in all_patterns(N, 2):
                configs.append(RunConfig(N, factors, I.colours, tuple(seeds), trials))
    return configs
