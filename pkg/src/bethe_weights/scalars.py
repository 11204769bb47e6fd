"""Exact rational scalars and seeded generic sample points.

Every identity in this package is checked as an exact equality of rationals
evaluated at randomly drawn points.  A vanishing denominator anywhere means
the point sits on a degeneracy hyperplane; callers discard it and draw again.
"""
from __future__ import annotations

import random
from dataclasses import dataclass

import gmpy2

Scalar = type(gmpy2.mpq())

SAMPLE_RANGE = 10**4
MAX_REDRAWS = 10**4


class DegenerateSample(ZeroDivisionError):
    """The current sample point hits a vanishing denominator."""


class SingularCorner(DegenerateSample):
    """A Gauss-decomposition pivot block is not invertible at this sample."""


class SamplingExhausted(RuntimeError):
    pass


def scalar(value, denominator=None) -> Scalar:
    """Coerce ints, strings like ``'3/4'``, Fractions or pairs to ``mpq``."""
    if denominator is None:
        return gmpy2.mpq(value)
    if denominator == 0:
        raise DegenerateSample("zero denominator")
    return gmpy2.mpq(value, denominator)


ZERO = scalar(0)
ONE = scalar(1)


def add(a, b):
    return a + b


def sub(a, b):
    return a - b


def mul(a, b):
    return a * b


def neg(a):
    return -a


def inv(a):
    if a == 0:
        raise DegenerateSample("inverse of zero")
    return ONE / a


def div(a, b):
    if b == 0:
        raise DegenerateSample("division by zero")
    return a / b


def fmt(x) -> str:
    x = scalar(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


@dataclass(frozen=True)
class SamplePoint:
    """Generic values for ``q``, the evaluation points ``z`` and Bethe variables ``t``."""

    q: Scalar
    z: tuple
    t: tuple
    seed: int

    def validate(self) -> None:
        if self.q in (0, 1, -1):
            raise ValueError(f"q={self.q} is not generic")
        values = [self.q] + list(self.z) + list(self.t)
        if any(v == 0 for v in values):
            raise ValueError("zero spectral value")
        if len(set(values)) != len(values):
            raise ValueError("spectral values are not pairwise distinct")


def _draw(rng: random.Random) -> Scalar:
    return gmpy2.mpq(rng.randint(1, SAMPLE_RANGE), rng.randint(1, SAMPLE_RANGE))


def sample_point(seed: int, num_factors: int, multiset_size: int) -> SamplePoint:
    """Deterministically draw a generic point; values are ``p/r`` with ``p, r`` in [1, 10^4]."""
    if num_factors < 0 or multiset_size < 0:
        raise ValueError("sizes must be non-negative")
    rng = random.Random(seed)
    redraws = 0

    def fresh(taken):
        nonlocal redraws
        while True:
            x = _draw(rng)
            if x not in taken:
                return x
            redraws += 1
            if redraws > MAX_REDRAWS:
                raise SamplingExhausted(f"seed {seed}: no generic value after {MAX_REDRAWS} redraws")

    q = fresh({ZERO, ONE})
    # q is kept apart from the spectral values as well
    taken = {q}
    values = []
    for _ in range(num_factors + multiset_size):
        x = fresh(taken)
        taken.add(x)
        values.append(x)
    point = SamplePoint(q=q, z=tuple(values[:num_factors]), t=tuple(values[num_factors:]), seed=seed)
    point.validate()
    return point
