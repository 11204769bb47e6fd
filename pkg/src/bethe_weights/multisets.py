"""Ordered coloured multisets and the rational kernels attached to them.

Elements are identified by their 0-based position; an assignment of Bethe
variables is a tuple aligned with those positions.  A colour-preserving
bijection ``σ: I → J`` is a tuple with ``sigma[i]`` the position in ``J`` of
the image of element ``i``.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import permutations, product
from typing import Callable, Iterator, Sequence

from .scalars import ONE, div
from .tensor import KetVector

WeightFunction = Callable[["PiMultiset", tuple], KetVector]


@dataclass(frozen=True)
class PiMultiset:
    colours: tuple

    def __init__(self, colours: Sequence[int] = ()):
        object.__setattr__(self, "colours", tuple(int(c) for c in colours))
        if any(c < 1 for c in self.colours):
            raise ValueError(f"colours must be positive, got {self.colours}")

    def __len__(self) -> int:
        return len(self.colours)

    def __iter__(self):
        return iter(self.colours)

    def check_rank(self, N: int) -> None:
        if any(c > N - 1 for c in self.colours):
            raise ValueError(f"colours {self.colours} outside 1..{N - 1}")

    def sub(self, positions: Sequence[int]) -> "PiMultiset":
        return PiMultiset(self.colours[p] for p in positions)

    def reversed(self) -> "PiMultiset":
        return PiMultiset(self.colours[::-1])

    def counts(self, N: int) -> tuple:
        """``n̄``: the number of elements of each colour ``1..N-1``."""
        self.check_rank(N)
        return tuple(self.colours.count(a) for a in range(1, N))


@dataclass(frozen=True)
class Split:
    left: tuple
    right: tuple


def staircase(counts: Sequence[int]) -> PiMultiset:
    """The special multiset with colours sorted increasingly, ``counts[a-1]`` of colour ``a``."""
    return PiMultiset(c for a, n in enumerate(counts, start=1) for c in [a] * n)


def gamma(ti, tj, ci: int, cj: int, q):
    qi = 1 / q
    if ci == cj + 1:
        return div(q * ti - qi * tj, ti - tj)
    if cj == ci + 1:
        return div(ti - tj, qi * ti - q * tj)
    if ci == cj:
        return div(qi * ti - q * tj, q * ti - qi * tj)
    return ONE


def gamma_tilde(ti, tj, ci: int, cj: int, q):
    qi = 1 / q
    if ci == cj + 1:
        return div(ti - tj, q * ti - qi * tj)
    if cj == ci + 1:
        return div(qi * ti - q * tj, ti - tj)
    return ONE


def beta(ti, tj, ci: int, cj: int, q):
    if ci == cj:
        return div(ti / q - q * tj, ti - tj)
    return ONE


def splits(I: PiMultiset) -> Iterator[Split]:
    """All ``2^n`` order-preserving splits; bit ``p`` of the counter set means position ``p`` goes right."""
    n = len(I)
    for mask in range(2**n):
        left = tuple(p for p in range(n) if not mask >> p & 1)
        right = tuple(p for p in range(n) if mask >> p & 1)
        yield Split(left, right)


def phi(split: Split, I: PiMultiset, t: Sequence, q):
    out = ONE
    c = I.colours
    for i in split.left:
        for j in split.right:
            if i < j:
                out *= gamma(t[i], t[j], c[i], c[j], q)
    return out


def phi_tilde(split: Split, I: PiMultiset, t: Sequence, q):
    out = ONE
    c = I.colours
    for i in split.left:
        for j in split.right:
            out *= beta(t[i], t[j], c[i], c[j], q)
    for i in split.right:
        for j in split.left:
            if i < j:
                out *= gamma_tilde(t[i], t[j], c[i], c[j], q)
    return out


def canonical_sort(I: PiMultiset) -> tuple:
    """Stable sort by colour: returns ``(I_n̄, σ)`` with ``σ[i]`` the sorted position of ``i``."""
    order = sorted(range(len(I)), key=lambda p: (I.colours[p], p))
    sigma = [0] * len(I)
    for new, old in enumerate(order):
        sigma[old] = new
    return PiMultiset(I.colours[p] for p in order), tuple(sigma)


def is_colour_bijection(sigma: Sequence[int], I: PiMultiset, J: PiMultiset) -> bool:
    return (
        sorted(sigma) == list(range(len(I)))
        and len(I) == len(J)
        and all(J.colours[sigma[i]] == I.colours[i] for i in range(len(I)))
    )


def colour_bijections(I: PiMultiset) -> Iterator[tuple]:
    """Every ``(J, σ)`` with ``J`` a reordering of the colours of ``I`` and ``σ: I → J`` colour preserving."""
    n = len(I)
    for perm in permutations(range(n)):
        # perm[p] is the element of I placed at position p of J
        J = PiMultiset(I.colours[perm[p]] for p in range(n))
        sigma = [0] * n
        for p, i in enumerate(perm):
            sigma[i] = p
        yield J, tuple(sigma)


def _pull_values(t: Sequence, sigma: Sequence[int]) -> tuple:
    s = [None] * len(t)
    for i, x in enumerate(t):
        s[sigma[i]] = x
    return tuple(s)


def _pullback(kernel, w: Callable, sigma: Sequence[int], I: PiMultiset, q) -> Callable:
    c = I.colours
    n = len(I)
    inversions = [(i, j) for i in range(n) for j in range(i + 1, n) if sigma[j] < sigma[i]]

    def pulled(t: Sequence):
        factor = ONE
        for i, j in inversions:
            factor *= kernel(t[i], t[j], c[i], c[j], q)
        return w(_pull_values(t, sigma)) * factor

    return pulled


def pullback_gamma(w: Callable, sigma: Sequence[int], I: PiMultiset, q) -> Callable:
    """``^{σ,γ}w``: ``w`` takes the variables of the target multiset in its own order."""
    return _pullback(gamma, w, sigma, I, q)


def pullback_tilde(w: Callable, sigma: Sequence[int], I: PiMultiset, q) -> Callable:
    return _pullback(gamma_tilde, w, sigma, I, q)


def _lambda_product(weight, I: PiMultiset, t: Sequence):
    out = ONE
    for c, x in zip(I.colours, t):
        out *= weight(c + 1, x)
    return out


def modify(w: WeightFunction, weight: Callable, I: PiMultiset, t: Sequence, q) -> KetVector:
    """Modified value from an ordinary weight function.

    ``weight(b, u)`` is the weight series ``Λ_b(u)`` of the module ``w`` lives on.
    """
    n = len(I)
    factor = _lambda_product(weight, I, t)
    for i in range(n):
        for j in range(i + 1, n):
            factor *= beta(t[i], t[j], I.colours[i], I.colours[j], q)
    return w(I.reversed(), tuple(t[::-1])) * factor


def unmodify(w: WeightFunction, weight: Callable, I: PiMultiset, t: Sequence, q) -> KetVector:
    n = len(I)
    factor = _lambda_product(weight, I, t)
    for i in range(n):
        for j in range(i + 1, n):
            factor *= beta(t[j], t[i], I.colours[j], I.colours[i], q)
    return w(I.reversed(), tuple(t[::-1])) * div(ONE, factor)


def all_patterns(N: int, max_size: int) -> list:
    return [PiMultiset(p) for size in range(max_size + 1) for p in product(range(1, N), repeat=size)]
