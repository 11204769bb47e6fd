"""Projections of products of Drinfeld currents, evaluated on modules.

The projection of ``F_k(t^k) ⋯ F_l(t^l)`` is never built as an algebra element.
On a module it is the operator ``W(l, k)`` fixed by

    W(k+1, k) = 1,
    W(l, k)   = Σ_{m=l+1}^{k+1} W(m, k) (q - q^{-1})^{m-l-1} F^+_{l,m}(t^{m-1})
                                ∏_{j=l+1}^{m-1} t^j / (t^j - t^{j-1}),

where ``F^+`` are Gauss coordinates of ``L^+`` on the module.  Weight functions
on tensor products are assembled from single factors by the coproduct rule.
"""
from __future__ import annotations

from functools import lru_cache
from typing import Mapping, Sequence

from .evaluation import ModuleShape, l_plus, singular_vector, weight_series
from .gauss import gauss
from .multisets import PiMultiset, canonical_sort, phi_tilde, pullback_tilde, splits
from .scalars import ONE, div, scalar
from .tensor import DenseOperator, KetVector, identity, kron_vectors


@lru_cache(maxsize=256)
def gauss_F(shape: ModuleShape, u) -> dict:
    """Upper Gauss coordinates ``F^+_{ij}(u)`` of ``L^+(u)`` on ``shape``, memoized."""
    return gauss(l_plus(shape, u)).F


def _coefficient(dq, t, a: int, m: int):
    coeff = dq ** (m - a - 1)
    for j in range(a + 1, m):
        coeff *= div(t[j], t[j] - t[j - 1])
    return coeff


def projected_staircase(shape: ModuleShape, l: int, k: int, t: Mapping[int, object]) -> DenseOperator:
    """``W(l, k)``: the projection of ``F_k(t^k) ⋯ F_l(t^l)`` as a module operator."""
    N, q = shape.N, shape.q
    if not 1 <= l <= k + 1 <= N:
        raise ValueError(f"need 1 <= l <= k + 1 <= N, got l={l}, k={k}, N={N}")
    t = {c: scalar(t[c]) for c in range(l, k + 1)}
    dq = q - 1 / q

    def F(col: int) -> dict:
        return gauss_F(shape, t[col])

    @lru_cache(maxsize=None)
    def W(a: int) -> DenseOperator:
        if a == k + 1:
            return identity(shape.dim)
        acc = None
        for m in range(a + 1, k + 2):
            term = W(m) @ F(m - 1)[a, m] * _coefficient(dq, t, a, m)
            acc = term if acc is None else acc + term
        return acc

    return W(l)


def projected_staircase_apply(shape: ModuleShape, l: int, k: int, t: Mapping[int, object],
                              vector: KetVector) -> KetVector:
    """``W(l, k) vector`` using matrix-vector products only."""
    N, q = shape.N, shape.q
    if not 1 <= l <= k + 1 <= N:
        raise ValueError(f"need 1 <= l <= k + 1 <= N, got l={l}, k={k}, N={N}")
    t = {c: scalar(t[c]) for c in range(l, k + 1)}
    dq = q - 1 / q

    def W(a: int, x: KetVector) -> KetVector:
        if a == k + 1:
            return x
        acc = None
        for m in range(a + 1, k + 2):
            term = W(m, gauss_F(shape, t[m - 1])[a, m] @ x) * _coefficient(dq, t, a, m)
            acc = term if acc is None else acc + term
        return acc

    return W(l, vector)


def staircase_value(shape: ModuleShape, t: Sequence) -> KetVector:
    """``W(1, k) v ∏_j Λ_{j+1}(t^j)`` for the staircase ``(1, 2, .., k)``."""
    k = len(t)
    v = singular_vector(shape)
    if k == 0:
        return v
    tt = {c: scalar(x) for c, x in enumerate(t, start=1)}
    factor = ONE
    for c, x in tt.items():
        factor *= weight_series(shape, c + 1, x)
    return projected_staircase_apply(shape, 1, k, tt, v) * factor


def w_P_single(shape: ModuleShape, I: PiMultiset, t: Sequence) -> KetVector:
    if shape.n != 1:
        raise ValueError("w_P_single needs a one-factor module")
    I.check_rank(shape.N)
    sorted_I, sigma = canonical_sort(I)
    if sorted_I.colours != tuple(range(1, len(I) + 1)):
        return KetVector([0] * shape.dim)
    t = tuple(scalar(x) for x in t)
    return pullback_tilde(lambda s: staircase_value(shape, s), sigma, I, shape.q)(t)


def coproduct_term(first: ModuleShape, rest: ModuleShape, I: PiMultiset, t: Sequence, split,
                   w_first, w_rest) -> KetVector:
    """One split of the modified coproduct rule on ``first ⊗ rest``."""
    q = first.q
    left = I.sub(split.left)
    right = I.sub(split.right)
    factor = phi_tilde(split, I, t, q)
    for p in split.left:
        factor *= weight_series(rest, I.colours[p], t[p])
    for p in split.right:
        factor *= weight_series(first, I.colours[p] + 1, t[p])
    if factor == 0:
        return KetVector([0] * (first.dim * rest.dim))
    a = w_first(first, left, tuple(t[p] for p in split.left))
    b = w_rest(rest, right, tuple(t[p] for p in split.right))
    return kron_vectors([a, b]) * factor


def expand_coproduct(first: ModuleShape, rest: ModuleShape, I: PiMultiset, t: Sequence,
                     w_first, w_rest) -> KetVector:
    acc = None
    for sp in splits(I):
        term = coproduct_term(first, rest, I, t, sp, w_first, w_rest)
        acc = term if acc is None else acc + term
    return acc


def w_P(shape: ModuleShape, I: PiMultiset, t: Sequence, nesting: str = "left") -> KetVector:
    """Modified weight function from projections, assembled factor by factor.

    ``nesting="left"`` splits ``V_1 ⊗ (V_2 ⊗ ...)``; ``"right"`` splits ``(... ⊗ V_{n-1}) ⊗ V_n``.
    """
    I.check_rank(shape.N)
    t = tuple(scalar(x) for x in t)
    if len(t) != len(I):
        raise ValueError("one variable per multiset element is required")
    if shape.n == 0:
        if len(I):
            return KetVector([0])
        return singular_vector(shape)
    if shape.n == 1:
        return w_P_single(shape, I, t)

    def rec(s, J, tt):
        return w_P(s, J, tt, nesting)

    k = 1 if nesting == "left" else shape.n - 1
    first, rest = shape.split(k)
    return expand_coproduct(first, rest, I, t, rec, rec)
