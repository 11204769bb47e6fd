"""Nested algebraic Bethe ansatz: monodromy, trace formula and its modified weight function.

State tensors have one axis per auxiliary copy of ``C^N``, then one axis per
module factor, then optional trailing column axes.  ``L^{(k)}(u)`` on such a
state is applied factor by factor as ``R^{+,(k,f_n)}(u, z_n) ⋯ R^{+,(k,f_1)}(u, z_1)``,
which is the same operator as :func:`~bethe_weights.evaluation.l_plus`
placed in auxiliary slot ``k``.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, Sequence

import numpy as np

from .evaluation import ModuleShape, singular_vector
from .multisets import PiMultiset, canonical_sort, pullback_tilde
from .rmatrix import r_matrix, r_plus, r_product_order
from .scalars import ONE, div, scalar
from .tensor import DenseOperator, KetVector, _zeros, apply_local, identity


@dataclass(frozen=True)
class BarN:
    counts: tuple

    def __init__(self, counts: Sequence[int]):
        counts = tuple(int(c) for c in counts)
        if any(c < 0 for c in counts):
            raise ValueError("negative colour count")
        object.__setattr__(self, "counts", counts)

    @property
    def M(self) -> int:
        return sum(self.counts)

    def colours(self) -> tuple:
        return tuple(a for a, n in enumerate(self.counts, start=1) for _ in range(n))


def _apply_l(state, shape: ModuleShape, slot: int, u, M: int):
    N, q = shape.N, shape.q
    for a, z in enumerate(shape.z):
        state = apply_local(state, r_plus(N, u, z, q).data, (slot, M + a))
    return state


def _apply_r_product(state, N: int, u: Sequence, q):
    for j, i in reversed(r_product_order(len(u))):
        state = apply_local(state, r_matrix(N, u[j - 1], u[i - 1], q).data, (j - 1, i - 1))
    return state


def _apply_monodromy(state, shape: ModuleShape, u: Sequence, variant: str):
    M = len(u)
    if variant == "left":
        # L^{(1)} ⋯ L^{(M)} · R-product
        state = _apply_r_product(state, shape.N, u, shape.q)
        for k in reversed(range(M)):
            state = _apply_l(state, shape, k, u[k], M)
    elif variant == "right":
        # R-product · L^{(M)} ⋯ L^{(1)}
        for k in range(M):
            state = _apply_l(state, shape, k, u[k], M)
        state = _apply_r_product(state, shape.N, u, shape.q)
    else:
        raise ValueError(f"unknown monodromy variant {variant!r}")
    return state


def monodromy_T(shape: ModuleShape, u: Sequence, variant: str = "left") -> DenseOperator:
    """``T_[M](u_1..u_M)`` on ``(C^N)^{⊗M} ⊗ V`` (auxiliary slots first)."""
    u = [scalar(x) for x in u]
    M, N = len(u), shape.N
    dim = N**M * shape.dim
    cols = identity(dim).data.reshape((N,) * (M + shape.n) + (dim,))
    out = _apply_monodromy(cols, shape, u, variant)
    return DenseOperator(out.reshape(dim, dim))


def _matrix_element(shape: ModuleShape, colours: Sequence[int], u: Sequence, vectors: np.ndarray,
                    variant: str) -> np.ndarray:
    """``⟨c| T(u) |c + 1⟩`` applied to module vectors (shape ``(dim V, cols)``).

    ``tr(T · ⊗_s e_{c_s+1, c_s})`` reduces to this single auxiliary matrix element.
    """
    N, M = shape.N, len(colours)
    cols = vectors.shape[1]
    state = _zeros((N,) * M + (shape.dim, cols))
    state[tuple(c for c in colours)] = vectors  # 0-based index c means basis vector e_{c+1}
    state = state.reshape((N,) * (M + shape.n) + (cols,))
    state = _apply_monodromy(state, shape, u, variant)
    return state[tuple(c - 1 for c in colours)].reshape(shape.dim, cols)


def _prefactor(counts: Sequence[int], t: Sequence, q):
    out = ONE
    start = 0
    for n in counts:
        block = t[start:start + n]
        for i in range(n):
            for j in range(i + 1, n):
                out *= div(block[i] - block[j], block[i] / q - q * block[j])
        start += n
    return out


def bethe_B(shape: ModuleShape, nbar: BarN | Sequence[int], t: Sequence) -> KetVector:
    """``B_n̄(t̄) v`` with ``t`` listed colour block by colour block."""
    nbar = nbar if isinstance(nbar, BarN) else BarN(nbar)
    if len(nbar.counts) != shape.N - 1:
        raise ValueError(f"n̄ must have {shape.N - 1} entries")
    t = tuple(scalar(x) for x in t)
    if len(t) != nbar.M:
        raise ValueError("one variable per multiset element is required")
    v = singular_vector(shape).data.reshape(-1, 1)
    if nbar.M == 0:
        return KetVector(v)
    pre = _prefactor(nbar.counts, t, shape.q)
    col = _matrix_element(shape, nbar.colours(), t, v, "left")
    return KetVector(col.reshape(-1) * pre)


def _partial_colours(l: int, k: int, N: int) -> tuple:
    if not 1 <= l <= k + 1 <= N:
        raise ValueError(f"need 1 <= l <= k + 1 <= N, got l={l}, k={k}, N={N}")
    return tuple(range(l, k + 1))


def bethe_partial_apply(shape: ModuleShape, l: int, k: int, t: Mapping[int, object],
                        vector: KetVector) -> KetVector:
    """``B_[l,k](t^l, .., t^k)`` applied to an arbitrary module vector; ``t`` is keyed by colour."""
    colours = _partial_colours(l, k, shape.N)
    if not colours:
        return vector
    u = [scalar(t[c]) for c in colours]
    col = _matrix_element(shape, colours, u, vector.data.reshape(-1, 1), "right")
    return KetVector(col.reshape(-1))


def bethe_partial(shape: ModuleShape, l: int, k: int, t: Mapping[int, object]) -> DenseOperator:
    colours = _partial_colours(l, k, shape.N)
    if not colours:
        return identity(shape.dim)
    u = [scalar(t[c]) for c in colours]
    return DenseOperator(_matrix_element(shape, colours, u, identity(shape.dim).data, "right"))


def w_B(shape: ModuleShape, I: PiMultiset, t: Sequence) -> KetVector:
    """Modified weight function from the trace formula on any ordered multiset."""
    I.check_rank(shape.N)
    t = tuple(scalar(x) for x in t)
    if len(t) != len(I):
        raise ValueError("one variable per multiset element is required")
    sorted_I, sigma = canonical_sort(I)
    nbar = sorted_I.counts(shape.N)
    return pullback_tilde(lambda s: bethe_B(shape, nbar, s), sigma, I, shape.q)(t)
