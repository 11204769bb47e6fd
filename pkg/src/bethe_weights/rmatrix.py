"""Trigonometric R-matrix of the vector representation and its normalizations."""
from __future__ import annotations

from typing import Sequence

from .scalars import ONE, DegenerateSample, div, scalar
from .tensor import (
    DenseOperator,
    TensorShape,
    _zeros,
    compose,
    embed,
    identity,
    inverse,
    swap_conjugate,
)


def r_matrix(N: int, u, v, q) -> DenseOperator:
    """``R(u, v)`` on ``C^N ⊗ C^N``, first tensor factor most significant."""
    if N < 2:
        raise ValueError("N must be at least 2")
    u, v, q = scalar(u), scalar(v), scalar(q)
    if u == v:
        raise DegenerateSample("R(u, v) at u = v")
    qi = ONE / q
    diag = div(q * u - qi * v, u - v)
    lower = div((q - qi) * v, u - v)  # e_ij ⊗ e_ji, i < j
    upper = div((q - qi) * u, u - v)  # e_ji ⊗ e_ij, i < j
    data = _zeros((N * N, N * N))
    for i in range(N):
        data[i * N + i, i * N + i] = diag
        for j in range(N):
            if i != j:
                data[i * N + j, i * N + j] = ONE
    for i in range(N):
        for j in range(i + 1, N):
            # (e_ij ⊗ e_ji) maps e_j ⊗ e_i to e_i ⊗ e_j
            data[i * N + j, j * N + i] = lower
            data[j * N + i, i * N + j] = upper
    return DenseOperator(data)


def r_plus(N: int, u, v, q) -> DenseOperator:
    u, v, q = scalar(u), scalar(v), scalar(q)
    norm = div(u - v, q * u - v / q)
    return norm * r_matrix(N, u, v, q)


def r_minus(N: int, u, v, q) -> DenseOperator:
    """``((R^+(v, u))^{-1})^{21}``."""
    return swap_conjugate(inverse(r_plus(N, v, u, q)), N)


def r_product_order(M: int) -> list:
    """Factor order of the ordered R-product as 1-based pairs ``(j, i)``, leftmost first."""
    return sorted(((j, i) for j in range(1, M + 1) for i in range(1, j)), reverse=True)


def ordered_r_product(N: int, u: Sequence, q) -> DenseOperator:
    """``R^{(M..1)}(u_M, .., u_1)`` on ``(C^N)^{⊗M}``; ``u[k]`` belongs to slot ``k + 1``."""
    M = len(u)
    shape = TensorShape([N] * M)
    if M < 2:
        return identity(shape.dim)
    factors = [
        embed(r_matrix(N, u[j - 1], u[i - 1], q), (j - 1, i - 1), shape)
        for j, i in r_product_order(M)
    ]
    return compose(*factors)
