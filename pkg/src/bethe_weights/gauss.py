"""Noncommutative Gauss coordinates of operator-valued L-matrices.

``L = (1 + Σ F_ij e_ij) (Σ K_i e_ii) (1 + Σ E_ji e_ji)``, so that
``L_ab = Σ_{c ≥ max(a, b)} F_ac K_c E_cb``.  The factorization is peeled off
from the bottom-right corner; entries never commute, so every product keeps
the written order.
"""
from __future__ import annotations

from dataclasses import dataclass

from .evaluation import AuxMatrix, ModuleShape, zero_mode_l_minus
from .scalars import DegenerateSample, SingularCorner
from .tensor import DenseOperator, identity, inverse, zero_operator


@dataclass(frozen=True)
class GaussData:
    N: int
    F: dict  # (i, j), i < j
    K: dict  # i
    E: dict  # (j, i), i < j

    def reconstruct(self) -> AuxMatrix:
        N = self.N
        d = self.K[1].dim
        one = identity(d)

        def f(a, c):
            return one if a == c else self.F[a, c]

        def e(c, b):
            return one if c == b else self.E[c, b]

        blocks = []
        for a in range(1, N + 1):
            row = []
            for b in range(1, N + 1):
                acc = zero_operator(d)
                for c in range(max(a, b), N + 1):
                    acc = acc + f(a, c) @ self.K[c] @ e(c, b)
                row.append(acc)
            blocks.append(row)
        return AuxMatrix(N, blocks)


def _inv(op: DenseOperator) -> DenseOperator:
    try:
        return inverse(op)
    except DegenerateSample as exc:
        raise SingularCorner(str(exc)) from None


def gauss(L: AuxMatrix) -> GaussData:
    N = L.N
    work = {(a, b): L[a, b] for a in range(1, N + 1) for b in range(1, N + 1)}
    F, K, E = {}, {}, {}
    for c in range(N, 0, -1):
        k = work[c, c]
        K[c] = k
        if c == 1:
            break
        k_inv = _inv(k)
        for a in range(1, c):
            F[a, c] = work[a, c] @ k_inv
            E[c, a] = k_inv @ work[c, a]
        for a in range(1, c):
            for b in range(1, c):
                work[a, b] = work[a, b] - F[a, c] @ k @ E[c, b]
    return GaussData(N, F, K, E)


def f_plus(L: AuxMatrix, i: int, j: int) -> DenseOperator:
    if not 1 <= i < j <= L.N:
        raise ValueError(f"F_({i},{j}) needs 1 <= i < j <= N")
    return gauss(L).F[i, j]


def screening_zero_mode(shape: ModuleShape, i: int) -> DenseOperator:
    """``F_i[0] = -L^-_{i,i+1}[0] (L^-_{i+1,i+1}[0])^{-1}``."""
    if not 1 <= i <= shape.N - 1:
        raise ValueError(f"screening index {i} outside 1..{shape.N - 1}")
    L0 = zero_mode_l_minus(shape)
    return -(L0[i, i + 1] @ _inv(L0[i + 1, i + 1]))


def q_commutator(A: DenseOperator, B: DenseOperator, q) -> DenseOperator:
    """``S_A(B) = B A - q A B``."""
    return B @ A - q * (A @ B)
