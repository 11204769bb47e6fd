"""Tensor products of evaluation vector representations.

On a single factor with evaluation point ``z`` the L-operators act as
``L^±(u) = R^±(u, z)`` with the auxiliary space in the first tensor slot.  On
``V_1 ⊗ W`` the coproduct ``Δ(L_ij) = Σ_k L_kj ⊗ L_ik`` is applied with its first
tensor slot on the first module factor, so the auxiliary-space matrix is the
product ``L^W(u) · L^{V_1}(u)``.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import reduce
from typing import Callable, Sequence

import numpy as np

from .rmatrix import r_minus, r_plus
from .scalars import ONE, ZERO, div, scalar
from .tensor import (
    DenseOperator,
    KetVector,
    TensorShape,
    _zeros,
    basis_vector,
    compose,
    embed,
    identity,
    zero_operator,
)


@dataclass(frozen=True)
class ModuleShape:
    """``V(z_1) ⊗ ... ⊗ V(z_n)`` for ``U_q(gl_N)``; ``n = 0`` is the trivial module."""

    N: int
    z: tuple
    q: object

    def __init__(self, N: int, z: Sequence = (), q=2):
        if N < 2:
            raise ValueError("N must be at least 2")
        zs = tuple(scalar(x) for x in z)
        if len(set(zs)) != len(zs):
            raise ValueError("evaluation points must be pairwise distinct")
        object.__setattr__(self, "N", int(N))
        object.__setattr__(self, "z", zs)
        object.__setattr__(self, "q", scalar(q))

    @property
    def n(self) -> int:
        return len(self.z)

    @property
    def dim(self) -> int:
        return self.N**self.n

    @property
    def tensor_shape(self) -> TensorShape:
        return TensorShape([self.N] * self.n)

    def split(self, k: int = 1) -> tuple:
        """``(first k factors, remaining factors)``."""
        return ModuleShape(self.N, self.z[:k], self.q), ModuleShape(self.N, self.z[k:], self.q)


class AuxMatrix:
    """An ``N × N`` grid of operators on one module; indices are 1-based."""

    __slots__ = ("N", "blocks")

    def __init__(self, N: int, blocks):
        self.N = N
        self.blocks = tuple(tuple(row) for row in blocks)
        dims = {b.dim for row in self.blocks for b in row}
        if len(self.blocks) != N or any(len(r) != N for r in self.blocks) or len(dims) != 1:
            raise ValueError("malformed auxiliary matrix")

    @property
    def module_dim(self) -> int:
        return self.blocks[0][0].dim

    def __getitem__(self, ij) -> DenseOperator:
        i, j = ij
        return self.blocks[i - 1][j - 1]

    def __matmul__(self, other: "AuxMatrix") -> "AuxMatrix":
        """Product in the auxiliary index; entries compose in the written order."""
        N = self.N
        return AuxMatrix(
            N,
            [
                [reduce(lambda a, b: a + b, (self[i, k] @ other[k, j] for k in range(1, N + 1)))
                 for j in range(1, N + 1)]
                for i in range(1, N + 1)
            ],
        )

    def __eq__(self, other):
        if not isinstance(other, AuxMatrix):
            return NotImplemented
        return self.N == other.N and self.blocks == other.blocks

    def __hash__(self):
        return hash(self.blocks)

    def as_operator(self) -> DenseOperator:
        """The operator ``Σ e_ij ⊗ L_ij`` on ``C^N ⊗ V``."""
        N, d = self.N, self.module_dim
        data = _zeros((N * d, N * d))
        for i in range(N):
            for j in range(N):
                data[i * d:(i + 1) * d, j * d:(j + 1) * d] = self.blocks[i][j].data
        return DenseOperator(data)

    @classmethod
    def from_operator(cls, op: DenseOperator, N: int) -> "AuxMatrix":
        d = op.dim // N
        if d * N != op.dim:
            raise ValueError("operator dimension is not a multiple of N")
        return cls(N, [[DenseOperator(op.data[i * d:(i + 1) * d, j * d:(j + 1) * d])
                        for j in range(N)] for i in range(N)])

    def map(self, f: Callable[[DenseOperator], DenseOperator]) -> "AuxMatrix":
        return AuxMatrix(self.N, [[f(b) for b in row] for row in self.blocks])


def identity_grid(N: int, dim: int = 1) -> AuxMatrix:
    one, zero = identity(dim), zero_operator(dim)
    return AuxMatrix(N, [[one if i == j else zero for j in range(N)] for i in range(N)])


def coproduct(first: AuxMatrix, rest: AuxMatrix) -> AuxMatrix:
    """L-operator on ``V_1 ⊗ W`` from those on ``V_1`` and ``W``."""
    N = first.N
    blocks = []
    for i in range(1, N + 1):
        row = []
        for j in range(1, N + 1):
            acc = None
            for k in range(1, N + 1):
                term = np.kron(first[k, j].data, rest[i, k].data)
                acc = term if acc is None else acc + term
            row.append(DenseOperator(acc))
        blocks.append(row)
    return AuxMatrix(N, blocks)


def _single(N: int, r: DenseOperator) -> AuxMatrix:
    return AuxMatrix.from_operator(r, N)


def _build(shape: ModuleShape, u, rfun) -> AuxMatrix:
    N = shape.N
    if shape.n == 0:
        return identity_grid(N)
    out = _single(N, rfun(N, u, shape.z[-1], shape.q))
    for z in reversed(shape.z[:-1]):
        out = coproduct(_single(N, rfun(N, u, z, shape.q)), out)
    return out


def l_plus(shape: ModuleShape, u) -> AuxMatrix:
    return _build(shape, scalar(u), r_plus)


def l_minus(shape: ModuleShape, u) -> AuxMatrix:
    return _build(shape, scalar(u), r_minus)


def zero_mode_l_minus(shape: ModuleShape) -> AuxMatrix:
    """``L^-`` at ``u = 0``; on evaluation modules this is plain substitution."""
    return l_minus(shape, ZERO)


def l_operator_by_aux_product(shape: ModuleShape, u, sign: str = "+") -> DenseOperator:
    """``R^{±,(0,n)}(u, z_n) ⋯ R^{±,(0,1)}(u, z_1)`` on ``C^N ⊗ V`` built by slot embedding.

    This is the unfused form of :func:`l_plus` / :func:`l_minus`, kept as an
    independent construction for cross-checks.
    """
    rfun = r_plus if sign == "+" else r_minus
    N = shape.N
    tshape = TensorShape([N] * (shape.n + 1))
    factors = [embed(rfun(N, u, z, shape.q), (0, a + 1), tshape)
               for a, z in reversed(list(enumerate(shape.z)))]
    return compose(*factors) if factors else identity(N)


def singular_vector(shape: ModuleShape) -> KetVector:
    return basis_vector(shape.dim, 0)


def weight_series(shape: ModuleShape, i: int, u):
    """``Λ_i(u)``: the eigenvalue of ``L_ii(u)`` on the singular vector."""
    if not 1 <= i <= shape.N:
        raise ValueError(f"weight index {i} outside 1..{shape.N}")
    if i == 1:
        return ONE
    u, q = scalar(u), shape.q
    out = ONE
    for z in shape.z:
        out *= div(u - z, q * u - z / q)
    return out
