"""Dense exact linear algebra on tensor products of small spaces.

Basis convention: a product basis index is the mixed-radix number of the
factor indices with the FIRST factor most significant, i.e. the C-order
flattening of a numpy array whose axes are the factors.  Everything that
touches tensor indices goes through :class:`TensorShape` or through numpy
reshapes that follow the same order.
"""
from __future__ import annotations

from dataclasses import dataclass
from math import prod
from typing import Iterable, Sequence

import numpy as np

from .scalars import ONE, ZERO, DegenerateSample, scalar


class ShapeMismatch(ValueError):
    pass


class IndexOutOfRange(IndexError):
    pass


def _zeros(shape) -> np.ndarray:
    out = np.empty(shape, dtype=object)
    out.fill(ZERO)
    return out


def _frozen(arr: np.ndarray) -> np.ndarray:
    arr.flags.writeable = False
    return arr


@dataclass(frozen=True)
class TensorShape:
    factor_dims: tuple

    def __init__(self, factor_dims: Iterable[int]):
        dims = tuple(int(d) for d in factor_dims)
        if any(d <= 0 for d in dims):
            raise ShapeMismatch(f"non-positive factor dimension in {dims}")
        object.__setattr__(self, "factor_dims", dims)

    @property
    def dim(self) -> int:
        return prod(self.factor_dims)

    def __len__(self) -> int:
        return len(self.factor_dims)

    def index(self, digits: Sequence[int]) -> int:
        if len(digits) != len(self.factor_dims):
            raise ShapeMismatch("wrong number of digits")
        idx = 0
        for d, n in zip(digits, self.factor_dims):
            if not 0 <= d < n:
                raise IndexOutOfRange(f"digit {d} outside 0..{n - 1}")
            idx = idx * n + d
        return idx

    def digits(self, index: int) -> tuple:
        if not 0 <= index < self.dim:
            raise IndexOutOfRange(index)
        return tuple(int(x) for x in np.unravel_index(index, self.factor_dims))


class DenseOperator:
    """An exact square matrix; rows are output indices."""

    __slots__ = ("data",)

    def __init__(self, data):
        arr = np.array(data, dtype=object)
        if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
            raise ShapeMismatch(f"operator data must be square, got {arr.shape}")
        self.data = _frozen(arr)

    @property
    def dim(self) -> int:
        return self.data.shape[0]

    @property
    def entries(self) -> tuple:
        return tuple(self.data.ravel())

    def __getitem__(self, key):
        return self.data[key]

    def _check(self, other: "DenseOperator"):
        if not isinstance(other, DenseOperator):
            return NotImplemented
        if other.dim != self.dim:
            raise ShapeMismatch(f"dimensions {self.dim} and {other.dim} differ")
        return other

    def __matmul__(self, other):
        if isinstance(other, KetVector):
            return apply(self, other)
        self._check(other)
        return DenseOperator(self.data.dot(other.data))

    def __add__(self, other):
        self._check(other)
        return DenseOperator(self.data + other.data)

    def __sub__(self, other):
        self._check(other)
        return DenseOperator(self.data - other.data)

    def __neg__(self):
        return DenseOperator(-self.data)

    def __mul__(self, c):
        return scalar_mul(c, self)

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, DenseOperator):
            return NotImplemented
        return self.dim == other.dim and bool(np.all(self.data == other.data))

    def __hash__(self):
        return hash(self.entries)

    def is_zero(self) -> bool:
        return bool(np.all(self.data == 0))

    def __repr__(self):
        return f"DenseOperator(dim={self.dim})"


class KetVector:
    __slots__ = ("data",)

    def __init__(self, data):
        arr = np.array(data, dtype=object).reshape(-1)
        self.data = _frozen(arr)

    @property
    def dim(self) -> int:
        return self.data.shape[0]

    @property
    def entries(self) -> tuple:
        return tuple(self.data)

    def __getitem__(self, i):
        return self.data[i]

    def __add__(self, other):
        if other.dim != self.dim:
            raise ShapeMismatch("vector dimensions differ")
        return KetVector(self.data + other.data)

    def __sub__(self, other):
        if other.dim != self.dim:
            raise ShapeMismatch("vector dimensions differ")
        return KetVector(self.data - other.data)

    def __neg__(self):
        return KetVector(-self.data)

    def __mul__(self, c):
        return KetVector(self.data * scalar(c))

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, KetVector):
            return NotImplemented
        return self.dim == other.dim and bool(np.all(self.data == other.data))

    def __hash__(self):
        return hash(self.entries)

    def is_zero(self) -> bool:
        return bool(np.all(self.data == 0))

    def nonzero(self) -> list:
        return [(i, x) for i, x in enumerate(self.data) if x != 0]

    def __repr__(self):
        return f"KetVector(dim={self.dim}, nonzero={len(self.nonzero())})"


def identity(dim: int) -> DenseOperator:
    data = _zeros((dim, dim))
    for i in range(dim):
        data[i, i] = ONE
    return DenseOperator(data)


def zero_operator(dim: int) -> DenseOperator:
    return DenseOperator(_zeros((dim, dim)))


def basis_vector(dim: int, index: int) -> KetVector:
    if not 0 <= index < dim:
        raise IndexOutOfRange(index)
    data = _zeros(dim)
    data[index] = ONE
    return KetVector(data)


def matrix_unit(N: int, i: int, j: int) -> DenseOperator:
    """``e_ij`` on C^N with 1-based row ``i`` and column ``j``."""
    if not (1 <= i <= N and 1 <= j <= N):
        raise IndexOutOfRange(f"e_({i},{j}) outside 1..{N}")
    data = _zeros((N, N))
    data[i - 1, j - 1] = ONE
    return DenseOperator(data)


def compose(*ops: DenseOperator) -> DenseOperator:
    """Left-to-right product ``ops[0] @ ops[1] @ ...``."""
    if not ops:
        raise ValueError("compose needs at least one operator")
    out = ops[0]
    for op in ops[1:]:
        out = out @ op
    return out


def apply(op: DenseOperator, ket: KetVector) -> KetVector:
    if op.dim != ket.dim:
        raise ShapeMismatch(f"operator dim {op.dim} vs vector dim {ket.dim}")
    return KetVector(op.data.dot(ket.data))


def scalar_mul(c, op: DenseOperator) -> DenseOperator:
    return DenseOperator(op.data * scalar(c))


def trace(op: DenseOperator):
    return sum(op.data.diagonal(), ZERO)


def kron(ops: Sequence[DenseOperator]) -> DenseOperator:
    if not ops:
        return identity(1)
    out = ops[0].data
    for op in ops[1:]:
        out = np.kron(out, op.data)
    return DenseOperator(out)


def kron_vectors(kets: Sequence[KetVector]) -> KetVector:
    out = np.array([ONE], dtype=object)
    for k in kets:
        out = np.kron(out, k.data)
    return KetVector(out)


def inverse(op: DenseOperator) -> DenseOperator:
    """Exact Gauss-Jordan inverse; raises :class:`DegenerateSample` if singular."""
    n = op.dim
    a = np.concatenate([op.data.copy(), identity(n).data.copy()], axis=1)
    for col in range(n):
        pivot = next((r for r in range(col, n) if a[r, col] != 0), None)
        if pivot is None:
            raise DegenerateSample("singular matrix")
        if pivot != col:
            a[[col, pivot]] = a[[pivot, col]]
        a[col] = a[col] * (ONE / a[col, col])
        for r in range(n):
            if r != col and a[r, col] != 0:
                a[r] = a[r] - a[r, col] * a[col]
    return DenseOperator(a[:, n:])


def _norm_slots(slots, shape: TensorShape) -> tuple:
    slots = (slots,) if isinstance(slots, int) else tuple(slots)
    if len(set(slots)) != len(slots):
        raise ShapeMismatch(f"repeated slot in {slots}")
    for s in slots:
        if not 0 <= s < len(shape):
            raise ShapeMismatch(f"slot {s} outside shape {shape.factor_dims}")
    return slots


def apply_local(tensor: np.ndarray, op_data: np.ndarray, axes: Sequence[int]) -> np.ndarray:
    """Apply a matrix acting on the listed tensor axes (in that order).

    ``op_data`` is the square matrix on the product of those axes with the
    usual first-most-significant ordering.  Axes not listed, including any
    trailing column axes, are spectators.
    """
    axes = tuple(axes)
    local_dims = tuple(tensor.shape[a] for a in axes)
    k = len(axes)
    op_t = op_data.reshape(local_dims + local_dims)
    out = np.tensordot(op_t, tensor, axes=(tuple(range(k, 2 * k)), axes))
    return np.moveaxis(out, tuple(range(k)), axes)


def embed(op: DenseOperator, slots, shape: TensorShape) -> DenseOperator:
    """Operator acting as ``op`` on ``slots`` (an int or ordered tuple) and identity elsewhere."""
    slots = _norm_slots(slots, shape)
    local = prod(shape.factor_dims[s] for s in slots)
    if op.dim != local:
        raise ShapeMismatch(f"operator dim {op.dim} does not fit slots {slots} of {shape.factor_dims}")
    dim = shape.dim
    cols = identity(dim).data.reshape(shape.factor_dims + (dim,))
    out = apply_local(cols, op.data, slots)
    return DenseOperator(out.reshape(dim, dim))


def permutation_op(shape: TensorShape, a: int, b: int) -> DenseOperator:
    """Swap tensor slots ``a`` and ``b``."""
    _norm_slots((a, b), shape) if a != b else _norm_slots(a, shape)
    if shape.factor_dims[a] != shape.factor_dims[b]:
        raise ShapeMismatch("swapped slots must have equal dimension")
    dim = shape.dim
    cols = identity(dim).data.reshape(shape.factor_dims + (dim,))
    out = np.swapaxes(cols, a, b)
    return DenseOperator(np.ascontiguousarray(out).reshape(dim, dim))


def partial_trace(op: DenseOperator, shape: TensorShape, traced_slots: Iterable[int]) -> DenseOperator:
    traced = sorted(set(_norm_slots(tuple(traced_slots), shape)))
    if op.dim != shape.dim:
        raise ShapeMismatch("operator does not live on this shape")
    k = len(shape)
    t = op.data.reshape(shape.factor_dims + shape.factor_dims)
    # contract one slot at a time, highest first so lower axis numbers stay valid
    for s in reversed(traced):
        t = np.trace(t, axis1=s, axis2=s + k)
        k -= 1
    kept = [d for i, d in enumerate(shape.factor_dims) if i not in traced]
    dim = prod(kept)
    return DenseOperator(np.asarray(t, dtype=object).reshape(dim, dim))


def swap_conjugate(op: DenseOperator, N: int) -> DenseOperator:
    """The superscript-21 operation on ``C^N ⊗ C^N``: conjugation by the slot swap."""
    P = permutation_op(TensorShape((N, N)), 0, 1)
    return P @ op @ P
