"""Identity checks evaluated at one sample point.

Each check takes ``(N, factors, pattern, point)`` and returns a list of
``(label, lhs, rhs)`` comparisons; the check passes iff every pair is exactly
equal.  A :class:`ZeroDivisionError` (including
:class:`~bethe_weights.scalars.DegenerateSample`) means the point is
degenerate and the caller draws another one.
"""
from __future__ import annotations

from itertools import permutations, product
from typing import Callable

import numpy as np

from . import evaluation as ev
from .gauss import gauss, q_commutator, screening_zero_mode
from .multisets import (
    PiMultiset,
    canonical_sort,
    colour_bijections,
    phi,
    pullback_gamma,
    pullback_tilde,
    splits,
    modify,
    unmodify,
)
from .projection import expand_coproduct, gauss_F, projected_staircase, projected_staircase_apply, w_P
from .rmatrix import r_matrix, r_plus
from .scalars import ONE, div
from .tensor import (
    DenseOperator,
    KetVector,
    TensorShape,
    apply_local,
    embed,
    identity,
    kron_vectors,
    permutation_op,
    swap_conjugate,
)
from .trace import BarN, bethe_B, bethe_partial, bethe_partial_apply, monodromy_T, w_B


def variables_needed(check: str, N: int, pattern: PiMultiset) -> int:
    return {
        "yang-baxter": 3,
        "inversion": 2,
        "rll": 2,
        "triangularity": 1,
        "gauss-reconstruct": 1,
        "screening": 1,
        "re-r1": N - 1,
        "re-r2-ind1": N - 1,
    }.get(check, len(pattern))


def module_factors(check: str, factors: int) -> int:
    if check in ("yang-baxter", "inversion", "modify-roundtrip"):
        return max(factors, 0)
    if check == "coproduct":
        return max(factors, 2)
    return max(factors, 1)


def first_mismatch(lhs, rhs):
    """Location of the first differing component, or ``None`` when equal."""
    if isinstance(lhs, (DenseOperator, KetVector)):
        a, b = lhs.data, rhs.data
        if a.shape != b.shape:
            return {"shape": [list(a.shape), list(b.shape)]}
        diff = np.argwhere(a != b)
        if len(diff) == 0:
            return None
        idx = tuple(int(x) for x in diff[0])
        return {"index": list(idx), "lhs": a[idx], "rhs": b[idx]}
    if lhs == rhs:
        return None
    return {"index": [], "lhs": lhs, "rhs": rhs}


# -- R-matrix ---------------------------------------------------------------

def check_yang_baxter(N, factors, pattern, pt):
    u1, u2, u3 = pt.t[:3]
    q = pt.q
    shape = TensorShape((N, N, N))
    out = []
    for label, rf in (("R", r_matrix), ("R+", r_plus)):
        r12 = embed(rf(N, u1, u2, q), (0, 1), shape)
        r13 = embed(rf(N, u1, u3, q), (0, 2), shape)
        r23 = embed(rf(N, u2, u3, q), (1, 2), shape)
        out.append((f"yang-baxter[{label}]", r12 @ r13 @ r23, r23 @ r13 @ r12))
    return out


def check_inversion(N, factors, pattern, pt):
    u1, u2 = pt.t[:2]
    q = pt.q
    lhs = r_matrix(N, u1, u2, q) @ swap_conjugate(r_matrix(N, u2, u1, q), N)
    c = div((q * u1 - u2 / q) * (u1 / q - q * u2), (u1 - u2) ** 2)
    return [("inversion", lhs, c * identity(N * N))]


# -- evaluation modules --------------------------------------------------------

def _module(N, factors, pt):
    return ev.ModuleShape(N, pt.z[:factors], pt.q)


def rll_sides(shape: ev.ModuleShape, u, v, first: str, second: str):
    """Both sides of ``R(u,v) L_1(u) L_2(v) = L_2(v) L_1(u) R(u,v)`` on ``aux ⊗ aux ⊗ V``."""
    N = shape.N
    get = {"+": ev.l_plus, "-": ev.l_minus}
    tshape = TensorShape((N, N, shape.dim))
    R = embed(r_matrix(N, u, v, shape.q), (0, 1), tshape)
    L1 = embed(get[first](shape, u).as_operator(), (0, 2), tshape)
    L2 = embed(get[second](shape, v).as_operator(), (1, 2), tshape)
    return R @ L1 @ L2, L2 @ L1 @ R


def check_rll(N, factors, pattern, pt):
    shape = _module(N, factors, pt)
    u, v = pt.t[:2]
    return [(f"rll[{a}{b}]", *rll_sides(shape, u, v, a, b)) for a, b in (("+", "+"), ("-", "-"), ("+", "-"))]


def check_triangularity(N, factors, pattern, pt):
    shape = _module(N, factors, pt)
    u = pt.t[0]
    L = ev.l_plus(shape, u)
    v = ev.singular_vector(shape)
    zero = KetVector([0] * shape.dim)
    out = []
    for i in range(1, N + 1):
        for j in range(1, N + 1):
            if i > j:
                out.append((f"L[{i},{j}]v", L[i, j] @ v, zero))
        out.append((f"L[{i},{i}]v", L[i, i] @ v, ev.weight_series(shape, i, u) * v))
    return out


def check_gauss(N, factors, pattern, pt):
    shape = _module(N, factors, pt)
    u = pt.t[0]
    L = ev.l_plus(shape, u)
    g = gauss(L)
    v = ev.singular_vector(shape)
    out = [("reconstruct", g.reconstruct().as_operator(), L.as_operator())]
    for i in range(1, N + 1):
        out.append((f"K[{i}]v", g.K[i] @ v, ev.weight_series(shape, i, u) * v))
    return out


def check_screening(N, factors, pattern, pt):
    shape = _module(N, factors, pt)
    t = pt.t[0]
    q = shape.q
    F = gauss(ev.l_plus(shape, t)).F
    out = []
    for i in range(1, N + 1):
        for j in range(i + 2, N + 1):
            F0 = screening_zero_mode(shape, i)
            out.append((f"screening[{i},{j}]", (q - 1 / q) * F[i, j], q_commutator(F0, F[i + 1, j], q)))
    return out


# -- trace side -------------------------------------------------------------

def _right_apply_local(op: DenseOperator, local: np.ndarray, axes, dims) -> DenseOperator:
    """``op · A`` where ``A`` acts on ``axes`` of the product space with factor ``dims``."""
    dim = op.dim
    t = op.data.T.reshape(tuple(dims) + (dim,))
    out = apply_local(t, local.T, axes).reshape(dim, dim).T
    return DenseOperator(np.ascontiguousarray(out))


def exchange_sides(shape: ev.ModuleShape, u, i: int):
    """Both sides of the exchange identity for aux slots ``i, i+1`` (1-based)."""
    N, q = shape.N, shape.q
    M = len(u)
    dims = (N,) * M + (shape.dim,)
    a, b = i - 1, i
    PR = (permutation_op(TensorShape((N, N)), 0, 1) @ r_matrix(N, u[a], u[b], q)).data
    T = monodromy_T(shape, u, "left")
    lhs_t = apply_local(T.data.reshape(dims + (T.dim,)), PR, (a, b))
    lhs = DenseOperator(lhs_t.reshape(T.dim, T.dim))
    swapped = list(u)
    swapped[a], swapped[b] = swapped[b], swapped[a]
    T2 = monodromy_T(shape, swapped, "left")
    # P^{(i+1,i)} R^{(i+1,i)}(u_{i+1}, u_i): first R slot is aux i+1
    PR2 = (permutation_op(TensorShape((N, N)), 0, 1) @ r_matrix(N, u[b], u[a], q)).data
    rhs = _right_apply_local(T2, PR2, (b, a), dims)
    return lhs, rhs


def check_symmetry(N, factors, pattern, pt):
    shape = _module(N, factors, pt)
    sorted_I, _ = canonical_sort(pattern)
    nbar = BarN(sorted_I.counts(N))
    t = pt.t[: len(pattern)]
    out = []
    if len(t) >= 1:
        out.append(("monodromy left=right", monodromy_T(shape, t, "left"), monodromy_T(shape, t, "right")))
    for i in range(1, len(t)):
        out.append((f"exchange[{i}]", *exchange_sides(shape, t, i)))
    base = bethe_B(shape, nbar, t)
    blocks, start = [], 0
    for n in nbar.counts:
        blocks.append(list(range(start, start + n)))
        start += n
    for perms in product(*(permutations(b) for b in blocks)):
        order = [p for perm in perms for p in perm]
        if order == list(range(len(t))):
            continue
        out.append((f"S_nbar{order}", bethe_B(shape, nbar, [t[p] for p in order]), base))
    return out


def _diag_chain(shape, tvars, lo, hi, vec):
    """``L_{hi+1,hi+1}(t^hi) ⋯ L_{lo+1,lo+1}(t^lo) vec`` (rightmost applied first)."""
    for j in range(lo, hi + 1):
        vec = ev.l_plus(shape, tvars[j])[j + 1, j + 1] @ vec
    return vec


def check_re_r1(N, factors, pattern, pt):
    shape = _module(N, factors, pt)
    q = shape.q
    tv = {c: x for c, x in enumerate(pt.t[: N - 1], start=1)}
    v = ev.singular_vector(shape)
    Fs = {c: gauss_F(shape, tv[c]) for c in tv}
    out = []
    for k in range(1, N):
        out.append((f"B[{k},{k}]=L[{k},{k + 1}]", bethe_partial(shape, k, k, tv), ev.l_plus(shape, tv[k])[k, k + 1]))
        out.append((f"B[1,{k}]v=B_[{k}]v", bethe_partial_apply(shape, 1, k, tv, v),
                    bethe_B(shape, [1] * k + [0] * (N - 1 - k), [tv[c] for c in range(1, k + 1)])))
        for l in range(1, k + 1):
            lhs = bethe_partial_apply(shape, l, k, tv, v)
            rhs = None
            for m in range(l + 1, k + 2):
                coeff = ONE
                for j in range(l + 1, m):
                    coeff *= div((q - 1 / q) * tv[j], tv[j] - tv[j - 1])
                inner = Fs[m - 1][l, m] @ _diag_chain(shape, tv, l, m - 1, v)
                term = bethe_partial_apply(shape, m, k, tv, inner) * coeff
                rhs = term if rhs is None else rhs + term
            out.append((f"re-r1[l={l},k={k}]", lhs, rhs))
    return out


def check_re_r2_ind1(N, factors, pattern, pt):
    shape = _module(N, factors, pt)
    q = shape.q
    tv = {c: x for c, x in enumerate(pt.t[: N - 1], start=1)}
    v = ev.singular_vector(shape)
    Fs = {c: gauss_F(shape, tv[c]) for c in tv}
    out = []
    for k in range(1, N):
        out.append((f"W[{k},{k}]", projected_staircase(shape, k, k, tv), Fs[k][k, k + 1]))
        if k >= 2:
            expected = Fs[k][k, k + 1] @ Fs[k - 1][k - 1, k] + \
                div((q - 1 / q) * tv[k], tv[k] - tv[k - 1]) * Fs[k][k - 1, k + 1]
            out.append((f"W[{k - 1},{k}]", projected_staircase(shape, k - 1, k, tv), expected))
        B = bethe_B(shape, [1] * k + [0] * (N - 1 - k), [tv[c] for c in range(1, k + 1)])
        out.append((f"ind1[k={k}]", B, projected_staircase_apply(shape, 1, k, tv, _diag_chain(shape, tv, 1, k, v))))
        lam = ONE
        for c in range(1, k + 1):
            lam *= ev.weight_series(shape, c + 1, tv[c])
        out.append((f"staircase-weight[k={k}]", B, projected_staircase_apply(shape, 1, k, tv, v) * lam))
    return out


# -- weight functions -----------------------------------------------------------

def unmodified_B(shape: ev.ModuleShape, I: PiMultiset, t):
    return unmodify(lambda J, s: w_B(shape, J, s), lambda b, u: ev.weight_series(shape, b, u), I, t, shape.q)


def weight2_expansion(first, rest, I, t, w):
    """Right-hand side of the unmodified coproduct rule on ``first ⊗ rest``."""
    q = first.q
    acc = None
    for sp in splits(I):
        factor = phi(sp, I, t, q)
        for p in sp.left:
            c = I.colours[p]
            factor *= div(ev.weight_series(rest, c, t[p]), ev.weight_series(rest, c + 1, t[p]))
        a = w(first, I.sub(sp.left), tuple(t[p] for p in sp.left))
        b = w(rest, I.sub(sp.right), tuple(t[p] for p in sp.right))
        term = kron_vectors([a, b]) * factor
        acc = term if acc is None else acc + term
    return acc


def check_coproduct(N, factors, pattern, pt):
    shape = _module(N, factors, pt)
    t = pt.t[: len(pattern)]
    I = pattern
    out = []
    direct_B = w_B(shape, I, t)
    direct_P = w_P(shape, I, t)
    for k in range(1, shape.n):
        first, rest = shape.split(k)
        out.append((f"weight22[B,split={k}]", direct_B,
                    expand_coproduct(first, rest, I, t, w_B, w_B)))
        out.append((f"weight22[P,split={k}]", direct_P,
                    expand_coproduct(first, rest, I, t, w_P, w_P)))
        out.append((f"weight2[unmod B,split={k}]", unmodified_B(shape, I, t),
                    weight2_expansion(first, rest, I, t, unmodified_B)))
    out.append(("P left=right nesting", direct_P, w_P(shape, I, t, nesting="right")))
    return out


def check_qsym(N, factors, pattern, pt):
    shape = _module(N, factors, pt)
    I, q = pattern, shape.q
    t = pt.t[: len(I)]
    out = []
    for label, w in (("B", w_B), ("P", w_P)):
        base = w(shape, I, t)
        for J, sigma in colour_bijections(I):
            pulled = pullback_tilde(lambda s, J=J: w(shape, J, s), sigma, I, q)(t)
            out.append((f"qsym[{label},J={J.colours},sigma={sigma}]", pulled, base))
    base = unmodified_B(shape, I, t)
    for J, sigma in colour_bijections(I):
        pulled = pullback_gamma(lambda s, J=J: unmodified_B(shape, J, s), sigma, I, q)(t)
        out.append((f"qsym[unmod B,J={J.colours},sigma={sigma}]", pulled, base))
    return out


def check_modify_roundtrip(N, factors, pattern, pt):
    shape = ev.ModuleShape(N, pt.z[:factors], pt.q)
    I, q = pattern, shape.q
    t = pt.t[: len(I)]
    lam = lambda b, u: ev.weight_series(shape, b, u)  # noqa: E731
    wb = lambda J, s: w_B(shape, J, s)  # noqa: E731
    there = lambda J, s: unmodify(wb, lam, J, s, q)  # noqa: E731
    back = lambda J, s: modify(wb, lam, J, s, q)  # noqa: E731
    return [
        ("modify(unmodify(w))", modify(there, lam, I, t, q), wb(I, t)),
        ("unmodify(modify(w))", unmodify(back, lam, I, t, q), wb(I, t)),
    ]


def check_main_theorem(N, factors, pattern, pt):
    shape = _module(N, factors, pt)
    t = pt.t[: len(pattern)]
    return [("wP=wB", w_P(shape, pattern, t), w_B(shape, pattern, t))]


CHECKS: dict[str, Callable] = {
    "yang-baxter": check_yang_baxter,
    "inversion": check_inversion,
    "rll": check_rll,
    "triangularity": check_triangularity,
    "gauss-reconstruct": check_gauss,
    "screening": check_screening,
    "symmetry": check_symmetry,
    "re-r1": check_re_r1,
    "re-r2-ind1": check_re_r2_ind1,
    "coproduct": check_coproduct,
    "pullback-qsym": check_qsym,
    "modify-roundtrip": check_modify_roundtrip,
    "main-theorem": check_main_theorem,
}
