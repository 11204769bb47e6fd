import pytest

from bethe_weights import evaluation as ev
from bethe_weights.gauss import f_plus, gauss, q_commutator, screening_zero_mode
from bethe_weights.scalars import SingularCorner, sample_point
from bethe_weights.tensor import basis_vector, identity, inverse, zero_operator


def shape_at(seed, N, n):
    pt = sample_point(seed, n, 1)
    return ev.ModuleShape(N, pt.z, pt.q), pt.t[0]


def test_n2_closed_form():
    shape, u = shape_at(1, 2, 2)
    L = ev.l_plus(shape, u)
    g = gauss(L)
    k2_inv = inverse(L[2, 2])
    assert g.K[2] == L[2, 2]
    assert g.F[1, 2] == L[1, 2] @ k2_inv
    assert g.E[2, 1] == k2_inv @ L[2, 1]
    assert g.K[1] == L[1, 1] - L[1, 2] @ k2_inv @ L[2, 1]


def test_identity_grid():
    g = gauss(ev.identity_grid(3, 2))
    assert all(F.is_zero() for F in g.F.values())
    assert all(E.is_zero() for E in g.E.values())
    assert all(K == identity(2) for K in g.K.values())


@pytest.mark.parametrize("N,n", [(2, 1), (3, 1), (3, 2), (4, 1), (4, 2)])
def test_reconstruction_and_cartan(N, n):
    shape, u = shape_at(N * 10 + n, N, n)
    L = ev.l_plus(shape, u)
    g = gauss(L)
    assert g.reconstruct() == L
    v = ev.singular_vector(shape)
    for i in range(1, N + 1):
        assert g.K[i] @ v == v * ev.weight_series(shape, i, u)
    assert gauss(L) == g


def test_f_plus_on_singular_vector():
    shape, t = shape_at(3, 2, 1)
    L = ev.l_plus(shape, t)
    v = ev.singular_vector(shape)
    assert f_plus(L, 1, 2) @ v * ev.weight_series(shape, 2, t) == L[1, 2] @ v
    assert f_plus(ev.identity_grid(2, 1), 1, 2) == zero_operator(1)
    with pytest.raises(ValueError):
        f_plus(L, 2, 1)


def test_singular_corner():
    L = ev.identity_grid(2, 1).map(lambda op: op * 0)
    with pytest.raises(SingularCorner):
        gauss(L)


def test_zero_mode_lowers_weight():
    shape, _ = shape_at(5, 2, 1)
    F0 = screening_zero_mode(shape, 1)
    assert F0[0, 0] == F0[0, 1] == F0[1, 1] == 0
    assert F0[1, 0] != 0
    shape3, _ = shape_at(6, 3, 1)
    out = screening_zero_mode(shape3, 1) @ ev.singular_vector(shape3)
    assert [i for i, _ in out.nonzero()] == [1]
    assert basis_vector(3, 1)[1] == 1


@pytest.mark.parametrize("N,n", [(3, 1), (3, 2), (4, 1)])
def test_screening_identity(N, n):
    shape, t = shape_at(70 + N + n, N, n)
    q = shape.q
    F = gauss(ev.l_plus(shape, t)).F
    for i in range(1, N + 1):
        for j in range(i + 2, N + 1):
            F0 = screening_zero_mode(shape, i)
            assert (q - 1 / q) * F[i, j] == q_commutator(F0, F[i + 1, j], q)
