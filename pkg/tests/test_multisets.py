from fractions import Fraction
from itertools import permutations

import pytest
from hypothesis import assume, given, settings, strategies as st

from bethe_weights.multisets import (
    PiMultiset,
    Split,
    all_patterns,
    beta,
    canonical_sort,
    colour_bijections,
    gamma,
    gamma_tilde,
    is_colour_bijection,
    modify,
    phi,
    phi_tilde,
    pullback_gamma,
    pullback_tilde,
    splits,
    staircase,
    unmodify,
)
from bethe_weights.scalars import DegenerateSample, scalar
from bethe_weights.tensor import KetVector

values = st.fractions(min_value=-50, max_value=50, max_denominator=50).filter(lambda x: x != 0).map(scalar)
qs = st.sampled_from([scalar(2), scalar(3, 5), scalar(-7, 3)])


def test_multiset_basics():
    I = PiMultiset([2, 1, 2])
    assert len(I) == 3
    assert I.reversed().colours == (2, 1, 2)
    assert I.sub([0, 1]).colours == (2, 1)
    assert I.counts(3) == (1, 2)
    assert staircase((1, 2)).colours == (1, 2, 2)
    with pytest.raises(ValueError):
        I.check_rank(2)
    with pytest.raises(ValueError):
        PiMultiset([0])


def test_kernel_cases():
    q, x, y = scalar(2), scalar(3), scalar(5)
    assert gamma(x, y, 1, 3, q) == 1
    assert gamma(x, y, 2, 1, q) == (q * x - y / q) / (x - y)
    assert gamma_tilde(x, y, 2, 2, q) == 1
    assert gamma_tilde(x, y, 2, 1, q) == (x - y) / (q * x - y / q)
    assert beta(x, y, 1, 2, q) == 1
    assert beta(x, y, 1, 1, q) == (x / q - q * y) / (x - y)
    with pytest.raises(DegenerateSample):
        gamma(x, x, 2, 1, q)


@given(values, values, qs, st.integers(1, 3), st.integers(1, 3))
def test_kernels_are_reciprocal_under_swap(x, y, q, a, b):
    assume(x != y and q * x != y / q and q * y != x / q and x / q != q * y and y / q != q * x)
    assert gamma(x, y, a, b, q) * gamma(y, x, b, a, q) == 1
    assert gamma_tilde(x, y, a, b, q) * gamma_tilde(y, x, b, a, q) == 1


def test_splits():
    assert list(splits(PiMultiset())) == [Split((), ())]
    two = list(splits(PiMultiset([1, 2])))
    assert len(two) == 4
    for sp in splits(PiMultiset([1, 2, 1, 3])):
        assert list(sp.left) == sorted(sp.left) and list(sp.right) == sorted(sp.right)
        assert sorted(sp.left + sp.right) == [0, 1, 2, 3]


def test_phi_examples():
    q = scalar(2)
    t = (scalar(3), scalar(5), scalar(7))
    I = PiMultiset([1, 3, 1])
    assert phi(Split((0, 1, 2), ()), I, t, q) == phi_tilde(Split((0, 1, 2), ()), I, t, q) == 1
    J = PiMultiset([1, 3, 5])
    for sp in splits(J):
        assert phi(sp, J, t, q) == 1
    K = PiMultiset([2, 2])
    assert phi_tilde(Split((0,), (1,)), K, t[:2], q) == beta(t[0], t[1], 2, 2, q)


def test_canonical_sort():
    assert canonical_sort(PiMultiset([1, 2, 2])) == (PiMultiset([1, 2, 2]), (0, 1, 2))
    assert canonical_sort(PiMultiset([2, 1])) == (PiMultiset([1, 2]), (1, 0))
    sorted_I, sigma = canonical_sort(PiMultiset([2, 1, 2, 1]))
    assert sorted_I.colours == (1, 1, 2, 2)
    assert sigma == (2, 0, 3, 1)


def test_colour_bijections_enumerate_everything():
    I = PiMultiset([1, 2, 1])
    found = list(colour_bijections(I))
    assert len(found) == 6
    for J, sigma in found:
        assert is_colour_bijection(sigma, I, J)


def _generic(t):
    # an arbitrary rational function of the variables in order
    out = scalar(1)
    for k, x in enumerate(t, start=1):
        out *= (x + k) / (x * x + 2 * k + 1)
    return KetVector([out, out * t[0] if t else out])


@settings(max_examples=40, deadline=None)
@given(st.lists(st.integers(1, 3), min_size=1, max_size=3), st.data(), qs)
def test_pullback_inverse_composition(colours, data, q):
    I = PiMultiset(colours)
    n = len(I)
    t = tuple(scalar(Fraction(7 * k + 3, 2 * k + 5)) for k in range(n))
    perm = data.draw(st.permutations(range(n)))
    J = PiMultiset(I.colours[perm[p]] for p in range(n))
    sigma = [0] * n
    for p, i in enumerate(perm):
        sigma[i] = p
    sigma_inv = tuple(perm)
    for pull in (pullback_gamma, pullback_tilde):
        on_I = pull(_generic, sigma, I, q)
        back = pull(on_I, sigma_inv, J, q)
        assert back(t) == _generic(t)


def test_identity_pullback_is_unchanged():
    I = PiMultiset([1, 2])
    t = (scalar(2), scalar(9))
    assert pullback_gamma(_generic, (0, 1), I, scalar(3))(t) == _generic(t)


def test_single_inversion_factor():
    I = PiMultiset([2, 1])
    q = scalar(3)
    t = (scalar(2), scalar(9))
    out = pullback_gamma(_generic, (1, 0), I, q)(t)
    assert out == _generic((t[1], t[0])) * gamma(t[0], t[1], 2, 1, q)


def _weight(b, u):
    return 1 if b == 1 else (u - 4) / (3 * u - 1)


def _w(J, s):
    return _generic(s) * (len(J.colours) + sum(J.colours))


def test_modify_unmodify_roundtrip():
    q = scalar(5, 2)
    for I in all_patterns(3, 3):
        t = tuple(scalar(k + 2, 3) for k in range(len(I)))
        there = lambda J, s: unmodify(_w, _weight, J, s, q)  # noqa: E731
        assert modify(there, _weight, I, t, q) == _w(I, t)
        back = lambda J, s: modify(_w, _weight, J, s, q)  # noqa: E731
        assert unmodify(back, _weight, I, t, q) == _w(I, t)


def test_modify_distinct_colours_is_reversal_times_weights():
    q = scalar(5, 2)
    I = PiMultiset([1, 2])
    t = (scalar(3), scalar(7))
    expected = _w(I.reversed(), t[::-1]) * _weight(2, t[0]) * _weight(3, t[1])
    assert modify(_w, _weight, I, t, q) == expected


def test_empty_multiset_conversions():
    q = scalar(2)
    v = _w(PiMultiset(), ())
    assert modify(_w, _weight, PiMultiset(), (), q) == v
    assert unmodify(_w, _weight, PiMultiset(), (), q) == v


def test_all_patterns_count():
    assert len(all_patterns(3, 3)) == 1 + 2 + 4 + 8
    assert sum(1 for _ in permutations(range(3))) == 6
