import itertools

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import F4, F9, ring_and_tuple, ring_and_unit, rings_strategy
from oracles import (
    determinant_continuant,
    naive_m_matrix,
    naive_projective_order,
    small_rings,
)
from quiddity_lab.continuant import (
    constant_continuant,
    continuant,
    continuant_prefixes,
    continuant_triple,
    determinant,
    extend_to_solution,
    m_matrix,
    mat_pow,
    projective_order,
    scalar_sign,
    sl2_order,
)
from quiddity_lab.errors import ContinuantNotUnitSign
from quiddity_lab.quiddity import is_quiddity
from quiddity_lab.ring_core import Mat2, ZMod


@pytest.mark.parametrize("N", [5, 7, 11])
def test_identity_solutions(N):
    r = ZMod(N)
    minus_id = Mat2(N - 1, 0, 0, N - 1)
    assert m_matrix(r, (1, 1, 1)) == minus_id
    assert m_matrix(r, (1, 2, 1, 2)) == minus_id


def test_small_continuants():
    r = ZMod(101)
    assert continuant(r, ()) == 1
    assert continuant(r, (5,)) == 5
    assert continuant(r, (2, 3)) == 5
    assert continuant(r, (1, 1, 1)) == 100
    assert continuant_prefixes(r, (2, 3)) == [1, 2, 5]
    assert continuant_triple(r, (2, 3, 4)) == (continuant(r, (2, 3, 4)), 5, continuant(r, (3, 4)))


@pytest.mark.parametrize("ring", [r for r in small_rings(16)], ids=str)
def test_palindrome_exhaustive(ring):
    elems = list(ring.elements())
    # every length up to 8 would be 16^8 tuples; lengths are capped so each ring stays small
    max_len = max(n for n in range(1, 9) if len(elems) ** n <= 20000)
    for n in range(max_len + 1):
        for t in itertools.product(elems, repeat=n):
            assert continuant(ring, t) == continuant(ring, t[::-1])


@given(ring_and_tuple(max_len=30))
def test_palindrome_random(rt):
    ring, t = rt
    assert continuant(ring, t) == continuant(ring, t[::-1])


def _alternate(ring, u, t):
    v = ring.inv(u)
    return tuple(ring.mul(u if i % 2 == 0 else v, a) for i, a in enumerate(t))


@given(ring_and_unit(), st.data())
def test_unit_scaling(ru, data):
    ring, u = ru
    n = data.draw(st.integers(0, 12))
    t = tuple(ring.element_at(i) for i in
              data.draw(st.lists(st.integers(0, ring.cardinality - 1), min_size=n, max_size=n)))
    scaled = continuant(ring, _alternate(ring, u, t))
    if n % 2 == 0:
        assert scaled == continuant(ring, t)
    else:
        assert scaled == ring.mul(u, continuant(ring, t))


@given(ring_and_tuple(min_len=1, max_len=12))
def test_matrix_entries_are_continuants(rt):
    ring, t = rt
    m = m_matrix(ring, t)
    n = len(t)
    assert m.a11 == continuant(ring, t)
    assert m.a12 == ring.neg(continuant(ring, t[1:]))
    assert m.a21 == continuant(ring, t[:-1])
    assert m.a22 == (ring.neg(continuant(ring, t[1:-1])) if n >= 2 else ring.zero)
    assert m == Mat2(*naive_m_matrix(ring, t)[0], *naive_m_matrix(ring, t)[1])
    assert determinant(ring, m) == ring.one


@given(ring_and_tuple(max_len=7))
def test_continuant_is_tridiagonal_determinant(rt):
    ring, t = rt
    assert continuant(ring, t) == determinant_continuant(ring, t)


@pytest.mark.parametrize("ring", small_rings(64), ids=str)
def test_constant_continuant_matches_recurrence(ring):
    for x in ring.elements():
        prev, cur = ring.zero, ring.one
        assert constant_continuant(ring, x, 0) == cur
        for n in range(1, 201):
            prev, cur = cur, ring.sub(ring.mul(x, cur), prev)
            assert constant_continuant(ring, x, n) == cur


@given(ring_and_tuple(max_len=10))
def test_extend_to_solution(rt):
    ring, t = rt
    sign = ring.sign_of(continuant(ring, t))
    if sign is None:
        with pytest.raises(ContinuantNotUnitSign):
            extend_to_solution(ring, t)
        return
    s = extend_to_solution(ring, t)
    assert s[1:-1] == t
    expected = -sign if ring.characteristic != 2 else 1
    assert is_quiddity(ring, s) == expected


@given(rings_strategy(max_n=40), st.data())
def test_projective_order_matches_naive(ring, data):
    t = tuple(ring.element_at(i) for i in
              data.draw(st.lists(st.integers(0, ring.cardinality - 1), min_size=1, max_size=4)))
    m = m_matrix(ring, t)
    k = projective_order(ring, m)
    assert k == naive_projective_order(ring, naive_m_matrix(ring, t))
    assert scalar_sign(ring, mat_pow(ring, m, k)) is not None


@pytest.mark.parametrize(
    "ring, order", [(ZMod(7), 336), (ZMod(4), 48), (ZMod(12), 1152), (F4, 60), (F9, 720)]
)
def test_sl2_order(ring, order):
    assert sl2_order(ring) == order


def test_scalar_sign():
    r = ZMod(7)
    assert scalar_sign(r, Mat2(1, 0, 0, 1)) == 1
    assert scalar_sign(r, Mat2(6, 0, 0, 6)) == -1
    assert scalar_sign(r, Mat2(2, 0, 0, 2)) is None
    assert scalar_sign(F4, Mat2(F4.one, F4.zero, F4.zero, F4.one)) == 1
