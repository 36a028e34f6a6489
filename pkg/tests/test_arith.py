import itertools
import math

import pytest
import sympy
from hypothesis import given
from hypothesis import strategies as st

from conftest import F4, F9
from oracles import brute_square_set, legendre_by_reciprocity, small_fields
from quiddity_lab.arith import (
    count_x_with_square_shift,
    euler_phi,
    factorize,
    is_prime,
    is_square,
    legendre,
    mersenne_factorization,
    mersenne_phi_deficit,
    moebius,
    splits_char2,
    square_table,
    szymiczek_sum_check,
    trace_char2,
)
from quiddity_lab.errors import (
    AZero,
    CharTwo,
    NotAField,
    OutOfRange,
    PEven,
    PNotPrime,
    WrongCharacteristic,
)
from quiddity_lab.ring_core import ZMod, standard_field

FIELDS_128 = small_fields(128)
ODD_PRIMES_1000 = [p for p in range(3, 1000) if sympy.isprime(p)]


def test_legendre_matches_reciprocity_exhaustive():
    for p in ODD_PRIMES_1000:
        for a in range(1, p):
            assert legendre(a, p) == legendre_by_reciprocity(a, p), (a, p)


def test_legendre_edge_cases():
    assert legendre(0, 7) == 0
    assert legendre(14, 7) == 0
    assert legendre(-1, 5) == 1
    assert legendre(-1, 7) == -1
    with pytest.raises(PEven):
        legendre(3, 8)
    with pytest.raises(PNotPrime):
        legendre(3, 15)


@pytest.mark.parametrize("field", FIELDS_128, ids=str)
def test_square_table_size_and_is_square(field):
    table = square_table(field)
    q = field.cardinality
    assert len(table) == (q if field.characteristic == 2 else (q + 1) // 2)
    assert table == brute_square_set(field)
    for x in field.elements():
        assert is_square(field, x) == (x in table)


@pytest.mark.parametrize("field", [f for f in FIELDS_128 if f.characteristic != 2], ids=str)
def test_square_shift_counts(field):
    q = field.cardinality
    for a in field.elements():
        if field.is_zero(a):
            continue
        expected = (q + 1) // 2 if is_square(field, field.neg(a)) else (q - 1) // 2
        assert count_x_with_square_shift(field, a) == expected


@pytest.mark.parametrize("N, a, expected", [(7, 4, 3), (13, 4, 7), (5, 1, 3)])
def test_square_shift_examples(N, a, expected):
    assert count_x_with_square_shift(ZMod(N), a) == expected


def test_square_shift_errors():
    with pytest.raises(CharTwo):
        count_x_with_square_shift(F4, F4.one)
    with pytest.raises(AZero):
        count_x_with_square_shift(ZMod(7), 0)


def test_is_square_needs_field():
    with pytest.raises(NotAField):
        is_square(ZMod(9), 4)


def test_square_table_on_non_field():
    assert square_table(ZMod(8)) == frozenset({0, 1, 4})


@pytest.mark.parametrize(
    "n, expected",
    [(511, {7: 1, 73: 1}), (4095, {3: 2, 5: 1, 7: 1, 13: 1}), (2, {2: 1})],
)
def test_factorize_examples(n, expected):
    assert factorize(n).as_dict() == expected


@pytest.mark.parametrize("n", range(2, 41))
def test_factorize_mersenne_recomposes(n):
    m = 2**n - 1
    if m < 2:
        return
    fac = factorize(m)
    assert math.prod(p**e for p, e in fac.pairs) == m
    assert all(is_prime(p) for p in fac.primes)
    assert fac.as_dict() == sympy.factorint(m)


@given(st.integers(2, 2**64 - 1))
def test_factorize_matches_sympy(n):
    assert factorize(n).as_dict() == sympy.factorint(n)


def test_factorize_hard_semiprime():
    p, q = 4294967291, 4294967279
    assert factorize(p * q).as_dict() == {q: 1, p: 1}


@pytest.mark.parametrize("n", [0, 1, 2**64])
def test_factorize_out_of_range(n):
    with pytest.raises(OutOfRange):
        factorize(n)


@given(st.integers(1, 10**6), st.integers(1, 10**6))
def test_phi_multiplicative(a, b):
    if math.gcd(a, b) == 1:
        assert euler_phi(a * b) == euler_phi(a) * euler_phi(b)
    assert euler_phi(a) == sympy.totient(a)


@given(st.integers(1, 10**6))
def test_moebius_matches_sympy(n):
    assert moebius(n) == sympy.mobius(n)


@given(st.integers(0, 2**64))
def test_is_prime_matches_sympy(n):
    assert is_prime(n) == sympy.isprime(n)


def test_mersenne_phi_deficit():
    assert mersenne_phi_deficit(2, 64) == [12, 20, 24, 28, 30, 36, 40, 48, 56, 60, 64]
    assert mersenne_phi_deficit(2, 11) == []
    assert mersenne_phi_deficit(12, 12) == [12]
    with pytest.raises(OutOfRange):
        mersenne_phi_deficit(2, 65)


@pytest.mark.parametrize("n", [12, 30, 48, 60, 64])
def test_mersenne_factorization_matches_sympy(n):
    assert mersenne_factorization(n).as_dict() == sympy.factorint(2**n - 1)


def test_mersenne_deficit_matches_direct_totient():
    direct = [n for n in range(2, 41) if sympy.totient(2**n - 1) < 2 ** (n - 1)]
    assert mersenne_phi_deficit(2, 40) == direct


@pytest.mark.parametrize("field", FIELDS_128, ids=str)
def test_szymiczek_identity(field):
    for m in range(0, 2 * (field.cardinality - 1) + 1):
        assert szymiczek_sum_check(field, m), m


@pytest.mark.parametrize("n", range(1, 9))
def test_trace_properties(n):
    field = standard_field(2, n) if n > 1 else ZMod(2)
    elems = list(field.elements())
    t = {x: trace_char2(field, x) for x in elems}
    for x in elems:
        assert t[field.mul(x, x)] == t[x]
    for x, y in itertools.product(elems, repeat=2):
        assert t[field.add(x, y)] == t[x] ^ t[y]
    assert sum(1 for x in elems if t[x] == 0) == 2 ** (n - 1)


@pytest.mark.parametrize("n", [2, 3, 4])
def test_splits_char2_matches_brute_force(n):
    field = standard_field(2, n)
    elems = list(field.elements())
    for a, b in itertools.product(elems, repeat=2):
        has_root = any(
            field.add(field.add(field.mul(x, x), field.mul(a, x)), b) == field.zero for x in elems
        )
        assert splits_char2(field, a, b) == has_root


def test_trace_wrong_characteristic():
    with pytest.raises(WrongCharacteristic):
        trace_char2(F9, F9.one)
