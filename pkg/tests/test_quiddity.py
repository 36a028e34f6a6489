import pytest
from hypothesis import assume, given
from hypothesis import strategies as st

from conftest import ring_and_tuple
from oracles import brute_force_reducible, enumerate_solutions, naive_sign, small_rings
from quiddity_lab.errors import NotASolution, RingMismatch, TooShort
from quiddity_lab.quiddity import (
    QuiddityTuple,
    ReductionWitness,
    classify,
    equivalent,
    is_irreducible,
    is_quiddity,
    is_reducible,
    oplus,
    rotations_and_reversals,
    verify_witness,
)
from quiddity_lab.ring_core import ZMod

Z7 = ZMod(7)


def test_oplus_examples():
    assert oplus(Z7, (1, 1, 1), (1, 1, 1)) == (2, 1, 2, 1)
    assert oplus(ZMod(10), (1, 2, 3), (4, 5, 6)) == (7, 2, 7, 5)
    with pytest.raises(TooShort):
        oplus(Z7, (1,), (1, 1, 1))


def test_is_quiddity_signs():
    assert is_quiddity(ZMod(5), (1, 1, 1)) == -1
    assert is_quiddity(ZMod(5), (1, 2, 1, 2)) == -1
    assert is_quiddity(ZMod(5), (0, 0, 0, 0)) == 1
    assert is_quiddity(ZMod(5), (1, 2, 3)) is None
    with pytest.raises(TooShort):
        is_quiddity(Z7, ())


def test_quiddity_tuple_of():
    q = QuiddityTuple.of(ZMod(5), (1, 1, 1))
    assert q.sign == -1 and len(q) == 3
    with pytest.raises(NotASolution):
        QuiddityTuple.of(ZMod(5), (1, 2, 3))
    with pytest.raises(RingMismatch):
        QuiddityTuple.of(ZMod(5), (1, 1, 9))


def test_reducible_witness_z7():
    # (2, 3)-dynomial over Z/7: K_3(2, 3, 2) = 1 is the first unit window
    t = (2, 3) * 4
    w = is_reducible(Z7, t)
    assert isinstance(w, ReductionWitness)
    assert (w.start, w.window_len) == (0, 3)
    assert w.summand.entries == (5, 2, 3, 2, 5)
    assert verify_witness(QuiddityTuple.of(Z7, t), w)


def test_reducibility_requires_size_three():
    with pytest.raises(TooShort):
        is_reducible(ZMod(2), (0, 0))
    with pytest.raises(NotASolution):
        is_reducible(Z7, (1, 2, 3))


def test_size_three_and_four_irreducible():
    assert is_irreducible(ZMod(5), (1, 1, 1))
    assert is_irreducible(Z7, (0, 0, 0, 0))


def test_classify():
    assert classify(ZMod(5), (1, 1, 1)) == {
        "solution": True, "sign": -1, "reducible": False, "witness": None,
    }
    out = classify(ZMod(2), (0, 0))
    assert out["solution"] and out["reducible"] is None and "note" in out
    assert classify(Z7, (1, 2, 3))["solution"] is False
    red = classify(Z7, (2, 3) * 4)
    assert red["reducible"] and red["witness"]["window_len"] == 3


@given(st.data())
def test_fundamental_oplus_property(data):
    ring = data.draw(st.sampled_from(small_rings(16)))
    sols = _solutions(ring)
    t2 = data.draw(st.sampled_from([s for s in sols if len(s) >= 2]))
    n = data.draw(st.integers(2, 8))
    t1 = tuple(ring.element_at(i) for i in
               data.draw(st.lists(st.integers(0, ring.cardinality - 1), min_size=n, max_size=n)))
    s = oplus(ring, t1, t2)
    assert (naive_sign(ring, s) is not None) == (naive_sign(ring, t1) is not None)


_SOLUTION_CACHE: dict = {}


def _solutions(ring):
    if ring not in _SOLUTION_CACHE:
        _SOLUTION_CACHE[ring] = enumerate_solutions(ring, 5 if ring.cardinality <= 9 else 4)
    return _SOLUTION_CACHE[ring]


@given(st.lists(st.integers(0, 4), min_size=1, max_size=6), st.data())
def test_equivalence_relation(t, data):
    t = tuple(t)
    rots = rotations_and_reversals(t)
    u = data.draw(st.sampled_from(rots))
    v = data.draw(st.sampled_from(rotations_and_reversals(u)))
    assert equivalent(t, t)
    assert equivalent(t, u) and equivalent(u, t)
    assert equivalent(t, v)
    other = data.draw(st.lists(st.integers(0, 4), min_size=len(t), max_size=len(t)))
    assert equivalent(t, tuple(other)) == equivalent(tuple(other), t)


@given(st.data())
def test_equivalent_tuples_share_verdicts(data):
    ring = data.draw(st.sampled_from(small_rings(9)))
    sols = [s for s in _solutions(ring) if len(s) >= 3]
    t = data.draw(st.sampled_from(sols))
    u = data.draw(st.sampled_from(rotations_and_reversals(t)))
    assert is_quiddity(ring, u) is not None
    assert (is_reducible(ring, t) is None) == (is_reducible(ring, u) is None)


@given(ring_and_tuple(min_len=3, max_len=9, max_n=16))
def test_negation_preserves_verdicts(rt):
    ring, t = rt
    neg = tuple(ring.neg(a) for a in t)
    assert (is_quiddity(ring, t) is None) == (is_quiddity(ring, neg) is None)
    if is_quiddity(ring, t) is not None:
        assert is_irreducible(ring, t) == is_irreducible(ring, neg)


@pytest.mark.parametrize("ring", small_rings(9), ids=str)
def test_negation_preserves_verdicts_exhaustive(ring):
    for t in _solutions(ring):
        if len(t) < 3:
            continue
        neg = tuple(ring.neg(a) for a in t)
        assert is_irreducible(ring, t) == is_irreducible(ring, neg)


@pytest.mark.parametrize("ring", small_rings(7), ids=str)
def test_scan_matches_brute_force_oracle(ring):
    disagreements = []
    for t in enumerate_solutions(ring, 7):
        if len(t) < 3:
            continue
        scan = is_reducible(ring, t) is not None
        if scan != brute_force_reducible(ring, t):
            disagreements.append(t)
    assert disagreements == []


@pytest.mark.parametrize("ring", small_rings(9), ids=str)
def test_every_witness_verifies(ring):
    for t in _solutions(ring):
        if len(t) < 3:
            continue
        w = is_reducible(ring, t)
        if w is not None:
            assert verify_witness(QuiddityTuple.of(ring, t), w)


def test_verify_witness_rejects_tampering():
    t = QuiddityTuple.of(Z7, (2, 3) * 4)
    w = is_reducible(Z7, t.entries)
    bad = ReductionWitness((w.start + 1) % 8, w.window_len, w.summand, w.complement)
    assert not verify_witness(t, bad)
    short = ReductionWitness(w.start, 2, w.summand, w.complement)
    assert not verify_witness(t, short)


@given(ring_and_tuple(min_len=3, max_len=8, max_n=16))
def test_non_solutions_rejected(rt):
    ring, t = rt
    assume(is_quiddity(ring, t) is None)
    with pytest.raises(NotASolution):
        is_reducible(ring, t)
