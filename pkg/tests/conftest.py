import sys
from pathlib import Path

import pytest
from hypothesis import settings
from hypothesis import strategies as st

sys.path.insert(0, str(Path(__file__).parent))

from quiddity_lab.ring_core import GF, ZMod, standard_field  # noqa: E402

settings.register_profile("default", max_examples=200, deadline=None)
settings.load_profile("default")

GOLDEN = Path(__file__).parent / "golden"

F4 = GF(2, 2, (1, 1, 1))
F8 = standard_field(2, 3)
F9 = GF(3, 2, (1, 0, 1))
F16 = standard_field(2, 4)
F25 = GF(5, 2, (1, 1, 1))
F27 = GF(3, 3, (2, 0, 1, 1))
F49 = GF(7, 2, (1, 0, 1))


@pytest.fixture(scope="session")
def golden():
    import json

    return json.loads((GOLDEN / "reference_tables.json").read_text())


def rings_strategy(max_n: int = 64):
    zmods = st.integers(2, max_n).map(ZMod)
    gfs = st.sampled_from([F4, F8, F9, F16, F25, F27, F49])
    return st.one_of(zmods, gfs)


@st.composite
def ring_and_tuple(draw, min_len=0, max_len=10, max_n=64):
    ring = draw(rings_strategy(max_n))
    n = draw(st.integers(min_len, max_len))
    idx = draw(st.lists(st.integers(0, ring.cardinality - 1), min_size=n, max_size=n))
    return ring, tuple(ring.element_at(i) for i in idx)


@st.composite
def ring_and_unit(draw, max_n=64):
    ring = draw(rings_strategy(max_n))
    units = [x for x in ring.elements() if ring.is_unit(x)]
    return ring, draw(st.sampled_from(units))
