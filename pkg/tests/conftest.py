import pytest
from hypothesis import strategies as st

from centralizers.constructors import parse_ring_expr

SMALL_RINGS = ["Zn:2", "Zn:6", "Zn:9", "M:2:Zn:2", "M:2:Zn:3", "M:2:Zn:4", "F3:Zn:2", "TRI:Zn:2", "TRI:Zn:3", "M:2:M:2:Zn:2"]


@pytest.fixture(scope="session")
def rings():
    return {expr: parse_ring_expr(expr) for expr in SMALL_RINGS}


ring_exprs = st.sampled_from(SMALL_RINGS)


def elements_of(ring, count=1):
    coord = st.integers(min_value=-50, max_value=50)
    one = st.lists(coord, min_size=ring.rank, max_size=ring.rank).map(ring.element)
    return st.tuples(*[one] * count)
