import pytest

from centralizers.constructors import (
    RingExprError,
    antisymmetric_triple_ring,
    corner_projection_map,
    cyclic_ring,
    doubled_corner_map,
    entry_sum_map,
    matrix_ring,
    parse_ring_expr,
    row_to_column_map,
    triangular_example_ring,
    triangular_pair,
)
from centralizers.maps import apply


def test_matrix_units_multiply():
    ring = matrix_ring(cyclic_ring(5), 3)
    e = {name: ring.generator(name) for name in ring.generator_names}
    for i in "123":
        for j in "123":
            for k in "123":
                for l in "123":
                    prod = ring.mul(e[f"e{i}{j}"], e[f"e{k}{l}"])
                    assert prod == (e[f"e{i}{l}"] if j == k else ring.zero)
    assert ring.one == ring.add(ring.add(e["e11"], e["e22"]), e["e33"])


def test_matrix_over_matrix_ring():
    ring = parse_ring_expr("M:2:M:2:Zn:2")
    assert ring.rank == 16 and ring.is_unital


def test_antisymmetric_triple_ring():
    f = antisymmetric_triple_ring(cyclic_ring(3))
    p, q, pq = f.generators()
    assert f.mul(p, q) == pq
    assert f.mul(q, p) == f.neg(pq)
    assert f.mul(p, p) == f.zero
    assert f.mul(pq, p) == f.zero
    assert not f.is_unital


def test_triangular_ring():
    base = cyclic_ring(2)
    ring = triangular_example_ring(base)
    assert ring.cardinality == 64 and not ring.is_unital
    a, b = triangular_pair(base)
    assert ring.format(a) == "(P,0)" and ring.format(b) == "(Q,0)"
    # (A1, B1)(A2, B2) = (0, A1 A2)
    assert ring.format(ring.mul(a, b)) == "(0,PQ)"
    T = corner_projection_map(base)
    assert ring.format(apply(ring, T, ring.mul(a, b))) == "(0,PQ)"


def test_named_maps():
    r2 = parse_ring_expr("M:2:Zn:2")
    x = r2.parse("e11 + e12 + e22")
    assert apply(r2, entry_sum_map(r2), x) == r2.parse("3")
    assert apply(r2, row_to_column_map(r2), r2.parse("e11 + e12")) == r2.parse("e11 + e21")
    r4 = parse_ring_expr("M:2:Zn:4")
    T = doubled_corner_map(r4)
    assert apply(r4, T, r4.parse("2*e12")) == r4.parse("2*e11 + 2*e21")
    assert apply(r4, T, r4.parse("2*e11 + 2*e21 + 2*e22")) == r4.zero
    with pytest.raises(ValueError):
        doubled_corner_map(r2)


@pytest.mark.parametrize("expr", ["", "Zn", "Zn:1", "Zn:x", "M:0:Zn:2", "Q:2", "Zn:2:3", "@/no/such/file.json"])
def test_bad_expressions(expr):
    with pytest.raises(RingExprError):
        parse_ring_expr(expr)


def test_names():
    assert parse_ring_expr("M:2:Zn:9").name == "M2(Z9)"
    assert parse_ring_expr("TRI:Zn:2").name == "TRI(Z2)"
