import numpy as np
import pytest

from centralizers.constructors import entry_sum_map, parse_ring_expr, row_to_column_map
from centralizers.engine import (
    BUCKETS,
    DegreeError,
    UnboundSlotError,
    classify,
    compile_identity,
    exhaustive_solutions,
    find_violation,
    instantiation_set,
    satisfies,
    solve_identity,
    solve_staged,
    spot_check,
    verify_sufficiency,
)
from centralizers.identities import get_law, mn_jordan, parse_identity
from centralizers.maps import map_index, scalar_map, zero_map


@pytest.fixture(scope="module")
def m2():
    return {n: parse_ring_expr(f"M:2:Zn:{n}") for n in (2, 3, 4, 5, 9)}


@pytest.mark.parametrize(
    "law, sizes",
    [
        ("left-centralizer", {2: 16, 3: 81, 4: 256, 9: 6561}),
        ("jordan-left", {2: 16, 3: 81, 4: 256, 9: 6561}),
        ("two-sided-centralizer", {2: 2, 3: 3, 4: 4, 9: 9}),
        ("vukman-1999", {2: 32, 3: 3, 4: 64, 9: 9}),
        ("vukman-2001", {2: 1, 3: 1, 4: 1, 9: 1}),
        ("vukman-ulbl-2003a", {2: 2, 3: 3, 4: 4, 9: 9}),
        ("vukman-ulbl-2003b", {2: 16, 3: 3, 4: 32, 9: 9}),
    ],
)
def test_solution_cardinalities(m2, law, sizes):
    for n, size in sizes.items():
        assert solve_identity(m2[n], get_law(law)).cardinality == size, n


def test_polar_forms_give_same_spaces(m2):
    for base in ("vukman-1999", "jordan-left", "jordan-right"):
        plain = solve_identity(m2[4], get_law(base))
        polar = solve_identity(m2[4], get_law(base + "-polar" if base != "vukman-1999" else "vukman-1999-polar"))
        assert plain.same_as(polar)


def test_jordan_equals_left_canonically(m2):
    a = solve_identity(m2[9], get_law("jordan-left"))
    b = solve_identity(m2[9], get_law("left-centralizer"))
    assert a.same_as(b)
    assert a.cardinality == 6561 and not a.sampled


def test_classification(m2):
    space = solve_identity(m2[3], get_law("vukman-1999"))
    assert space.classification == {"zero": 1, "scalar-form": 2, "two-sided": 0, "left-only": 0, "right-only": 0, "jordan-left-only": 0, "other": 0}
    labels = classify(m2[2], [zero_map(m2[2]), entry_sum_map(m2[2]), scalar_map(m2[2], m2[2].one)])
    assert [BUCKETS[i] for i in labels] == ["zero", "other", "scalar-form"]


def test_enumeration_cap_samples(m2):
    space = solve_identity(m2[4], get_law("left-centralizer"), enum_cap=10)
    assert space.sampled and space.cardinality == 256
    assert sum(space.classification.values()) == 1 + len(space.kernel_basis)


def test_mn_jordan_bindings(m2):
    ring = m2[5]
    for m, n in [(1, 1), (1, 2), (2, 1)]:
        for c in range(5):
            T0 = scalar_map(ring, ring.scalar_mul(c, ring.one))
            space = solve_identity(ring, mn_jordan(m, n), {"T0": T0})
            assert space.cardinality == 1 and space.contains(T0)


def test_affine_identity(m2):
    # T(xy) = xy has exactly the identity map as solution
    space = solve_identity(m2[3], parse_identity("T(x*y) = x*y"))
    assert space.cardinality == 1
    assert space.particular == scalar_map(m2[3], m2[3].one)


def test_unbound_slot(m2):
    with pytest.raises(UnboundSlotError):
        solve_identity(m2[3], get_law("vukman-1999-t0"))


def test_degree_limits(m2):
    with pytest.raises(DegreeError):
        compile_identity(m2[2], parse_identity("T(x*x*x) = x*x*T(x)"))
    with pytest.raises(DegreeError):
        instantiation_set(m2[2], parse_identity("T(x*x) = T(x)"), "x")


def test_staged(m2):
    stages = solve_staged(m2[3], get_law("vukman-1999"), get_law("vukman-1999-t0"))
    assert len(stages) == 3
    for T0, space in stages:
        assert space.cardinality == 1 and space.contains(T0)


def test_satisfies_and_violations(m2):
    r = m2[2]
    T = entry_sum_map(r)
    law = get_law("vukman-1999")
    assert satisfies(r, law, T)
    assert find_violation(r, law, T)
    assert spot_check(r, law, T, samples=200)
    S = row_to_column_map(r)
    law = get_law("vukman-ulbl-2003b")
    assert not satisfies(r, law, S)
    v = find_violation(r, law, S)
    assert not v
    point = {k: r.format(e) for k, e in v.witness[1].items()}
    assert point == {"x": "e11 + e12", "y": "e11"}


def test_exhaustive_solutions_match(m2):
    r = m2[2]
    for key in ("vukman-2001", "vukman-ulbl-2003a"):
        space = solve_identity(r, get_law(key))
        assert exhaustive_solutions(r, get_law(key)) == sorted(map_index(r, m) for m in space.stack())


def test_exhaustive_solutions_parallel(m2):
    r = m2[2]
    law = get_law("jordan-left")
    assert exhaustive_solutions(r, law, workers=2) == exhaustive_solutions(r, law)


def test_verify_sufficiency(m2):
    ok = verify_sufficiency(m2[2], get_law("vukman-1999"))
    assert ok.sound and ok.complete
    big = verify_sufficiency(m2[3], get_law("vukman-1999"))
    assert big.sound and big.complete is None and bool(big)


def test_to_dict(m2):
    d = solve_identity(m2[2], get_law("vukman-2001")).to_dict()
    assert d["cardinality"] == 1 and d["kernel_basis"] == []
    assert d["particular"] == [[0] * 4] * 4


def test_non_unital_ring_solves():
    tri = parse_ring_expr("TRI:Zn:2")
    space = solve_identity(tri, get_law("jordan-left"))
    left = solve_identity(tri, get_law("left-centralizer"))
    assert space.cardinality > left.cardinality
    assert space.classification["jordan-left-only"] > 0
