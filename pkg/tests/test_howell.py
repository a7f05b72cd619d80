import itertools

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from centralizers.campaigns import brute_force_solutions
from centralizers.howell import (
    enumerate_span,
    howell_form,
    in_span,
    kernel_mod_n,
    leading_columns,
    reduce_vector,
    span_size,
)


def span_brute(m, n):
    m = np.asarray(m) % n
    return {tuple(int(v) for v in np.asarray(c) @ m % n) for c in itertools.product(range(n), repeat=len(m))}


@st.composite
def systems(draw, max_dim=4):
    n = draw(st.sampled_from([2, 3, 4, 6, 8, 9, 12]))
    rows = draw(st.integers(1, max_dim))
    cols = draw(st.integers(1, max_dim))
    a = np.array(draw(st.lists(st.integers(0, n - 1), min_size=rows * cols, max_size=rows * cols))).reshape(rows, cols)
    b = np.array(draw(st.lists(st.integers(0, n - 1), min_size=rows, max_size=rows)))
    if draw(st.booleans()):
        x = np.array(draw(st.lists(st.integers(0, n - 1), min_size=cols, max_size=cols)))
        b = a @ x % n
    return a, b, n


@settings(max_examples=150, deadline=None)
@given(systems(max_dim=3))
def test_howell_form_spans_the_same_module(system):
    a, _, n = system
    h = howell_form(a, n)
    span = span_brute(a, n)
    assert span_size(h, n) == len(span)
    assert {tuple(int(v) for v in row) for row in enumerate_span(h, n)} == span
    for v in itertools.islice(itertools.product(range(n), repeat=a.shape[1]), 60):
        assert in_span(v, h, n) == (tuple(v) in span)


@settings(max_examples=100, deadline=None)
@given(systems(max_dim=3), st.integers(0, 2**31))
def test_howell_form_is_canonical(system, seed):
    a, _, n = system
    rng = np.random.default_rng(seed)
    # mix rows with a random combination and append a redundant row
    extra = rng.integers(0, n, size=(1, a.shape[0])) @ a % n
    shuffled = np.vstack([a[rng.permutation(len(a))], extra])
    assert np.array_equal(howell_form(a, n), howell_form(shuffled, n))
    h = howell_form(a, n)
    assert leading_columns(h) == sorted(leading_columns(h))
    for row in h:
        lead = row[np.flatnonzero(row)[0]]
        assert n % lead == 0


@settings(max_examples=150, deadline=None)
@given(systems(max_dim=5))
def test_kernel_matches_brute_force(system):
    a, b, n = system
    sol = kernel_mod_n(a, b, n)
    brute = brute_force_solutions(a, b, n)
    assert sol.cardinality == len(brute)
    if sol.consistent:
        got = sorted(sum(int(v) * n**i for i, v in enumerate(t)) for t in sol.solutions())
        assert got == brute
        assert sol.contains(sol.particular)
    else:
        assert brute == []


def test_coset_representative_is_canonical():
    n = 12
    h = howell_form([[2, 4, 6], [0, 3, 9]], n)
    v = np.array([5, 7, 1])
    w = (v + 5 * h[0] + 7 * h[-1]) % n
    assert np.array_equal(reduce_vector(v, h, n), reduce_vector(w, h, n))


def test_inconsistent_system():
    sol = kernel_mod_n([[2]], [1], 4)
    assert not sol.consistent and sol.cardinality == 0
    assert len(sol.solutions()) == 0


def test_same_solution_set():
    a = kernel_mod_n([[1, 1], [2, 2]], [1, 2], 4)
    b = kernel_mod_n([[3, 3]], [3], 4)
    assert a.same_as(b)
    assert not a.same_as(kernel_mod_n([[1, 0]], [1], 4))


def test_shape_errors():
    with pytest.raises(ValueError):
        howell_form(np.zeros(3), 4)
