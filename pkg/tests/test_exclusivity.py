"""Exclusivity-graph tests: enumeration, bounds, and the +-1 cycle minimum."""

from __future__ import annotations

import itertools

import pytest

from contextia import (
    CapacityError,
    ExclusivityGraph,
    ValidationError,
    assignment_to_mask,
    complete_graph,
    count_assignments,
    cycle_graph,
    enumerate_assignments_01,
    graph_from_edges,
    is_valid_assignment,
    mask_to_assignment,
    noncontextual_bound,
    pm_cycle_min,
)


def _assignments_oracle(graph):
    """Pure-python reference enumeration, independent of the bitmask path."""
    out = []
    for values in itertools.product((0, 1), repeat=graph.n_vertices):
        if all(values[i] * values[j] == 0 for i, j in graph.edges):
            out.append(values)
    return out


def _lucas(n):
    a, b = 2, 1
    for _ in range(n):
        a, b = b, a + b
    return a


# ============================================================================
# Graph type
# ============================================================================

def test_graph_normalizes_edges():
    g = graph_from_edges(4, [(2, 0), (0, 2), (3, 1)])
    assert g.sorted_edges == [(0, 2), (1, 3)]


def test_graph_rejects_bad_edges():
    with pytest.raises(ValidationError, match="self-loop"):
        graph_from_edges(3, [(1, 1)])
    with pytest.raises(ValidationError, match="out of range"):
        graph_from_edges(3, [(0, 3)])
    with pytest.raises(ValidationError, match="vertex"):
        ExclusivityGraph(n_vertices=0, edges=frozenset())


def test_cycle_and_complete_constructors():
    c5 = cycle_graph(5)
    assert c5.sorted_edges == [(0, 1), (0, 4), (1, 2), (2, 3), (3, 4)]
    k4 = complete_graph(4)
    assert len(k4.edges) == 6
    with pytest.raises(ValidationError):
        cycle_graph(2)


def test_mask_assignment_round_trip():
    for mask in range(32):
        values = mask_to_assignment(mask, 5)
        assert assignment_to_mask(values) == mask


def test_is_valid_assignment():
    c5 = cycle_graph(5)
    assert is_valid_assignment(c5, (1, 0, 1, 0, 0))
    assert not is_valid_assignment(c5, (1, 1, 0, 0, 0))
    assert not is_valid_assignment(c5, (1, 0, 1, 0))       # wrong length
    assert not is_valid_assignment(c5, (1, 0, 2, 0, 0))    # not {0,1}


# ============================================================================
# Enumeration
# ============================================================================

def test_pentagon_assignments_exactly_eleven():
    c5 = cycle_graph(5)
    assignments = enumerate_assignments_01(c5)
    assert len(assignments) == 11
    assert count_assignments(c5) == 11
    assert set(assignments) == set(_assignments_oracle(c5))
    # empty set, 5 singletons, 5 non-adjacent pairs
    sizes = sorted(sum(a) for a in assignments)
    assert sizes == [0, 1, 1, 1, 1, 1, 2, 2, 2, 2, 2]


def test_enumeration_matches_oracle_random_graphs():
    import numpy as np

    rng = np.random.default_rng(42)
    for _ in range(30):
        n = int(rng.integers(2, 9))
        pairs = list(itertools.combinations(range(n), 2))
        keep = [p for p in pairs if rng.random() < 0.4]
        g = graph_from_edges(n, keep)
        assert set(enumerate_assignments_01(g)) == set(_assignments_oracle(g))
        assert count_assignments(g) == len(_assignments_oracle(g))


def test_cycle_counts_are_lucas_numbers():
    for n in range(3, 16):
        assert count_assignments(cycle_graph(n)) == _lucas(n)


def test_enumeration_ascending_bitmask_order():
    g = cycle_graph(6)
    masks = [assignment_to_mask(a) for a in enumerate_assignments_01(g)]
    assert masks == sorted(masks)


def test_capacity_cap():
    big = graph_from_edges(25, [(0, 1)])
    with pytest.raises(CapacityError, match="cap"):
        enumerate_assignments_01(big)
    with pytest.raises(CapacityError):
        noncontextual_bound(big)
    with pytest.raises(ValidationError):
        pm_cycle_min(25)


def test_edgeless_graph_counts():
    g = graph_from_edges(10, [])
    assert count_assignments(g) == 1024
    assert noncontextual_bound(g) == 10


# ============================================================================
# Bounds
# ============================================================================

def test_noncontextual_bounds_cycles_and_cliques():
    # independence number of C_n is floor(n/2); of K_n is 1
    for n in range(3, 13):
        assert noncontextual_bound(cycle_graph(n)) == n // 2
    for n in range(1, 7):
        assert noncontextual_bound(complete_graph(n)) == 1
        assert count_assignments(complete_graph(n)) == n + 1


def test_pentagon_bound_is_two():
    assert noncontextual_bound(cycle_graph(5)) == 2


def _pm_oracle(n):
    best = None
    for signs in itertools.product((-1, 1), repeat=n):
        value = sum(signs[i] * signs[(i + 1) % n] for i in range(n))
        best = value if best is None else min(best, value)
    return best


def test_pm_cycle_min_closed_form():
    # odd cycles bottom out at -(n-2); even cycles reach -n
    for n in range(3, 13):
        expected = -n if n % 2 == 0 else -(n - 2)
        assert pm_cycle_min(n) == expected
        assert pm_cycle_min(n) == _pm_oracle(n)


def test_pm_cycle_min_pentagon():
    assert pm_cycle_min(5) == -3
