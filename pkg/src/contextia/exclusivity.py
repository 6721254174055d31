"""Exclusivity graphs and exhaustive classical analysis.

Vertices stand for yes-no measurement events; an edge joins two events that
are jointly measurable and mutually exclusive. A deterministic {0,1} value
assignment must therefore vanish on at least one endpoint of every edge,
i.e. the admissible assignments are exactly the independent-set indicator
vectors of the graph. Enumeration is exhaustive over bitmasks, capped so the
semantics stay honest.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import CapacityError, ValidationError

#: Largest vertex count admitted to the exhaustive 2^n scans.
ENUMERATION_CAP = 24

_CHUNK_BITS = 20


@dataclass(frozen=True)
class ExclusivityGraph:
    """An undirected graph of mutually exclusive event pairs."""

    n_vertices: int
    edges: frozenset[tuple[int, int]]

    def __post_init__(self):
        if self.n_vertices < 1:
            raise ValidationError(f"graph needs at least one vertex, got {self.n_vertices}")
        normalized = set()
        for edge in self.edges:
            i, j = edge
            if i == j:
                raise ValidationError(f"self-loop at vertex {i}")
            if not (0 <= i < self.n_vertices and 0 <= j < self.n_vertices):
                raise ValidationError(f"edge {edge} out of range for {self.n_vertices} vertices")
            normalized.add((min(i, j), max(i, j)))
        object.__setattr__(self, "edges", frozenset(normalized))

    @property
    def sorted_edges(self) -> list[tuple[int, int]]:
        return sorted(self.edges)

    def edge_masks(self) -> np.ndarray:
        """Bitmask per edge with both endpoint bits set."""
        return np.array([(1 << i) | (1 << j) for i, j in self.sorted_edges],
                        dtype=np.int64)


def graph_from_edges(n_vertices: int, edges) -> ExclusivityGraph:
    """Build a graph from any iterable of vertex pairs."""
    return ExclusivityGraph(n_vertices=n_vertices,
                            edges=frozenset((int(i), int(j)) for i, j in edges))


def cycle_graph(n: int) -> ExclusivityGraph:
    """The n-cycle: edges {i, i+1 mod n}. Requires n >= 3."""
    if n < 3:
        raise ValidationError(f"cycle needs n >= 3, got {n}")
    return graph_from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def complete_graph(n: int) -> ExclusivityGraph:
    """The complete graph K_n: every pair exclusive."""
    if n < 1:
        raise ValidationError(f"complete graph needs n >= 1, got {n}")
    return graph_from_edges(n, [(i, j) for i in range(n) for j in range(i + 1, n)])


def _check_capacity(n: int):
    if n > ENUMERATION_CAP:
        raise CapacityError(
            f"exhaustive scan over 2^{n} assignments exceeds the cap of "
            f"2^{ENUMERATION_CAP} vertices"
        )


def _valid_mask_chunks(graph: ExclusivityGraph):
    """Yield arrays of bitmasks encoding valid assignments, ascending."""
    n = graph.n_vertices
    emasks = graph.edge_masks()
    total = 1 << n
    chunk = 1 << _CHUNK_BITS
    for start in range(0, total, chunk):
        masks = np.arange(start, min(start + chunk, total), dtype=np.int64)
        keep = np.ones(masks.shape, dtype=bool)
        for em in emasks:
            keep &= (masks & em) != em
        yield masks[keep]


def _popcount(masks: np.ndarray, n_bits: int) -> np.ndarray:
    counts = np.zeros(masks.shape, dtype=np.int64)
    for bit in range(n_bits):
        counts += (masks >> bit) & 1
    return counts


def is_valid_assignment(graph: ExclusivityGraph, values) -> bool:
    """True iff ``values[i] * values[j] == 0`` on every edge."""
    vals = list(values)
    if len(vals) != graph.n_vertices or any(v not in (0, 1) for v in vals):
        return False
    return all(vals[i] * vals[j] == 0 for i, j in graph.edges)


def mask_to_assignment(mask: int, n: int) -> tuple[int, ...]:
    return tuple((mask >> i) & 1 for i in range(n))


def assignment_to_mask(values) -> int:
    return sum(1 << i for i, v in enumerate(values) if v)


def enumerate_assignments_01(graph: ExclusivityGraph) -> list[tuple[int, ...]]:
    """All {0,1} value assignments respecting the exclusivity edges.

    Returns the independent-set indicator vectors of the graph, complete and
    duplicate-free, in ascending bitmask order (bit i = vertex i).
    """
    _check_capacity(graph.n_vertices)
    n = graph.n_vertices
    out: list[tuple[int, ...]] = []
    for masks in _valid_mask_chunks(graph):
        out.extend(mask_to_assignment(int(m), n) for m in masks)
    return out


def count_assignments(graph: ExclusivityGraph) -> int:
    """Number of valid {0,1} assignments, without materializing them."""
    _check_capacity(graph.n_vertices)
    return sum(int(masks.size) for masks in _valid_mask_chunks(graph))


def noncontextual_bound(graph: ExclusivityGraph) -> int:
    """Maximum of ``sum(values)`` over all valid assignments.

    This is the independence number of the graph: the classical ceiling that
    no noncontextual hidden-variable model can exceed.
    """
    _check_capacity(graph.n_vertices)
    best = 0
    for masks in _valid_mask_chunks(graph):
        if masks.size:
            best = max(best, int(_popcount(masks, graph.n_vertices).max()))
    return best


def pm_cycle_min(n: int) -> int:
    """Minimum of ``sum_i s_i * s_{i+1 mod n}`` over all sign vectors.

    Brute force over the 2^n vectors with entries in {-1, +1}; requires
    3 <= n <= ENUMERATION_CAP.
    """
    if not (3 <= n <= ENUMERATION_CAP):
        raise ValidationError(f"cycle length must be in [3, {ENUMERATION_CAP}], got {n}")
    best = None
    total = 1 << n
    chunk = 1 << _CHUNK_BITS
    for start in range(0, total, chunk):
        masks = np.arange(start, min(start + chunk, total), dtype=np.int64)
        signs = (((masks[:, None] >> np.arange(n)) & 1) * 2 - 1).astype(np.int16)
        values = np.einsum("ij,ij->i", signs, np.roll(signs, -1, axis=1)).astype(np.int64)
        low = int(values.min())
        best = low if best is None else min(best, low)
    return best
