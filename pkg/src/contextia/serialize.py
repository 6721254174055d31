"""JSON wire formats for matrices, graphs, scenarios and models.

All documents are versioned with ``"schema": "v1"``; the field is emitted on
write and, when present on read, must match. Matrices travel as separate
real and imaginary parts, row-major, so documents stay valid JSON and
round-trip bit-stably on one platform.
"""

from __future__ import annotations

import json

import numpy as np

from .constructions import PentagonScenario
from .errors import ValidationError
from .exclusivity import ExclusivityGraph, graph_from_edges, mask_to_assignment
from .hvm import HiddenVariableModel
from .linalg import DEFAULT_TOL, DensityState, Projection, as_complex_matrix

SCHEMA = "v1"


def _require_keys(obj, keys, what: str):
    if not isinstance(obj, dict):
        raise ValidationError(f"{what}: expected a JSON object, got {type(obj).__name__}")
    missing = [k for k in keys if k not in obj]
    if missing:
        raise ValidationError(f"{what}: missing keys {missing}")


def _check_schema(obj, what: str):
    schema = obj.get("schema")
    if schema is not None and schema != SCHEMA:
        raise ValidationError(f"{what}: unsupported schema {schema!r} (expected {SCHEMA!r})")


def _real_grid(data, dim: int, what: str) -> np.ndarray:
    try:
        grid = np.asarray(data, dtype=float)
    except (TypeError, ValueError) as exc:
        raise ValidationError(f"{what}: not a numeric grid: {exc}") from exc
    if grid.shape != (dim, dim):
        raise ValidationError(f"{what}: expected shape ({dim}, {dim}), got {grid.shape}")
    return grid


# ============================================================================
# Matrices
# ============================================================================

def matrix_to_json(m) -> dict:
    a = as_complex_matrix(m, "matrix")
    # adding +0.0 folds IEEE negative zeros, keeping canonical dumps byte-stable
    return {"dim": a.shape[0], "re": (a.real + 0.0).tolist(),
            "im": (a.imag + 0.0).tolist()}


def matrix_from_json(obj) -> np.ndarray:
    _require_keys(obj, ("dim", "re", "im"), "matrix")
    dim = obj["dim"]
    if not isinstance(dim, int) or dim < 1:
        raise ValidationError(f"matrix: dim must be a positive integer, got {dim!r}")
    re = _real_grid(obj["re"], dim, "matrix re part")
    im = _real_grid(obj["im"], dim, "matrix im part")
    return re + 1j * im


# ============================================================================
# Graphs
# ============================================================================

def graph_to_json(graph: ExclusivityGraph) -> dict:
    return {"schema": SCHEMA, "n": graph.n_vertices,
            "edges": [list(e) for e in graph.sorted_edges]}


def graph_from_json(obj) -> ExclusivityGraph:
    _require_keys(obj, ("n", "edges"), "graph")
    _check_schema(obj, "graph")
    n = obj["n"]
    if not isinstance(n, int) or n < 1:
        raise ValidationError(f"graph: n must be a positive integer, got {n!r}")
    edges = obj["edges"]
    if not isinstance(edges, list):
        raise ValidationError("graph: edges must be a list of [i, j] pairs")
    pairs = []
    for entry in edges:
        if not (isinstance(entry, (list, tuple)) and len(entry) == 2
                and all(isinstance(v, int) for v in entry)):
            raise ValidationError(f"graph: bad edge entry {entry!r}")
        pairs.append((entry[0], entry[1]))
    return graph_from_edges(n, pairs)


# ============================================================================
# Scenarios
# ============================================================================

def scenario_to_json(scenario: PentagonScenario) -> dict:
    state = None if scenario.state is None else matrix_to_json(scenario.state.matrix)
    return {
        "schema": SCHEMA,
        "dim": scenario.dim,
        "projections": [matrix_to_json(p.matrix) for p in scenario.projections],
        "state": state,
    }


def scenario_from_json(obj, tol: float = DEFAULT_TOL) -> PentagonScenario:
    """Parse and fully validate a scenario document.

    Projection matrices from untrusted input are checked spectrally (every
    eigenvalue at 0 or 1), then the pentagon's cyclic orthogonality and the
    state's positivity are verified by the constructors.
    """
    _require_keys(obj, ("dim", "projections"), "scenario")
    _check_schema(obj, "scenario")
    entries = obj["projections"]
    if not isinstance(entries, list) or len(entries) != 5:
        raise ValidationError("scenario: projections must be a list of 5 matrices")
    projections = tuple(
        Projection.from_matrix(matrix_from_json(entry), tol=tol) for entry in entries
    )
    dim = obj["dim"]
    if dim != projections[0].dim:
        raise ValidationError(
            f"scenario: declared dim {dim!r} does not match matrices ({projections[0].dim})"
        )
    state_obj = obj.get("state")
    state = None
    if state_obj is not None:
        state = DensityState.from_matrix(matrix_from_json(state_obj), tol=tol)
    return PentagonScenario(projections=projections, state=state, tol=tol)


# ============================================================================
# Hidden-variable models
# ============================================================================

def model_to_json(model: HiddenVariableModel) -> dict:
    from .exclusivity import assignment_to_mask

    return {
        "schema": SCHEMA,
        "graph": graph_to_json(model.graph),
        "assignments": [assignment_to_mask(lam) for lam in model.lambdas],
        "weights": [float(w) for w in model.mu],
    }


def model_from_json(obj) -> HiddenVariableModel:
    _require_keys(obj, ("graph", "assignments", "weights"), "model")
    _check_schema(obj, "model")
    graph = graph_from_json(obj["graph"])
    masks = obj["assignments"]
    if not isinstance(masks, list):
        raise ValidationError("model: assignments must be a list of bitmasks")
    n = graph.n_vertices
    lambdas = []
    for mask in masks:
        if not isinstance(mask, int) or not (0 <= mask < (1 << n)):
            raise ValidationError(f"model: bitmask {mask!r} out of range for {n} vertices")
        lambdas.append(mask_to_assignment(mask, n))
    weights = obj["weights"]
    if not isinstance(weights, list):
        raise ValidationError("model: weights must be a list of numbers")
    return HiddenVariableModel(graph=graph, lambdas=tuple(lambdas),
                               mu=np.asarray(weights, dtype=float))


# ============================================================================
# Canonical text form
# ============================================================================

def dumps_canonical(obj) -> str:
    """Deterministic JSON text: sorted keys, no whitespace variation."""
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))


def loads(text: str):
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ValidationError(f"invalid JSON: {exc}") from exc
