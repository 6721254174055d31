"""Finite hidden-variable models over exclusivity graphs.

A model is a probability measure over deterministic {0,1} value assignments;
its predicted vertex probabilities are the measure-weighted averages. Because
every assignment respects the exclusivity edges, the predicted total can
never exceed the graph's noncontextual bound -- the content of the pentagon
inequality on the classical side.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ValidationError
from .exclusivity import (
    ENUMERATION_CAP,
    ExclusivityGraph,
    enumerate_assignments_01,
    is_valid_assignment,
)

_MEASURE_TOL = 1e-12


def _validate_weights(weights, count: int) -> np.ndarray:
    w = np.asarray(weights, dtype=float).reshape(-1)
    if w.size != count:
        raise ValidationError(f"measure has {w.size} weights for {count} outcomes")
    if np.any(w < 0):
        raise ValidationError(f"negative weight {float(w.min())!r} in measure")
    total = float(w.sum())
    if abs(total - 1.0) > _MEASURE_TOL:
        raise ValidationError(f"measure sums to {total!r}, not 1")
    return w


@dataclass(frozen=True)
class HiddenVariableModel:
    """A finite lambda-space of assignments with a probability measure."""

    graph: ExclusivityGraph
    lambdas: tuple[tuple[int, ...], ...]
    mu: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "lambdas", tuple(tuple(v) for v in self.lambdas))
        for values in self.lambdas:
            if not is_valid_assignment(self.graph, values):
                raise ValidationError(f"assignment {values} violates the exclusivity edges")
        object.__setattr__(self, "mu", _validate_weights(self.mu, len(self.lambdas)))


@dataclass(frozen=True)
class ModelPrediction:
    """Per-vertex probabilities and their sum."""

    vertex_probs: tuple[float, ...]
    total: float

    def __post_init__(self):
        if abs(self.total - sum(self.vertex_probs)) > _MEASURE_TOL:
            raise ValidationError("total inconsistent with vertex probabilities")


def hvm_predict(model: HiddenVariableModel) -> ModelPrediction:
    """Predicted vertex probabilities: ``prob[i] = sum_l values_l[i] mu(l)``."""
    table = np.array(model.lambdas, dtype=float)
    if table.size == 0:
        raise ValidationError("model has an empty lambda space")
    probs = model.mu @ table
    return ModelPrediction(vertex_probs=tuple(float(x) for x in probs),
                           total=float(probs.sum()))


def hvm_random(graph: ExclusivityGraph, seed: int) -> HiddenVariableModel:
    """A random model: uniform simplex measure over all valid assignments.

    The lambda space is the full enumerated assignment list; weights are
    normalized exponential draws, deterministic per seed.
    """
    lambdas = enumerate_assignments_01(graph)
    rng = np.random.default_rng(seed)
    weights = rng.exponential(size=len(lambdas))
    weights /= weights.sum()
    return HiddenVariableModel(graph=graph, lambdas=tuple(lambdas), mu=weights)


# ============================================================================
# The +-1 form on cycles
# ============================================================================

def _validate_sign_vectors(cycle_n: int, vectors) -> np.ndarray:
    if not (3 <= cycle_n <= ENUMERATION_CAP):
        raise ValidationError(
            f"cycle length must be in [3, {ENUMERATION_CAP}], got {cycle_n}"
        )
    arr = np.asarray(list(vectors), dtype=np.int64)
    if arr.ndim != 2 or arr.shape[1] != cycle_n:
        raise ValidationError(f"sign vectors must have length {cycle_n}")
    if not np.all(np.abs(arr) == 1):
        raise ValidationError("sign vector entries must be -1 or +1")
    return arr


def pm_model_value(cycle_n: int, vectors, weights) -> float:
    """Measure-weighted value of the cyclic correlator ``sum_i s_i s_{i+1}``.

    ``vectors`` is a collection of {-1,+1} vectors of length ``cycle_n`` and
    ``weights`` a probability measure over them.
    """
    signs = _validate_sign_vectors(cycle_n, vectors)
    w = _validate_weights(weights, signs.shape[0])
    correlators = np.einsum("ij,ij->i", signs, np.roll(signs, -1, axis=1))
    return float(w @ correlators)


def pm_random_measure(cycle_n: int, seed: int):
    """A random measure over all 2^n sign vectors, deterministic per seed.

    Returns ``(vectors, weights)`` suitable for :func:`pm_model_value`.
    """
    if not (3 <= cycle_n <= ENUMERATION_CAP):
        raise ValidationError(
            f"cycle length must be in [3, {ENUMERATION_CAP}], got {cycle_n}"
        )
    masks = np.arange(1 << cycle_n, dtype=np.int64)
    vectors = ((masks[:, None] >> np.arange(cycle_n)) & 1) * 2 - 1
    rng = np.random.default_rng(seed)
    weights = rng.exponential(size=vectors.shape[0])
    weights /= weights.sum()
    return vectors, weights
