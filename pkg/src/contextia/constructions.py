"""Explicit pentagon constructions that beat the classical bound.

Three builds live here:

* the classic five unit vectors in dimension 3 whose rank-1 projections are
  cyclically orthogonal and give the pole state the value sqrt(5) > 2;
* a one-parameter umbrella family of five vectors (polar angle theta,
  azimuths 4*pi*k/5) that degenerates to the classic pentagon exactly at the
  critical angle where adjacent vectors become orthogonal;
* a block-algebra analogue: a system of 3x3 matrix units with multiplicity m
  carries the same five projections written in unit coefficients, now of rank
  m, together with the epsilon-mixture state and unitary conjugation that
  push the violation onto arbitrary target states.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import CapacityError, ValidationError
from .linalg import (
    DEFAULT_TOL,
    DensityState,
    Projection,
    dagger,
    ensure_unit_vector,
    ensure_unitary,
    max_abs,
    rank1_projection,
    state_value,
)

#: Classical (noncontextual) ceiling for the pentagon total.
KCBS_CLASSICAL_BOUND = 2.0

#: Quantum value attained by the pentagon constructions.
KCBS_QUANTUM_VALUE = math.sqrt(5.0)

#: Mixture strengths must lie in the open interval (0, EPSILON_MAX).
EPSILON_MAX = math.sqrt(5.0) - 2.0

_COS_PI_5 = math.cos(math.pi / 5.0)
_SQRT_COS_PI_5 = math.sqrt(_COS_PI_5)
_NORM2 = 1.0 / (1.0 + _COS_PI_5)

# (azimuthal angle, sign of the sine component) for each of the five vectors.
_VECTOR_ANGLES = (
    (0.0, 1.0),
    (4.0 * math.pi / 5.0, 1.0),
    (2.0 * math.pi / 5.0, -1.0),
    (2.0 * math.pi / 5.0, 1.0),
    (4.0 * math.pi / 5.0, -1.0),
)


@dataclass(frozen=True)
class PentagonScenario:
    """Five cyclically orthogonal projections, optionally with a state."""

    projections: tuple[Projection, ...]
    state: DensityState | None = None
    tol: float = DEFAULT_TOL

    def __post_init__(self):
        object.__setattr__(self, "projections", tuple(self.projections))
        if len(self.projections) != 5:
            raise ValidationError(f"need exactly 5 projections, got {len(self.projections)}")
        dims = {p.dim for p in self.projections}
        if len(dims) != 1:
            raise ValidationError(f"projections have mixed dimensions {sorted(dims)}")
        if self.state is not None and self.state.dim != self.dim:
            raise ValidationError(
                f"state dim {self.state.dim} does not match projections dim {self.dim}"
            )
        for i in range(5):
            a = self.projections[i].matrix
            b = self.projections[(i + 1) % 5].matrix
            defect = max_abs(a @ b)
            if defect > self.tol:
                raise ValidationError(
                    f"projections {i} and {(i + 1) % 5} not orthogonal: "
                    f"max |P_i P_j| = {defect:.3e}"
                )

    @property
    def dim(self) -> int:
        return self.projections[0].dim

    @property
    def ranks(self) -> tuple[int, ...]:
        return tuple(p.rank for p in self.projections)

    def pentagon_sum(self) -> np.ndarray:
        """The observable ``P_0 + P_1 + P_2 + P_3 + P_4``."""
        return sum(p.matrix for p in self.projections)

    def value(self) -> float:
        """Expectation of the pentagon sum in the attached state."""
        if self.state is None:
            raise ValidationError("scenario carries no state")
        return state_value(self.state, self.pentagon_sum(), tol=self.tol)


def kcbs_vectors():
    """The five pentagon unit vectors and the pole state, all in dimension 3.

    Each vector has first two components ``(cos(a), +-sin(a))`` and third
    component ``sqrt(cos(pi/5))``, normalized by ``sqrt(1 + cos(pi/5))``;
    the pole state is ``(0, 0, 1)``. Adjacent vectors are orthogonal because
    ``cos(4*pi/5) + cos(pi/5) = 0``.

    Returns ``(vectors, pole)`` with ``vectors`` a list of five arrays.
    """
    scale = math.sqrt(_NORM2)
    vectors = []
    for angle, sign in _VECTOR_ANGLES:
        vectors.append(scale * np.array(
            [math.cos(angle), sign * math.sin(angle), _SQRT_COS_PI_5],
            dtype=np.complex128,
        ))
    pole = np.array([0.0, 0.0, 1.0], dtype=np.complex128)
    return vectors, pole


def kcbs_pentagon(tol: float = DEFAULT_TOL) -> PentagonScenario:
    """The dimension-3 pentagon whose pole state attains sqrt(5)."""
    vectors, pole = kcbs_vectors()
    projections = tuple(rank1_projection(v, tol=tol) for v in vectors)
    return PentagonScenario(projections=projections,
                            state=DensityState.pure(pole, tol=tol), tol=tol)


# ============================================================================
# Umbrella family
# ============================================================================

@dataclass(frozen=True)
class UmbrellaFamily:
    """Five unit vectors at polar angle theta, azimuths 4*pi*k/5."""

    theta: float
    vectors: tuple[np.ndarray, ...]


def umbrella_adjacent_overlap(theta: float) -> float:
    """Inner product of consecutive umbrella vectors at polar angle theta."""
    s, c = math.sin(theta), math.cos(theta)
    return s * s * math.cos(4.0 * math.pi / 5.0) + c * c


def umbrella_critical_angle() -> float:
    """The unique angle in (0, pi/2) where adjacent vectors are orthogonal."""
    return math.atan(math.sqrt(1.0 / _COS_PI_5))


def umbrella_family(theta: float) -> UmbrellaFamily:
    """The umbrella of five vectors at polar angle ``theta`` in (0, pi/2).

    Adjacent vectors are orthogonal exactly when
    ``tan(theta)^2 = 1/cos(pi/5)``; at that angle the family reproduces the
    classic pentagon vectors.
    """
    if not (0.0 < theta < math.pi / 2.0):
        raise ValidationError(f"theta must lie in (0, pi/2), got {theta!r}")
    s, c = math.sin(theta), math.cos(theta)
    vectors = []
    for k in range(5):
        azimuth = 4.0 * math.pi * k / 5.0
        vectors.append(np.array(
            [s * math.cos(azimuth), s * math.sin(azimuth), c],
            dtype=np.complex128,
        ))
    return UmbrellaFamily(theta=theta, vectors=tuple(vectors))


# ============================================================================
# Matrix units and the block pentagon
# ============================================================================

_UNIT_DIM_CAP = 100


@dataclass(frozen=True)
class MatrixUnitSystem:
    """A 3x3 system of matrix units V_ij with multiplicity m on dim 3m.

    Satisfies ``V_ij V_kl = delta_jk V_il``, ``V_ij* = V_ji`` and
    ``sum_i V_ii = I``.
    """

    multiplicity: int
    units: np.ndarray  # shape (3, 3, 3m, 3m)
    tol: float = DEFAULT_TOL

    def __post_init__(self):
        m = self.multiplicity
        if m < 1:
            raise ValidationError(f"multiplicity must be >= 1, got {m}")
        units = np.asarray(self.units, dtype=np.complex128)
        dim = 3 * m
        if units.shape != (3, 3, dim, dim):
            raise ValidationError(f"units must have shape (3, 3, {dim}, {dim})")
        object.__setattr__(self, "units", units)
        for i in range(3):
            for j in range(3):
                if max_abs(dagger(units[i, j]) - units[j, i]) > self.tol:
                    raise ValidationError(f"V_{i+1}{j+1}* != V_{j+1}{i+1}")
                for k in range(3):
                    for l in range(3):
                        product = units[i, j] @ units[k, l]
                        expected = units[i, l] if j == k else 0.0
                        if max_abs(product - expected) > self.tol:
                            raise ValidationError(
                                f"V_{i+1}{j+1} V_{k+1}{l+1} violates the unit relations"
                            )
        if max_abs(sum(units[i, i] for i in range(3)) - np.eye(dim)) > self.tol:
            raise ValidationError("diagonal units do not sum to the identity")

    @property
    def dim(self) -> int:
        return 3 * self.multiplicity

    def block_basis(self, block: int) -> np.ndarray:
        """Orthonormal basis (columns) of ``range(V_bb)`` for 1-based block b."""
        if block not in (1, 2, 3):
            raise ValidationError(f"block must be 1, 2 or 3, got {block}")
        m = self.multiplicity
        basis = np.zeros((self.dim, m), dtype=np.complex128)
        start = (block - 1) * m
        basis[start:start + m, :] = np.eye(m)
        return basis


def matrix_units(m: int) -> MatrixUnitSystem:
    """The standard units ``V_ij = e_ij (x) I_m`` on dimension 3m."""
    if m < 1:
        raise ValidationError(f"multiplicity must be >= 1, got {m}")
    if 3 * m > _UNIT_DIM_CAP:
        raise CapacityError(f"dimension 3*{m} exceeds the cap of {_UNIT_DIM_CAP}")
    eye = np.eye(m, dtype=np.complex128)
    units = np.zeros((3, 3, 3 * m, 3 * m), dtype=np.complex128)
    for i in range(3):
        for j in range(3):
            e_ij = np.zeros((3, 3), dtype=np.complex128)
            e_ij[i, j] = 1.0
            units[i, j] = np.kron(e_ij, eye)
    return MatrixUnitSystem(multiplicity=m, units=units)


def _block_projection(units: MatrixUnitSystem, angle: float, sign: float) -> Projection:
    """One pentagon projection written out in matrix-unit coefficients."""
    v = units.units
    cos_a, sin_a = math.cos(angle), sign * math.sin(angle)
    rc = _SQRT_COS_PI_5
    combo = _NORM2 * (
        cos_a * cos_a * v[0, 0]
        + sin_a * cos_a * v[0, 1]
        + cos_a * rc * v[0, 2]
        + sin_a * cos_a * v[1, 0]
        + sin_a * sin_a * v[1, 1]
        + sin_a * rc * v[1, 2]
        + cos_a * rc * v[2, 0]
        + sin_a * rc * v[2, 1]
        + _COS_PI_5 * v[2, 2]
    )
    return Projection(matrix=combo, rank=units.multiplicity, tol=units.tol)


def typeiii_projections(units: MatrixUnitSystem) -> PentagonScenario:
    """The five rank-m pentagon projections over a matrix-unit system.

    Every unit vector in ``range(V_33)`` sees the pentagon sum at exactly
    sqrt(5), independently of the multiplicity.
    """
    projections = tuple(
        _block_projection(units, angle, sign) for angle, sign in _VECTOR_ANGLES
    )
    return PentagonScenario(projections=projections, state=None, tol=units.tol)


def mixture_state(phi, phi_perp, epsilon: float,
                  tol: float = DEFAULT_TOL) -> DensityState:
    """The two-component mixture ``(1 - eps/sqrt5)|phi><phi| + (eps/sqrt5)|
    phi_perp><phi_perp|``.

    Requires ``0 < epsilon < sqrt(5) - 2`` (open interval) and orthogonal
    unit vectors. When ``phi`` attains sqrt(5) on a pentagon sum, the mixture
    attains at least ``sqrt(5) - epsilon``, which still exceeds 2.
    """
    if not (0.0 < epsilon < EPSILON_MAX):
        raise ValidationError(
            f"epsilon must lie in the open interval (0, {EPSILON_MAX:.7f}), "
            f"got {epsilon!r}"
        )
    a = ensure_unit_vector(phi, tol=tol, name="phi")
    b = ensure_unit_vector(phi_perp, tol=tol, name="phi_perp")
    if a.shape != b.shape:
        raise ValidationError("phi and phi_perp have different dimensions")
    overlap = abs(np.vdot(a, b))
    if overlap > tol:
        raise ValidationError(f"phi and phi_perp not orthogonal: |<phi, phi_perp>| = {overlap:.3e}")
    weight = epsilon / math.sqrt(5.0)
    rho = (1.0 - weight) * np.outer(a, a.conj()) + weight * np.outer(b, b.conj())
    return DensityState(matrix=rho, tol=tol)


def conjugate_scenario(scenario: PentagonScenario, u,
                       tol: float = DEFAULT_TOL) -> PentagonScenario:
    """Conjugate every projection (and the state, if any) by a unitary.

    The new projections are ``U* P_i U``; cyclic orthogonality, ranks and the
    spectrum of the pentagon sum are preserved.
    """
    unitary = ensure_unitary(u, tol=tol, name="u")
    if unitary.shape[0] != scenario.dim:
        raise ValidationError(
            f"unitary dim {unitary.shape[0]} does not match scenario dim {scenario.dim}"
        )
    uh = dagger(unitary)
    projections = tuple(
        Projection(matrix=uh @ p.matrix @ unitary, rank=p.rank, tol=tol)
        for p in scenario.projections
    )
    state = None
    if scenario.state is not None:
        state = DensityState(matrix=uh @ scenario.state.matrix @ unitary, tol=tol)
    return PentagonScenario(projections=projections, state=state, tol=tol)


def alignment_unitary(source, target, tol: float = DEFAULT_TOL) -> np.ndarray:
    """A Householder-style unitary mapping ``source`` onto ``target``.

    The image is ``target`` up to a global phase, so expectation values of
    any observable in the mapped state match those in ``target`` exactly.
    """
    s = ensure_unit_vector(source, tol=tol, name="source")
    t = ensure_unit_vector(target, tol=tol, name="target")
    if s.shape != t.shape:
        raise ValidationError("source and target have different dimensions")
    ip = np.vdot(t, s)
    phase = ip / abs(ip) if abs(ip) > 0 else 1.0
    aligned = phase * t
    w = s - aligned
    norm2 = float(np.vdot(w, w).real)
    dim = s.size
    if norm2 < 1e-28:
        return np.eye(dim, dtype=np.complex128)
    return np.eye(dim, dtype=np.complex128) - 2.0 * np.outer(w, w.conj()) / norm2
