"""Tracial-state verification: the normalized trace never beats the bound.

The normalized trace ``Tr(.)/dim`` is the unique tracial state of a matrix
algebra, and a tracial state cannot push the pentagon total past the
classical bound 2. This module verifies that claim numerically, not just the
conclusion but every step of its proof:

1. ``P_1``, ``P_2`` and ``P_0 /\\ P_3`` are mutually orthogonal, so their
   traces sum to at most 1;
2. ``P_0`` splits as ``(P_0 /\\ P_3) \\/ (P_0 /\\ (P_0 /\\ P_3)^perp)``, an
   orthogonal decomposition, so the trace splits additively;
3. the trace of the second summand plus the trace of ``P_3`` is dominated by
   the trace of ``P_0 \\/ P_3``;
4. ``P_0 \\/ P_3`` is orthogonal to ``P_4``, so those traces also sum to at
   most 1.

Adding the four facts gives ``sum tau(P_i) <= 2``. The trace-modularity
identity ``tau(P) + tau(Q) = tau(P \\/ Q) + tau(P /\\ Q)``, the engine behind
step 3, is checked separately on arbitrary pairs.

A seeded sampler draws random pentagons (cyclically orthogonal, otherwise
generic) in any dimension so the verification can be fuzzed; in dimension 2
the sampler doubles as a witness that every realizable pentagon contains a
zero projection and its sum never has an eigenvalue above 2.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np

from .constructions import PentagonScenario
from .errors import ConstructionError, ValidationError, VerificationError
from .linalg import (
    DEFAULT_TOL,
    Projection,
    as_complex_matrix,
    hermitian_eigen,
    max_abs,
    projection_join,
    projection_meet,
)

_MAX_ATTEMPTS = 100

TRACE_BOUND_TOL = 1e-9
PROOF_STEP_TOL = 1e-8
MODULARITY_TOL = 1e-8
DIM2_TOL = 1e-10


@dataclass(frozen=True)
class TracialState:
    """The normalized trace ``A -> Tr(A)/dim`` on a matrix algebra."""

    dim: int

    def __post_init__(self):
        if self.dim < 1:
            raise ValidationError(f"dimension must be >= 1, got {self.dim}")

    def value(self, m) -> float:
        a = as_complex_matrix(m, "operator")
        if a.shape[0] != self.dim:
            raise ValidationError(f"operator dim {a.shape[0]} != state dim {self.dim}")
        trace = complex(np.trace(a))
        if abs(trace.imag) > 1e-10 * max(1.0, abs(trace)):
            raise ValidationError(f"trace has imaginary part {trace.imag:.3e}")
        return trace.real / self.dim


def tracial_value(m) -> float:
    """``Tr(m)/dim`` for a square matrix, the canonical tracial state."""
    a = as_complex_matrix(m, "operator")
    return TracialState(dim=a.shape[0]).value(a)


# ============================================================================
# Check reports
# ============================================================================

@dataclass(frozen=True)
class CheckReport:
    """One verified numerical fact: ``value <= bound`` up to a tolerance.

    ``slack`` is ``bound - value``; for identity checks the value is an
    absolute defect and the bound is 0, so the slack is a tiny negative
    number.
    """

    check: str
    value: float
    bound: float
    slack: float
    seed: int | None = None

    def to_record(self) -> dict:
        return {"check": self.check, "value": self.value, "bound": self.bound,
                "slack": self.slack, "seed": self.seed}


def _checked(check: str, value: float, bound: float, tol: float,
             seed: int | None = None) -> CheckReport:
    report = CheckReport(check=check, value=float(value), bound=float(bound),
                         slack=float(bound - value), seed=seed)
    if report.value > report.bound + tol:
        raise VerificationError(
            f"check {check!r} failed: value {report.value!r} exceeds bound "
            f"{report.bound!r} by more than {tol}",
            report=report,
        )
    return report


def reports_to_csv(reports: Iterable[CheckReport], path) -> None:
    """Write reports as CSV with columns check, value, bound, slack, seed."""
    with Path(path).open("w", newline="") as handle:
        writer = csv.writer(handle)
        writer.writerow(["check", "value", "bound", "slack", "seed"])
        for r in reports:
            writer.writerow([r.check, repr(r.value), repr(r.bound),
                             repr(r.slack), "" if r.seed is None else r.seed])


# ============================================================================
# Random pentagons
# ============================================================================

class _PlacementError(Exception):
    pass


def _place_projection(avoid: Projection, rank: int, label: str,
                      rng: np.random.Generator, tol: float) -> Projection:
    """Draw a rank-``rank`` projection orthogonal to ``avoid``, Haar-like."""
    dim = avoid.dim
    if rank == 0:
        return Projection.zero(dim, tol=tol)
    available = dim - avoid.rank
    if rank > available:
        raise _PlacementError(
            f"{label}: rank {rank} does not fit in the orthocomplement "
            f"(dimension {available})"
        )
    basis = avoid.complement().range_basis()
    coeffs = rng.standard_normal((available, rank)) + 1j * rng.standard_normal((available, rank))
    candidate = basis @ coeffs
    smallest = np.linalg.svd(candidate, compute_uv=False)[-1]
    if smallest < 1e-10:
        raise _PlacementError(f"{label}: degenerate Gaussian draw")
    q, _ = np.linalg.qr(candidate)
    return Projection(matrix=q @ q.conj().T, rank=rank, tol=tol)


def _attempt_pentagon(dim: int, ranks: Sequence[int], rng: np.random.Generator,
                      tol: float) -> PentagonScenario:
    p0 = _place_projection(Projection.zero(dim, tol=tol), ranks[0], "projection 0", rng, tol)
    p1 = _place_projection(p0, ranks[1], "projection 1 (orthogonal to 0)", rng, tol)
    p2 = _place_projection(p1, ranks[2], "projection 2 (orthogonal to 1)", rng, tol)
    p3 = _place_projection(p2, ranks[3], "projection 3 (orthogonal to 2)", rng, tol)
    closing = projection_join(p3, p0, tol=tol)
    p4 = _place_projection(closing, ranks[4],
                           "projection 4 (orthogonal to both 3 and 0)", rng, tol)
    return PentagonScenario(projections=(p0, p1, p2, p3, p4), state=None, tol=tol)


def random_pentagon(dim: int, ranks: Sequence[int], seed: int,
                    tol: float = DEFAULT_TOL,
                    attempts: int = _MAX_ATTEMPTS) -> PentagonScenario:
    """A seeded random pentagon with the given ranks in dimension ``dim``.

    Each range is drawn Haar-like (orthonormalized Gaussian vectors), with
    projection ``i+1`` placed inside the orthocomplement of projection ``i``
    and the last one inside the orthocomplement of the join of its two
    neighbours. Only consecutive orthogonality is imposed; non-adjacent
    overlaps stay generic. Retries up to ``attempts`` times (default 100),
    then raises a construction error naming the constraint that could not
    be met.
    """
    if dim < 1:
        raise ValidationError(f"dimension must be >= 1, got {dim}")
    if attempts < 1:
        raise ValidationError(f"attempts must be >= 1, got {attempts}")
    ranks = tuple(int(r) for r in ranks)
    if len(ranks) != 5:
        raise ValidationError(f"need exactly 5 ranks, got {len(ranks)}")
    if any(r < 0 or r > dim for r in ranks):
        raise ValidationError(f"ranks must lie in [0, {dim}], got {ranks}")

    rng = np.random.default_rng(seed)
    failure = None
    for _ in range(attempts):
        try:
            return _attempt_pentagon(dim, ranks, rng, tol)
        except _PlacementError as exc:
            failure = exc
    raise ConstructionError(
        f"no pentagon with ranks {ranks} in dimension {dim} after "
        f"{attempts} attempts; last failure: {failure}"
    )


def sample_ranks(dim: int, rng: np.random.Generator) -> tuple[int, ...]:
    """Draw a rank pattern the generic sampler can realize in ``dim``."""
    r0 = int(rng.integers(0, dim + 1))
    r1 = int(rng.integers(0, dim - r0 + 1))
    r2 = int(rng.integers(0, dim - r1 + 1))
    r3 = int(rng.integers(0, dim - r2 + 1))
    room = max(0, dim - min(dim, r3 + r0))
    r4 = int(rng.integers(0, room + 1))
    return (r0, r1, r2, r3, r4)


# ============================================================================
# Verification
# ============================================================================

def verify_trace_bound(scenario: PentagonScenario, tol: float = TRACE_BOUND_TOL,
                       seed: int | None = None) -> CheckReport:
    """Check that the tracial state keeps the pentagon total at or below 2.

    The value equals ``(sum of ranks)/dim`` and the report carries the
    margin; exceeding ``2 + tol`` raises a verification error.
    """
    value = tracial_value(scenario.pentagon_sum())
    return _checked("pentagon-trace-bound", value, 2.0, tol, seed=seed)


def verify_trace_modularity(p: Projection, q: Projection,
                            tol: float = MODULARITY_TOL,
                            seed: int | None = None) -> CheckReport:
    """Check ``tau(P) + tau(Q) = tau(P \\/ Q) + tau(P /\\ Q)`` numerically."""
    join = projection_join(p, q)
    meet = projection_meet(p, q)
    defect = abs(tracial_value(p.matrix) + tracial_value(q.matrix)
                 - tracial_value(join.matrix) - tracial_value(meet.matrix))
    return _checked("trace-modularity", defect, 0.0, tol, seed=seed)


def verify_proof_chain(scenario: PentagonScenario, tol: float = PROOF_STEP_TOL,
                       seed: int | None = None) -> list[CheckReport]:
    """Verify each of the four steps behind the tracial bound.

    Returns one report per step, in proof order; any failing step raises a
    verification error carrying its report.
    """
    p0, p1, p2, p3, p4 = scenario.projections
    tau = tracial_value
    meet03 = projection_meet(p0, p3)
    join03 = projection_join(p0, p3)
    split = projection_meet(p0, meet03.complement())

    reports = [
        # P_1, P_2 and P_0 /\ P_3 are mutually orthogonal.
        _checked("exclusive-triple",
                 tau(meet03.matrix) + tau(p1.matrix) + tau(p2.matrix),
                 1.0, tol, seed=seed),
        # P_0 decomposes orthogonally along P_0 /\ P_3.
        _checked("meet-decomposition",
                 abs(tau(p0.matrix) - tau(meet03.matrix) - tau(split.matrix)),
                 0.0, tol, seed=seed),
        # The split part together with P_3 fits under the join.
        _checked("join-dominates",
                 tau(split.matrix) + tau(p3.matrix),
                 tau(join03.matrix), tol, seed=seed),
        # P_0 \/ P_3 is orthogonal to P_4.
        _checked("join-orthogonal-cap",
                 tau(join03.matrix) + tau(p4.matrix),
                 1.0, tol, seed=seed),
    ]

    residual = max_abs(join03.matrix @ p4.matrix)
    if residual > max(tol, scenario.tol):
        raise VerificationError(
            f"join of projections 0 and 3 not orthogonal to projection 4: "
            f"residual {residual:.3e}",
            report=reports[-1],
        )
    return reports


def verify_dim2_no_violation(trials: int, seed: int,
                             tol: float = DIM2_TOL) -> list[CheckReport]:
    """Dimension-2 sweep: realizable pentagons are harmless for every state.

    Draws ``trials`` rank patterns from {0, 1, 2}^5, builds the pentagon
    whenever the sampler can, and checks three facts per feasible draw: the
    ranks sum to at most 4, some projection is zero, and the largest
    eigenvalue of the pentagon sum is at most 2 (so no state at all, pure or
    mixed, can beat the classical bound). Infeasible patterns are skipped.

    In dimension 2 every orthocomplement placement is forced (a line or the
    whole plane), so whether a rank pattern is realizable does not depend on
    the draw; a handful of retries is as conclusive as the default hundred
    and keeps large sweeps fast.
    """
    if trials < 1:
        raise ValidationError(f"trials must be >= 1, got {trials}")
    reports = []
    for t in range(trials):
        rank_seed, pentagon_seed = derive_seeds(seed, 2, t, 1)
        rng = np.random.default_rng(rank_seed)
        ranks = tuple(int(r) for r in rng.integers(0, 3, size=5))
        try:
            scenario = random_pentagon(2, ranks, pentagon_seed, attempts=8)
        except ConstructionError:
            continue
        reports.append(_checked("dim2-rank-sum", float(sum(scenario.ranks)),
                                4.0, tol, seed=pentagon_seed))
        reports.append(_checked("dim2-zero-projection", float(min(scenario.ranks)),
                                0.0, tol, seed=pentagon_seed))
        eigenvalues, _ = hermitian_eigen(scenario.pentagon_sum())
        reports.append(_checked("dim2-eigen-cap", float(eigenvalues[-1]),
                                2.0, tol, seed=pentagon_seed))
    return reports


# ============================================================================
# Campaigns
# ============================================================================

def derive_seeds(seed: int, *key: int) -> tuple[int, int]:
    """Two replayable per-trial seeds from a campaign seed and a trial key."""
    state = np.random.SeedSequence([int(seed), *[int(k) for k in key]]).generate_state(2)
    return int(state[0]), int(state[1])


def trace_bound_campaign(dims: Sequence[int], trials_per_dim: int,
                         seed: int) -> list[CheckReport]:
    """Fuzz the tracial bound over random pentagons in the given dimensions."""
    reports = []
    for dim in dims:
        for t in range(trials_per_dim):
            rank_seed, pentagon_seed = derive_seeds(seed, dim, t)
            ranks = sample_ranks(dim, np.random.default_rng(rank_seed))
            scenario = random_pentagon(dim, ranks, pentagon_seed)
            reports.append(verify_trace_bound(scenario, seed=pentagon_seed))
    return reports


def proof_chain_campaign(dims: Sequence[int], trials_per_dim: int,
                         seed: int) -> list[CheckReport]:
    """Fuzz every proof step over random pentagons; four reports per trial."""
    reports = []
    for dim in dims:
        for t in range(trials_per_dim):
            rank_seed, pentagon_seed = derive_seeds(seed, dim, t)
            ranks = sample_ranks(dim, np.random.default_rng(rank_seed))
            scenario = random_pentagon(dim, ranks, pentagon_seed)
            reports.extend(verify_proof_chain(scenario, seed=pentagon_seed))
    return reports


def modularity_campaign(dims: Sequence[int], trials_per_dim: int,
                        seed: int) -> list[CheckReport]:
    """Fuzz trace modularity over seeded random projection pairs."""
    reports = []
    for dim in dims:
        for t in range(trials_per_dim):
            pair_seed, _ = derive_seeds(seed, dim, t, 2)
            rng = np.random.default_rng(pair_seed)
            zero = Projection.zero(dim)
            p = _place_projection(zero, int(rng.integers(0, dim + 1)), "P", rng, DEFAULT_TOL)
            q = _place_projection(zero, int(rng.integers(0, dim + 1)), "Q", rng, DEFAULT_TOL)
            reports.append(verify_trace_modularity(p, q, seed=pair_seed))
    return reports


def full_campaign(dims: Sequence[int], trials_per_dim: int,
                  seed: int) -> list[CheckReport]:
    """The whole battery: bound + proof chain per scenario, modularity
    pairs per dimension, and the dimension-2 sweep when 2 is requested."""
    reports = []
    for dim in dims:
        for t in range(trials_per_dim):
            rank_seed, pentagon_seed = derive_seeds(seed, dim, t)
            ranks = sample_ranks(dim, np.random.default_rng(rank_seed))
            scenario = random_pentagon(dim, ranks, pentagon_seed)
            reports.append(verify_trace_bound(scenario, seed=pentagon_seed))
            reports.extend(verify_proof_chain(scenario, seed=pentagon_seed))
    reports.extend(modularity_campaign(dims, trials_per_dim, seed))
    if 2 in dims:
        reports.extend(verify_dim2_no_violation(trials_per_dim, seed))
    return reports
