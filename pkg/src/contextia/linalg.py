"""Dense complex matrix kernel.

Matrices are plain ``numpy.ndarray`` values in ``complex128``; the helpers
here validate them (square, finite, Hermitian, ...) and implement the
spectral and lattice operations the rest of the package is built on:

* a cyclic Jacobi eigensolver for Hermitian matrices,
* :class:`Projection` / :class:`DensityState` wrappers with invariant checks,
* the projection-lattice meet and join via range-basis intersection.

Everything is a pure function of its inputs; nothing mutates shared state.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import ValidationError

#: Default tolerance for structural predicates (Hermitian, idempotent, norm).
DEFAULT_TOL = 1e-10

#: Threshold for rank decisions on eigenvalues and singular values.
RANK_TOL = 1e-8

_JACOBI_OFF_TOL = 1e-13
_JACOBI_MAX_SWEEPS = 100


def as_complex_matrix(m, name: str = "matrix") -> np.ndarray:
    """Validate and return ``m`` as a square, finite complex128 array."""
    a = np.asarray(m, dtype=np.complex128)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValidationError(f"{name} must be square, got shape {a.shape}")
    if not np.all(np.isfinite(a.real)) or not np.all(np.isfinite(a.imag)):
        raise ValidationError(f"{name} contains non-finite entries")
    return a


def ensure_unit_vector(v, tol: float = DEFAULT_TOL, name: str = "vector") -> np.ndarray:
    """Validate and return ``v`` as a complex128 unit vector."""
    a = np.asarray(v, dtype=np.complex128).reshape(-1)
    if a.size == 0:
        raise ValidationError(f"{name} is empty")
    if not np.all(np.isfinite(a.real)) or not np.all(np.isfinite(a.imag)):
        raise ValidationError(f"{name} contains non-finite entries")
    norm = float(np.linalg.norm(a))
    if abs(norm - 1.0) > tol:
        raise ValidationError(f"{name} is not a unit vector: norm = {norm!r}")
    return a


def dagger(m: np.ndarray) -> np.ndarray:
    """Conjugate transpose."""
    return m.conj().T


def max_abs(m: np.ndarray) -> float:
    """Entrywise max-norm."""
    return float(np.max(np.abs(m))) if m.size else 0.0


def hermitian_defect(m: np.ndarray) -> float:
    """Max-norm of ``m - m*``."""
    return max_abs(m - dagger(m))


def _jacobi_rotation(app: float, aqq: float, apq: complex):
    """2x2 unitary zeroing the (p, q) entry of a Hermitian pivot block.

    Returns the block ``[[c, s], [-s*wbar, c*wbar]]`` with ``w = apq/|apq|``
    and ``(c, s)`` the classic symmetric Schur rotation for the phase-stripped
    real block ``[[app, |apq|], [|apq|, aqq]]``.
    """
    mag = abs(apq)
    wbar = apq.conjugate() / mag
    tau = (aqq - app) / (2.0 * mag)
    if tau >= 0.0:
        t = 1.0 / (tau + np.sqrt(1.0 + tau * tau))
    else:
        t = 1.0 / (tau - np.sqrt(1.0 + tau * tau))
    c = 1.0 / np.sqrt(1.0 + t * t)
    s = t * c
    return np.array([[c, s], [-s * wbar, c * wbar]], dtype=np.complex128)


def _off_diagonal_norm(h: np.ndarray) -> float:
    off = h - np.diag(np.diag(h))
    return float(np.linalg.norm(off))


def hermitian_eigen(h, tol: float = DEFAULT_TOL):
    """Eigendecomposition of a Hermitian matrix via cyclic Jacobi sweeps.

    Parameters
    ----------
    h:
        Square Hermitian matrix (within ``tol`` in max-norm).
    tol:
        Hermiticity tolerance.

    Returns
    -------
    (eigenvalues, eigenvectors):
        Real eigenvalues in ascending order and a unitary matrix whose
        column ``k`` is the eigenvector for ``eigenvalues[k]``.

    Raises
    ------
    ValidationError
        If ``h`` is not Hermitian within ``tol``; the message names the
        maximal asymmetry.
    """
    a = as_complex_matrix(h, "h")
    asym = hermitian_defect(a)
    if asym > tol:
        raise ValidationError(
            f"matrix is not Hermitian: max |h - h*| = {asym:.3e} exceeds tol {tol:.3e}"
        )

    n = a.shape[0]
    work = (a + dagger(a)) / 2.0
    vecs = np.eye(n, dtype=np.complex128)
    if n == 1:
        return np.array([work[0, 0].real]), vecs

    off_tol = _JACOBI_OFF_TOL * max(1.0, float(np.linalg.norm(work)))
    prev_off = np.inf
    for _ in range(_JACOBI_MAX_SWEEPS):
        off = _off_diagonal_norm(work)
        if off <= off_tol or off >= prev_off:
            break
        prev_off = off
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = work[p, q]
                if abs(apq) == 0.0:
                    continue
                g = _jacobi_rotation(work[p, p].real, work[q, q].real, apq)
                work[:, [p, q]] = work[:, [p, q]] @ g
                work[[p, q], :] = dagger(g) @ work[[p, q], :]
                work[p, q] = 0.0
                work[q, p] = 0.0
                vecs[:, [p, q]] = vecs[:, [p, q]] @ g

    eigenvalues = np.real(np.diag(work))
    order = np.argsort(eigenvalues, kind="stable")
    return eigenvalues[order], vecs[:, order]


# ============================================================================
# Projections
# ============================================================================

@dataclass(frozen=True)
class Projection:
    """An orthogonal projection matrix with its rank and tolerance.

    The constructor checks the cheap invariants (Hermitian, idempotent,
    trace consistent with ``rank``). Use :meth:`from_matrix` for untrusted
    input; it additionally verifies the full spectrum.
    """

    matrix: np.ndarray
    rank: int
    tol: float = DEFAULT_TOL

    def __post_init__(self):
        m = as_complex_matrix(self.matrix, "projection matrix")
        object.__setattr__(self, "matrix", m)
        if self.tol <= 0:
            raise ValidationError(f"tol must be positive, got {self.tol!r}")
        herm = hermitian_defect(m)
        if herm > self.tol:
            raise ValidationError(f"projection is not Hermitian: defect {herm:.3e}")
        idem = max_abs(m @ m - m)
        if idem > self.tol:
            raise ValidationError(f"projection is not idempotent: defect {idem:.3e}")
        if not (0 <= self.rank <= self.dim):
            raise ValidationError(f"rank {self.rank} out of range for dim {self.dim}")
        trace = float(np.trace(m).real)
        if abs(trace - self.rank) > 1e-6:
            raise ValidationError(
                f"trace {trace!r} inconsistent with declared rank {self.rank}"
            )

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    @classmethod
    def from_matrix(cls, matrix, tol: float = DEFAULT_TOL,
                    rank_tol: float = RANK_TOL) -> "Projection":
        """Build a projection from an untrusted matrix, verifying its spectrum.

        The rank is the number of eigenvalues within ``rank_tol`` of 1; every
        eigenvalue must lie within ``rank_tol`` of {0, 1}.
        """
        m = as_complex_matrix(matrix, "projection matrix")
        eigenvalues, _ = hermitian_eigen(m, tol=tol)
        dist = np.minimum(np.abs(eigenvalues), np.abs(eigenvalues - 1.0))
        worst = float(dist.max()) if eigenvalues.size else 0.0
        if worst > rank_tol:
            raise ValidationError(
                f"eigenvalues not clustered at {{0, 1}}: worst distance {worst:.3e}"
            )
        rank = int(np.sum(eigenvalues > 0.5))
        return cls(matrix=m, rank=rank, tol=tol)

    @classmethod
    def zero(cls, dim: int, tol: float = DEFAULT_TOL) -> "Projection":
        return cls(matrix=np.zeros((dim, dim), dtype=np.complex128), rank=0, tol=tol)

    @classmethod
    def identity(cls, dim: int, tol: float = DEFAULT_TOL) -> "Projection":
        return cls(matrix=np.eye(dim, dtype=np.complex128), rank=dim, tol=tol)

    @classmethod
    def from_basis(cls, basis: np.ndarray, tol: float = DEFAULT_TOL) -> "Projection":
        """Projection onto the span of the (orthonormal) columns of ``basis``."""
        b = np.asarray(basis, dtype=np.complex128)
        if b.ndim != 2:
            raise ValidationError("basis must be a 2-d array of column vectors")
        ortho = max_abs(dagger(b) @ b - np.eye(b.shape[1]))
        if ortho > tol:
            raise ValidationError(f"basis columns not orthonormal: defect {ortho:.3e}")
        return cls(matrix=b @ dagger(b), rank=b.shape[1], tol=tol)

    def complement(self) -> "Projection":
        """The orthogonal complement ``I - P``."""
        eye = np.eye(self.dim, dtype=np.complex128)
        return Projection(matrix=eye - self.matrix, rank=self.dim - self.rank,
                          tol=self.tol)

    def range_basis(self, rank_tol: float = RANK_TOL) -> np.ndarray:
        """Orthonormal basis of the range, as columns (shape ``dim x rank``)."""
        u, s, _ = np.linalg.svd(self.matrix)
        basis = u[:, s > rank_tol]
        if basis.shape[1] != self.rank:
            raise ValidationError(
                f"numerical rank {basis.shape[1]} disagrees with declared rank {self.rank}"
            )
        return basis


def rank1_projection(v, tol: float = DEFAULT_TOL) -> Projection:
    """The rank-1 projection ``|v><v|`` onto a unit vector ``v``."""
    vec = ensure_unit_vector(v, tol=tol)
    return Projection(matrix=np.outer(vec, vec.conj()), rank=1, tol=tol)


def _check_same_dim(p: Projection, q: Projection):
    if p.dim != q.dim:
        raise ValidationError(f"dimension mismatch: {p.dim} vs {q.dim}")


def projection_meet(p: Projection, q: Projection, tol: float = DEFAULT_TOL,
                    rank_tol: float = RANK_TOL) -> Projection:
    """Lattice meet ``P ∧ Q``: the projection onto ``range(P) ∩ range(Q)``.

    Computed from orthonormal range bases ``B_P``, ``B_Q`` by solving the
    stacked system ``B_P x = B_Q y``: the null space of ``[B_P | -B_Q]``
    parametrizes the intersection exactly at these sizes.
    """
    _check_same_dim(p, q)
    if p.rank == 0 or q.rank == 0:
        return Projection.zero(p.dim, tol=tol)

    bp = p.range_basis(rank_tol)
    bq = q.range_basis(rank_tol)
    stacked = np.hstack([bp, -bq])
    _, s, vh = np.linalg.svd(stacked, full_matrices=True)
    n_significant = int(np.sum(s > rank_tol))
    null = vh[n_significant:, :].conj().T
    if null.shape[1] == 0:
        return Projection.zero(p.dim, tol=tol)

    # Each null vector (x; y) yields the intersection vector B_P x.
    raw = bp @ null[: bp.shape[1], :]
    u, s2, _ = np.linalg.svd(raw, full_matrices=False)
    basis = u[:, s2 > rank_tol]
    return Projection.from_basis(basis, tol=tol)


def projection_join(p: Projection, q: Projection, tol: float = DEFAULT_TOL,
                    rank_tol: float = RANK_TOL) -> Projection:
    """Lattice join ``P ∨ Q`` via De Morgan: ``I - ((I-P) ∧ (I-Q))``."""
    _check_same_dim(p, q)
    inner = projection_meet(p.complement(), q.complement(), tol=tol, rank_tol=rank_tol)
    return inner.complement()


# ============================================================================
# States
# ============================================================================

@dataclass(frozen=True)
class DensityState:
    """A density operator: Hermitian, unit trace, positive semidefinite.

    The constructor checks Hermiticity and the trace; :meth:`from_matrix`
    additionally verifies positivity of the spectrum.
    """

    matrix: np.ndarray
    tol: float = field(default=DEFAULT_TOL, compare=False)

    def __post_init__(self):
        m = as_complex_matrix(self.matrix, "density matrix")
        object.__setattr__(self, "matrix", m)
        herm = hermitian_defect(m)
        if herm > self.tol:
            raise ValidationError(f"density matrix not Hermitian: defect {herm:.3e}")
        trace = complex(np.trace(m))
        if abs(trace - 1.0) > max(self.tol, 1e-12):
            raise ValidationError(f"density matrix trace {trace!r} != 1")

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    @classmethod
    def from_matrix(cls, matrix, tol: float = DEFAULT_TOL) -> "DensityState":
        """Build from an untrusted matrix, verifying eigenvalues >= -tol."""
        state = cls(matrix=matrix, tol=tol)
        eigenvalues, _ = hermitian_eigen(state.matrix, tol=tol)
        smallest = float(eigenvalues[0])
        if smallest < -tol:
            raise ValidationError(f"density matrix not PSD: min eigenvalue {smallest:.3e}")
        return state

    @classmethod
    def pure(cls, v, tol: float = DEFAULT_TOL) -> "DensityState":
        """The pure state ``|v><v|`` for a unit vector ``v``."""
        vec = ensure_unit_vector(v, tol=tol)
        return cls(matrix=np.outer(vec, vec.conj()), tol=tol)

    @classmethod
    def maximally_mixed(cls, dim: int, tol: float = DEFAULT_TOL) -> "DensityState":
        """The normalized-trace state ``I/dim``."""
        if dim < 1:
            raise ValidationError(f"dim must be positive, got {dim}")
        return cls(matrix=np.eye(dim, dtype=np.complex128) / dim, tol=tol)


def state_value(state: DensityState, m, tol: float = DEFAULT_TOL) -> float:
    """Expectation ``Tr(rho M)`` of a Hermitian observable in a density state.

    The imaginary residue must not exceed 1e-12; it is checked and discarded.
    """
    mat = as_complex_matrix(m, "observable")
    if mat.shape[0] != state.dim:
        raise ValidationError(f"dimension mismatch: state {state.dim}, observable {mat.shape[0]}")
    asym = hermitian_defect(mat)
    if asym > tol:
        raise ValidationError(f"observable not Hermitian: defect {asym:.3e}")
    value = complex(np.trace(state.matrix @ mat))
    if abs(value.imag) > 1e-12:
        raise ValidationError(f"expectation has imaginary residue {value.imag:.3e}")
    return value.real


# ============================================================================
# Random matrices
# ============================================================================

def haar_unitary(dim: int, rng: np.random.Generator) -> np.ndarray:
    """Haar-distributed random unitary via QR of a complex Gaussian matrix."""
    if dim < 1:
        raise ValidationError(f"dim must be positive, got {dim}")
    z = (rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim)))
    q, r = np.linalg.qr(z)
    d = np.diag(r).copy()
    d[np.abs(d) == 0] = 1.0
    return q * (d / np.abs(d))


def ensure_unitary(u, tol: float = DEFAULT_TOL, name: str = "matrix") -> np.ndarray:
    """Validate that ``u`` is unitary within ``tol`` (in max-norm)."""
    m = as_complex_matrix(u, name)
    defect = max_abs(dagger(m) @ m - np.eye(m.shape[0]))
    if defect > tol:
        raise ValidationError(f"{name} is not unitary: defect {defect:.3e}")
    return m
