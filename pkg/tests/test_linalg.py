"""Matrix-kernel tests: eigensolver, projections, lattice ops, states."""

from __future__ import annotations

import math

import numpy as np
import pytest

from contextia import (
    DEFAULT_TOL,
    DensityState,
    Projection,
    ValidationError,
    dagger,
    ensure_unit_vector,
    ensure_unitary,
    haar_unitary,
    hermitian_defect,
    hermitian_eigen,
    kcbs_pentagon,
    max_abs,
    projection_join,
    projection_meet,
    rank1_projection,
    state_value,
)


def _random_hermitian(dim, rng, scale=1.0):
    z = rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
    return scale * (z + dagger(z)) / 2.0


def _random_projection(dim, rank, rng):
    if rank == 0:
        return Projection.zero(dim)
    z = rng.standard_normal((dim, rank)) + 1j * rng.standard_normal((dim, rank))
    q, _ = np.linalg.qr(z)
    return Projection(matrix=q @ dagger(q), rank=rank)


# ============================================================================
# Eigensolver
# ============================================================================

def test_eigen_diagonal_matrix():
    vals, vecs = hermitian_eigen(np.diag([3.0, -1.0, 2.0]))
    np.testing.assert_allclose(vals, [-1.0, 2.0, 3.0], atol=1e-14)
    assert max_abs(dagger(vecs) @ vecs - np.eye(3)) < 1e-13


def test_eigen_known_two_by_two():
    # [[0, 1], [1, 0]] has eigenvalues -1 and +1.
    vals, vecs = hermitian_eigen(np.array([[0.0, 1.0], [1.0, 0.0]]))
    np.testing.assert_allclose(vals, [-1.0, 1.0], atol=1e-14)
    for k in range(2):
        residual = np.array([[0, 1], [1, 0]]) @ vecs[:, k] - vals[k] * vecs[:, k]
        assert np.linalg.norm(residual) < 1e-13


def test_eigen_pentagon_sum_closed_form():
    # The pentagon sum has spectrum {(5 - sqrt5)/2 twice, sqrt5}.
    total = kcbs_pentagon().pentagon_sum()
    vals, _ = hermitian_eigen(total)
    expected = [(5.0 - math.sqrt(5.0)) / 2.0, (5.0 - math.sqrt(5.0)) / 2.0,
                math.sqrt(5.0)]
    np.testing.assert_allclose(vals, expected, atol=1e-12)


def test_eigen_matches_numpy_oracle_many_seeds():
    rng = np.random.default_rng(20260814)
    checked = 0
    for dim in range(2, 9):
        for _ in range(80):
            h = _random_hermitian(dim, rng, scale=float(rng.uniform(0.1, 10.0)))
            vals, vecs = hermitian_eigen(h)
            np.testing.assert_allclose(vals, np.linalg.eigvalsh(h),
                                       atol=1e-9 * max(1.0, np.linalg.norm(h)))
            # reconstruction and unitarity
            recon = vecs @ np.diag(vals) @ dagger(vecs)
            assert max_abs(recon - h) < 1e-9 * max(1.0, np.linalg.norm(h))
            assert max_abs(dagger(vecs) @ vecs - np.eye(dim)) < 1e-12
            checked += 1
    assert checked >= 500


def test_eigen_rejects_non_hermitian():
    with pytest.raises(ValidationError, match="not Hermitian"):
        hermitian_eigen(np.array([[0.0, 1.0], [0.0, 0.0]]))


def test_eigen_accepts_one_by_one():
    vals, vecs = hermitian_eigen(np.array([[4.0]]))
    assert vals[0] == 4.0 and vecs.shape == (1, 1)


def test_eigen_degenerate_spectrum():
    rng = np.random.default_rng(5)
    u = haar_unitary(4, rng)
    h = u @ np.diag([1.0, 1.0, 1.0, 2.0]) @ dagger(u)
    vals, _ = hermitian_eigen(h)
    np.testing.assert_allclose(vals, [1.0, 1.0, 1.0, 2.0], atol=1e-12)


# ============================================================================
# Validators
# ============================================================================

def test_as_complex_matrix_rejects_non_square():
    with pytest.raises(ValidationError, match="square"):
        hermitian_eigen(np.zeros((2, 3)))


def test_unit_vector_validation():
    v = ensure_unit_vector([1.0, 0.0])
    assert v.dtype == np.complex128
    with pytest.raises(ValidationError, match="unit"):
        ensure_unit_vector([1.0, 1.0])
    with pytest.raises(ValidationError, match="empty"):
        ensure_unit_vector([])


def test_hermitian_defect_and_max_abs():
    assert hermitian_defect(np.eye(3)) == 0.0
    assert max_abs(np.array([[1.0, -4.0], [0.5, 2.0]])) == 4.0


def test_ensure_unitary():
    rng = np.random.default_rng(11)
    u = haar_unitary(5, rng)
    ensure_unitary(u)
    with pytest.raises(ValidationError, match="unitary"):
        ensure_unitary(np.diag([1.0, 2.0]))


def test_haar_unitary_is_unitary_and_seeded():
    rng = np.random.default_rng(99)
    u = haar_unitary(6, rng)
    assert max_abs(dagger(u) @ u - np.eye(6)) < 1e-12
    again = haar_unitary(6, np.random.default_rng(99))
    first = haar_unitary(6, np.random.default_rng(99))
    np.testing.assert_array_equal(again, first)


# ============================================================================
# Projection type
# ============================================================================

def test_projection_constructor_checks():
    Projection(matrix=np.diag([1.0, 0.0]), rank=1)
    with pytest.raises(ValidationError, match="idempotent"):
        Projection(matrix=np.diag([0.5, 0.0]), rank=1)
    with pytest.raises(ValidationError, match="Hermitian"):
        Projection(matrix=np.array([[1.0, 1.0], [0.0, 0.0]]), rank=1)
    with pytest.raises(ValidationError, match="rank"):
        Projection(matrix=np.eye(2), rank=3)
    with pytest.raises(ValidationError, match="inconsistent"):
        Projection(matrix=np.eye(2), rank=1)


def test_projection_from_matrix_spectral_validation():
    p = Projection.from_matrix(np.diag([1.0, 1.0, 0.0]))
    assert p.rank == 2
    near = np.diag([1.0 + 5e-9, 0.0, 0.0])
    assert Projection.from_matrix(near, tol=1e-8).rank == 1
    with pytest.raises(ValidationError, match="eigenvalues"):
        Projection.from_matrix(np.diag([0.6, 0.0]))


def test_projection_complement_and_basis():
    rng = np.random.default_rng(7)
    p = _random_projection(5, 2, rng)
    c = p.complement()
    assert c.rank == 3
    assert max_abs(p.matrix @ c.matrix) < 1e-12
    basis = p.range_basis()
    assert basis.shape == (5, 2)
    np.testing.assert_allclose(p.matrix @ basis, basis, atol=1e-12)


def test_rank1_projection():
    v = np.array([1.0, 1j]) / math.sqrt(2.0)
    p = rank1_projection(v)
    assert p.rank == 1
    np.testing.assert_allclose(p.matrix @ v, v, atol=1e-14)


# ============================================================================
# Meet and join
# ============================================================================

def _join_oracle(p, q):
    """Independent join: orthonormalize the union of the two range bases."""
    if p.rank == 0 and q.rank == 0:
        return Projection.zero(p.dim)
    columns = []
    if p.rank:
        columns.append(p.range_basis())
    if q.rank:
        columns.append(q.range_basis())
    stacked = np.hstack(columns)
    u, s, _ = np.linalg.svd(stacked, full_matrices=False)
    basis = u[:, s > 1e-8]
    return Projection(matrix=basis @ dagger(basis), rank=basis.shape[1])


def test_meet_of_orthogonal_is_zero():
    p = Projection(matrix=np.diag([1.0, 0.0, 0.0]), rank=1)
    q = Projection(matrix=np.diag([0.0, 1.0, 0.0]), rank=1)
    assert projection_meet(p, q).rank == 0
    assert projection_join(p, q).rank == 2


def test_meet_join_with_self_and_extremes():
    rng = np.random.default_rng(21)
    p = _random_projection(4, 2, rng)
    assert max_abs(projection_meet(p, p).matrix - p.matrix) < 1e-10
    assert max_abs(projection_join(p, p).matrix - p.matrix) < 1e-10
    eye = Projection.identity(4)
    zero = Projection.zero(4)
    assert max_abs(projection_meet(p, eye).matrix - p.matrix) < 1e-10
    assert projection_meet(p, zero).rank == 0
    assert max_abs(projection_join(p, zero).matrix - p.matrix) < 1e-10
    assert projection_join(p, eye).rank == 4


def test_meet_known_intersection():
    # span{e0, e1} meet span{e1, e2} = span{e1}
    p = Projection(matrix=np.diag([1.0, 1.0, 0.0]), rank=2)
    q = Projection(matrix=np.diag([0.0, 1.0, 1.0]), rank=2)
    meet = projection_meet(p, q)
    assert meet.rank == 1
    np.testing.assert_allclose(meet.matrix, np.diag([0.0, 1.0, 0.0]), atol=1e-12)


def test_meet_join_properties_random():
    rng = np.random.default_rng(1234)
    for dim in (3, 4, 5, 6):
        for _ in range(25):
            p = _random_projection(dim, int(rng.integers(0, dim + 1)), rng)
            q = _random_projection(dim, int(rng.integers(0, dim + 1)), rng)
            meet = projection_meet(p, q)
            join = projection_join(p, q)
            # meet under both, join above both
            assert max_abs(p.matrix @ meet.matrix - meet.matrix) < 1e-9
            assert max_abs(q.matrix @ meet.matrix - meet.matrix) < 1e-9
            assert max_abs(join.matrix @ p.matrix - p.matrix) < 1e-9
            assert max_abs(join.matrix @ q.matrix - q.matrix) < 1e-9
            # rank identity and the independent join oracle
            assert meet.rank + join.rank == p.rank + q.rank
            assert max_abs(join.matrix - _join_oracle(p, q).matrix) < 1e-9
            # commutativity
            assert max_abs(meet.matrix - projection_meet(q, p).matrix) < 1e-9


def test_meet_of_generic_subspaces_dim_counts():
    rng = np.random.default_rng(77)
    # two generic 3-dim subspaces of C^4 meet in dimension 2
    p = _random_projection(4, 3, rng)
    q = _random_projection(4, 3, rng)
    assert projection_meet(p, q).rank == 2
    assert projection_join(p, q).rank == 4


def test_meet_dimension_mismatch():
    with pytest.raises(ValidationError, match="mismatch"):
        projection_meet(Projection.zero(2), Projection.zero(3))


# ============================================================================
# States
# ============================================================================

def test_density_state_checks():
    DensityState(matrix=np.eye(2) / 2.0)
    with pytest.raises(ValidationError, match="trace"):
        DensityState(matrix=np.eye(2))
    with pytest.raises(ValidationError, match="Hermitian"):
        DensityState(matrix=np.array([[0.5, 0.5], [0.0, 0.5]]))
    with pytest.raises(ValidationError, match="PSD"):
        DensityState.from_matrix(np.diag([1.5, -0.5]))


def test_pure_and_mixed_states():
    v = np.array([0.0, 1.0, 0.0])
    rho = DensityState.pure(v)
    assert state_value(rho, np.diag([1.0, 2.0, 3.0])) == pytest.approx(2.0)
    mixed = DensityState.maximally_mixed(4)
    assert state_value(mixed, np.eye(4)) == pytest.approx(1.0)


def test_state_value_linearity_and_errors():
    rng = np.random.default_rng(3)
    rho = DensityState.maximally_mixed(3)
    a = _random_hermitian(3, rng)
    b = _random_hermitian(3, rng)
    lhs = state_value(rho, 2.0 * a + b)
    rhs = 2.0 * state_value(rho, a) + state_value(rho, b)
    assert lhs == pytest.approx(rhs, abs=1e-12)
    with pytest.raises(ValidationError, match="mismatch"):
        state_value(rho, np.eye(4))
    with pytest.raises(ValidationError, match="Hermitian"):
        state_value(rho, np.triu(np.ones((3, 3))))
