import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from ldl import DataError, apply_map, estimate_map, load_map, save_map


def svd_pinv(X):
    """Explicit singular-value pseudo-inverse (independent of the library solver)."""
    U, s, Vt = np.linalg.svd(X, full_matrices=False)
    tol = s.max() * max(X.shape) * np.finfo(float).eps
    s_inv = np.array([1 / x if x > tol else 0.0 for x in s])
    return Vt.T @ np.diag(s_inv) @ U.T


def test_identity_recovers_targets(rng):
    Y = rng.normal(size=(6, 4))
    np.testing.assert_allclose(estimate_map(np.eye(6), Y).coefficients, Y, atol=1e-12)


def test_random_matches_pinv(rng):
    X, Y = rng.normal(size=(20, 12)), rng.normal(size=(20, 7))
    B = estimate_map(X, Y).coefficients
    assert np.max(np.abs(B - svd_pinv(X) @ Y)) < 1e-8


def test_rank_deficient_minimum_norm(rng):
    X = rng.normal(size=(10, 4))
    X = np.column_stack([X, X[:, 1]])       # duplicate input column
    Y = rng.normal(size=(10, 3))
    m = estimate_map(X, Y)
    assert m.solver == "svd"
    np.testing.assert_allclose(m.coefficients[1], m.coefficients[4], atol=1e-10)
    np.testing.assert_allclose(m.coefficients, svd_pinv(X) @ Y, atol=1e-10)


def test_ridge_closed_form(rng):
    X, Y = rng.normal(size=(15, 6)), rng.normal(size=(15, 2))
    lam = 0.7
    expected = np.linalg.solve(X.T @ X + lam * np.eye(6), X.T @ Y)
    for solver in ("cholesky", "svd"):
        np.testing.assert_allclose(estimate_map(X, Y, lam, solver=solver).coefficients,
                                   expected, atol=1e-10)


@pytest.mark.parametrize("X, Y, msg", [
    (np.ones((3, 2)), np.ones((4, 2)), "row-count"),
    (np.array([[np.nan, 1.0]]), np.ones((1, 1)), "non-finite"),
])
def test_errors(X, Y, msg):
    with pytest.raises(DataError, match=msg):
        estimate_map(X, Y)


def test_apply_shapes(rng):
    m = estimate_map(rng.normal(size=(8, 3)), rng.normal(size=(8, 2)))
    assert apply_map(np.zeros((0, 3)), m).shape == (0, 2)
    with pytest.raises(DataError, match="shape mismatch"):
        apply_map(np.ones((2, 4)), m)


def test_sparse_input_same_as_dense(toy):
    C = toy.cm.matrix
    dense = estimate_map(C.toarray(), toy.S.values).coefficients
    np.testing.assert_allclose(toy.F.coefficients, dense, atol=1e-12)


@pytest.mark.parametrize("suffix", [".npy", ".txt"])
def test_save_load(tmp_path, rng, suffix):
    m = estimate_map(rng.normal(size=(9, 4)), rng.normal(size=(9, 3)))
    save_map(m, tmp_path / f"B{suffix}")
    np.testing.assert_array_equal(load_map(tmp_path / f"B{suffix}").coefficients, m.coefficients)


shapes = st.tuples(st.integers(3, 15), st.integers(1, 10), st.integers(1, 5))


@settings(max_examples=40, deadline=None)
@given(shapes, st.integers(0, 2**31))
def test_column_independence(shape, seed):
    n, p, q = shape
    r = np.random.default_rng(seed)
    X, Y = r.normal(size=(n, p)), r.normal(size=(n, q))
    joint = estimate_map(X, Y).coefficients
    for j in range(q):
        alone = estimate_map(X, Y[:, [j]]).coefficients[:, 0]
        np.testing.assert_allclose(joint[:, j], alone, atol=1e-10)


@settings(max_examples=40, deadline=None)
@given(shapes, st.integers(0, 2**31))
def test_duplicate_targets_duplicate_coefficients(shape, seed):
    n, p, q = shape
    r = np.random.default_rng(seed)
    X, Y = r.normal(size=(n, p)), r.normal(size=(n, q))
    Y = np.column_stack([Y, Y[:, 0]])
    B = estimate_map(X, Y).coefficients
    np.testing.assert_allclose(B[:, 0], B[:, -1], atol=1e-10)


@settings(max_examples=40, deadline=None)
@given(shapes, st.integers(0, 2**31))
def test_ridge_shrinks_norm(shape, seed):
    n, p, q = shape
    r = np.random.default_rng(seed)
    X, Y = r.normal(size=(n, p)), r.normal(size=(n, q))
    norms = [np.linalg.norm(estimate_map(X, Y, lam).coefficients) for lam in (0, 0.1, 1)]
    assert norms[0] >= norms[1] - 1e-10
    assert norms[1] >= norms[2] - 1e-10


def test_exact_fit_when_underdetermined(rng):
    X, Y = rng.normal(size=(5, 9)), rng.normal(size=(5, 3))
    assert estimate_map(X, Y).fit_residual < 1e-8
