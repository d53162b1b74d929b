"""Multivariate least-squares maps between form and meaning spaces.

Formulations, for input X (words x p) and targets Y (words x q):

- cholesky: (X'X + ridge*I) B = X'Y, used when the reciprocal condition
  estimate of the left-hand side is comfortably above round-off.
- svd: X = U diag(s) V', B = V diag(s / (s^2 + ridge)) U'Y. With ridge = 0
  and singular values below the usual cutoff dropped this is the
  minimum-norm (pseudo-inverse) solution, which gives identical input
  columns identical coefficient rows.
"""
from __future__ import annotations

import os
from dataclasses import dataclass

import numpy as np
import scipy.linalg as sla
import scipy.sparse as sp
from scipy.linalg import lapack

from .exceptions import DataError

# below this reciprocal condition number of X'X the normal equations lose
# more than ~6 digits; switch to the SVD route
MIN_RCOND = 1e-6


@dataclass(frozen=True)
class LinearMap:
    coefficients: np.ndarray
    ridge: float = 0.0
    fit_residual: float = float("nan")
    solver: str = ""

    @property
    def shape(self) -> tuple:
        return self.coefficients.shape

    def __array__(self, dtype=None, copy=None):
        c = self.coefficients
        return c if dtype is None else c.astype(dtype)


def _dense(X) -> np.ndarray:
    if sp.issparse(X):
        return X.toarray().astype(np.float64)
    return np.asarray(X, dtype=np.float64)


def _check_finite(name, A):
    data = A.data if sp.issparse(A) else A
    if not np.all(np.isfinite(data)):
        raise DataError(f"{name} contains non-finite values")


def _solve_cholesky(X, Y, ridge):
    if sp.issparse(X):
        XtX = np.asarray((X.T @ X).toarray(), dtype=np.float64)
        XtY = np.asarray(X.T @ Y, dtype=np.float64)
    else:
        XtX = X.T @ X
        XtY = X.T @ Y
    if ridge:
        XtX[np.diag_indices_from(XtX)] += ridge
    anorm = np.abs(XtX).sum(axis=0).max() if XtX.size else 0.0
    try:
        c, lower = sla.cho_factor(XtX, lower=False, check_finite=False)
    except np.linalg.LinAlgError:
        return None
    rcond, info = lapack.dpocon(c, anorm, uplo="U")
    if info != 0 or not rcond > MIN_RCOND:
        return None
    return sla.cho_solve((c, lower), XtY, check_finite=False)


def _solve_svd(X, Y, ridge):
    X = _dense(X)
    U, s, Vt = sla.svd(X, full_matrices=False, lapack_driver="gesdd")
    if ridge:
        inv = s / (s * s + ridge)
    else:
        cutoff = (s.max() if s.size else 0.0) * max(X.shape) * np.finfo(np.float64).eps
        inv = np.zeros_like(s)
        keep = s > cutoff
        inv[keep] = 1.0 / s[keep]
    return Vt.T @ (inv[:, None] * (U.T @ Y))


def estimate_map(X, Y, ridge: float = 0.0, solver: str = "auto") -> LinearMap:
    """Solve ``min ||XB - Y||^2 + ridge * ||B||^2`` for B.

    Parameters
    ----------
    X : array or sparse matrix, shape (n, p)
    Y : array, shape (n, q)
    ridge : float
        Non-negative penalty. With ``ridge == 0`` and rank-deficient ``X``
        the minimum-norm minimizer is returned.
    solver : {"auto", "cholesky", "svd"}
        ``auto`` tries Cholesky and falls back to the SVD when the normal
        equations are ill-conditioned.
    """
    if not sp.issparse(X):
        X = np.asarray(X, dtype=np.float64)
    Y = _dense(Y)
    if X.ndim != 2 or Y.ndim != 2:
        raise DataError("X and Y must be two-dimensional")
    if X.shape[0] != Y.shape[0]:
        raise DataError(f"row-count mismatch: X has {X.shape[0]} rows, Y has {Y.shape[0]}")
    if ridge < 0:
        raise DataError(f"ridge must be non-negative, got {ridge}")
    _check_finite("X", X)
    _check_finite("Y", Y)

    B, used = None, "svd"
    if solver in ("auto", "cholesky") and X.shape[0] > 0:
        B = _solve_cholesky(X, Y, ridge)
        if B is not None:
            used = "cholesky"
        elif solver == "cholesky":
            raise np.linalg.LinAlgError("normal equations are not positive definite")
    if B is None:
        if X.shape[0] == 0:
            B = np.zeros((X.shape[1], Y.shape[1]))
        else:
            B = _solve_svd(X, Y, ridge)
    B = np.ascontiguousarray(B)
    resid = float(np.linalg.norm(np.asarray(X @ B) - Y)) if B.size else 0.0
    return LinearMap(B, float(ridge), resid, used)


def apply_map(X, linear_map) -> np.ndarray:
    B = np.asarray(linear_map.coefficients if isinstance(linear_map, LinearMap) else linear_map)
    if X.shape[1] != B.shape[0]:
        raise DataError(f"shape mismatch: input has {X.shape[1]} columns, "
                        f"map expects {B.shape[0]}")
    return np.asarray(X @ B, dtype=np.float64)


def comprehension_map(C, S, ridge: float = 0.0) -> LinearMap:
    """Form-to-meaning map F with S ~ C F."""
    return estimate_map(_matrix(C), _matrix(S), ridge)


def production_map(S, C, ridge: float = 0.0) -> LinearMap:
    """Meaning-to-form map G with C ~ S G."""
    return estimate_map(_matrix(S), _dense(_matrix(C)), ridge)


def _matrix(obj):
    # unwrap CueMatrix / SemanticMatrix
    if hasattr(obj, "matrix") and sp.issparse(obj.matrix):
        return obj.matrix.astype(np.float64)
    if hasattr(obj, "values") and isinstance(obj.values, np.ndarray):
        return obj.values
    return obj


def save_map(linear_map: LinearMap, path: str | os.PathLike) -> None:
    """Write coefficients as ``.npy`` (binary) or text with a shape header."""
    path = os.fspath(path)
    B = np.asarray(linear_map.coefficients, dtype=np.float64)
    if path.endswith(".npy"):
        np.save(path, B)
        return
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(f"{B.shape[0]} {B.shape[1]}\n")
        for row in B:
            fh.write(" ".join(repr(float(x)) for x in row) + "\n")


def load_map(path: str | os.PathLike, ridge: float = 0.0) -> LinearMap:
    path = os.fspath(path)
    if not os.path.isfile(path):
        raise DataError(f"coefficient file not found: {path}")
    if path.endswith(".npy"):
        B = np.load(path)
    else:
        with open(path, encoding="utf-8") as fh:
            try:
                rows, cols = (int(x) for x in fh.readline().split())
            except ValueError:
                raise DataError(f"{path}: bad shape header") from None
            B = np.loadtxt(fh, dtype=np.float64, ndmin=2).reshape(rows, cols)
    return LinearMap(np.asarray(B, dtype=np.float64), ridge)
