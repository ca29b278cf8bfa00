"""Dense Hermitian linear algebra: validated wrappers around LAPACK via numpy."""
from __future__ import annotations

import numpy as np

from .exceptions import PreconditionError

__all__ = [
    "HERMITIAN_RTOL",
    "as_hermitian",
    "eigen_hermitian",
    "eigvals_hermitian",
    "null_space",
    "solve",
    "min_eigenvalue",
    "is_positive_definite",
]

HERMITIAN_RTOL = 1e-12
SINGULAR_RTOL = 1e-14


def _norm(a):
    return float(np.linalg.norm(a, 2)) if a.size else 0.0


def as_hermitian(a, rtol=HERMITIAN_RTOL, name="matrix"):
    """Return ``a`` as a square array after checking ``a == a^*`` within ``rtol * ||a||``.

    The returned array is exactly Hermitian (averaged with its adjoint).
    """
    a = np.asarray(a)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise PreconditionError(f"{name} must be square, got shape {a.shape}")
    if not np.all(np.isfinite(a)):
        raise PreconditionError(f"{name} has non-finite entries")
    dev = np.max(np.abs(a - a.conj().T)) if a.size else 0.0
    if dev > rtol * max(_norm(a), 1.0):
        raise PreconditionError(f"{name} is not Hermitian (max deviation {dev:.3e})")
    return 0.5 * (a + a.conj().T)


def eigen_hermitian(a):
    """Ascending eigenvalues and orthonormal eigenvectors (columns) of a Hermitian matrix."""
    h = as_hermitian(a)
    return np.linalg.eigh(h)


def eigvals_hermitian(a):
    return np.linalg.eigvalsh(as_hermitian(a))


def null_space(a, tol):
    """Orthonormal basis (columns) of the span of eigenvectors with ``|lambda| <= tol``."""
    w, v = eigen_hermitian(a)
    return v[:, np.abs(w) <= tol]


def solve(a, b):
    """Solve ``a x = b`` for Hermitian ``a``; refuses numerically singular systems."""
    w = eigvals_hermitian(a)
    scale = np.max(np.abs(w)) if w.size else 0.0
    if w.size == 0 or np.min(np.abs(w)) <= SINGULAR_RTOL * scale or scale == 0.0:
        raise PreconditionError("solve: matrix is numerically singular")
    return np.linalg.solve(np.asarray(a), np.asarray(b))


def min_eigenvalue(a) -> float:
    return float(eigvals_hermitian(a)[0])


def is_positive_definite(a, rtol=1e-10) -> bool:
    """Strict positivity with the threshold ``min eigenvalue > rtol * ||a||``."""
    w = eigvals_hermitian(a)
    return bool(w[0] > rtol * np.max(np.abs(w)))
