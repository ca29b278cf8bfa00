"""Point configurations, self-adjoint extension parameters and boundary maps.

The boundary triplet acts on coefficient vectors: a domain element of the
adjoint is described by ``xi0`` (singular part) and ``xi1`` (regular part) at
each center, and the boundary maps are

    h0 = c * xi0,        h1 = E0 @ xi0 + E1 @ xi1,

with ``c = 4*pi`` in three dimensions and ``c = 2*pi`` in two.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.spatial.distance import pdist, squareform

from .exceptions import DomainError, PreconditionError
from .linalg import as_hermitian, eigen_hermitian, is_positive_definite, solve

__all__ = [
    "PointConfiguration",
    "ExtensionParameter",
    "Diagonal",
    "Hermitian",
    "Relation",
    "InteractionMatrices",
    "BoundaryData",
    "NonnegFamily",
    "build_configuration",
    "boundary_constant",
    "interaction_matrices",
    "boundary_maps",
    "coefficients_from_boundary",
    "aghh_coefficient_matrix",
    "nonneg_family_bprime",
    "extension_from_nonneg_family",
]

DUPLICATE_RTOL = 1e-12
PARAM_RTOL = 1e-12


@dataclass(frozen=True, eq=False)
class PointConfiguration:
    """``m`` distinct interaction centers in R^d, ``d in {2, 3}``, with cached distances."""

    dimension: int
    points: np.ndarray
    distances: np.ndarray

    @property
    def m(self) -> int:
        return len(self.points)

    def __eq__(self, other):
        if not isinstance(other, PointConfiguration):
            return NotImplemented
        return self.dimension == other.dimension and np.array_equal(self.points, other.points)

    def __hash__(self):
        return hash((self.dimension, self.points.tobytes()))


def build_configuration(d: int, points) -> PointConfiguration:
    """Validate centers and precompute the distance matrix.

    Points closer than ``1e-12`` times the configuration diameter are rejected
    as duplicates.
    """
    if d not in (2, 3):
        raise PreconditionError(f"dimension must be 2 or 3, got {d!r}")
    pts = np.array(points, dtype=float)
    if pts.ndim != 2 or pts.shape[0] < 1 or pts.shape[1] != d:
        raise PreconditionError(f"points must be an (m, {d}) array with m >= 1, got shape {pts.shape}")
    if not np.all(np.isfinite(pts)):
        raise PreconditionError("point coordinates must be finite")
    if len(pts) == 1:
        dist = np.zeros((1, 1))
    else:
        flat = pdist(pts)
        diameter = flat.max()
        if diameter == 0.0 or flat.min() <= DUPLICATE_RTOL * diameter:
            raise PreconditionError("duplicate points in configuration")
        dist = squareform(flat)
    pts.setflags(write=False)
    dist.setflags(write=False)
    return PointConfiguration(int(d), pts, dist)


def boundary_constant(d: int) -> float:
    return 4.0 * math.pi if d == 3 else 2.0 * math.pi


# -- extension parameters ----------------------------------------------------


class ExtensionParameter:
    """Self-adjoint parameter of an extension.

    Subclasses implement :meth:`compress`, which returns an orthonormal basis
    ``Q`` (m x k) of the operator domain and the Hermitian operator part
    ``B_eff`` (k x k) acting there.  The eigenvalue condition for the extension
    then reads ``ker(B_eff - Q^* M(z) Q) != {0}``.
    """

    def compress(self, m: int) -> tuple[np.ndarray, np.ndarray]:
        raise NotImplementedError

    def full_matrix(self, m: int) -> np.ndarray:
        """Operator matrix for the operator variants; relations raise."""
        raise PreconditionError(f"{type(self).__name__} has no full operator matrix")


@dataclass(frozen=True, eq=False)
class Diagonal(ExtensionParameter):
    """Diagonal family ``B_alpha = diag(alpha_1, ..., alpha_m)``."""

    alpha: np.ndarray

    def __post_init__(self):
        a = np.array(self.alpha, dtype=float).ravel()
        if not np.all(np.isfinite(a)):
            raise PreconditionError("alpha must be finite")
        object.__setattr__(self, "alpha", a)

    def full_matrix(self, m):
        if len(self.alpha) != m:
            raise PreconditionError(f"alpha has length {len(self.alpha)}, expected {m}")
        return np.diag(self.alpha).astype(complex)

    def compress(self, m):
        return np.eye(m, dtype=complex), self.full_matrix(m)


@dataclass(frozen=True, eq=False)
class Hermitian(ExtensionParameter):
    """Bounded self-adjoint operator ``B = B^*`` on C^m."""

    B: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "B", as_hermitian(np.array(self.B, dtype=complex), PARAM_RTOL, "B"))

    def full_matrix(self, m):
        if self.B.shape != (m, m):
            raise PreconditionError(f"B has shape {self.B.shape}, expected {(m, m)}")
        return self.B

    def compress(self, m):
        return np.eye(m, dtype=complex), self.full_matrix(m)


@dataclass(frozen=True, eq=False)
class Relation(ExtensionParameter):
    """Self-adjoint relation: operator part ``B_op`` on ``ran P``, multivalued on ``ker P``.

    Consists of pairs ``(h0, h1)`` with ``h0 in ran P`` and ``P h1 = B_op h0``.
    """

    P: np.ndarray
    B_op: np.ndarray

    def __post_init__(self):
        P = as_hermitian(np.array(self.P, dtype=complex), PARAM_RTOL, "P")
        scale = max(np.linalg.norm(P, 2), 1.0)
        if np.max(np.abs(P @ P - P), initial=0.0) > PARAM_RTOL * scale * 10:
            raise PreconditionError("P is not a projector (P^2 != P)")
        B = as_hermitian(np.array(self.B_op, dtype=complex), PARAM_RTOL, "B_op")
        if B.shape != P.shape:
            raise PreconditionError("P and B_op must have the same shape")
        leak = np.eye(len(P)) - P
        bscale = max(np.linalg.norm(B, 2), 1.0)
        if np.max(np.abs(leak @ B), initial=0.0) > 1e-10 * bscale:
            raise PreconditionError("B_op does not map ran P into ran P")
        object.__setattr__(self, "P", P)
        object.__setattr__(self, "B_op", B)

    def compress(self, m):
        if self.P.shape != (m, m):
            raise PreconditionError(f"P has shape {self.P.shape}, expected {(m, m)}")
        w, v = eigen_hermitian(self.P)
        Q = v[:, w > 0.5]
        return Q, Q.conj().T @ self.B_op @ Q


# -- interaction matrices and boundary maps ----------------------------------


@dataclass(frozen=True, eq=False)
class InteractionMatrices:
    E0: np.ndarray
    E1: np.ndarray


@dataclass(frozen=True, eq=False)
class BoundaryData:
    xi0: np.ndarray
    xi1: np.ndarray
    h0: np.ndarray
    h1: np.ndarray


def interaction_matrices(cfg: PointConfiguration) -> InteractionMatrices:
    """Matrices ``E0``, ``E1`` of the boundary map ``Gamma_1`` for the configuration."""
    r = cfg.distances
    E1 = np.exp(-r)
    off = ~np.eye(cfg.m, dtype=bool)
    E0 = np.empty_like(r)
    if cfg.dimension == 3:
        np.fill_diagonal(E0, -1.0)
        E0[off] = np.exp(-r[off]) / r[off]
    else:
        np.fill_diagonal(E0, 0.0)
        E0[off] = np.exp(-r[off]) * np.log(r[off])
    return InteractionMatrices(E0=E0, E1=E1)


def _vec(v, m, name):
    a = np.asarray(v, dtype=complex).ravel()
    if a.shape != (m,):
        raise PreconditionError(f"{name} must have length {m}, got {a.size}")
    return a


def boundary_maps(cfg: PointConfiguration, xi0, xi1) -> BoundaryData:
    xi0 = _vec(xi0, cfg.m, "xi0")
    xi1 = _vec(xi1, cfg.m, "xi1")
    E = interaction_matrices(cfg)
    c = boundary_constant(cfg.dimension)
    return BoundaryData(xi0=xi0, xi1=xi1, h0=c * xi0, h1=E.E0 @ xi0 + E.E1 @ xi1)


def coefficients_from_boundary(cfg: PointConfiguration, h0, h1) -> tuple[np.ndarray, np.ndarray]:
    """Invert :func:`boundary_maps`: ``xi0 = h0 / c``, ``xi1 = E1^{-1} (h1 - E0 h0 / c)``."""
    h0 = _vec(h0, cfg.m, "h0")
    h1 = _vec(h1, cfg.m, "h1")
    E = interaction_matrices(cfg)
    c = boundary_constant(cfg.dimension)
    xi0 = h0 / c
    xi1 = solve(E.E1, h1 - E.E0 @ xi0)
    return xi0, xi1


def aghh_coefficient_matrix(cfg: PointConfiguration, alpha) -> np.ndarray:
    """Coefficient matrix ``E1^{-1} (c * diag(alpha) - E0)`` of the diagonal family.

    Returned as computed; it is not symmetrised.
    """
    a = np.asarray(alpha, dtype=float).ravel()
    if a.shape != (cfg.m,):
        raise PreconditionError(f"alpha must have length {cfg.m}")
    E = interaction_matrices(cfg)
    c = boundary_constant(cfg.dimension)
    return solve(E.E1, c * np.diag(a) - E.E0).astype(complex)


@dataclass(frozen=True, eq=False)
class NonnegFamily:
    bprime: np.ndarray
    bound_ok: bool


def _require_3d(cfg, what):
    if cfg.dimension != 3:
        raise DomainError(f"{what} unsupported for dimension {cfg.dimension}")


def nonneg_family_bprime(cfg: PointConfiguration, B) -> NonnegFamily:
    """Parametrisation of the non-negative extensions (3D) by ``B' = B E1 / (4 pi)``.

    ``bound_ok`` holds when ``0 < B < Mt0^{-1}``, ``Mt0`` being
    :func:`pointint.weyl.tilde_weyl_zero` (so the upper bound is
    ``4 pi`` times the inverse of the bracketed Gram matrix).
    """
    from .weyl import tilde_weyl_zero

    _require_3d(cfg, "nonneg_family_bprime")
    B = as_hermitian(np.array(B, dtype=complex), PARAM_RTOL, "B")
    if B.shape != (cfg.m, cfg.m):
        raise PreconditionError(f"B must be {cfg.m} x {cfg.m}")
    E = interaction_matrices(cfg)
    bprime = B @ E.E1 / (4.0 * math.pi)
    upper = np.linalg.inv(tilde_weyl_zero(cfg))
    gap = 0.5 * ((upper - B) + (upper - B).conj().T)
    ok = is_positive_definite(B) and is_positive_definite(gap)
    return NonnegFamily(bprime=bprime, bound_ok=ok)


def extension_from_nonneg_family(cfg: PointConfiguration, B) -> Hermitian:
    """Parameter in the original triplet of the extension selected by ``B`` (3D, ``B > 0``).

    The auxiliary triplet shifts ``Gamma_1`` by ``-E0 Gamma_0 / (4 pi)`` and
    the extension is ``ker(B Gamma~_1 - Gamma~_0)``, i.e. the graph of
    ``B^{-1} + E0 / (4 pi)`` in the original triplet.
    """
    _require_3d(cfg, "extension_from_nonneg_family")
    B = as_hermitian(np.array(B, dtype=complex), PARAM_RTOL, "B")
    if not is_positive_definite(B):
        raise PreconditionError("B must be positive definite")
    E = interaction_matrices(cfg)
    return Hermitian(np.linalg.inv(B) + E.E0 / (4.0 * math.pi))
