"""Weyl functions of the point-interaction triplets, their boundary values and gamma-fields.

Three dimensions::

    M(z)_jj = i sqrt(z) / (4 pi),      M(z)_jk = exp(i sqrt(z) r_jk) / (4 pi r_jk)

Two dimensions::

    M(z)_jj = (psi(1) - log(sqrt(z) / 2i)) / (2 pi),   M(z)_jk = (i/4) H0(sqrt(z) r_jk)

``sqrt`` is the branch with the cut on ``[0, inf)`` (see
:func:`pointint.specfun.sqrt_cut`).  On the negative axis both matrices are
real symmetric and are evaluated through real formulas (``K0`` in 2D).
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy import special

from .config import PointConfiguration
from .exceptions import DomainError, PreconditionError, SingularityError
from .radialpd import gram_matrix, one_minus_exp_over_t
from .specfun import CONSTANTS, SpectralPoint, hankel0_first, sqrt_cut

__all__ = [
    "WeylSample",
    "weyl_matrix",
    "weyl_negative",
    "weyl_boundary",
    "weyl_imag_boundary",
    "weyl_zero",
    "tilde_weyl_zero",
    "gamma_field_eval",
]

FOUR_PI = 4.0 * math.pi
TWO_PI = 2.0 * math.pi


@dataclass(frozen=True, eq=False)
class WeylSample:
    point: SpectralPoint
    matrix: np.ndarray
    dimension: int


def _offdiag_mask(m):
    return ~np.eye(m, dtype=bool)


def _as_interior(z) -> SpectralPoint:
    if isinstance(z, SpectralPoint):
        if z.is_boundary:
            raise DomainError("weyl_matrix needs an interior point; use weyl_boundary for x + i0")
        return z
    return SpectralPoint.interior(z)


def weyl_negative(cfg: PointConfiguration, t: float) -> np.ndarray:
    """Real symmetric ``M(-t)`` for ``t > 0``."""
    if not t > 0:
        raise DomainError(f"weyl_negative: t must be positive, got {t!r}")
    k = math.sqrt(t)
    r = cfg.distances
    off = _offdiag_mask(cfg.m)
    M = np.empty((cfg.m, cfg.m))
    if cfg.dimension == 3:
        np.fill_diagonal(M, -k / FOUR_PI)
        M[off] = np.exp(-k * r[off]) / (FOUR_PI * r[off])
    else:
        np.fill_diagonal(M, (CONSTANTS.psi_one - math.log(0.5 * k)) / TWO_PI)
        M[off] = special.k0(k * r[off]) / TWO_PI
    return M


def weyl_matrix(cfg: PointConfiguration, z) -> WeylSample:
    """Weyl function ``M(z)`` at an interior point ``z`` in C minus ``[0, inf)``."""
    p = _as_interior(z)
    zc = p.value
    m = cfg.m
    if zc.imag == 0.0:
        return WeylSample(p, weyl_negative(cfg, -zc.real).astype(complex), cfg.dimension)
    k = complex(sqrt_cut(zc))
    r = cfg.distances
    off = _offdiag_mask(m)
    M = np.empty((m, m), dtype=complex)
    if cfg.dimension == 3:
        np.fill_diagonal(M, 1j * k / FOUR_PI)
        M[off] = np.exp(1j * k * r[off]) / (FOUR_PI * r[off])
    else:
        # k lies in the upper half-plane, so k / 2i has arg in (-pi/2, pi/2).
        np.fill_diagonal(M, (CONSTANTS.psi_one - np.log(k / 2j)) / TWO_PI)
        M[off] = 0.25j * hankel0_first(k * r[off])
    return WeylSample(p, M, cfg.dimension)


def weyl_zero(cfg: PointConfiguration) -> np.ndarray:
    """``M(0)`` in 3D: zero diagonal, off-diagonal ``1 / (4 pi r)``."""
    if cfg.dimension != 3:
        raise DomainError("weyl_zero: M(0) does not exist in dimension 2 (diagonal diverges)")
    off = _offdiag_mask(cfg.m)
    M = np.zeros((cfg.m, cfg.m))
    M[off] = 1.0 / (FOUR_PI * cfg.distances[off])
    return M


def tilde_weyl_zero(cfg: PointConfiguration) -> np.ndarray:
    """Zero-energy Weyl matrix of the shifted triplet, ``Gram((1 - e^-t)/t) / (4 pi)`` (3D)."""
    if cfg.dimension != 3:
        raise DomainError("tilde_weyl_zero: defined for dimension 3 only")
    return gram_matrix(one_minus_exp_over_t(), cfg.points) / FOUR_PI


def weyl_boundary(cfg: PointConfiguration, x: float) -> WeylSample:
    """Boundary value ``M(x + i0)`` for real ``x >= 0`` (``x = 0`` only in 3D)."""
    p = SpectralPoint.boundary(x)
    x = p.value.real
    m = cfg.m
    if cfg.dimension == 3 and x == 0.0:
        return WeylSample(p, weyl_zero(cfg).astype(complex), 3)
    if x == 0.0:
        raise DomainError("weyl_boundary: x = 0 is a logarithmic singularity in dimension 2")
    k = math.sqrt(x)
    r = cfg.distances
    off = _offdiag_mask(m)
    M = np.empty((m, m), dtype=complex)
    if cfg.dimension == 3:
        np.fill_diagonal(M, 1j * k / FOUR_PI)
        M[off] = np.exp(1j * k * r[off]) / (FOUR_PI * r[off])
    else:
        # log(k / 2i) = log(k / 2) - i pi / 2
        np.fill_diagonal(M, (CONSTANTS.psi_one - math.log(0.5 * k) + 0.5j * math.pi) / TWO_PI)
        kr = k * r[off]
        M[off] = 0.25 * (-special.y0(kr) + 1j * special.j0(kr))
    return WeylSample(p, M, cfg.dimension)


def weyl_imag_boundary(cfg: PointConfiguration, x: float) -> np.ndarray:
    """``Im M(x + i0)`` for ``x > 0``: a scaled Gram matrix of ``sinc`` (3D) or ``J0`` (2D)."""
    if not x > 0:
        raise DomainError(f"weyl_imag_boundary: x must be positive, got {x!r}")
    k = math.sqrt(x)
    r = cfg.distances
    off = _offdiag_mask(cfg.m)
    out = np.empty((cfg.m, cfg.m))
    if cfg.dimension == 3:
        np.fill_diagonal(out, k / FOUR_PI)
        out[off] = np.sin(k * r[off]) / (FOUR_PI * r[off])
    else:
        np.fill_diagonal(out, 0.25)
        out[off] = 0.25 * special.j0(k * r[off])
    return out


def gamma_field_eval(cfg: PointConfiguration, z, a, x):
    """Defect element ``gamma(z) a`` evaluated at ``x``.

    Parameters
    ----------
    cfg : PointConfiguration
    z : complex or SpectralPoint
        Interior spectral point (a negative real ``z`` gives real kernels).
    a : array_like, shape (m,)
        Coefficient vector.
    x : array_like, shape (d,) or (k, d)
        Evaluation point(s), away from the centers.

    Returns
    -------
    complex or ndarray of complex, shape (k,)
    """
    p = _as_interior(z)
    a = np.asarray(a, dtype=complex).ravel()
    if a.shape != (cfg.m,):
        raise PreconditionError(f"coefficient vector must have length {cfg.m}")
    pts = np.asarray(x, dtype=float)
    single = pts.ndim == 1
    pts = np.atleast_2d(pts)
    if pts.shape[1] != cfg.dimension:
        raise PreconditionError(f"evaluation points must be {cfg.dimension}-dimensional")
    r = np.linalg.norm(pts[:, None, :] - cfg.points[None, :, :], axis=-1)
    scale = max(float(cfg.distances.max()), 1.0)
    if np.any(r <= 1e-14 * scale):
        raise SingularityError("gamma_field_eval: evaluation point coincides with a center")
    zc = p.value
    if zc.imag == 0.0:
        k = math.sqrt(-zc.real)
        if cfg.dimension == 3:
            kern = np.exp(-k * r) / (FOUR_PI * r)
        else:
            kern = special.k0(k * r) / TWO_PI
        kern = kern.astype(complex)
    else:
        k = complex(sqrt_cut(zc))
        if cfg.dimension == 3:
            kern = np.exp(1j * k * r) / (FOUR_PI * r)
        else:
            kern = 0.25j * hankel0_first(k * r)
    vals = kern @ a
    return complex(vals[0]) if single else vals
