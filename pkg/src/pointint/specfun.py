"""Scalar special functions used to build every Weyl-function entry.

Bessel, Hankel and modified Bessel functions of order zero are delegated to
:mod:`scipy.special` and wrapped with domain checks.  The radial kernels
``omega_kernel(n, t)`` are summed from their own power series wherever the
series is numerically benign and switch to the closed Bessel form elsewhere.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy import special

from .exceptions import DomainError

__all__ = [
    "SpecialConstants",
    "CONSTANTS",
    "SpectralPoint",
    "sqrt_branch",
    "sqrt_cut",
    "bessel_j0",
    "bessel_y0",
    "bessel_k0",
    "hankel0_first",
    "omega_kernel",
]

# Beyond this argument the alternating series loses too many digits.
OMEGA_SERIES_RADIUS = 8.0
_OMEGA_MAX_TERMS = 200


@dataclass(frozen=True)
class SpecialConstants:
    euler_gamma: float
    psi_one: float


CONSTANTS = SpecialConstants(euler_gamma=float(np.euler_gamma), psi_one=-float(np.euler_gamma))


@dataclass(frozen=True)
class SpectralPoint:
    """A spectral parameter: interior ``z`` off ``[0, inf)`` or a boundary value ``x + i0``.

    Use the :meth:`interior` and :meth:`boundary` constructors, which validate.
    """

    kind: str
    value: complex

    def __post_init__(self):
        if self.kind == "interior":
            z = complex(self.value)
            if not (np.isfinite(z.real) and np.isfinite(z.imag)):
                raise DomainError(f"non-finite spectral point {z!r}")
            if z.imag == 0.0 and z.real >= 0.0:
                raise DomainError(f"interior point {z!r} lies on the cut [0, inf)")
            object.__setattr__(self, "value", z)
        elif self.kind == "boundary":
            x = complex(self.value)
            if x.imag != 0.0 or not np.isfinite(x.real) or x.real < 0.0:
                raise DomainError(f"boundary point must be real and >= 0, got {self.value!r}")
            object.__setattr__(self, "value", complex(x.real, 0.0))
        else:
            raise DomainError(f"unknown spectral point kind {self.kind!r}")

    @classmethod
    def interior(cls, z) -> "SpectralPoint":
        return cls("interior", z)

    @classmethod
    def boundary(cls, x) -> "SpectralPoint":
        return cls("boundary", x)

    @property
    def is_boundary(self) -> bool:
        return self.kind == "boundary"


def sqrt_cut(z):
    """Square root with the cut along ``[0, inf)`` and ``arg z`` taken in ``(0, 2*pi)``.

    Vectorised, no validation.  Equals ``1j * sqrt(-z)`` with the principal
    root, so the imaginary part is positive off the cut and the value tends to
    ``+sqrt(x)`` as ``z -> x + i0``.
    """
    return 1j * np.sqrt(-np.asarray(z, dtype=complex))


def sqrt_branch(p: SpectralPoint) -> complex:
    """Branch of the square root used throughout the Weyl functions.

    >>> sqrt_branch(SpectralPoint.interior(-1))
    1j
    >>> sqrt_branch(SpectralPoint.boundary(4.0))
    (2+0j)
    """
    if p.is_boundary:
        return complex(np.sqrt(p.value.real), 0.0)
    return complex(sqrt_cut(p.value))


def _check_finite(t, name):
    arr = np.asarray(t, dtype=float)
    if not np.all(np.isfinite(arr)):
        raise DomainError(f"{name}: non-finite argument")
    return arr


def _out(arr, like):
    return arr.item() if np.ndim(like) == 0 else arr


def bessel_j0(t):
    """Bessel function of the first kind, order zero (real argument)."""
    arr = _check_finite(t, "bessel_j0")
    return _out(special.j0(arr), t)


def bessel_y0(t):
    """Bessel function of the second kind, order zero, for ``t > 0``."""
    arr = _check_finite(t, "bessel_y0")
    if np.any(arr <= 0):
        raise DomainError("bessel_y0: argument must be positive")
    return _out(special.y0(arr), t)


def bessel_k0(t):
    """Modified Bessel function of the second kind, order zero, for ``t > 0``."""
    arr = _check_finite(t, "bessel_k0")
    if np.any(arr <= 0):
        raise DomainError("bessel_k0: argument must be positive (K0 diverges at 0)")
    return _out(special.k0(arr), t)


def hankel0_first(z):
    r"""Hankel function :math:`H_0^{(1)}(z) = J_0(z) + i Y_0(z)` on the closed upper half-plane.

    Parameters
    ----------
    z : complex or array_like of complex
        Argument with ``Im z >= 0`` and ``z != 0``.

    Returns
    -------
    complex or ndarray of complex
    """
    arr = np.asarray(z, dtype=complex)
    if not np.all(np.isfinite(arr)):
        raise DomainError("hankel0_first: non-finite argument")
    if np.any(arr == 0):
        raise DomainError("hankel0_first: logarithmic singularity at z = 0")
    if np.any(arr.imag < 0):
        raise DomainError("hankel0_first: lower half-plane is not supported")
    return _out(special.hankel1(0, arr), z)


def _omega_series(n, t):
    u = -0.25 * t * t
    half = 0.5 * n
    term = np.ones_like(t)
    total = np.ones_like(t)
    for p in range(_OMEGA_MAX_TERMS):
        term = term * u / ((p + 1) * (half + p))
        total = total + term
        if np.all(np.abs(term) <= 1e-17 * np.maximum(np.abs(total), 1e-300)):
            break
    return total


def _omega_closed(n, t):
    # Gamma(n/2) (2/t)^nu J_nu(t) with nu = (n - 2)/2, prefactor in log space.
    nu = 0.5 * (n - 2)
    if n == 1:
        return np.cos(t)
    if n == 2:
        return special.j0(t)
    if n == 3:
        return np.sin(t) / t
    logpre = special.gammaln(0.5 * n) + nu * np.log(2.0 / t)
    return np.exp(logpre) * special.jv(nu, t)


def omega_kernel(n: int, t):
    r"""Radial kernel :math:`\Omega_n(t)`, the normalised Fourier transform of the unit sphere in R^n.

    Summed from the power series
    :math:`\sum_p (-t^2/4)^p \Gamma(n/2) / (p!\,\Gamma(n/2+p))` for small
    ``t`` (or whenever the terms are monotonically decreasing) and from
    :math:`\Gamma(n/2)(2/t)^{\nu} J_{\nu}(t)`, ``nu = (n-2)/2``, otherwise.
    ``omega_kernel(n, 0) == 1`` exactly.

    Parameters
    ----------
    n : int
        Ambient dimension, ``n >= 1``.
    t : float or array_like
        Radial argument, ``t >= 0``.
    """
    if int(n) != n or n < 1:
        raise DomainError(f"omega_kernel: dimension must be an integer >= 1, got {n!r}")
    n = int(n)
    arr = _check_finite(t, "omega_kernel")
    if np.any(arr < 0):
        raise DomainError("omega_kernel: argument must be >= 0")
    flat = np.atleast_1d(arr).astype(float)
    out = np.empty_like(flat)
    use_series = (flat <= OMEGA_SERIES_RADIUS) | (flat * flat <= 2.0 * n)
    if np.any(use_series):
        out[use_series] = _omega_series(n, flat[use_series])
    if np.any(~use_series):
        out[~use_series] = _omega_closed(n, flat[~use_series])
    out = out.reshape(np.shape(arr))
    return _out(out, t)
