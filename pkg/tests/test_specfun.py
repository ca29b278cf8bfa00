import cmath
import math

import mpmath as mp
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from pointint.exceptions import DomainError
from pointint.specfun import (
    CONSTANTS,
    SpectralPoint,
    bessel_j0,
    bessel_k0,
    bessel_y0,
    hankel0_first,
    omega_kernel,
    sqrt_branch,
    sqrt_cut,
)


def series_oracle(n, t, dps=60):
    """Power series of the radial kernel in extended precision."""
    with mp.workdps(dps):
        t = mp.mpf(t)
        half = mp.mpf(n) / 2
        total, term, p = mp.mpf(1), mp.mpf(1), 0
        while True:
            term *= (-t * t / 4) / ((p + 1) * (half + p))
            total += term
            p += 1
            if p > 10 and abs(term) < mp.mpf(10) ** (-dps + 5):
                return float(total)


# -- square-root branch --------------------------------------------------------


@pytest.mark.parametrize(
    "point, expected",
    [
        (SpectralPoint.interior(-1), 1j),
        (SpectralPoint.boundary(4.0), 2.0),
        (SpectralPoint.interior(2j), 1 + 1j),
    ],
)
def test_sqrt_branch_examples(point, expected):
    assert sqrt_branch(point) == pytest.approx(expected, abs=1e-15)


def test_sqrt_branch_lower_half_plane_uses_arg_up_to_two_pi():
    w = sqrt_branch(SpectralPoint.interior(-2j))
    assert w == pytest.approx(-1 + 1j, abs=1e-15)


@pytest.mark.parametrize("z", [0, 1.0, 3 + 0j])
def test_interior_point_on_cut_rejected(z):
    with pytest.raises(DomainError):
        SpectralPoint.interior(z)


@pytest.mark.parametrize("x", [-1.0, 1 + 1j, float("nan")])
def test_boundary_point_must_be_nonnegative_real(x):
    with pytest.raises(DomainError):
        SpectralPoint.boundary(x)


def test_sqrt_branch_squares_back_and_has_positive_imaginary_part(rng):
    r = 10 ** rng.uniform(-6, 6, 10_000)
    theta = rng.uniform(1e-9, 2 * np.pi - 1e-9, 10_000)
    z = r * np.exp(1j * theta)
    w = sqrt_cut(z)
    assert np.all(np.abs(w * w - z) <= 1e-14 * np.abs(z))
    assert np.all(w.imag > 0)


def test_sqrt_branch_continuous_from_above():
    for x in [0.5, 4.0, 100.0]:
        near = sqrt_branch(SpectralPoint.interior(complex(x, 1e-12)))
        assert near == pytest.approx(math.sqrt(x), abs=1e-9)


def test_special_constants():
    assert CONSTANTS.psi_one + CONSTANTS.euler_gamma == 0.0
    assert CONSTANTS.euler_gamma == pytest.approx(0.57721566490153286, abs=1e-16)


# -- Bessel functions ---------------------------------------------------------


def test_bessel_j0_values():
    assert bessel_j0(0.0) == 1.0
    assert bessel_j0(1.0) == pytest.approx(0.7651976865579666, abs=1e-15)
    assert abs(bessel_j0(2.404825557695773)) <= 1e-12


def test_bessel_j0_matches_series_oracle_on_small_arguments():
    for t in np.linspace(0, 30, 61):
        assert abs(bessel_j0(t) - series_oracle(2, t)) <= 1e-12


def test_bessel_j0_large_argument_against_mpmath():
    for t in [100.0, 1234.5, 1e4]:
        assert abs(bessel_j0(t) - float(mp.besselj(0, t))) <= 1e-8


def test_bessel_j0_rejects_nonfinite():
    with pytest.raises(DomainError):
        bessel_j0(float("inf"))


def test_bessel_k0_values():
    assert bessel_k0(1.0) == pytest.approx(0.42102443824070834, abs=1e-12)
    assert bessel_k0(0.5) == pytest.approx(0.9244190712276656, abs=1e-12)
    for t in np.linspace(0.05, 30, 40):
        assert abs(bessel_k0(t) - float(mp.besselk(0, t))) <= 1e-12


def test_bessel_k0_asymptotic_scaling():
    scaled = bessel_k0(50.0) * math.exp(50.0) * math.sqrt(50.0)
    assert math.sqrt(math.pi / 2) * (1 - 1e-2) <= scaled <= math.sqrt(math.pi / 2)


@pytest.mark.parametrize("t", [0.0, -1.0])
def test_bessel_k0_domain(t):
    with pytest.raises(DomainError):
        bessel_k0(t)


# -- Hankel -------------------------------------------------------------------


def test_hankel_small_argument_expansion():
    z = 1e-8
    approx = 1 + (2j / math.pi) * (math.log(z / 2) + CONSTANTS.euler_gamma)
    assert abs(hankel0_first(z) - approx) <= 1e-6


def test_hankel_on_imaginary_axis_is_k0():
    assert hankel0_first(1j) == pytest.approx(-(2j / math.pi) * 0.42102443824070834, abs=1e-12)
    for x in np.linspace(0.1, 20, 50):
        lhs = hankel0_first(1j * x) * (1j * math.pi / 2)
        assert abs(lhs - bessel_k0(x)) <= 1e-9 * max(1.0, bessel_k0(x))


def test_hankel_real_axis_is_j0_plus_iy0():
    for x in [0.3, 1.0, 7.5, 29.0]:
        h = hankel0_first(x)
        assert h.real == pytest.approx(bessel_j0(x), abs=1e-14)
        assert h.imag == pytest.approx(bessel_y0(x), abs=1e-14)


def test_hankel_against_mpmath_upper_half_plane(rng):
    r = rng.uniform(0.01, 30, 200)
    theta = rng.uniform(0, np.pi, 200)
    for z in r * np.exp(1j * theta):
        with mp.workdps(40):
            ref = complex(mp.hankel1(0, mp.mpc(z.real, z.imag)))
        assert abs(hankel0_first(z) - ref) <= 1e-10 * abs(ref) + 1e-300


@pytest.mark.parametrize("z", [0, -1j, 1 - 0.5j])
def test_hankel_domain(z):
    with pytest.raises(DomainError):
        hankel0_first(z)


# -- radial kernels -----------------------------------------------------------


@pytest.mark.parametrize("n", [1, 2, 3, 4, 7])
def test_omega_at_zero_is_exactly_one(n):
    assert omega_kernel(n, 0.0) == 1.0


def test_omega_closed_forms():
    assert omega_kernel(3, math.pi / 2) == pytest.approx(2 / math.pi, abs=1e-15)
    assert omega_kernel(1, 2.0) == pytest.approx(math.cos(2.0), abs=1e-15)


@pytest.mark.parametrize("n", [1, 2, 3, 4, 5, 6, 9])
def test_omega_matches_extended_precision_series(n):
    for t in np.linspace(0, 30, 121):
        assert abs(omega_kernel(n, t) - series_oracle(n, t)) <= 1e-10


@pytest.mark.parametrize("n", [2, 4, 5])
def test_omega_large_argument_closed_form(n):
    for t in [50.0, 333.3, 1000.0]:
        with mp.workdps(30):
            nu = mp.mpf(n - 2) / 2
            ref = float(mp.gamma(mp.mpf(n) / 2) * (2 / mp.mpf(t)) ** nu * mp.besselj(nu, t))
        assert abs(omega_kernel(n, t) - ref) <= 1e-7


def test_omega_grid_identities():
    t = np.linspace(0, 30, 3001)
    assert np.max(np.abs(omega_kernel(2, t) - bessel_j0(t))) <= 1e-10
    tp = t[1:]
    assert np.max(np.abs(omega_kernel(3, tp) * tp - np.sin(tp))) <= 1e-10
    assert np.max(np.abs(omega_kernel(1, t) - np.cos(t))) <= 1e-10


@pytest.mark.parametrize("n", [2, 3, 4, 6])
def test_omega_bounded_by_value_at_zero(n):
    t = np.linspace(0, 200, 20001)
    assert np.all(np.abs(omega_kernel(n, t)) <= 1.0 + 1e-15)


def test_omega_domain():
    with pytest.raises(DomainError):
        omega_kernel(0, 1.0)
    with pytest.raises(DomainError):
        omega_kernel(2, -1.0)


@settings(max_examples=200, deadline=None)
@given(st.integers(1, 8), st.floats(0, 30))
def test_omega_scalar_and_vector_agree(n, t):
    assert omega_kernel(n, t) == omega_kernel(n, np.array([t]))[0]
