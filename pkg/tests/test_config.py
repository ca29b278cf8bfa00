import math

import numpy as np
import pytest

from conftest import random_configuration, random_points
from pointint.config import (
    Diagonal,
    Hermitian,
    Relation,
    aghh_coefficient_matrix,
    boundary_maps,
    build_configuration,
    coefficients_from_boundary,
    extension_from_nonneg_family,
    interaction_matrices,
    nonneg_family_bprime,
)
from pointint.exceptions import DomainError, PreconditionError
from pointint.radialpd import exp_decay, gram_matrix

E = math.exp(-1.0)
FOUR_PI = 4 * math.pi
TWO_PI = 2 * math.pi


def inner(a, b):
    return np.vdot(b, a)


def test_build_configuration_examples():
    one = build_configuration(3, [[0, 0, 0]])
    assert one.m == 1 and np.array_equal(one.distances, [[0.0]])
    two = build_configuration(3, [[0, 0, 0], [1, 0, 0]])
    assert two.distances[0, 1] == 1.0 and two.distances[1, 0] == 1.0
    with pytest.raises(PreconditionError):
        build_configuration(2, [[0, 0], [0, 0]])


@pytest.mark.parametrize("d, pts", [(1, [[0.0]]), (4, [[0, 0, 0, 0]]), (3, [[0, 0]]), (2, [])])
def test_build_configuration_rejects_bad_input(d, pts):
    with pytest.raises(PreconditionError):
        build_configuration(d, pts)


def test_duplicate_threshold_is_relative_to_diameter():
    build_configuration(3, [[0, 0, 0], [1e-9, 0, 0]])
    with pytest.raises(PreconditionError):
        build_configuration(3, [[0, 0, 0], [1e-13, 0, 0], [1, 0, 0]])


def test_distance_invariants(rng):
    for d in (2, 3):
        for _ in range(20):
            cfg = random_configuration(rng, d, m_max=7)
            D = cfg.distances
            assert np.array_equal(D, D.T)
            assert np.all(np.diag(D) == 0)
            off = ~np.eye(cfg.m, dtype=bool)
            assert np.all(D[off] > 0)
            ref = np.linalg.norm(cfg.points[:, None] - cfg.points[None], axis=-1)
            assert np.max(np.abs(D - ref)) <= 1e-14 * max(1.0, ref.max())


def test_interaction_matrices_examples():
    E1 = interaction_matrices(build_configuration(3, [[0, 0, 0]]))
    assert np.array_equal(E1.E0, [[-1.0]]) and np.array_equal(E1.E1, [[1.0]])
    two = interaction_matrices(build_configuration(3, [[0, 0, 0], [1, 0, 0]]))
    assert two.E0[0, 1] == pytest.approx(0.36787944117144233, abs=1e-16)
    assert two.E1[0, 1] == pytest.approx(E, abs=1e-16)
    flat = interaction_matrices(build_configuration(2, [[0, 0], [1, 0]]))
    assert flat.E0[0, 1] == 0.0
    assert np.all(np.diag(flat.E0) == 0.0)


def test_interaction_matrices_3d_off_diagonal_formula():
    r = 2.5
    M = interaction_matrices(build_configuration(3, [[0, 0, 0], [0, r, 0]]))
    assert M.E0[1, 0] == pytest.approx(math.exp(-r) / r, rel=1e-15)
    M2 = interaction_matrices(build_configuration(2, [[0, 0], [0, r]]))
    assert M2.E0[1, 0] == pytest.approx(math.exp(-r) * math.log(r), rel=1e-15)


def test_interaction_matrices_symmetric_and_e1_is_gram(rng):
    for d in (2, 3):
        for _ in range(20):
            cfg = random_configuration(rng, d, m_max=6)
            M = interaction_matrices(cfg)
            assert np.array_equal(M.E0, M.E0.T) and np.array_equal(M.E1, M.E1.T)
            assert np.max(np.abs(M.E1 - gram_matrix(exp_decay(), cfg.points))) <= 1e-15


def test_e1_strictly_positive_definite_on_random_configurations(rng):
    for i in range(200):
        d = 2 + i % 2
        m = int(rng.integers(1, 9))
        cfg = build_configuration(d, random_points(rng, m, d, box=3.0, min_sep=0.05))
        assert np.linalg.eigvalsh(interaction_matrices(cfg).E1)[0] > 0


def test_boundary_maps_examples():
    c3 = build_configuration(3, [[0, 0, 0]])
    bd = boundary_maps(c3, [1], [0])
    assert bd.h0[0] == pytest.approx(FOUR_PI) and bd.h1[0] == pytest.approx(-1.0)
    bd = boundary_maps(c3, [0], [0])
    assert bd.h0[0] == 0 and bd.h1[0] == 0
    c2 = build_configuration(2, [[0, 0]])
    bd = boundary_maps(c2, [0], [1])
    assert bd.h0[0] == 0 and bd.h1[0] == pytest.approx(1.0)


def test_boundary_maps_length_mismatch(two_center_3d):
    with pytest.raises(PreconditionError):
        boundary_maps(two_center_3d, [1.0], [0.0, 0.0])


def test_coefficients_from_boundary_examples(two_center_3d):
    c3 = build_configuration(3, [[0, 0, 0]])
    xi0, xi1 = coefficients_from_boundary(c3, [FOUR_PI], [-1.0])
    assert xi0[0] == pytest.approx(1.0) and abs(xi1[0]) < 1e-15
    xi0, xi1 = coefficients_from_boundary(two_center_3d, [0, 0], [0, 0])
    assert np.all(xi0 == 0) and np.all(xi1 == 0)
    c2 = build_configuration(2, [[0, 0]])
    xi0, xi1 = coefficients_from_boundary(c2, [TWO_PI], [1.0])
    assert xi0[0] == pytest.approx(1.0) and xi1[0] == pytest.approx(1.0)


def test_boundary_round_trip(rng):
    for d in (2, 3):
        for _ in range(30):
            cfg = random_configuration(rng, d, m_max=6)
            h0 = rng.normal(size=cfg.m) + 1j * rng.normal(size=cfg.m)
            h1 = rng.normal(size=cfg.m) + 1j * rng.normal(size=cfg.m)
            bd = boundary_maps(cfg, *coefficients_from_boundary(cfg, h0, h1))
            assert np.linalg.norm(bd.h0 - h0) <= 1e-10 * np.linalg.norm(h0)
            assert np.linalg.norm(bd.h1 - h1) <= 1e-10 * np.linalg.norm(h1)


def test_green_identity_algebra(rng):
    for d, c in ((2, TWO_PI), (3, FOUR_PI)):
        for _ in range(30):
            cfg = random_configuration(rng, d, m_max=6)
            m = cfg.m
            xs = [rng.normal(size=m) + 1j * rng.normal(size=m) for _ in range(4)]
            a = boundary_maps(cfg, xs[0], xs[1])
            b = boundary_maps(cfg, xs[2], xs[3])
            E1 = interaction_matrices(cfg).E1
            lhs = inner(a.h1, b.h0) - inner(a.h0, b.h1)
            rhs = c * (inner(E1 @ a.xi1, b.xi0) - inner(a.xi0, E1 @ b.xi1))
            assert abs(lhs - rhs) <= 1e-10 * max(1.0, abs(lhs))


def test_aghh_examples():
    c3 = build_configuration(3, [[0, 0, 0]])
    assert aghh_coefficient_matrix(c3, [0.0])[0, 0] == pytest.approx(1.0)
    assert aghh_coefficient_matrix(c3, [1.0])[0, 0] == pytest.approx(FOUR_PI + 1)
    c2 = build_configuration(2, [[0, 0]])
    assert aghh_coefficient_matrix(c2, [0.0])[0, 0] == 0.0


def test_aghh_is_product_form(rng):
    cfg = random_configuration(rng, 3, m_max=5)
    alpha = rng.normal(size=cfg.m)
    M = interaction_matrices(cfg)
    B = aghh_coefficient_matrix(cfg, alpha)
    assert np.allclose(M.E1 @ B, FOUR_PI * np.diag(alpha) - M.E0, atol=1e-12)
    assert B.dtype == complex


def test_nonneg_family_examples():
    c3 = build_configuration(3, [[0, 0, 0]])
    res = nonneg_family_bprime(c3, [[TWO_PI]])
    assert res.bprime[0, 0] == pytest.approx(0.5) and res.bound_ok
    assert not nonneg_family_bprime(c3, [[-1.0]]).bound_ok
    assert not nonneg_family_bprime(c3, [[8 * math.pi]]).bound_ok


def test_nonneg_family_rejects_2d(two_center_2d):
    with pytest.raises(DomainError, match="unsupported for dimension 2"):
        nonneg_family_bprime(two_center_2d, np.eye(2))


def test_nonneg_family_bprime_formula(two_center_3d):
    B = np.array([[2.0, 0.3], [0.3, 1.0]])
    res = nonneg_family_bprime(two_center_3d, B)
    assert np.allclose(res.bprime, B @ interaction_matrices(two_center_3d).E1 / FOUR_PI)


def test_extension_from_nonneg_family_scalar():
    c3 = build_configuration(3, [[0, 0, 0]])
    theta = extension_from_nonneg_family(c3, [[TWO_PI]])
    assert theta.B[0, 0].real == pytest.approx(1 / TWO_PI - 1 / FOUR_PI, rel=1e-14)


def test_extension_parameter_validation():
    with pytest.raises(PreconditionError):
        Hermitian([[0, 1], [0, 0]])
    with pytest.raises(PreconditionError):
        Relation(np.array([[1, 0], [0, 0.5]]), np.zeros((2, 2)))
    with pytest.raises(PreconditionError):
        Relation(np.diag([1.0, 0.0]), np.ones((2, 2)))
    with pytest.raises(PreconditionError):
        Diagonal([0.0, 1.0]).full_matrix(3)


def test_relation_compression():
    P = np.diag([1.0, 0.0])
    rel = Relation(P, np.diag([2.5, 0.0]))
    Q, B = rel.compress(2)
    assert Q.shape == (2, 1)
    assert B[0, 0].real == pytest.approx(2.5)
