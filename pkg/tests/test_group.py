import numpy as np
import pytest

from su2kernels.group import (
    BETA,
    GroupElement,
    a_matrix,
    adjoint,
    character_group,
    character_torus,
    clebsch_multiplicity,
    f_ell,
    haar_quadrature,
    pairing,
)


def test_group_element_is_unitary():
    g = GroupElement(0.3 + 0.4j, 0.5 - 0.1j)
    m = g.matrix
    assert np.allclose(m.conj().T @ m, np.eye(2), atol=1e-14)
    assert abs(np.linalg.det(m) - 1.0) < 1e-14


def test_inverse_and_composition():
    rng = np.random.default_rng(3)
    g = GroupElement(*(rng.normal(size=2) + 1j * rng.normal(size=2)))
    h = GroupElement(*(rng.normal(size=2) + 1j * rng.normal(size=2)))
    gh = g @ h
    assert np.allclose(gh.matrix, g.matrix @ h.matrix, atol=1e-14)
    assert (g @ g.inverse()).isclose(GroupElement.identity())


def test_exp_matches_scipy():
    from scipy.linalg import expm

    xi = 0.7 * BETA + a_matrix(0.2 - 0.5j)
    assert np.allclose(GroupElement.exp(xi).matrix, expm(xi), atol=1e-12)


def test_rotation_angle_of_torus_element():
    for th in (0.0, 0.4, np.pi / 2, np.pi):
        g = GroupElement.torus(th)
        assert abs(g.rotation_angle() - th) < 1e-12


def test_characters():
    # chi_nu(theta) = sin(nu theta)/sin(theta)
    assert abs(character_torus(3, 0.0) - 3.0) < 1e-12
    assert abs(character_torus(2, np.pi / 3) - 1.0) < 1e-12
    assert abs(character_torus(4, np.pi) - (-4.0)) < 1e-12
    # small-angle branch must agree with the generic one
    th = 1e-7
    assert abs(character_torus(5, th) - np.sin(5 * th) / np.sin(th)) < 1e-9


def test_character_group_is_class_function():
    rng = np.random.default_rng(0)
    g = GroupElement(*(rng.normal(size=2) + 1j * rng.normal(size=2)))
    h = GroupElement(*(rng.normal(size=2) + 1j * rng.normal(size=2)))
    conj = GroupElement.from_matrix(h.matrix @ g.matrix @ h.inverse().matrix)
    assert abs(character_group(7, g) - character_group(7, conj)) < 1e-10


def test_f_ell_at_identity_and_center():
    assert abs(f_ell(5, 0.0) - 1.0) < 1e-14
    # the center sits at torus angle pi
    assert abs(f_ell(4, np.pi) - 1.0) < 1e-12
    assert abs(f_ell(5, np.pi) + 1.0) < 1e-12


def test_pairing_calibration():
    # <i diag(l, -l), beta> = 2 l with the -tr(xi eta) pairing
    lam = 0.75
    xi = np.diag([1j * lam, -1j * lam])
    assert abs(pairing(xi, BETA) - 2 * lam) < 1e-14


def test_adjoint_preserves_pairing():
    rng = np.random.default_rng(1)
    g = GroupElement(*(rng.normal(size=2) + 1j * rng.normal(size=2)))
    xi, eta = BETA, a_matrix(0.3 + 0.9j)
    assert abs(
        pairing(adjoint(g, xi), adjoint(g, eta)) - pairing(xi, eta)
    ) < 1e-12


def test_clebsch_multiplicity():
    # V_a (x) V_b decomposes with multiplicity one over |a-b|+1 .. a+b-1, step 2
    assert clebsch_multiplicity(3, 5, 3) == 1
    assert clebsch_multiplicity(3, 5, 4) == 0
    assert clebsch_multiplicity(3, 5, 7) == 1
    assert clebsch_multiplicity(3, 5, 9) == 0
    assert clebsch_multiplicity(1, 1, 1) == 1
    total = sum(nu * clebsch_multiplicity(4, 6, nu) for nu in range(1, 11))
    assert total == 24


def test_haar_quadrature_normalization_and_characters():
    quad = haar_quadrature(12)
    w = quad.weights
    assert abs(np.sum(w) - 1.0) < 1e-12
    angles = quad.rotation_angles()
    # Schur orthogonality of characters up to the declared degree
    for nu in range(2, 7):
        assert abs(np.sum(w * character_torus(nu, angles))) < 1e-12
        assert abs(np.sum(w * character_torus(nu, angles) ** 2) - 1.0) < 1e-12


def test_haar_quadrature_degree_validation():
    with pytest.raises(ValueError):
        haar_quadrature(10_000)  # node budget exceeded
