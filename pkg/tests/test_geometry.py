import numpy as np
import pytest

from su2kernels.geometry import (
    BundlePoint,
    P1,
    act,
    c_and_b_matrices,
    dist_to_orbit,
    h_coset,
    hlc_chart,
    lambda_of,
    moment,
    p1xp1,
    psi2,
    stabilizer,
    transverse_directions,
    u0,
    xi_norm2,
)
from su2kernels.group import BETA, GroupElement, a_matrix, pairing


def test_model_space_validation():
    with pytest.raises(ValueError):
        p1xp1(1)
    assert p1xp1(2).dim == 2
    assert P1.dim == 1
    assert abs(P1.volume - np.pi) < 1e-15
    assert abs(p1xp1(3).volume - 3 * np.pi**2) < 1e-12


def test_bundle_point_normalization_and_identification():
    m = p1xp1(2)
    x = BundlePoint(m, [2.0, 0.0], [0.0, 3.0j])
    assert abs(np.linalg.norm(x.z) - 1.0) < 1e-14
    # phase pushed through the tensor representative: e^{i a} Z, e^{i b} W
    # with a + r b = 0 is the same bundle point
    a = 0.7
    y = BundlePoint(m, np.exp(1j * a) * x.z, np.exp(-1j * a / 2) * x.w)
    assert x.same_point(y)
    z = BundlePoint(m, np.exp(1j * a) * x.z, x.w)
    assert not x.same_point(z)


def test_moment_and_lambda_p1():
    x = BundlePoint(P1, [1.0, 0.0])
    phi = moment(x)
    assert np.allclose(phi, 1j * np.diag([0.5, -0.5]), atol=1e-14)
    assert abs(lambda_of(phi) - 0.5) < 1e-14


def test_lambda_product_formula():
    # 2 lambda = sqrt(1 + r^2 + 2 r t), t the Bloch cosine between Z and W
    for r in (2, 3, 4):
        m = p1xp1(r)
        rng = np.random.default_rng(r)
        z = rng.normal(size=2) + 1j * rng.normal(size=2)
        w = rng.normal(size=2) + 1j * rng.normal(size=2)
        x = BundlePoint(m, z, w)
        t = 2.0 * abs(np.vdot(x.z, x.w)) ** 2 - 1.0
        assert abs(
            2.0 * lambda_of(moment(x)) - np.sqrt(1 + r * r + 2 * r * t)
        ) < 1e-12


def test_h_coset_defining_property_and_weyl_flip():
    m = p1xp1(3)
    rng = np.random.default_rng(11)
    x = BundlePoint(
        m,
        rng.normal(size=2) + 1j * rng.normal(size=2),
        rng.normal(size=2) + 1j * rng.normal(size=2),
    )
    phi = moment(x)
    lam = lambda_of(phi)
    h = h_coset(phi)
    rebuilt = h.matrix @ np.diag([1j * lam, -1j * lam]) @ h.matrix.conj().T
    assert np.allclose(rebuilt, phi, atol=1e-10)
    # anti-dominant diagonal moment requires the exact Weyl flip
    hw = h_coset(1j * np.diag([-1.5, 1.5]))
    assert abs(hw.alpha) < 1e-12 and abs(hw.beta - 1.0) < 1e-12


def test_remark_pairing_identity():
    # <Phi(m_x), Ad_{h} beta> = 2 lambda(m_x)
    m = p1xp1(4)
    rng = np.random.default_rng(2)
    x = BundlePoint(
        m,
        rng.normal(size=2) + 1j * rng.normal(size=2),
        rng.normal(size=2) + 1j * rng.normal(size=2),
    )
    phi = moment(x)
    h = h_coset(phi)
    from su2kernels.group import adjoint

    assert abs(pairing(phi, adjoint(h, BETA)) - 2 * lambda_of(phi)) < 1e-10


def test_u0_and_psi2():
    x = BundlePoint(P1, [1.0, 0.0])
    assert abs(u0(1, moment(x)) - 1.0) < 1e-14
    val = psi2([1.0], [1.0j])
    assert abs(val - (-1.0 - 1.0j)) < 1e-14
    assert abs(psi2([0.3 + 0.1j], [0.3 + 0.1j])) < 1e-15


def test_stabilizer_classification():
    # parallel: cyclic of order r+1; orthogonal: r-1; generic: r-parity center
    m4 = p1xp1(4)
    par = stabilizer(BundlePoint(m4, [1, 0], [1, 0]))
    assert par.kind == "cyclic" and par.order == 5
    orth = stabilizer(BundlePoint(m4, [1, 0], [0, 1]))
    assert orth.kind == "cyclic" and orth.order == 3
    assert len(orth.noncentral_pair_angles()) == 1
    assert abs(orth.noncentral_pair_angles()[0] - 2 * np.pi / 3) < 1e-12
    gen4 = stabilizer(
        BundlePoint(m4, [1, 0], [np.sqrt(0.5), np.sqrt(0.5)])
    )
    assert gen4.kind == "trivial" and gen4.order == 1
    m3 = p1xp1(3)
    gen3 = stabilizer(
        BundlePoint(m3, [1, 0], [np.sqrt(0.5), np.sqrt(0.5)])
    )
    assert gen3.kind == "center-only" and gen3.order == 2
    free = stabilizer(BundlePoint(P1, [1, 1]))
    assert free.kind == "trivial"


def test_stabilizer_elements_fix_the_point():
    m = p1xp1(4)
    x = BundlePoint(m, [1, 0], [0, 1])
    for g in stabilizer(x).elements():
        assert x.same_point(act(g, x))


def test_hlc_chart_radius_guard_and_locality():
    x = BundlePoint(P1, [1.0, 0.0])
    y = hlc_chart(x, [0.5], 100)
    assert np.linalg.norm(y.z - x.z) < 0.06
    with pytest.raises(ValueError):
        hlc_chart(x, [10.0], 100)


def test_transverse_directions_orthogonal_to_orbit():
    m = p1xp1(2)
    rng = np.random.default_rng(8)
    x = BundlePoint(
        m,
        rng.normal(size=2) + 1j * rng.normal(size=2),
        rng.normal(size=2) + 1j * rng.normal(size=2),
    )
    dirs = transverse_directions(x)
    assert len(dirs) == 1  # 4 real base dimensions, 3-dimensional orbit
    from su2kernels.geometry import orbit_frame_vectors

    rows = orbit_frame_vectors(x)
    v = dirs[0]
    for row in rows:
        # real inner product of frame vectors
        assert abs(np.sum((row.conj() * v)).real) < 1e-10


def test_xi_norm2_and_cb_oracle():
    """Hand-computed oracle at r=4, Z perp W.

    At that point the noncentral pair angle is 2 pi/3, lambda = 3/2, the
    fields eta(z) contribute 4 sin^2(theta) per sphere factor with the
    w-factor weighted by r, so C = (3 + 12) I = 15 I and
    B = 15 - 3 sqrt(3) i I.
    """
    m = p1xp1(4)
    x = BundlePoint(m, [1, 0], [0, 1])
    c, b = c_and_b_matrices(x, 0)
    assert np.allclose(c, 15.0 * np.eye(2), atol=1e-9)
    assert np.allclose(b, (15.0 - 3.0 * np.sqrt(3) * 1j) * np.eye(2), atol=1e-9)
    # fiber term vanishes here (moment diagonal, generators anti-diagonal)
    _, b2 = c_and_b_matrices(x, 0, c_theta=1.0 / (2 * np.pi) ** 2)
    assert np.allclose(b, b2, atol=1e-12)


def test_xi_norm2_fiber_term():
    x = BundlePoint(P1, [1.0, 0.0])
    # beta fixes the base point, so only the fiber term survives
    assert abs(xi_norm2(x, BETA) - 1.0) < 1e-12
    assert abs(xi_norm2(x, BETA, c_theta=4.0) - 4.0) < 1e-12
    # a(1) moves the base point of [1,0] with unit speed and pairs to zero
    assert abs(xi_norm2(x, a_matrix(1.0)) - 1.0) < 1e-12


def test_dist_to_orbit_vanishes_on_orbit():
    m = p1xp1(2)
    rng = np.random.default_rng(4)
    x = BundlePoint(
        m,
        rng.normal(size=2) + 1j * rng.normal(size=2),
        rng.normal(size=2) + 1j * rng.normal(size=2),
    )
    g = GroupElement(0.6 + 0.3j, -0.2 + 0.5j)
    assert dist_to_orbit(act(g, x), x) < 1e-6
    y = hlc_chart(x, 0.7 * transverse_directions(x)[0], 1, radius=1.0)
    assert dist_to_orbit(x, y) > 0.3
