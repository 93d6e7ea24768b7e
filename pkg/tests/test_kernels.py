import numpy as np
import pytest

from su2kernels.geometry import BundlePoint, P1, act, p1xp1
from su2kernels.group import GroupElement, haar_quadrature
from su2kernels.kernels import (
    admissible_levels,
    dimension,
    equivariant_kernel,
    equivariant_kernel_quadrature,
    level_kernel,
    quadrature_degree_needed,
)


def _random_point(model, rng):
    z = rng.normal(size=2) + 1j * rng.normal(size=2)
    if model.kind == "p1":
        return BundlePoint(model, z)
    w = rng.normal(size=2) + 1j * rng.normal(size=2)
    return BundlePoint(model, z, w)


def test_admissible_levels_window_and_parity():
    assert admissible_levels(9, 1, 3) == [2, 3, 4]
    assert admissible_levels(8, 1, 3) == []  # parity obstruction, r odd
    # r even: both parities of k nu are populated
    assert admissible_levels(5, 1, 2) == [2, 4]
    assert admissible_levels(6, 1, 2) == [3, 5]


def test_dimension_formula():
    assert dimension(P1, 7, 2) == 14
    assert dimension(p1xp1(3), 3, 3) == 9 * 3
    assert dimension(p1xp1(3), 4, 1) == 0


def test_level_kernel_diagonal_trace():
    # Pi_l(x, x) * vol = dim H^0(level l), independent of the point
    rng = np.random.default_rng(6)
    for model, l in ((P1, 9), (p1xp1(2), 4), (p1xp1(5), 3)):
        x = _random_point(model, rng)
        l1, l2 = model.level_degrees(l)
        val = level_kernel(model, l, x, x).real * model.volume
        assert abs(val - (l1 + 1) * (l2 + 1)) < 1e-9


def test_level_kernel_reproduces_sections():
    # f(y) = int Pi_l(y, x) f(x) dV(x), spot check via Monte Carlo
    model = P1
    l = 3
    rng = np.random.default_rng(7)
    y = _random_point(model, rng)
    n = 400_000
    z = rng.normal(size=(n, 2)) + 1j * rng.normal(size=(n, 2))
    z /= np.linalg.norm(z, axis=1, keepdims=True)
    f = z[:, 0] ** 2 * z[:, 1]  # a degree-3 monomial section
    kern = (
        (l + 1)
        / model.volume
        * (y.z[0] * np.conj(z[:, 0]) + y.z[1] * np.conj(z[:, 1])) ** l
    )
    mc = model.volume * np.mean(kern * f)
    assert abs(mc - y.z[0] ** 2 * y.z[1]) < 0.01


def test_equivariant_kernel_hermitian_and_invariant():
    model = p1xp1(2)
    rng = np.random.default_rng(8)
    x, y = _random_point(model, rng), _random_point(model, rng)
    k, nu = 7, 1
    kxy = equivariant_kernel(model, k, nu, x, y).value
    kyx = equivariant_kernel(model, k, nu, y, x).value
    assert abs(kxy - np.conj(kyx)) < 1e-12 * max(1.0, abs(kxy))
    g = GroupElement(0.2 + 0.6j, -0.7 + 0.1j)
    kg = equivariant_kernel(model, k, nu, act(g, x), act(g, y)).value
    assert abs(kxy - kg) < 1e-9 * max(1.0, abs(kxy))


def test_equivariant_kernel_diag_positive_and_psd_gram():
    model = p1xp1(3)
    rng = np.random.default_rng(10)
    pts = [_random_point(model, rng) for _ in range(5)]
    k, nu = 5, 1
    gram = np.array(
        [
            [equivariant_kernel(model, k, nu, a, b).value for b in pts]
            for a in pts
        ]
    )
    assert np.all(np.diag(gram).real > 0)
    evals = np.linalg.eigvalsh(0.5 * (gram + gram.conj().T))
    assert evals.min() > -1e-9 * np.trace(gram).real


def test_p1_equivariant_kernel_closed_form():
    x = BundlePoint(P1, [0.6, 0.8j])
    for k in (1, 10, 57):
        val = equivariant_kernel(P1, k, 1, x, x).value.real
        assert abs(val * np.pi / k - 1.0) < 1e-12


def test_vanishing_cases_are_exactly_zero():
    model = p1xp1(3)
    rng = np.random.default_rng(2)
    x, y = _random_point(model, rng), _random_point(model, rng)
    assert dimension(model, 4, 1) == 0
    assert equivariant_kernel(model, 4, 1, x, y).value == 0j


def test_quadrature_oracle_small_kn():
    model = p1xp1(2)
    rng = np.random.default_rng(5)
    quad = haar_quadrature(quadrature_degree_needed(model, 7, 1))
    for k in (3, 7):
        x, y = _random_point(model, rng), _random_point(model, rng)
        a = equivariant_kernel(model, k, 1, x, y).value
        b = equivariant_kernel_quadrature(model, k, 1, x, y, quad).value
        scale = abs(equivariant_kernel(model, k, 1, x, x).value)
        assert abs(a - b) < 1e-10 * scale


def test_quadrature_degree_guard():
    model = p1xp1(2)
    quad = haar_quadrature(5)
    x = BundlePoint(model, [1, 0], [0, 1])
    with pytest.raises(ValueError):
        equivariant_kernel_quadrature(model, 4, 1, x, x, quad)


def test_same_kernel_for_equal_k_nu_product():
    model = p1xp1(2)
    rng = np.random.default_rng(13)
    x = _random_point(model, rng)
    a = equivariant_kernel(model, 6, 2, x, x).value
    b = equivariant_kernel(model, 12, 1, x, x).value
    assert abs(a - b) < 1e-12 * abs(b)
