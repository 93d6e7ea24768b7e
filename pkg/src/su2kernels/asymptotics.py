"""Leading-order evaluators and the dimension-limit quadrature.

The non-central on-diagonal bracket has two published variants which differ
by a factor of two; both are implemented behind the `bracket` switch
("thm" and "sec4") and the verification harness records which matches the
exact kernels.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .geometry import (
    BundlePoint,
    ModelSpace,
    c_and_b_matrices,
    lambda_of,
    moment,
    psi2,
    stabilizer,
    u0,
)

__all__ = [
    "D_G_MOD_T",
    "AsymptoticPrediction",
    "central_stabilizer_sum",
    "leading_diag_central",
    "leading_diag_noncentral",
    "leading_near_diag",
    "dimension_limit_integral",
    "decay_fit",
    "richardson_intercept",
]

# 2 pi / area(S^3) = 1/pi
D_G_MOD_T = 2.0 * np.pi / (2.0 * np.pi**2)


@dataclass(frozen=True)
class AsymptoticPrediction:
    """Leading prediction split into central and non-central contributions."""

    central: float
    noncentral: float
    k: int
    nu: int

    @property
    def total(self) -> float:
        return self.central + self.noncentral


def central_stabilizer_sum(x: BundlePoint, k: int, nu: int) -> float:
    """Sum of e^{i (1 - k nu) theta} over the central stabilizer elements."""
    kn = k * nu
    total = 0.0
    for th in stabilizer(x).central_angles():
        total += np.real(np.exp(1j * (1 - kn) * th))
    return float(total)


def leading_diag_central(model: ModelSpace, k: int, nu: int, x: BundlePoint) -> float:
    """Central on-diagonal leading term: (1/2L)(nu k/(2 pi L))^d * sum f_{1-k nu}."""
    lam = lambda_of(moment(x))
    d = model.dim
    return (
        (1.0 / (2.0 * lam))
        * (nu * k / (2.0 * np.pi * lam)) ** d
        * central_stabilizer_sum(x, k, nu)
    )


def leading_diag_noncentral(
    model: ModelSpace,
    k: int,
    nu: int,
    x: BundlePoint,
    c_theta: float = 1.0,
    bracket: str = "thm",
) -> float:
    """Oscillatory contribution of the non-central stabilizer pairs.

    4 pi D_{G/T} (nu k/(2 pi L))^d sum_j Re(i sin(t_j) e^{-i k nu t_j}
    / sqrt(det B(x;j))); the "sec4" bracket variant doubles the per-pair
    amplitude.  Principal branch of the square root (B is k-independent on
    the model spaces, so no branch tracking across a sweep is needed).
    """
    if bracket not in ("thm", "sec4"):
        raise ValueError("bracket must be 'thm' or 'sec4'")
    stab = stabilizer(x)
    pairs = stab.noncentral_pair_angles()
    if not pairs:
        return 0.0
    lam = lambda_of(moment(x))
    kn = k * nu
    total = 0.0
    for j, th in enumerate(pairs):
        _, b = c_and_b_matrices(x, j, c_theta=c_theta)
        root = np.sqrt(np.linalg.det(b))
        total += np.real(1j * np.sin(th) * np.exp(-1j * kn * th) / root)
    out = 4.0 * np.pi * D_G_MOD_T * (nu * k / (2.0 * np.pi * lam)) ** model.dim * total
    if bracket == "sec4":
        out *= 2.0
    return float(out)


def leading_near_diag(
    model: ModelSpace, k: int, nu: int, x: BundlePoint, v1, v2
) -> complex:
    """Near-diagonal leading term at (x + v1/sqrt(k), x + v2/sqrt(k)).

    Central elements act trivially near their fixed points on the model
    spaces, so the differential d mu_g is the identity for every g in Z_x.
    """
    phi = moment(x)
    lam = lambda_of(phi)
    rate = u0(nu, phi)
    kn = k * nu
    pref = (1.0 / (2.0 * lam)) * (nu * k / (2.0 * np.pi * lam)) ** model.dim
    total = 0j
    for th in stabilizer(x).central_angles():
        total += np.exp(1j * (1 - kn) * th) * np.exp(rate * psi2(v1, v2))
    return complex(pref * total)


def dimension_limit_integral(
    model: ModelSpace,
    n_samples: int = 200_000,
    seed: int = 0,
    method: str = "mc",
    force: bool = False,
) -> tuple[float, float]:
    """Quadrature of (2 lambda)^{-(d+1)} over the base with its volume form.

    Returns (value, standard error).  Monte Carlo samples the product of
    unit spheres uniformly; the "gauss" method integrates in t = cos of the
    Bloch angle between the factors (lambda depends only on t), with zero
    reported error.
    """
    if model.kind != "p1xp1":
        raise ValueError("dimension-limit integral is defined on the product model")
    r = model.r
    if r % 2 == 1 and not force:
        raise ValueError(
            "generically-free hypothesis fails for odd r; pass force=True to override"
        )
    vol = model.volume

    def integrand_from_t(t):
        # 2 lambda = sqrt(1 + r^2 + 2 r t) with t the Bloch-vector dot product
        return (1.0 + r * r + 2.0 * r * t) ** -1.5

    if method == "gauss":
        t, wt = np.polynomial.legendre.leggauss(200)
        value = vol * 0.5 * np.sum(wt * integrand_from_t(t))
        return float(value), 0.0
    if method != "mc":
        raise ValueError("method must be 'mc' or 'gauss'")
    rng = np.random.default_rng(seed)
    z = rng.normal(size=(n_samples, 2)) + 1j * rng.normal(size=(n_samples, 2))
    w = rng.normal(size=(n_samples, 2)) + 1j * rng.normal(size=(n_samples, 2))
    z /= np.linalg.norm(z, axis=1, keepdims=True)
    w /= np.linalg.norm(w, axis=1, keepdims=True)
    t = 2.0 * np.abs(np.sum(z * np.conj(w), axis=1)) ** 2 - 1.0
    samples = vol * integrand_from_t(t)
    value = float(np.mean(samples))
    stderr = float(np.std(samples, ddof=1) / np.sqrt(n_samples))
    return value, stderr


_LOG_FLOOR = 1e-300


def decay_fit(k_values, samples) -> float:
    """Least-squares slope of log|Pi| against log k.

    Samples at or below the floor 1e-300 are treated as exact zeros; a fully
    floored input returns -inf.
    """
    k_values = np.asarray(k_values, dtype=float)
    samples = np.maximum(np.asarray(samples, dtype=float), _LOG_FLOOR)
    if len(k_values) < 5:
        raise ValueError("need at least 5 samples for a decay fit")
    if np.all(samples <= _LOG_FLOOR):
        return float("-inf")
    slope = np.polyfit(np.log(k_values), np.log(samples), 1)[0]
    return float(slope)


def richardson_intercept(k_values, ratios) -> tuple[float, float]:
    """Fit ratio - 1 = c1/k + c0; returns (c0, c1).

    c0 near zero certifies an O(1/k) approach of the ratio to 1.
    """
    k_values = np.asarray(k_values, dtype=float)
    resid = np.asarray(ratios, dtype=float) - 1.0
    c1, c0 = np.polyfit(1.0 / k_values, resid, 1)
    return float(c0), float(c1)
