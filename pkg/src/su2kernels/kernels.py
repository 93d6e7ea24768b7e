"""Exact level kernels and the equivariant projector kernel.

The projector onto the weight-(k nu) isotype is assembled from isotypic
bases (exact linear algebra); an independent character-quadrature route is
kept as an oracle for cross-checks at small k nu.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .geometry import BundlePoint, ModelSpace
from .group import HaarQuadrature, character_torus
from .sections import evaluate, isotypic_basis

__all__ = [
    "admissible_levels",
    "level_kernel",
    "KernelValue",
    "equivariant_kernel",
    "equivariant_kernel_quadrature",
    "quadrature_degree_needed",
    "dimension",
]


def admissible_levels(k: int, nu: int, r: int) -> list[int]:
    """Levels l whose section space contains the weight-(k nu) irrep.

    (k nu - 1)/(r+1) <= l <= (k nu - 1)/(r-1) with l(r+1)+1 of the same
    parity as k nu.
    """
    if r < 2:
        raise ValueError("admissible level enumeration needs r >= 2")
    kn = k * nu
    lo = int(np.ceil((kn - 1) / (r + 1) - 1e-12))
    hi = int(np.floor((kn - 1) / (r - 1) + 1e-12))
    return [l for l in range(lo, hi + 1) if (l * (r + 1) + 1 - kn) % 2 == 0]


def _hermitian_inner(u: np.ndarray, v: np.ndarray) -> complex:
    return complex(np.dot(u, np.conj(v)))


def level_kernel(model: ModelSpace, l: int, x: BundlePoint, y: BundlePoint) -> complex:
    """Reproducing kernel of the level-l section space.

    Closed form c_l <Z,Z'>^l <W,W'>^{lr} with c_l = (l+1)(lr+1)/vol; the
    constant is fixed by the monomial norms (cross-checked in the tests).
    """
    if x.model != model or y.model != model:
        raise ValueError("model mismatch")
    l1, l2 = model.level_degrees(l)
    c_l = (l1 + 1) * (l2 + 1) / model.volume
    val = c_l * _hermitian_inner(x.z, y.z) ** l1
    if model.kind == "p1xp1":
        val *= _hermitian_inner(x.w, y.w) ** l2
    return complex(val)


@dataclass(frozen=True)
class KernelValue:
    """A kernel evaluation with its defining data and computation route."""

    value: complex
    k: int
    nu: int
    method: str


def equivariant_kernel(
    model: ModelSpace, k: int, nu: int, x: BundlePoint, y: BundlePoint
) -> KernelValue:
    """The weight-(k nu) equivariant projector kernel at (x, y).

    On P^1 this is the level kernel at l = k nu - 1; on products it sums the
    isotypic bases over the admissible levels.
    """
    if x.model != model or y.model != model:
        raise ValueError("model mismatch")
    kn = k * nu
    if model.kind == "p1":
        return KernelValue(level_kernel(model, kn - 1, x, y), k, nu, "isotypic")
    total = 0j
    for l in admissible_levels(k, nu, model.r):
        for s in isotypic_basis(model, l, kn):
            total += evaluate(s, x) * np.conj(evaluate(s, y))
    return KernelValue(complex(total), k, nu, "isotypic")


def quadrature_degree_needed(model: ModelSpace, k: int, nu: int) -> int:
    """Smallest declared quadrature degree safe for the character route."""
    kn = k * nu
    if model.kind == "p1":
        return 2 * kn
    levels = admissible_levels(k, nu, model.r)
    lmax = max(levels, default=0)
    return kn + lmax * (1 + model.r) + 1


def equivariant_kernel_quadrature(
    model: ModelSpace,
    k: int,
    nu: int,
    x: BundlePoint,
    y: BundlePoint,
    quad: HaarQuadrature,
) -> KernelValue:
    """Character-quadrature route: k nu * int conj(chi) Pi(g^{-1} x, y) dg.

    The group integral runs over the admissible levels only; requires the
    quadrature to be exact up to the matrix-coefficient degree involved.
    """
    needed = quadrature_degree_needed(model, k, nu)
    if quad.degree < needed:
        raise ValueError(
            f"quadrature degree {quad.degree} below required {needed}"
        )
    kn = k * nu
    if model.kind == "p1":
        levels = [kn - 1]
    else:
        levels = admissible_levels(k, nu, model.r)
    if not levels:
        return KernelValue(0j, k, nu, "quadrature")

    a, b = quad.alphas, quad.betas
    # rows of g^{-1} applied to the spinors, vectorized over nodes
    gz0 = np.conj(a) * x.z[0] + np.conj(b) * x.z[1]
    gz1 = -b * x.z[0] + a * x.z[1]
    inner_z = gz0 * np.conj(y.z[0]) + gz1 * np.conj(y.z[1])
    if model.kind == "p1xp1":
        gw0 = np.conj(a) * x.w[0] + np.conj(b) * x.w[1]
        gw1 = -b * x.w[0] + a * x.w[1]
        inner_w = gw0 * np.conj(y.w[0]) + gw1 * np.conj(y.w[1])
    chi = character_torus(kn, quad.rotation_angles())
    total = 0j
    for l in levels:
        l1, l2 = model.level_degrees(l)
        c_l = (l1 + 1) * (l2 + 1) / model.volume
        vals = c_l * inner_z**l1
        if model.kind == "p1xp1":
            vals = vals * inner_w**l2
        total += np.sum(quad.weights * chi * vals)
    return KernelValue(complex(kn * total), k, nu, "quadrature")


def dimension(model: ModelSpace, k: int, nu: int) -> int:
    """Dimension of the weight-(k nu) isotype of the Hardy space."""
    kn = k * nu
    if model.kind == "p1":
        return kn
    return kn * len(admissible_levels(k, nu, model.r))
