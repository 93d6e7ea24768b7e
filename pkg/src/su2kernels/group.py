"""SU(2) group elements, characters, Clebsch-Gordan multiplicities, Haar quadrature.

Group elements are stored as unit pairs (alpha, beta) on S^3; the associated
special unitary matrix is [[alpha, -conj(beta)], [beta, conj(alpha)]].
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

__all__ = [
    "GroupElement",
    "HaarQuadrature",
    "BETA",
    "a_matrix",
    "pairing",
    "adjoint",
    "is_lie_algebra_element",
    "character_torus",
    "character_group",
    "f_ell",
    "clebsch_multiplicity",
    "haar_quadrature",
]

# Infinitesimal generator of the standard torus, diag(i, -i).
BETA = np.diag([1j, -1j])

_UNIT_TOL = 1e-12


@dataclass(frozen=True)
class GroupElement:
    """An element of SU(2) as a unit pair (alpha, beta); renormalized on construction."""

    alpha: complex
    beta: complex

    def __post_init__(self):
        a, b = complex(self.alpha), complex(self.beta)
        n = np.hypot(abs(a), abs(b))
        if n < 1e-8:
            raise ValueError("degenerate (alpha, beta) pair")
        object.__setattr__(self, "alpha", a / n)
        object.__setattr__(self, "beta", b / n)

    @property
    def matrix(self) -> np.ndarray:
        a, b = self.alpha, self.beta
        return np.array([[a, -np.conj(b)], [b, np.conj(a)]])

    @classmethod
    def from_matrix(cls, m: np.ndarray) -> "GroupElement":
        return cls(m[0, 0], m[1, 0])

    @classmethod
    def identity(cls) -> "GroupElement":
        return cls(1.0, 0.0)

    @classmethod
    def torus(cls, theta: float) -> "GroupElement":
        """exp(theta * BETA) = diag(e^{i theta}, e^{-i theta})."""
        return cls(np.exp(1j * theta), 0.0)

    @classmethod
    def exp(cls, xi: np.ndarray) -> "GroupElement":
        """Exponential of a traceless skew-Hermitian 2x2 matrix."""
        from scipy.linalg import expm

        return cls.from_matrix(expm(xi))

    def inverse(self) -> "GroupElement":
        return GroupElement(np.conj(self.alpha), -self.beta)

    def __matmul__(self, other: "GroupElement") -> "GroupElement":
        return GroupElement.from_matrix(self.matrix @ other.matrix)

    def rotation_angle(self) -> float:
        """Conjugation-invariant angle in [0, pi]: trace(g) = 2 cos(angle)."""
        return float(np.arccos(np.clip(self.alpha.real, -1.0, 1.0)))

    def isclose(self, other: "GroupElement", tol: float = 1e-10) -> bool:
        return bool(
            abs(self.alpha - other.alpha) < tol and abs(self.beta - other.beta) < tol
        )


def a_matrix(z: complex) -> np.ndarray:
    """The Lie algebra element i * [[0, z], [conj(z), 0]]."""
    z = complex(z)
    return 1j * np.array([[0.0, z], [np.conj(z), 0.0]])


def is_lie_algebra_element(xi: np.ndarray, tol: float = 1e-12) -> bool:
    return bool(
        abs(np.trace(xi)) < tol and np.max(np.abs(xi + xi.conj().T)) < tol
    )


def pairing(xi: np.ndarray, eta: np.ndarray) -> float:
    """Invariant pairing -trace(xi @ eta); real on su(2) x su(2).

    Calibrated so that <i diag(l, -l), BETA> = 2 l.
    """
    return float(np.real(-np.trace(xi @ eta)))


def adjoint(g: GroupElement, xi: np.ndarray) -> np.ndarray:
    """Ad_g(xi) = g xi g^{-1}."""
    m = g.matrix
    return m @ xi @ m.conj().T


def character_torus(nu: int, theta) -> float:
    """Character of the nu-dimensional irrep at diag(e^{i theta}, e^{-i theta}).

    sin(nu theta)/sin(theta), with the removable singularity handled by the
    explicit finite cosine sum when sin(theta) is small.
    """
    if nu < 1:
        raise ValueError("nu must be >= 1")
    theta = np.asarray(theta, dtype=float)
    s = np.sin(theta)
    small = np.abs(s) < 1e-6
    with np.errstate(divide="ignore", invalid="ignore"):
        val = np.where(small, 1.0, np.sin(nu * theta) / np.where(small, 1.0, s))
    if np.any(small):
        j = np.arange(nu)
        fine = np.cos(np.multiply.outer(theta, nu - 1 - 2 * j)).sum(axis=-1)
        val = np.where(small, fine, val)
    return float(val) if val.ndim == 0 else val


def character_group(nu: int, g: GroupElement) -> float:
    """Character of the nu-dimensional irrep; class function of trace(g)."""
    return character_torus(nu, g.rotation_angle())


def f_ell(ell: int, theta: float) -> complex:
    """The torus character e^{i ell theta}."""
    return complex(np.exp(1j * ell * theta))


def clebsch_multiplicity(a: int, b: int, nu: int) -> int:
    """Multiplicity (0 or 1) of the nu-dimensional irrep in V_a (x) V_b."""
    if min(a, b, nu) < 1:
        raise ValueError("irrep labels must be >= 1")
    if a > b:
        a, b = b, a
    if (nu - (a + b - 1)) % 2 != 0:
        return 0
    return 1 if b - a + 1 <= nu <= a + b - 1 else 0


@dataclass(frozen=True)
class HaarQuadrature:
    """Nodes and weights for normalized Haar integration on SU(2).

    Exact for polynomials of total degree <= 2*degree in the matrix entries,
    hence for products of two character values with labels <= degree.
    """

    alphas: np.ndarray
    betas: np.ndarray
    weights: np.ndarray
    degree: int

    def __len__(self) -> int:
        return len(self.weights)

    def elements(self):
        for a, b in zip(self.alphas, self.betas):
            yield GroupElement(a, b)

    def integrate(self, values: np.ndarray):
        return np.sum(self.weights * values, axis=-1)

    def rotation_angles(self) -> np.ndarray:
        return np.arccos(np.clip(self.alphas.real, -1.0, 1.0))


def haar_quadrature(
    max_degree: int,
    node_budget: int = 5_000_000,
    self_test: bool = True,
    self_test_cap: int = 40,
) -> HaarQuadrature:
    """Product rule in Euler-type angles on S^3 = SU(2).

    Gauss-Legendre in t = cos(2 theta) (theta in [0, pi/2], weight sin(2 theta))
    and uniform grids on the two circle factors.  Node count grows linearly in
    max_degree per axis.  Schur orthogonality of characters is verified at
    construction.
    """
    if max_degree < 1:
        raise ValueError("max_degree must be >= 1")
    n_t = max_degree + 1
    n_phi = 4 * max_degree + 1
    if n_t * n_phi * n_phi > node_budget:
        raise ValueError(
            f"node budget exceeded: {n_t * n_phi * n_phi} > {node_budget}"
        )
    t, wt = np.polynomial.legendre.leggauss(n_t)
    theta = 0.5 * np.arccos(np.clip(t, -1.0, 1.0))
    phi = 2.0 * np.pi * np.arange(n_phi) / n_phi

    ct, st = np.cos(theta), np.sin(theta)
    alphas = np.broadcast_to(
        (ct[:, None, None] * np.exp(1j * phi)[None, :, None]),
        (n_t, n_phi, n_phi),
    ).ravel()
    betas = np.broadcast_to(
        (st[:, None, None] * np.exp(1j * phi)[None, None, :]),
        (n_t, n_phi, n_phi),
    ).ravel()
    weights = np.broadcast_to(
        (0.5 * wt / (n_phi * n_phi))[:, None, None], (n_t, n_phi, n_phi)
    ).ravel()

    quad = HaarQuadrature(alphas, betas, weights, max_degree)
    if self_test:
        _check_schur_orthogonality(quad, min(max_degree, self_test_cap))
    return quad


def _check_schur_orthogonality(quad: HaarQuadrature, degree: int, tol: float = 1e-10):
    angles = quad.rotation_angles()
    chi = np.vstack([character_torus(nu, angles) for nu in range(1, degree + 1)])
    gram = (chi * quad.weights) @ chi.T
    err = np.max(np.abs(gram - np.eye(degree)))
    if err > tol:
        raise RuntimeError(f"Haar quadrature failed Schur orthogonality: {err:.2e}")
