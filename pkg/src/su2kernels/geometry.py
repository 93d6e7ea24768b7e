"""Model Kaehler geometry on P^1 and P^1 x P^1 with the twisted circle bundle.

Conventions fixed here and validated by the test suite:
  * Fubini-Study area of P^1 is pi; the product space (P^1 x P^1, w (+) r w)
    has volume r pi^2, shared by the unit circle bundle.
  * Invariant pairing on su(2) is -trace(xi eta), so that
    <i diag(l, -l), BETA> = 2 l holds literally.
  * Charts are adapted and unitary: the z-factor direction has coefficient 1,
    the w-factor direction coefficient 1/sqrt(r).
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from scipy.linalg import expm
from scipy.optimize import minimize
from scipy.special import gammaln

from .group import BETA, GroupElement, a_matrix, adjoint, pairing

__all__ = [
    "ModelSpace",
    "P1",
    "BundlePoint",
    "StabilizerInfo",
    "p1xp1",
    "moment_p1",
    "moment",
    "lambda_of",
    "h_coset",
    "u0",
    "psi2",
    "act",
    "stabilizer",
    "hlc_chart",
    "transverse_directions",
    "xi_norm2",
    "c_and_b_matrices",
    "dist_to_orbit",
]


@dataclass(frozen=True)
class ModelSpace:
    """Either P^1 with O(1), or P^1 x P^1 with O(1) (x) O(r), r >= 2."""

    kind: str  # "p1" | "p1xp1"
    r: int = 0

    def __post_init__(self):
        if self.kind not in ("p1", "p1xp1"):
            raise ValueError(f"unknown model kind {self.kind!r}")
        if self.kind == "p1xp1" and self.r < 2:
            raise ValueError("p1xp1 requires r >= 2 (nowhere vanishing moment map)")
        if self.kind == "p1" and self.r != 0:
            raise ValueError("p1 takes no twist parameter")

    @property
    def dim(self) -> int:
        return 1 if self.kind == "p1" else 2

    @property
    def volume(self) -> float:
        return np.pi if self.kind == "p1" else self.r * np.pi**2

    def level_degrees(self, l: int) -> tuple[int, int]:
        """Bidegree (l, l*r) of the level-l section space (second factor 0 on P^1)."""
        return (l, 0) if self.kind == "p1" else (l, l * self.r)


P1 = ModelSpace("p1")


def p1xp1(r: int) -> ModelSpace:
    return ModelSpace("p1xp1", r)


def _unit(v: np.ndarray) -> np.ndarray:
    v = np.asarray(v, dtype=complex).reshape(2)
    n = np.linalg.norm(v)
    if n < 1e-8:
        raise ValueError("cannot normalize near-zero spinor")
    return v / n


def _perp(v: np.ndarray) -> np.ndarray:
    """The unit spinor orthogonal to v: (-conj(v1), conj(v0))."""
    return np.array([-np.conj(v[1]), np.conj(v[0])])


@dataclass(frozen=True)
class BundlePoint:
    """A point of the unit circle bundle, as unit spinor representatives (Z, W).

    Two pairs denote the same point iff their tensor representatives
    Z (x) W^{(x) r} agree (Z alone on P^1).
    """

    model: ModelSpace
    z: np.ndarray
    w: np.ndarray | None = None

    def __post_init__(self):
        object.__setattr__(self, "z", _unit(self.z))
        if self.model.kind == "p1xp1":
            if self.w is None:
                raise ValueError("p1xp1 point needs a W spinor")
            object.__setattr__(self, "w", _unit(self.w))
        elif self.w is not None:
            raise ValueError("p1 point takes no W spinor")

    def tensor_rep(self) -> np.ndarray:
        """Unit vector Z (x) Sym^r(W), the embedding of the circle bundle."""
        if self.model.kind == "p1":
            return self.z.copy()
        r = self.model.r
        j = np.arange(r + 1)
        logc = 0.5 * (gammaln(r + 1) - gammaln(j + 1) - gammaln(r - j + 1))
        sym = np.exp(logc) * _cpow_vec(self.w[0], r - j) * _cpow_vec(self.w[1], j)
        return np.outer(self.z, sym).ravel()

    def same_point(self, other: "BundlePoint", tol: float = 1e-10) -> bool:
        if self.model != other.model:
            return False
        return bool(np.linalg.norm(self.tensor_rep() - other.tensor_rep()) < tol)


def _cpow_vec(base: complex, exps: np.ndarray) -> np.ndarray:
    base = complex(base)
    if abs(base) == 0.0:
        return np.where(exps == 0, 1.0 + 0j, 0j)
    return np.exp(exps * np.log(base))


def moment_p1(z: np.ndarray) -> np.ndarray:
    """Moment map of the standard action on P^1: i (Z Z* - I/2) for unit Z."""
    z = _unit(z)
    return 1j * (np.outer(z, np.conj(z)) - 0.5 * np.eye(2))


def moment(x: BundlePoint) -> np.ndarray:
    """Moment map value at the base point of x."""
    if x.model.kind == "p1":
        return moment_p1(x.z)
    return moment_p1(x.z) + x.model.r * moment_p1(x.w)


def lambda_of(phi: np.ndarray) -> float:
    """The unique positive eigenvalue of -i phi."""
    h = -1j * np.asarray(phi)
    a = h[0, 0].real
    b = h[0, 1]
    lam = float(np.hypot(a, abs(b)))
    if lam < 1e-14:
        raise ValueError("moment value is zero")
    return lam


def h_coset(phi: np.ndarray) -> GroupElement:
    """A representative h with phi = i h diag(lambda, -lambda) h^{-1}.

    Deterministic tie-break: real nonnegative alpha; if alpha = 0, real
    positive beta (the exact Weyl flip for anti-diagonal input).
    """
    lam = lambda_of(phi)
    h = -1j * np.asarray(phi)
    evals, evecs = np.linalg.eigh(h)
    u = evecs[:, int(np.argmax(evals))]
    if abs(u[0]) > 1e-8:
        u = u * (np.conj(u[0]) / abs(u[0]))
    else:
        u = u * (np.conj(u[1]) / abs(u[1]))
    g = GroupElement(u[0], u[1])
    # defining property, cheap to assert
    residue = g.matrix @ np.diag([1j * lam, -1j * lam]) @ g.matrix.conj().T - phi
    if np.max(np.abs(residue)) > 1e-8 * max(1.0, lam):
        raise RuntimeError("h_coset diagonalization failed")
    return g


def u0(nu: int, phi: np.ndarray) -> float:
    """The Gaussian rate nu / (2 lambda)."""
    return nu / (2.0 * lambda_of(phi))


def psi2(v1, v2) -> complex:
    """Universal quadratic exponent -i w(v1, v2) - |v1 - v2|^2 / 2.

    Components are taken in a unitary frame; w(v1, v2) = Im sum(conj(v1) v2).
    """
    v1 = np.atleast_1d(np.asarray(v1, dtype=complex))
    v2 = np.atleast_1d(np.asarray(v2, dtype=complex))
    omega = np.imag(np.vdot(v1, v2))
    return complex(-1j * omega - 0.5 * np.linalg.norm(v1 - v2) ** 2)


def act(g: GroupElement, x: BundlePoint) -> BundlePoint:
    m = g.matrix
    if x.model.kind == "p1":
        return BundlePoint(x.model, m @ x.z)
    return BundlePoint(x.model, m @ x.z, m @ x.w)


@dataclass(frozen=True)
class StabilizerInfo:
    """Classification of the stabilizer of a bundle point.

    kind is one of "trivial", "center-only", "cyclic"; angles lists the torus
    angles of all elements in the h_m-conjugated torus, in (-pi, pi].
    """

    kind: str
    order: int
    angles: tuple[float, ...]
    h: GroupElement
    contains_minus_identity: bool

    def elements(self) -> list[GroupElement]:
        hm = self.h.matrix
        out = []
        for th in self.angles:
            t = np.diag([np.exp(1j * th), np.exp(-1j * th)])
            out.append(GroupElement.from_matrix(hm @ t @ hm.conj().T))
        return out

    def central_angles(self) -> tuple[float, ...]:
        return tuple(
            th for th in self.angles if abs(th) < 1e-12 or abs(abs(th) - np.pi) < 1e-12
        )

    def noncentral_pair_angles(self) -> tuple[float, ...]:
        """One positive representative angle per {g, g^{-1}} pair."""
        return tuple(
            th for th in self.angles if 1e-12 < th < np.pi - 1e-12
        )


def _wrap_angle(th: float) -> float:
    out = np.remainder(th + np.pi, 2.0 * np.pi) - np.pi
    return float(np.pi if out <= -np.pi + 1e-15 else out)


def stabilizer(x: BundlePoint, tol: float = 1e-9) -> StabilizerInfo:
    """Stabilizer classification on the model spaces.

    P^1: free contact action, trivial stabilizer.  Products: cyclic of order
    r+1 for W parallel to Z, cyclic of order r-1 for W orthogonal to Z, and
    otherwise trivial (r even) or the center {+-I} (r odd).
    """
    h = h_coset(moment(x))
    if x.model.kind == "p1":
        return StabilizerInfo("trivial", 1, (0.0,), h, False)
    r = x.model.r
    ip = abs(np.vdot(x.z, x.w))
    if ip > 1.0 - tol:
        n = r + 1
    elif ip < tol:
        n = r - 1
    else:
        if r % 2 == 1:
            return StabilizerInfo("center-only", 2, (0.0, np.pi), h, True)
        return StabilizerInfo("trivial", 1, (0.0,), h, False)
    angles = sorted(_wrap_angle(2.0 * np.pi * j / n) for j in range(n))
    return StabilizerInfo("cyclic", n, tuple(angles), h, n % 2 == 0)


# --- charts, frames, vector-field norms ------------------------------------

def _frame_spinors(x: BundlePoint):
    """Per-factor orthogonal spinor directions and unitary-frame scales."""
    if x.model.kind == "p1":
        return ((x.z, _perp(x.z), 1.0),)
    rs = np.sqrt(float(x.model.r))
    return ((x.z, _perp(x.z), 1.0), (x.w, _perp(x.w), rs))


def hlc_chart(x: BundlePoint, v, k: int, radius: float = 0.5) -> BundlePoint:
    """The point "x + v/sqrt(k)" in an adapted unitary chart at x.

    v has one complex component per factor; the w-factor perturbation is
    scaled by 1/sqrt(r) so the frame is unitary for the product metric.
    The representative is the normalized perturbed spinor pair (phase chosen
    by normalization only, horizontal to first order).
    """
    v = np.atleast_1d(np.asarray(v, dtype=complex))
    if v.shape != (x.model.dim,):
        raise ValueError(f"chart direction must have {x.model.dim} components")
    eps = np.linalg.norm(v) / np.sqrt(k)
    if eps > radius:
        raise ValueError(f"chart radius exceeded: |v|/sqrt(k) = {eps:.3f}")
    spinors = []
    for (base, perp, scale), comp in zip(_frame_spinors(x), v):
        spinors.append(_unit(base + perp * (comp / (scale * np.sqrt(k)))))
    if x.model.kind == "p1":
        return BundlePoint(x.model, spinors[0])
    return BundlePoint(x.model, spinors[0], spinors[1])


_SU2_BASIS = (BETA, a_matrix(1.0), a_matrix(1.0j))


def _infinitesimal_frame_coords(x: BundlePoint, xi: np.ndarray) -> np.ndarray:
    """Components of the induced base vector field at m_x in the unitary frame."""
    coords = []
    for base, perp, scale in _frame_spinors(x):
        coords.append(scale * np.vdot(perp, xi @ base))
    return np.array(coords)


def orbit_frame_vectors(x: BundlePoint) -> np.ndarray:
    """Frame components of the three su(2) generator fields at m_x (rows)."""
    return np.vstack([_infinitesimal_frame_coords(x, xi) for xi in _SU2_BASIS])


def transverse_directions(x: BundlePoint, tol: float = 1e-8) -> list[np.ndarray]:
    """Real-orthonormal basis of the complement of the G-orbit directions.

    Returned as complex frame vectors; the complement is computed by SVD of
    the real span of the generator fields.
    """
    d = x.model.dim
    rows = orbit_frame_vectors(x)
    real_rows = np.hstack([rows.real, rows.imag])  # (3, 2d)
    _, s, vh = np.linalg.svd(real_rows, full_matrices=True)
    rank = int(np.sum(s > tol * max(1.0, s[0] if len(s) else 1.0)))
    comp = vh[rank:]
    return [row[:d] + 1j * row[d:] for row in comp]


def xi_norm2(x: BundlePoint, xi: np.ndarray, c_theta: float = 1.0) -> float:
    """Squared norm of the contact lift xi_X at x.

    |xi_M(m_x)|^2 in the base metric plus <Phi, xi>^2 times the fiber-norm
    constant c_theta (default |d_theta| = 1).
    """
    base = float(np.sum(np.abs(_infinitesimal_frame_coords(x, xi)) ** 2))
    fiber = pairing(moment(x), xi) ** 2 * c_theta
    return base + fiber


def c_and_b_matrices(
    x: BundlePoint, j: int, c_theta: float = 1.0
) -> tuple[np.ndarray, np.ndarray]:
    """The quadratic-form matrices C(x;j) and B(x;j) of a non-central pair.

    j indexes the positive representative angles of the stabilizer's
    non-central pairs.  C is the quadratic form z -> |eta_j(z)_X(x)|^2 read
    off at z in {1, i} with polarization for the off-diagonal entry, i.e.
    C_11 = q(1) without an extra factor of two; this normalization is the
    one that reproduces the exact-kernel oscillation amplitudes and phases.
    """
    stab = stabilizer(x)
    pairs = stab.noncentral_pair_angles()
    if not 0 <= j < len(pairs):
        raise ValueError(f"no non-central pair with index {j}")
    theta_j = pairs[j]
    lam = lambda_of(moment(x))
    t_inv = np.diag([np.exp(-1j * theta_j), np.exp(1j * theta_j)])

    def q(z: complex) -> float:
        az = a_matrix(z)
        eta = t_inv @ az @ t_inv.conj().T - az
        return xi_norm2(x, adjoint(stab.h, eta), c_theta)

    q1, qi, qmix = q(1.0), q(1.0j), q(1.0 + 1.0j)
    c12 = 0.5 * (qmix - q1 - qi)
    c = np.array([[q1, c12], [c12, qi]])
    b = c + 4j * np.sin(2.0 * theta_j) * lam * np.eye(2)
    return c, b


def dist_to_orbit(
    x: BundlePoint,
    y: BundlePoint,
    n_grid: int = 12,
    refine: bool = True,
) -> float:
    """Upper bound on the chordal distance from x to the G-orbit of y.

    Coarse minimum over an Euler-angle grid, then local Nelder-Mead descent
    in exponential coordinates around the best node.
    """
    rep_x = x.tensor_rep()

    def dist_for(gmat: np.ndarray) -> float:
        if y.model.kind == "p1":
            gy = BundlePoint(y.model, gmat @ y.z)
        else:
            gy = BundlePoint(y.model, gmat @ y.z, gmat @ y.w)
        return float(np.linalg.norm(rep_x - gy.tensor_rep()))

    best_g, best_d = np.eye(2), np.inf
    thetas = 0.5 * np.arccos(np.linspace(-1.0, 1.0, n_grid))
    phis = 2.0 * np.pi * np.arange(n_grid) / n_grid
    for th in thetas:
        for p1_ in phis:
            for p2_ in phis:
                a = np.cos(th) * np.exp(1j * p1_)
                b = np.sin(th) * np.exp(1j * p2_)
                gmat = np.array([[a, -np.conj(b)], [b, np.conj(a)]])
                d = dist_for(gmat)
                if d < best_d:
                    best_d, best_g = d, gmat

    if refine:
        def objective(t):
            xi = t[0] * _SU2_BASIS[0] + t[1] * _SU2_BASIS[1] + t[2] * _SU2_BASIS[2]
            return dist_for(best_g @ expm(xi))

        res = minimize(
            objective,
            np.zeros(3),
            method="Nelder-Mead",
            options={"xatol": 1e-10, "fatol": 1e-12, "maxiter": 2000},
        )
        best_d = min(best_d, float(res.fun))
    return best_d
