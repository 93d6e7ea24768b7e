"""Holomorphic section spaces as bihomogeneous polynomial spaces.

Level l on the product model is spanned by monomials z0^a z1^{l-a} w0^b
w1^{lr-b}; on P^1 the w-factor is absent (lr = 0, b = 0).  The L^2 inner
product is diagonal on monomials with closed-form factorial norms; ladder
chains from highest-weight vectors give orthonormal isotypic bases.

Coefficients are stored per weight block against L^2-normalized monomials;
norms are handled through log-factorials so levels of several hundred are
fine.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
import scipy.sparse as sp
from scipy.special import gammaln

from .geometry import BundlePoint, ModelSpace
from .group import GroupElement, clebsch_multiplicity

__all__ = [
    "monomial_norm2",
    "Section",
    "evaluate",
    "ladder_matrices",
    "highest_weight_space",
    "isotypic_basis",
    "action_matrix",
]

_LADDER_BUDGET = 40_000


def _log_norm2(model: ModelSpace, l: int, a, b) -> np.ndarray:
    """log of the squared L^2(X) norm of the (a, b) monomial at level l."""
    l1, l2 = model.level_degrees(l)
    a = np.asarray(a)
    b = np.asarray(b)
    out = (
        np.log(model.volume)
        + gammaln(a + 1)
        + gammaln(l1 - a + 1)
        - gammaln(l1 + 2)
        + gammaln(b + 1)
        + gammaln(l2 - b + 1)
        - gammaln(l2 + 2)
    )
    return out


def monomial_norm2(model: ModelSpace, l: int, a: int, b: int = 0) -> float:
    """Squared norm of z0^a z1^{l-a} w0^b w1^{lr-b} in L^2 of the circle bundle.

    a!(l-a)!/(l+1)! per sphere factor, times the total volume of the bundle.
    Distinct monomials are orthogonal.
    """
    l1, l2 = model.level_degrees(l)
    if not (0 <= a <= l1 and 0 <= b <= l2):
        raise ValueError("monomial index out of range")
    return float(np.exp(_log_norm2(model, l, a, b)))


def _block_a_indices(model: ModelSpace, l: int, w: int) -> np.ndarray:
    """z-exponents a of the weight-w monomial block (b = s - a is implied)."""
    l1, l2 = model.level_degrees(l)
    tot = l1 + l2 - w
    if tot % 2 != 0:
        return np.empty(0, dtype=int)
    s = tot // 2
    lo, hi = max(0, s - l2), min(l1, s)
    if lo > hi:
        return np.empty(0, dtype=int)
    return np.arange(lo, hi + 1)


def _block_b(model: ModelSpace, l: int, w: int, a: np.ndarray) -> np.ndarray:
    l1, l2 = model.level_degrees(l)
    return (l1 + l2 - w) // 2 - a


@dataclass(frozen=True)
class Section:
    """A section at level l, stored per weight block over normalized monomials."""

    model: ModelSpace
    l: int
    blocks: tuple[tuple[int, np.ndarray, np.ndarray], ...]  # (weight, a, coeffs)

    def norm(self) -> float:
        return float(
            np.sqrt(sum(np.sum(np.abs(c) ** 2) for _, _, c in self.blocks))
        )

    def monomial_coefficients(self) -> np.ndarray:
        """Dense coefficient array over the raw monomial basis, shape (l1+1, l2+1)."""
        l1, l2 = self.model.level_degrees(self.l)
        out = np.zeros((l1 + 1, l2 + 1), dtype=complex)
        for w, a, c in self.blocks:
            b = _block_b(self.model, self.l, w, a)
            out[a, b] = c * np.exp(-0.5 * _log_norm2(self.model, self.l, a, b))
        return out

    @classmethod
    def from_monomial_coefficients(
        cls, model: ModelSpace, l: int, coeffs: np.ndarray
    ) -> "Section":
        l1, l2 = model.level_degrees(l)
        coeffs = np.asarray(coeffs, dtype=complex).reshape(l1 + 1, l2 + 1)
        blocks = []
        for w in range(-(l1 + l2), l1 + l2 + 1, 2):
            a = _block_a_indices(model, l, w)
            if len(a) == 0:
                continue
            b = _block_b(model, l, w, a)
            c = coeffs[a, b] * np.exp(0.5 * _log_norm2(model, l, a, b))
            if np.any(c != 0):
                blocks.append((w, a, c))
        return cls(model, l, tuple(blocks))


def _mono_log(base: complex, exps: np.ndarray):
    """(log-magnitude, phase) of base**exps, with 0**0 = 1 handled."""
    mag = abs(base)
    if mag > 0:
        logmag = exps * np.log(mag)
    else:
        logmag = np.where(exps == 0, 0.0, -np.inf)
    phase = exps * (np.angle(base) if mag > 0 else 0.0)
    return logmag, phase


def _normalized_monomial_values(
    model: ModelSpace, l: int, w: int, a: np.ndarray, x: BundlePoint
) -> np.ndarray:
    """Values of the L^2-normalized weight-w block monomials at x."""
    l1, l2 = model.level_degrees(l)
    b = _block_b(model, l, w, a)
    w0, w1 = (x.w if x.w is not None else np.array([1.0 + 0j, 0j]))
    lm = np.zeros(len(a))
    ph = np.zeros(len(a))
    for base, e in (
        (x.z[0], a),
        (x.z[1], l1 - a),
        (w0, b),
        (w1, l2 - b),
    ):
        m, p = _mono_log(base, e)
        lm = lm + m
        ph = ph + p
    lm = lm - 0.5 * _log_norm2(model, l, a, b)
    with np.errstate(over="ignore"):
        return np.exp(lm) * np.exp(1j * ph)


def evaluate(s: Section, x: BundlePoint) -> complex:
    """Value of the associated CR function at the bundle point x."""
    if x.model != s.model:
        raise ValueError("model mismatch")
    total = 0j
    for w, a, c in s.blocks:
        total += np.dot(c, _normalized_monomial_values(s.model, s.l, w, a, x))
    return complex(total)


# --- ladder operators -------------------------------------------------------

def ladder_matrices(model: ModelSpace, l: int):
    """Sparse integer (E, F, H) on the raw monomial basis at level l.

    E raises weight by 2, F lowers, H is diagonal with the integer weights;
    [E, F] = H and [H, E] = 2E hold exactly.  Monomials are ordered by
    (a, b) row-major.
    """
    l1, l2 = model.level_degrees(l)
    n = (l1 + 1) * (l2 + 1)
    if n > _LADDER_BUDGET:
        raise ValueError(f"level budget exceeded: {n} > {_LADDER_BUDGET}")

    def flat(a, b):
        return a * (l2 + 1) + b

    rows_e, cols_e, vals_e = [], [], []
    rows_f, cols_f, vals_f = [], [], []
    weights = np.empty(n, dtype=np.int64)
    for a in range(l1 + 1):
        for b in range(l2 + 1):
            i = flat(a, b)
            weights[i] = (l1 - 2 * a) + (l2 - 2 * b)
            # E m(a,b) = -a m(a-1,b) - b m(a,b-1)
            if a > 0:
                rows_e.append(flat(a - 1, b)); cols_e.append(i); vals_e.append(-a)
            if b > 0:
                rows_e.append(flat(a, b - 1)); cols_e.append(i); vals_e.append(-b)
            # F m(a,b) = -(l1-a) m(a+1,b) - (l2-b) m(a,b+1)
            if a < l1:
                rows_f.append(flat(a + 1, b)); cols_f.append(i); vals_f.append(-(l1 - a))
            if b < l2:
                rows_f.append(flat(a, b + 1)); cols_f.append(i); vals_f.append(-(l2 - b))

    e = sp.csr_matrix((vals_e, (rows_e, cols_e)), shape=(n, n), dtype=np.int64)
    f = sp.csr_matrix((vals_f, (rows_f, cols_f)), shape=(n, n), dtype=np.int64)
    h = sp.diags(weights, dtype=np.int64, format="csr")
    return e, f, h


def _log_abs_int(c: int) -> float:
    """log|c| for an arbitrarily large nonzero integer."""
    c = abs(c)
    k = c.bit_length() - 53
    if k <= 0:
        return math.log(c)
    return math.log(c >> k) + k * math.log(2.0)


def _exact_chain_coefficients(model: ModelSpace, l: int, nu: int):
    """Integer coefficient dicts of the full F-chain of the nu-isotype, or None.

    The highest-weight vector has the classical closed form
    z1^p w1^q (z0 w1 - z1 w0)^s with p + s = l1, q + s = l2, p + q = nu - 1
    (z1, w1 carry weight +1 here); the lowering operator preserves
    integrality, so the whole chain is exact.  Working over the integers
    matters: chains renormalized in floating point drift out of the isotype
    exponentially fast once the chain is long.
    """
    l1, l2 = model.level_degrees(l)
    two_s = l1 + l2 - (nu - 1)
    if two_s < 0 or two_s % 2 != 0:
        return None
    s = two_s // 2
    p, q = l1 - s, l2 - s
    if p < 0 or q < 0:
        return None
    cur = {(i, s - i): (-1) ** (s - i) * math.comb(s, i) for i in range(s + 1)}
    chain = [cur]
    for _ in range(nu - 1):
        nxt: dict[tuple[int, int], int] = {}
        for (a, b), c in cur.items():
            if a < l1:
                nxt[(a + 1, b)] = nxt.get((a + 1, b), 0) - (l1 - a) * c
            if b < l2:
                nxt[(a, b + 1)] = nxt.get((a, b + 1), 0) - (l2 - b) * c
        cur = {k: v for k, v in nxt.items() if v != 0}
        if not cur:
            raise RuntimeError("ladder chain terminated early")
        chain.append(cur)
    return chain


def _block_from_ints(model: ModelSpace, l: int, w: int, coeffs: dict) -> tuple:
    """Normalized-monomial coordinate block from exact integer coefficients.

    The returned unit vector is exact up to one rounding per entry: signs and
    relative log magnitudes come straight from the integers.
    """
    a_idx = _block_a_indices(model, l, w)
    b_idx = _block_b(model, l, w, a_idx)
    logn = _log_norm2(model, l, a_idx, b_idx)
    logs = np.full(len(a_idx), -np.inf)
    signs = np.zeros(len(a_idx))
    pos = {int(a): i for i, a in enumerate(a_idx)}
    for (a, _b), c in coeffs.items():
        i = pos[a]
        logs[i] = _log_abs_int(c) + 0.5 * logn[i]
        signs[i] = 1.0 if c > 0 else -1.0
    top = float(np.max(logs))
    vec = signs * np.exp(logs - top)
    vec /= np.linalg.norm(vec)
    piv = vec[int(np.argmax(np.abs(vec)))]
    if piv < 0:
        vec = -vec
    return (w, a_idx, vec.astype(complex))


def highest_weight_space(model: ModelSpace, l: int, nu: int) -> list[Section]:
    """Orthonormal basis of ker(E) in the weight-(nu-1) block at level l.

    Multiplicity is 0 or 1 on these models; the generator is the closed-form
    vector z0^p w0^q (z0 w1 - z1 w0)^s expanded exactly.
    """
    chain = _exact_chain_coefficients(model, l, nu)
    if chain is None:
        return []
    return [Section(model, l, (_block_from_ints(model, l, nu - 1, chain[0]),))]


@lru_cache(maxsize=1024)
def isotypic_basis(model: ModelSpace, l: int, nu: int) -> tuple[Section, ...]:
    """Orthonormal basis of the nu-isotype at level l: F-chains from ker(E).

    Cardinality nu times the Clebsch-Gordan multiplicity; results are cached
    per (model, l, nu).  The chain is carried in exact integer arithmetic and
    only the final per-weight normalization is floating point.
    """
    chain = _exact_chain_coefficients(model, l, nu)
    out = []
    if chain is not None:
        for step, coeffs in enumerate(chain):
            blk = _block_from_ints(model, l, nu - 1 - 2 * step, coeffs)
            out.append(Section(model, l, (blk,)))
    l1, l2 = model.level_degrees(l)
    expected = nu * clebsch_multiplicity(l1 + 1, l2 + 1, nu)
    if len(out) != expected:
        raise RuntimeError(
            f"isotype dimension mismatch at l={l}, nu={nu}: "
            f"{len(out)} != {expected}"
        )
    return tuple(out)


# --- group action on section spaces (small levels) --------------------------

def _factor_action_matrix(g: GroupElement, deg: int) -> np.ndarray:
    """Matrix of p(Z) -> p(g^{-1} Z) on degree-deg monomials z0^a z1^{deg-a}."""
    gi = g.inverse().matrix
    # (g^{-1}Z)_0 = gi00 z0 + gi01 z1, (g^{-1}Z)_1 = gi10 z0 + gi11 z1
    out = np.zeros((deg + 1, deg + 1), dtype=complex)
    from math import comb

    for a in range(deg + 1):
        # expand (gi00 z0 + gi01 z1)^a (gi10 z0 + gi11 z1)^(deg-a)
        col = np.zeros(deg + 1, dtype=complex)
        for i in range(a + 1):
            c1 = comb(a, i) * gi[0, 0] ** i * gi[0, 1] ** (a - i)
            for j in range(deg - a + 1):
                c2 = comb(deg - a, j) * gi[1, 0] ** j * gi[1, 1] ** (deg - a - j)
                col[i + j] += c1 * c2  # exponent of z0 in the product
        out[:, a] = col
    return out


def action_matrix(g: GroupElement, model: ModelSpace, l: int) -> np.ndarray:
    """Matrix of the group action on the raw monomial basis at level l."""
    l1, l2 = model.level_degrees(l)
    if (l1 + 1) * (l2 + 1) > _LADDER_BUDGET:
        raise ValueError("level budget exceeded")
    mz = _factor_action_matrix(g, l1)
    mw = _factor_action_matrix(g, l2)
    return np.kron(mz, mw)
