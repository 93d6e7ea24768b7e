"""Experiment harness: k-sweeps comparing exact kernels to leading predictions.

Each runner returns a ResultTable (comment-header CSV on disk) whose rows are
deterministic functions of the configuration and seed.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field, replace

import numpy as np

from . import __version__
from .asymptotics import (
    decay_fit,
    dimension_limit_integral,
    leading_diag_central,
    leading_diag_noncentral,
)
from .geometry import (
    BundlePoint,
    ModelSpace,
    P1,
    act,
    dist_to_orbit,
    hlc_chart,
    lambda_of,
    moment,
    p1xp1,
    transverse_directions,
    u0,
)
from .group import GroupElement, haar_quadrature
from .kernels import (
    dimension,
    equivariant_kernel,
    equivariant_kernel_quadrature,
    quadrature_degree_needed,
)

__all__ = [
    "ExperimentConfig",
    "ResultTable",
    "resolve_point",
    "run_dim",
    "run_diag",
    "run_neardiag",
    "run_decay",
    "run_oracle",
]

_PRESETS = ("generic", "orthonormal-ZW", "parallel-ZW")
_RATIO_SENTINEL = float("nan")


@dataclass(frozen=True)
class ExperimentConfig:
    model: str = "p1xp1"  # "p1" | "p1xp1"
    r: int = 2
    nu: int = 1
    kmin: int = 5
    kmax: int = 50
    kstep: int = 1
    point: str = "generic"
    seed: int = 0
    tol: float | None = None
    fiber_norm: str = "1"  # "1" | "inv2pi"
    bracket: str = "thm"
    out: str | None = None
    budget_s: float = 60.0
    offset: float = 0.7  # transverse offset for the decay pair

    def validate(self) -> "ExperimentConfig":
        if self.model not in ("p1", "p1xp1"):
            raise ValueError(f"unknown model {self.model!r}")
        if self.model == "p1xp1" and self.r < 2:
            raise ValueError("p1xp1 requires --r >= 2")
        if self.nu < 1:
            raise ValueError("--nu must be >= 1")
        if self.kmin < 1 or self.kmax < self.kmin or self.kstep < 1:
            raise ValueError("empty or invalid k range")
        if self.fiber_norm not in ("1", "inv2pi"):
            raise ValueError("--fiber-norm must be 1 or inv2pi")
        if self.bracket not in ("thm", "sec4"):
            raise ValueError("--bracket must be thm or sec4")
        if self.point not in _PRESETS and self.point.count(",") not in (1, 3):
            raise ValueError(f"bad point spec {self.point!r}")
        return self

    @property
    def space(self) -> ModelSpace:
        return P1 if self.model == "p1" else p1xp1(self.r)

    @property
    def c_theta(self) -> float:
        return 1.0 if self.fiber_norm == "1" else 1.0 / (2.0 * np.pi) ** 2

    def k_values(self) -> list[int]:
        return list(range(self.kmin, self.kmax + 1, self.kstep))


@dataclass
class ResultTable:
    experiment: str
    meta: dict
    columns: list[str]
    rows: list[dict] = field(default_factory=list)

    def column(self, name: str) -> np.ndarray:
        return np.array([row[name] for row in self.rows])

    def write(self, fh):
        fh.write(f"# experiment: {self.experiment}\n")
        fh.write(f"# version: su2kernels {__version__}\n")
        for key, val in self.meta.items():
            fh.write(f"# {key}: {val}\n")
        fh.write(",".join(self.columns) + "\n")
        for row in self.rows:
            fh.write(",".join(_fmt(row[c]) for c in self.columns) + "\n")

    def write_csv(self, path: str):
        with open(path, "w") as fh:
            self.write(fh)


def _fmt(val) -> str:
    if isinstance(val, complex):
        return f"{val.real:.17g}{val.imag:+.17g}j"
    if isinstance(val, float):
        return f"{val:.17g}"
    return str(val)


def _base_meta(cfg: ExperimentConfig) -> dict:
    return {
        "model": cfg.model,
        "r": cfg.r if cfg.model == "p1xp1" else "",
        "nu": cfg.nu,
        "k_range": f"{cfg.kmin}:{cfg.kmax}:{cfg.kstep}",
        "point": cfg.point,
        "seed": cfg.seed,
        "volume_normalization": "area(P1)=pi",
        "fiber_norm": cfg.fiber_norm,
        "bracket": cfg.bracket,
        "sqrt_branch": "principal",
    }


def resolve_point(cfg: ExperimentConfig, salt: int = 0) -> BundlePoint:
    """Deterministic bundle point for the configured preset or explicit spinors."""
    space = cfg.space
    if cfg.point == "orthonormal-ZW":
        if space.kind == "p1":
            raise ValueError("orthonormal-ZW preset needs the product model")
        return BundlePoint(space, [1.0, 0.0], [0.0, 1.0])
    if cfg.point == "parallel-ZW":
        if space.kind == "p1":
            raise ValueError("parallel-ZW preset needs the product model")
        return BundlePoint(space, [1.0, 0.0], [1.0, 0.0])
    if cfg.point == "generic":
        rng = np.random.default_rng((cfg.seed, salt))
        z = rng.normal(size=2) + 1j * rng.normal(size=2)
        if space.kind == "p1":
            return BundlePoint(space, z)
        w = rng.normal(size=2) + 1j * rng.normal(size=2)
        return BundlePoint(space, z, w)
    parts = [complex(p) for p in cfg.point.split(",")]
    if space.kind == "p1":
        if len(parts) != 2:
            raise ValueError("p1 explicit point needs Z0,Z1")
        return BundlePoint(space, parts)
    if len(parts) != 4:
        raise ValueError("p1xp1 explicit point needs Z0,Z1,W0,W1")
    return BundlePoint(space, parts[:2], parts[2:])


class _Budget:
    def __init__(self, seconds: float):
        self.deadline = time.monotonic() + seconds
        self.truncated = False

    def exhausted(self) -> bool:
        if time.monotonic() > self.deadline:
            self.truncated = True
        return self.truncated


def _finish(table: ResultTable, budget: _Budget, cfg: ExperimentConfig):
    table.meta["truncated"] = str(budget.truncated).lower()
    if cfg.out:
        table.write_csv(cfg.out)
    return table


def run_dim(cfg: ExperimentConfig) -> ResultTable:
    """Exact dimensions against the scaled dimension-limit integral."""
    cfg = cfg.validate()
    space = cfg.space
    budget = _Budget(cfg.budget_s)
    integral, integral_se = float("nan"), float("nan")
    if space.kind == "p1xp1" and space.r % 2 == 0:
        integral, integral_se = dimension_limit_integral(space, seed=cfg.seed)
    table = ResultTable(
        "dim",
        {**_base_meta(cfg), "integral": _fmt(integral), "integral_se": _fmt(integral_se)},
        ["k", "dim", "scaled_dim", "integral", "ratio"],
    )
    d = space.dim
    for k in cfg.k_values():
        if budget.exhausted():
            break
        dm = dimension(space, k, cfg.nu)
        scaled = (np.pi / (k * cfg.nu)) ** d * dm
        ratio = scaled / integral if integral == integral and integral != 0 else _RATIO_SENTINEL
        table.rows.append(
            {"k": k, "dim": dm, "scaled_dim": float(scaled),
             "integral": integral, "ratio": float(ratio)}
        )
    return _finish(table, budget, cfg)


def run_diag(cfg: ExperimentConfig) -> ResultTable:
    """Exact on-diagonal kernel values against the leading predictions."""
    cfg = cfg.validate()
    space = cfg.space
    x = resolve_point(cfg)
    budget = _Budget(cfg.budget_s)
    lam = lambda_of(moment(x))
    table = ResultTable(
        "diag",
        {**_base_meta(cfg), "lambda": _fmt(lam)},
        ["k", "exact", "central", "noncentral", "residual", "ratio"],
    )
    for k in cfg.k_values():
        if budget.exhausted():
            break
        exact = equivariant_kernel(space, k, cfg.nu, x, x).value.real
        central = leading_diag_central(space, k, cfg.nu, x)
        try:
            noncentral = leading_diag_noncentral(
                space, k, cfg.nu, x, c_theta=cfg.c_theta, bracket=cfg.bracket
            )
        except ValueError:
            noncentral = 0.0
        ratio = exact / central if central != 0 else _RATIO_SENTINEL
        table.rows.append(
            {"k": k, "exact": float(exact), "central": float(central),
             "noncentral": float(noncentral),
             "residual": float(exact - central), "ratio": float(ratio)}
        )
    return _finish(table, budget, cfg)


_NEARDIAG_AMPLITUDES = np.linspace(0.25, 2.0, 8)


def run_neardiag(cfg: ExperimentConfig) -> ResultTable:
    """Gaussian near-diagonal scaling along an automatically chosen transverse ray."""
    cfg = cfg.validate()
    space = cfg.space
    x = resolve_point(cfg)
    if space.kind == "p1":
        vhat = np.array([1.0 + 0j])
    else:
        dirs = transverse_directions(x)
        if not dirs:
            raise ValueError("no transverse direction at the chosen point")
        vhat = dirs[0] / np.linalg.norm(dirs[0])
    rate_pred = u0(cfg.nu, moment(x))
    budget = _Budget(cfg.budget_s)
    table = ResultTable(
        "neardiag",
        {**_base_meta(cfg), "u0": _fmt(rate_pred),
         "direction": _fmt(complex(vhat[0])) + ("" if space.kind == "p1" else ";" + _fmt(complex(vhat[1])))},
        ["k", "t", "modulus_ratio", "predicted_ratio", "fitted_rate"],
    )
    for k in cfg.k_values():
        if budget.exhausted():
            break
        diag = equivariant_kernel(space, k, cfg.nu, x, x).value.real
        ratios = []
        for t in _NEARDIAG_AMPLITUDES:
            xv = hlc_chart(x, t * vhat, k)
            val = abs(equivariant_kernel(space, k, cfg.nu, xv, x).value)
            ratios.append(val / diag)
        halves = 0.5 * _NEARDIAG_AMPLITUDES**2
        fitted = float(np.linalg.lstsq(
            halves[:, None], -np.log(np.maximum(ratios, 1e-300)), rcond=None
        )[0][0])
        for t, ratio in zip(_NEARDIAG_AMPLITUDES, ratios):
            table.rows.append(
                {"k": k, "t": float(t), "modulus_ratio": float(ratio),
                 "predicted_ratio": float(np.exp(-rate_pred * 0.5 * t * t)),
                 "fitted_rate": fitted}
            )
    return _finish(table, budget, cfg)


def run_decay(cfg: ExperimentConfig) -> ResultTable:
    """Off-orbit rapid decay with an on-orbit (diagonal) control."""
    cfg = cfg.validate()
    space = cfg.space
    x = resolve_point(cfg)
    if space.kind == "p1":
        vhat = np.array([1.0 + 0j])
    else:
        dirs = transverse_directions(x)
        if not dirs:
            raise ValueError("no transverse direction at the chosen point")
        vhat = dirs[0] / np.linalg.norm(dirs[0])
    y = hlc_chart(x, cfg.offset * vhat, 1, radius=1.0)
    dist = dist_to_orbit(x, y)
    budget = _Budget(cfg.budget_s)
    table = ResultTable(
        "decay",
        {**_base_meta(cfg), "offset": _fmt(cfg.offset), "dist_to_orbit": _fmt(dist)},
        ["k", "abs_offorbit", "abs_control"],
    )
    for k in cfg.k_values():
        if budget.exhausted():
            break
        off = abs(equivariant_kernel(space, k, cfg.nu, x, y).value)
        control = abs(equivariant_kernel(space, k, cfg.nu, x, x).value)
        table.rows.append(
            {"k": k, "abs_offorbit": float(off), "abs_control": float(control)}
        )
    ks = table.column("k")
    if len(ks) >= 5:
        table.meta["slope_offorbit"] = _fmt(decay_fit(ks, table.column("abs_offorbit")))
        table.meta["slope_control"] = _fmt(decay_fit(ks, table.column("abs_control")))
    return _finish(table, budget, cfg)


def run_oracle(cfg: ExperimentConfig, n_pairs: int = 20) -> ResultTable:
    """Dual-method check: isotypic assembly against character quadrature."""
    cfg = cfg.validate()
    space = cfg.space
    kn_max = cfg.kmax * cfg.nu
    if kn_max > 16:
        raise ValueError("oracle runs are limited to k*nu <= 16 (quadrature budget)")
    degree = max(
        quadrature_degree_needed(space, k, cfg.nu) for k in cfg.k_values()
    )
    quad = haar_quadrature(degree)
    rng = np.random.default_rng(cfg.seed)
    budget = _Budget(cfg.budget_s)
    table = ResultTable(
        "oracle",
        {**_base_meta(cfg), "quadrature_degree": degree, "nodes": len(quad)},
        ["k", "pair", "exact", "quadrature", "rel_discrepancy"],
    )
    worst = 0.0
    for k in cfg.k_values():
        if budget.exhausted():
            break
        for p in range(n_pairs):
            pts = []
            for _ in range(2):
                z = rng.normal(size=2) + 1j * rng.normal(size=2)
                if space.kind == "p1":
                    pts.append(BundlePoint(space, z))
                else:
                    w = rng.normal(size=2) + 1j * rng.normal(size=2)
                    pts.append(BundlePoint(space, z, w))
            exact = equivariant_kernel(space, k, cfg.nu, pts[0], pts[1]).value
            quadv = equivariant_kernel_quadrature(
                space, k, cfg.nu, pts[0], pts[1], quad
            ).value
            diag_scale = abs(
                equivariant_kernel(space, k, cfg.nu, pts[0], pts[0]).value
            )
            rel = abs(exact - quadv) / max(diag_scale, 1e-300)
            worst = max(worst, rel)
            table.rows.append(
                {"k": k, "pair": p, "exact": exact, "quadrature": quadv,
                 "rel_discrepancy": float(rel)}
            )
    table.meta["max_rel_discrepancy"] = _fmt(worst)
    return _finish(table, budget, cfg)
