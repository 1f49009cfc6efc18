"""Nonlocal skew information: maximize ``I(rho, A_1 + ... + A_n)`` over qubit
spin observables ``A_j = a_j . sigma``.

The objective is a quadratic form in the stacked Bloch vectors,
``I = a^T Q a`` with

    Q[(j,s),(k,t)] = Re tr(rho P_js P_kt) - Re tr(sqrt(rho) P_js sqrt(rho) P_kt),

where ``P_js`` is Pauli ``s`` on site ``j``. ``Q`` is built once per state and
then searched with multi-start Nelder-Mead over per-site angles ``(theta, phi)``.
The winning point is re-evaluated through the full matrix route
(``evaluate_at``) before it is reported.
"""

from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np
from scipy.optimize import minimize

from .errors import InconsistentResult, NonQubitSite, ValidationError
from .linalg import embed, psd_sqrt
from .observables import PAULIS, BlochVector, local_sum_operator, spin_from_bloch
from .skew import skew_information
from .states import DensityMatrix, PureState

log = logging.getLogger(__name__)

# how far the quadratic-form value may drift from the direct re-evaluation
REEVAL_TOL = 1e-9
# full Cartesian seed grids above this many points are subsampled
GRID_CAP = 1 << 16


@dataclass(frozen=True)
class OptimizerConfig:
    grid_resolution: int = 4
    restarts: int = 32
    max_iterations: int = 500
    convergence_tolerance: float = 1e-8
    seed: int = 0

    def __post_init__(self):
        if self.grid_resolution < 2:
            raise ValidationError("grid_resolution must be >= 2")
        if self.restarts < 1 or self.max_iterations < 1:
            raise ValidationError("restarts and max_iterations must be positive")
        if not self.convergence_tolerance > 0:
            raise ValidationError("convergence_tolerance must be > 0")


@dataclass
class OptimizationResult:
    value: float
    best_observables: list[BlochVector]
    best_angles: np.ndarray
    starts_evaluated: int
    converged: bool
    trace: list[float] = field(default_factory=list)
    direct_value: float = float("nan")


def _as_qubit_state(rho) -> DensityMatrix:
    if isinstance(rho, PureState):
        rho = rho.density()
    if not isinstance(rho, DensityMatrix):
        raise ValidationError("expected a DensityMatrix or PureState")
    if any(d != 2 for d in rho.dims):
        raise NonQubitSite(f"optimizer only handles qubit sites, got dims {rho.dims}")
    return rho


def skew_quadratic_form(rho) -> np.ndarray:
    """Real symmetric ``3n x 3n`` matrix ``Q`` with ``I(rho, sum a_j.sigma) = a^T Q a``."""
    rho = _as_qubit_state(rho)
    n = rho.n_sites
    ops = np.stack([embed(p, j, rho.dims) for j in range(n) for p in PAULIS])
    m = rho.matrix
    s = psd_sqrt(m)
    rp = m @ ops
    sp = s @ ops
    q = np.einsum("aij,bji->ab", rp, ops).real - np.einsum("aij,bji->ab", sp, sp).real
    return (q + q.T) / 2


def bloch_from_angles(angles) -> np.ndarray:
    """``(..., 2n)`` angles ``(theta_1, phi_1, ...)`` -> ``(..., 3n)`` stacked unit vectors."""
    angles = np.asarray(angles, dtype=float)
    th, ph = angles[..., 0::2], angles[..., 1::2]
    st = np.sin(th)
    vec = np.stack([st * np.cos(ph), st * np.sin(ph), np.cos(th)], axis=-1)
    return vec.reshape(*angles.shape[:-1], -1)


def evaluate_at(rho, angles: Sequence[float]) -> float:
    """Skew information of the local sum built from per-site ``(theta, phi)``."""
    rho = _as_qubit_state(rho)
    angles = np.asarray(angles, dtype=float)
    if angles.shape != (2 * rho.n_sites,):
        raise ValidationError(f"expected {2 * rho.n_sites} angles, got shape {angles.shape}")
    sites = [spin_from_bloch(BlochVector.from_angles(t, p)) for t, p in angles.reshape(-1, 2)]
    return skew_information(rho, local_sum_operator(sites, rho.dims)).value


def _seed_grid(n: int, res: int, rng: np.random.Generator) -> np.ndarray:
    thetas = np.linspace(0, np.pi, res)
    phis = np.arange(res) * (2 * np.pi / res)
    site_pts = np.array(list(itertools.product(thetas, phis)))  # (res^2, 2)
    n_full = len(site_pts) ** n
    if n_full <= GRID_CAP:
        idx = np.array(list(itertools.product(range(len(site_pts)), repeat=n)))
    else:
        # every site on the same grid point, plus a random subsample of the full grid
        sym = np.repeat(np.arange(len(site_pts))[:, None], n, axis=1)
        idx = np.vstack([sym, rng.integers(0, len(site_pts), size=(GRID_CAP - len(sym), n))])
    return site_pts[idx].reshape(len(idx), 2 * n)


def _start_sequence(q: np.ndarray, n: int, config: OptimizerConfig):
    """Start points: best grid points (by objective) interleaved with uniform
    random points. The sequence for ``restarts = R`` is a prefix of the one for
    ``R + 1``."""
    rng = np.random.default_rng(config.seed)
    grid = _seed_grid(n, config.grid_resolution, rng)
    a = bloch_from_angles(grid)
    vals = np.einsum("gi,ij,gj->g", a, q, a)
    order = np.argsort(-vals, kind="stable")
    starts = []
    g = 0
    for i in range(config.restarts):
        if i % 2 == 0 and g < len(order):
            starts.append(grid[order[g]])
            g += 1
        else:
            theta = np.arccos(rng.uniform(-1, 1, n))
            phi = rng.uniform(0, 2 * np.pi, n)
            starts.append(np.column_stack([theta, phi]).reshape(-1))
    return starts


def _frames(a: np.ndarray) -> np.ndarray:
    """Per-site rotations taking (1, 0, 0) to the given unit vectors, so the
    current point sits on the equator of a fresh angle chart."""
    n = len(a) // 3
    frames = np.empty((n, 3, 3))
    for j, u in enumerate(a.reshape(n, 3)):
        u = u / np.linalg.norm(u)
        helper = np.eye(3)[np.argmin(np.abs(u))]
        e1 = np.cross(u, helper)
        e1 /= np.linalg.norm(e1)
        frames[j] = np.column_stack([u, e1, np.cross(u, e1)])
    return frames


def _objective(q: np.ndarray):
    n = q.shape[0] // 3
    a = np.empty(3 * n)

    def neg(x):
        th, ph = x[0::2], x[1::2]
        st = np.sin(th)
        a[0::3] = st * np.cos(ph)
        a[1::3] = st * np.sin(ph)
        a[2::3] = np.cos(th)
        return -(a @ q @ a)

    return neg


def _local_search(q: np.ndarray, x0: np.ndarray, config: OptimizerConfig):
    """Nelder-Mead in global angles, then a polish in per-site rotated charts
    (the global chart is singular at the poles, where optima often sit).

    Returns ``(value, angles, converged)``; converged means the polish simplex
    ended with a value spread within ``convergence_tolerance``.
    """
    tol = config.convergence_tolerance
    adaptive = len(x0) > 4
    res = minimize(
        _objective(q),
        x0,
        method="Nelder-Mead",
        options=dict(maxiter=config.max_iterations, xatol=1e-4, fatol=tol, adaptive=adaptive),
    )
    n = len(x0) // 2
    frames = _frames(bloch_from_angles(res.x))
    rot = np.zeros_like(q)
    for j in range(n):
        rot[3 * j : 3 * j + 3, 3 * j : 3 * j + 3] = frames[j]
    y0 = np.tile([np.pi / 2, 0.0], n)
    pol = minimize(
        _objective(rot.T @ q @ rot),
        y0,
        method="Nelder-Mead",
        options=dict(
            maxiter=config.max_iterations,
            xatol=tol,
            fatol=tol,
            adaptive=adaptive,
            initial_simplex=np.vstack([y0, y0 + 1e-2 * np.eye(2 * n)]),
        ),
    )
    converged = bool(pol.success or np.ptp(pol.final_simplex[1]) <= tol)
    if pol.fun > res.fun:
        return -res.fun, res.x, converged
    vec = (rot @ bloch_from_angles(pol.x)).reshape(n, 3)
    x = np.column_stack(
        [np.arccos(np.clip(vec[:, 2], -1, 1)), np.arctan2(vec[:, 1], vec[:, 0]) % (2 * np.pi)]
    ).reshape(-1)
    return -pol.fun, x, converged


def nonlocal_skew_information(rho, config: OptimizerConfig | None = None) -> OptimizationResult:
    """Search lower bound on ``sup I(rho, A_1 + ... + A_n)`` over qubit spin observables."""
    config = config or OptimizerConfig()
    rho = _as_qubit_state(rho)
    n = rho.n_sites
    q = skew_quadratic_form(rho)

    best_val, best_x, best_conv = -np.inf, None, False
    trace = []
    starts = _start_sequence(q, n, config)
    for x0 in starts:
        val, x, conv = _local_search(q, x0, config)
        trace.append(float(val))
        if val > best_val:
            best_val, best_x, best_conv = val, x, conv

    direct = evaluate_at(rho, best_x)
    if abs(direct - best_val) > REEVAL_TOL * max(1.0, abs(best_val)):
        raise InconsistentResult(
            f"quadratic-form value {best_val!r} disagrees with direct evaluation {direct!r}"
        )
    value = max(float(best_val), 0.0)
    if value > n * n + 1e-6:
        raise InconsistentResult(f"value {value} exceeds the n^2 ceiling {n * n}")
    if not best_conv:
        log.warning("best restart did not meet the convergence tolerance")
    observables = [BlochVector.from_angles(t, p) for t, p in best_x.reshape(-1, 2)]
    return OptimizationResult(
        value=value,
        best_observables=observables,
        best_angles=best_x,
        starts_evaluated=len(starts),
        converged=best_conv,
        trace=trace,
        direct_value=direct,
    )
