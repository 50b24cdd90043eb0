"""Deterministic multi-start minimization for small box-constrained problems.

Starts come from a seeded scrambled Halton sequence. Each start runs an
adaptive Nelder-Mead simplex; all simplices advance in lockstep so that a
vectorized objective is called once per stage on a batch of points.
A start stops when its simplex diameter reaches ``tol`` or when it has used
``max_evals`` evaluations. Inequality constraints g(x) <= 0 enter through a
penalty, but only points that satisfy every constraint to 1e-9 can be
reported.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np
from scipy.optimize import minimize_scalar
from scipy.stats import qmc

PENALTY = 1e6
FEAS_TOL = 1e-9


class InfeasibleError(ValueError):
    pass


@dataclass(frozen=True)
class OptConfig:
    starts: int = 64
    max_evals: int = 2000
    tol: float = 1e-10
    seed: int = 0

    def __post_init__(self):
        if self.starts < 1:
            raise ValueError("starts must be >= 1")
        if not self.tol > 0:
            raise ValueError("tol must be > 0")
        if self.max_evals < 1:
            raise ValueError("max_evals must be >= 1")


@dataclass(frozen=True)
class OptResult:
    argmin: np.ndarray
    value: float
    converged: bool
    evals: int


def _batch(fun, vectorized):
    if vectorized:
        return lambda X: np.asarray(fun(X), dtype=float).reshape(len(X))
    return lambda X: np.array([fun(x) for x in X], dtype=float)


def _violation(constraints, X, vectorized):
    if not constraints:
        return np.zeros(len(X))
    total = np.zeros(len(X))
    for g in constraints:
        if vectorized:
            v = np.asarray(g(X), dtype=float).reshape(len(X), -1)
        else:
            v = np.array([np.atleast_1d(g(x)) for x in X], dtype=float)
        total += np.clip(v, 0.0, None).sum(axis=1)
    return total


def start_points(lower, upper, n, seed):
    lower = np.asarray(lower, float)
    upper = np.asarray(upper, float)
    u = qmc.Halton(d=len(lower), scramble=True, seed=seed).random(n)
    return lower + u * (upper - lower)


class _Evaluator:
    """Penalized batch evaluation with per-start best-feasible bookkeeping."""

    def __init__(self, fun, constraints, lower, upper, n_starts, vectorized):
        self.f = _batch(fun, vectorized)
        self.constraints = constraints
        self.vectorized = vectorized
        self.lower = lower
        self.span = upper - lower
        self.best_f = np.full(n_starts, np.inf)
        self.best_x = np.zeros((n_starts, len(lower)))
        self.evals = np.zeros(n_starts, dtype=int)

    def __call__(self, U, owner):
        X = self.lower + U * self.span
        with np.errstate(all="ignore"):
            raw = self.f(X)
        raw = np.where(np.isfinite(raw), raw, np.inf)
        viol = _violation(self.constraints, X, self.vectorized)
        feasible = (viol <= FEAS_TOL) & np.isfinite(raw)
        np.add.at(self.evals, owner, 1)
        fi = np.nonzero(feasible)[0]
        if fi.size:
            # per owner, the smallest value in this batch (earliest on ties)
            srt = np.lexsort((fi, raw[fi], owner[fi]))
            o = owner[fi][srt]
            first = np.r_[True, o[1:] != o[:-1]]
            sel = fi[srt][first]
            k = owner[sel]
            better = raw[sel] < self.best_f[k]
            self.best_f[k[better]] = raw[sel][better]
            self.best_x[k[better]] = X[sel][better]
        return raw + PENALTY * viol


def minimize(
    objective: Callable,
    lower: Sequence[float],
    upper: Sequence[float],
    constraints: Sequence[Callable] = (),
    config: OptConfig = OptConfig(),
    vectorized: bool = False,
    x0: np.ndarray | None = None,
) -> OptResult:
    """Minimize over the box [lower, upper] subject to g(x) <= 0 for each constraint.

    With ``vectorized=True`` the objective and constraints receive an (n, d)
    array. Extra starting points may be supplied through ``x0``.
    """
    runs = multistart(objective, lower, upper, constraints, config, vectorized, x0)
    ok = np.isfinite(runs.values)
    if not ok.any():
        raise InfeasibleError("no feasible point found")
    # lexicographic (value, argmin) reduction for determinism
    win = min((runs.values[k], tuple(runs.argmins[k]), k) for k in np.nonzero(ok)[0])[2]
    return OptResult(runs.argmins[win].copy(), float(runs.values[win]), bool(runs.converged[win]), runs.evals)


@dataclass(frozen=True)
class MultiStartResult:
    """Best feasible point of every start (value is inf when none was feasible)."""

    values: np.ndarray
    argmins: np.ndarray
    converged: np.ndarray
    evals: int


def multistart(
    objective: Callable,
    lower: Sequence[float],
    upper: Sequence[float],
    constraints: Sequence[Callable] = (),
    config: OptConfig = OptConfig(),
    vectorized: bool = False,
    x0: np.ndarray | None = None,
    step: float = 0.1,
) -> MultiStartResult:
    """Run every start to completion; ``step`` is the initial simplex edge in box units."""
    lower = np.atleast_1d(np.asarray(lower, dtype=float))
    upper = np.atleast_1d(np.asarray(upper, dtype=float))
    if lower.shape != upper.shape or np.any(~np.isfinite(lower)) or np.any(~np.isfinite(upper)):
        raise ValueError("bounds must be finite and of equal length")
    if np.any(lower > upper):
        raise InfeasibleError("empty feasible box")
    d = len(lower)
    span = upper - lower
    safe_span = np.where(span > 0, span, 1.0)

    X0 = start_points(lower, upper, config.starts, config.seed)
    if x0 is not None:
        X0 = np.vstack([np.clip(np.atleast_2d(x0), lower, upper), X0])
    U0 = np.where(span > 0, (X0 - lower) / safe_span, 0.0)
    S = len(U0)
    ev = _Evaluator(objective, list(constraints), lower, upper, S, vectorized)

    # adaptive coefficients (Gao and Han) behave better beyond two dimensions
    n = max(d, 1)
    rho, chi, gam, sig = 1.0, 1.0 + 2.0 / n, 0.75 - 0.5 / n, 1.0 - 1.0 / n
    if n == 1:
        chi, gam, sig = 2.0, 0.5, 0.5

    step = np.where(span > 0, step, 0.0)
    simplex = np.repeat(U0[:, None, :], d + 1, axis=1)
    for j in range(d):
        up = U0[:, j] + step[j]
        simplex[:, j + 1, j] = np.where(up <= 1.0, up, U0[:, j] - step[j])
    owners = np.repeat(np.arange(S), d + 1)
    F = ev(simplex.reshape(-1, d), owners).reshape(S, d + 1)

    active = np.ones(S, dtype=bool)
    converged = np.zeros(S, dtype=bool)
    while True:
        diam = np.abs(simplex - simplex[:, :1, :]).max(axis=(1, 2))
        converged |= active & (diam <= config.tol)
        active &= ~converged & (ev.evals < config.max_evals)
        idx = np.nonzero(active)[0]
        if idx.size == 0:
            break
        order = np.argsort(F[idx], axis=1, kind="stable")
        Xs = np.take_along_axis(simplex[idx], order[:, :, None], axis=1)
        Fs = np.take_along_axis(F[idx], order, axis=1)
        fb, fsw, fw = Fs[:, 0], Fs[:, -2], Fs[:, -1]
        cen = Xs[:, :-1].mean(axis=1)
        dirn = cen - Xs[:, -1]

        xr = np.clip(cen + rho * dirn, 0.0, 1.0)
        fr = ev(xr, idx)

        expand = fr < fb
        outside = (fr >= fsw) & (fr < fw)
        inside = fr >= fw
        second = expand | outside | inside
        trial = np.where(
            expand[:, None],
            cen + rho * chi * dirn,
            np.where(outside[:, None], cen + rho * gam * dirn, cen - gam * dirn),
        )
        trial = np.clip(trial, 0.0, 1.0)
        ft = np.full(len(idx), np.inf)
        if second.any():
            ft[second] = ev(trial[second], idx[second])

        new_x = xr.copy()
        new_f = fr.copy()
        take_e = expand & (ft < fr)
        new_x[take_e], new_f[take_e] = trial[take_e], ft[take_e]
        take_c = (outside & (ft <= fr)) | (inside & (ft < fw))
        new_x[take_c], new_f[take_c] = trial[take_c], ft[take_c]
        shrink = (outside | inside) & ~take_c

        Xs[:, -1] = new_x
        Fs[:, -1] = new_f
        if shrink.any():
            sh = np.nonzero(shrink)[0]
            best = Xs[sh, :1, :]
            Xs[sh, 1:] = best + sig * (Xs[sh, 1:] - best)
            pts = Xs[sh, 1:].reshape(-1, d)
            Fs[sh, 1:] = ev(pts, np.repeat(idx[sh], d)).reshape(len(sh), d)
        simplex[idx] = Xs
        F[idx] = Fs

    return MultiStartResult(ev.best_f, ev.best_x, converged, int(ev.evals.sum()))


def grid_refine(
    objective: Callable,
    lower: Sequence[float],
    upper: Sequence[float],
    levels: int = 3,
    points: int = 101,
    vectorized: bool = False,
    polish: bool = False,
) -> OptResult:
    """Nested uniform grids on a 1-D or 2-D box.

    Each level recentres a grid of ``points`` per axis on the current best
    point, spanning one cell on either side. ``polish`` adds a bounded Brent
    search on the final bracket (1-D only).
    """
    lo = np.atleast_1d(np.asarray(lower, dtype=float)).copy()
    hi = np.atleast_1d(np.asarray(upper, dtype=float)).copy()
    d = len(lo)
    if d not in (1, 2):
        raise ValueError("grid_refine supports 1-D or 2-D domains")
    f = _batch(objective, vectorized)
    lo0, hi0 = lo.copy(), hi.copy()
    best_x, best_f, evals = None, np.inf, 0
    for _ in range(levels):
        axes = [np.linspace(lo[k], hi[k], points) for k in range(d)]
        mesh = np.stack([m.ravel() for m in np.meshgrid(*axes, indexing="ij")], axis=1)
        vals = f(mesh)
        evals += len(mesh)
        vals = np.where(np.isfinite(vals), vals, np.inf)
        i = int(np.argmin(vals))
        if vals[i] < best_f or best_x is None:
            best_f, best_x = float(vals[i]), mesh[i].copy()
        h = (hi - lo) / (points - 1)
        lo = np.maximum(lo0, best_x - h)
        hi = np.minimum(hi0, best_x + h)
    if polish and d == 1 and hi[0] > lo[0]:
        res = minimize_scalar(
            lambda t: float(f(np.array([[t]]))[0]),
            bounds=(lo[0], hi[0]),
            method="bounded",
            options={"xatol": 1e-13, "maxiter": 500},
        )
        evals += int(res.nfev)
        if res.fun < best_f:
            best_f, best_x = float(res.fun), np.array([res.x])
    return OptResult(best_x, best_f, True, evals)
