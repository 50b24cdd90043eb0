"""Outer bounds on the capacity region.

Regions are returned as PolyRegion outer approximations: swept families of
boxes are replaced by their tangent half-planes on a direction grid, which
can only enlarge the region. Optimization-based bounds are weighted-rate
upper bounds sigma(mu, 1) >= mu R1 + R2, returned in bits.

The admissible-channel programs are solved over a unit box that is mapped
onto each program's feasible set, so the simplex search never leaves it.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .channel import (
    ChannelParams,
    DispatchError,
    gamma,
    gamma_unchecked as _g,
    is_mixed_standard,
    is_strong,
    is_weak,
)
from .extremal import TWO_PI_E, fh_array, weighted_fh_array
from .geometry import BoundCurve, Direction, PolyRegion, direction_grid, dual_from_support, intersect
from .optimizer import OptConfig, OptResult, grid_refine, minimize

G_RANGE = (1e-8, 9.0)
STRICT = 1e-9
LOG2_2PIE = math.log2(TWO_PI_E)


def _c(direction) -> np.ndarray:
    return direction.as_array() if isinstance(direction, Direction) else np.asarray(direction, dtype=float)


# --- exact and closed-form regions -------------------------------------------


def strong_region(params: ChannelParams) -> PolyRegion:
    """Capacity region of the strong channel."""
    if not is_strong(params):
        raise DispatchError("strong_region needs a >= 1 and b >= 1")
    p1, p2, a, b = params.p1, params.p2, params.a, params.b
    s = min(gamma(p1 + a * p2), gamma(b * p1 + p2))
    return PolyRegion([[1, 0, gamma(p1)], [0, 1, gamma(p2)], [1, 1, s]])


def etw_region(params: ChannelParams) -> PolyRegion:
    """Genie-aided outer bound of Etkin, Tse and Wang for weak channels."""
    p1, p2, a, b = params.p1, params.p2, params.a, params.b
    if not (0 <= a < 1 and 0 <= b < 1):
        raise DispatchError("etw_region needs 0 <= a, b < 1")
    rows = [
        [1, 0, gamma(p1)],
        [0, 1, gamma(p2)],
        [1, 1, gamma(p1) + gamma(p2 / (1 + b * p1))],
        [1, 1, gamma(p2) + gamma(p1 / (1 + a * p2))],
        [1, 1, gamma(a * p2 + p1 / (1 + b * p1)) + gamma(b * p1 + p2 / (1 + a * p2))],
        [2, 1, gamma(p1 + a * p2) + gamma(b * p1 + p2 / (1 + a * p2)) + 0.5 * math.log2((1 + p1) / (1 + b * p1))],
        [1, 2, gamma(b * p1 + p2) + gamma(a * p2 + p1 / (1 + b * p1)) + 0.5 * math.log2((1 + p2) / (1 + a * p2))],
    ]
    return PolyRegion(rows)


def sweep_corners(total: float, a: float, betas) -> np.ndarray:
    """Box corners (R1, R2) of the one-sided sweep with P = total.

    R1 <= gamma((1-beta) P / (beta P + 1/a)), R2 <= gamma(beta P).
    """
    bt = np.asarray(betas, dtype=float)
    r1 = _g((1.0 - bt) * total / (bt * total + 1.0 / a))
    r2 = _g(bt * total)
    return np.column_stack([r1, r2])


def sweep_support(total: float, a: float, direction) -> float:
    """Exact support of the union of sweep boxes over beta in [0, 1].

    Along beta the weighted rate has a single stationary point,
    beta = (c2/a - c1) / (P (c1 - c2)); it is a maximum when c1 > c2.
    """
    c1, c2 = _c(direction)
    cand = [0.0, 1.0]
    if c1 > c2 and total > 0:
        cand.append(min(1.0, max(0.0, (c2 / a - c1) / (total * (c1 - c2)))))
    pts = sweep_corners(total, a, cand)
    return float(np.max(pts @ np.array([c1, c2])))


def sweep_support_numeric(total: float, a: float, direction) -> float:
    """Same support by refined grid search over beta, as an independent check."""
    c = _c(direction)
    res = grid_refine(lambda X: -(sweep_corners(total, a, X[:, 0]) @ c), [0.0], [1.0], vectorized=True, polish=True)
    return -res.value


def _sweep_region(total: float, a: float, caps, directions) -> PolyRegion:
    dirs = list(directions)
    vals = [sweep_support(total, a, d) for d in dirs]
    tangent = dual_from_support(dirs, vals)
    return intersect([tangent, PolyRegion(caps)])


def _require_weak(params):
    if params.a == 0 or params.b == 0:
        raise DispatchError("a one-sided channel has no Kramer bound here; use sato_region")
    if not is_weak(params):
        raise DispatchError("bound needs a weak channel (0 < a, b < 1)")


def kramer_e1(params: ChannelParams, directions=None) -> PolyRegion:
    """Receiver-1 one-sided bound: the sweep with P' = P1/a + P2, capped at R1 <= gamma(P1).

    The cap is what restricts the sweep to beta >= beta_max.
    """
    directions = direction_grid() if directions is None else directions
    p1, p2, a = params.p1, params.p2, params.a
    return _sweep_region(p1 / a + p2, a, [[1, 0, gamma(p1)]], directions)


def kramer_region(params: ChannelParams, directions=None) -> PolyRegion:
    _require_weak(params)
    directions = direction_grid() if directions is None else list(directions)
    e1 = kramer_e1(params, directions)
    # receiver 2's bound is the mirror image: swap users, then swap coordinates
    m = kramer_e1(params.swapped(), [Direction(d.c2, d.c1) if isinstance(d, Direction) else d[::-1] for d in directions])
    e2 = PolyRegion(m.halfplanes[:, [1, 0, 2]])
    return intersect([e1, e2])


def kramer_beta_max(params: ChannelParams) -> float:
    p1, p2, a = params.p1, params.p2, params.a
    total = p1 / a + p2
    return p2 / (total * (1.0 + p1))


# --- one-sided channel --------------------------------------------------------


def _require_one_sided_weak(params):
    if params.b != 0 or not 0 < params.a < 1:
        raise DispatchError("Sato bound needs b = 0 and 0 < a < 1")


def sato_region(params: ChannelParams, directions=None) -> PolyRegion:
    _require_one_sided_weak(params)
    directions = direction_grid() if directions is None else directions
    total = params.p1 / params.a + params.p2
    dirs = list(directions)
    return dual_from_support(dirs, [sweep_support(total, params.a, d) for d in dirs])


def sato_support(params: ChannelParams, direction) -> float:
    _require_one_sided_weak(params)
    return sweep_support(params.p1 / params.a + params.p2, params.a, direction)


def sato_mu_interval(params: ChannelParams) -> tuple[float, float]:
    """Open-closed interval of mu on which the closed form applies."""
    _require_one_sided_weak(params)
    a, p2 = params.a, params.p2
    return (p2 + 1.0 / a) / (p2 + 1.0), 1.0 / a


def sato_closed_form(params: ChannelParams, mu: float) -> float:
    """Support at (mu, 1) for mu inside sato_mu_interval."""
    lo, hi = sato_mu_interval(params)
    if not lo < mu <= hi:
        raise ValueError(f"closed form holds for {lo} < mu <= {hi}, got {mu}")
    a = params.a
    total = params.p1 / a + params.p2
    return 0.5 * mu * math.log2((a * total + 1) * (mu - 1) / (mu * (1 - a))) + 0.5 * math.log2((1 / a - 1) / (mu - 1))


def sato_beta_star(params: ChannelParams, mu: float) -> float:
    """Maximizing sweep parameter at (mu, 1), before clipping to [0, 1]."""
    a = params.a
    total = params.p1 / a + params.p2
    return (1.0 / a - mu) / (total * (mu - 1.0))


def one_sided_outer_support(params: ChannelParams, mu: float) -> float:
    """mu R1 + R2 bound from the extremal inequality, valid for every mu >= 1."""
    _require_one_sided_weak(params)
    p1, p2, a = params.p1, params.p2, params.a
    return 0.5 * mu * math.log2(TWO_PI_E * (p1 + a * p2 + 1)) - 0.5 * LOG2_2PIE + fh_array(p2, 1.0, 1.0, a, mu)


# --- admissible-channel programs for weak channels ------------------------------


@dataclass(frozen=True)
class ProgramResult:
    value: float
    variables: dict
    converged: bool


def w1_objective(params: ChannelParams, mu: float):
    """Vectorized W1 objective on the unit box (t, g2, t_s).

    mu1 = t mu, mu2 = mu - mu1 and S = t_s min(1 - b, (1 - sqrt g2)^2 / a).
    """
    p1, p2, a, b = params.p1, params.p2, params.a, params.b

    def decode(X):
        mu1 = X[:, 0] * mu
        g2 = X[:, 1]
        q = (1.0 - np.sqrt(g2)) ** 2
        s = X[:, 2] * np.minimum(1.0 - b, q / a)
        return mu1, mu - mu1, g2, q, s

    def f(X):
        mu1, mu2, g2, q, s = decode(X)
        with np.errstate(divide="ignore", invalid="ignore"):
            out = (
                0.5 * mu1 * np.log2(TWO_PI_E * (p1 + a * p2 + 1.0))
                + 0.5 * np.log2(q * ((1.0 - s + b * p1) / (g2 * s) + p2 / (q * p2 + s)))
                + weighted_fh_array(mu2, p1, 1.0, (1.0 - s) / g2, b / g2)
                + fh_array(p2, s / q, 1.0, a, mu1)
                - 0.5 * mu2 * LOG2_2PIE
            )
        return np.where(np.isfinite(out), out, np.inf)

    return f, decode


def w1_raw_objective(params: ChannelParams, mu1, mu2, b_prime, n22, n21):
    """W1 objective in the admissible-channel variables (scalar inputs)."""
    p1, p2, a = params.p1, params.p2, params.a
    return (
        0.5 * mu1 * math.log2(TWO_PI_E * (p1 + a * p2 + 1))
        - 0.5 * mu2 * LOG2_2PIE
        + 0.5 * math.log2(n21 / n22 + b_prime * p1 / n22 + p2 / (p2 + n22))
        + float(weighted_fh_array(mu2, p1, 1.0, n21, b_prime))
        + float(fh_array(p2, n22, 1.0, a, mu1))
    )


def _box_g(lo_rest, hi_rest):
    lo = np.array([G_RANGE[0], *lo_rest])
    hi = np.array([G_RANGE[1], *hi_rest])
    return lo, hi


def weak_w1(params: ChannelParams, mu: float, config: OptConfig = OptConfig()) -> ProgramResult:
    _require_weak(params)
    if mu < 1:
        raise ValueError("mu must be >= 1")
    f, decode = w1_objective(params, mu)
    lo = np.array([0.0, G_RANGE[0], 0.0])
    hi = np.array([1.0, G_RANGE[1], 1.0])
    res = minimize(f, lo, hi, config=config, vectorized=True)
    mu1, mu2, g2, _, s = (float(v[0]) for v in decode(res.argmin[None, :]))
    return ProgramResult(res.value, {"mu1": mu1, "mu2": mu2, "g2": g2, "s": s}, res.converged)


def w2_objective(params: ChannelParams, mu: float):
    """Vectorized W2 objective on the box (g1, g2, t1, t2).

    With A = a/(1-sqrt g2)^2 and B = b/(1-sqrt g1)^2 the constraints read
    B u <= 1 - v and A v <= 1 - u for u = 1 - S1, v = 1 - S2; the map
    u = t1 min(1, 1/B), v = t2 min((1-u)/A, 1 - B u, 1) covers exactly that set.
    """
    p1, p2, a, b = params.p1, params.p2, params.a, params.b

    def decode(X):
        g1, g2 = X[:, 0], X[:, 1]
        q1 = (1.0 - np.sqrt(g1)) ** 2
        q2 = (1.0 - np.sqrt(g2)) ** 2
        with np.errstate(divide="ignore", invalid="ignore"):
            u = X[:, 2] * np.minimum(1.0, q1 / b)
            v = X[:, 3] * np.minimum(np.minimum((1.0 - u) * q2 / a, 1.0 - b * u / q1), 1.0)
        return g1, g2, q1, q2, 1.0 - u, 1.0 - v

    def f(X):
        g1, g2, q1, q2, s1, s2 = decode(X)
        u, v = 1.0 - s1, 1.0 - s2
        with np.errstate(divide="ignore", invalid="ignore"):
            n22 = v / q2
            out = (
                mu * _g(q1 * p1 / u + g1 * p1 / (a * p2 + s1))
                + _g(q2 * p2 / v + g2 * p2 / (b * p1 + s2))
                + fh_array(p2, n22, s1 / g1, a / g1, mu)
                + 0.5 * mu * np.log2(TWO_PI_E * (a * p2 + s1) / g1)
                - 0.5 * np.log2(TWO_PI_E * (p2 + n22))
            )
        return np.where(np.isfinite(out), out, np.inf)

    return f, decode


def weak_w2(params: ChannelParams, mu: float, config: OptConfig = OptConfig()) -> ProgramResult:
    _require_weak(params)
    if mu < 1:
        raise ValueError("mu must be >= 1")
    f, decode = w2_objective(params, mu)
    lo = np.array([G_RANGE[0], G_RANGE[0], STRICT, STRICT])
    hi = np.array([G_RANGE[1], G_RANGE[1], 1.0, 1.0])
    res = minimize(f, lo, hi, config=config, vectorized=True)
    g1, g2, _, _, s1, s2 = (float(v[0]) for v in decode(res.argmin[None, :]))
    return ProgramResult(res.value, {"g1": g1, "g2": g2, "s1": s1, "s2": s2}, res.converged)


def sum_program(params: ChannelParams, config: OptConfig = OptConfig()) -> ProgramResult:
    """Minimized sum-rate program over (g1, g2, S1, S2); upper-bounds the sum capacity.

    Its objective is the first two terms of W2 at mu = 1, where the other
    terms cancel exactly.
    """
    _require_weak(params)
    p1, p2, a, b = params.p1, params.p2, params.a, params.b
    _, decode = w2_objective(params, 1.0)

    def f(X):
        g1, g2, q1, q2, s1, s2 = decode(X)
        with np.errstate(divide="ignore", invalid="ignore"):
            out = _g(q1 * p1 / (1 - s1) + g1 * p1 / (a * p2 + s1)) + _g(q2 * p2 / (1 - s2) + g2 * p2 / (b * p1 + s2))
        return np.where(np.isfinite(out), out, np.inf)

    lo = np.array([G_RANGE[0], G_RANGE[0], STRICT, STRICT])
    hi = np.array([G_RANGE[1], G_RANGE[1], 1.0, 1.0])
    res = minimize(f, lo, hi, config=config, vectorized=True)
    g1, g2, _, _, s1, s2 = (float(v[0]) for v in decode(res.argmin[None, :]))
    return ProgramResult(res.value, {"g1": g1, "g2": g2, "s1": s1, "s2": s2}, res.converged)


def _weak_w(params, mu, config):
    r1 = weak_w1(params, mu, config)
    r2 = weak_w2(params, mu, config)
    return min(r1.value, r2.value), r1.converged and r2.converged


def weak_outer_support(params: ChannelParams, direction, config: OptConfig = OptConfig()) -> float:
    """min(W1, W2) at (mu, 1); the role-swapped programs at (1, mu)."""
    _require_weak(params)
    c1, c2 = _c(direction)
    if c2 == 0:
        return c1 * gamma(params.p1)
    if c1 == 0:
        return c2 * gamma(params.p2)
    if c1 >= c2:
        return c2 * _weak_w(params, c1 / c2, config)[0]
    return c1 * _weak_w(params.swapped(), c2 / c1, config)[0]


def weak_outer_curves(params: ChannelParams, mus, config: OptConfig = OptConfig()) -> tuple[BoundCurve, BoundCurve]:
    mus = np.asarray(mus, dtype=float)
    w = [_weak_w(params, m, config)[0] for m in mus]
    # a symmetric channel is its own mirror image
    wt = w if params.swapped() == params else [_weak_w(params.swapped(), m, config)[0] for m in mus]
    return BoundCurve(mus, np.array(w), "mu_1"), BoundCurve(mus, np.array(wt), "1_mu")


def combine_sum(mu1, mu2, w, w_tilde) -> float:
    """Sum-rate bound from mu1 R1 + R2 <= w and R1 + mu2 R2 <= w_tilde."""
    return ((mu2 - 1.0) * w + (mu1 - 1.0) * w_tilde) / (mu1 * mu2 - 1.0)


def weak_sum_upper(params: ChannelParams, mus, config: OptConfig = OptConfig()) -> float:
    """Best sum-rate bound over pairs from the grid; pairs with mu1 = mu2 = 1 are skipped."""
    mus = np.asarray(mus, dtype=float)
    if np.any(mus < 1):
        raise ValueError("grid values must be >= 1")
    w, wt = weak_outer_curves(params, mus, config)
    best = np.inf
    for m1, v1 in zip(mus, w.values):
        for m2, v2 in zip(mus, wt.values):
            if m1 * m2 > 1:
                best = min(best, combine_sum(m1, m2, v1, v2))
    if not np.isfinite(best):
        raise ValueError("grid needs at least one pair with mu1 * mu2 > 1")
    return float(best)


# --- mixed channel (0 < a < 1 <= b) ---------------------------------------------


def _require_mixed(params):
    if not is_mixed_standard(params):
        raise DispatchError("mixed bounds need 0 < a < 1 <= b (swap users for a >= 1 > b)")


def mixed_outer_region(params: ChannelParams, directions=None) -> PolyRegion:
    """E1 from the weak receiver intersected with the strong one-sided capacity region."""
    _require_mixed(params)
    p1, p2, b = params.p1, params.p2, params.b
    e2 = PolyRegion([[1, 0, gamma(b * p1)], [0, 1, gamma(p2)], [1, 1, gamma(b * p1 + p2)]])
    return intersect([kramer_e1(params, directions), e2])


def mixed_w_objective(params: ChannelParams, mu: float):
    """Vectorized mixed W objective on (g2, t) with S = lo + t (1 - 1e-9 - lo)."""
    p1, p2, a, b = params.p1, params.p2, params.a, params.b

    def decode(X):
        g2 = X[:, 0]
        q = (1.0 - np.sqrt(g2)) ** 2
        lo = np.maximum(0.0, 1.0 - q / a)
        s = lo + X[:, 1] * (1.0 - STRICT - lo)
        return g2, q, s

    def f(X):
        g2, q, s = decode(X)
        with np.errstate(divide="ignore", invalid="ignore"):
            n22 = (1.0 - s) / q
            out = (
                0.5 * (mu - 1.0) * np.log2(TWO_PI_E * (p1 + a * p2 + 1.0))
                + 0.5 * np.log2(TWO_PI_E * (p2 * (1.0 - s) / (q * p2 + 1.0 - s) + (b * p1 + s) / g2))
                - 0.5 * np.log2(TWO_PI_E * s / g2)
                - 0.5 * np.log2(TWO_PI_E * n22)
                + fh_array(p2, n22, 1.0, a, mu - 1.0)
            )
        return np.where(np.isfinite(out), out, np.inf)

    return f, decode


def mixed_w(params: ChannelParams, mu: float, config: OptConfig = OptConfig()) -> ProgramResult:
    _require_mixed(params)
    if mu < 1:
        raise ValueError("mu must be >= 1")
    f, decode = mixed_w_objective(params, mu)
    res: OptResult = minimize(f, [G_RANGE[0], 0.0], [G_RANGE[1], 1.0], config=config, vectorized=True)
    g2, _, s = (float(v[0]) for v in decode(res.argmin[None, :]))
    return ProgramResult(res.value, {"g2": g2, "s": s}, res.converged)


def mixed_outer(params: ChannelParams, mu: float, config: OptConfig = OptConfig()) -> tuple[PolyRegion, float]:
    return mixed_outer_region(params), mixed_w(params, mu, config).value


def mixed_outer_support(params: ChannelParams, direction, config: OptConfig = OptConfig()) -> float:
    """Best available bound at a direction: the region, and W where it applies."""
    region = mixed_outer_region(params)
    c1, c2 = _c(direction)
    val = region.support(np.array([c1, c2]))
    if c1 >= c2 > 0:
        val = min(val, c2 * mixed_w(params, c1 / c2, config).value)
    return float(val)


# --- bundle ---------------------------------------------------------------------


@dataclass(frozen=True)
class OuterBoundSet:
    kramer: PolyRegion | None = None
    etw: PolyRegion | None = None
    new_weak: tuple | None = None
    sato: PolyRegion | None = None
    mixed: tuple | None = None


def outer_bound_set(params: ChannelParams, mus, config: OptConfig = OptConfig()) -> OuterBoundSet:
    """Every outer bound that applies to the channel's class."""
    if is_weak(params):
        return OuterBoundSet(
            kramer=kramer_region(params), etw=etw_region(params), new_weak=weak_outer_curves(params, mus, config)
        )
    if params.b == 0 and 0 < params.a < 1:
        return OuterBoundSet(sato=sato_region(params))
    if is_mixed_standard(params):
        curve = BoundCurve(np.asarray(mus, float), np.array([mixed_w(params, m, config).value for m in mus]), "mu_1")
        return OuterBoundSet(mixed=(mixed_outer_region(params), curve))
    raise DispatchError("no outer bound family implemented for this channel class")
