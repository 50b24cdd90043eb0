"""Exact sum capacities and the conditions under which they are known."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .channel import ChannelParams, DispatchError, gamma, is_mixed_standard, is_strong, is_weak
from .optimizer import OptConfig, grid_refine


@dataclass(frozen=True)
class SumCapacityResult:
    value: float | None
    regime: str
    witness: str | None = None
    bounds: dict = field(default_factory=dict)
    swapped: bool = False

    def __post_init__(self):
        if (self.value is None) != (self.regime == "unknown"):
            raise ValueError("value must be present exactly when the regime is known")

    def to_json(self) -> dict:
        out = {"value": "unknown" if self.value is None else self.value, "regime": self.regime}
        if self.witness:
            out["witness"] = self.witness
        if self.bounds:
            out["bounds"] = dict(self.bounds)
        if self.swapped:
            out["users_swapped"] = True
        return out


def treat_as_noise_sum(params: ChannelParams) -> float:
    p1, p2, a, b = params.p1, params.p2, params.a, params.b
    return gamma(p1 / (1 + a * p2)) + gamma(p2 / (1 + b * p1))


def _require_weak(params):
    if not is_weak(params):
        raise DispatchError("needs a weak channel (0 < a, b < 1)")


def noisy_threshold(params: ChannelParams) -> float:
    """Right-hand side of the noisy-interference condition (may be <= 0)."""
    _require_weak(params)
    ra, rb = math.sqrt(params.a), math.sqrt(params.b)
    return (1 - ra - rb) / (ra * rb)


def weak_noisy_condition(params: ChannelParams) -> bool:
    """sqrt(b) P1 + sqrt(a) P2 <= (1 - sqrt a - sqrt b)/sqrt(ab); empty unless sqrt a + sqrt b < 1."""
    _require_weak(params)
    ra, rb = math.sqrt(params.a), math.sqrt(params.b)
    if ra + rb >= 1:
        return False
    return rb * params.p1 + ra * params.p2 <= noisy_threshold(params)


def _trivial_power(params) -> SumCapacityResult | None:
    if params.p1 > 0 and params.p2 > 0:
        return None
    regime = "zero_power" if params.p1 == params.p2 == 0 else "single_user"
    return SumCapacityResult(treat_as_noise_sum(params), regime, "single-user coding")


def weak_sum_capacity(params: ChannelParams, upper_bound=None) -> SumCapacityResult:
    """Treat-as-noise sum when the noisy-interference condition holds.

    ``upper_bound`` is an optional callable params -> bits used to report a
    bracket when the sum capacity is unknown.
    """
    _require_weak(params)
    trivial = _trivial_power(params)
    if trivial:
        return trivial
    tan = treat_as_noise_sum(params)
    if weak_noisy_condition(params):
        return SumCapacityResult(tan, "noisy_interference", "treat interference as noise")
    bounds = {"lower": tan}
    if upper_bound is not None:
        bounds["upper"] = float(upper_bound(params))
    return SumCapacityResult(None, "unknown", None, bounds)


# --- the noisy-interference region in (S1, S2) ---------------------------------------


def _grid(n):
    return (np.arange(n) + 0.5) / n


def d_region_feasible(params: ChannelParams, grid: int = 400) -> tuple[bool, bool]:
    """(membership in D by grid search over (S1, S2), membership in the closed form D')."""
    _require_weak(params)
    p1, p2, a, b = params.p1, params.p2, params.a, params.b
    s = _grid(grid)
    s1, s2 = np.meshgrid(s, s, indexing="ij")
    ok1 = p1 <= np.sqrt(s1 * (1 - s2)) / (b * math.sqrt(a)) - 1 / b
    ok2 = p2 <= np.sqrt(s2 * (1 - s1)) / (a * math.sqrt(b)) - 1 / a
    return bool(np.any(ok1 & ok2)), weak_noisy_condition(params)


def d_feasible_width(params: ChannelParams) -> float:
    """Length in S1 of the feasible stretch of the line S1 + S2 = 1.

    It equals sqrt(ab) times the slack of the closed-form condition and is
    negative outside D'.
    """
    _require_weak(params)
    p1, p2, a, b = params.p1, params.p2, params.a, params.b
    lo = math.sqrt(a) * (b * p1 + 1)
    hi = 1 - math.sqrt(b) * (a * p2 + 1)
    return hi - lo


def j_grid_max(a: float, b: float, grid: int = 400) -> float:
    """max over the grid of (sqrt(S1(1-S2)) + sqrt(S2(1-S1)))/sqrt(ab) - 1/sqrt(a) - 1/sqrt(b)."""
    s = _grid(grid)
    s1, s2 = np.meshgrid(s, s, indexing="ij")
    j = (np.sqrt(s1 * (1 - s2)) + np.sqrt(s2 * (1 - s1))) / math.sqrt(a * b)
    return float(j.max() - 1 / math.sqrt(a) - 1 / math.sqrt(b))


def j_closed_form(a: float, b: float) -> float:
    return 1 / math.sqrt(a * b) - 1 / math.sqrt(a) - 1 / math.sqrt(b)


def sum_program_inner(params: ChannelParams, s1, s2):
    """Sum-rate program value at fixed (S1, S2), minimized over g1 and g2 exactly.

    In t = sqrt(g) each term is a convex quadratic with minimizer
    t* = (aP2 + S1)/(1 + aP2) < 1; the constraint (1 - t)^2 >= c leaves
    t <= 1 - sqrt(c) (only when c <= 1) or t >= 1 + sqrt(c).
    """
    p1, p2, a, b = params.p1, params.p2, params.a, params.b
    s1, s2 = np.broadcast_arrays(np.asarray(s1, float), np.asarray(s2, float))

    def part(p, q, cross, s_own, s_other, g_other):
        c = g_other * (1 - s_own) / s_other
        t_star = (cross * q + s_own) / (1 + cross * q)
        rc = np.sqrt(c)
        t = np.where(c <= 1, np.minimum(t_star, 1 - rc), 1 + rc)
        return gamma((1 - t) ** 2 * p / (1 - s_own) + t**2 * p / (cross * q + s_own))

    return part(p1, p2, a, s1, s2, b) + part(p2, p1, b, s2, s1, a)


def sum_program_decomposed(params: ChannelParams) -> float:
    """Minimum of sum_program_inner over (S1, S2) in (0, 1)^2 by nested grids."""
    _require_weak(params)
    lo, hi = 1e-9, 1 - 1e-9
    res = grid_refine(lambda X: sum_program_inner(params, X[:, 0], X[:, 1]), [lo, lo], [hi, hi], levels=4, vectorized=True)
    return res.value


# --- other classes --------------------------------------------------------------------


def mixed_sum_capacity(params: ChannelParams) -> SumCapacityResult:
    """gamma(P2) + min(gamma(P1/(1+aP2)), gamma(bP1/(1+P2))) for 0 < a < 1 <= b."""
    if not is_mixed_standard(params):
        raise DispatchError("mixed sum capacity needs 0 < a < 1 <= b (swap users for a >= 1 > b)")
    p1, p2, a, b = params.p1, params.p2, params.a, params.b
    weak_side = gamma(p1 / (1 + a * p2))
    strong_side = gamma(b * p1 / (1 + p2))
    regime = "mixed_weak_side" if 1 + p2 <= b + a * b * p2 else "mixed_strong_side"
    return SumCapacityResult(gamma(p2) + min(weak_side, strong_side), regime, "user 1 sends only a common message")


def one_sided_sason_point(params: ChannelParams) -> tuple[float, float]:
    if params.b != 0 or not 0 <= params.a < 1:
        raise DispatchError("the Sason point needs b = 0 and 0 <= a < 1")
    return gamma(params.p1 / (1 + params.a * params.p2)), gamma(params.p2)


def strong_sum_capacity(params: ChannelParams) -> float:
    if not is_strong(params):
        raise DispatchError("strong sum capacity needs a >= 1 and b >= 1")
    p1, p2, a, b = params.p1, params.p2, params.a, params.b
    return min(gamma(p1 + a * p2), gamma(b * p1 + p2), gamma(p1) + gamma(p2))


def sum_capacity(params: ChannelParams, upper_bound=None) -> SumCapacityResult:
    """Dispatch on the channel class; mixed channels with a >= 1 > b are solved with users swapped."""
    trivial = _trivial_power(params)
    if trivial:
        return trivial
    a, b = params.a, params.b
    if a == 0 and b == 0:
        return SumCapacityResult(gamma(params.p1) + gamma(params.p2), "interference_free", "single-user coding")
    if b == 0 or a == 0:
        swap = a == 0
        q = params.swapped() if swap else params
        if q.a < 1:
            r1, r2 = one_sided_sason_point(q)
            return SumCapacityResult(r1 + r2, "one_sided_weak", "treat interference as noise", swapped=swap)
        value = min(gamma(q.p1 + q.a * q.p2), gamma(q.p1) + gamma(q.p2))
        return SumCapacityResult(value, "one_sided_strong", "decode interference", swapped=swap)
    if is_strong(params):
        return SumCapacityResult(strong_sum_capacity(params), "strong", "decode interference")
    if is_mixed_standard(params):
        return mixed_sum_capacity(params)
    if is_mixed_standard(params.swapped()):
        r = mixed_sum_capacity(params.swapped())
        return SumCapacityResult(r.value, r.regime, r.witness, r.bounds, swapped=True)
    return weak_sum_capacity(params, upper_bound)
