"""Gaussian extremal problem: maximize h(X+Z1) - mu*h(sqrt(a)X+Z2) under a power budget.

All values are per dimension and in bits. ``f_h`` keeps the 2*pi*e factors
inside the logarithms; callers cancel them where needed.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

TWO_PI_E = 2.0 * math.pi * math.e


class ExtremalDomainError(ValueError):
    pass


@dataclass(frozen=True)
class ExtremalSolution:
    variance: float
    value: float


def _log2(x):
    return np.log2(x)


def _objective(lam, n1, n2, mu):
    return 0.5 * _log2(TWO_PI_E * (lam + n1)) - 0.5 * mu * _log2(TWO_PI_E * (lam + n2))


def _check_nonneg(**kw):
    for k, v in kw.items():
        if not math.isfinite(v) or v < 0:
            raise ExtremalDomainError(f"{k} must be finite and >= 0, got {v}")


def _check_pos(**kw):
    for k, v in kw.items():
        if not math.isfinite(v) or v <= 0:
            raise ExtremalDomainError(f"{k} must be finite and > 0, got {v}")


def extremal_variance(p: float, n1: float, n2: float, mu: float) -> ExtremalSolution:
    """Optimal per-dimension input variance and objective value."""
    _check_nonneg(p=p, mu=mu)
    _check_pos(n1=n1, n2=n2)
    if n1 > n2:
        if mu < 1:
            raise ExtremalDomainError("n1 > n2 requires mu >= 1")
        lam = 0.0
    elif mu <= (n2 + p) / (n1 + p):
        lam = float(p)
    elif mu <= n2 / n1:
        lam = (n2 - mu * n1) / (mu - 1.0)
    else:
        lam = 0.0
    return ExtremalSolution(lam, float(_objective(lam, n1, n2, mu)))


def worst_noise_gap(p: float, n1: float, n2: float) -> float:
    """Per-dimension optimum at mu = 1."""
    _check_nonneg(p=p)
    _check_pos(n1=n1, n2=n2)
    if n1 <= n2:
        return 0.5 * math.log2((p + n1) / (p + n2))
    return 0.5 * math.log2(n1 / n2)


def fh_array(p, n1, n2, a, mu):
    """Vectorized three-piece f_h without argument validation.

    Requires n1 <= n2/a elementwise; the breakpoints are
    mu = (p + n2/a)/(p + n1) and mu = n2/(a*n1).
    """
    p, n1, n2, a, mu = np.broadcast_arrays(*(np.asarray(v, dtype=float) for v in (p, n1, n2, a, mu)))
    t1 = (p + n2 / a) / (p + n1)
    t2 = n2 / (a * n1)
    r1 = mu <= t1
    r2 = (~r1) & (mu <= t2)
    with np.errstate(divide="ignore", invalid="ignore"):
        piece1 = 0.5 * _log2(TWO_PI_E * (p + n1)) - 0.5 * mu * _log2(TWO_PI_E * (a * p + n2))
        d = (n2 / a - n1) / (mu - 1.0)
        piece2 = 0.5 * _log2(TWO_PI_E * d) - 0.5 * mu * _log2(a * mu * TWO_PI_E * d)
        piece3 = 0.5 * _log2(TWO_PI_E * n1) - 0.5 * mu * _log2(TWO_PI_E * n2)
    out = np.where(r1, piece1, np.where(r2, piece2, piece3))
    return out if out.ndim else float(out)


def weighted_fh_array(w, p, n1, n2, a):
    """w * f_h(p, n1, n2, a, 1/w), continuous down to w = 0."""
    w, p, n1, n2, a = np.broadcast_arrays(*(np.asarray(v, dtype=float) for v in (w, p, n1, n2, a)))
    t1 = (p + n2 / a) / (p + n1)
    t2 = n2 / (a * n1)
    r1 = w * t1 >= 1.0
    r2 = (~r1) & (w * t2 >= 1.0)
    with np.errstate(divide="ignore", invalid="ignore"):
        piece1 = 0.5 * w * _log2(TWO_PI_E * (p + n1)) - 0.5 * _log2(TWO_PI_E * (a * p + n2))
        d = n2 / a - n1
        piece2 = 0.5 * w * _log2(TWO_PI_E * d * w / (1.0 - w)) - 0.5 * _log2(a * TWO_PI_E * d / (1.0 - w))
        # 0 * log(0) -> 0 as w -> 0
        piece3 = np.where(w > 0, 0.5 * w * _log2(TWO_PI_E * n1), 0.0) - 0.5 * _log2(TWO_PI_E * n2)
    out = np.where(r1, piece1, np.where(r2, piece2, piece3))
    return out if out.ndim else float(out)


def fh(p: float, n1: float, n2: float, a: float, mu: float) -> float:
    """Validated scalar f_h in bits."""
    _check_nonneg(p=p, mu=mu)
    _check_pos(n1=n1, n2=n2)
    if not math.isfinite(a) or a <= 0:
        raise ExtremalDomainError("f_h is undefined for a <= 0; use the one-sided closed forms")
    if n1 > n2 / a:
        raise ExtremalDomainError(f"f_h requires n1 <= n2/a, got n1={n1}, n2/a={n2 / a}")
    return float(fh_array(p, n1, n2, a, mu))


def fh_via_extremal(p: float, n1: float, n2: float, a: float, mu: float) -> float:
    """f_h through the scaled-noise extremal solution.

    Pulling sqrt(a) out of sqrt(a)X + Z2 costs (mu/2)*log2(a) per dimension.
    """
    return extremal_variance(p, n1, n2 / a, mu).value - 0.5 * mu * math.log2(a)
