"""Standard-form Gaussian interference channel parameters and class labels.

Rates are in bits throughout: ``gamma(x) = 0.5 * log2(1 + x)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

LABEL_ORDER = ("weak", "strong", "mixed", "one_sided", "degraded", "symmetric")


class ChannelError(ValueError):
    """Invalid channel parameters."""


class DispatchError(ValueError):
    """Operation is not defined for the given channel class."""


def gamma(x):
    """Gaussian capacity 0.5*log2(1+x) in bits; accepts scalars or arrays."""
    arr = np.asarray(x, dtype=float)
    if not np.all(np.isfinite(arr)) or np.any(arr < 0):
        raise ValueError(f"gamma requires finite non-negative input, got {x!r}")
    out = 0.5 * np.log1p(arr) / math.log(2.0)
    return float(out) if out.ndim == 0 else out


def gamma_unchecked(x):
    # hot path for vectorized objectives; callers guarantee x >= 0
    return 0.5 * np.log1p(x) / math.log(2.0)


@dataclass(frozen=True)
class ChannelParams:
    p1: float
    p2: float
    a: float
    b: float

    def __post_init__(self):
        for name in ("p1", "p2", "a", "b"):
            v = getattr(self, name)
            if isinstance(v, bool) or not isinstance(v, (int, float, np.floating, np.integer)):
                raise ChannelError(f"{name} must be a real number, got {v!r}")
            v = float(v)
            if not math.isfinite(v) or v < 0:
                raise ChannelError(f"{name} must be finite and non-negative, got {v!r}")
            object.__setattr__(self, name, v)

    def swapped(self) -> ChannelParams:
        """Exchange the roles of the two users."""
        return ChannelParams(self.p2, self.p1, self.b, self.a)

    def as_dict(self) -> dict:
        return {"p1": self.p1, "p2": self.p2, "a": self.a, "b": self.b}


def validate(p1, p2, a, b) -> ChannelParams:
    return ChannelParams(p1, p2, a, b)


@dataclass(frozen=True)
class ChannelClass:
    labels: tuple

    def __contains__(self, label) -> bool:
        return label in self.labels

    def __iter__(self):
        return iter(self.labels)


def classify(params: ChannelParams) -> ChannelClass:
    a, b = params.a, params.b
    hits = {
        "weak": 0 < a < 1 and 0 < b < 1,
        "strong": a >= 1 and b >= 1,
        "mixed": (0 < a < 1 and b >= 1) or (0 < b < 1 and a >= 1),
        "one_sided": a == 0 or b == 0,
        "degraded": a * b == 1,
        "symmetric": a == b and params.p1 == params.p2,
    }
    return ChannelClass(tuple(k for k in LABEL_ORDER if hits[k]))


def is_weak(params: ChannelParams) -> bool:
    return 0 < params.a < 1 and 0 < params.b < 1


def is_strong(params: ChannelParams) -> bool:
    return params.a >= 1 and params.b >= 1


def is_mixed_standard(params: ChannelParams) -> bool:
    """Mixed with the weak link into receiver 1 (0 < a < 1 <= b)."""
    return 0 < params.a < 1 and params.b >= 1


def is_one_sided_weak(params: ChannelParams) -> bool:
    """b = 0 with a weak remaining link."""
    return params.b == 0 and 0 < params.a < 1
