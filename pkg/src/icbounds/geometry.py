"""Convex rate regions in the first quadrant as half-plane intersections.

A region is {R >= 0 : c1*R1 + c2*R2 <= d for every half-plane (c1, c2, d)}.
Coefficients are non-negative, so regions are closed downward and always
contain the origin. Vertices are a derived view computed from the lower
envelope of the constraint lines.
"""

from __future__ import annotations

import io
import json
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np

DEDUP_TOL = 1e-12
CONTAIN_TOL = 1e-9


class UnboundedRegionError(ValueError):
    pass


@dataclass(frozen=True)
class Direction:
    c1: float
    c2: float

    def __post_init__(self):
        c1, c2 = float(self.c1), float(self.c2)
        if not (np.isfinite(c1) and np.isfinite(c2)) or c1 < 0 or c2 < 0 or (c1 == 0 and c2 == 0):
            raise ValueError(f"direction must be non-negative and non-zero, got ({c1}, {c2})")
        object.__setattr__(self, "c1", c1)
        object.__setattr__(self, "c2", c2)

    @classmethod
    def mu_one(cls, mu: float) -> Direction:
        return cls(mu, 1.0)

    @classmethod
    def one_mu(cls, mu: float) -> Direction:
        return cls(1.0, mu)

    def as_array(self) -> np.ndarray:
        return np.array([self.c1, self.c2])


def direction_grid(n: int = 257, mu_max: float = 1e3) -> list[Direction]:
    """Axis directions plus log-spaced (mu,1) and (1,mu) families."""
    mus = np.logspace(0.0, np.log10(mu_max), n)
    dirs = [Direction(1.0, 0.0), Direction(0.0, 1.0), Direction(1.0, 1.0)]
    dirs += [Direction(m, 1.0) for m in mus[1:]]
    dirs += [Direction(1.0, m) for m in mus[1:]]
    return dirs


@dataclass(frozen=True, eq=False)
class PolyRegion:
    halfplanes: np.ndarray = field(repr=False)

    def __post_init__(self):
        hp = np.array(self.halfplanes, dtype=float).reshape(-1, 3)
        if not np.all(np.isfinite(hp)):
            raise ValueError("half-plane entries must be finite")
        if np.any(hp[:, :2] < 0):
            raise ValueError("half-plane normals must be non-negative")
        if np.any(hp[:, 2] < -CONTAIN_TOL):
            raise ValueError("offsets must be non-negative so the region contains the origin")
        if np.any((hp[:, 0] == 0) & (hp[:, 1] == 0)):
            raise ValueError("zero normal in half-plane list")
        hp[:, 2] = np.maximum(hp[:, 2], 0.0)
        hp.setflags(write=False)
        object.__setattr__(self, "halfplanes", hp)

    @classmethod
    def box(cls, x: float, y: float) -> PolyRegion:
        return cls([[1.0, 0.0, x], [0.0, 1.0, y]])

    @property
    def is_bounded(self) -> bool:
        hp = self.halfplanes
        return bool(np.any(hp[:, 0] > 0) and np.any(hp[:, 1] > 0))

    @cached_property
    def vertices(self) -> np.ndarray:
        """Extreme points in counterclockwise order starting at the origin."""
        if not self.is_bounded:
            raise UnboundedRegionError("region is unbounded")
        return _vertices(self.halfplanes)

    def support(self, direction) -> float:
        return support(self, direction)

    def contains(self, point, tol: float = CONTAIN_TOL) -> bool:
        return contains(self, point, tol)

    def to_json(self) -> dict:
        return {
            "halfplanes": [{"c1": float(c1), "c2": float(c2), "d": float(d)} for c1, c2, d in self.halfplanes],
            "vertices": [[float(x), float(y)] for x, y in self.vertices],
        }

    @classmethod
    def from_json(cls, obj) -> PolyRegion:
        if isinstance(obj, str):
            obj = json.loads(obj)
        return cls([[h["c1"], h["c2"], h["d"]] for h in obj["halfplanes"]])


def _vertices(hp: np.ndarray) -> np.ndarray:
    c1, c2, d = hp[:, 0], hp[:, 1], hp[:, 2]
    x_max = np.min(d[c1 > 0] / c1[c1 > 0])
    sloped = c2 > 0
    slope = -c1[sloped] / c2[sloped]
    icpt = d[sloped] / c2[sloped]

    # lower envelope of y = icpt + slope*x, slopes visited from flat to steep
    order = np.lexsort((icpt, -slope))
    lines: list[tuple[float, float]] = []
    for k in order:
        m, q = slope[k], icpt[k]
        if lines and lines[-1][0] == m:
            continue  # same slope, larger intercept
        while lines:
            m1, q1 = lines[-1]
            x_new = (q - q1) / (m1 - m)
            if len(lines) >= 2:
                m0, q0 = lines[-2]
                x_old = (q1 - q0) / (m0 - m1)
                if x_new <= x_old:
                    lines.pop()
                    continue
            elif x_new <= 0.0:
                lines.pop()
                continue
            break
        lines.append((m, q))

    def env(x):
        return min(q + m * x for m, q in lines)

    pts = [(0.0, 0.0), (x_max, 0.0)]
    top = max(env(x_max), 0.0)
    pts.append((x_max, top))
    breaks = []
    for (m0, q0), (m1, q1) in zip(lines[:-1], lines[1:]):
        x = (q1 - q0) / (m0 - m1)
        if 0.0 < x < x_max:
            breaks.append((x, q0 + m0 * x))
    pts.extend(reversed(breaks))
    pts.append((0.0, env(0.0)))

    out: list[tuple[float, float]] = []
    for p in pts:
        if out and abs(p[0] - out[-1][0]) <= DEDUP_TOL and abs(p[1] - out[-1][1]) <= DEDUP_TOL:
            continue
        out.append(p)
    if len(out) > 1 and abs(out[-1][0] - out[0][0]) <= DEDUP_TOL and abs(out[-1][1] - out[0][1]) <= DEDUP_TOL:
        out.pop()
    return np.array(out, dtype=float)


def _as_dir(direction) -> np.ndarray:
    if isinstance(direction, Direction):
        return direction.as_array()
    return Direction(*direction).as_array()


def support(region: PolyRegion, direction) -> float:
    """max c.R over the region, by vertex enumeration."""
    c = _as_dir(direction)
    hp = region.halfplanes
    if (c[0] > 0 and not np.any(hp[:, 0] > 0)) or (c[1] > 0 and not np.any(hp[:, 1] > 0)):
        raise UnboundedRegionError("region is unbounded in the requested direction")
    if not region.is_bounded:
        # bounded along the only relevant axis
        k = 0 if c[0] > 0 else 1
        mask = hp[:, k] > 0
        return float(c[k] * np.min(hp[mask, 2] / hp[mask, k]))
    return float(np.max(region.vertices @ c))


def vertices(region: PolyRegion) -> np.ndarray:
    return region.vertices


def contains(region: PolyRegion, point, tol: float = CONTAIN_TOL) -> bool:
    p = np.asarray(point, dtype=float)
    if np.any(p < -tol):
        return False
    hp = region.halfplanes
    return bool(np.all(hp[:, :2] @ p <= hp[:, 2] + tol))


def dual_from_support(directions: Iterable, values: Sequence[float]) -> PolyRegion:
    """Intersection of the half-planes c.R <= sigma(c) over sampled directions."""
    rows = [(*_as_dir(c), float(v)) for c, v in zip(directions, values)]
    return remove_redundant(PolyRegion(rows))


def remove_redundant(region: PolyRegion, tol: float = 1e-10) -> PolyRegion:
    """Keep only half-planes that support an edge of the region."""
    hp = region.halfplanes
    if not region.is_bounded or len(hp) <= 1:
        return region
    V = region.vertices
    scale = max(1.0, float(np.max(np.abs(V)))) if len(V) else 1.0
    slack = hp[:, 2][:, None] - hp[:, :2] @ V.T
    tight = (np.abs(slack) <= tol * scale * np.maximum(1.0, hp[:, :2].sum(axis=1))[:, None]).sum(axis=1)
    # degenerate regions have no edges; fall back to constraints touching a vertex
    need = 2 if len(V) >= 3 else 1
    keep = tight >= need
    # exact duplicates: keep the first copy
    seen, mask = set(), np.zeros(len(hp), dtype=bool)
    for i in np.nonzero(keep)[0]:
        n = hp[i, :2] / hp[i, :2].sum()
        key = (round(n[0], 12), round(hp[i, 2] / hp[i, :2].sum(), 12))
        if key not in seen:
            seen.add(key)
            mask[i] = True
    reduced = PolyRegion(hp[mask]) if mask.any() else region
    if not reduced.is_bounded:
        return region
    return reduced


def intersect(regions: Sequence[PolyRegion]) -> PolyRegion:
    if not regions:
        raise ValueError("need at least one region")
    return remove_redundant(PolyRegion(np.vstack([r.halfplanes for r in regions])))


def region_from_points(points) -> PolyRegion:
    """Smallest down-closed convex region containing the given rate pairs.

    Used for inner bounds built from sampled boundary points: edges of the
    upper-right hull become half-planes, so the result stays inside the
    true convex region.
    """
    P = np.asarray(points, dtype=float).reshape(-1, 2)
    P = np.clip(P, 0.0, None)
    xm, ym = float(P[:, 0].max()), float(P[:, 1].max())
    # upper-right chain from (0, ym) to (xm, 0): monotone-chain upper hull
    cand = np.vstack([P, [[0.0, ym], [xm, 0.0]]])
    cand = cand[np.lexsort((-cand[:, 1], cand[:, 0]))]
    hull: list[np.ndarray] = []
    for p in cand:
        while len(hull) >= 2:
            o, q = hull[-2], hull[-1]
            cross = (q[0] - o[0]) * (p[1] - o[1]) - (q[1] - o[1]) * (p[0] - o[0])
            if cross >= 0:
                hull.pop()
            else:
                break
        hull.append(p)
    rows = [[1.0, 0.0, xm], [0.0, 1.0, ym]]
    for p, q in zip(hull[:-1], hull[1:]):
        n1, n2 = p[1] - q[1], q[0] - p[0]
        if n1 <= 0 or n2 <= 0:
            continue
        s = n1 + n2
        rows.append([n1 / s, n2 / s, (n1 * p[0] + n2 * p[1]) / s])
    return remove_redundant(PolyRegion(rows))


def polyline_csv(region: PolyRegion) -> str:
    buf = io.StringIO()
    buf.write("r1,r2\n")
    for x, y in region.vertices:
        buf.write(f"{fmt(x)},{fmt(y)}\n")
    return buf.getvalue()


def fmt(x: float) -> str:
    return f"{float(x):.17g}"


@dataclass(frozen=True, eq=False)
class BoundCurve:
    mus: np.ndarray
    values: np.ndarray
    orientation: str = "mu_1"

    def __post_init__(self):
        mus = np.asarray(self.mus, dtype=float)
        vals = np.asarray(self.values, dtype=float)
        if mus.shape != vals.shape or mus.ndim != 1:
            raise ValueError("mus and values must be 1-D arrays of equal length")
        if np.any(mus < 1) or np.any(np.diff(mus) <= 0):
            raise ValueError("mu samples must be strictly increasing and >= 1")
        if not np.all(np.isfinite(vals)):
            raise ValueError("bound values must be finite")
        if self.orientation not in ("mu_1", "1_mu"):
            raise ValueError("orientation must be 'mu_1' or '1_mu'")
        object.__setattr__(self, "mus", mus)
        object.__setattr__(self, "values", vals)

    def directions(self) -> list[Direction]:
        if self.orientation == "mu_1":
            return [Direction(m, 1.0) for m in self.mus]
        return [Direction(1.0, m) for m in self.mus]

    def to_csv(self) -> str:
        buf = io.StringIO()
        buf.write("mu,value_bits\n")
        for m, v in zip(self.mus, self.values):
            buf.write(f"{fmt(m)},{fmt(v)}\n")
        return buf.getvalue()

    @classmethod
    def from_csv(cls, text: str, orientation: str = "mu_1") -> BoundCurve:
        lines = [ln for ln in text.strip().split("\n")[1:] if ln]
        data = np.array([[float(t) for t in ln.split(",")] for ln in lines]).reshape(-1, 2)
        return cls(data[:, 0], data[:, 1], orientation)
