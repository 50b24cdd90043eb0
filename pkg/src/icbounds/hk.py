"""Gaussian Han-Kobayashi inner bounds.

alpha and beta are the private-power fractions of users 1 and 2. For a
fixed split the achievable region is the pentagon

    R1 <= psi1, R2 <= psi2, R1+R2 <= psi3, 2R1+R2 <= psi4, R1+2R2 <= psi5.

Supports of such polytopes are computed through the vertices of the dual
feasible set {y >= 0 : A^T y >= c}, which depend on the direction only.
That turns the support into a minimum of a few linear forms in the psi
values and vectorizes well across power splits and band powers.
"""

from __future__ import annotations

import functools
import itertools
from dataclasses import dataclass

import numpy as np
from scipy.optimize import linprog

from .channel import ChannelParams, DispatchError, gamma_unchecked as _g, is_mixed_standard
from .geometry import Direction, PolyRegion, region_from_points
from .optimizer import OptConfig, grid_refine, minimize, multistart

HK_MATRIX = np.array([[1.0, 0.0], [0.0, 1.0], [1.0, 1.0], [2.0, 1.0], [1.0, 2.0]])


@dataclass(frozen=True)
class PowerSplit:
    alpha: float
    beta: float

    def __post_init__(self):
        for name in ("alpha", "beta"):
            v = float(getattr(self, name))
            if not 0.0 <= v <= 1.0:
                raise ValueError(f"{name} must lie in [0, 1], got {v}")
            object.__setattr__(self, name, v)


@dataclass(frozen=True)
class PsiVector:
    psi1: float
    psi2: float
    psi31: float
    psi32: float
    psi33: float
    psi4: float
    psi5: float

    @property
    def psi3(self) -> float:
        return min(self.psi31, self.psi32, self.psi33)

    def offsets(self) -> np.ndarray:
        return np.array([self.psi1, self.psi2, self.psi3, self.psi4, self.psi5])


def psi_arrays(p1, p2, a, b, alpha, beta) -> np.ndarray:
    """The seven psi values stacked on a leading axis of length 7.

    Order: psi1, psi2, psi31, psi32, psi33, psi4, psi5.
    """
    p1, p2, alpha, beta = (np.asarray(v, dtype=float) for v in (p1, p2, alpha, beta))
    d1 = 1.0 + a * beta * p2  # noise plus private interference at receiver 1
    d2 = 1.0 + b * alpha * p1
    t_all1 = _g((p1 + a * (1.0 - beta) * p2) / d1)
    t_priv1 = _g(alpha * p1 / d1)
    t_mix1 = _g((alpha * p1 + a * (1.0 - beta) * p2) / d1)
    t_all2 = _g((p2 + b * (1.0 - alpha) * p1) / d2)
    t_priv2 = _g(beta * p2 / d2)
    t_mix2 = _g((beta * p2 + b * (1.0 - alpha) * p1) / d2)
    psi1 = _g(p1 / d1)
    psi2 = _g(p2 / d2)
    psi31 = t_all1 + t_priv2
    psi32 = t_priv1 + t_all2
    psi33 = t_mix1 + t_mix2
    psi4 = t_all1 + t_priv1 + t_mix2
    psi5 = t_priv2 + t_all2 + t_mix1
    return np.stack(np.broadcast_arrays(psi1, psi2, psi31, psi32, psi33, psi4, psi5))


def pentagon_offsets(psi7: np.ndarray) -> np.ndarray:
    """(7, ...) psi stack -> (..., 5) constraint offsets."""
    psi3 = np.minimum(np.minimum(psi7[2], psi7[3]), psi7[4])
    return np.stack([psi7[0], psi7[1], psi3, psi7[5], psi7[6]], axis=-1)


def psi_vector(params: ChannelParams, split: PowerSplit) -> PsiVector:
    v = psi_arrays(params.p1, params.p2, params.a, params.b, split.alpha, split.beta)
    return PsiVector(*(float(x) for x in v))


def g0_region(params: ChannelParams, split: PowerSplit) -> PolyRegion:
    psi = psi_vector(params, split)
    return PolyRegion(np.column_stack([HK_MATRIX, psi.offsets()]))


def g0_support_closed_form(psis: PsiVector, mu: float, family: str = "mu_1") -> float:
    """Pentagon support at (mu,1) or (1,mu) for weak channels."""
    if not mu >= 1:
        raise ValueError(f"closed-form support needs mu >= 1, got {mu}")
    if family == "mu_1":
        single, pair = psis.psi1, psis.psi4
    elif family == "1_mu":
        single, pair = psis.psi2, psis.psi5
    else:
        raise ValueError("family must be 'mu_1' or '1_mu'")
    if mu > 2:
        return (mu - 2.0) * single + pair
    return (2.0 - mu) * psis.psi3 + (mu - 1.0) * pair


def closed_form_dual(mu: float, family: str = "mu_1") -> np.ndarray:
    """The direction-only dual multiplier behind the closed-form support."""
    y = np.zeros(5)
    pair = 3 if family == "mu_1" else 4
    if mu > 2:
        y[0 if family == "mu_1" else 1] = mu - 2.0
        y[pair] = 1.0
    else:
        y[2] = 2.0 - mu
        y[pair] = mu - 1.0
    return y


def dual_vertices(A: np.ndarray, direction) -> np.ndarray:
    """Vertices of {y >= 0 : A^T y >= c} for a 2-column matrix A.

    Basic solutions of A^T y - s = c have two basic variables among the
    m multipliers and two surplus variables.
    """
    c = np.asarray(direction.as_array() if isinstance(direction, Direction) else direction, float)
    A = np.asarray(A, dtype=float)
    m = len(A)
    M = np.hstack([A.T, -np.eye(2)])
    out = []
    for i, j in itertools.combinations(range(m + 2), 2):
        B = M[:, [i, j]]
        det = B[0, 0] * B[1, 1] - B[0, 1] * B[1, 0]
        if abs(det) < 1e-14:
            continue
        z = np.linalg.solve(B, c)
        if np.all(z >= -1e-14):
            y = np.zeros(m + 2)
            y[[i, j]] = np.maximum(z, 0.0)
            out.append(y[:m])
    Y = np.unique(np.round(np.array(out), 14), axis=0)
    return Y


def polytope_support(offsets: np.ndarray, duals: np.ndarray) -> np.ndarray:
    """LP value of max c.R s.t. A R <= offsets, R >= 0 via the dual vertices."""
    return np.min(offsets @ duals.T, axis=-1)


def g0_support(params: ChannelParams, split: PowerSplit, direction) -> float:
    duals = dual_vertices(HK_MATRIX, direction)
    return float(polytope_support(psi_vector(params, split).offsets(), duals))


# --- envelopes over power splits -------------------------------------------


def _split_objective(params, duals, p1=None, p2=None):
    p1 = params.p1 if p1 is None else p1
    p2 = params.p2 if p2 is None else p2

    def neg(X):
        psi = psi_arrays(p1, p2, params.a, params.b, X[:, 0], X[:, 1])
        return -polytope_support(pentagon_offsets(psi), duals)

    return neg


def best_split(params: ChannelParams, direction, grid: int = 101, config: OptConfig | None = None):
    """Maximize the pentagon support over (alpha, beta).

    A uniform grid locates the basin; a short simplex run from the best grid
    points polishes it.
    """
    duals = dual_vertices(HK_MATRIX, direction)
    neg = _split_objective(params, duals)
    t = np.linspace(0.0, 1.0, grid)
    A, B = np.meshgrid(t, t, indexing="ij")
    X = np.column_stack([A.ravel(), B.ravel()])
    vals = neg(X)
    top = X[np.argsort(vals, kind="stable")[:4]]
    cfg = config or OptConfig(starts=4, max_evals=400, tol=1e-12)
    res = minimize(neg, [0.0, 0.0], [1.0, 1.0], config=cfg, vectorized=True, x0=top)
    best = min(float(-res.value), float(-vals.min()))
    if best == float(-res.value):
        split = PowerSplit(*np.clip(res.argmin, 0, 1))
    else:
        split = PowerSplit(*X[int(np.argmin(vals))])
    return best, split


def g1_support(params: ChannelParams, direction) -> float:
    """Support of the union of pentagons over all power splits."""
    return best_split(params, direction)[0]


def _support_point(offsets: np.ndarray, direction) -> np.ndarray:
    region = PolyRegion(np.column_stack([HK_MATRIX, offsets]))
    c = np.asarray(direction.as_array() if isinstance(direction, Direction) else direction, float)
    V = region.vertices
    return V[int(np.argmax(V @ c))]


def g1_region(params: ChannelParams, directions) -> PolyRegion:
    """Inner polygon through support points of the best pentagon per direction."""
    pts = []
    for d in directions:
        _, split = best_split(params, d, grid=41)
        pts.append(_support_point(psi_vector(params, split).offsets(), d))
    return region_from_points(pts)


# --- one-sided channel ------------------------------------------------------


def _require_one_sided(params):
    if params.b != 0:
        raise DispatchError("one-sided formulas need b = 0")
    if params.a >= 1:
        raise DispatchError("a >= 1: the one-sided channel is strong; use the strong region")
    if params.a <= 0:
        raise DispatchError("a = 0 has no interference; the region is a rectangle")


def g1_one_sided_corners(params: ChannelParams, betas) -> np.ndarray:
    """Box corners of the one-sided union for each beta'."""
    p1, p2, a = params.p1, params.p2, params.a
    bt = np.asarray(betas, dtype=float)
    r1 = _g(p1 / (1.0 + a * bt * p2))
    r2 = _g(bt * p2) + _g(a * (1.0 - bt) * p2 / (1.0 + p1 + a * bt * p2))
    return np.column_stack([r1, r2])


def beta_samples(p2: float, lo: float, hi: float, n: int) -> np.ndarray:
    """n values of beta' in [lo, hi], evenly spaced in log(1 + beta' P2).

    The box corners bend fastest where beta' P2 is small, so uniform spacing
    in beta' leaves chords well inside the boundary for large P2.
    """
    if p2 <= 0 or hi <= lo:
        return np.linspace(lo, hi, n)
    t = np.linspace(np.log1p(lo * p2), np.log1p(hi * p2), n)
    out = np.expm1(t) / p2
    out[0], out[-1] = lo, hi
    return out


def g1_one_sided_region(params: ChannelParams, betas=None) -> PolyRegion:
    _require_one_sided(params)
    betas = beta_samples(params.p2, 0.0, 1.0, 2001) if betas is None else betas
    return region_from_points(g1_one_sided_corners(params, betas))


def g1_one_sided_support(params: ChannelParams, direction) -> float:
    """max over beta' of c.(box corner), by refined grid plus Brent."""
    _require_one_sided(params)
    c = np.asarray(direction.as_array() if isinstance(direction, Direction) else direction, float)
    res = grid_refine(
        lambda X: -(g1_one_sided_corners(params, X[:, 0]) @ c), [0.0], [1.0], vectorized=True, polish=True
    )
    return -res.value


# --- concavification over bands ---------------------------------------------


@dataclass(frozen=True)
class Band:
    lam: float
    p1: float
    p2: float
    alpha: float
    beta: float


@dataclass(frozen=True)
class BandAllocation:
    bands: tuple

    def check(self, params: ChannelParams, tol: float = 1e-9) -> None:
        lam = np.array([b.lam for b in self.bands])
        if np.any(lam < -tol) or abs(lam.sum() - 1.0) > tol:
            raise ValueError("band weights must be non-negative and sum to one")
        for name, budget in (("p1", params.p1), ("p2", params.p2)):
            used = sum(b.lam * getattr(b, name) for b in self.bands)
            if used > budget + tol * max(1.0, budget):
                raise ValueError(f"{name} budget exceeded: {used} > {budget}")


@dataclass(frozen=True)
class G2Support:
    value: float
    allocation: BandAllocation
    gap: float
    converged: bool

    @property
    def lower_bound_only(self) -> bool:
        return not self.converged


def _band_integrand(params: ChannelParams, direction):
    duals = dual_vertices(HK_MATRIX, direction)

    def h(p1, p2, alpha, beta):
        psi = psi_arrays(p1, p2, params.a, params.b, alpha, beta)
        return polytope_support(pentagon_offsets(psi), duals)

    return h


def allocation_value(params: ChannelParams, direction, allocation: BandAllocation) -> float:
    h = _band_integrand(params, direction)
    return float(sum(b.lam * h(b.p1, b.p2, b.alpha, b.beta) for b in allocation.bands if b.lam > 0))


def _solve_master(cols, vals, params):
    n = len(vals)
    res = linprog(
        -vals,
        A_ub=np.vstack([cols[:, 0], cols[:, 1]]),
        b_ub=[params.p1, params.p2],
        A_eq=np.ones((1, n)),
        b_eq=[1.0],
        bounds=(0, None),
        method="highs-ds",
        options={"primal_feasibility_tolerance": 1e-10, "dual_feasibility_tolerance": 1e-10},
    )
    if res.status != 0:
        raise RuntimeError(f"band LP failed: {res.message}")
    nu = -np.asarray(res.ineqlin.marginals)
    nu0 = -float(res.eqlin.marginals[0])
    return res.x, float(-res.fun), np.maximum(nu, 0.0), nu0


def g2_support(
    params: ChannelParams,
    direction,
    config: OptConfig = OptConfig(),
    bands: int = 3,
    power_cap: float = 10.0,
    max_rounds: int = 40,
    gap_tol: float = 1e-9,
    columns_per_round: int = 8,
) -> G2Support:
    """Support of the band-concavified HK region.

    Column generation: a master LP mixes candidate operating points
    (band powers with their split) under the average power budget; a
    pricing step searches band powers up to ``power_cap`` times the larger budget
    for a point whose value beats the LP's dual plane. ``power_cap`` is in
    units of max(P1, P2). The LP's basic
    optimum uses at most three bands, and ``gap`` bounds how far any
    allocation, with any number of bands, can exceed ``value``. With
    ``bands > 3`` the three-band optimum is re-optimized continuously with
    the extra bands allowed.
    """
    if bands < 1 or bands == 2:
        raise ValueError("bands must be 1 or at least 3")
    if not isinstance(direction, Direction):
        direction = Direction(*np.asarray(direction, dtype=float))
    if bands == 1:
        val, split = best_split(params, direction)
        alloc = BandAllocation((Band(1.0, params.p1, params.p2, split.alpha, split.beta),))
        return G2Support(val, alloc, 0.0, True)
    res = _column_generation(params, direction, config, power_cap, max_rounds, gap_tol, columns_per_round)
    if bands > 3:
        cfg = OptConfig(2, config.max_evals, config.tol, config.seed)
        value, alloc = refine_allocation(params, direction, res.allocation, bands, cfg)
        if value > res.value:
            return G2Support(value, alloc, res.gap, res.converged)
    return res


@functools.lru_cache(maxsize=4096)
def _column_generation(params, direction, config, power_cap, max_rounds, gap_tol, columns_per_round) -> G2Support:
    h = _band_integrand(params, direction)
    # a band may concentrate either user's budget, so both caps scale with the larger one
    pmax = max(params.p1, params.p2)
    cap = np.array([power_cap * pmax if params.p1 > 0 else 0.0, power_cap * pmax if params.p2 > 0 else 0.0])
    lo4 = np.zeros(4)
    hi4 = np.array([cap[0], cap[1], 1.0, 1.0])

    # seed columns: a power lattice with each point's best split on a coarse grid
    scales = np.array([0.0, 0.25, 0.5, 0.75, 1.0, 1.5, 2.0, 3.0, 5.0, 10.0])
    axes = [
        np.unique(np.clip(np.concatenate([scales * budget, scales * pmax]), 0.0, c))
        for budget, c in ((params.p1, cap[0]), (params.p2, cap[1]))
    ]
    s1, s2 = np.meshgrid(*axes, indexing="ij")
    t = np.linspace(0.0, 1.0, 11)
    al, be = np.meshgrid(t, t, indexing="ij")
    P = np.column_stack([s1.ravel(), s2.ravel()])
    grid_vals = h(P[:, :1], P[:, 1:], al.ravel()[None, :], be.ravel()[None, :])
    k = np.argmax(grid_vals, axis=1)
    cols = np.column_stack([P, al.ravel()[k], be.ravel()[k]])
    single, split = best_split(params, direction)
    cols = np.vstack([cols, [params.p1, params.p2, split.alpha, split.beta]])
    vals = h(cols[:, 0], cols[:, 1], cols[:, 2], cols[:, 3])

    gap = np.inf
    certify = False
    for rnd in range(max_rounds):
        lam, value, nu, nu0 = _solve_master(cols, vals, params)
        basis = cols[lam > 1e-12]

        def neg_reduced(X):
            return -(h(X[:, 0], X[:, 1], X[:, 2], X[:, 3]) - X[:, :2] @ nu)

        # cheap local rounds; a full multi-start run certifies the final gap
        full = rnd == 0 or certify
        if full:
            cfg = OptConfig(config.starts, config.max_evals, max(config.tol, 1e-8), config.seed + rnd)
            runs = multistart(neg_reduced, lo4, hi4, config=cfg, vectorized=True, x0=basis)
        else:
            cfg = OptConfig(max(2, config.starts // 16), min(150, config.max_evals), max(config.tol, 1e-8), config.seed + rnd)
            runs = multistart(neg_reduced, lo4, hi4, config=cfg, vectorized=True, x0=basis, step=0.02)
        reduced = -runs.values - nu0
        gap = max(0.0, float(np.max(reduced)))
        if gap <= gap_tol * max(1.0, abs(value)):
            if full:
                break
            certify = True
            continue
        certify = False
        # every distinct improving local optimum becomes a column
        order = np.argsort(-reduced, kind="stable")
        pick = [k for k in order if reduced[k] > 0][:columns_per_round]
        new = np.unique(np.round(runs.argmins[pick], 13), axis=0)
        # power perturbations of the basis pin down degenerate LP duals
        delta = max(0.05 * 0.3**rnd, 1e-6)
        shifts = np.array([[1, 0], [-1, 0], [0, 1], [0, -1]]) * delta * np.array([params.p1, params.p2])
        near = (basis[:, None, :2] + shifts[None]).reshape(-1, 2)
        near = np.column_stack([np.clip(near, 0.0, cap), np.repeat(basis[:, 2:], 4, axis=0)])
        new = np.unique(np.vstack([new, near]), axis=0)
        cols = np.vstack([cols, new])
        vals = np.append(vals, h(new[:, 0], new[:, 1], new[:, 2], new[:, 3]))

    lam, value, _, _ = _solve_master(cols, vals, params)
    used = lam > 1e-12
    alloc = BandAllocation(
        tuple(Band(float(l), *map(float, c)) for l, c in zip(lam[used] / lam[used].sum(), cols[used]))
    )
    value = allocation_value(params, direction, alloc)
    if single > value:
        value = single
        alloc = BandAllocation((Band(1.0, params.p1, params.p2, split.alpha, split.beta),))
    at_cap = any(b.p1 >= cap[0] * (1 - 1e-9) and cap[0] > 0 or b.p2 >= cap[1] * (1 - 1e-9) and cap[1] > 0
                 for b in alloc.bands)
    # the certificate only covers band powers below the cap
    converged = gap <= max(gap_tol, 1e-7) * max(1.0, abs(value)) and not at_cap
    return G2Support(float(value), alloc, float(gap), bool(converged))


def _stick(t):
    """Map (n, k-1) unit-box coordinates onto the k-simplex."""
    n, km1 = t.shape
    out = np.empty((n, km1 + 1))
    rest = np.ones(n)
    for i in range(km1):
        out[:, i] = rest * t[:, i]
        rest = rest - out[:, i]
    out[:, -1] = rest
    return out


def _unstick(w):
    t = []
    rest = 1.0
    for x in w[:-1]:
        t.append(0.0 if rest <= 1e-300 else min(1.0, x / rest))
        rest -= x
    return t


def refine_allocation(params: ChannelParams, direction, allocation: BandAllocation, n_bands: int, config: OptConfig):
    """Direct continuous search over n-band allocations, started from ``allocation``.

    Variables live in a unit box: stick-breaking weights for the band
    fractions and for each user's share of the budget, a utilization per
    user, and a split per band. The budget therefore always holds.
    """
    h = _band_integrand(params, direction)
    n = n_bands
    P = np.array([params.p1, params.p2])

    def decode(X):
        lam = _stick(X[:, : n - 1])
        w1 = _stick(X[:, n - 1 : 2 * n - 2])
        w2 = _stick(X[:, 2 * n - 2 : 3 * n - 3])
        u = X[:, 3 * n - 3 : 3 * n - 1]
        al = X[:, 3 * n - 1 : 4 * n - 1]
        be = X[:, 4 * n - 1 : 5 * n - 1]
        with np.errstate(divide="ignore", invalid="ignore"):
            p1 = np.where(lam > 1e-15, u[:, :1] * P[0] * w1 / lam, 0.0)
            p2 = np.where(lam > 1e-15, u[:, 1:] * P[1] * w2 / lam, 0.0)
        return lam, p1, p2, al, be

    def neg(X):
        lam, p1, p2, al, be = decode(X)
        return -np.sum(lam * h(p1, p2, al, be), axis=1)

    bands = list(allocation.bands)[:n]
    while len(bands) < n:
        bands.append(Band(0.0, 0.0, 0.0, 1.0, 1.0))
    lam = np.array([b.lam for b in bands])
    e1 = np.array([b.lam * b.p1 for b in bands])
    e2 = np.array([b.lam * b.p2 for b in bands])
    u1 = e1.sum() / P[0] if P[0] > 0 else 1.0
    u2 = e2.sum() / P[1] if P[1] > 0 else 1.0
    w1 = e1 / e1.sum() if e1.sum() > 0 else np.full(n, 1.0 / n)
    w2 = e2 / e2.sum() if e2.sum() > 0 else np.full(n, 1.0 / n)
    x0 = np.concatenate(
        [_unstick(lam), _unstick(w1), _unstick(w2), [min(u1, 1.0), min(u2, 1.0)],
         [b.alpha for b in bands], [b.beta for b in bands]]
    )
    dim = 5 * n - 1
    res = minimize(neg, np.zeros(dim), np.ones(dim), config=config, vectorized=True, x0=x0[None, :])
    lam, p1, p2, al, be = (v[0] for v in decode(res.argmin[None, :]))
    alloc = BandAllocation(
        tuple(Band(float(lam[i]), float(p1[i]), float(p2[i]), float(al[i]), float(be[i])) for i in range(n))
    )
    return float(-res.value), alloc


def g2_support_point(params: ChannelParams, direction, allocation: BandAllocation) -> np.ndarray:
    """Rate pair achieved by an allocation in the given direction."""
    point = np.zeros(2)
    for b in allocation.bands:
        if b.lam <= 0:
            continue
        psi = psi_arrays(b.p1, b.p2, params.a, params.b, b.alpha, b.beta)
        point += b.lam * _support_point(pentagon_offsets(psi), direction)
    return point


def g2_region(params: ChannelParams, directions, config: OptConfig = OptConfig()) -> PolyRegion:
    mirror = params.swapped() == params
    pts = []
    for d in directions:
        d = d if isinstance(d, Direction) else Direction(*d)
        if mirror and d.c2 > d.c1:
            flipped = Direction(d.c2, d.c1)
            res = g2_support(params, flipped, config)
            pts.append(g2_support_point(params, flipped, res.allocation)[::-1])
        else:
            res = g2_support(params, d, config)
            pts.append(g2_support_point(params, d, res.allocation))
    return region_from_points(pts)


# --- mixed channel (0 < a < 1 <= b) -----------------------------------------


def mixed_hk_case(params: ChannelParams) -> str:
    if not is_mixed_standard(params):
        raise DispatchError("mixed HK region needs 0 < a < 1 <= b")
    p1, p2, a, b = params.p1, params.p2, params.a, params.b
    if 1.0 + p2 <= b + a * b * p2:
        return "I"
    return "II" if 1.0 - a <= a * b * p1 else "III"


def _clamped(p2, lo, hi, n):
    lo, hi = min(max(lo, 0.0), 1.0), min(max(hi, 0.0), 1.0)
    if hi < lo:
        return np.empty(0)
    return beta_samples(p2, lo, hi, n)


def mixed_hk_points(params: ChannelParams, n: int = 2001) -> np.ndarray:
    """Boundary samples of the mixed HK region for the applicable case."""
    case = mixed_hk_case(params)
    p1, p2, a, b = params.p1, params.p2, params.a, params.b
    if case == "I":
        return g1_one_sided_corners(params, beta_samples(p2, 0.0, 1.0, n))
    b1 = (b - 1.0) / ((1.0 - a * b) * p2) if p2 > 0 else np.inf
    pts = [g1_one_sided_corners(params, _clamped(p2, 0.0, b1, n))]
    sum_cap = _g(b * p1 + p2)
    if case == "II":
        b2 = ((b - 1.0) * p1 + (1.0 - a) * p2) / ((1.0 - a * b) * p1 * p2 + (1.0 - a) * p2) if p2 > 0 else np.inf
        bt = _clamped(p2, b1, b2, n)
        r1 = _g(b * p1 / (1.0 + bt * p2))
        r2 = _g((p1 + a * (1.0 - bt) * p2) / (1.0 + a * bt * p2)) + _g(bt * p2) - r1
        pts.append(np.column_stack([r1, r2]))
        x3 = _g(b * p1 * (1.0 + (1.0 - a * b) * p1 / (1.0 - a)) / (1.0 + b * p1 + p2))
    else:
        bt = _clamped(p2, b1, 1.0, n)
        r1 = _g(p1 / (1.0 + a * bt * p2))
        r2 = _g(a * (1.0 - bt) * p2 / (1.0 + p1 + a * bt * p2)) + _g(bt * p2 + b * p1) - r1
        pts.append(np.column_stack([r1, r2]))
        x3 = _g(p1 / (1.0 + a * p2))
    y3 = _g(p2)
    e3 = PolyRegion([[1.0, 0.0, x3], [0.0, 1.0, y3], [1.0, 1.0, sum_cap]])
    pts.append(e3.vertices)
    return np.vstack([q for q in pts if len(q)])


def mixed_hk_region(params: ChannelParams, n: int = 2001) -> PolyRegion:
    return region_from_points(mixed_hk_points(params, n))


MIXED_A = HK_MATRIX[:4]


def mixed_pentagon_support(params: ChannelParams, direction) -> float:
    """max over beta of the support of {R1<=psi1, R2<=psi2, R1+R2<=psi3, 2R1+R2<=psi4}
    with user 1 sending only a common message (alpha = 0)."""
    if not is_mixed_standard(params):
        raise DispatchError("mixed HK region needs 0 < a < 1 <= b")
    duals = dual_vertices(MIXED_A, direction)

    def neg(X):
        psi = psi_arrays(params.p1, params.p2, params.a, params.b, 0.0, X[:, 0])
        return -polytope_support(pentagon_offsets(psi)[..., :4], duals)

    return -grid_refine(neg, [0.0], [1.0], vectorized=True, polish=True).value


# --- unique minimizer property ----------------------------------------------


@dataclass(frozen=True)
class DirectionReport:
    direction: tuple
    passed: bool
    dual: np.ndarray | None
    active: tuple


@dataclass(frozen=True)
class MinimizerReport:
    directions: tuple

    @property
    def passed(self) -> bool:
        return all(d.passed for d in self.directions)


def equality_dual_vertices(A, direction) -> np.ndarray:
    """Vertices of {y >= 0 : A^T y = c}, the dual of max c.R s.t. A R <= offsets."""
    c = np.asarray(direction.as_array() if isinstance(direction, Direction) else direction, float)
    A = np.asarray(A, dtype=float)
    out = []
    for i, j in itertools.combinations(range(len(A)), 2):
        B = A[[i, j]].T
        if abs(np.linalg.det(B)) < 1e-14:
            continue
        z = np.linalg.solve(B, c)
        if np.all(z >= -1e-14):
            y = np.zeros(len(A))
            y[[i, j]] = np.maximum(z, 0.0)
            out.append(y)
    if not out:
        return np.zeros((0, len(A)))
    return np.unique(np.round(np.array(out), 14), axis=0)


def unique_minimizer_check(A, offsets, directions, tol: float = 1e-9) -> MinimizerReport:
    """Check whether one dual multiplier is optimal for every sampled offset vector.

    The family is {R : A R <= psi} for each row psi of ``offsets``. For each
    direction the LP optimum is the smallest value over the vertices of
    {y >= 0 : A^T y = c}; the direction passes when a single vertex attains
    it for every sample. Add rows (-1, 0) and (0, -1) with zero offsets to
    restrict a family to the first quadrant.
    """
    A = np.asarray(A, dtype=float)
    Psi = np.atleast_2d(np.asarray(offsets, dtype=float))
    reports = []
    for d in directions:
        c = d.as_array() if isinstance(d, Direction) else np.asarray(d, float)
        Y = equality_dual_vertices(A, c)
        if len(Y) == 0:
            reports.append(DirectionReport(tuple(c), False, None, ()))
            continue
        vals = Psi @ Y.T
        sigma = vals.min(axis=1)
        ok = np.all(vals - sigma[:, None] <= tol * (1.0 + np.abs(sigma[:, None])), axis=0)
        if ok.any():
            y = Y[int(np.argmax(ok))]
            reports.append(DirectionReport(tuple(c), True, y, tuple(int(i) for i in np.nonzero(y > 0)[0])))
        else:
            reports.append(DirectionReport(tuple(c), False, None, ()))
    return MinimizerReport(tuple(reports))
