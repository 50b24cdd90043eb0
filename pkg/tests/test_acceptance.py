"""The ten acceptance criteria, each reported as one PASS/FAIL line."""

import math

import numpy as np
import pytest

from conftest import ACCEPTANCE
from icbounds import hk, outer, presets
from icbounds.channel import ChannelParams, gamma
from icbounds.extremal import TWO_PI_E, fh_array
from icbounds.geometry import Direction, support
from icbounds.optimizer import OptConfig
from icbounds.sumcap import (
    d_feasible_width,
    d_region_feasible,
    mixed_sum_capacity,
    treat_as_noise_sum,
    weak_noisy_condition,
)

MUS = np.geomspace(1.0, 1000.0, 33)


def report(k: int, ok: bool, detail: str) -> None:
    line = f"criterion {k:2d}: {'PASS' if ok else 'FAIL'}  {detail}"
    ACCEPTANCE[k] = line
    print(line)
    assert ok, line


def random_weak(rng, pmax=100.0):
    return ChannelParams(rng.uniform(0.01, pmax), rng.uniform(0.01, pmax), rng.uniform(0.01, 0.99), rng.uniform(0.01, 0.99))


def test_criterion_01_closed_form_vs_vertex_enumeration():
    rng = np.random.default_rng(101)
    worst, bad, total = 0.0, 0, 0
    for _ in range(200):
        params = random_weak(rng)
        split = hk.PowerSplit(rng.uniform(), rng.uniform())
        psis = hk.psi_vector(params, split)
        region = hk.g0_region(params, split)
        for mu in MUS:
            for family, c in (("mu_1", (mu, 1.0)), ("1_mu", (1.0, mu))):
                err = abs(hk.g0_support_closed_form(psis, mu, family) - support(region, c))
                worst = max(worst, err)
                bad += err > 1e-9
                total += 1
    report(1, bad == 0, f"{bad}/{total} (config, direction) pairs off by > 1e-9; worst {worst:.3g}")


def test_criterion_02_fh_continuity_and_monotonicity():
    rng = np.random.default_rng(102)
    n = 10_000
    p = rng.uniform(0, 100, n)
    n1 = rng.uniform(0.1, 10, n)
    a = rng.uniform(0.01, 0.99, n)
    n2 = np.maximum(rng.uniform(0.1, 10, n), 1.01 * a * n1)
    t1 = (p + n2 / a) / (p + n1)
    t2 = n2 / (a * n1)
    L = lambda x: np.log2(TWO_PI_E * x)

    def piece(k, mu):
        if k == 1:
            return 0.5 * L(p + n1) - 0.5 * mu * L(a * p + n2)
        if k == 2:
            d = (n2 / a - n1) / (mu - 1)
            return 0.5 * L(d) - 0.5 * mu * L(a * mu * d)
        return 0.5 * L(n1) - 0.5 * mu * L(n2)

    jump1 = np.max(np.abs(piece(1, t1) - piece(2, t1)))
    jump2 = np.max(np.abs(piece(2, t2) - piece(3, t2)))
    # the implementation must agree with the piece on each side of the breakpoints
    impl = max(
        np.max(np.abs(fh_array(p, n1, n2, a, t1) - piece(1, t1))),
        np.max(np.abs(fh_array(p, n1, n2, a, t2) - piece(2, t2))),
    )
    frac = np.linspace(0, 1, 64)
    rises = 0
    for i in range(n):
        mus = np.unique(np.concatenate([frac * 2 * t2[i], [t1[i], t2[i]]]))
        v = fh_array(p[i], n1[i], n2[i], a[i], mus)
        rises += bool(np.any(np.diff(v) > 1e-12 * max(1.0, np.max(np.abs(v)))))
    ok = jump1 < 1e-9 and jump2 < 1e-9 and impl < 1e-9 and rises == 0
    report(2, ok, f"max jumps {jump1:.2g}, {jump2:.2g}; impl offset {impl:.2g}; non-monotone inputs {rises}/{n}")


def test_criterion_03_noisy_interference_coincidence():
    rng = np.random.default_rng(103)
    points = []
    while len(points) < 50:
        a, b = rng.uniform(0.001, 0.2, 2)
        if math.sqrt(a) + math.sqrt(b) >= 1:
            continue
        rhs = (1 - math.sqrt(a) - math.sqrt(b)) / math.sqrt(a * b)
        u = rng.uniform(0, 1)
        p1 = u * rhs / math.sqrt(b) * rng.uniform(0.05, 1)
        p2 = (rhs - math.sqrt(b) * p1) / math.sqrt(a) * rng.uniform(0.05, 1)
        params = ChannelParams(p1, p2, a, b)
        if weak_noisy_condition(params):
            points.append(params)
    worst = 0.0
    for params in points:
        val = outer.sum_program(params).value
        worst = max(worst, abs(val - treat_as_noise_sum(params)))
    report(3, worst <= 1e-4, f"max |program - treat-as-noise| = {worst:.3g} over 50 points")


def test_criterion_04_d_equals_d_prime():
    rng = np.random.default_rng(104)
    agree, tolerated, bad = 0, 0, 0
    for i in range(1000):
        a, b = rng.uniform(0.001, 0.3, 2)
        if i % 2 and math.sqrt(a) + math.sqrt(b) < 1:
            # put half the points near the boundary of D'
            rhs = (1 - math.sqrt(a) - math.sqrt(b)) / math.sqrt(a * b)
            w = rng.uniform(0, 1)
            scale = rng.uniform(0.9, 1.1)
            p1 = scale * w * rhs / math.sqrt(b)
            p2 = scale * (1 - w) * rhs / math.sqrt(a)
        else:
            p1, p2 = rng.uniform(0, 50, 2)
        params = ChannelParams(p1, p2, a, b)
        grid, closed = d_region_feasible(params, 400)
        if grid == closed:
            agree += 1
        elif not grid and closed and 0 <= d_feasible_width(params) < 2 / 400:
            tolerated += 1
        else:
            bad += 1
    report(4, bad == 0, f"{agree} agree, {tolerated} within one grid cell of the boundary, {bad} other")


def _weak_sandwich(params):
    """(min slack inner <= outer, max excess of the new region over min(Kramer, ETW))."""
    symmetric = params.swapped() == params
    kr, etw = outer.kramer_region(params), outer.etw_region(params)
    region, w, wt = presets.weak_new_region(params, MUS)
    slack, excess = np.inf, -np.inf
    for fam in ("mu_1", "1_mu"):
        for i, mu in enumerate(MUS):
            d = Direction(mu, 1.0) if fam == "mu_1" else Direction(1.0, mu)
            # a symmetric channel has mirrored inner supports
            dg = Direction(max(d.c1, d.c2), min(d.c1, d.c2)) if symmetric else d
            inner = [hk.g1_support(params, dg), hk.g2_support(params, dg).value]
            outs = [support(kr, d), support(etw, d), (w if fam == "mu_1" else wt).values[i], support(region, d)]
            slack = min(slack, min(outs) - max(inner))
            excess = max(excess, support(region, d) - min(support(kr, d), support(etw, d)))
    return slack, excess


def _one_sided_sandwich(params):
    sato = outer.sato_region(params)
    g0 = [hk.PowerSplit(1.0, t) for t in np.linspace(0, 1, 5)]
    slack = np.inf
    for d in [Direction(m, 1.0) for m in MUS] + [Direction(1.0, m) for m in MUS]:
        inner = [hk.g1_one_sided_support(params, d), hk.g2_support(params, d).value]
        inner += [hk.g0_support(params, s, d) for s in g0]
        outs = [support(sato, d), outer.sato_support(params, d)]
        if d.c2 == 1.0:
            outs.append(d.c2 * outer.one_sided_outer_support(params, d.c1 / d.c2))
        slack = min(slack, min(outs) - max(inner))
    return slack


def _mixed_sandwich(params):
    region = outer.mixed_outer_region(params)
    hk_region = hk.mixed_hk_region(params)
    slack = np.inf
    for d in [Direction(m, 1.0) for m in MUS] + [Direction(1.0, m) for m in MUS]:
        inner = [support(hk_region, d), hk.mixed_pentagon_support(params, d)]
        outs = [support(region, d)]
        if d.c1 >= d.c2:
            outs.append(d.c2 * outer.mixed_w(params, d.c1 / d.c2).value)
        slack = min(slack, min(outs) - max(inner))
    return slack


@pytest.mark.slow
def test_criterion_05_sandwich():
    parts, ok = [], True
    for name in ("fig7", "fig8"):
        slack, excess = _weak_sandwich(presets.PRESETS[name].params)
        ok &= slack >= -1e-6 and excess <= 1e-9
        parts.append(f"{name} slack {slack:.3g} new-minus-best-old {excess:.3g}")
    slack = _one_sided_sandwich(presets.PRESETS["fig9"].params)
    ok &= slack >= -1e-6
    parts.append(f"fig9 slack {slack:.3g}")
    for name in ("fig10", "fig11", "fig12"):
        slack = _mixed_sandwich(presets.PRESETS[name].params)
        ok &= slack >= -1e-6
        parts.append(f"{name} slack {slack:.3g}")
    report(5, ok, "; ".join(parts))


def test_criterion_06_sato_closed_form():
    rng = np.random.default_rng(106)
    worst = 0.0
    for _ in range(100):
        params = ChannelParams(rng.uniform(0.01, 100), rng.uniform(0.01, 100), rng.uniform(0.01, 0.99), 0.0)
        lo, hi = outer.sato_mu_interval(params)
        for mu in np.linspace(lo, hi, 11)[1:]:
            worst = max(worst, abs(outer.sato_support(params, (mu, 1.0)) - outer.sato_closed_form(params, mu)))
    report(6, worst <= 1e-9, f"max |sweep - closed form| = {worst:.3g}")


def test_criterion_07_mixed_equivalence():
    rng = np.random.default_rng(107)
    configs = [presets.PRESETS["fig10"].params]
    while len(configs) < 50:
        a = rng.uniform(0.05, 0.95)
        b = rng.uniform(1 / a, 1 / a + 5)
        configs.append(ChannelParams(rng.uniform(0.1, 50), rng.uniform(0.1, 50), a, b))
    dirs = [Direction(m, 1.0) for m in MUS] + [Direction(1.0, m) for m in MUS]
    worst = 0.0
    for params in configs:
        region = hk.mixed_hk_region(params)
        one_sided = ChannelParams(params.p1, params.p2, params.a, 0.0)
        for d in dirs:
            worst = max(worst, abs(support(region, d) - hk.g1_one_sided_support(one_sided, d)))
    report(7, worst <= 1e-6, f"max support gap {worst:.3g} over {len(configs)} configs")


def test_criterion_08_mixed_sum_capacity():
    rng = np.random.default_rng(108)
    exact_err, worst_jump = 0.0, 0.0
    for _ in range(10):
        p1, p2, a = rng.uniform(0.1, 50), rng.uniform(0.1, 50), rng.uniform(0.05, 0.95)
        b_star = (1 + p2) / (1 + a * p2)
        if b_star < 1:
            continue
        # 1-D path in b through the switching surface 1 + P2 = b + ab P2
        for b in np.linspace(max(1.0, b_star - 0.5), b_star + 0.5, 101):
            params = ChannelParams(p1, p2, a, b)
            formula = gamma(p2) + min(gamma(p1 / (1 + a * p2)), gamma(b * p1 / (1 + p2)))
            exact_err = max(exact_err, abs(mixed_sum_capacity(params).value - formula))
        left = mixed_sum_capacity(ChannelParams(p1, p2, a, b_star * (1 - 1e-12))).value
        right = mixed_sum_capacity(ChannelParams(p1, p2, a, b_star * (1 + 1e-12))).value
        worst_jump = max(worst_jump, abs(left - right))
    report(8, exact_err == 0.0 and worst_jump < 1e-9, f"formula error {exact_err:.3g}, max jump {worst_jump:.3g}")


@pytest.mark.slow
def test_criterion_09_fourth_band():
    rng = np.random.default_rng(109)
    dirs = [Direction(1, 1)] + [Direction(m, 1) for m in (1.5, 2.5, 6, 30)] + [Direction(1, m) for m in (1.5, 2.5, 6, 30)]
    worst, unconverged = 0.0, 0
    for _ in range(20):
        params = random_weak(rng, 50.0)
        for d in dirs:
            three = hk.g2_support(params, d)
            four = hk.g2_support(params, d, bands=4)
            worst = max(worst, four.value - three.value)
            unconverged += not three.converged
    report(9, worst < 1e-6, f"max gain from a 4th band {worst:.3g}; uncertified 3-band runs {unconverged}/180")


def test_criterion_10_unique_minimizer():
    grid_p = np.linspace(0.5, 100, 10)
    split = np.linspace(0, 1, 5)
    P1, P2, AL, BE = np.meshgrid(grid_p, grid_p, split, split, indexing="ij")
    psi = hk.psi_arrays(P1.ravel(), P2.ravel(), 0.3, 0.2, AL.ravel(), BE.ravel())
    offsets = hk.pentagon_offsets(psi)
    mus = np.geomspace(1, 100, 9)
    dirs = [Direction(m, 1) for m in mus] + [Direction(1, m) for m in mus[1:]]
    weak_report = hk.unique_minimizer_check(hk.HK_MATRIX, offsets, dirs)
    counter = np.array([[1.0, 1.0, 1.5, p, 10.0] for p in np.linspace(2.2, 3.2, 11)])
    counter_report = hk.unique_minimizer_check(hk.HK_MATRIX, counter, dirs)
    ok = weak_report.passed and not counter_report.passed
    failed = sum(not r.passed for r in counter_report.directions)
    report(10, ok, f"weak G0 family passes at {len(dirs)} directions; counterexample fails at {failed} of them")
