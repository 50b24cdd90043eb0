"""Named channel configurations and the files each one produces."""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from . import hk, outer
from .channel import ChannelParams, DispatchError, gamma, is_mixed_standard, is_one_sided_weak, is_weak
from .geometry import BoundCurve, Direction, PolyRegion, direction_grid, dual_from_support, fmt, intersect, polyline_csv
from .optimizer import OptConfig
from .sumcap import one_sided_sason_point

FIGURE_MUS = np.geomspace(1.0, 1000.0, 33)


@dataclass(frozen=True)
class FigurePreset:
    name: str
    params: ChannelParams
    bounds: tuple


PRESETS = {
    "fig7": FigurePreset("fig7", ChannelParams(7, 7, 0.2, 0.2), ("g1", "g2", "kramer", "etw", "new")),
    "fig8": FigurePreset("fig8", ChannelParams(100, 100, 0.1, 0.1), ("g1", "g2", "kramer", "etw", "new")),
    "fig9": FigurePreset("fig9", ChannelParams(1, 7, 0.4, 0), ("g0", "g1", "sato", "new", "sason")),
    "fig10": FigurePreset("fig10", ChannelParams(7, 7, 0.6, 2), ("mixed_hk", "mixed_outer", "mixed_w")),
    "fig11": FigurePreset("fig11", ChannelParams(7, 7, 0.4, 1.5), ("mixed_hk", "mixed_outer", "mixed_w")),
    "fig12": FigurePreset("fig12", ChannelParams(7, 700, 0.01, 1.5), ("mixed_hk", "mixed_outer", "mixed_w")),
}

# power split shown for the single pentagon of the one-sided preset
FIG9_SPLIT = hk.PowerSplit(1.0, 0.5)


def get_preset(name: str) -> FigurePreset:
    try:
        return PRESETS[name]
    except KeyError:
        raise KeyError(f"unknown preset {name!r}; choose from {', '.join(PRESETS)}") from None


def weak_new_region(params: ChannelParams, mus, config: OptConfig = OptConfig()) -> tuple[PolyRegion, BoundCurve, BoundCurve]:
    """Region cut out by the (mu,1) and (1,mu) program curves plus the single-user caps."""
    w, wt = outer.weak_outer_curves(params, mus, config)
    dirs = [Direction(1, 0), Direction(0, 1), *w.directions(), *wt.directions()]
    vals = [gamma(params.p1), gamma(params.p2), *w.values, *wt.values]
    return dual_from_support(dirs, vals), w, wt


def mixed_new_region(params: ChannelParams, mus, config: OptConfig = OptConfig()) -> tuple[PolyRegion, BoundCurve]:
    curve = BoundCurve(np.asarray(mus, float), np.array([outer.mixed_w(params, m, config).value for m in mus]), "mu_1")
    tangents = dual_from_support(curve.directions(), curve.values)
    region = intersect([outer.mixed_outer_region(params), tangents])
    return region, curve


def one_sided_new_curve(params: ChannelParams, mus) -> BoundCurve:
    return BoundCurve(np.asarray(mus, float), np.array([outer.one_sided_outer_support(params, m) for m in mus]), "mu_1")


def figure_outputs(preset: FigurePreset, config: OptConfig = OptConfig(), n_dirs: int = 33) -> dict[str, str]:
    """File name -> file contents for every curve and region of a preset."""
    p = preset.params
    dirs = direction_grid(n_dirs)
    files: dict[str, str] = {}
    if is_weak(p):
        files["g1.csv"] = polyline_csv(hk.g1_region(p, dirs))
        files["g2.csv"] = polyline_csv(hk.g2_region(p, dirs, config))
        files["kramer.csv"] = polyline_csv(outer.kramer_region(p))
        files["etw.csv"] = polyline_csv(outer.etw_region(p))
        region, w, wt = weak_new_region(p, FIGURE_MUS, config)
        files["new_region.csv"] = polyline_csv(region)
        files["new_mu_1.csv"] = w.to_csv()
        files["new_1_mu.csv"] = wt.to_csv()
    elif is_one_sided_weak(p):
        files["g0.csv"] = polyline_csv(hk.g0_region(p, FIG9_SPLIT))
        files["g1.csv"] = polyline_csv(hk.g1_one_sided_region(p))
        files["sato_region.csv"] = polyline_csv(outer.sato_region(p))
        files["new_mu_1.csv"] = one_sided_new_curve(p, FIGURE_MUS).to_csv()
        r1, r2 = one_sided_sason_point(p)
        files["sason_point.json"] = _dumps({"r1": r1, "r2": r2, "sum_rate": r1 + r2})
    elif is_mixed_standard(p):
        files["mixed_hk.csv"] = polyline_csv(hk.mixed_hk_region(p))
        files["mixed_outer.csv"] = polyline_csv(outer.mixed_outer_region(p))
        region, curve = mixed_new_region(p, FIGURE_MUS, config)
        files["mixed_w.csv"] = curve.to_csv()
        files["new_region.csv"] = polyline_csv(region)
    else:
        raise DispatchError(f"no figure layout for preset {preset.name}")
    manifest = {
        "preset": preset.name,
        "params": p.as_dict(),
        "bounds": list(preset.bounds),
        "seed": config.seed,
        "mu_grid": [fmt(m) for m in FIGURE_MUS],
        "users_swapped": False,
        "files": sorted(files),
    }
    if preset.name == "fig9":
        manifest["g0_split"] = {"alpha": FIG9_SPLIT.alpha, "beta": FIG9_SPLIT.beta}
    files["manifest.json"] = _dumps(manifest)
    return files


def write_figure(preset: FigurePreset, out: Path, config: OptConfig = OptConfig()) -> list[Path]:
    out.mkdir(parents=True, exist_ok=True)
    written = []
    for name, text in sorted(figure_outputs(preset, config).items()):
        path = out / name
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
        written.append(path)
    return written


def _dumps(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"
