"""Command-line front end: ``icbounds {classify,sumcap,bound,inner,figure}``."""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
from pathlib import Path

import numpy as np

from . import hk, outer, presets
from .channel import ChannelError, ChannelParams, DispatchError, classify, is_mixed_standard, is_one_sided_weak, is_weak
from .geometry import BoundCurve, PolyRegion, direction_grid, polyline_csv
from .optimizer import OptConfig
from .sumcap import sum_capacity

SEED_ENV = "IC_BOUNDS_SEED"


def _nonneg(text: str) -> float:
    try:
        v = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from None
    if not math.isfinite(v) or v < 0:
        raise argparse.ArgumentTypeError(f"must be finite and non-negative, got {text!r}")
    return v


def _fraction(text: str) -> float:
    v = _nonneg(text)
    if v > 1:
        raise argparse.ArgumentTypeError(f"must lie in [0, 1], got {text!r}")
    return v


def _mu_grid(text: str) -> np.ndarray:
    """lo:hi:n -> n log-spaced values from lo to hi (lo >= 1)."""
    parts = text.split(":")
    try:
        lo, hi, n = float(parts[0]), float(parts[1]), int(parts[2])
        if len(parts) != 3:
            raise ValueError
    except (ValueError, IndexError):
        raise argparse.ArgumentTypeError(f"expected lo:hi:n, got {text!r}") from None
    if not (1 <= lo <= hi and math.isfinite(hi)) or n < 1 or (n > 1 and lo == hi):
        raise argparse.ArgumentTypeError(f"need 1 <= lo < hi and n >= 1 (or lo = hi with n = 1), got {text!r}")
    return np.geomspace(lo, hi, n)


def _grid_size(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if v < 2:
        raise argparse.ArgumentTypeError(f"must be >= 2, got {text!r}")
    return v


def _add_params(p: argparse.ArgumentParser) -> None:
    for name in ("p1", "p2", "a", "b"):
        p.add_argument(f"--{name}", type=_nonneg, required=True)


def _add_seed(p: argparse.ArgumentParser) -> None:
    p.add_argument("--seed", type=int, default=None, help=f"optimizer seed (default: ${SEED_ENV} or 0)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="icbounds", description="Bounds on the two-user Gaussian interference channel.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("classify", help="print the class labels of a channel")
    _add_params(p)

    p = sub.add_parser("sumcap", help="sum capacity where it is known, else a bracket")
    _add_params(p)

    p = sub.add_parser("bound", help="outer bound region and weighted-rate curve")
    p.add_argument("--which", choices=("kramer", "etw", "new", "sato", "mixed", "strong"), required=True)
    p.add_argument("--mu-grid", type=_mu_grid, default=_mu_grid("1:1000:33"), help="lo:hi:n, log-spaced (default 1:1000:33)")
    p.add_argument("--out", type=Path, default=None, help="directory for CSV/JSON files (default: JSON on stdout)")
    _add_params(p)
    _add_seed(p)

    p = sub.add_parser("inner", help="Han-Kobayashi inner bound region")
    p.add_argument("--which", choices=("g0", "g1", "g2", "mixed"), required=True)
    p.add_argument("--alpha", type=_fraction, default=0.5, help="private power fraction of user 1 (g0 only)")
    p.add_argument("--beta", type=_fraction, default=0.5, help="private power fraction of user 2 (g0 only)")
    p.add_argument("--directions", type=_grid_size, default=33, help="samples per direction family")
    p.add_argument("--out", type=Path, default=None)
    _add_params(p)
    _add_seed(p)

    p = sub.add_parser("figure", help="write every curve and region of a preset")
    p.add_argument("--name", choices=tuple(presets.PRESETS), required=True)
    p.add_argument("--out", type=Path, required=True)
    _add_seed(p)
    return parser


def _seed(args) -> int:
    if args.seed is not None:
        return args.seed
    env = os.environ.get(SEED_ENV)
    if env is None or env == "":
        return 0
    try:
        return int(env)
    except ValueError:
        raise _ArgError(f"{SEED_ENV} must be an integer, got {env!r}") from None


class _ArgError(Exception):
    pass


def _params(args) -> ChannelParams:
    return ChannelParams(args.p1, args.p2, args.a, args.b)


def _needs_swap(params: ChannelParams) -> bool:
    """Mixed channels are solved with the weak link into receiver 1."""
    return not is_mixed_standard(params) and is_mixed_standard(params.swapped())


def _unswap_region(region: PolyRegion) -> PolyRegion:
    return PolyRegion(region.halfplanes[:, [1, 0, 2]])


def _unswap_curve(curve: BoundCurve) -> BoundCurve:
    return BoundCurve(curve.mus, curve.values, "1_mu" if curve.orientation == "mu_1" else "mu_1")


def _region_curve(region: PolyRegion, mus) -> BoundCurve:
    return BoundCurve(mus, np.array([region.support((m, 1.0)) for m in mus]), "mu_1")


def compute_bound(which: str, params: ChannelParams, mus, config: OptConfig):
    """(region or None, list of curves) in the channel's own user order."""
    swap = _needs_swap(params)
    q = params.swapped() if swap else params
    curves: list[BoundCurve] = []
    region = None
    if which == "kramer":
        region = outer.kramer_region(q)
    elif which == "etw":
        region = outer.etw_region(q)
    elif which == "strong":
        region = outer.strong_region(q)
    elif which == "sato":
        region = outer.sato_region(q)
    elif which == "mixed":
        region = outer.mixed_outer_region(q)
    elif which == "new":
        if is_weak(q):
            region, w, wt = presets.weak_new_region(q, mus, config)
            curves = [w, wt]
        elif is_one_sided_weak(q):
            curves = [presets.one_sided_new_curve(q, mus)]
        elif is_mixed_standard(q):
            region, w = presets.mixed_new_region(q, mus, config)
            curves = [w]
        else:
            raise DispatchError("the new outer bound needs a weak, one-sided weak or mixed channel")
    if region is not None and not curves:
        curves = [_region_curve(region, mus)]
    if swap:
        region = None if region is None else _unswap_region(region)
        curves = [_unswap_curve(c) for c in curves]
    return region, curves, swap


def compute_inner(args, params: ChannelParams, config: OptConfig):
    swap = _needs_swap(params)
    q = params.swapped() if swap else params
    alpha, beta = (args.beta, args.alpha) if swap else (args.alpha, args.beta)
    dirs = direction_grid(args.directions)
    if args.which == "g0":
        region = hk.g0_region(q, hk.PowerSplit(alpha, beta))
    elif args.which == "g1":
        region = hk.g1_one_sided_region(q) if is_one_sided_weak(q) else hk.g1_region(q, dirs)
    elif args.which == "g2":
        region = hk.g2_region(q, dirs, config)
    else:
        region = hk.mixed_hk_region(q)
    return (_unswap_region(region) if swap else region), swap


def _write(path: Path, text: str) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(text)


def _dump(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def _emit(out: Path | None, stem: str, header: dict, region: PolyRegion | None, curves) -> str:
    """Write files under ``out`` or build a single JSON document for stdout."""
    doc = dict(header)
    if out is None:
        if region is not None:
            doc["region"] = region.to_json()
        if curves:
            doc["curves"] = {c.orientation: [[float(m), float(v)] for m, v in zip(c.mus, c.values)] for c in curves}
        return _dump(doc)
    out.mkdir(parents=True, exist_ok=True)
    files = []
    if region is not None:
        _write(out / f"{stem}_region.json", _dump(region.to_json()))
        _write(out / f"{stem}_region.csv", polyline_csv(region))
        files += [f"{stem}_region.json", f"{stem}_region.csv"]
    for c in curves:
        _write(out / f"{stem}_{c.orientation}.csv", c.to_csv())
        files.append(f"{stem}_{c.orientation}.csv")
    doc["files"] = files
    return _dump(doc)


def run(argv=None, stdout=None) -> int:
    stdout = stdout or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        if args.command == "figure":
            config = OptConfig(seed=_seed(args))
            written = presets.write_figure(presets.get_preset(args.name), args.out, config)
            stdout.write(_dump({"preset": args.name, "files": [p.name for p in written]}))
            return 0
        try:
            params = _params(args)
        except ChannelError as exc:
            raise _ArgError(str(exc)) from None
        if args.command == "classify":
            stdout.write(json.dumps({"labels": list(classify(params).labels)}) + "\n")
        elif args.command == "sumcap":
            stdout.write(json.dumps(sum_capacity(params).to_json(), sort_keys=True) + "\n")
        elif args.command == "bound":
            config = OptConfig(seed=_seed(args))
            region, curves, swap = compute_bound(args.which, params, args.mu_grid, config)
            header = {"bound": args.which, "params": params.as_dict(), "users_swapped": swap}
            stdout.write(_emit(args.out, args.which, header, region, curves))
        elif args.command == "inner":
            config = OptConfig(seed=_seed(args))
            region, swap = compute_inner(args, params, config)
            header = {"inner": args.which, "params": params.as_dict(), "users_swapped": swap}
            if args.which == "g0":
                header["split"] = {"alpha": args.alpha, "beta": args.beta}
            stdout.write(_emit(args.out, args.which, header, region, []))
    except _ArgError as exc:
        parser.print_usage(sys.stderr)
        print(f"icbounds: error: {exc}", file=sys.stderr)
        return 2
    except DispatchError as exc:
        print(f"icbounds: {exc}", file=sys.stderr)
        return 1
    return 0


def main() -> None:
    sys.exit(run())
