"""Command-line front end: ``synth``, ``sweep``, ``optimize`` and ``compare``.

Exit status is 0 on success, 2 for configuration errors and 3 for
runtime/evaluation errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import asdict, replace
from pathlib import Path

from .config import ConfigError, DesignConfig, default_config, dump_config, load_config
from .optimizer import OptimizationResult, optimize_stubs
from .response import (
    BandMetrics,
    ResponseTrace,
    band_metrics,
    proposed_builder,
    sweep,
    traditional_builder,
)
from .synthesis import synthesize
from .touchstone import write_csv, write_touchstone

EXIT_CONFIG = 2
EXIT_RUNTIME = 3

_METRIC_FIELDS = ("passband_il_db", "passband_rl_db", "suppression_2f0_db", "suppression_3f0_db")


def _g(x: float) -> str:
    return f"{x:.12g}"


def _design_comments(cfg: DesignConfig, which: str) -> list[str]:
    f = cfg.filter
    p = f.prototype
    lines = [
        f"clfilter {which} coupled-line bandpass filter",
        f"f0_hz={_g(f.f0)} delta={_g(f.delta)} z0_ohm={_g(f.z0)}",
        f"order={p.order} family={p.family.value} ripple_db={_g(p.ripple_db)}",
    ]
    if which == "proposed" and cfg.stubs is not None:
        for s in cfg.stubs:
            lines.append(f"stub site={s.site} zt_ohm={_g(s.zt)} fz_hz={_g(s.fz)}")
    return lines


def _load(args) -> DesignConfig:
    cfg = load_config(args.config) if args.config else default_config()
    if getattr(args, "seed", None) is not None:
        cfg = replace(cfg, seed=args.seed)
    if getattr(args, "points", None) is not None:
        try:
            cfg = replace(cfg, sweep=replace(cfg.sweep, n_points=args.points))
        except ValueError as exc:
            raise ConfigError("--points", str(exc)) from None
    return cfg


def _out_dir(args) -> Path:
    out = Path(args.out_dir)
    out.mkdir(parents=True, exist_ok=True)
    return out


def _trace(cfg: DesignConfig, which: str, sections=None) -> ResponseTrace:
    sections = sections if sections is not None else synthesize(cfg.filter)
    if which == "traditional":
        builder = traditional_builder(sections, cfg.filter)
    else:
        if cfg.stubs is None:
            raise ConfigError("stubs.placed", "proposed design needs placed stubs")
        builder = proposed_builder(sections, cfg.stubs, cfg.filter)
    return sweep(builder, cfg.sweep, cfg.filter.z0)


def _emit(cfg: DesignConfig, which: str, trace: ResponseTrace, out: Path) -> dict:
    s2p = write_touchstone(out / f"{which}.s2p", trace, _design_comments(cfg, which))
    csv_path = write_csv(out / f"{which}.csv", trace)
    return {"touchstone": str(s2p), "csv": str(csv_path)}


def _metrics(cfg: DesignConfig, trace: ResponseTrace) -> BandMetrics:
    return band_metrics(trace, cfg.filter.f0, cfg.filter.delta, cfg.objective.harmonic_window)


def _print_metrics(label: str, m: BandMetrics) -> None:
    print(
        f"{label:<12} IL {m.passband_il_db:9.4f} dB  RL {m.passband_rl_db:9.4f} dB  "
        f"2f0 {m.suppression_2f0_db:10.4f} dB  3f0 {m.suppression_3f0_db:10.4f} dB"
    )


def cmd_synth(args) -> int:
    cfg = _load(args)
    sections = synthesize(cfg.filter)
    print(f"{'n':>3} {'jz0':>10} {'z0e_ohm':>10} {'z0o_ohm':>10}")
    for s in sections:
        print(f"{s.index:>3} {s.jz0:>#10.4g} {s.z0e:>#10.4g} {s.z0o:>#10.4g}")
    out = _out_dir(args)
    design = {
        "filter": cfg.to_dict()["filter"],
        "sections": [asdict(s) for s in sections],
    }
    path = out / "design.json"
    path.write_text(json.dumps(design, indent=2, sort_keys=True) + "\n")
    print(f"wrote {path}")
    return 0


def cmd_sweep(args) -> int:
    cfg = _load(args)
    trace = _trace(cfg, args.which)
    files = _emit(cfg, args.which, trace, _out_dir(args))
    for p in files.values():
        print(f"wrote {p}")
    return 0


def _optimize(cfg: DesignConfig, sections) -> OptimizationResult:
    if cfg.stub_bounds is None:
        raise ConfigError("stubs.bounds", "optimization needs stub bounds")
    return optimize_stubs(
        sections, cfg.stub_bounds, cfg.filter, cfg.objective,
        budget=cfg.budget, seed=cfg.seed, sweep_cfg=cfg.sweep, z_ref=cfg.filter.z0,
    )


def _print_stubs(stubs) -> None:
    for s in stubs:
        print(f"  stub site={s.site} zt={s.zt:.6f} ohm fz={s.fz / 1e9:.9f} GHz")


def cmd_optimize(args) -> int:
    cfg = _load(args)
    sections = synthesize(cfg.filter)
    result = _optimize(cfg, sections)
    _print_metrics("before", result.metrics_before)
    _print_metrics("after", result.metrics_after)
    print(f"score {result.score:.6f} after {result.evaluations} evaluations"
          + (" (budget exhausted)" if result.exhausted else ""))
    _print_stubs(result.best)
    path = dump_config(cfg.with_stubs(result.best), _out_dir(args) / "optimized.json")
    print(f"wrote {path}")
    return 0


def compare(cfg: DesignConfig, out: Path) -> dict:
    """Sweep both designs, write their files and return the comparison report."""
    sections = synthesize(cfg.filter)
    if cfg.stubs is None:
        cfg = cfg.with_stubs(_optimize(cfg, sections).best)
    report = {"files": {}, "metrics": {}}
    for which in ("traditional", "proposed"):
        trace = _trace(cfg, which, sections)
        report["metrics"][which] = asdict(_metrics(cfg, trace))
        report["files"][which] = _emit(cfg, which, trace, out)
    t, p = report["metrics"]["traditional"], report["metrics"]["proposed"]
    report["deltas"] = {k: p[k] - t[k] for k in _METRIC_FIELDS}
    report["stubs"] = cfg.to_dict()["stubs"]["placed"]
    return report


def cmd_compare(args) -> int:
    cfg = _load(args)
    out = _out_dir(args)
    report = compare(cfg, out)
    for which in ("traditional", "proposed"):
        _print_metrics(which, BandMetrics(**report["metrics"][which]))
    d = report["deltas"]
    print(
        f"{'delta':<12} IL {d['passband_il_db']:9.4f} dB  RL {d['passband_rl_db']:9.4f} dB  "
        f"2f0 {d['suppression_2f0_db']:10.4f} dB  3f0 {d['suppression_3f0_db']:10.4f} dB"
    )
    path = out / "comparison.json"
    path.write_text(json.dumps(report, indent=2, sort_keys=True) + "\n")
    print(f"wrote {path}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="clfilter",
        description="Coupled-line bandpass filter synthesis, simulation and stub optimization.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--config", help="JSON design config (built-in default if omitted)")
        p.add_argument("--out-dir", default=".", help="directory for output files")
        p.add_argument("--seed", type=int, help="override the config seed")
        p.add_argument("--points", type=int, help="override the number of sweep points")
        return p

    common(sub.add_parser("synth", help="print and save per-section design")).set_defaults(func=cmd_synth)
    p = common(sub.add_parser("sweep", help="write Touchstone and CSV traces"))
    p.add_argument("--which", choices=("traditional", "proposed"), default="traditional")
    p.set_defaults(func=cmd_sweep)
    common(sub.add_parser("optimize", help="tune the open stubs")).set_defaults(func=cmd_optimize)
    common(sub.add_parser("compare", help="traditional vs proposed report")).set_defaults(func=cmd_compare)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except (ValueError, ArithmeticError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_RUNTIME


if __name__ == "__main__":
    sys.exit(main())
