"""Command-line interface.

Subcommands: estimate (full pipeline on light-curve files), spectrum (one
transform of one curve), sweep (spectra across the bandwidth grid), bench
(synthetic or file-based method benchmark), baseline (classical statistic
scans).  Exit codes: 0 on success, 1 when any input fails to process, 2
for flag or argument errors.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

import numpy as np

from . import __version__
from .baselines import PeriodGrid, default_frequency_grid, lomb_scargle, scan_extremum
from .bench import (
    SAMPLINGS,
    TEMPLATES,
    SyntheticSpec,
    evaluate_batch,
    generate,
)
from .discriminator import DynamicBinningConfig, FixedBinningConfig
from .lightcurve import load_lightcurve, normalize
from .pipeline import METHODS, PipelineConfig, estimate_with_method
from .slotting import KernelConfig, slotted_autocorrelation, slotted_correntropy
from .spectral import csd, save_spectrum

FMT = ".10g"


def _fmt(value: float) -> str:
    return format(float(value), FMT)


def _parse_binning(text: str) -> DynamicBinningConfig | FixedBinningConfig:
    if text == "dynamic":
        return DynamicBinningConfig()
    if text.startswith("fixed:"):
        try:
            n_bins = int(text.split(":", 1)[1])
        except ValueError:
            raise argparse.ArgumentTypeError(f"bad bin count in {text!r}") from None
        if n_bins < 1:
            raise argparse.ArgumentTypeError("fixed binning needs at least 1 bin")
        return FixedBinningConfig(n_bins)
    raise argparse.ArgumentTypeError(f"binning must be 'dynamic' or 'fixed:H', got {text!r}")


def _parse_sigma_grid(text: str) -> tuple[float, ...]:
    try:
        values = tuple(float(f) for f in text.split(",") if f.strip())
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad sigma grid {text!r}") from None
    if not values:
        raise argparse.ArgumentTypeError("sigma grid must not be empty")
    return values


def _add_pipeline_flags(parser: argparse.ArgumentParser) -> None:
    defaults = PipelineConfig()
    parser.add_argument("--sigma-grid", type=_parse_sigma_grid, default=None,
                        metavar="S1,S2,...",
                        help="kernel bandwidths (default: 25 log-spaced in [0.01, 5])")
    parser.add_argument("--slot-size", type=float, default=defaults.slot_size,
                        help="lag slot width in days (default %(default)s)")
    parser.add_argument("--max-lag-fraction", type=float, default=defaults.max_lag_fraction,
                        help="max lag as a fraction of the series span (default %(default)s)")
    parser.add_argument("--n-peaks", type=int, default=defaults.n_peaks,
                        help="spectral peaks kept per spectrum (default %(default)s)")
    parser.add_argument("--period-min", type=float, default=defaults.period_band[0],
                        help="shortest trial period in days (default %(default)s)")
    parser.add_argument("--period-max", type=float, default=defaults.period_band[1],
                        help="longest trial period in days (default %(default)s)")
    parser.add_argument("--oversample", type=int, default=defaults.oversample,
                        help="spectral zero-padding factor (default %(default)s)")
    parser.add_argument("--binning", type=_parse_binning, default=DynamicBinningConfig(),
                        metavar="dynamic|fixed:H",
                        help="phase binning rule (default dynamic)")
    parser.add_argument("--scan-step", type=float, default=defaults.scan_step,
                        help="period grid step for aov/sllk scans (default %(default)s)")
    parser.add_argument("--hybrid-sigma", type=float, default=defaults.hybrid_sigma,
                        help="kernel bandwidth for refining kernel-free seeds "
                             "(default %(default)s)")


def _config_from_args(args, parser: argparse.ArgumentParser) -> PipelineConfig:
    kwargs = dict(
        slot_size=args.slot_size,
        max_lag_fraction=args.max_lag_fraction,
        n_peaks=args.n_peaks,
        period_band=(args.period_min, args.period_max),
        oversample=args.oversample,
        binning=args.binning,
        scan_step=args.scan_step,
        hybrid_sigma=args.hybrid_sigma,
    )
    if args.sigma_grid is not None:
        kwargs["sigma_grid"] = args.sigma_grid
    try:
        return PipelineConfig(**kwargs)
    except ValueError as exc:
        parser.error(str(exc))
        raise AssertionError("unreachable")


def _out_dir(args) -> Path:
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    return out


def _candidate_rows(report) -> list[str]:
    rows = ["period_days\tscore\torigin\tsigma\twindow"]
    for c in report.candidates:
        sigma = _fmt(c.kernel_sigma) if c.kernel_sigma is not None else "-"
        rows.append(f"{_fmt(c.period)}\t{_fmt(c.score)}\t{c.origin}\t{sigma}\t{c.window_tag}")
    return rows


def _provenance_rows(report) -> list[str]:
    rows = ["window\tsigma\tkind\tn_peaks\tperiods_days"]
    for p in report.provenance:
        sigma = _fmt(p.kernel_sigma) if p.kernel_sigma is not None else "-"
        periods = ";".join(_fmt(x) for x in p.peak_periods) if p.peak_periods else "-"
        rows.append(f"{p.window_tag}\t{sigma}\t{p.series_kind}\t{p.n_peaks_found}\t{periods}")
    return rows


def _render_report(report, fmt: str) -> str:
    if fmt == "kv":
        lines = [
            "report = estimate",
            f"curve = {report.curve_id}",
            f"method = {report.method}",
            f"best_period_days = {_fmt(report.best.period)}",
            f"best_score = {_fmt(report.best.score)}",
            f"best_origin = {report.best.origin}",
            f"best_window = {report.best.window_tag}",
            f"n_candidates = {len(report.candidates)}",
            "[candidates]",
            *_candidate_rows(report),
            "[provenance]",
            *_provenance_rows(report),
        ]
    else:
        lines = [
            f"period estimate for curve: {report.curve_id}",
            f"method: {report.method}",
            f"best period [days]: {_fmt(report.best.period)}",
            f"best score: {_fmt(report.best.score)}",
            f"best origin: {report.best.origin} ({report.best.window_tag} window)",
            "",
            "candidates (best first):",
            *("  " + row for row in _candidate_rows(report)),
            "",
            "seed provenance:",
            *("  " + row for row in _provenance_rows(report)),
        ]
    return "\n".join(lines) + "\n"


def _cmd_estimate(args, parser) -> int:
    config = _config_from_args(args, parser)
    out = _out_dir(args)
    failures = 0
    for path in sorted(Path(p) for p in args.files):
        try:
            curve = load_lightcurve(path)
            report = estimate_with_method(curve, args.method, config)
        except Exception as exc:
            failures += 1
            (out / f"{path.stem}.error.txt").write_text(
                f"error processing {path.name}: {exc}\n", encoding="utf-8")
            print(f"FAIL {path} {exc}", file=sys.stderr)
            continue
        (out / f"{path.stem}.report.txt").write_text(
            _render_report(report, args.format), encoding="utf-8")
        print(f"OK {path} best_period_days={_fmt(report.best.period)} "
              f"score={_fmt(report.best.score)}")
    return 1 if failures else 0


def _cmd_spectrum(args, parser) -> int:
    config = _config_from_args(args, parser)
    out = _out_dir(args)
    path = Path(args.file)
    try:
        norm = normalize(load_lightcurve(path))
        max_lag = config.max_lag_fraction * norm.time_span
        if max_lag < config.slot_size:
            max_lag = config.slot_size
        if args.kind == "csd":
            series = slotted_correntropy(norm, KernelConfig(args.sigma),
                                         config.slot_size, max_lag)
            spectrum = csd(series, config.oversample)
        elif args.kind == "psd":
            series = slotted_autocorrelation(norm, config.slot_size, max_lag)
            spectrum = csd(series, config.oversample)
        else:
            freqs = default_frequency_grid(norm, *config.period_band)
            spectrum = lomb_scargle(norm, freqs)
    except Exception as exc:
        print(f"FAIL {path} {exc}", file=sys.stderr)
        return 1
    target = out / f"{path.stem}.{args.kind}.txt"
    save_spectrum(spectrum, target)
    print(f"OK {path} wrote {target}")
    return 0


def _cmd_sweep(args, parser) -> int:
    config = _config_from_args(args, parser)
    out = _out_dir(args)
    path = Path(args.file)
    try:
        norm = normalize(load_lightcurve(path))
        max_lag = config.max_lag_fraction * norm.time_span
        if max_lag < config.slot_size:
            max_lag = config.slot_size
        sweep_dir = out / f"{path.stem}_sweep"
        sweep_dir.mkdir(parents=True, exist_ok=True)
        index_lines = []
        for i, sigma in enumerate(config.sigma_grid):
            series = slotted_correntropy(norm, KernelConfig(sigma),
                                         config.slot_size, max_lag)
            spectrum = csd(series, config.oversample)
            name = f"sigma_{i:02d}.txt"
            save_spectrum(spectrum, sweep_dir / name)
            index_lines.append(f"{name}\t{_fmt(sigma)}")
        (sweep_dir / "index.txt").write_text("\n".join(index_lines) + "\n", encoding="utf-8")
    except Exception as exc:
        print(f"FAIL {path} {exc}", file=sys.stderr)
        return 1
    print(f"OK {path} wrote {len(config.sigma_grid)} spectra to {sweep_dir}")
    return 0


def _parse_methods(text: str, parser) -> list[str]:
    methods = [m.strip() for m in text.split(",") if m.strip()]
    if not methods:
        parser.error("no methods given")
    for m in methods:
        if m not in METHODS:
            parser.error(f"unknown method {m!r}; valid methods: {', '.join(METHODS)}")
    return methods


def _bench_items_synthetic(args) -> list:
    rng = np.random.default_rng(args.seed)
    lo = max(args.period_min, 0.5)
    hi = min(args.period_max, args.time_span / 3.0)
    if not lo < hi:
        raise ValueError(f"empty synthetic period range [{lo}, {hi}]")
    items = []
    for i in range(args.count):
        period = float(np.exp(rng.uniform(np.log(lo), np.log(hi))))
        spec = SyntheticSpec(
            template=args.template,
            period=period,
            amplitude=1.0,
            noise_sigma=args.noise_sigma,
            n_samples=args.n_samples,
            time_span=args.time_span,
            sampling=args.sampling,
            seed=args.seed + 1 + i,
            curve_id=f"{args.template}-{i:03d}",
        )
        items.append(generate(spec))
    return items


def _bench_items_files(args) -> list:
    curves_dir = Path(args.curves_dir)
    truth_path = Path(args.truth_file)
    by_stem = {}
    for child in sorted(curves_dir.iterdir()):
        if child.is_file():
            by_stem.setdefault(child.stem, child)
    items = []
    with open(truth_path, "r", encoding="utf-8") as handle:
        for lineno, raw in enumerate(handle, start=1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            fields = line.replace(",", " ").split()
            if len(fields) < 2:
                raise ValueError(f"{truth_path}:{lineno}: expected 'id period'")
            curve_id, period_text = fields[0], fields[1]
            try:
                period = float(period_text)
            except ValueError:
                raise ValueError(
                    f"{truth_path}:{lineno}: bad period {period_text!r}") from None
            if curve_id not in by_stem:
                raise ValueError(f"truth id {curve_id!r} has no matching file in {curves_dir}")
            items.append((load_lightcurve(by_stem[curve_id], curve_id=curve_id), period))
    if not items:
        raise ValueError(f"no usable rows in {truth_path}")
    return items


def _cmd_bench(args, parser) -> int:
    config = _config_from_args(args, parser)
    methods = _parse_methods(args.methods, parser)
    out = _out_dir(args)
    try:
        if args.curves_dir:
            items = _bench_items_files(args)
        else:
            items = _bench_items_synthetic(args)
        result = evaluate_batch(items, methods, config)
    except Exception as exc:
        print(f"FAIL bench {exc}", file=sys.stderr)
        return 1
    table = "\n".join(result.table_lines()) + "\n"
    (out / "bench_table.txt").write_text(table, encoding="utf-8")
    detail_lines = ["method\tcurve\ttrue_period\testimated_period\toutcome\trelative_error"]
    for summary in result.summaries:
        for o in summary.outcomes:
            detail_lines.append(
                f"{summary.method}\t{o.curve_id}\t{_fmt(o.true_period)}\t"
                f"{_fmt(o.estimated_period)}\t{o.outcome}\t{_fmt(o.relative_error)}")
    (out / "bench_outcomes.txt").write_text("\n".join(detail_lines) + "\n", encoding="utf-8")
    print(table, end="")
    return 0


def _cmd_baseline(args, parser) -> int:
    config = _config_from_args(args, parser)
    out = _out_dir(args)
    path = Path(args.file)
    try:
        norm = normalize(load_lightcurve(path))
        if args.statistic == "ls":
            freqs = default_frequency_grid(norm, *config.period_band)
            spectrum = lomb_scargle(norm, freqs)
            target = out / f"{path.stem}.ls.txt"
            save_spectrum(spectrum, target)
            best = float(spectrum.frequencies[int(np.argmax(spectrum.powers))])
            print(f"OK {path} best_period_days={_fmt(1.0 / best)}")
            return 0
        grid = PeriodGrid(config.period_band[0], config.period_band[1], config.scan_step)
        statistic = "aov-max" if args.statistic == "aov" else "sllk-min"
        candidates = scan_extremum(norm, grid, statistic, n_candidates=config.n_peaks)
        from ._qcore import _aov_grid, _sllk_grid  # local import keeps startup light
        periods = grid.periods()
        times = np.ascontiguousarray(norm.times)
        mags = np.ascontiguousarray(norm.magnitudes)
        if args.statistic == "aov":
            values = np.asarray(_aov_grid(times, mags, periods, 10))
        else:
            values = np.asarray(_sllk_grid(times, mags, periods))
        target = out / f"{path.stem}.{args.statistic}.txt"
        lines = [f"# period_days {args.statistic}"]
        lines.extend(f"{_fmt(p)} {_fmt(v)}" for p, v in zip(periods, values))
        target.write_text("\n".join(lines) + "\n", encoding="utf-8")
        print(f"OK {path} best_period_days={_fmt(candidates[0].period)}")
        return 0
    except Exception as exc:
        print(f"FAIL {path} {exc}", file=sys.stderr)
        return 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="periocorr",
        description="Period estimation for noisy, unevenly sampled light curves.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p_est = sub.add_parser("estimate", help="estimate periods for light-curve files")
    p_est.add_argument("files", nargs="+", help="light-curve text files")
    p_est.add_argument("--method", choices=METHODS, default="correntropy+ip")
    p_est.add_argument("--out", default=".", help="output directory (default: .)")
    p_est.add_argument("--format", choices=("text", "kv"), default="text")
    _add_pipeline_flags(p_est)

    p_spec = sub.add_parser("spectrum", help="write one spectrum of one curve")
    p_spec.add_argument("file")
    p_spec.add_argument("--kind", choices=("csd", "psd", "ls"), default="csd")
    p_spec.add_argument("--sigma", type=float, default=0.5,
                        help="kernel bandwidth for --kind csd (default %(default)s)")
    p_spec.add_argument("--out", default=".")
    _add_pipeline_flags(p_spec)

    p_sweep = sub.add_parser("sweep", help="write spectra across the bandwidth grid")
    p_sweep.add_argument("file")
    p_sweep.add_argument("--out", default=".")
    _add_pipeline_flags(p_sweep)

    p_bench = sub.add_parser("bench", help="benchmark methods on synthetic or real curves")
    p_bench.add_argument("--methods", default="correntropy+ip",
                         help="comma-separated method list (default %(default)s)")
    p_bench.add_argument("--template", choices=TEMPLATES, default="sinusoid")
    p_bench.add_argument("--sampling", choices=SAMPLINGS, default="uniform-random")
    p_bench.add_argument("--count", type=int, default=10)
    p_bench.add_argument("--noise-sigma", type=float, default=0.1)
    p_bench.add_argument("--n-samples", type=int, default=400)
    p_bench.add_argument("--time-span", type=float, default=1500.0)
    p_bench.add_argument("--seed", type=int, default=0)
    p_bench.add_argument("--curves-dir", default=None,
                         help="benchmark real curves from this directory instead")
    p_bench.add_argument("--truth-file", default=None,
                         help="text table of 'id period' rows for --curves-dir")
    p_bench.add_argument("--out", default=".")
    _add_pipeline_flags(p_bench)

    p_base = sub.add_parser("baseline", help="classical statistic scan for one curve")
    p_base.add_argument("file")
    p_base.add_argument("--statistic", choices=("aov", "sllk", "ls"), required=True)
    p_base.add_argument("--out", default=".")
    _add_pipeline_flags(p_base)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "bench":
        if (args.curves_dir is None) != (args.truth_file is None):
            parser.error("--curves-dir and --truth-file must be given together")
        if args.count < 1:
            parser.error("--count must be >= 1")
    dispatch = {
        "estimate": _cmd_estimate,
        "spectrum": _cmd_spectrum,
        "sweep": _cmd_sweep,
        "bench": _cmd_bench,
        "baseline": _cmd_baseline,
    }
    return dispatch[args.command](args, parser)


if __name__ == "__main__":
    sys.exit(main())
