"""End-to-end period estimation with interchangeable methods.

The default route: normalize the curve, carve out its densest half, run
slotted correntropy over a bandwidth grid on both series, transform each
to a spectral density, harvest the strongest peaks in the period band,
refine every peak with the local information-potential scan, then pool,
deduplicate, and pick the best-scoring candidate.  Alternative methods
swap the seeding stage (plain autocorrelation spectrum, Lomb-Scargle,
AoV, string length) and optionally skip the refinement.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field

import numpy as np

from .baselines import PeriodGrid, default_frequency_grid, lomb_scargle, scan_extremum
from .discriminator import DynamicBinningConfig, FixedBinningConfig, PeriodCandidate, fine_tune
from .errors import EmptyReportError
from .lightcurve import LightCurve, normalize, select_dense_window
from .slotting import KernelConfig, slotted_autocorrelation, slotted_correntropy
from .spectral import csd, extract_peaks

__all__ = [
    "PipelineConfig",
    "ProvenanceEntry",
    "EstimationReport",
    "METHODS",
    "default_sigma_grid",
    "estimate_period",
    "estimate_with_method",
]

METHODS = (
    "correntropy+ip",
    "correlation+ip",
    "ls",
    "ls+ip",
    "aov",
    "sllk",
    "sllk+ip",
)

DEDUP_RELATIVE_TOL = 1e-3


def default_sigma_grid(n_points: int = 25, low: float = 0.01, high: float = 5.0,
                       ) -> tuple[float, ...]:
    """Log-spaced kernel bandwidth grid, 25 points over [0.01, 5] by default."""
    if n_points < 1:
        raise ValueError(f"n_points must be >= 1, got {n_points}")
    if not (0.0 < low <= high):
        raise ValueError(f"need 0 < low <= high, got [{low}, {high}]")
    if n_points == 1:
        return (float(low),)
    return tuple(float(s) for s in np.geomspace(low, high, n_points))


@dataclass(frozen=True)
class PipelineConfig:
    """Knobs for the estimation pipeline.

    sigma_grid: kernel bandwidths for the correntropy route.
    slot_size: lag slot width in days.
    max_lag_fraction: maximum lag as a fraction of each series' span.
    n_peaks: spectral peaks harvested per spectrum (and scan candidates
        per baseline scan).
    period_band: [min, max] trial periods in days.
    oversample: zero-padding factor for the spectral transform.
    binning: phase-binning rule for the discrimination stage.
    scan_step: period grid step for the AoV and string-length scans.
    hybrid_sigma: kernel bandwidth for refining candidates that arrive
        without one (Lomb-Scargle, string-length, autocorrelation seeds).
    """

    sigma_grid: tuple[float, ...] = field(default_factory=default_sigma_grid)
    slot_size: float = 0.25
    max_lag_fraction: float = 0.1
    n_peaks: int = 10
    period_band: tuple[float, float] = (0.2, 200.0)
    oversample: int = 8
    binning: DynamicBinningConfig | FixedBinningConfig = field(
        default_factory=DynamicBinningConfig
    )
    scan_step: float = 1e-3
    hybrid_sigma: float = 0.5

    def __post_init__(self):
        if len(self.sigma_grid) == 0:
            raise ValueError("sigma_grid must not be empty")
        grid = tuple(float(s) for s in self.sigma_grid)
        if any(not (np.isfinite(s) and s > 0.0) for s in grid):
            raise ValueError("sigma_grid entries must be positive and finite")
        if any(b <= a for a, b in zip(grid, grid[1:])):
            raise ValueError("sigma_grid must be strictly increasing")
        object.__setattr__(self, "sigma_grid", grid)
        if not (np.isfinite(self.slot_size) and self.slot_size > 0.0):
            raise ValueError(f"slot_size must be positive, got {self.slot_size}")
        if not (0.0 < self.max_lag_fraction <= 1.0):
            raise ValueError(f"max_lag_fraction must be in (0, 1], got {self.max_lag_fraction}")
        if self.n_peaks < 1:
            raise ValueError(f"n_peaks must be >= 1, got {self.n_peaks}")
        lo, hi = self.period_band
        if not (0.0 < lo < hi):
            raise ValueError(f"invalid period band [{lo}, {hi}]")
        object.__setattr__(self, "period_band", (float(lo), float(hi)))
        if self.oversample < 1:
            raise ValueError(f"oversample must be >= 1, got {self.oversample}")
        if not (np.isfinite(self.scan_step) and self.scan_step > 0.0):
            raise ValueError(f"scan_step must be positive, got {self.scan_step}")
        if not (np.isfinite(self.hybrid_sigma) and self.hybrid_sigma > 0.0):
            raise ValueError(f"hybrid_sigma must be positive, got {self.hybrid_sigma}")


@dataclass(frozen=True)
class ProvenanceEntry:
    """One spectrum (or scan) that contributed seed candidates."""

    window_tag: str
    kernel_sigma: float | None
    series_kind: str
    n_peaks_found: int
    peak_periods: tuple[float, ...]


@dataclass(frozen=True)
class EstimationReport:
    """Outcome of one estimation run.

    candidates are deduplicated and sorted best-first; best is
    candidates[0].  timings holds wall-clock seconds per stage and is
    excluded from serialized reports so repeated runs write identical
    files.
    """

    method: str
    curve_id: str
    best: PeriodCandidate
    candidates: tuple[PeriodCandidate, ...]
    provenance: tuple[ProvenanceEntry, ...]
    timings: dict[str, float] = field(default_factory=dict)


def estimate_period(curve: LightCurve, config: PipelineConfig | None = None,
                    ) -> EstimationReport:
    """Full default pipeline: slotted correntropy seeds plus IP refinement."""
    return estimate_with_method(curve, "correntropy+ip", config)


def _sort_key(candidate: PeriodCandidate):
    sigma = candidate.kernel_sigma if candidate.kernel_sigma is not None else -1.0
    return (-candidate.score, candidate.period, candidate.window_tag, sigma)


def _dedupe(candidates: list[PeriodCandidate]) -> list[PeriodCandidate]:
    """Best-first dedup: drop periods within 0.1% of an already-kept one."""
    kept: list[PeriodCandidate] = []
    for cand in sorted(candidates, key=_sort_key):
        if all(abs(cand.period - k.period) > DEDUP_RELATIVE_TOL * k.period for k in kept):
            kept.append(cand)
    return kept


def _windows(norm: LightCurve) -> list[tuple[str, LightCurve]]:
    dense = select_dense_window(norm)
    out = [("full", norm)]
    if dense.n_samples < norm.n_samples or not np.array_equal(dense.times, norm.times):
        out.append(("dense-half", dense))
    return out


def _spectral_seeds(norm: LightCurve, config: PipelineConfig, kind: str,
                    ) -> tuple[list[PeriodCandidate], list[ProvenanceEntry]]:
    seeds: list[PeriodCandidate] = []
    provenance: list[ProvenanceEntry] = []
    lo, hi = config.period_band
    for tag, series_curve in _windows(norm):
        max_lag = config.max_lag_fraction * series_curve.time_span
        if max_lag < config.slot_size:
            max_lag = config.slot_size
        if kind == "correntropy":
            sigmas: tuple[float | None, ...] = config.sigma_grid
        else:
            sigmas = (None,)
        for sigma in sigmas:
            if sigma is None:
                series = slotted_autocorrelation(series_curve, config.slot_size, max_lag)
                origin = "PSD-peak"
            else:
                series = slotted_correntropy(series_curve, KernelConfig(sigma),
                                             config.slot_size, max_lag)
                origin = "CSD-peak"
            spectrum = csd(series, config.oversample)
            peaks = extract_peaks(spectrum, config.n_peaks, lo, hi)
            provenance.append(ProvenanceEntry(
                window_tag=tag,
                kernel_sigma=sigma,
                series_kind=spectrum.kind,
                n_peaks_found=len(peaks.entries),
                peak_periods=peaks.periods(),
            ))
            for peak in peaks.entries:
                seeds.append(PeriodCandidate(
                    period=peak.period,
                    score=0.0,
                    origin=origin,
                    kernel_sigma=sigma,
                    window_tag=tag,
                ))
    return seeds, provenance


def _refine(norm: LightCurve, seeds: list[PeriodCandidate], config: PipelineConfig,
            ) -> list[PeriodCandidate]:
    refined = []
    for seed in seeds:
        sigma = seed.kernel_sigma if seed.kernel_sigma is not None else config.hybrid_sigma
        refined.append(fine_tune(norm, seed, KernelConfig(sigma), config.binning))
    return refined


def _ls_seeds(norm: LightCurve, config: PipelineConfig,
              ) -> tuple[list[PeriodCandidate], list[ProvenanceEntry]]:
    lo, hi = config.period_band
    freqs = default_frequency_grid(norm, lo, hi)
    spectrum = lomb_scargle(norm, freqs)
    peaks = extract_peaks(spectrum, config.n_peaks, lo, hi)
    provenance = [ProvenanceEntry(
        window_tag="full",
        kernel_sigma=None,
        series_kind="Lomb-Scargle",
        n_peaks_found=len(peaks.entries),
        peak_periods=peaks.periods(),
    )]
    seeds = [PeriodCandidate(period=p.period, score=p.power, origin="LS-peak",
                             kernel_sigma=None, window_tag="full")
             for p in peaks.entries]
    return seeds, provenance


def _scan_seeds(norm: LightCurve, config: PipelineConfig, statistic: str,
                ) -> tuple[list[PeriodCandidate], list[ProvenanceEntry]]:
    lo, hi = config.period_band
    grid = PeriodGrid(lo, hi, config.scan_step)
    seeds = scan_extremum(norm, grid, statistic, n_candidates=config.n_peaks)
    provenance = [ProvenanceEntry(
        window_tag="full",
        kernel_sigma=None,
        series_kind=statistic,
        n_peaks_found=len(seeds),
        peak_periods=tuple(s.period for s in seeds),
    )]
    return seeds, provenance


def estimate_with_method(curve: LightCurve, method: str,
                         config: PipelineConfig | None = None) -> EstimationReport:
    """Run one named method end to end and report ranked candidates.

    Methods: correntropy+ip (default pipeline), correlation+ip (slotted
    autocorrelation seeds, IP refinement), ls / ls+ip (Lomb-Scargle peaks,
    optionally refined), aov, sllk, sllk+ip (gridded fold statistics,
    optionally refined).

    Raises:
        ValueError: unknown method name.
        EmptyReportError: no stage produced a single candidate.
    """
    if method not in METHODS:
        raise ValueError(f"method must be one of {METHODS}, got {method!r}")
    if config is None:
        config = PipelineConfig()
    timings: dict[str, float] = {}
    t_start = time.perf_counter()
    norm = normalize(curve)
    timings["normalize"] = time.perf_counter() - t_start

    t_seed = time.perf_counter()
    if method in ("correntropy+ip", "correlation+ip"):
        kind = "correntropy" if method == "correntropy+ip" else "correlation"
        seeds, provenance = _spectral_seeds(norm, config, kind)
    elif method in ("ls", "ls+ip"):
        seeds, provenance = _ls_seeds(norm, config)
    elif method == "aov":
        seeds, provenance = _scan_seeds(norm, config, "aov-max")
    else:
        seeds, provenance = _scan_seeds(norm, config, "sllk-min")
    timings["seed"] = time.perf_counter() - t_seed

    t_refine = time.perf_counter()
    if method.endswith("+ip"):
        candidates = _refine(norm, seeds, config)
    else:
        candidates = list(seeds)
    timings["refine"] = time.perf_counter() - t_refine

    candidates = _dedupe(candidates)
    if not candidates:
        raise EmptyReportError(
            f"method {method} produced no candidates in the band {config.period_band}"
        )
    timings["total"] = time.perf_counter() - t_start
    return EstimationReport(
        method=method,
        curve_id=curve.curve_id,
        best=candidates[0],
        candidates=tuple(candidates),
        provenance=tuple(provenance),
        timings=timings,
    )
