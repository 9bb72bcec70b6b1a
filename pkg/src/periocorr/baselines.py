"""Classical period-search statistics used as comparison methods.

Lomb-Scargle works in the frequency domain; analysis of variance (AoV)
and the string-length statistic work on phase folds over a period grid.
scan_extremum turns a gridded statistic into ranked period candidates.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from numpy.typing import NDArray

from ._qcore import _aov_grid, _sllk_grid
from .discriminator import DynamicBinningConfig, FixedBinningConfig, PeriodCandidate, \
    find_local_optima, make_partition, smooth_folded
from .errors import DegenerateCurveError
from .lightcurve import LightCurve, fold
from .spectral import Spectrum

__all__ = [
    "PeriodGrid",
    "default_frequency_grid",
    "lomb_scargle",
    "aov_statistic",
    "sllk_string_length",
    "scan_extremum",
]

FloatArray = NDArray[np.float64]

SCAN_STATISTICS = ("aov-max", "sllk-min")

_LS_CHUNK = 256


@dataclass(frozen=True)
class PeriodGrid:
    """Uniform trial-period grid from min_period to max_period inclusive-ish.

    Points are min_period + k*step for every k that stays at or below
    max_period (within half a step of rounding slack).
    """

    min_period: float
    max_period: float
    step: float = 1e-3

    def __post_init__(self):
        if not (0.0 < self.min_period < self.max_period):
            raise ValueError(
                f"need 0 < min_period < max_period, got [{self.min_period}, {self.max_period}]"
            )
        if not (np.isfinite(self.step) and self.step > 0.0):
            raise ValueError(f"step must be positive, got {self.step}")

    def periods(self) -> FloatArray:
        count = int(np.floor((self.max_period - self.min_period) / self.step + 0.5)) + 1
        return self.min_period + np.arange(count, dtype=np.float64) * self.step


def default_frequency_grid(curve: LightCurve, min_period: float = 0.2,
                           max_period: float = 200.0, oversample: int = 5) -> FloatArray:
    """Uniform frequency grid for Lomb-Scargle over a period band.

    Spacing is 1/(oversample * T) with T the curve's baseline, running
    from 1/max_period up to 1/min_period.
    """
    if not (0.0 < min_period < max_period):
        raise ValueError(f"need 0 < min_period < max_period, got [{min_period}, {max_period}]")
    span = curve.time_span
    if span <= 0.0:
        raise ValueError("curve has zero baseline")
    df = 1.0 / (oversample * span)
    f_lo = 1.0 / max_period
    f_hi = 1.0 / min_period
    count = int(np.floor((f_hi - f_lo) / df)) + 1
    return f_lo + np.arange(count, dtype=np.float64) * df


def lomb_scargle(curve: LightCurve, frequencies) -> Spectrum:
    """Classic periodogram with the per-frequency time offset.

    At each frequency the offset tau solving tan(2*w*tau) =
    sum(sin 2wt)/sum(cos 2wt) decouples the cosine and sine fits; the
    power is their normalized sum of squared projections, scaled by the
    sample variance so white noise sits near 1.  Degenerate denominators
    yield power 0 at that frequency.
    """
    freqs = np.ascontiguousarray(frequencies, dtype=np.float64)
    if freqs.ndim != 1 or freqs.size == 0:
        raise ValueError("frequencies must be a nonempty 1-D array")
    if np.any(freqs <= 0.0):
        raise ValueError("frequencies must be positive")
    t = curve.times
    x = curve.magnitudes - curve.magnitudes.mean()
    var = float(np.var(x, ddof=1))
    if var <= 0.0:
        raise DegenerateCurveError("constant magnitudes")
    powers = np.empty(freqs.size, dtype=np.float64)
    for lo in range(0, freqs.size, _LS_CHUNK):
        w = 2.0 * np.pi * freqs[lo:lo + _LS_CHUNK, None]
        wt = w * t[None, :]
        tau_phase = 0.5 * np.arctan2(np.sin(2.0 * wt).sum(axis=1),
                                     np.cos(2.0 * wt).sum(axis=1))
        arg = wt - tau_phase[:, None]
        c = np.cos(arg)
        s = np.sin(arg)
        xc = c @ x
        xs = s @ x
        cc = (c * c).sum(axis=1)
        ss = (s * s).sum(axis=1)
        cos_term = np.zeros_like(xc)
        sin_term = np.zeros_like(xs)
        np.divide(xc * xc, cc, out=cos_term, where=cc > 0.0)
        np.divide(xs * xs, ss, out=sin_term, where=ss > 0.0)
        block = 0.5 * (cos_term + sin_term) / var
        block[(cc <= 0.0) | (ss <= 0.0)] = 0.0
        powers[lo:lo + _LS_CHUNK] = block
    return Spectrum(freqs, powers, "Lomb-Scargle", sampling_frequency=None)


def _fixed_bin_index(phases: FloatArray, n_bins: int) -> NDArray[np.int64]:
    idx = (phases * n_bins).astype(np.int64)
    return np.minimum(idx, n_bins - 1)


def aov_statistic(curve: LightCurve, period: float,
                  binning: DynamicBinningConfig | FixedBinningConfig | None = None) -> float:
    """Analysis-of-variance statistic of a phase fold.

    Ratio of between-bin to within-bin magnitude variance; large values
    mark coherent folds.  Bins with fewer than 2 samples are dropped.
    Returns inf when the within-bin variance vanishes on a non-flat fold,
    0 when the bin means are all equal.

    Raises:
        InvalidPeriodError: nonpositive period.
        InsufficientDataError-like ValueError: fewer than 2 usable bins.
    """
    if binning is None:
        binning = FixedBinningConfig(10)
    folded = fold(curve, period)
    phases = folded.phases
    mags = folded.magnitudes
    if isinstance(binning, FixedBinningConfig):
        bin_idx = _fixed_bin_index(phases, binning.n_bins)
        n_bins = binning.n_bins
    else:
        span, _ = binning.resolve(phases.size)
        smoothed = smooth_folded(folded, span)
        partition = make_partition(find_local_optima(folded, smoothed, binning))
        bin_idx = np.searchsorted(partition.boundaries, phases, side="right") - 1
        bin_idx = np.clip(bin_idx, 0, partition.n_bins - 1)
        n_bins = partition.n_bins
    counts = np.bincount(bin_idx, minlength=n_bins)
    usable = counts >= 2
    if int(usable.sum()) < 2:
        raise ValueError("need at least 2 phase bins with 2 or more samples")
    keep = usable[bin_idx]
    idx = bin_idx[keep]
    vals = mags[keep]
    n_used = vals.size
    h_used = int(usable.sum())
    sums = np.bincount(idx, weights=vals, minlength=n_bins)
    cnts = np.bincount(idx, minlength=n_bins).astype(np.float64)
    means = np.zeros(n_bins)
    np.divide(sums, cnts, out=means, where=cnts > 0)
    grand = vals.mean()
    between = float(np.sum(cnts[usable] * (means[usable] - grand) ** 2)) / (h_used - 1)
    within = float(np.sum((vals - means[idx]) ** 2)) / (n_used - h_used)
    if within <= 0.0:
        return float("inf") if between > 0.0 else 0.0
    return between / within


def sllk_string_length(curve: LightCurve, period: float) -> float:
    """Normalized string length of the phase fold, wrap-around included.

    Sum of squared consecutive magnitude differences in phase order (the
    last sample connects back to the first), divided by the total sum of
    squared deviations from the mean.  Smaller is better; white noise
    sits near 2.

    Raises:
        InvalidPeriodError: nonpositive period.
        DegenerateCurveError: constant magnitudes.
    """
    folded = fold(curve, period)
    mags = folded.magnitudes
    den = float(np.sum((mags - mags.mean()) ** 2))
    if den <= 0.0:
        raise DegenerateCurveError("constant magnitudes")
    diffs = np.diff(mags, append=mags[:1])
    return float(np.sum(diffs * diffs)) / den


def scan_extremum(curve: LightCurve, grid: PeriodGrid, statistic: str,
                  n_candidates: int = 10) -> list[PeriodCandidate]:
    """Evaluate a fold statistic over a period grid and rank its extrema.

    statistic is "aov-max" (initializes the analysis-of-variance statistic
    with 10 fixed bins, larger is better) or "sllk-min" (string length,
    smaller is better).  Strict interior local extrema of the gridded
    statistic are ranked best-first; if none exist the single global best
    grid point is returned.  Candidate scores are oriented so that larger
    is always better: the raw statistic for AoV, 1/(1+T) for SLLK.

    Raises:
        ValueError: unknown statistic or n_candidates < 1.
        DegenerateCurveError: constant magnitudes.
    """
    if statistic not in SCAN_STATISTICS:
        raise ValueError(f"statistic must be one of {SCAN_STATISTICS}, got {statistic!r}")
    if n_candidates < 1:
        raise ValueError(f"n_candidates must be >= 1, got {n_candidates}")
    mags = np.ascontiguousarray(curve.magnitudes, dtype=np.float64)
    if float(np.sum((mags - mags.mean()) ** 2)) <= 0.0:
        raise DegenerateCurveError("constant magnitudes")
    times = np.ascontiguousarray(curve.times, dtype=np.float64)
    periods = grid.periods()
    if statistic == "aov-max":
        values = np.asarray(_aov_grid(times, mags, periods, 10))
        oriented = values
        origin = "AoV-scan"
    else:
        values = np.asarray(_sllk_grid(times, mags, periods))
        oriented = -values
        origin = "SLLK-string"
    if periods.size >= 3:
        mid = oriented[1:-1]
        extrema = np.flatnonzero((mid > oriented[:-2]) & (mid > oriented[2:])) + 1
    else:
        extrema = np.empty(0, dtype=np.int64)
    if extrema.size == 0:
        extrema = np.array([int(np.argmax(oriented))], dtype=np.int64)
    order = np.lexsort((periods[extrema], -oriented[extrema]))
    chosen = extrema[order][: int(n_candidates)]
    out = []
    for i in chosen:
        raw = float(values[i])
        score = raw if statistic == "aov-max" else 1.0 / (1.0 + raw)
        if not np.isfinite(score):
            score = float(np.finfo(np.float64).max)
        out.append(PeriodCandidate(period=float(periods[i]), score=score,
                                   origin=origin, kernel_sigma=None, window_tag="full"))
    return out
