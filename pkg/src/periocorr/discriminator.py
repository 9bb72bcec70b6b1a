"""Information-potential discrimination of trial periods.

A good period folds the curve into a tight, structured phase diagram.
That structure is scored without any template: the fold is cut into phase
bins, each bin's information potential (mean pairwise Gaussian kernel,
self-pairs included) is compared against the whole curve's, and the mean
squared contrast is the score Q.  Bin boundaries either adapt to the fold
(midpoints between local optima of a smoothed version) or form a fixed
equal-width grid.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from numpy.typing import NDArray

from ._qcore import (
    _circular_mean,
    _information_potential,
    _q_grid,
    _q_single,
    _window_optima,
)
from .errors import InsufficientDataError, InvalidPeriodError
from .lightcurve import FoldedCurve, LightCurve
from .slotting import KernelConfig

__all__ = [
    "DynamicBinningConfig",
    "FixedBinningConfig",
    "BinPartition",
    "PeriodCandidate",
    "information_potential",
    "smooth_folded",
    "find_local_optima",
    "make_partition",
    "q_metric",
    "fine_tune",
]

FloatArray = NDArray[np.float64]

FINE_TUNE_STEP = 1e-3
FINE_TUNE_HALF_WIDTH = 0.5
FINE_TUNE_MIN_PERIOD = 0.05

CANDIDATE_ORIGINS = (
    "seed",
    "CSD-peak",
    "PSD-peak",
    "LS-peak",
    "AoV-scan",
    "SLLK-string",
)


def _nearest_int(x: float) -> int:
    return int(np.floor(x + 0.5))


@dataclass(frozen=True)
class DynamicBinningConfig:
    """Adaptive phase binning driven by the shape of the fold.

    smoothing_span is the circular moving-average length.  extrema_window
    is the sliding-window size for optimum detection; None picks
    max(4, round(N / 10)) per fold, and the window stride is always half
    the window.
    """

    smoothing_span: int = 20
    extrema_window: int | None = None

    def __post_init__(self):
        if self.smoothing_span < 1:
            raise ValueError(f"smoothing_span must be >= 1, got {self.smoothing_span}")
        if self.extrema_window is not None and self.extrema_window < 2:
            raise ValueError(f"extrema_window must be >= 2, got {self.extrema_window}")

    def resolve(self, n_samples: int) -> tuple[int, int]:
        """Concrete (smoothing_span, extrema_window) for a fold of n_samples."""
        span = min(self.smoothing_span, n_samples)
        if self.extrema_window is not None:
            m_win = self.extrema_window
        else:
            m_win = max(4, _nearest_int(n_samples / 10.0))
        return span, m_win


@dataclass(frozen=True)
class FixedBinningConfig:
    """Equal-width phase binning with a fixed bin count."""

    n_bins: int = 10

    def __post_init__(self):
        if self.n_bins < 1:
            raise ValueError(f"n_bins must be >= 1, got {self.n_bins}")


@dataclass(frozen=True)
class BinPartition:
    """Phase-bin boundaries in [0, 1], first 0.0 and last 1.0.

    Bin h covers [boundaries[h], boundaries[h+1]); the final bin also
    takes phase values up to 1.  optima_phases records the optima the
    dynamic rule derived the boundaries from (empty for fixed grids).
    """

    boundaries: FloatArray
    optima_phases: FloatArray
    mode: str

    def __post_init__(self):
        bounds = np.array(self.boundaries, dtype=np.float64, copy=True)
        opt = np.array(self.optima_phases, dtype=np.float64, copy=True)
        bounds.setflags(write=False)
        opt.setflags(write=False)
        if bounds.ndim != 1 or bounds.size < 2:
            raise ValueError("need at least 2 boundaries")
        if bounds[0] != 0.0 or bounds[-1] != 1.0:
            raise ValueError("boundaries must start at 0.0 and end at 1.0")
        if np.any(np.diff(bounds) < 0.0):
            raise ValueError("boundaries must be nondecreasing")
        object.__setattr__(self, "boundaries", bounds)
        object.__setattr__(self, "optima_phases", opt)

    @property
    def n_bins(self) -> int:
        return int(self.boundaries.size - 1)

    @classmethod
    def fixed(cls, n_bins: int) -> "BinPartition":
        edges = np.linspace(0.0, 1.0, n_bins + 1)
        return cls(boundaries=edges, optima_phases=np.empty(0), mode=f"fixed:{n_bins}")


@dataclass(frozen=True)
class PeriodCandidate:
    """One trial period with its score and provenance.

    origin says which stage produced the candidate; kernel_sigma is the
    kernel bandwidth attached to it (None when no kernel was involved);
    window_tag distinguishes the full curve from the dense half.
    """

    period: float
    score: float = 0.0
    origin: str = "seed"
    kernel_sigma: float | None = None
    window_tag: str = "full"

    def __post_init__(self):
        if not (np.isfinite(self.period) and self.period > 0.0):
            raise InvalidPeriodError(f"candidate period must be positive, got {self.period}")
        if self.origin not in CANDIDATE_ORIGINS:
            raise ValueError(f"origin must be one of {CANDIDATE_ORIGINS}, got {self.origin!r}")
        if not self.score >= 0.0:
            raise ValueError(f"score must be nonnegative, got {self.score}")


def information_potential(values, config: KernelConfig) -> float:
    """Mean pairwise Gaussian kernel over a sample set, self-pairs included.

    For a single value this is the kernel peak 1/(sqrt(2*pi)*sigma); it
    decreases as the values spread out relative to sigma.

    Raises:
        InsufficientDataError: values is empty.
    """
    x = np.ascontiguousarray(values, dtype=np.float64)
    if x.ndim != 1 or x.size == 0:
        raise InsufficientDataError("information_potential needs a nonempty 1-D sample set")
    return float(_information_potential(x, float(config.sigma)))


def smooth_folded(folded: FoldedCurve, span: int = 20) -> FloatArray:
    """Circular moving average of the folded magnitudes.

    The window wraps across the phase seam at 1.0 -> 0.0 and is clamped
    to the fold length.
    """
    if span < 1:
        raise ValueError(f"span must be >= 1, got {span}")
    mags = np.ascontiguousarray(folded.magnitudes, dtype=np.float64)
    return np.asarray(_circular_mean(mags, int(span)))


def find_local_optima(folded: FoldedCurve, smoothed,
                      config: DynamicBinningConfig | None = None) -> list[tuple[float, str]]:
    """Locate local optima of a smoothed fold by a sliding-window vote.

    Windows of the resolved extrema_window slide with half-window stride;
    each window nominates its maximum and minimum unless they sit on the
    window edge.  Nominations are deduplicated and returned phase-sorted
    as (phase, "max"|"min") pairs.  If fewer than 2 survive, falls back to
    the global maximum and minimum.

    Raises:
        InsufficientDataError: fold shorter than twice the window.
    """
    if config is None:
        config = DynamicBinningConfig()
    sm = np.ascontiguousarray(smoothed, dtype=np.float64)
    ph = folded.phases
    if sm.shape != ph.shape:
        raise ValueError("smoothed must be co-indexed with the fold")
    n = sm.size
    _, m_win = config.resolve(n)
    if n < 2 * m_win:
        raise InsufficientDataError(
            f"fold of {n} samples is shorter than twice the {m_win}-sample window"
        )
    is_max, is_min = _window_optima(sm, int(m_win))
    hits = np.flatnonzero(is_max | is_min)
    if hits.size < 2:
        gmax = int(np.argmax(sm))
        gmin = int(np.argmin(sm))
        if gmax == gmin:
            return [(float(ph[gmax]), "max")]
        pair = sorted(((gmin, "min"), (gmax, "max")))
        return [(float(ph[i]), kind) for i, kind in pair]
    return [(float(ph[i]), "max" if is_max[i] else "min") for i in hits]


def make_partition(optima: list[tuple[float, str]]) -> BinPartition:
    """Phase bins from optima: boundaries at midpoints of adjacent optima.

    With H optima the partition has H bins: {0} + (H-1 midpoints) + {1}.

    Raises:
        ValueError: no optima given, or phases not sorted in [0, 1).
    """
    if not optima:
        raise ValueError("need at least one optimum")
    phases = np.asarray([p for p, _ in optima], dtype=np.float64)
    if np.any(phases < 0.0) or np.any(phases >= 1.0) or np.any(np.diff(phases) < 0.0):
        raise ValueError("optima phases must be sorted within [0, 1)")
    mids = 0.5 * (phases[1:] + phases[:-1])
    boundaries = np.concatenate(([0.0], mids, [1.0]))
    return BinPartition(boundaries=boundaries, optima_phases=phases, mode="dynamic")


def _binning_args(binning, n_samples: int) -> tuple[int, int, int]:
    """(smooth_span, extrema_window, fixed_bins) for the jitted core."""
    if isinstance(binning, FixedBinningConfig):
        return 0, 0, int(binning.n_bins)
    span, m_win = binning.resolve(n_samples)
    return int(span), int(m_win), 0


def q_metric(curve: LightCurve, period: float, config: KernelConfig,
             binning: DynamicBinningConfig | FixedBinningConfig | None = None) -> float:
    """Score a trial period by the spread of per-bin information potentials.

    The curve is folded at the period, partitioned in phase, and Q is the
    mean over bins of (IP(bin) - IP(curve))^2.  Bins with fewer than 2
    samples are skipped; if every bin is skipped Q is 0.  Constant curves
    score 0 at any period.

    Raises:
        InvalidPeriodError: period is not positive and finite.
    """
    if not (np.isfinite(period) and period > 0.0):
        raise InvalidPeriodError(f"period must be positive and finite, got {period}")
    if binning is None:
        binning = DynamicBinningConfig()
    times = np.ascontiguousarray(curve.times, dtype=np.float64)
    mags = np.ascontiguousarray(curve.magnitudes, dtype=np.float64)
    sigma = float(config.sigma)
    global_ip = _information_potential(mags, sigma)
    span, m_win, fixed = _binning_args(binning, mags.size)
    return float(_q_single(times, mags, float(period), sigma, span, m_win, fixed, global_ip))


def fine_tune(curve: LightCurve, seed: PeriodCandidate, config: KernelConfig,
              binning: DynamicBinningConfig | FixedBinningConfig | None = None,
              ) -> PeriodCandidate:
    """Refine a candidate by a dense local Q scan around its period.

    The grid covers seed.period +- 0.5 days in 1e-3 day steps, with the
    lower end clamped to max(0.05, seed.period / 2).  The best-Q period
    wins; exact ties resolve to the grid point closest to the seed, so a
    flat landscape returns the seed itself.  The result keeps the seed's
    origin and window tag and records the scan's kernel bandwidth.
    """
    if binning is None:
        binning = DynamicBinningConfig()
    p0 = float(seed.period)
    steps = _nearest_int(FINE_TUNE_HALF_WIDTH / FINE_TUNE_STEP)
    periods = p0 + np.arange(-steps, steps + 1, dtype=np.float64) * FINE_TUNE_STEP
    lower = max(FINE_TUNE_MIN_PERIOD, 0.5 * p0)
    periods = periods[periods >= lower - 1e-12]
    times = np.ascontiguousarray(curve.times, dtype=np.float64)
    mags = np.ascontiguousarray(curve.magnitudes, dtype=np.float64)
    sigma = float(config.sigma)
    global_ip = _information_potential(mags, sigma)
    span, m_win, fixed = _binning_args(binning, mags.size)
    scores = np.asarray(
        _q_grid(times, mags, periods, sigma, span, m_win, fixed, global_ip)
    )
    best_score = float(scores.max())
    ties = np.flatnonzero(scores == best_score)
    pick = int(ties[np.argmin(np.abs(periods[ties] - p0))])
    return PeriodCandidate(
        period=float(periods[pick]),
        score=best_score,
        origin=seed.origin,
        kernel_sigma=sigma,
        window_tag=seed.window_tag,
    )
