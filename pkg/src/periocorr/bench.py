"""Synthetic light-curve generation and method benchmarking.

Templates cover the shapes the estimator cares about: a pure sinusoid, a
detached eclipsing binary (two unequal dimming events per cycle), and an
asymmetric sawtooth.  Sampling is either uniform random over the baseline
or seasonal: nightly thirds-of-a-day inside 245-day observing seasons
separated by 120-day gaps.  classify_period grades an estimate as a hit,
an integer multiple/submultiple, or a miss; evaluate_batch aggregates
grades per method.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np
from numpy.typing import NDArray

from .lightcurve import LightCurve
from .pipeline import METHODS, PipelineConfig, estimate_with_method

__all__ = [
    "TEMPLATES",
    "SAMPLINGS",
    "SyntheticSpec",
    "EvaluationOutcome",
    "MethodSummary",
    "BatchResult",
    "generate",
    "classify_period",
    "evaluate_batch",
]

FloatArray = NDArray[np.float64]

TEMPLATES = ("sinusoid", "eclipsing-binary", "sawtooth")
SAMPLINGS = ("uniform-random", "seasonal")

HIT_RELATIVE_TOL = 0.005
MULTIPLE_MAX_FACTOR = 10

SEASON_LENGTH_DAYS = 245.0
SEASON_GAP_DAYS = 120.0
NIGHTLY_WINDOW_DAYS = 1.0 / 3.0

ECLIPSE_WIDTH_PHASE = 0.10
SECONDARY_DEPTH_RATIO = 0.5
SAWTOOTH_RISE_FRACTION = 0.15


@dataclass(frozen=True)
class SyntheticSpec:
    """Recipe for one synthetic curve; seed makes generation reproducible."""

    template: str = "sinusoid"
    period: float = 10.0
    amplitude: float = 1.0
    noise_sigma: float = 0.0
    n_samples: int = 500
    time_span: float = 1500.0
    sampling: str = "uniform-random"
    seed: int = 0
    curve_id: str = ""

    def __post_init__(self):
        if self.template not in TEMPLATES:
            raise ValueError(f"template must be one of {TEMPLATES}, got {self.template!r}")
        if self.sampling not in SAMPLINGS:
            raise ValueError(f"sampling must be one of {SAMPLINGS}, got {self.sampling!r}")
        if not (0.0 < self.period <= self.time_span / 3.0):
            raise ValueError(
                f"period must be in (0, time_span/3], got {self.period} over {self.time_span}"
            )
        if self.amplitude <= 0.0:
            raise ValueError(f"amplitude must be positive, got {self.amplitude}")
        if self.noise_sigma < 0.0:
            raise ValueError(f"noise_sigma must be nonnegative, got {self.noise_sigma}")
        if self.n_samples < 50:
            raise ValueError(f"n_samples must be >= 50, got {self.n_samples}")


def _uniform_times(rng: np.random.Generator, spec: SyntheticSpec) -> FloatArray:
    times = np.unique(rng.uniform(0.0, spec.time_span, spec.n_samples))
    while times.size < spec.n_samples:
        extra = rng.uniform(0.0, spec.time_span, spec.n_samples - times.size)
        times = np.unique(np.concatenate((times, extra)))
    return times


def _seasonal_times(rng: np.random.Generator, spec: SyntheticSpec) -> FloatArray:
    year = SEASON_LENGTH_DAYS + SEASON_GAP_DAYS
    n_years = int(np.ceil(spec.time_span / year))
    accepted: list[float] = []
    while len(accepted) < spec.n_samples:
        years = rng.integers(0, n_years, spec.n_samples)
        nights = rng.integers(0, int(SEASON_LENGTH_DAYS), spec.n_samples)
        fractions = rng.random(spec.n_samples) * NIGHTLY_WINDOW_DAYS
        t = years * year + nights + fractions
        for value in t[t <= spec.time_span]:
            accepted.append(float(value))
            if len(accepted) == spec.n_samples:
                break
    times = np.unique(np.asarray(accepted, dtype=np.float64))
    while times.size < spec.n_samples:
        extra_year = rng.integers(0, n_years)
        extra = extra_year * year + rng.integers(0, int(SEASON_LENGTH_DAYS)) \
            + rng.random() * NIGHTLY_WINDOW_DAYS
        if extra <= spec.time_span:
            times = np.unique(np.append(times, extra))
    return times


def _circular_distance(phases: FloatArray, center: float) -> FloatArray:
    d = np.abs(phases - center)
    return np.minimum(d, 1.0 - d)


def template_magnitudes(spec: SyntheticSpec, times: FloatArray) -> FloatArray:
    """Noise-free template magnitudes at the given epochs."""
    if spec.template == "sinusoid":
        return spec.amplitude * np.sin(2.0 * np.pi * times / spec.period)
    phases = np.mod(times, spec.period) / spec.period
    phases[phases >= 1.0] -= 1.0
    if spec.template == "eclipsing-binary":
        # magnitudes increase while flux drops, so eclipses are bumps
        primary = _circular_distance(phases, 0.0)
        secondary = _circular_distance(phases, 0.5)
        w2 = 2.0 * ECLIPSE_WIDTH_PHASE * ECLIPSE_WIDTH_PHASE
        return spec.amplitude * (
            np.exp(-primary * primary / w2)
            + SECONDARY_DEPTH_RATIO * np.exp(-secondary * secondary / w2)
        )
    # sawtooth: fast linear rise over a small phase fraction, slow decay
    rise = SAWTOOTH_RISE_FRACTION
    out = np.where(
        phases < rise,
        -1.0 + 2.0 * phases / rise,
        1.0 - 2.0 * (phases - rise) / (1.0 - rise),
    )
    return spec.amplitude * out


def generate(spec: SyntheticSpec) -> tuple[LightCurve, float]:
    """Generate one synthetic curve; returns (curve, true_period).

    With noise_sigma 0 the magnitudes equal the template exactly.  Error
    bars are drawn near the noise level (a tenth of the amplitude when
    noiseless) so the normalization error cut stays inactive.
    """
    rng = np.random.default_rng(spec.seed)
    if spec.sampling == "uniform-random":
        times = _uniform_times(rng, spec)
    else:
        times = _seasonal_times(rng, spec)
    mags = template_magnitudes(spec, times)
    if spec.noise_sigma > 0.0:
        mags = mags + rng.normal(0.0, spec.noise_sigma, times.size)
    error_scale = spec.noise_sigma if spec.noise_sigma > 0.0 else 0.1 * spec.amplitude
    errors = error_scale * rng.uniform(0.8, 1.2, times.size)
    curve_id = spec.curve_id or f"{spec.template}-p{spec.period:g}-s{spec.seed}"
    return LightCurve(times, mags, errors, curve_id=curve_id), float(spec.period)


def classify_period(estimated: float, truth: float) -> str:
    """Grade an estimate against the truth.

    "hit": relative error under 0.5%.  "multiple": within 0.5% of n*truth
    or truth/n for some integer n in [2, 10].  Anything else: "miss".

    Raises:
        ValueError: nonpositive estimate or truth.
    """
    if not (estimated > 0.0 and truth > 0.0):
        raise ValueError(f"estimated and truth must be positive, got {estimated}, {truth}")
    if abs(estimated - truth) / truth < HIT_RELATIVE_TOL:
        return "hit"
    for factor in range(2, MULTIPLE_MAX_FACTOR + 1):
        up = factor * truth
        down = truth / factor
        if abs(estimated - up) / up < HIT_RELATIVE_TOL:
            return "multiple"
        if abs(estimated - down) / down < HIT_RELATIVE_TOL:
            return "multiple"
    return "miss"


@dataclass(frozen=True)
class EvaluationOutcome:
    """One curve under one method."""

    curve_id: str
    true_period: float
    estimated_period: float
    outcome: str
    relative_error: float


@dataclass(frozen=True)
class MethodSummary:
    """Grade percentages for one method over a batch."""

    method: str
    n_curves: int
    hit_pct: float
    multiple_pct: float
    miss_pct: float
    outcomes: tuple[EvaluationOutcome, ...]


@dataclass(frozen=True)
class BatchResult:
    """Per-method summaries over the same batch of curves."""

    summaries: tuple[MethodSummary, ...]

    def table_lines(self) -> list[str]:
        """Delimited summary table, one row per method."""
        lines = ["method\tn\thit_pct\tmultiple_pct\tmiss_pct"]
        for s in self.summaries:
            lines.append(
                f"{s.method}\t{s.n_curves}\t{s.hit_pct:.1f}\t{s.multiple_pct:.1f}\t{s.miss_pct:.1f}"
            )
        return lines


def evaluate_batch(items: list[tuple[LightCurve, float]], methods: list[str],
                   config: PipelineConfig | None = None) -> BatchResult:
    """Run each method over (curve, true_period) pairs and grade the results.

    A method failure on a curve (any exception from the estimator) counts
    as a miss with NaN estimate and is reported with a warning rather than
    aborting the batch.

    Raises:
        ValueError: empty batch or unknown method name.
    """
    if not items:
        raise ValueError("empty batch")
    for method in methods:
        if method not in METHODS:
            raise ValueError(f"method must be one of {METHODS}, got {method!r}")
    summaries = []
    for method in methods:
        outcomes = []
        for curve, truth in items:
            try:
                report = estimate_with_method(curve, method, config)
                estimate = report.best.period
                grade = classify_period(estimate, truth)
                rel_err = abs(estimate - truth) / truth
            except Exception as exc:  # noqa: BLE001 - grade failures as misses
                warnings.warn(f"{method} failed on {curve.curve_id}: {exc}", stacklevel=2)
                estimate = float("nan")
                grade = "miss"
                rel_err = float("nan")
            outcomes.append(EvaluationOutcome(
                curve_id=curve.curve_id,
                true_period=float(truth),
                estimated_period=float(estimate),
                outcome=grade,
                relative_error=float(rel_err),
            ))
        n = len(outcomes)
        hits = sum(1 for o in outcomes if o.outcome == "hit")
        multiples = sum(1 for o in outcomes if o.outcome == "multiple")
        misses = n - hits - multiples
        summaries.append(MethodSummary(
            method=method,
            n_curves=n,
            hit_pct=100.0 * hits / n,
            multiple_pct=100.0 * multiples / n,
            miss_pct=100.0 * misses / n,
            outcomes=tuple(outcomes),
        ))
    return BatchResult(summaries=tuple(summaries))
