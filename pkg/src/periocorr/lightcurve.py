"""Light-curve container, text I/O, preprocessing, and phase folding.

Time series are magnitude measurements at irregular epochs (days).  All
operations treat the curve as immutable: preprocessing returns new
instances and never mutates arrays in place.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

import numpy as np
from numpy.typing import NDArray

from .errors import (
    DegenerateCurveError,
    InsufficientDataError,
    InvalidPeriodError,
    ParseError,
)

__all__ = [
    "LightCurve",
    "FoldedCurve",
    "load_lightcurve",
    "save_lightcurve",
    "normalize",
    "select_dense_window",
    "fold",
]

FloatArray = NDArray[np.float64]


def _as_readonly(values) -> FloatArray:
    arr = np.array(values, dtype=np.float64, copy=True)
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True)
class LightCurve:
    """Irregularly sampled photometric time series.

    Attributes:
        times: epochs in days, strictly increasing.
        magnitudes: measured magnitudes, co-indexed with times.
        errors: nonnegative per-sample magnitude uncertainties.
        curve_id: free-form identifier, used in reports.
    """

    times: FloatArray
    magnitudes: FloatArray
    errors: FloatArray
    curve_id: str = ""

    def __post_init__(self):
        times = _as_readonly(self.times)
        mags = _as_readonly(self.magnitudes)
        errs = _as_readonly(self.errors)
        if times.ndim != 1 or mags.shape != times.shape or errs.shape != times.shape:
            raise ValueError("times, magnitudes, errors must be 1-D arrays of equal length")
        if times.size < 2:
            raise InsufficientDataError(f"need at least 2 samples, got {times.size}")
        for name, arr in (("times", times), ("magnitudes", mags), ("errors", errs)):
            if not np.all(np.isfinite(arr)):
                raise ValueError(f"non-finite value in {name}")
        if np.any(np.diff(times) <= 0.0):
            raise ValueError("times must be strictly increasing")
        if np.any(errs < 0.0):
            raise ValueError("errors must be nonnegative")
        object.__setattr__(self, "times", times)
        object.__setattr__(self, "magnitudes", mags)
        object.__setattr__(self, "errors", errs)

    @property
    def n_samples(self) -> int:
        return int(self.times.size)

    @property
    def time_span(self) -> float:
        """Total baseline in days, last epoch minus first."""
        return float(self.times[-1] - self.times[0])


@dataclass(frozen=True)
class FoldedCurve:
    """Phase-folded view of a light curve at one trial period.

    Phases live in [0, 1) and are sorted ascending; magnitudes follow the
    phase order, not the original time order.
    """

    phases: FloatArray
    magnitudes: FloatArray
    period: float

    def __post_init__(self):
        phases = _as_readonly(self.phases)
        mags = _as_readonly(self.magnitudes)
        if phases.ndim != 1 or mags.shape != phases.shape:
            raise ValueError("phases and magnitudes must be 1-D arrays of equal length")
        if phases.size and (phases[0] < 0.0 or phases[-1] >= 1.0):
            raise ValueError("phases must lie in [0, 1)")
        if np.any(np.diff(phases) < 0.0):
            raise ValueError("phases must be sorted ascending")
        if not (self.period > 0.0):
            raise InvalidPeriodError(f"period must be positive, got {self.period}")
        object.__setattr__(self, "phases", phases)
        object.__setattr__(self, "magnitudes", mags)

    @property
    def n_samples(self) -> int:
        return int(self.phases.size)


def load_lightcurve(path, curve_id: str | None = None) -> LightCurve:
    """Read a whitespace- or comma-delimited text light curve.

    Expected row layout is ``time magnitude error``; extra trailing columns
    are ignored.  Blank lines and lines starting with ``#`` are skipped.
    Rows are re-sorted by time and samples sharing an epoch are merged
    (mean magnitude, root-mean-square error).

    Raises:
        ParseError: a non-comment line is malformed (too few columns or a
            field that does not parse as a number).
        InsufficientDataError: fewer than 2 usable samples remain.
    """
    path = Path(path)
    rows: list[tuple[float, float, float]] = []
    with open(path, "r", encoding="utf-8") as handle:
        for lineno, raw in enumerate(handle, start=1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            fields = line.replace(",", " ").split()
            if len(fields) < 3:
                raise ParseError(path, lineno, f"expected >= 3 columns, got {len(fields)}")
            try:
                t, m, e = (float(fields[0]), float(fields[1]), float(fields[2]))
            except ValueError as exc:
                raise ParseError(path, lineno, f"non-numeric field: {exc}") from None
            rows.append((t, m, e))
    if len(rows) < 2:
        raise InsufficientDataError(f"{path}: need at least 2 samples, got {len(rows)}")

    data = np.asarray(rows, dtype=np.float64)
    order = np.argsort(data[:, 0], kind="stable")
    data = data[order]
    times, inverse = np.unique(data[:, 0], return_inverse=True)
    if times.size < 2:
        raise InsufficientDataError(f"{path}: need at least 2 distinct epochs")
    counts = np.bincount(inverse).astype(np.float64)
    mags = np.bincount(inverse, weights=data[:, 1]) / counts
    errs = np.sqrt(np.bincount(inverse, weights=data[:, 2] ** 2) / counts)
    if curve_id is None:
        curve_id = path.stem
    return LightCurve(times, mags, errs, curve_id=curve_id)


def save_lightcurve(curve: LightCurve, path) -> None:
    """Write a curve as three-column text, round-trippable by load_lightcurve."""
    path = Path(path)
    lines = ["# time_days magnitude error"]
    for t, m, e in zip(curve.times, curve.magnitudes, curve.errors):
        lines.append(f"{t:.12g} {m:.12g} {e:.12g}")
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")


def normalize(curve: LightCurve) -> LightCurve:
    """Outlier-cut and standardize a curve to zero mean, unit sample variance.

    Samples whose reported error exceeds mean(err) + 2*std(err) are
    discarded first (std with one delta degree of freedom).  The surviving
    magnitudes are shifted and scaled; errors are scaled by the same factor
    so signal-to-noise ratios are preserved.

    Raises:
        InsufficientDataError: fewer than 3 input samples.
        DegenerateCurveError: everything was rejected, or the surviving
            magnitudes are constant.
    """
    if curve.n_samples < 3:
        raise InsufficientDataError(f"normalize needs >= 3 samples, got {curve.n_samples}")
    errs = curve.errors
    threshold = errs.mean() + 2.0 * errs.std(ddof=1)
    keep = errs <= threshold
    if int(keep.sum()) < 2:
        raise DegenerateCurveError("all samples rejected by the error cut")
    times = curve.times[keep]
    mags = curve.magnitudes[keep]
    kept_errs = errs[keep]
    mean = mags.mean()
    std = mags.std(ddof=1)
    if not std > 0.0:
        raise DegenerateCurveError("constant magnitudes after the error cut")
    return LightCurve(times, (mags - mean) / std, kept_errs / std, curve_id=curve.curve_id)


def select_dense_window(curve: LightCurve) -> LightCurve:
    """Extract the most densely sampled half-baseline sub-series.

    A window of width T/2 (T = total span) slides from the first epoch in
    1-day steps; the window holding the most samples wins, earliest start
    on ties.  Falls back to the full curve when no window keeps at least
    2 samples.
    """
    t = curve.times
    width = curve.time_span / 2.0
    starts = t[0] + np.arange(0.0, np.floor(width) + 1.0)
    lo = np.searchsorted(t, starts, side="left")
    hi = np.searchsorted(t, starts + width, side="right")
    counts = hi - lo
    best = int(np.argmax(counts))
    if counts[best] < 2:
        return curve
    window = slice(int(lo[best]), int(hi[best]))
    return LightCurve(
        t[window], curve.magnitudes[window], curve.errors[window], curve_id=curve.curve_id
    )


def fold(curve: LightCurve, period: float) -> FoldedCurve:
    """Fold a curve at a trial period.

    Phases are (t mod period) / period; the output is sorted by phase with
    a stable sort, so samples at equal phase keep their time order.

    Raises:
        InvalidPeriodError: period is not positive and finite.
    """
    if not (np.isfinite(period) and period > 0.0):
        raise InvalidPeriodError(f"period must be positive and finite, got {period}")
    phases = np.mod(curve.times, period) / period
    # guard against rounding up to exactly 1.0
    phases[phases >= 1.0] -= 1.0
    order = np.argsort(phases, kind="stable")
    return FoldedCurve(phases[order], curve.magnitudes[order], float(period))
