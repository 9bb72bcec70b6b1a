"""Frequency-domain transform of slotted series and peak extraction.

The slotted estimate is a one-sided, even sequence in lag.  It is centered
by removing its mean, mirrored to lags -K..K, tapered with a Hamming
window, zero-padded to a power of two, and transformed.  Because the
padded buffer is arranged circularly (lag 0 at index 0, negative lags
wrapped to the top), the transform is real up to rounding and the spectrum
is taken from the real part, clamped at zero.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

import numpy as np
from numpy.typing import NDArray

from .slotting import SlottedSeries

__all__ = [
    "Spectrum",
    "Peak",
    "PeakSet",
    "center_and_window",
    "csd",
    "extract_peaks",
    "save_spectrum",
]

FloatArray = NDArray[np.float64]

SPECTRUM_KINDS = ("CSD", "PSD", "Lomb-Scargle")


@dataclass(frozen=True)
class Spectrum:
    """Power-like values on a one-sided frequency grid (cycles/day).

    powers is clamped at zero.  raw keeps the unclamped real part for
    transform-based spectra (None for Lomb-Scargle), and imag_residue is
    the largest imaginary magnitude relative to the spectrum peak, a
    numerical check that the symmetrized input really was even.
    """

    frequencies: FloatArray
    powers: FloatArray
    kind: str
    sampling_frequency: float | None = None
    raw: FloatArray | None = None
    imag_residue: float = 0.0

    def __post_init__(self):
        freqs = np.array(self.frequencies, dtype=np.float64, copy=True)
        powers = np.array(self.powers, dtype=np.float64, copy=True)
        freqs.setflags(write=False)
        powers.setflags(write=False)
        if self.kind not in SPECTRUM_KINDS:
            raise ValueError(f"kind must be one of {SPECTRUM_KINDS}, got {self.kind!r}")
        if freqs.ndim != 1 or powers.shape != freqs.shape or freqs.size == 0:
            raise ValueError("frequencies and powers must be matching nonempty 1-D arrays")
        if np.any(np.diff(freqs) <= 0.0):
            raise ValueError("frequencies must be strictly increasing")
        if freqs[0] < 0.0:
            raise ValueError("frequencies must be nonnegative")
        if np.any(powers < 0.0) or not np.all(np.isfinite(powers)):
            raise ValueError("powers must be finite and nonnegative")
        object.__setattr__(self, "frequencies", freqs)
        object.__setattr__(self, "powers", powers)
        if self.raw is not None:
            raw = np.array(self.raw, dtype=np.float64, copy=True)
            raw.setflags(write=False)
            if raw.shape != freqs.shape:
                raise ValueError("raw must match the frequency grid")
            object.__setattr__(self, "raw", raw)


@dataclass(frozen=True)
class Peak:
    """One spectral peak: frequency (cycles/day), period (days), power."""

    frequency: float
    period: float
    power: float


@dataclass(frozen=True)
class PeakSet:
    """Peaks ordered by descending power; may hold fewer than requested."""

    entries: tuple[Peak, ...]
    n_requested: int

    def periods(self) -> tuple[float, ...]:
        return tuple(p.period for p in self.entries)


def center_and_window(series: SlottedSeries) -> FloatArray:
    """Centered, mirrored, Hamming-tapered lag sequence of length 2K+1.

    The slot mean is subtracted, the one-sided sequence v[0..K] is
    reflected to v[-K..K], and the result is multiplied by a Hamming
    window spanning the full 2K+1 points.
    """
    values = series.values
    k_max = values.size - 1
    centered = values - values.mean()
    sym = np.concatenate((centered[:0:-1], centered))
    if k_max == 0:
        return sym
    return sym * np.hamming(2 * k_max + 1)


def csd(series: SlottedSeries, oversample: int = 8) -> Spectrum:
    """Correntropy (or power) spectral density of a slotted series.

    The windowed lag sequence is zero-padded to the next power of two at
    or above oversample*(2K+1) and transformed; frequencies run from 0 to
    the slot Nyquist 1/(2*slot_size) in steps of 1/(L*slot_size).  Kind is
    CSD for a correntropy series, PSD for a correlation series.

    Raises:
        ValueError: oversample < 1.
    """
    if int(oversample) != oversample or oversample < 1:
        raise ValueError(f"oversample must be an integer >= 1, got {oversample}")
    windowed = center_and_window(series)
    m = windowed.size
    k_max = (m - 1) // 2
    length = 1 << int(np.ceil(np.log2(int(oversample) * m)))
    buf = np.zeros(length, dtype=np.float64)
    buf[: k_max + 1] = windowed[k_max:]
    if k_max:
        buf[length - k_max:] = windowed[:k_max]
    transform = np.fft.rfft(buf)
    raw = transform.real
    peak = float(np.max(np.abs(raw)))
    residue = float(np.max(np.abs(transform.imag)) / peak) if peak > 0.0 else 0.0
    fs = 1.0 / series.slot_size
    freqs = np.arange(raw.size, dtype=np.float64) * (fs / length)
    powers = np.maximum(raw, 0.0)
    kind = "CSD" if series.kind == "correntropy" else "PSD"
    return Spectrum(freqs, powers, kind, sampling_frequency=fs, raw=raw,
                    imag_residue=residue)


def extract_peaks(spectrum: Spectrum, n_peaks: int, min_period: float,
                  max_period: float) -> PeakSet:
    """Strongest strict local maxima inside a period band.

    A peak is an interior grid point strictly above both neighbors whose
    frequency lies in [1/max_period, 1/min_period].  Peaks are ranked by
    power (descending, frequency breaking ties) and the top n_peaks are
    kept; fewer may exist.

    Raises:
        ValueError: n_peaks < 1 or an empty/invalid period band.
    """
    if n_peaks < 1:
        raise ValueError(f"n_peaks must be >= 1, got {n_peaks}")
    if not (0.0 < min_period < max_period):
        raise ValueError(f"need 0 < min_period < max_period, got [{min_period}, {max_period}]")
    p = spectrum.powers
    f = spectrum.frequencies
    if p.size < 3:
        return PeakSet(entries=(), n_requested=int(n_peaks))
    interior = np.flatnonzero((p[1:-1] > p[:-2]) & (p[1:-1] > p[2:])) + 1
    f_lo = 1.0 / max_period
    f_hi = 1.0 / min_period
    interior = interior[(f[interior] >= f_lo) & (f[interior] <= f_hi)]
    if interior.size == 0:
        return PeakSet(entries=(), n_requested=int(n_peaks))
    order = np.lexsort((f[interior], -p[interior]))
    chosen = interior[order][: int(n_peaks)]
    entries = tuple(
        Peak(frequency=float(f[i]), period=float(1.0 / f[i]), power=float(p[i]))
        for i in chosen
    )
    return PeakSet(entries=entries, n_requested=int(n_peaks))


def save_spectrum(spectrum: Spectrum, path) -> None:
    """Write a spectrum as two-column text (frequency_cpd, power)."""
    path = Path(path)
    lines = [f"# frequency_cpd power ({spectrum.kind})"]
    for freq, power in zip(spectrum.frequencies, spectrum.powers):
        lines.append(f"{freq:.12g} {power:.12g}")
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")
