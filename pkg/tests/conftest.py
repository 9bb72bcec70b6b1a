"""Shared fixtures and helpers for the test suite."""

import numpy as np
import pytest
from hypothesis import HealthCheck, settings

from periocorr import LightCurve

settings.register_profile(
    "suite",
    max_examples=50,
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("suite")


def irregular_times(seed, n, span):
    """Strictly increasing random epochs over [0, span]."""
    rng = np.random.default_rng(seed)
    t = np.sort(rng.uniform(0.0, span, n))
    return np.unique(t)


def sinusoid_curve(seed, period, n=400, span=120.0, noise=0.0, amplitude=1.0):
    t = irregular_times(seed, n, span)
    rng = np.random.default_rng(seed + 10_000)
    x = amplitude * np.sin(2.0 * np.pi * t / period)
    if noise > 0.0:
        x = x + noise * rng.standard_normal(t.size)
    err = np.full(t.size, max(noise, 0.05))
    return LightCurve(t, x, err, curve_id=f"sin-{seed}")


def white_noise_curve(seed, n=400, span=120.0):
    t = irregular_times(seed, n, span)
    rng = np.random.default_rng(seed + 20_000)
    x = rng.standard_normal(t.size)
    return LightCurve(t, x, np.full(t.size, 0.1), curve_id=f"wn-{seed}")


@pytest.fixture
def tmp_curve_file(tmp_path):
    """Write a small sinusoid to disk and return the path."""
    from periocorr import save_lightcurve

    curve = sinusoid_curve(3, 4.2, n=200, span=90.0, noise=0.05)
    path = tmp_path / "sin_demo.txt"
    save_lightcurve(curve, path)
    return path
