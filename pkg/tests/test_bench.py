"""Synthetic benchmark harness: templates, sampling, grading, batch runs."""

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from periocorr import (
    BatchResult,
    LightCurve,
    PipelineConfig,
    SyntheticSpec,
    classify_period,
    evaluate_batch,
    generate,
)
from periocorr.bench import (
    ECLIPSE_WIDTH_PHASE,
    SAWTOOTH_RISE_FRACTION,
    SECONDARY_DEPTH_RATIO,
    SEASON_GAP_DAYS,
    template_magnitudes,
)


class TestSpecValidation:
    def test_accepts_reasonable_spec(self):
        spec = SyntheticSpec(template="sinusoid", period=3.0, n_samples=100,
                             time_span=300.0)
        assert spec.period == 3.0

    def test_rejects_unknown_template(self):
        with pytest.raises(ValueError):
            SyntheticSpec(template="cepheid-but-wrong", period=3.0)

    def test_rejects_unknown_sampling(self):
        with pytest.raises(ValueError):
            SyntheticSpec(template="sinusoid", period=3.0, sampling="whenever")

    def test_rejects_period_longer_than_third_of_span(self):
        with pytest.raises(ValueError):
            SyntheticSpec(template="sinusoid", period=600.0, time_span=1500.0)

    def test_rejects_tiny_sample_count(self):
        with pytest.raises(ValueError):
            SyntheticSpec(template="sinusoid", period=3.0, n_samples=20)


class TestTemplates:
    def test_sinusoid_exact(self):
        spec = SyntheticSpec(template="sinusoid", period=5.0, amplitude=2.0)
        t = np.linspace(0.0, 10.0, 11)
        got = template_magnitudes(spec, t)
        np.testing.assert_allclose(got, 2.0 * np.sin(2.0 * np.pi * t / 5.0),
                                   atol=1e-12)

    def test_eclipse_depths_at_conjunctions(self):
        spec = SyntheticSpec(template="eclipsing-binary", period=10.0,
                             amplitude=1.0)
        got = template_magnitudes(spec, np.array([0.0, 5.0, 2.5]))
        # primary bump at phase 0, secondary at 0.5, continuum near 0.25
        assert got[0] == pytest.approx(1.0, rel=1e-3)
        assert got[1] == pytest.approx(SECONDARY_DEPTH_RATIO, rel=2e-2)
        assert got[2] < 0.1
        assert got[0] > got[1]

    def test_eclipse_width_is_moderate(self):
        # the templates keep both eclipses well separated in phase
        assert 0.02 <= ECLIPSE_WIDTH_PHASE <= 0.2

    def test_sawtooth_shape(self):
        spec = SyntheticSpec(template="sawtooth", period=4.0, amplitude=1.0)
        rise_end = SAWTOOTH_RISE_FRACTION * 4.0
        got = template_magnitudes(spec, np.array([0.0, rise_end, 2.0]))
        assert got[0] == pytest.approx(-1.0)
        assert got[1] == pytest.approx(1.0)
        assert -1.0 < got[2] < 1.0

    def test_sawtooth_is_periodic(self):
        spec = SyntheticSpec(template="sawtooth", period=4.0)
        t = np.array([0.3, 4.3, 8.3])
        got = template_magnitudes(spec, t)
        assert got[0] == pytest.approx(got[1], abs=1e-12)
        assert got[0] == pytest.approx(got[2], abs=1e-12)


class TestGenerate:
    def test_deterministic_per_seed(self):
        spec = SyntheticSpec(template="sinusoid", period=3.0, noise_sigma=0.2,
                             n_samples=120, time_span=400.0, seed=17)
        c1, p1 = generate(spec)
        c2, p2 = generate(spec)
        assert p1 == p2 == 3.0
        np.testing.assert_array_equal(c1.times, c2.times)
        np.testing.assert_array_equal(c1.magnitudes, c2.magnitudes)
        np.testing.assert_array_equal(c1.errors, c2.errors)

    def test_sample_count_and_span(self):
        spec = SyntheticSpec(template="sinusoid", period=3.0, n_samples=250,
                             time_span=800.0, seed=2)
        curve, _ = generate(spec)
        assert curve.n_samples == 250
        assert curve.times[0] >= 0.0
        assert curve.times[-1] <= 800.0
        assert np.all(np.diff(curve.times) > 0.0)

    def test_noiseless_matches_template(self):
        spec = SyntheticSpec(template="sawtooth", period=6.0, noise_sigma=0.0,
                             n_samples=100, time_span=300.0, seed=4)
        curve, _ = generate(spec)
        np.testing.assert_allclose(
            curve.magnitudes, template_magnitudes(spec, curve.times), atol=1e-12)

    def test_error_bars_near_noise_scale(self):
        spec = SyntheticSpec(template="sinusoid", period=3.0, noise_sigma=0.25,
                             n_samples=150, time_span=400.0, seed=5)
        curve, _ = generate(spec)
        assert np.all(curve.errors >= 0.8 * 0.25 - 1e-12)
        assert np.all(curve.errors <= 1.2 * 0.25 + 1e-12)

    def test_seasonal_sampling_has_gaps(self):
        spec = SyntheticSpec(template="sinusoid", period=3.0, n_samples=500,
                             time_span=2700.0, sampling="seasonal", seed=6)
        curve, _ = generate(spec)
        max_gap = np.max(np.diff(curve.times))
        assert max_gap > 0.5 * SEASON_GAP_DAYS

    def test_uniform_sampling_has_no_season_gaps(self):
        spec = SyntheticSpec(template="sinusoid", period=3.0, n_samples=500,
                             time_span=2700.0, sampling="uniform-random", seed=6)
        curve, _ = generate(spec)
        assert np.max(np.diff(curve.times)) < SEASON_GAP_DAYS

    def test_curve_id_passthrough(self):
        spec = SyntheticSpec(template="sinusoid", period=3.0, seed=1,
                             curve_id="alpha")
        curve, _ = generate(spec)
        assert curve.curve_id == "alpha"


class TestClassifyPeriod:
    def test_close_estimate_is_hit(self):
        assert classify_period(14.0055, 14.0063) == "hit"

    def test_half_period_is_multiple(self):
        assert classify_period(7.0024, 14.0063) == "multiple"

    def test_double_and_triple_are_multiples(self):
        assert classify_period(28.01, 14.0) == "multiple"
        assert classify_period(42.0, 14.0) == "multiple"
        assert classify_period(14.0 / 3.0, 14.0) == "multiple"

    def test_factor_bound(self):
        assert classify_period(140.0, 14.0) == "multiple"
        assert classify_period(154.0, 14.0) == "miss"

    def test_tolerance_boundary(self):
        assert classify_period(14.0 * 1.0049, 14.0) == "hit"
        assert classify_period(14.0 * 1.0051, 14.0) == "miss"

    def test_unrelated_value_is_miss(self):
        assert classify_period(9.37, 14.0) == "miss"

    def test_rejects_nonpositive(self):
        with pytest.raises(ValueError):
            classify_period(0.0, 14.0)
        with pytest.raises(ValueError):
            classify_period(14.0, -1.0)


class TestEvaluateBatch:
    def batch(self):
        items = []
        # span long enough that ls grid quantization P/(10 T) sits well
        # inside the 0.5% hit rule at the largest period
        for sd, period in ((0, 4.0), (1, 6.5)):
            spec = SyntheticSpec(template="sinusoid", period=period,
                                 noise_sigma=0.1, n_samples=200,
                                 time_span=300.0, seed=sd)
            items.append(generate(spec))
        return items

    def test_percentages_sum_to_one_hundred(self):
        cfg = PipelineConfig(sigma_grid=(0.5,), n_peaks=3, oversample=8,
                             period_band=(2.0, 20.0))
        result = evaluate_batch(self.batch(), ["ls"], cfg)
        assert isinstance(result, BatchResult)
        s = result.summaries[0]
        assert s.method == "ls"
        assert s.n_curves == 2
        assert s.hit_pct + s.multiple_pct + s.miss_pct == pytest.approx(100.0)
        assert len(s.outcomes) == 2

    def test_ls_hits_clean_sinusoids(self):
        cfg = PipelineConfig(sigma_grid=(0.5,), n_peaks=3, oversample=8,
                             period_band=(2.0, 20.0))
        result = evaluate_batch(self.batch(), ["ls"], cfg)
        assert result.summaries[0].hit_pct == 100.0

    def test_failures_graded_as_miss(self):
        t = np.linspace(0.0, 100.0, 200)
        flat = LightCurve(t, np.full(200, 3.0), np.full(200, 0.1),
                          curve_id="flat")
        cfg = PipelineConfig(sigma_grid=(0.5,), n_peaks=3, oversample=8,
                             period_band=(2.0, 20.0))
        with pytest.warns(UserWarning, match="flat"):
            result = evaluate_batch([(flat, 5.0)], ["ls"], cfg)
        out = result.summaries[0].outcomes[0]
        assert out.outcome == "miss"
        assert np.isnan(out.estimated_period)

    def test_table_lines_format(self):
        cfg = PipelineConfig(sigma_grid=(0.5,), n_peaks=3, oversample=8,
                             period_band=(2.0, 20.0))
        result = evaluate_batch(self.batch(), ["ls"], cfg)
        lines = result.table_lines()
        assert lines[0].startswith("method")
        assert any("ls" in line for line in lines[1:])

    def test_rejects_empty_batch(self):
        with pytest.raises(ValueError):
            evaluate_batch([], ["ls"])

    def test_rejects_unknown_method(self):
        with pytest.raises(ValueError):
            evaluate_batch(self.batch(), ["tea-leaves"])


@given(st.floats(min_value=0.01, max_value=500.0),
       st.floats(min_value=0.01, max_value=500.0))
def test_grades_are_exclusive_and_exhaustive(estimate, truth):
    grade = classify_period(estimate, truth)
    assert grade in ("hit", "multiple", "miss")
    if abs(estimate - truth) / truth < 0.005:
        assert grade == "hit"
