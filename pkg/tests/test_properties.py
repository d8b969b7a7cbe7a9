"""Randomized property suites over seeded generators.

Each property is exercised over a few hundred draws from a fixed-seed
generator, so failures are reproducible.
"""
from __future__ import annotations

import math
import random

import pytest

from squashfitts import (Dataset, ShotKind, TrialRecord, index_of_difficulty,
                         information_rate, ols_simple, ols_two_predictor,
                         parse_csv, pearson_r, render_report_json,
                         run_analysis, write_csv)


def _rng(salt: int) -> random.Random:
    return random.Random(0xF1775 + salt)


def _log_uniform(rng, lo, hi):
    return math.exp(rng.uniform(math.log(lo), math.log(hi)))


class TestDifficultyProperties:
    def test_doubling_speed_adds_one_bit(self):
        rng = _rng(1)
        for _ in range(300):
            v = _log_uniform(rng, 1e-3, 1e3)
            d = _log_uniform(rng, 1e-3, 1e3)
            assert index_of_difficulty(2 * v, d) == pytest.approx(
                index_of_difficulty(v, d) + 1.0, abs=1e-9)

    def test_doubling_distance_adds_one_bit(self):
        rng = _rng(2)
        for _ in range(300):
            v = _log_uniform(rng, 1e-3, 1e3)
            d = _log_uniform(rng, 1e-3, 1e3)
            assert index_of_difficulty(v, 2 * d) == pytest.approx(
                index_of_difficulty(v, d) + 1.0, abs=1e-9)

    def test_strictly_increasing_in_each_argument(self):
        rng = _rng(3)
        for _ in range(300):
            v = _log_uniform(rng, 1e-2, 1e2)
            d = _log_uniform(rng, 1e-2, 1e2)
            bump = 1.0 + rng.uniform(1e-6, 1.0)
            assert index_of_difficulty(v * bump, d) > index_of_difficulty(v, d)
            assert index_of_difficulty(v, d * bump) > index_of_difficulty(v, d)

    def test_rate_times_time_recovers_difficulty(self):
        rng = _rng(4)
        for _ in range(300):
            idb = rng.uniform(-5.0, 10.0)
            mt = _log_uniform(rng, 1e-2, 1e2)
            assert information_rate(idb, mt) * mt == pytest.approx(idb, abs=1e-9)


class TestOlsProperties:
    def _random_points(self, rng, n=None):
        n = n or rng.randint(3, 40)
        return [(rng.uniform(-50, 50), rng.uniform(-50, 50)) for _ in range(n)]

    def test_noiseless_recovery_random_lines(self):
        rng = _rng(5)
        for _ in range(100):
            slope = rng.uniform(-10, 10)
            intercept = rng.uniform(-10, 10)
            xs = sorted(rng.uniform(-100, 100) for _ in range(rng.randint(2, 30)))
            if xs[0] == xs[-1]:
                continue
            fit = ols_simple([(x, slope * x + intercept) for x in xs])
            assert fit.slope == pytest.approx(slope, abs=1e-9)
            assert fit.intercept == pytest.approx(intercept, abs=1e-9)

    def test_shift_invariance_of_slope(self):
        rng = _rng(6)
        for _ in range(100):
            pts = self._random_points(rng)
            c = rng.uniform(-100, 100)
            base = ols_simple(pts)
            shifted = ols_simple([(x + c, y) for x, y in pts])
            assert shifted.slope == pytest.approx(base.slope, abs=1e-9)
            assert shifted.intercept == pytest.approx(
                base.intercept - base.slope * c, abs=1e-9)

    def test_scale_equivariance_in_y(self):
        rng = _rng(7)
        for _ in range(100):
            pts = self._random_points(rng)
            base = ols_simple(pts)
            doubled = ols_simple([(x, 2.0 * y) for x, y in pts])
            # doubling is a power of two: bit-exact in floating point
            assert doubled.slope == 2.0 * base.slope
            assert doubled.intercept == 2.0 * base.intercept
            k = rng.uniform(0.1, 9.0)
            scaled = ols_simple([(x, k * y) for x, y in pts])
            assert scaled.slope == pytest.approx(k * base.slope, rel=1e-12)
            assert scaled.intercept == pytest.approx(k * base.intercept, rel=1e-12)

    def test_fit_passes_through_centroid(self):
        rng = _rng(8)
        for _ in range(100):
            pts = self._random_points(rng)
            fit = ols_simple(pts)
            xbar = math.fsum(x for x, _ in pts) / len(pts)
            ybar = math.fsum(y for _, y in pts) / len(pts)
            assert fit.predict(xbar) == pytest.approx(ybar, abs=1e-9)

    def test_r_squared_equals_pearson_squared(self):
        rng = _rng(9)
        for _ in range(100):
            pts = self._random_points(rng)
            fit = ols_simple(pts)
            assert fit.r_squared == pytest.approx(fit.pearson_r ** 2, abs=1e-12)
            assert fit.pearson_r == pytest.approx(pearson_r(pts), abs=1e-12)

    def test_r_squared_equals_one_minus_sse_over_sst(self):
        rng = _rng(10)
        for _ in range(100):
            pts = self._random_points(rng)
            fit = ols_simple(pts)
            ybar = math.fsum(y for _, y in pts) / len(pts)
            sse = math.fsum((y - fit.predict(x)) ** 2 for x, y in pts)
            sst = math.fsum((y - ybar) ** 2 for _, y in pts)
            assert fit.r_squared == pytest.approx(1.0 - sse / sst, abs=1e-9)

    def test_two_predictor_noiseless_recovery_random_planes(self):
        rng = _rng(11)
        for _ in range(60):
            a = rng.uniform(-5, 5)
            b1 = rng.uniform(-5, 5)
            b2 = rng.uniform(-5, 5)
            rows = []
            for _ in range(rng.randint(4, 30)):
                x1, x2 = rng.uniform(-10, 10), rng.uniform(-10, 10)
                rows.append((x1, x2, a + b1 * x1 + b2 * x2))
            fit = ols_two_predictor(rows)
            assert fit.a == pytest.approx(a, abs=1e-8)
            assert fit.b1 == pytest.approx(b1, abs=1e-9)
            assert fit.b2 == pytest.approx(b2, abs=1e-9)


class TestPipelineProperties:
    def test_row_permutation_changes_nothing(self, bundled):
        rng = _rng(12)
        baseline = render_report_json(run_analysis(bundled))
        for _ in range(5):
            shuffled = list(bundled.trials)
            rng.shuffle(shuffled)
            permuted = Dataset(trials=tuple(shuffled),
                               metadata=dict(bundled.metadata))
            assert render_report_json(run_analysis(permuted)) == baseline


class TestCsvRoundTripProperties:
    def test_random_datasets_round_trip_bit_exact(self):
        rng = _rng(13)
        shots = list(ShotKind)
        for _ in range(25):
            trials = []
            for person in range(1, rng.randint(2, 4)):
                for shot in shots:
                    for trial in range(1, rng.randint(2, 5)):
                        trials.append(TrialRecord(
                            person, shot, trial,
                            rng.uniform(1, 2000), rng.uniform(0.01, 3),
                            rng.uniform(1, 900), rng.uniform(0.1, 4)))
            ds = Dataset(trials=tuple(trials))
            for include_derived in (False, True):
                parsed, rep = parse_csv(write_csv(ds, include_derived))
                assert rep.ok
                assert parsed.trials == ds.trials
