"""Tests for ECDF bands and Q-Q points."""

import numpy as np
import pytest

from tfep.curves import ecdf_band, normal_qq
from tfep.distributions import Normal, Seed, sample
from tfep.errors import DataError, DegenerateError
from tfep.trimming import TrimSpec


class TestEcdfBand:
    def test_steps(self):
        points = ecdf_band([3.0, 1.0, 4.0, 2.0])
        assert [p.x for p in points] == [1.0, 2.0, 3.0, 4.0]
        assert [p.ecdf for p in points] == pytest.approx([0.25, 0.5, 0.75, 1.0])

    def test_band(self):
        mid = ecdf_band([1.0, 2.0, 3.0, 4.0])[1]
        assert mid.lower == pytest.approx(0.5 - 1.959964 * 0.25, abs=1e-6)
        assert mid.upper == pytest.approx(0.5 + 1.959964 * 0.25, abs=1e-6)

    def test_band_is_clipped(self):
        for point in ecdf_band(np.arange(5.0)):
            assert 0.0 <= point.lower <= point.ecdf <= point.upper <= 1.0
        last = ecdf_band(np.arange(5.0))[-1]
        assert last.lower == pytest.approx(1.0)
        assert last.upper == 1.0

    def test_ties(self):
        points = ecdf_band([1.0, 1.0, 2.0, 2.0, 2.0])
        assert [p.x for p in points] == [1.0, 2.0]
        assert [p.ecdf for p in points] == pytest.approx([0.4, 1.0])

    def test_grid(self):
        points = ecdf_band([1.0, 2.0, 3.0, 4.0], grid=[10.0, 0.0, 2.5])
        assert [p.x for p in points] == [0.0, 2.5, 10.0]
        assert [p.ecdf for p in points] == pytest.approx([0.0, 0.5, 1.0])
        assert points[0].upper == pytest.approx(0.0)

    def test_trimmed(self):
        points = ecdf_band(np.arange(10.0), trim=TrimSpec.symmetric(0.2))
        assert [p.x for p in points] == [2.0, 3.0, 4.0, 5.0, 6.0, 7.0]
        assert points[0].ecdf == pytest.approx(1 / 6)

    def test_alpha_widens(self):
        values = np.random.default_rng(30).normal(size=50)
        narrow = ecdf_band(values, alpha=0.2)[20]
        wide = ecdf_band(values, alpha=0.01)[20]
        assert wide.upper - wide.lower > narrow.upper - narrow.lower


class TestNormalQQ:
    def test_positions(self):
        points = normal_qq([5.0, 1.0, 3.0, 2.0, 4.0])
        theoretical = [p.theoretical for p in points]
        assert theoretical[2] == 0.0
        assert theoretical[0] == pytest.approx(-theoretical[4], rel=1e-12)
        assert [p.sample for p in points] == sorted(p.sample for p in points)

    def test_standardized(self):
        points = normal_qq([2.0, 4.0, 6.0])
        assert [p.sample for p in points] == pytest.approx([-1.0, 0.0, 1.0])

    def test_normal_sample_is_straight(self):
        points = normal_qq(sample(Normal(mu=3, sigma=2), 2000, Seed(master=31)))
        theoretical = np.array([p.theoretical for p in points])
        observed = np.array([p.sample for p in points])
        assert np.corrcoef(theoretical, observed)[0, 1] > 0.999

    def test_too_short(self):
        with pytest.raises(DataError, match="at least 2"):
            normal_qq([1.0])

    def test_constant(self):
        with pytest.raises(DegenerateError):
            normal_qq([3.0, 3.0, 3.0])

    def test_non_finite(self):
        with pytest.raises(DataError, match="index 1"):
            normal_qq([1.0, float("nan"), 2.0])
