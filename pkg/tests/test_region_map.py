"""Tests for the (p, λ) region map and its boundary curves"""

import math

import numpy as np
import pytest

from internal.common.python.exceptions import DomainError
from internal.extremals.python.extremal_models import Family
from internal.extremals.python.extremals import corner_constants, e1_e2_at, lambda0_at, p0_at
from internal.extremals.python.region_map import region_map


def lambda0_closed_form(p):
    return -1.0 - p + math.sqrt(3.0 + 2.0 * p + p * p)


def p0_closed_form(lam):
    return (1.0 - lam + lam * lam / 2.0) / (2.0 - lam)


class TestRegionLabels:
    """Argmin labels over the feasible triangle"""

    def test_rejects_coarse_grid(self, cauchy1):
        with pytest.raises(DomainError):
            region_map(cauchy1, 7)

    def test_labels(self, cauchy1):
        result = region_map(cauchy1, 40, with_curves=False)
        assert result.winner.shape == (41, 41)
        assert result.label_at(0.2, 0.1) == "E2"
        assert result.label_at(0.1, 0.9) == ""
        assert result.label_at(0.35, 0.675) == "E4"

    def test_zero_asymmetry_column_is_a_tie(self, cauchy1):
        result = region_map(cauchy1, 20, with_curves=False)
        assert all(label == "E1" for label in result.winner[:, 0])
        assert bool(np.all(result.tie[1:, 0]))

    def test_origin_free_map_has_no_e4(self, cauchy1):
        result = region_map(cauchy1, 40, origin_free=True)
        assert "E4" not in set(result.winner.ravel())
        assert result.lambda0_curve == [] and result.p1 is None

    def test_perimeters_are_masked_off_range(self, cauchy1):
        result = region_map(cauchy1, 20, with_curves=False)
        e2 = result.perimeters[Family.E2]
        i = int(np.argmin(np.abs(result.p_values - 0.2)))
        j = int(np.argmin(np.abs(result.lam_values - 0.3)))
        assert np.isnan(e2[i, j])


class TestBoundaryCurves:
    """λ₀(p), p₀(λ), the corners and the E1/E2 line"""

    def test_corner_constants(self, cauchy1):
        p1, p2 = corner_constants(cauchy1)
        assert p1 == pytest.approx((math.sqrt(5.0) - 1.0) / 4.0, abs=1e-9)
        assert p2 == pytest.approx(math.sqrt(2.0) - 1.0, abs=1e-9)

    def test_lambda0_closed_form(self, cauchy1):
        for p in np.linspace(0.315, 0.41, 20):
            assert lambda0_at(cauchy1, p) == pytest.approx(lambda0_closed_form(p), abs=1e-9)

    def test_p0_closed_form(self, cauchy1):
        for lam in np.linspace(0.6, 0.99, 20):
            assert p0_at(cauchy1, lam) == pytest.approx(p0_closed_form(lam), abs=1e-9)

    def test_p0_slope_at_full_asymmetry(self, cauchy1):
        h = 1e-4
        slope = (p0_at(cauchy1, 1.0 - h) - p0_at(cauchy1, 1.0 - 2.0 * h)) / h
        assert slope == pytest.approx(0.5, abs=1e-3)

    def test_no_e1_e2_boundary_for_quadratic_profile(self, cauchy1):
        assert e1_e2_at(cauchy1, 0.3) is None

    def test_e1_e2_line_for_cubic_profile(self, cauchy_half):
        slope = 4.0 * math.sqrt(3.0) / (3.0 * math.sqrt(3.0) + math.sqrt(19.0))
        for p in np.linspace(0.02, 0.45, 20):
            assert e1_e2_at(cauchy_half, p) == pytest.approx(slope * p, abs=1e-9)

    def test_map_curves(self, cauchy1):
        result = region_map(cauchy1, 100)
        assert result.p1 == pytest.approx(0.309017, abs=1e-5)
        assert result.p2 == pytest.approx(0.414214, abs=1e-5)
        assert len(result.lambda0_curve) > 10 and len(result.p0_curve) > 10
        for p, lam in result.lambda0_curve:
            assert lam == pytest.approx(lambda0_closed_form(p), abs=1e-6)
        for lam, p in result.p0_curve:
            assert p == pytest.approx(p0_closed_form(lam), abs=1e-6)
        assert result.e1_e2_curve == []

    @pytest.mark.slow
    def test_fine_map_switches_across_lambda0(self, cauchy1):
        result = region_map(cauchy1, 400, with_curves=False)
        for p in (0.33, 0.36, 0.39):
            boundary = lambda0_closed_form(p)
            assert result.label_at(p, boundary - 0.01) == "E3"
            assert result.label_at(p, boundary + 0.01) == "E4"
