"""Tests for interval unions in quantile coordinates"""

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from pydantic import ValidationError

from internal.measures.python.measures import measure_from_spec
from internal.sets.python.interval_sets import (
    asymmetry,
    complement,
    contains_origin,
    deficit,
    from_real_intervals,
    intersection_measure,
    measure_of,
    mirror,
    optimal_perimeter,
    perimeter,
    random_quantile_set,
    rearrangement_asymmetry,
    reference_set,
    symmetric_difference_measure,
)
from internal.sets.python.set_models import QuantileSet, SetShape


def qs(*endpoints):
    return QuantileSet(endpoints=endpoints)


class TestQuantileSet:
    """Validation and normalization of endpoint lists"""

    def test_odd_endpoint_count_rejected(self):
        with pytest.raises(ValidationError):
            qs(0.1, 0.2, 0.3)

    def test_decreasing_endpoints_rejected(self):
        with pytest.raises(ValidationError):
            qs(0.4, 0.2)

    def test_out_of_range_rejected(self):
        with pytest.raises(ValidationError):
            qs(-0.5, 0.2)

    def test_touching_intervals_merge(self):
        assert qs(0.1, 0.3, 0.3, 0.5).endpoints == (0.1, 0.5)

    def test_degenerate_interval_dropped(self):
        assert qs(0.2, 0.2 + 1e-14, 0.4, 0.6).endpoints == (0.4, 0.6)


class TestBasicOperations:
    """Measure, perimeter, complement and symmetric difference"""

    def test_measure_of(self):
        assert measure_of(qs(0, 0.125, 0.875, 1)) == pytest.approx(0.25)
        assert measure_of(qs()) == 0.0
        assert measure_of(qs(0.25, 0.75)) == pytest.approx(0.5)

    def test_perimeter(self, cauchy1, exponential):
        assert perimeter(qs(0, 0.125, 0.875, 1), cauchy1) == pytest.approx(1.0 / 16.0, abs=1e-15)
        assert perimeter(qs(0.3, 0.7), exponential) == pytest.approx(0.6, abs=1e-15)
        assert perimeter(qs(0, 1), cauchy1) == 0.0

    def test_complement(self):
        assert complement(qs(0.25, 0.75)).endpoints == (0.0, 0.25, 0.75, 1.0)
        assert complement(qs()).endpoints == (0.0, 1.0)
        assert complement(qs(0, 0.5)).endpoints == (0.5, 1.0)

    def test_symmetric_difference(self):
        assert symmetric_difference_measure(qs(0.1, 0.3), qs(0.1, 0.3)) == 0.0
        assert symmetric_difference_measure(qs(0, 0.2), qs(0.2, 0.4)) == pytest.approx(0.4)
        assert symmetric_difference_measure(qs(0, 0.3), qs(0.1, 0.4)) == pytest.approx(0.2)
        assert intersection_measure(qs(0, 0.3), qs(0.1, 0.4)) == pytest.approx(0.2)

    def test_reference_sets(self):
        assert reference_set(0.5, SetShape.complement).endpoints == (0.0, 0.25, 0.75, 1.0)
        assert reference_set(0.5, SetShape.interval).endpoints == (0.25, 0.75)
        assert reference_set(0.0, SetShape.complement).is_empty()
        assert reference_set(0.0, SetShape.interval).is_empty()

    def test_mirror_and_origin(self):
        assert mirror(qs(0, 0.2)).endpoints == pytest.approx((0.8, 1.0))
        assert contains_origin(qs(0.4, 0.6))
        assert not contains_origin(qs(0.2, 0.5))
        assert not contains_origin(qs(0.5, 0.9))

    def test_from_real_intervals(self, cauchy1):
        S = from_real_intervals([(-math.inf, -1.0), (1.0, math.inf)], cauchy1)
        assert S.endpoints == pytest.approx((0.0, 0.25, 0.75, 1.0))
        merged = from_real_intervals([(-1.0, 0.0), (0.0, 1.0)], cauchy1)
        assert merged.endpoints == pytest.approx((0.25, 0.75))


class TestAsymmetryAndDeficit:
    """λ(E) and δ(E) against hand-computed values"""

    def test_asymmetry_examples(self):
        assert asymmetry(reference_set(0.3, SetShape.complement)) == pytest.approx(0.0, abs=1e-15)
        assert asymmetry(qs(0.35, 0.65)) == pytest.approx(0.6)
        assert asymmetry(qs(0.25, 0.75)) == pytest.approx(0.0, abs=1e-15)

    def test_asymmetry_accepts_measure(self, cauchy1, subexp):
        S = qs(0.1, 0.2, 0.6, 0.9)
        for m in (cauchy1, subexp):
            assert asymmetry(S, m) == asymmetry(S)
        assert asymmetry(qs(0.35, 0.65), m=cauchy1) == pytest.approx(0.6)

    def test_deficit_examples(self, cauchy1):
        for p in (0.1, 0.25, 0.5):
            assert deficit(reference_set(p, SetShape.complement), cauchy1) == pytest.approx(0.0, abs=1e-15)
        p, lam = 0.25, 0.125
        e2 = qs(0.0, (p + lam) / 2, 1 - (p - lam) / 2, 1.0)
        assert deficit(e2, cauchy1) == pytest.approx(1.0 / 64.0, abs=1e-15)
        # 2J(3/8) - 2J(1/8) with J(t) = 2t²
        assert deficit(qs(0.375, 0.625), cauchy1) == pytest.approx(0.5, abs=1e-15)

    def test_shapes_tie_at_half(self, cauchy1, subexp):
        for m in (cauchy1, subexp):
            complement_shape = perimeter(reference_set(0.5, SetShape.complement), m)
            interval_shape = perimeter(reference_set(0.5, SetShape.interval), m)
            assert complement_shape == pytest.approx(interval_shape, abs=1e-12)
            assert optimal_perimeter(m, 0.5) == pytest.approx(complement_shape, abs=1e-12)

    def test_rearrangement_asymmetry_above_half(self):
        # measured against the complement shape whatever the measure of S
        S = qs(0.2, 0.8)
        assert rearrangement_asymmetry(S) == pytest.approx(symmetric_difference_measure(S, qs(0, 0.3, 0.7, 1)))

    @settings(max_examples=100, deadline=None)
    @given(a=st.floats(min_value=0.0, max_value=1.0), b=st.floats(min_value=0.0, max_value=1.0))
    def test_half_scaled_interval_identity(self, a, b):
        a, b = sorted((a, b))
        m = measure_from_spec("cauchy:1")
        S = qs(a / 2, b / 2)
        if S.is_empty():
            return
        assert perimeter(S, m) == pytest.approx(float(m.j(a / 2) + m.j(b / 2)), abs=1e-15)
        assert measure_of(S) == pytest.approx((b - a) / 2, abs=1e-15)


class TestRandomSets:
    """Complement duality, the asymmetry range and the isoperimetric inequality on random unions"""

    def test_complement_duality(self, cauchy1, rng):
        for _ in range(2000):
            S = random_quantile_set(rng, max_components=4)
            Sc = complement(S)
            assert perimeter(Sc, cauchy1) == pytest.approx(perimeter(S, cauchy1), abs=1e-14)
            assert measure_of(Sc) == pytest.approx(1.0 - measure_of(S), abs=1e-14)
            assert asymmetry(Sc) == pytest.approx(asymmetry(S), abs=1e-12)

    def test_asymmetry_range(self, rng):
        for _ in range(2000):
            S = random_quantile_set(rng, max_components=4)
            p = measure_of(S)
            assert -1e-15 <= asymmetry(S) <= 2.0 * min(p, 1.0 - p) + 1e-12

    @pytest.mark.parametrize("spec,trials", [("cauchy:1", 10000), ("cauchy:2", 10000), ("cauchy:0.5", 10000),
                                             ("exp", 10000), ("subexp:0.5", 500)])
    def test_isoperimetry(self, spec, trials):
        m = measure_from_spec(spec)
        rng = np.random.default_rng(7)
        worst = min(deficit(random_quantile_set(rng, max_components=4), m) for _ in range(trials))
        assert worst >= -1e-12

    def test_origin_free_generator(self, rng):
        for _ in range(500):
            S = random_quantile_set(rng, max_components=3, origin_free=True, max_measure=0.5)
            assert not contains_origin(S)
