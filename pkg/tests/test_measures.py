"""Tests for the measure catalog and the transform J = f∘F⁻¹"""

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from internal.common.python.exceptions import DomainError
from internal.measures.python.measures import (
    CustomMeasure,
    GeneralizedCauchy,
    exp_interval_perimeter,
    in_family_f,
    j_eval,
    lipschitz_constant,
    make_measure,
    measure_from_spec,
)
from internal.sets.python.interval_sets import reference_points

from conftest import CATALOG, STRICT_CATALOG


class TestCatalog:
    """Closed forms and constructor domains"""

    def test_exponential_j(self, exponential):
        assert exponential.j(0.3) == pytest.approx(0.3, abs=1e-15)
        assert j_eval(exponential, 0.9) == pytest.approx(0.1, abs=1e-15)

    def test_cauchy_j_and_quantile(self, cauchy1):
        assert cauchy1.j(0.25) == pytest.approx(0.125, abs=1e-15)
        assert cauchy1.quantile(0.75) == pytest.approx(1.0, abs=1e-14)
        assert j_eval(cauchy1, 1.0) == 0.0

    def test_cauchy_half_is_cubic(self, cauchy_half):
        assert cauchy_half.j(1.0 / 3.0) == pytest.approx(2.0 / 27.0, rel=1e-13)

    @pytest.mark.parametrize("spec", CATALOG)
    def test_boundary_extension(self, spec):
        m = measure_from_spec(spec)
        assert m.j(0.0) == 0.0
        assert m.j(1.0) == 0.0

    @pytest.mark.parametrize("kind,params", [("cauchy", [0.0]), ("cauchy", [-1.0]), ("subexp", [1.0]),
                                             ("subexp", [0.0]), ("exp", [1.0]), ("nope", [])])
    def test_rejects_out_of_domain(self, kind, params):
        with pytest.raises(DomainError):
            make_measure(kind, params)

    def test_spec_parsing(self):
        assert measure_from_spec("cauchy:2").label == "cauchy:2"
        assert measure_from_spec("exp").label == "exp"
        with pytest.raises(DomainError):
            measure_from_spec("cauchy:abc")

    def test_measures_are_immutable(self, cauchy1):
        with pytest.raises(AttributeError):
            cauchy1.alpha = 3.0

    def test_j_rejects_outside_unit_interval(self, cauchy1):
        with pytest.raises(DomainError):
            cauchy1.j(1.5)


class TestJProperties:
    """Symmetry, convexity, J(t)/t monotonicity and derivative consistency"""

    @pytest.mark.parametrize("spec", CATALOG)
    def test_symmetry(self, spec):
        m = measure_from_spec(spec)
        t = np.linspace(0.0, 1.0, 201)
        assert np.max(np.abs(np.asarray(m.j(t)) - np.asarray(m.j(1.0 - t)))) <= 1e-12

    @pytest.mark.parametrize("spec", CATALOG)
    def test_convex_on_left_half(self, spec):
        m = measure_from_spec(spec)
        t = np.arange(1e-3, 0.5, 1e-3)
        slopes = np.diff(np.asarray(m.j(t))) / np.diff(t)
        assert np.all(np.diff(slopes) >= -1e-9)

    @pytest.mark.parametrize("spec", STRICT_CATALOG)
    def test_ratio_strictly_increasing(self, spec):
        assert in_family_f(measure_from_spec(spec))

    def test_exponential_ratio_is_flat(self, exponential):
        assert not in_family_f(exponential)

    @pytest.mark.parametrize("alpha", [0.5, 1.0, 2.0])
    def test_closed_form_derivatives_match_differences(self, alpha):
        m = GeneralizedCauchy(alpha)
        h = 1e-5
        for t in np.linspace(0.05, 0.45, 9):
            central = (m.j(t + h) - m.j(t - h)) / (2 * h)
            second = (m.j(t + h) - 2 * m.j(t) + m.j(t - h)) / (h * h)
            assert m.j_prime(t) == pytest.approx(central, rel=1e-6)
            assert m.j_second(t) == pytest.approx(second, rel=1e-4)

    def test_half_accessors(self, cauchy1, exponential):
        assert cauchy1.j_prime_half() == 2.0
        assert cauchy1.j_second_half() == 4.0
        assert exponential.j_prime_half() == 1.0
        assert lipschitz_constant(cauchy1) == 2.0

    def test_subexponential_asymptotics(self, subexp):
        for t in np.geomspace(1e-6, 1e-3, 7):
            expected = t * float(subexp.phi_prime(subexp.phi_inverse(math.log(1.0 / t))))
            assert 0.5 <= subexp.j(t) / expected <= 2.0


class TestQuantiles:
    """Numeric inversion agrees with the CDF"""

    @settings(max_examples=40, deadline=None)
    @given(x=st.floats(min_value=-20.0, max_value=20.0))
    def test_subexponential_round_trip(self, x):
        m = make_measure("subexp", [0.5])
        assert m.quantile(m.cdf(x)) == pytest.approx(x, abs=1e-6)

    @settings(max_examples=40, deadline=None)
    @given(x=st.floats(min_value=-50.0, max_value=50.0))
    def test_cauchy_round_trip(self, x):
        m = GeneralizedCauchy(1.0)
        assert m.quantile(m.cdf(x)) == pytest.approx(x, abs=1e-9)

    def test_custom_measure_matches_exponential(self, exponential):
        custom = CustomMeasure(lambda x: math.exp(-abs(x)), name="laplace")
        for t in (0.05, 0.2, 0.4):
            assert custom.j(t) == pytest.approx(exponential.j(t), abs=1e-9)

    def test_reference_points(self, cauchy1):
        points = reference_points(cauchy1, 0.4)
        assert points.beta_p == pytest.approx(-cauchy1.quantile(0.2))
        # β_p = α_{1-p}
        assert points.beta_p == pytest.approx(reference_points(cauchy1, 0.6).alpha_p)


class TestExponentialIntervals:
    """Piecewise perimeter of intervals under the two-sided exponential law"""

    def test_examples(self, exponential):
        assert exp_interval_perimeter(0.6, -0.1) == pytest.approx(0.4)
        assert exp_interval_perimeter(0.3, -math.inf) == pytest.approx(0.3)
        assert exp_interval_perimeter(0.3, float(exponential.quantile(0.15))) == pytest.approx(0.6)

    def test_junctions_are_continuous(self, exponential):
        p = 0.3
        for junction in (0.5 - p, 0.5):
            a = float(exponential.quantile(junction))
            assert exp_interval_perimeter(p, a) == pytest.approx(1.0 - p, abs=1e-12)
            assert exp_interval_perimeter(p, float(exponential.quantile(junction - 1e-9))) == \
                pytest.approx(1.0 - p, abs=1e-8)

    def test_matches_generic_perimeter(self, exponential, rng):
        for _ in range(1000):
            p = float(rng.uniform(0.01, 0.99))
            t = float(rng.uniform(0.0, 1.0 - p))
            a = float(exponential.quantile(t))
            generic = exponential.j(t) + exponential.j(t + p)
            assert exp_interval_perimeter(p, a) == pytest.approx(generic, abs=1e-12)

    def test_rejects_inadmissible_start(self, exponential):
        with pytest.raises(DomainError):
            exp_interval_perimeter(0.3, float(exponential.quantile(0.9)))
