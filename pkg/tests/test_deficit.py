"""Tests for the deficit constants, lower bounds and the anomalous example"""

import numpy as np
import pytest

from internal.common.python.exceptions import DomainError, HypothesisFailure
from internal.deficit.python.deficit import (
    anomalous_example,
    anomalous_expansion,
    anomalous_set,
    check_j_chain,
    constant_c,
    constant_c_prime,
    deficit_constants,
    deficit_lower_bound,
    deficit_table,
    nabla2_epsilon,
)
from internal.measures.python.measures import measure_from_spec
from internal.sets.python.interval_sets import asymmetry, contains_origin, deficit, measure_of, random_quantile_set


class TestConstants:

    def test_nabla2_epsilon(self, cauchy1, cauchy_half, exponential):
        assert nabla2_epsilon(cauchy1) == pytest.approx(2.0, abs=1e-9)
        assert nabla2_epsilon(cauchy_half) == pytest.approx(6.0, abs=1e-9)
        assert nabla2_epsilon(exponential) == pytest.approx(0.0, abs=1e-12)

    def test_constant_c(self, cauchy1):
        assert constant_c(cauchy1, 0.25) == pytest.approx(1.0 / 16.0, rel=1e-9)

    def test_constant_c_domain(self, cauchy1):
        with pytest.raises(DomainError):
            constant_c(cauchy1, 0.0)
        with pytest.raises(DomainError):
            constant_c(cauchy1, 0.6)

    def test_constant_c_prime(self, cauchy1):
        assert constant_c_prime(cauchy1) == pytest.approx(0.12375, rel=1e-9)
        assert constant_c_prime(cauchy1, eps_cap=None, shrink=0.0) == pytest.approx(0.25, rel=1e-9)

    def test_constant_c_prime_needs_nabla2(self, exponential):
        with pytest.raises(HypothesisFailure):
            constant_c_prime(exponential)

    def test_constants_bundle(self, cauchy1):
        bundle = deficit_constants(cauchy1, 0.25)
        assert bundle.c == pytest.approx(1.0 / 16.0, rel=1e-9)
        assert bundle.c_prime == pytest.approx(0.12375, rel=1e-9)
        assert set(bundle.terms) == {"8J'(p/2)", "M(p)", "16J'(1/6)", "8[J(1/2)-2J(1/4)]", "4M(gap/J'(1/2))"}


class TestLowerBound:
    """c(p)[(1-λ)² + (1-2p)]λ² and c′λ²"""

    def test_general_bound_example(self, cauchy1):
        assert deficit_lower_bound(cauchy1, 0.25, 0.5) == pytest.approx(0.01171875, rel=1e-9)
        assert deficit_lower_bound(cauchy1, 0.75, 0.5) == pytest.approx(0.01171875, rel=1e-9)
        assert deficit_lower_bound(cauchy1, 0.25, 0.0) == 0.0

    def test_origin_free_bound_example(self, cauchy1):
        assert deficit_lower_bound(cauchy1, 0.25, 0.5, origin_free=True) == pytest.approx(0.0309375, rel=1e-9)

    def test_domain(self, cauchy1):
        with pytest.raises(DomainError):
            deficit_lower_bound(cauchy1, 0.2, 0.5)
        with pytest.raises(DomainError):
            deficit_lower_bound(cauchy1, 1.2, 0.1)
        with pytest.raises(DomainError):
            deficit_lower_bound(cauchy1, 0.7, 0.1, origin_free=True)

    def test_origin_free_hypotheses_enforced(self, exponential, cauchy_half):
        with pytest.raises(HypothesisFailure):
            deficit_lower_bound(exponential, 0.3, 0.2, origin_free=True)
        with pytest.raises(HypothesisFailure):
            deficit_lower_bound(cauchy_half, 0.3, 0.2, origin_free=True)

    @staticmethod
    def _general_bound_violations(m, rng, draws):
        violations = checked = 0
        for _ in range(draws):
            S = random_quantile_set(rng, max_components=4)
            p = measure_of(S)
            if p <= 1e-9 or p >= 1.0 - 1e-9:
                continue
            checked += 1
            lam = min(asymmetry(S), 2.0 * min(p, 1.0 - p))
            if deficit(S, m) < deficit_lower_bound(m, p, lam) - 1e-12:
                violations += 1
        return violations, checked

    @pytest.mark.parametrize("spec", ["cauchy:1", "cauchy:2"])
    def test_random_sets_respect_general_bound(self, spec, rng):
        violations, checked = self._general_bound_violations(measure_from_spec(spec), rng, 200)
        assert violations == 0
        assert checked > 150

    @pytest.mark.slow
    @pytest.mark.parametrize("spec", ["cauchy:1", "cauchy:2"])
    def test_general_bound_on_ten_thousand_sets(self, spec, rng):
        violations, checked = self._general_bound_violations(measure_from_spec(spec), rng, 10_000)
        assert violations == 0
        assert checked > 7500

    @pytest.mark.parametrize("spec", ["cauchy:1", "cauchy:2"])
    def test_random_origin_free_sets_respect_quadratic_bound(self, spec, rng):
        m = measure_from_spec(spec)
        c_prime = constant_c_prime(m)
        checked = 0
        for _ in range(10_000):
            S = random_quantile_set(rng, max_components=3, origin_free=True, max_measure=0.5)
            p = measure_of(S)
            if contains_origin(S) or not 1e-9 < p <= 0.5:
                continue
            checked += 1
            lam = asymmetry(S)
            assert deficit(S, m) >= c_prime * lam * lam - 1e-12
        assert checked > 5000


class TestAnomaly:
    """Deficit linear in η and quadratic in ε while λ stays near 1"""

    def test_set_shape(self):
        S = anomalous_set(0.01, 0.1)
        assert measure_of(S) == pytest.approx(0.49)
        assert list(S.endpoints) == pytest.approx([0.205, 0.695])

    def test_asymmetry_close_to_one(self, cauchy1):
        for eta, eps in ((1e-3, 0.05), (1e-4, 0.01), (0.02, 0.2), (0.05, 0.05)):
            _, lam = anomalous_example(cauchy1, eta, eps)
            assert lam >= 1.0 - 2.0 * eps - 1e-12

    def test_quadratic_profile_matches_expansion_exactly(self, cauchy1):
        for eta, eps in ((1e-3, 0.05), (1e-4, 0.01)):
            value, _ = anomalous_example(cauchy1, eta, eps)
            assert value == pytest.approx(2.0 * eta + eps * eps, rel=1e-9)
            assert value == pytest.approx(anomalous_expansion(cauchy1, eta, eps), rel=1e-9)

    @pytest.mark.parametrize("scale", [1e-2, 1e-3, 1e-4])
    @pytest.mark.parametrize("spec", ["cauchy:1", "cauchy:2"])
    def test_equal_scales_track_expansion(self, spec, scale):
        m = measure_from_spec(spec)
        value, lam = anomalous_example(m, scale, scale)
        expansion = anomalous_expansion(m, scale, scale)
        # with η = ε the set is disjoint from the two tails, so λ = 2p = 1 - 2ε
        assert lam >= 1.0 - 2.0 * scale - 1e-12
        assert 0.0 < value <= 3.0 * expansion
        if scale == 1e-4:
            assert value / expansion == pytest.approx(1.0, rel=0.1)

    def test_equal_scales_exact_for_quadratic_profile(self, cauchy1):
        for scale in (1e-2, 1e-3, 1e-4):
            value, _ = anomalous_example(cauchy1, scale, scale)
            assert value == pytest.approx(2.0 * scale + scale * scale, rel=1e-9)
            assert value / anomalous_expansion(cauchy1, scale, scale) == pytest.approx(1.0, rel=1e-9)

    def test_anomaly_is_consistent_with_bound(self, cauchy1):
        value, lam = anomalous_example(cauchy1, 1e-3, 0.05)
        assert value >= deficit_lower_bound(cauchy1, 0.499, min(lam, 0.998)) - 1e-12

    def test_domain(self):
        with pytest.raises(DomainError):
            anomalous_set(0.0, 0.1)
        with pytest.raises(DomainError):
            anomalous_set(0.1, 0.6)


class TestChainAndTable:

    def test_j_chain(self, cauchy1, cauchy2, exponential):
        assert check_j_chain(cauchy1) == pytest.approx(0.0, abs=1e-15)
        assert check_j_chain(cauchy2) > 0.0
        assert check_j_chain(exponential) == pytest.approx(0.1875)

    def test_table_rows(self, cauchy1):
        rows = deficit_table(cauchy1, 0.3, 0.2)
        assert [row.family for row in rows] == ["E1", "E2", "E4", "E6", "E7"]
        for row in rows:
            assert row.measure == pytest.approx(0.3, abs=1e-12)
            assert row.asymmetry == pytest.approx(0.2, abs=1e-12)
            assert row.margin >= -1e-12
        best = min(rows, key=lambda row: row.deficit)
        assert best.family == "E2"
        by_family = {row.family: row for row in rows}
        assert by_family["E4"].origin_free_bound is None
        assert by_family["E1"].origin_free_bound == pytest.approx(0.12375 * 0.04, rel=1e-9)

    def test_table_without_origin_free_constant(self, cauchy_half):
        rows = deficit_table(cauchy_half, 0.3, 0.2)
        assert rows and all(row.origin_free_bound is None for row in rows)

    def test_table_domain(self, cauchy1):
        with pytest.raises(DomainError):
            deficit_table(cauchy1, 0.6, 0.1)
