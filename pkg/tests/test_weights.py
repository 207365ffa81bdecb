"""Weight estimation: frequentist, Dirichlet-multinomial likelihood, grid search.

The likelihood is checked against an independent Polya-urn construction that
uses only stdlib math (no gammaln), and the grid search against an
independent exhaustive re-scan built on that oracle.
"""
import itertools
import math
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from parkroute.errors import EmptySurvey, InvalidConcentration, ParseError, ValidationError
from parkroute.weights import (
    GridSearchConfig,
    SurveyCounts,
    bayesian_weights,
    compare_estimates,
    dm_log_marginal_likelihood,
    estimate_concentration,
    format_comparison,
    format_estimate,
    frequentist_weights,
    load_survey,
    parse_survey,
)


def polya_log_pmf(counts, concentration):
    """Independent oracle: P(counts) built factor by factor from the urn.

    One specific ordering of the draws has probability
    prod_i prod_{t<n_i} (a_i + t) / prod_{t<N} (a0 + t); multiply by the
    multinomial coefficient for the number of orderings.
    """
    total = sum(counts)
    a0 = sum(concentration)
    ll = math.lgamma(total + 1) - sum(math.lgamma(c + 1) for c in counts)
    for c, a in zip(counts, concentration):
        for t in range(c):
            ll += math.log(a + t)
    for t in range(total):
        ll -= math.log(a0 + t)
    return ll


def compositions(total, k):
    """All count vectors of length k summing to total."""
    if k == 1:
        yield (total,)
        return
    for first in range(total + 1):
        for rest in compositions(total - first, k - 1):
            yield (first,) + rest


class TestSurveyCounts:
    def test_pooled_and_total(self):
        counts = SurveyCounts(((1, 2, 3), (4, 5, 6)))
        assert counts.k == 3
        assert counts.pooled() == (5, 7, 9)
        assert counts.total() == 21

    def test_needs_a_batch(self):
        with pytest.raises(ValidationError, match="no batches"):
            SurveyCounts(())

    def test_needs_two_categories(self):
        with pytest.raises(ValidationError, match="two categories"):
            SurveyCounts(((5,),))

    def test_rejects_ragged_batches(self):
        with pytest.raises(ValidationError, match="differing"):
            SurveyCounts(((1, 2), (1, 2, 3)))

    def test_rejects_negative_and_non_integer(self):
        with pytest.raises(ValidationError):
            SurveyCounts(((1, -2),))
        with pytest.raises(ValidationError):
            SurveyCounts(((1.5, 2),))
        with pytest.raises(ValidationError):
            SurveyCounts(((True, 2),))

    def test_all_zero_batches_are_allowed(self):
        counts = SurveyCounts(((0, 0, 0),))
        assert counts.total() == 0

    def test_category_names_must_match(self):
        with pytest.raises(ValidationError, match="category names"):
            SurveyCounts(((1, 2),), categories=("a", "b", "c"))


class TestLoadSurvey:
    def test_parse_good_file(self):
        counts = parse_survey(
            '{"categories": ["distance", "speed", "availability"], "batches": [[16, 14, 20]]}'
        )
        assert counts.pooled() == (16, 14, 20)
        assert counts.categories == ("distance", "speed", "availability")

    def test_load(self, tmp_path):
        path = tmp_path / "s.json"
        path.write_text('{"categories": ["a", "b"], "batches": [[1, 2], [3, 4]]}')
        assert load_survey(path).pooled() == (4, 6)

    def test_missing_file(self, tmp_path):
        with pytest.raises(ParseError, match="cannot read"):
            load_survey(tmp_path / "nope.json")

    def test_rejects_unknown_key(self):
        with pytest.raises(ParseError, match="unknown key"):
            parse_survey('{"batches": [[1, 2]], "year": 2024}')

    def test_rejects_missing_batches(self):
        with pytest.raises(ParseError, match="batches"):
            parse_survey('{"categories": ["a", "b"]}')

    def test_rejects_bad_shapes(self):
        with pytest.raises(ParseError):
            parse_survey('[1, 2]')
        with pytest.raises(ParseError):
            parse_survey('{"batches": 5}')
        with pytest.raises(ValidationError):
            parse_survey('{"batches": [[1, -2]]}')


class TestFrequentist:
    def test_worked_example(self):
        est = frequentist_weights(SurveyCounts(((16, 14, 20),)))
        assert est.weights == (0.32, 0.28, 0.40)
        assert est.method == "frequentist"

    def test_variance_formula(self):
        est = frequentist_weights(SurveyCounts(((16, 14, 20),)))
        for w, v in zip(est.weights, est.variances):
            assert v == pytest.approx(w * (1 - w) / 50, abs=1e-15)

    def test_degenerate_category(self):
        est = frequentist_weights(SurveyCounts(((10, 0, 0),)))
        assert est.weights == (1.0, 0.0, 0.0)
        assert est.variances == (0.0, 0.0, 0.0)

    def test_pools_batches(self):
        est = frequentist_weights(SurveyCounts(((1, 2), (3, 4))))
        assert est.weights == (0.4, 0.6)

    def test_empty_survey(self):
        with pytest.raises(EmptySurvey):
            frequentist_weights(SurveyCounts(((0, 0),)))


class TestDMLikelihood:
    def test_uniform_prior_pair(self):
        # two categories, a=(1,1): every outcome of N=2 draws equally likely
        counts = SurveyCounts(((2, 0),))
        assert dm_log_marginal_likelihood(counts, (1.0, 1.0)) == pytest.approx(
            math.log(1 / 3), abs=1e-12
        )

    def test_zero_batch_contributes_zero(self):
        assert dm_log_marginal_likelihood(SurveyCounts(((0, 0, 0),)), (2.0, 1.0, 0.5)) == 0.0
        with_zero = SurveyCounts(((16, 14, 20), (0, 0, 0)))
        without = SurveyCounts(((16, 14, 20),))
        a = (1.0, 2.0, 4.0)
        assert dm_log_marginal_likelihood(with_zero, a) == pytest.approx(
            dm_log_marginal_likelihood(without, a), abs=1e-12
        )

    def test_batches_add(self):
        a = (0.5, 2.0, 8.0)
        joint = dm_log_marginal_likelihood(SurveyCounts(((3, 1, 2), (0, 4, 1))), a)
        split = dm_log_marginal_likelihood(
            SurveyCounts(((3, 1, 2),)), a
        ) + dm_log_marginal_likelihood(SurveyCounts(((0, 4, 1),)), a)
        assert joint == pytest.approx(split, abs=1e-12)

    def test_matches_polya_oracle(self):
        rng = random.Random(20240816)
        for _ in range(40):
            k = rng.choice((2, 3))
            counts = tuple(rng.randint(0, 6) for _ in range(k))
            a = tuple(rng.choice((0.25, 0.5, 1.0, 2.0, 4.0, 8.0, 16.0)) for _ in range(k))
            got = dm_log_marginal_likelihood(SurveyCounts((counts,)), a)
            assert got == pytest.approx(polya_log_pmf(counts, a), abs=1e-10)

    def test_probabilities_sum_to_one(self):
        rng = random.Random(7)
        for k in (2, 3):
            for total in (1, 4, 6):
                a = tuple(rng.uniform(0.3, 10.0) for _ in range(k))
                mass = sum(
                    math.exp(
                        dm_log_marginal_likelihood(SurveyCounts((c,)), a)
                    )
                    for c in compositions(total, k)
                )
                assert mass == pytest.approx(1.0, abs=1e-9)

    def test_rejects_bad_concentration(self):
        counts = SurveyCounts(((1, 2),))
        for bad in ((0.0, 1.0), (-1.0, 1.0), (1.0, math.nan), (1.0,), (1.0, 1.0, 1.0)):
            with pytest.raises(InvalidConcentration):
                dm_log_marginal_likelihood(counts, bad)


class TestGridSearch:
    def test_default_axis_is_exact(self):
        assert GridSearchConfig().axis() == (0.25, 0.5, 1.0, 2.0, 4.0, 8.0, 16.0)

    def test_axis_respects_bounds(self):
        axis = GridSearchConfig(a_min=1.0, a_max=9.0, grid_points=3)
        assert axis.axis() == (1.0, 3.0, 9.0)

    def test_config_validation(self):
        with pytest.raises(ValidationError):
            GridSearchConfig(a_min=0.0)
        with pytest.raises(ValidationError):
            GridSearchConfig(a_min=4.0, a_max=2.0)
        with pytest.raises(ValidationError):
            GridSearchConfig(grid_points=1)

    def test_empty_survey(self):
        with pytest.raises(EmptySurvey):
            estimate_concentration(SurveyCounts(((0, 0),)))

    def test_frozen_result_for_default_survey(self):
        assert estimate_concentration(SurveyCounts(((16, 14, 20),))) == (16.0, 16.0, 16.0)

    def test_matches_independent_rescan(self):
        # brute-force re-scan using the Polya oracle, ties lexicographic
        axis = (0.5, 1.0, 4.0)
        search = GridSearchConfig(a_min=0.5, a_max=4.0, grid_points=3)
        for counts in ((3, 5), (1, 0), (6, 6)):
            best, best_ll = None, -math.inf
            for cand in itertools.product(axis, repeat=2):
                ll = polya_log_pmf(counts, cand)
                if ll > best_ll:
                    best, best_ll = cand, ll
            got = estimate_concentration(SurveyCounts((counts,)), search)
            assert got == best

    def test_tie_breaks_lexicographically(self):
        # symmetric counts make (x, y) and (y, x) score identically, so the
        # winner must never be lexicographically above its own transpose
        got = estimate_concentration(SurveyCounts(((4, 4),)))
        assert got <= tuple(reversed(got))


class TestBayesian:
    def test_posterior_mean_exact_fractions(self):
        est = bayesian_weights(SurveyCounts(((16, 14, 20),)), (16.0, 16.0, 16.0))
        assert est.weights == (32 / 98, 30 / 98, 36 / 98)
        assert est.method == "bayesian"
        assert est.concentration == (16.0, 16.0, 16.0)

    def test_variance_formula(self):
        est = bayesian_weights(SurveyCounts(((16, 14, 20),)), (16.0, 16.0, 16.0))
        for w, v in zip(est.weights, est.variances):
            assert v == pytest.approx(w * (1 - w) / 99, abs=1e-15)

    def test_no_data_returns_prior_mean(self):
        est = bayesian_weights(SurveyCounts(((0, 0, 0),)), (2.0, 3.0, 5.0))
        assert est.weights == (0.2, 0.3, 0.5)

    def test_rejects_bad_concentration(self):
        with pytest.raises(InvalidConcentration):
            bayesian_weights(SurveyCounts(((1, 2),)), (1.0, 0.0))

    @given(
        counts=st.lists(st.integers(0, 40), min_size=2, max_size=4),
        seed=st.integers(0, 10_000),
    )
    @settings(max_examples=60, deadline=None)
    def test_posterior_mean_between_prior_and_mle(self, counts, seed):
        rng = random.Random(seed)
        a = tuple(rng.uniform(0.25, 16.0) for _ in counts)
        survey = SurveyCounts((tuple(counts),))
        est = bayesian_weights(survey, a)
        assert sum(est.weights) == pytest.approx(1.0, abs=1e-9)
        total = sum(counts)
        a0 = sum(a)
        for i, w in enumerate(est.weights):
            prior = a[i] / a0
            if total == 0:
                assert w == pytest.approx(prior, abs=1e-12)
            else:
                mle = counts[i] / total
                lo, hi = min(prior, mle), max(prior, mle)
                assert lo - 1e-12 <= w <= hi + 1e-12

    def test_heavier_prior_pulls_toward_uniform(self):
        survey = SurveyCounts(((16, 14, 20),))
        gaps = []
        for c in (0.25, 1.0, 4.0, 16.0, 64.0):
            est = bayesian_weights(survey, (c, c, c))
            gaps.append(max(abs(w - 1 / 3) for w in est.weights))
        assert gaps == sorted(gaps, reverse=True)


class TestComparison:
    def test_bayesian_variance_smaller(self, survey50):
        comp = compare_estimates(survey50)
        for vb, vf in zip(comp.bayesian.variances, comp.frequentist.variances):
            assert vb < vf
        for r in comp.variance_ratio:
            assert 0 < r < 1

    def test_pooled_carried(self, survey50):
        assert compare_estimates(survey50).pooled == (16, 14, 20)

    def test_ratio_with_zero_frequentist_variance(self):
        comp = compare_estimates(SurveyCounts(((10, 0, 0),)))
        assert comp.variance_ratio[0] > 0
        assert math.isinf(comp.variance_ratio[1])

    def test_format_comparison(self, survey50):
        text = format_comparison(compare_estimates(survey50), survey50.categories)
        assert "distance" in text and "availability" in text
        assert "0.3200" in text and "0.3265" in text
        assert "prior concentration: (16, 16, 16)" in text

    def test_format_estimate(self):
        text = format_estimate(frequentist_weights(SurveyCounts(((16, 14, 20),))))
        assert "category 1" in text
        assert "method: frequentist" in text

    def test_format_rejects_wrong_names(self, survey50):
        with pytest.raises(ValidationError):
            format_comparison(compare_estimates(survey50), ("a", "b"))
