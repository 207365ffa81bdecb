"""Objective-weight estimation from batched survey counts.

Respondents pick the criterion they care about most (distance, speed,
availability, ...), tallied in batches. Two estimators of the category
probabilities are provided:

* frequentist: w_i = n_i / N with variance w_i (1 - w_i) / N
* Bayesian: a Dirichlet(a) prior over the weights, updated by the pooled
  multinomial counts. The posterior mean is w_i = (a_i + n_i) / sum_j (a_j + n_j)
  and the posterior variance w_i (1 - w_i) / (c0 + 1) with c0 the sum of the
  updated concentration.

The prior concentration is picked by empirical Bayes: an exhaustive grid
search maximizing the Dirichlet-multinomial marginal likelihood of the
observed batches.
"""
from __future__ import annotations

import itertools
import json
import math
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np
from scipy.special import gammaln

from .errors import EmptySurvey, InvalidConcentration, ParseError, ValidationError


@dataclass(frozen=True)
class SurveyCounts:
    """Per-batch category counts; batch b, category i is batches[b][i]."""

    batches: tuple[tuple[int, ...], ...]
    categories: tuple[str, ...] | None = None

    def __post_init__(self):
        batches = tuple(tuple(row) for row in self.batches)
        if not batches:
            raise ValidationError("survey has no batches")
        k = len(batches[0])
        if k < 2:
            raise ValidationError("survey needs at least two categories")
        for row in batches:
            if len(row) != k:
                raise ValidationError("survey batches have differing category counts")
            for v in row:
                if isinstance(v, bool) or not isinstance(v, int) or v < 0:
                    raise ValidationError(f"survey count {v!r} is not a non-negative integer")
        object.__setattr__(self, "batches", batches)
        if self.categories is not None:
            cats = tuple(str(c) for c in self.categories)
            if len(cats) != k:
                raise ValidationError(
                    f"{len(cats)} category names for {k} count columns"
                )
            object.__setattr__(self, "categories", cats)

    @property
    def k(self) -> int:
        return len(self.batches[0])

    def pooled(self) -> tuple[int, ...]:
        """Counts summed over batches."""
        return tuple(sum(col) for col in zip(*self.batches))

    def total(self) -> int:
        return sum(self.pooled())


def load_survey(path) -> SurveyCounts:
    """Read survey counts from JSON: {"categories": [...], "batches": [[...], ...]}."""
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise ParseError(f"cannot read survey file {path}: {exc}") from exc
    return parse_survey(text)


def parse_survey(text: str) -> SurveyCounts:
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"survey file is not valid JSON: {exc}") from exc
    if not isinstance(raw, dict):
        raise ParseError("survey file must be a JSON object")
    unknown = raw.keys() - {"categories", "batches"}
    if unknown:
        raise ParseError(f"survey file has unknown key {sorted(unknown)[0]!r}")
    if "batches" not in raw:
        raise ParseError("survey file missing key 'batches'")
    batches = raw["batches"]
    if not isinstance(batches, list) or not all(isinstance(b, list) for b in batches):
        raise ParseError("'batches' must be an array of arrays")
    categories = raw.get("categories")
    if categories is not None and not isinstance(categories, list):
        raise ParseError("'categories' must be an array of names")
    return SurveyCounts(
        tuple(tuple(b) for b in batches),
        tuple(categories) if categories is not None else None,
    )


@dataclass(frozen=True)
class WeightEstimate:
    """Estimated category weights with per-component variances."""

    weights: tuple[float, ...]
    variances: tuple[float, ...]
    method: str
    concentration: tuple[float, ...] | None = None

    def __post_init__(self):
        object.__setattr__(self, "weights", tuple(float(w) for w in self.weights))
        object.__setattr__(self, "variances", tuple(float(v) for v in self.variances))
        if len(self.weights) != len(self.variances):
            raise ValidationError("weights and variances differ in length")
        for w in self.weights:
            if not 0.0 <= w <= 1.0:
                raise ValidationError(f"weight {w} outside [0, 1]")
        if abs(sum(self.weights) - 1.0) > 1e-9:
            raise ValidationError("weights do not sum to 1")
        for v in self.variances:
            if v < 0.0:
                raise ValidationError(f"variance {v} is negative")


def frequentist_weights(counts: SurveyCounts) -> WeightEstimate:
    """Pooled relative frequencies, w_i = n_i / N, variance w_i (1 - w_i) / N."""
    n = counts.pooled()
    total = sum(n)
    if total == 0:
        raise EmptySurvey("survey has no responses")
    weights = tuple(c / total for c in n)
    variances = tuple(w * (1.0 - w) / total for w in weights)
    return WeightEstimate(weights, variances, "frequentist")


def _concentration_array(concentration, k: int) -> np.ndarray:
    a = np.asarray(tuple(concentration), dtype=float)
    if a.shape != (k,):
        raise InvalidConcentration(
            f"concentration has {a.size} components, counts have {k}"
        )
    if not np.all(np.isfinite(a)) or np.any(a <= 0.0):
        raise InvalidConcentration("concentration components must be positive and finite")
    return a


def dm_log_marginal_likelihood(counts: SurveyCounts, concentration) -> float:
    """Log marginal likelihood of the batches under a Dirichlet(a) prior.

    Each batch of total N_b contributes

        ln G(a0) - ln G(a0 + N_b)
        + sum_i [ln G(a_i + n_i) - ln G(a_i)]
        + ln G(N_b + 1) - sum_i ln G(n_i + 1)

    with G the gamma function and a0 = sum_i a_i. A batch of all zeros
    contributes exactly 0.
    """
    a = _concentration_array(concentration, counts.k)
    a0 = a.sum()
    total = 0.0
    for batch in counts.batches:
        n = np.asarray(batch, dtype=float)
        nb = n.sum()
        total += (
            gammaln(a0)
            - gammaln(a0 + nb)
            + float(np.sum(gammaln(a + n) - gammaln(a)))
            + gammaln(nb + 1.0)
            - float(np.sum(gammaln(n + 1.0)))
        )
    return float(total)


@dataclass(frozen=True)
class GridSearchConfig:
    """Per-component log-spaced grid for the concentration search.

    The default axis is {0.25, 0.5, 1, 2, 4, 8, 16}: grid_points values spaced
    geometrically from a_min to a_max.
    """

    a_min: float = 0.25
    a_max: float = 16.0
    grid_points: int = 7

    def __post_init__(self):
        if not (math.isfinite(self.a_min) and math.isfinite(self.a_max)):
            raise ValidationError("grid bounds must be finite")
        if self.a_min <= 0 or self.a_min >= self.a_max:
            raise ValidationError("grid needs 0 < a_min < a_max")
        if self.grid_points < 2:
            raise ValidationError("grid needs at least two points")

    def axis(self) -> tuple[float, ...]:
        # geomspace drifts in the last bits (2 comes back 1.9999999999999998);
        # round so the documented default grid is exact
        return tuple(np.round(np.geomspace(self.a_min, self.a_max, self.grid_points), 12))


def estimate_concentration(
    counts: SurveyCounts, search: GridSearchConfig | None = None
) -> tuple[float, ...]:
    """Exhaustive empirical-Bayes grid search for the prior concentration.

    Scans every point of the per-component grid (grid_points ** k candidates)
    and returns the one maximizing dm_log_marginal_likelihood. Ties go to the
    lexicographically smallest vector, so the result is deterministic.
    """
    if counts.total() == 0:
        raise EmptySurvey("cannot fit a prior to a survey with no responses")
    search = search if search is not None else GridSearchConfig()
    axis = search.axis()
    best: tuple[float, ...] | None = None
    best_ll = -math.inf
    for candidate in itertools.product(axis, repeat=counts.k):
        ll = dm_log_marginal_likelihood(counts, candidate)
        if ll > best_ll:
            best, best_ll = candidate, ll
    assert best is not None
    return tuple(float(a) for a in best)


def bayesian_weights(counts: SurveyCounts, concentration) -> WeightEstimate:
    """Dirichlet posterior mean and variance given a prior concentration.

    Pools the batches, then w_i = (a_i + n_i) / c0 with c0 = sum_j (a_j + n_j),
    and variance w_i (1 - w_i) / (c0 + 1). With no responses this is just the
    prior mean.
    """
    a = _concentration_array(concentration, counts.k)
    n = np.asarray(counts.pooled(), dtype=float)
    c = a + n
    c0 = float(c.sum())
    w = c / c0
    var = w * (1.0 - w) / (c0 + 1.0)
    return WeightEstimate(
        tuple(float(x) for x in w),
        tuple(float(v) for v in var),
        "bayesian",
        tuple(float(x) for x in a),
    )


@dataclass(frozen=True)
class EstimateComparison:
    """Frequentist and Bayesian estimates for one survey, side by side."""

    pooled: tuple[int, ...]
    frequentist: WeightEstimate
    bayesian: WeightEstimate
    variance_ratio: tuple[float, ...] = field(init=False)

    def __post_init__(self):
        ratios = []
        for vb, vf in zip(self.bayesian.variances, self.frequentist.variances):
            if vf == 0.0:
                ratios.append(math.inf if vb > 0.0 else math.nan)
            else:
                ratios.append(vb / vf)
        object.__setattr__(self, "variance_ratio", tuple(ratios))


def compare_estimates(
    counts: SurveyCounts, search: GridSearchConfig | None = None
) -> EstimateComparison:
    """Run both estimators, fitting the Bayesian prior by grid search."""
    freq = frequentist_weights(counts)
    concentration = estimate_concentration(counts, search)
    bayes = bayesian_weights(counts, concentration)
    return EstimateComparison(counts.pooled(), freq, bayes)


def format_comparison(
    comparison: EstimateComparison, categories: tuple[str, ...] | None = None
) -> str:
    """Plain-text table of both estimates, one row per category."""
    k = len(comparison.pooled)
    if categories is None:
        categories = tuple(f"category {i + 1}" for i in range(k))
    if len(categories) != k:
        raise ValidationError(f"{len(categories)} category names for {k} categories")

    name_w = max(len("category"), len("total"), *(len(c) for c in categories))
    header = (
        f"{'category':<{name_w}}  {'count':>5}  {'w(freq)':>8}  {'w(bayes)':>8}  "
        f"{'var(freq)':>11}  {'var(bayes)':>11}  {'ratio':>7}"
    )
    lines = [header, "-" * len(header)]
    for i, name in enumerate(categories):
        lines.append(
            f"{name:<{name_w}}  {comparison.pooled[i]:>5}  "
            f"{comparison.frequentist.weights[i]:>8.4f}  "
            f"{comparison.bayesian.weights[i]:>8.4f}  "
            f"{comparison.frequentist.variances[i]:>11.6g}  "
            f"{comparison.bayesian.variances[i]:>11.6g}  "
            f"{comparison.variance_ratio[i]:>7.3f}"
        )
    lines.append(
        f"{'total':<{name_w}}  {sum(comparison.pooled):>5}  "
        f"{sum(comparison.frequentist.weights):>8.4f}  "
        f"{sum(comparison.bayesian.weights):>8.4f}"
    )
    if comparison.bayesian.concentration is not None:
        conc = ", ".join(f"{a:g}" for a in comparison.bayesian.concentration)
        lines.append(f"prior concentration: ({conc})")
    return "\n".join(lines)


def format_estimate(
    estimate: WeightEstimate, categories: tuple[str, ...] | None = None
) -> str:
    """Plain-text table for a single estimate."""
    k = len(estimate.weights)
    if categories is None:
        categories = tuple(f"category {i + 1}" for i in range(k))
    if len(categories) != k:
        raise ValidationError(f"{len(categories)} category names for {k} categories")
    name_w = max(len("category"), len("total"), *(len(c) for c in categories))
    lines = [f"{'category':<{name_w}}  {'weight':>8}  {'variance':>11}"]
    lines.append("-" * len(lines[0]))
    for i, name in enumerate(categories):
        lines.append(
            f"{name:<{name_w}}  {estimate.weights[i]:>8.4f}  {estimate.variances[i]:>11.6g}"
        )
    lines.append(f"{'total':<{name_w}}  {sum(estimate.weights):>8.4f}")
    lines.append(f"method: {estimate.method}")
    if estimate.concentration is not None:
        conc = ", ".join(f"{a:g}" for a in estimate.concentration)
        lines.append(f"prior concentration: ({conc})")
    return "\n".join(lines)
