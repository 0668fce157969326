import random
from fractions import Fraction

import pytest

from regenum.counting import (CountTable, count_table, double_factorial,
                              exp_series_coefficient, single_edge_identity,
                              weighted_count_brute_force,
                              weighted_count_partitions, weighted_count_series)
from regenum.errors import CapExceededError
from regenum.polynomials import WeightSpec, compositions

ALL_METHODS = (weighted_count_series, weighted_count_partitions,
               weighted_count_brute_force)


def random_spec(colors, degree, seed, positive=False):
    rng = random.Random(seed)
    weights = {}
    for w in compositions(degree, colors):
        low = 1 if positive else -9
        weights[w] = Fraction(rng.randint(low, 9) or 1, rng.randint(1, 9))
    return WeightSpec(colors=colors, degree=degree, weights=weights)


@pytest.mark.parametrize("value, expected", [
    (-1, 1), (0, 1), (1, 1), (3, 3), (5, 15), (7, 105), (4, 8), (8, 384),
])
def test_double_factorial(value, expected):
    assert double_factorial(value) == expected


def test_double_factorial_rejects_below_minus_one():
    with pytest.raises(ValueError):
        double_factorial(-3)


@pytest.mark.parametrize("method", ALL_METHODS)
def test_single_color_cubic_small_values(method):
    spec = WeightSpec.single_color(3)
    assert method(0, spec) == 1
    assert method(1, spec) == 0
    assert method(2, spec) == Fraction(5, 24)


@pytest.mark.parametrize("method", ALL_METHODS)
def test_single_color_quartic_one_vertex(method):
    # one 4-valent vertex carries two loops; its symmetries have order 8
    spec = WeightSpec.single_color(4)
    assert method(1, spec) == Fraction(1, 8)


def test_exhaustive_matchings_agree():
    spec = WeightSpec.single_color(3)
    value = weighted_count_brute_force(2, spec, exhaustive_matchings=True)
    assert value == Fraction(5, 24)


def test_two_color_split_cubics():
    spec = WeightSpec(colors=2, degree=3,
                      weights={(3, 0): Fraction(1), (0, 3): Fraction(1)})
    for method in ALL_METHODS:
        assert method(2, spec) == Fraction(5, 12)


def test_proper_coloring_values():
    assert weighted_count_series(2, WeightSpec.proper_coloring(3, 3)) == Fraction(1, 2)
    assert weighted_count_series(2, WeightSpec.proper_coloring(4, 3)) == 2


@pytest.mark.parametrize("colors, degree, seed", [
    (1, 3, 101), (1, 4, 102), (2, 3, 103), (2, 4, 104), (3, 3, 105),
])
def test_routes_agree_on_random_weights(colors, degree, seed):
    spec = random_spec(colors, degree, seed)
    for n in range(0, 8 // degree + 1):
        series = weighted_count_series(n, spec)
        assert weighted_count_partitions(n, spec) == series
        assert weighted_count_brute_force(n, spec) == series


def test_odd_half_edge_total_vanishes():
    spec = random_spec(2, 3, 77)
    for method in ALL_METHODS:
        assert method(1, spec) == 0


def test_color_permutation_invariance():
    spec = random_spec(2, 3, 55)
    swapped = spec.permuted((1, 0))
    assert weighted_count_series(2, spec) == weighted_count_series(2, swapped)


def test_weight_scaling_multiplies_by_power():
    spec = random_spec(2, 4, 31, positive=True)
    scaled = spec.scaled(Fraction(7, 3))
    for n in range(3):
        expected = Fraction(7, 3) ** n * weighted_count_series(n, spec)
        assert weighted_count_series(n, scaled) == expected


def test_brute_force_cap():
    spec = WeightSpec.single_color(3)
    with pytest.raises(CapExceededError):
        weighted_count_brute_force(4, spec)
    with pytest.raises(CapExceededError):
        weighted_count_brute_force(4, spec, half_edge_cap=10,
                                   exhaustive_matchings=True)


def test_exp_series_coefficient_quadratic():
    # [x^2] exp(a x + b x^2/2) = a^2/2 + b/2
    weights = {(1, 0, 0): Fraction(3, 2), (2, 0, 0): Fraction(1, 3)}
    value = exp_series_coefficient(weights, (2, 0, 0))
    assert value == Fraction(9, 8) + Fraction(1, 6)


def test_single_edge_identity_matches():
    weights = {(1, 0, 0): Fraction(2), (2, 0, 0): Fraction(4),
               (0, 1, 0): Fraction(1, 2), (0, 0, 2): Fraction(3)}
    reports = single_edge_identity(weights)
    assert len(reports) == 3
    assert all(report.matches for report in reports)
    assert reports[0].coefficient == Fraction(4)


def test_single_edge_identity_rejects_high_degree():
    with pytest.raises(ValueError):
        single_edge_identity({(3, 0, 0): Fraction(1)})


def test_count_table_conflict():
    table = CountTable(colors=1, degree=3)
    table.record(2, Fraction(5, 24), "series")
    table.record(2, Fraction(5, 24), "partitions")
    with pytest.raises(ValueError, match="conflicting"):
        table.record(2, Fraction(1, 2), "bogus")


def test_count_table_all_methods():
    spec = random_spec(2, 3, 123)
    table = count_table(spec, range(3), method="all")
    assert table.values[0] == 1
    assert table.values[1] == 0
    assert table.values[2] == weighted_count_series(2, spec)
