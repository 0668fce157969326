import math
from fractions import Fraction

import pytest

from regenum.asymptotics import (EstimateRequest, LogValue, convergence_table,
                                 estimate_from_critical_points,
                                 estimate_from_sphere_maxima,
                                 set_working_precision, sphere_integral_check)
from regenum.counting import weighted_count_series
from regenum.critical import critical_points, find_sphere_maxima
from regenum.polynomials import WeightSpec, incidence_polynomial


def ek_spec(degree, colors):
    return WeightSpec.proper_coloring(colors, degree)


def test_log_value_huge_product_round_trip():
    big = LogValue.from_fraction(Fraction(10) ** 500)
    small = LogValue.from_fraction(Fraction(1, 10) ** 500)
    product = big * small
    assert product.to_float() == pytest.approx(1.0, rel=1e-25)
    assert big.log10() == pytest.approx(500.0, abs=1e-12)


def test_log_value_signs_and_zero():
    negative = LogValue.from_fraction(Fraction(-3, 4))
    assert negative.sign == -1
    assert negative.to_float() == pytest.approx(-0.75)
    zero = LogValue.zero("why")
    assert zero.is_zero
    assert zero.sign == 0
    assert zero.log10() == float("-inf")
    assert zero.to_float() == 0.0
    assert zero.note == "why"


def test_log_value_ratio_conventions():
    one = LogValue.from_float(2.5)
    zero = LogValue.zero()
    assert zero.ratio(zero) == 1.0
    assert zero.ratio(one) == 0.0
    assert one.ratio(zero) == float("inf")
    assert one.ratio(LogValue.from_float(2.5)) == pytest.approx(1.0, rel=1e-14)


def test_log_value_division():
    a = LogValue.from_float(6.0)
    b = LogValue.from_float(-2.0)
    quotient = a / b
    assert quotient.to_float() == pytest.approx(-3.0, rel=1e-14)


def test_set_working_precision_guard():
    with pytest.raises(ValueError):
        set_working_precision(40)
    old = set_working_precision(150)
    assert set_working_precision(old) == 150


def test_request_bookkeeping():
    request = EstimateRequest(n=10, degree=3, colors=1)
    assert request.edge_count == Fraction(15)
    assert request.euler_index == Fraction(5)
    assert request.is_integral
    odd = EstimateRequest(n=9, degree=3, colors=1)
    assert not odd.is_integral


def test_single_color_estimate_closed_form():
    # single critical point: estimate is Gamma(l) (3/2)^l / (2 pi)
    points = critical_points(incidence_polynomial(WeightSpec.single_color(3)))
    for n in (10, 20, 30):
        request = EstimateRequest(n=n, degree=3, colors=1)
        estimate = estimate_from_critical_points(request, points)
        index = n // 2
        expected = (math.lgamma(index) + index * math.log(1.5)
                    - math.log(2.0 * math.pi))
        assert float(estimate.log_abs) == pytest.approx(expected, rel=1e-12)
        assert estimate.sign == 1


def test_half_integral_euler_index_is_zero():
    points = critical_points(incidence_polynomial(WeightSpec.single_color(3)))
    request = EstimateRequest(n=9, degree=3, colors=1)
    estimate = estimate_from_critical_points(request, points)
    assert estimate.is_zero
    assert "half-integral" in estimate.note


def test_parity_cancellation_across_sign_patterns():
    spec = ek_spec(4, 4)
    points = critical_points(incidence_polynomial(spec))
    request = EstimateRequest(n=7, degree=4, colors=4)
    estimate = estimate_from_critical_points(request, points)
    assert estimate.is_zero
    assert "cancellation" in estimate.note


def test_sphere_route_matches_critical_route():
    spec = ek_spec(3, 3)
    incidence = incidence_polynomial(spec)
    maxima = find_sphere_maxima(incidence)
    points = critical_points(incidence, maxima=maxima)
    request = EstimateRequest(n=20, degree=3, colors=3)
    main = estimate_from_critical_points(request, points)
    sphere = estimate_from_sphere_maxima(request, maxima, incidence=incidence)
    assert main.ratio(sphere) == pytest.approx(1.0, rel=1e-12)


def test_estimate_scaling_covariance():
    # weights scaled by t multiply A(n), hence the estimate, by t^n
    spec = WeightSpec(colors=2, degree=3,
                      weights={(3, 0): Fraction(1), (2, 1): Fraction(1, 2),
                               (0, 3): Fraction(2)})
    scale = Fraction(7, 3)
    base = critical_points(incidence_polynomial(spec), restarts=80)
    scaled = critical_points(incidence_polynomial(spec.scaled(scale)), restarts=80)
    n = 12
    request = EstimateRequest(n=n, degree=3, colors=2)
    a = estimate_from_critical_points(request, base)
    b = estimate_from_critical_points(request, scaled)
    expected = LogValue.from_fraction(scale ** n)
    assert (b / a).ratio(expected) == pytest.approx(1.0, rel=1e-10)


def test_quadrature_single_color_is_exact():
    report = sphere_integral_check(2, WeightSpec.single_color(3))
    assert report.exact == Fraction(5, 24)
    assert report.relative_error <= 1e-12
    assert report.nodes == 2


def test_quadrature_two_colors():
    spec = WeightSpec(colors=2, degree=3,
                      weights={(3, 0): Fraction(1), (0, 3): Fraction(1)})
    report = sphere_integral_check(2, spec)
    assert report.exact == Fraction(5, 12)
    assert report.relative_error <= 1e-8


def test_quadrature_three_colors():
    report = sphere_integral_check(2, ek_spec(3, 3))
    assert report.exact == Fraction(1, 2)
    assert report.relative_error <= 1e-6


def test_quadrature_parity_zero():
    report = sphere_integral_check(1, WeightSpec.single_color(3))
    assert report.exact == 0
    assert report.estimate == 0.0
    assert report.relative_error == 0.0


def test_quadrature_normalization_at_n_zero():
    for spec in (WeightSpec.single_color(3), ek_spec(3, 3)):
        report = sphere_integral_check(0, spec)
        assert report.exact == 1
        assert report.relative_error <= 1e-12


def test_quadrature_rejects_many_colors():
    with pytest.raises(ValueError):
        sphere_integral_check(2, ek_spec(3, 4))


def test_convergence_rows():
    rows = convergence_table(WeightSpec.single_color(3), [10, 11, 12])
    assert [row.n for row in rows] == [10, 11, 12]
    assert rows[0].euler_index == 5.0
    # odd n: both sides vanish, ratio 1 by convention
    assert rows[1].ratio == 1.0
    assert rows[1].deviation == 0.0
    assert rows[1].exact_log10 == float("-inf")
    for row in (rows[0], rows[2]):
        exact = weighted_count_series(row.n, WeightSpec.single_color(3))
        assert row.exact_log10 == pytest.approx(math.log10(float(exact)), rel=1e-12)
        assert row.deviation == abs(row.ratio - 1.0)


def test_convergence_accepts_precomputed_pipeline():
    spec = ek_spec(3, 3)
    points = critical_points(incidence_polynomial(spec))
    rows = convergence_table(spec, [10, 12], pipeline=points)
    assert rows[0].deviation > rows[1].deviation
