import random
from fractions import Fraction

import pytest

from regenum.polynomials import (Polynomial, WeightSpec, compositions,
                                 elementary_symmetric, incidence_polynomial,
                                 multi_factorial, potential_polynomial)


def variables(nvars):
    return [Polynomial.variable(nvars, i) for i in range(nvars)]


@pytest.mark.parametrize("total, parts, count", [
    (3, 1, 1), (3, 2, 4), (3, 3, 10), (4, 3, 15), (5, 4, 56),
])
def test_composition_count(total, parts, count):
    # number of weak compositions is C(total + parts - 1, parts - 1)
    seen = list(compositions(total, parts))
    assert len(seen) == count
    assert len(set(seen)) == count
    assert all(sum(w) == total and len(w) == parts for w in seen)


def test_compositions_deterministic_order():
    assert list(compositions(2, 2)) == [(2, 0), (1, 1), (0, 2)]


@pytest.mark.parametrize("w, value", [
    ((3,), 6), ((2, 1), 2), ((1, 1, 1), 1), ((0, 4), 24), ((2, 2), 4),
])
def test_multi_factorial(w, value):
    assert multi_factorial(w) == value


def test_product_difference_of_squares():
    x, y = variables(2)
    assert (x + y) * (x - y) == x * x - y * y


def test_pow_matches_repeated_multiplication():
    x, y = variables(2)
    p = x * x + Fraction(1, 3) * (y * y) - x * y
    direct = Polynomial.constant(2, Fraction(1))
    for exponent in range(6):
        assert p ** exponent == direct
        direct = direct * p


def test_pow_zero_is_one():
    x, _ = variables(2)
    assert (x ** 0) == Polynomial.constant(2, Fraction(1))


def test_exact_coefficients():
    x, y = variables(2)
    p = (Fraction(1, 3) * x + Fraction(1, 5) * y) ** 2
    assert p.coefficient((2, 0)) == Fraction(1, 9)
    assert p.coefficient((1, 1)) == Fraction(2, 15)
    assert p.coefficient((0, 2)) == Fraction(1, 25)


def test_power_stays_homogeneous():
    e3 = elementary_symmetric(4, 3)
    p = e3 ** 3
    assert p.is_homogeneous
    assert p.homogeneous_degree() == 9


def test_euler_relation_exactly_at_rational_points():
    # x . grad p = deg(p) p for homogeneous p, checked without rounding
    rng = random.Random(7)
    e3 = elementary_symmetric(3, 3)
    p = e3 * e3
    gradient = p.gradient()
    for _ in range(100):
        point = tuple(Fraction(rng.randint(-9, 9), rng.randint(1, 9))
                      for _ in range(3))
        lhs = sum(c * g.evaluate(point) for c, g in zip(point, gradient))
        assert lhs == 6 * p.evaluate(point)


def test_hessian_is_symmetric():
    x, y, z = variables(3)
    p = x * x * y + Fraction(2, 7) * (y * z * z) - x * y * z
    hessian = p.hessian()
    for i in range(3):
        for j in range(3):
            assert hessian[i][j] == hessian[j][i]


def test_gradient_of_monomial():
    p = Polynomial.monomial((2, 1), Fraction(3))
    gx, gy = p.gradient()
    assert gx == Polynomial.monomial((1, 1), Fraction(6))
    assert gy == Polynomial.monomial((2, 0), Fraction(3))


def test_evaluate_is_exact_on_rationals():
    x, y = variables(2)
    p = Fraction(1, 3) * (x * x) + y
    value = p.evaluate((Fraction(1, 2), Fraction(1, 5)))
    assert value == Fraction(1, 12) + Fraction(1, 5)
    assert isinstance(value, Fraction)


def test_evaluate_product_compatibility():
    rng = random.Random(11)
    x, y = variables(2)
    p = x * x * y - Fraction(2, 3) * (y * y * y)
    q = x * y + Fraction(5, 2) * (x * x * x)
    product = p * q
    for _ in range(50):
        point = (rng.uniform(-2, 2), rng.uniform(-2, 2))
        direct = p.evaluate(point) * q.evaluate(point)
        combined = product.evaluate(point)
        assert abs(direct - combined) <= 1e-12 * (1.0 + abs(direct))


def test_evaluate_mp_matches_exact():
    p = elementary_symmetric(3, 3)
    point = (Fraction(1, 3), Fraction(1, 7), Fraction(2, 5))
    exact = p.evaluate(point)
    approx = p.evaluate_mp(tuple(float(c) for c in point))
    assert abs(float(approx) - float(exact)) <= 1e-15


def test_immutability():
    p = elementary_symmetric(3, 2)
    with pytest.raises(AttributeError):
        p.nvars = 5
    with pytest.raises(TypeError):
        p.terms[(1, 1, 0)] = Fraction(2)


@pytest.mark.parametrize("colors, degree, weights, message", [
    (0, 3, {}, "colors"),
    (2, 2, {(1, 1): Fraction(1)}, "degree"),
    (2, 3, {(1, 1): Fraction(1)}, "degree 3"),
    (2, 3, {(3, 0, 0): Fraction(1)}, "entries"),
    (2, 3, {(4, -1): Fraction(1)}, "negative entry"),
])
def test_weight_spec_rejects_bad_input(colors, degree, weights, message):
    with pytest.raises(ValueError, match=message):
        WeightSpec(colors=colors, degree=degree, weights=weights)


def test_weight_spec_drops_zeros():
    spec = WeightSpec(colors=2, degree=3,
                      weights={(3, 0): Fraction(1), (0, 3): Fraction(0)})
    assert spec.support() == [(3, 0)]


def test_proper_coloring_support():
    spec = WeightSpec.proper_coloring(4, 3)
    assert sorted(spec.support()) == sorted(w for w in compositions(3, 4)
                                            if max(w) <= 1)
    assert len(spec.support()) == 4
    assert all(value == 1 for value in spec.weights.values())


def test_proper_coloring_needs_enough_colors():
    with pytest.raises(ValueError):
        WeightSpec.proper_coloring(2, 3)


def test_incidence_of_proper_coloring_is_elementary_symmetric():
    spec = WeightSpec.proper_coloring(4, 3)
    assert incidence_polynomial(spec) == elementary_symmetric(4, 3)


def test_incidence_divides_by_multi_factorial():
    spec = WeightSpec.single_color(4, Fraction(5))
    poly = incidence_polynomial(spec)
    assert poly.coefficient((4,)) == Fraction(5, 24)


def test_potential_subtracts_half_square_norm():
    spec = WeightSpec.proper_coloring(3, 3)
    g = potential_polynomial(incidence_polynomial(spec))
    assert g.coefficient((2, 0, 0)) == Fraction(-1, 2)
    assert g.coefficient((0, 2, 0)) == Fraction(-1, 2)
    assert g.coefficient((1, 1, 1)) == Fraction(1)


def test_scaled_and_permuted():
    spec = WeightSpec(colors=2, degree=3,
                      weights={(2, 1): Fraction(3), (0, 3): Fraction(1, 2)})
    scaled = spec.scaled(Fraction(2, 3))
    assert scaled.weights[(2, 1)] == Fraction(2)
    swapped = spec.permuted((1, 0))
    assert swapped.weights[(1, 2)] == Fraction(3)
    assert swapped.weights[(3, 0)] == Fraction(1, 2)


def test_elementary_symmetric_term_count():
    poly = elementary_symmetric(5, 3)
    assert len(poly.terms) == 10
    assert all(value == 1 for value in poly.terms.values())
