"""Built-in acceptance checks covering the package's core contracts.

Each criterion is a standalone function returning a CriterionResult;
run_all executes them in order.  Weight specifications used by the
randomized criteria come from fixed seeds so every run checks the same
inputs.  Expensive pipelines (the elementary-symmetric family) are
cached at module level and shared across criteria.
"""

from __future__ import annotations

import math
import random
import tempfile
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

from .asymptotics import (EstimateRequest, convergence_table,
                          estimate_from_critical_points,
                          estimate_from_sphere_maxima, sphere_integral_check)
from .colorings import (closed_form_coloring_count, closed_form_expected,
                        coloring_critical_data, coloring_weight_spec,
                        count_matrix_tuples, estimate_coloring_count,
                        exact_coloring_count, expected_table)
from .counting import (weighted_count_brute_force, weighted_count_partitions,
                       weighted_count_series)
from .critical import critical_points, find_sphere_maxima
from .polynomials import (WeightSpec, compositions, incidence_polynomial)

# (colors, degree) pairs for the exact engines; nk <= 8 keeps brute force feasible.
TRIPLE_PAIRS = ((1, 3), (1, 4), (2, 3), (2, 4), (3, 3))
# (degree, colors) pairs with closed-form critical data, degree <= colors.
EK_PAIRS = ((3, 3), (3, 4), (3, 5), (4, 4), (4, 5))


@dataclass(frozen=True)
class CriterionResult:
    number: int
    title: str
    passed: bool
    detail: str


def _random_spec(colors: int, degree: int, rng: random.Random,
                 positive: bool = False) -> WeightSpec:
    """Full-support weight specification with seeded rational weights."""
    weights = {}
    for w in compositions(degree, colors):
        num = rng.randint(1, 9) if positive else rng.randint(-9, 9)
        den = rng.randint(1, 9)
        weights[w] = Fraction(num if num else 1, den)
    return WeightSpec(colors=colors, degree=degree, weights=weights)


_EK_CACHE: dict = {}


def _ek_pipeline(degree: int, colors: int):
    """Numeric maxima and critical points for V = e_k, cached per pair."""
    key = (degree, colors)
    if key not in _EK_CACHE:
        spec = coloring_weight_spec(degree, colors)
        incidence = incidence_polynomial(spec)
        maxima = find_sphere_maxima(incidence, seed=42)
        points = critical_points(incidence, maxima=maxima)
        _EK_CACHE[key] = (spec, incidence, maxima, points)
    return _EK_CACHE[key]


def _fail(number: int, title: str, detail: str) -> CriterionResult:
    return CriterionResult(number, title, False, detail)


def _pass(number: int, title: str, detail: str) -> CriterionResult:
    return CriterionResult(number, title, True, detail)


def criterion_1() -> CriterionResult:
    title = "exact routes agree on seeded weights"
    cells = 0
    for colors, degree in TRIPLE_PAIRS:
        rng = random.Random(910_000 + 100 * colors + degree)
        spec = _random_spec(colors, degree, rng)
        for n in range(0, 8 // degree + 1):
            series = weighted_count_series(n, spec)
            parts = weighted_count_partitions(n, spec)
            brute = weighted_count_brute_force(n, spec)
            if not series == parts == brute:
                return _fail(1, title,
                             f"(c={colors}, k={degree}, n={n}): "
                             f"{series} / {parts} / {brute}")
            if n * degree <= 6:
                matchings = weighted_count_brute_force(
                    n, spec, exhaustive_matchings=True)
                if matchings != series:
                    return _fail(1, title,
                                 f"(c={colors}, k={degree}, n={n}): "
                                 f"matchings {matchings} != {series}")
            cells += 1
    return _pass(1, title, f"{cells} (c, k, n) cells, exact equality")


def criterion_2() -> CriterionResult:
    title = "known small values"
    single = WeightSpec.single_color(3)
    count = weighted_count_brute_force(2, single)
    if count != Fraction(5, 24):
        return _fail(2, title, f"A(2) = {count}, want 5/24")
    coloring = exact_coloring_count(2, 3, 3)
    if coloring != Fraction(1, 2):
        return _fail(2, title, f"P(2) = {coloring}, want 1/2")
    tuples = count_matrix_tuples(2, 3, 3)
    if tuples != 1:
        return _fail(2, title, f"tuples(2, 3, 3) = {tuples}, want 1")
    return _pass(2, title, "A(2) = 5/24, P(2) = 1/2, tuples(2,3,3) = 1")


def criterion_3() -> CriterionResult:
    title = "critical recovery for elementary symmetric weights"
    worst = 0.0
    for degree, colors in EK_PAIRS:
        _, _, maxima, points = _ek_pipeline(degree, colors)
        data = coloring_critical_data(degree, colors)
        if len(maxima) != len(data.maxima):
            return _fail(3, title,
                         f"(k={degree}, c={colors}): {len(maxima)} maximizers, "
                         f"want {len(data.maxima)}")
        if len(points) != len(maxima) * (degree - 2):
            return _fail(3, title,
                         f"(k={degree}, c={colors}): fiber size is not k-2")
        flat = colors ** -0.5
        for found in maxima:
            spread = max(abs(abs(component) - flat) for component in found.x)
            if spread > 1e-8:
                return _fail(3, title,
                             f"(k={degree}, c={colors}): coordinate spread {spread:.2e}")
        for found, known in zip(points, data.points):
            for label, a, b, tol in (
                    ("tau", found.scale, known.scale, 1e-9),
                    ("g", found.potential_value, known.potential_value, 1e-9),
                    ("det", found.potential_hessian_det,
                     known.potential_hessian_det, 1e-8)):
                rel = abs(a - b) / max(abs(b), 1e-300)
                worst = max(worst, rel)
                if rel > tol:
                    return _fail(3, title,
                                 f"(k={degree}, c={colors}): {label} off by {rel:.2e}")
    return _pass(3, title, f"5 pairs, worst relative error {worst:.2e}")


def criterion_4() -> CriterionResult:
    title = "spherical against full Hessian determinants"
    worst = 0.0
    jobs = [(degree, colors, _ek_pipeline(degree, colors)[3])
            for degree, colors in EK_PAIRS]
    for colors in (2, 3):
        for degree in (3, 4):
            rng = random.Random(640_000 + 100 * colors + degree)
            for _ in range(5):
                spec = _random_spec(colors, degree, rng, positive=True)
                points = critical_points(incidence_polynomial(spec),
                                         restarts=80, seed=42)
                jobs.append((degree, colors, points))
    for degree, colors, points in jobs:
        factor = degree ** (colors - 1) / (degree - 2)
        for point in points:
            target = factor * point.potential_hessian_det
            rel = abs(point.sphere_hessian_det - target) / max(abs(target), 1e-300)
            worst = max(worst, rel)
            if rel > 1e-8:
                return _fail(4, title,
                             f"c={colors}, k={degree}: determinant identity "
                             f"off by {rel:.2e}")
    return _pass(4, title,
                 f"{len(jobs)} weight systems (5 builtin + 20 random), "
                 f"worst relative error {worst:.2e}")


def criterion_5() -> CriterionResult:
    title = "sphere quadrature against exact rationals"
    worst = 0.0
    for colors, degree in TRIPLE_PAIRS:
        rng = random.Random(550_000 + 100 * colors + degree)
        spec = _random_spec(colors, degree, rng, positive=True)
        bound = 1e-8 if colors <= 2 else 1e-6
        for n in range(0, 8 // degree + 1):
            report = sphere_integral_check(n, spec)
            worst = max(worst, report.relative_error)
            if report.relative_error > bound:
                return _fail(5, title,
                             f"(c={colors}, k={degree}, n={n}): relative error "
                             f"{report.relative_error:.2e} > {bound}")
    return _pass(5, title, f"all n with nk <= 8, worst relative error {worst:.2e}")


def _decreasing(values: list[float]) -> bool:
    return all(b < a for a, b in zip(values, values[1:]))


def criterion_6() -> CriterionResult:
    title = "estimate converges to the exact count"
    single = WeightSpec.single_color(3)
    rows = convergence_table(single, range(10, 31, 2))
    deviations = [row.deviation for row in rows]
    if not _decreasing(deviations) or deviations[-1] > 0.1:
        return _fail(6, title, f"c=1 deviations {deviations}")
    spec, incidence, _, points = _ek_pipeline(3, 3)
    rows = convergence_table(spec, range(10, 21, 2), pipeline=points)
    other = [row.deviation for row in rows]
    if not _decreasing(other) or other[-1] > 0.15:
        return _fail(6, title, f"e_3 deviations {other}")
    return _pass(6, title,
                 f"c=1 final {deviations[-1]:.4f} <= 0.1, "
                 f"e_3 final {other[-1]:.4f} <= 0.15, both strictly decreasing")


def criterion_7() -> CriterionResult:
    title = "critical-point estimate equals the closed form"
    worst = 0.0
    compared = 0
    parity_zeros = 0
    for degree, colors in EK_PAIRS:
        for n in range(1, 201):
            euler = Fraction(n * (degree - 2), 2)
            if euler.denominator != 1 or not 1 <= euler <= 50:
                continue
            estimate = estimate_coloring_count(n, degree, colors)
            closed = closed_form_coloring_count(n, degree, colors)
            if estimate.is_zero or closed.is_zero:
                if estimate.is_zero != closed.is_zero:
                    return _fail(7, title,
                                 f"(k={degree}, c={colors}, n={n}): zero on one "
                                 "side only")
                parity_zeros += 1
                continue
            rel = abs(estimate.ratio(closed) - 1.0)
            worst = max(worst, rel)
            compared += 1
            if rel > 1e-10:
                return _fail(7, title,
                             f"(k={degree}, c={colors}, n={n}): ratio off by "
                             f"{rel:.2e}")
    return _pass(7, title,
                 f"{compared} comparisons to l = 50, worst {worst:.2e}; "
                 f"{parity_zeros} parity zeros agree exactly")


def criterion_8() -> CriterionResult:
    title = "expected colorings approach the closed form"
    for n in range(10, 21, 2):
        closed = closed_form_expected(n, 3, 3)
        direct = 2.0 * (2.0 / math.sqrt(3.0)) ** n
        rel = abs(closed.to_float() / direct - 1.0)
        if rel > 1e-12:
            return _fail(8, title,
                         f"closed form at n={n} off by {rel:.2e} from "
                         "2 (2/sqrt 3)^n")
    sequences = []
    for colors in (3, 4):
        rows = expected_table(3, colors, range(10, 21, 2))
        deviations = [row.deviation for row in rows]
        sequences.append((colors, deviations))
        if not _decreasing(deviations):
            return _fail(8, title,
                         f"(k=3, c={colors}) deviations not strictly "
                         f"decreasing over even n in 10..20: "
                         f"{[f'{d:.6f}' for d in deviations]}")
    detail = "; ".join(f"c={colors}: {[f'{d:.4f}' for d in devs]}"
                       for colors, devs in sequences)
    return _pass(8, title, detail)


def criterion_9() -> CriterionResult:
    title = "two estimator routes stay within 2/l"
    worst_margin = None
    for degree, colors in EK_PAIRS:
        _, incidence, maxima, points = _ek_pipeline(degree, colors)
        for n in range(1, 201):
            euler = Fraction(n * (degree - 2), 2)
            if euler.denominator != 1 or not 10 <= euler <= 50:
                continue
            request = EstimateRequest(n=n, degree=degree, colors=colors)
            main = estimate_from_critical_points(request, points)
            sphere = estimate_from_sphere_maxima(request, maxima,
                                                 incidence=incidence)
            if main.is_zero or sphere.is_zero:
                if main.is_zero != sphere.is_zero:
                    return _fail(9, title,
                                 f"(k={degree}, c={colors}, n={n}): zero on "
                                 "one side only")
                continue
            gap = abs(main.ratio(sphere) - 1.0)
            bound = 2.0 / float(euler)
            if worst_margin is None or gap / bound > worst_margin:
                worst_margin = gap / bound
            if gap > bound:
                return _fail(9, title,
                             f"(k={degree}, c={colors}, n={n}): gap {gap:.2e} "
                             f"exceeds 2/l = {bound:.2e}")
    return _pass(9, title,
                 f"worst gap at {100 * worst_margin:.2e}% of the 2/l budget")


def criterion_10(output_dir: Path | None = None, seed: int = 42) -> CriterionResult:
    import contextlib
    import io

    from .cli import JobConfig, run

    title = "repeated runs write identical artifacts"
    jobs = {
        "crit": JobConfig(command="crit", colors=4, degree=3, family="ek",
                          seed=seed),
        "converge": JobConfig(command="converge", colors=1, degree=3,
                              weights='[{"w":[3],"num":1,"den":1}]',
                              n_range="10:20:2", seed=seed),
    }
    with tempfile.TemporaryDirectory() as scratch:
        base = Path(output_dir) if output_dir is not None else Path(scratch)
        for name, config in jobs.items():
            contents = []
            for attempt in ("first", "second"):
                target = base / f"{name}_{attempt}.csv"
                config.output = str(target)
                config.figure = False
                with contextlib.redirect_stdout(io.StringIO()):
                    status = run(config)
                if status != 0:
                    return _fail(10, title, f"{name} run exited with {status}")
                contents.append(target.read_bytes())
            if contents[0] != contents[1]:
                return _fail(10, title, f"{name} artifacts differ between runs")
    return _pass(10, title, "crit and converge CSV artifacts byte-identical")


_CRITERIA = (criterion_1, criterion_2, criterion_3, criterion_4, criterion_5,
             criterion_6, criterion_7, criterion_8, criterion_9, criterion_10)


def run_all(output_dir: Path | None = None, seed: int = 42) -> list[CriterionResult]:
    """Execute all acceptance criteria in order."""
    results = []
    for check in _CRITERIA:
        if check is criterion_10:
            results.append(criterion_10(output_dir=output_dir, seed=seed))
        else:
            results.append(check())
    return results
