"""Exact automorphism-weighted counts of edge-colored regular multigraphs.

A weight system (WeightSpec) assigns a rational weight to every vertex
type, i.e. to every way a degree-k vertex can distribute its k incident
half-edges over c colors.  The weighted count over n vertices is

    A(n) = sum over isomorphism classes G of (prod_v weight(type v)) / |Aut G|

with loops and parallel edges allowed, a loop contributing 2 to the
degree in its color.  Three independent routes compute A(n):

  * weighted_count_series: Gaussian-moment extraction from V(x)^n,
  * weighted_count_partitions: a sum over vertex-type multiplicities,
  * weighted_count_brute_force: explicit set partitions of labeled
    half-edges (capped), optionally with exhaustively enumerated
    perfect matchings instead of the double-factorial count.

All three return identical Fractions; the tests enforce exact equality.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Sequence

from .errors import CapExceededError
from .polynomials import (Exponents, Polynomial, WeightSpec, compositions,
                          incidence_polynomial, multi_factorial)


def double_factorial(value: int) -> int:
    """(value)!! with the conventions (-1)!! = 0!! = 1.

    For even arguments 2s this counts nothing useful here; the counting
    formulas only use odd arguments 2s - 1, the number of perfect
    matchings of 2s points.
    """
    if value < -1:
        raise ValueError("double factorial defined for arguments >= -1 only")
    out = 1
    while value > 1:
        out *= value
        value -= 2
    return out


def weighted_count_series(n: int, spec: WeightSpec) -> Fraction:
    """A(n) via moments: sum_s prod_i (2 s_i - 1)!! [x^(2s)] V(x)^n / n!."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    if n == 0:
        return Fraction(1)
    if (n * spec.degree) % 2:
        return Fraction(0)
    power = incidence_polynomial(spec) ** n
    total = Fraction(0)
    for exps, coeff in power.terms.items():
        if all(e % 2 == 0 for e in exps):
            factor = 1
            for e in exps:
                factor *= double_factorial(e - 1)
            total += coeff * factor
    return total / math.factorial(n)


def weighted_count_partitions(n: int, spec: WeightSpec) -> Fraction:
    """A(n) via vertex-type multiplicities.

    Sums over functions t assigning to each weighted vertex type w a
    multiplicity t_w with sum_w t_w = n the product

        prod_w weight(w)^t_w / (t_w! * (w!)^t_w) * prod_i (d_i - 1)!!

    where d = sum_w t_w * w is the half-edge count per color, and the
    double factorials require every d_i to be even.
    """
    if n < 0:
        raise ValueError("n must be nonnegative")
    if n == 0:
        return Fraction(1)
    support = spec.support()
    totals = [Fraction(0)]

    def descend(idx: int, remaining: int, degrees: tuple[int, ...], factor: Fraction) -> None:
        if idx == len(support):
            if remaining == 0 and all(d % 2 == 0 for d in degrees):
                matchings = 1
                for d in degrees:
                    matchings *= double_factorial(d - 1)
                totals[0] += factor * matchings
            return
        w = support[idx]
        wfact = multi_factorial(w)
        value = spec.weights[w]
        contrib = Fraction(1)
        for t in range(remaining + 1):
            if t:
                contrib = contrib * value / (t * wfact)
                degrees = tuple(d + e for d, e in zip(degrees, w))
            descend(idx + 1, remaining - t, degrees, factor * contrib)

    descend(0, n, (0,) * spec.colors, Fraction(1))
    return totals[0]


def _enumerate_matchings(points: Sequence[int]) -> list[list[tuple[int, int]]]:
    """All perfect matchings of an even point set, by explicit recursion."""
    if not points:
        return [[]]
    first, rest = points[0], list(points[1:])
    out = []
    for i, partner in enumerate(rest):
        for sub in _enumerate_matchings(rest[:i] + rest[i + 1:]):
            out.append([(first, partner)] + sub)
    return out


def _partition_weights(color_of: Sequence[int], block_size: int, block_count: int,
                       weights: Mapping[Exponents, Fraction], colors: int) -> Fraction:
    """Sum of prod_blocks weight(multidegree) over set partitions.

    Partitions of range(len(color_of)) into exactly `block_count` blocks
    of exactly `block_size` elements, in restricted-growth order; blocks
    whose multidegree falls outside the weight support are pruned as
    soon as they fill up.
    """
    total_points = len(color_of)
    sizes = [0] * block_count
    degrees = [[0] * colors for _ in range(block_count)]
    totals = [Fraction(0)]

    def descend(point: int, used: int, factor: Fraction) -> None:
        if point == total_points:
            if used == block_count:
                totals[0] += factor
            return
        color = color_of[point]
        limit = min(used + 1, block_count)
        for b in range(limit):
            if sizes[b] == block_size:
                continue
            sizes[b] += 1
            degrees[b][color] += 1
            next_used = used + 1 if b == used else used
            if sizes[b] == block_size:
                w = weights.get(tuple(degrees[b]), Fraction(0))
                if w != 0:
                    descend(point + 1, next_used, factor * w)
            else:
                descend(point + 1, next_used, factor)
            sizes[b] -= 1
            degrees[b][color] -= 1

    descend(0, 0, Fraction(1))
    return totals[0]


def weighted_count_brute_force(n: int, spec: WeightSpec, half_edge_cap: int = 8,
                               exhaustive_matchings: bool = False) -> Fraction:
    """A(n) from labeled half-edges: partitions into vertices times matchings.

    For each split s of the m = n*k/2 edges over colors, lay out 2*s_i
    labeled half-edges of color i, sum vertex weights over set partitions
    into n blocks of size k, multiply by the number of per-color perfect
    matchings, and divide by prod_i (2 s_i)! label orders.

    With exhaustive_matchings the matching count is obtained by listing
    the matchings one by one (a slower, formula-free fourth route,
    capped at n*k <= 6).
    """
    if n < 0:
        raise ValueError("n must be nonnegative")
    total_half_edges = n * spec.degree
    cap = 6 if exhaustive_matchings else half_edge_cap
    if total_half_edges > cap:
        raise CapExceededError(
            f"brute force needs {total_half_edges} half-edges, cap is {cap}")
    if n == 0:
        return Fraction(1)
    if total_half_edges % 2:
        return Fraction(0)
    m = total_half_edges // 2
    total = Fraction(0)
    for split in compositions(m, spec.colors):
        color_of = []
        for color, s in enumerate(split):
            color_of.extend([color] * (2 * s))
        weight_sum = _partition_weights(color_of, spec.degree, n,
                                        spec.weights, spec.colors)
        if weight_sum == 0:
            continue
        matchings = 1
        label_orders = 1
        for s in split:
            if exhaustive_matchings:
                matchings *= len(_enumerate_matchings(list(range(2 * s))))
            else:
                matchings *= double_factorial(2 * s - 1)
            label_orders *= math.factorial(2 * s)
        total += weight_sum * matchings / label_orders
    return total


def exp_series_coefficient(weights: Mapping[Exponents, Fraction],
                           target: Exponents) -> Fraction:
    """[x^target] exp(sum_w lambda_w x^w / w!) for a finite weight map."""
    target = tuple(int(e) for e in target)
    support = sorted(w for w, v in weights.items() if v != 0
                     and len(w) == len(target) and all(a <= b for a, b in zip(w, target)))
    totals = [Fraction(0)]

    def descend(idx: int, remaining: tuple[int, ...], factor: Fraction) -> None:
        if not any(remaining):
            totals[0] += factor
            return
        if idx == len(support):
            return
        w = support[idx]
        value = Fraction(weights[w])
        wfact = multi_factorial(w)
        contrib = Fraction(1)
        t = 0
        while True:
            descend(idx + 1, remaining, factor * contrib)
            if not all(a <= b for a, b in zip(w, remaining)):
                break
            t += 1
            contrib = contrib * value / (t * wfact)
            remaining = tuple(b - a for a, b in zip(w, remaining))

    descend(0, target, Fraction(1))
    return totals[0]


@dataclass(frozen=True)
class SingleEdgeReport:
    """Per-color comparison for the one-edge sanity identity."""

    color: int
    coefficient: Fraction
    expected: Fraction

    @property
    def matches(self) -> bool:
        return self.coefficient == self.expected


def single_edge_identity(weights: Mapping[Exponents, Fraction]) -> list[SingleEdgeReport]:
    """Check [x_i^2] exp(sum lambda_w x^w / w!) against lambda_{e_i}^2/2 + lambda_{2e_i}/2.

    `weights` maps multi-indices over three colors with total degree 1
    or 2 to rational values; indices not present count as zero.  Returns
    one report per color; the identity says the single-edge coefficient
    splits into a two-single-vertices part and a one-double-vertex part.
    """
    colors = 3
    for w in weights:
        if len(w) != colors:
            raise ValueError(f"multi-index {w} does not have {colors} entries")
        if not 1 <= sum(w) <= 2:
            raise ValueError(f"multi-index {w} must have total degree 1 or 2")
    reports = []
    for i in range(colors):
        unit = tuple(1 if j == i else 0 for j in range(colors))
        double = tuple(2 if j == i else 0 for j in range(colors))
        coefficient = exp_series_coefficient(weights, double)
        lam1 = Fraction(weights.get(unit, 0))
        lam2 = Fraction(weights.get(double, 0))
        expected = lam1 * lam1 / 2 + lam2 / 2
        reports.append(SingleEdgeReport(i, coefficient, expected))
    return reports


@dataclass
class CountTable:
    """Accumulates exact counts per n with a note on how each was computed."""

    colors: int
    degree: int
    values: dict[int, Fraction] = field(default_factory=dict)
    methods: dict[int, str] = field(default_factory=dict)

    def record(self, n: int, value: Fraction, method: str) -> None:
        if n in self.values and self.values[n] != value:
            raise ValueError(
                f"conflicting values for n={n}: {self.values[n]} vs {value} ({method})")
        self.values[n] = value
        self.methods.setdefault(n, method)

    def rows(self) -> list[tuple[int, Fraction, str]]:
        return [(n, self.values[n], self.methods[n]) for n in sorted(self.values)]


def count_table(spec: WeightSpec, ns: Sequence[int], method: str = "series",
                half_edge_cap: int = 8) -> CountTable:
    """Fill a CountTable for the given n values using one or all routes."""
    allowed = {"series", "partitions", "brute-force", "all"}
    if method not in allowed:
        raise ValueError(f"method must be one of {sorted(allowed)}")
    table = CountTable(spec.colors, spec.degree)
    for n in ns:
        if method in ("series", "all"):
            table.record(n, weighted_count_series(n, spec), "series")
        if method in ("partitions", "all"):
            table.record(n, weighted_count_partitions(n, spec), "partitions")
        if method in ("brute-force", "all"):
            table.record(n, weighted_count_brute_force(n, spec, half_edge_cap),
                         "brute-force")
    return table
