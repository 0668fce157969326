"""Proper edge-coloring counts of regular multigraphs and their asymptotics.

Setting every vertex weight to 1 exactly on the 0/1 multi-indices turns
the weighted count A(n) into P(n), the number of k-regular multigraphs
on n vertices counted with 1/|Aut| and weighted by their proper
c-edge-colorings.  This module adds

  * the exact count (delegating to the series oracle),
  * closed-form asymptotics with explicit constants for c = k and c > k,
  * analytically known critical data for V = e_k (used as ground truth
    against the numerical pipeline),
  * an independent matrix-tuple oracle: n! P(n) equals the number of
    c-tuples of symmetric {0,1} matrices with zero diagonal, per-color
    row sums at most 1, and total row sums k,
  * the expected number of proper colorings of a uniform k-regular
    vertex-labeled multigraph: n! P(n) over the asymptotic count of
    such multigraphs, with its own closed form.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

import mpmath

from . import asymptotics
from .asymptotics import (EstimateRequest, LogValue,
                          estimate_from_critical_points, fraction_log_abs,
                          log_gamma)
from .counting import weighted_count_series
from .critical import CriticalPoint, SphereMaximizer, radial_scales
from .errors import CapExceededError
from .polynomials import WeightSpec

COLORING_MODES = ("exact", "closed_form", "via_critical_points", "brute_force")


@dataclass(frozen=True)
class ColoringRequest:
    """A proper-coloring query: n vertices, degree k, c colors, and a route."""

    n: int
    degree: int
    colors: int
    mode: str = "exact"

    def __post_init__(self):
        if self.mode not in COLORING_MODES:
            raise ValueError(f"mode must be one of {COLORING_MODES}")
        if self.n < 0:
            raise ValueError("n must be nonnegative")
        if self.degree < 3:
            raise ValueError("degree must be at least 3")
        if self.colors < 1:
            raise ValueError("colors must be at least 1")


def coloring_weight_spec(degree: int, colors: int) -> WeightSpec:
    """Weights inducing V = e_degree: 1 on 0/1 multi-indices, 0 elsewhere."""
    return WeightSpec.proper_coloring(colors, degree)


@lru_cache(maxsize=None)
def exact_coloring_count(n: int, degree: int, colors: int) -> Fraction:
    """P(n) exactly; 0 when degree > colors since no proper coloring exists."""
    if degree > colors:
        return Fraction(0)
    return weighted_count_series(n, coloring_weight_spec(degree, colors))


def _euler_index(n: int, degree: int) -> Fraction:
    return Fraction(n * (degree - 2), 2)


def closed_form_coloring_count(n: int, degree: int, colors: int) -> LogValue:
    """Leading asymptotics of P(n) with explicit constants.

    c = k, n even:  (l-1)! 2^(k/2) / (2 pi) * (2/(k-2))^(l - 1/2)
    c > k:          (l-1)! sqrt(k-2) / (2 pi) * ((k-1)/(c-1) + 1)^((1-c)/2)
                    * (k binom(c,k))^n c^(-nk/2) * (2k/(k-2))^l
    and exact zero in every parity-excluded case (l not a positive
    integer, c < k, or c = k with n odd).
    """
    k, c = degree, colors
    euler = _euler_index(n, k)
    if euler.denominator != 1 or euler < 1:
        return LogValue.zero("Euler index not a positive integer")
    if c < k:
        return LogValue.zero("fewer colors than the degree")
    level = int(euler)
    with mpmath.workprec(asymptotics.PRECISION_BITS):
        log2 = mpmath.log(2)
        if c == k:
            if n % 2:
                return LogValue.zero("parity cancellation at c = k, odd n")
            log_abs = log_gamma(level) + mpmath.mpf(k) / 2 * log2 \
                - mpmath.log(2 * mpmath.pi) \
                + mpmath.mpf(2 * level - 1) / 2 * (log2 - mpmath.log(k - 2))
            return LogValue(log_abs, 1.0)
        m = n * k // 2
        base = Fraction(k + c - 2, c - 1)
        log_abs = log_gamma(level) + mpmath.log(k - 2) / 2 \
            - mpmath.log(2 * mpmath.pi) \
            + mpmath.mpf(1 - c) / 2 * fraction_log_abs(base) \
            + n * fraction_log_abs(Fraction(k * math.comb(c, k))) \
            - m * mpmath.log(c) \
            + level * (mpmath.log(2 * k) - mpmath.log(k - 2))
    return LogValue(log_abs, 1.0)


@dataclass(frozen=True)
class AnalyticCriticalData:
    """Closed-form spherical maxima and critical points for V = e_k."""

    degree: int
    colors: int
    maxima: tuple[SphereMaximizer, ...]
    points: tuple[CriticalPoint, ...]
    sphere_determinants: tuple[float, ...]


def coloring_critical_data(degree: int, colors: int) -> AnalyticCriticalData:
    """The analytically known critical data of V = e_k on c colors.

    Maximizers have all coordinates +-c^(-1/2); for c = k every sign
    pattern occurs (2^(k-1) antipodal representatives, value
    sigma * k^(-k/2) with sigma the sign product), for c > k only the
    all-positive direction (value binom(c,k) c^(-k/2)).  Radial scales
    solve tau^(2-k) = k V(x); the potential value is tau^2 (2-k)/(2k);
    Hessian determinants come from the closed forms
        c = k:  (-1)^(k-1) 2^(k-1) (k-2)
        c > k:  (-1)^(c-1) (t+1)^(c-1) (t(c-1) - 1),  t = (k-1)/(c-1)
    with the spherical determinant k^(c-1)/(k-2) times the full one.
    """
    k, c = degree, colors
    if k < 3:
        raise ValueError("degree must be at least 3")
    if k > c:
        raise ValueError("analytic critical data needs degree <= colors")
    inv_sqrt = c ** (-0.5)
    reps: list[tuple[float, ...]] = []
    if c == k:
        for bits in range(2 ** (k - 1)):
            signs = [1.0] + [1.0 if (bits >> i) & 1 == 0 else -1.0 for i in range(k - 1)]
            reps.append(tuple(s * inv_sqrt for s in signs))
        det_g = Fraction((-1) ** (k - 1) * 2 ** (k - 1) * (k - 2))
    else:
        reps.append((inv_sqrt,) * c)
        slope = Fraction(k - 1, c - 1)
        det_g = Fraction((-1) ** (c - 1)) * (slope + 1) ** (c - 1) * (slope * (c - 1) - 1)
    det_sphere = float(Fraction(k ** (c - 1), k - 2) * det_g)
    count = math.comb(c, k)
    maxima = []
    for x in reps:
        sign = 1.0
        for component in x:
            sign *= 1.0 if component > 0 else -1.0
        value = (sign if c == k else float(count)) * c ** (-k / 2.0)
        maxima.append(SphereMaximizer(x=x, value=value, grad_norm=0.0))
    maxima.sort(key=lambda mx: (-mx.value, tuple(-v for v in mx.x)))
    points = []
    for maximizer in maxima:
        for tau in radial_scales(maximizer.value, k):
            z = tuple(tau * component for component in maximizer.x)
            g_value = tau * tau * (2 - k) / (2 * k)
            points.append(CriticalPoint(
                direction=maximizer.x, scale=tau, z=z, potential_value=g_value,
                potential_hessian_det=complex(float(det_g)),
                sphere_hessian_det=det_sphere, nondegenerate=True))
    return AnalyticCriticalData(degree=k, colors=c, maxima=tuple(maxima),
                                points=tuple(points),
                                sphere_determinants=tuple([det_sphere] * len(maxima)))


def estimate_coloring_count(n: int, degree: int, colors: int) -> LogValue:
    """P(n) estimated through the critical-point route with analytic data."""
    data = coloring_critical_data(degree, colors)
    request = EstimateRequest(n=n, degree=degree, colors=colors)
    return estimate_from_critical_points(request, data.points)


def count_matrix_tuples(n: int, degree: int, colors: int, cap: int = 24) -> int:
    """The number of color-split adjacency tuples: equals n! * P(n).

    Counts c-tuples of symmetric {0,1} n x n matrices with zero diagonal
    such that each color's row sums are at most 1 and the entrywise sum
    has all row sums equal to k.  Enumerates the c * C(n,2) free upper
    triangle bits with row-sum pruning; `cap` bounds that cell count.
    """
    k, c = degree, colors
    if n < 0:
        raise ValueError("n must be nonnegative")
    if n == 0:
        return 1
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    cells = [(pair, color) for pair in pairs for color in range(c)]
    if len(cells) > cap:
        raise CapExceededError(
            f"matrix tuple enumeration needs {len(cells)} cells, cap is {cap}")
    if not cells:
        return 0
    color_used = [[False] * c for _ in range(n)]
    total_deg = [0] * n
    last_cell_of = [max(idx for idx, ((i, j), _) in enumerate(cells) if i == v or j == v)
                    for v in range(n)] if cells else []
    counts = [0]

    def descend(idx: int) -> None:
        if idx == len(cells):
            counts[0] += 1
            return
        (i, j), color = cells[idx]
        descend_with_zero = True
        if not color_used[i][color] and not color_used[j][color] \
                and total_deg[i] < k and total_deg[j] < k:
            color_used[i][color] = color_used[j][color] = True
            total_deg[i] += 1
            total_deg[j] += 1
            if (last_cell_of[i] != idx or total_deg[i] == k) \
                    and (last_cell_of[j] != idx or total_deg[j] == k):
                descend(idx + 1)
            color_used[i][color] = color_used[j][color] = False
            total_deg[i] -= 1
            total_deg[j] -= 1
        if (last_cell_of[i] == idx and total_deg[i] != k) \
                or (last_cell_of[j] == idx and total_deg[j] != k):
            descend_with_zero = False
        if descend_with_zero:
            descend(idx + 1)

    descend(0)
    return counts[0]


def regular_graph_count(n: int, degree: int) -> LogValue:
    """Asymptotic number of k-regular vertex-labeled loopless multigraphs.

    (k n / e)^(k n / 2) sqrt(2) exp((k^2 - 4k + 3)/4) / (k!)^n, in log
    domain; exact zero when n k is odd.
    """
    k = degree
    if k < 3:
        raise ValueError("degree must be at least 3")
    if (n * k) % 2:
        return LogValue.zero("odd half-edge total")
    if n == 0:
        return LogValue.from_float(1.0)
    with mpmath.workprec(asymptotics.PRECISION_BITS):
        half_edges = Fraction(n * k, 2)
        log_abs = int(half_edges) * (mpmath.log(k * n) - 1) \
            + mpmath.log(2) / 2 + mpmath.mpf(k * k - 4 * k + 3) / 4 \
            - n * fraction_log_abs(Fraction(math.factorial(k)))
    return LogValue(log_abs, 1.0)


def closed_form_expected(n: int, degree: int, colors: int) -> LogValue:
    """Closed-form expected number of proper c-edge-colorings.

    c = k, n even:  2^((k-1)/2) (k! / k^(k/2))^n exp(-(k^2-4k+3)/4)
    c > k:          ((k-1)/(c-1) + 1)^((1-c)/2) (k! binom(c,k))^n
                    c^(-nk/2) exp(-(k^2-4k+3)/4)
    and exact zero in the parity-excluded cases.
    """
    k, c = degree, colors
    euler = _euler_index(n, k)
    if euler.denominator != 1 or euler < 1:
        return LogValue.zero("Euler index not a positive integer")
    if c < k:
        return LogValue.zero("fewer colors than the degree")
    with mpmath.workprec(asymptotics.PRECISION_BITS):
        drift = -mpmath.mpf(k * k - 4 * k + 3) / 4
        if c == k:
            if n % 2:
                return LogValue.zero("parity cancellation at c = k, odd n")
            log_abs = mpmath.mpf(k - 1) / 2 * mpmath.log(2) \
                + n * (fraction_log_abs(Fraction(math.factorial(k)))
                       - mpmath.mpf(k) / 2 * mpmath.log(k)) + drift
            return LogValue(log_abs, 1.0)
        m = n * k // 2
        base = Fraction(k + c - 2, c - 1)
        log_abs = mpmath.mpf(1 - c) / 2 * fraction_log_abs(base) \
            + n * fraction_log_abs(Fraction(math.factorial(k) * math.comb(c, k))) \
            - m * mpmath.log(c) + drift
    return LogValue(log_abs, 1.0)


def empirical_expected(n: int, degree: int, colors: int) -> LogValue:
    """n! P(n) divided by the asymptotic regular-multigraph count."""
    count = exact_coloring_count(n, degree, colors)
    if count == 0:
        return LogValue.zero("vanishing exact count")
    graphs = regular_graph_count(n, degree)
    factorial = LogValue(log_gamma(n + 1), 1.0)
    return factorial * LogValue.from_fraction(count) / graphs


@dataclass(frozen=True)
class ExpectedRow:
    """One line comparing empirical against closed-form expected colorings."""

    n: int
    euler_index: float
    empirical: LogValue
    closed_form: LogValue
    ratio: float
    deviation: float


def expected_table(degree: int, colors: int, ns: Sequence[int]) -> list[ExpectedRow]:
    """Empirical-versus-closed-form comparison rows over a range of n."""
    rows = []
    for n in ns:
        empirical = empirical_expected(n, degree, colors)
        closed = closed_form_expected(n, degree, colors)
        ratio = empirical.ratio(closed)
        deviation = abs(ratio - 1.0) if math.isfinite(ratio) else float("inf")
        rows.append(ExpectedRow(n=n, euler_index=float(_euler_index(n, degree)),
                                empirical=empirical, closed_form=closed,
                                ratio=ratio, deviation=deviation))
    return rows
