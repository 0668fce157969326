"""Saddle-point estimates for the weighted counts, in log-magnitude form.

The counts grow superexponentially, so every estimate is carried as a
LogValue: a high-precision log of the absolute value (mpmath, 113-bit
mantissa) plus a unit phase, with an exact-zero state for parity
cancellations.  Two independent estimators are provided:

  * estimate_from_critical_points: sums (-g(z))^(-l) / sqrt(+-det Hess g)
    over the dominant complex critical points of the potential,
  * estimate_from_sphere_maxima: an equivalent form with an explicit
    gamma-factor prefactor summing over spherical maxima of |V| only.

A third, slowly converging route integrates |V|^n over the sphere by
quadrature and is used as an independent consistency check at small n.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import mpmath
import numpy as np
import scipy.integrate

from .counting import weighted_count_series
from .critical import (CriticalPoint, SphereMaximizer, critical_points,
                       find_sphere_maxima, sphere_hessian_det)
from .errors import DegenerateCriticalPointError, NonConvergenceError
from .polynomials import Polynomial, WeightSpec, incidence_polynomial

PRECISION_BITS = 113
REALNESS_TOL = 1e-8
CANCELLATION_TOL = 1e-10


def set_working_precision(bits: int) -> int:
    """Set the log-domain working precision in bits; returns the old value.

    Values below 53 would lose accuracy against the 64-bit float columns
    emitted downstream and are rejected.
    """
    global PRECISION_BITS
    if bits < 53:
        raise ValueError("working precision below 53 bits")
    previous = PRECISION_BITS
    PRECISION_BITS = bits
    return previous


def _mpf_log(value) -> mpmath.mpf:
    with mpmath.workprec(PRECISION_BITS):
        return mpmath.log(mpmath.mpmathify(value))


def log_gamma(argument) -> mpmath.mpf:
    """log Gamma at 113-bit precision, for real positive arguments."""
    with mpmath.workprec(PRECISION_BITS):
        return mpmath.loggamma(mpmath.mpmathify(argument))


def fraction_log_abs(value: Fraction) -> mpmath.mpf:
    """log |p/q| without overflow, exact integer inputs to mpmath."""
    if value == 0:
        raise ValueError("log of zero")
    with mpmath.workprec(PRECISION_BITS):
        return mpmath.log(abs(mpmath.mpf(value.numerator))) - mpmath.log(mpmath.mpf(value.denominator))


@dataclass(frozen=True)
class LogValue:
    """A real or complex magnitude stored as (log of absolute value, phase).

    `log_abs` is an mpmath mpf carrying at least 113 mantissa bits;
    `phase` is a unit-modulus complex (or +-1.0 for reals), and 0 for an
    exact zero.  `note` records why a value collapsed to zero.
    """

    log_abs: object
    phase: complex
    note: str = ""

    @classmethod
    def zero(cls, note: str = "") -> "LogValue":
        return cls(mpmath.mpf("-inf"), 0.0, note)

    @classmethod
    def from_float(cls, value: float) -> "LogValue":
        if value == 0.0:
            return cls.zero()
        return cls(_mpf_log(abs(value)), 1.0 if value > 0 else -1.0)

    @classmethod
    def from_fraction(cls, value: Fraction) -> "LogValue":
        if value == 0:
            return cls.zero()
        return cls(fraction_log_abs(value), 1.0 if value > 0 else -1.0)

    @classmethod
    def from_log(cls, log_abs, phase: complex = 1.0) -> "LogValue":
        return cls(mpmath.mpf(log_abs), phase)

    @property
    def is_zero(self) -> bool:
        return self.phase == 0.0

    @property
    def sign(self) -> int:
        if self.is_zero:
            return 0
        real = complex(self.phase).real
        imag = complex(self.phase).imag
        if abs(imag) > 1e-9 or real == 0.0:
            raise ValueError(f"phase {self.phase} is not real")
        return 1 if real > 0 else -1

    def log10(self) -> float:
        """log10 of the absolute value; -inf for an exact zero."""
        if self.is_zero:
            return float("-inf")
        with mpmath.workprec(PRECISION_BITS):
            return float(self.log_abs / mpmath.log(10))

    def to_float(self) -> float:
        """Collapse to a float; overflows to +-inf for huge magnitudes."""
        if self.is_zero:
            return 0.0
        with mpmath.workprec(PRECISION_BITS):
            magnitude = mpmath.exp(self.log_abs)
            value = magnitude * self.sign
            return float(value)

    def __mul__(self, other: "LogValue") -> "LogValue":
        if self.is_zero or other.is_zero:
            return LogValue.zero(self.note or other.note)
        return LogValue(self.log_abs + other.log_abs, self.phase * other.phase)

    def __truediv__(self, other: "LogValue") -> "LogValue":
        if other.is_zero:
            raise ZeroDivisionError("division by an exact-zero LogValue")
        if self.is_zero:
            return LogValue.zero(self.note)
        return LogValue(self.log_abs - other.log_abs, self.phase / other.phase)

    def ratio(self, other: "LogValue") -> float:
        """Float value of self/other, with 0/0 = 1 by convention."""
        if self.is_zero and other.is_zero:
            return 1.0
        if other.is_zero:
            return float("inf")
        if self.is_zero:
            return 0.0
        with mpmath.workprec(PRECISION_BITS):
            magnitude = float(mpmath.exp(self.log_abs - other.log_abs))
        return magnitude * self.sign * other.sign


@dataclass(frozen=True)
class EstimateRequest:
    """Size parameters of an estimate: n vertices, degree k, c colors."""

    n: int
    degree: int
    colors: int

    def __post_init__(self):
        if self.n < 0:
            raise ValueError("n must be nonnegative")
        if self.degree < 3:
            raise ValueError("degree must be at least 3")
        if self.colors < 1:
            raise ValueError("colors must be at least 1")

    @property
    def edge_count(self) -> Fraction:
        return Fraction(self.n * self.degree, 2)

    @property
    def euler_index(self) -> Fraction:
        return Fraction(self.n * (self.degree - 2), 2)

    @property
    def is_integral(self) -> bool:
        return self.edge_count.denominator == 1


def estimate_from_critical_points(request: EstimateRequest,
                                  points: Sequence[CriticalPoint]) -> LogValue:
    """Leading-order estimate from the dominant complex critical points.

    Evaluates (l-1)!/(2 pi) * sum_z (-g(z))^(-l) / sqrt((-1)^(c-1) det
    Hess g(z)) with l the Euler index, using the principal square root
    per point.  Returns an exact zero with a note when the edge count is
    half-integral or the summands cancel; raises when a point is
    degenerate or the sum has a non-real residue.
    """
    if not request.is_integral:
        return LogValue.zero("half-integral edge count")
    euler = request.euler_index
    if euler < 1:
        raise ValueError("the Euler index n(k-2)/2 must be at least 1")
    if not points:
        raise ValueError("no critical points supplied")
    for point in points:
        if not point.nondegenerate:
            raise DegenerateCriticalPointError(
                f"degenerate Hessian at z={point.z} (|det|={abs(point.potential_hessian_det):.3e})")
    level = int(euler)
    sign_det = (-1) ** (request.colors - 1)
    logs = [_mpf_log(abs(-point.potential_value)) for point in points]
    reference = max(logs)
    summands = []
    for point, log_neg_g in zip(points, logs):
        theta = cmath.phase(-point.potential_value)
        with mpmath.workprec(PRECISION_BITS):
            scale = float(mpmath.exp(-level * (log_neg_g - reference)))
        determinant = sign_det * point.potential_hessian_det
        summands.append(scale * cmath.exp(-1j * level * theta) / cmath.sqrt(determinant))
    total = sum(summands)
    largest = max(abs(s) for s in summands)
    if abs(total) <= CANCELLATION_TOL * largest:
        return LogValue.zero("parity cancellation across critical points")
    if abs(total.imag) > REALNESS_TOL * abs(total.real) + 1e-300:
        raise NonConvergenceError(
            f"critical point sum has non-real residue {total!r}")
    with mpmath.workprec(PRECISION_BITS):
        log_abs = log_gamma(level) - mpmath.log(2 * mpmath.pi) \
            - level * reference + mpmath.log(abs(total.real))
    return LogValue(log_abs, 1.0 if total.real > 0 else -1.0)


def estimate_from_sphere_maxima(request: EstimateRequest,
                                maxima: Sequence[SphereMaximizer],
                                incidence: Polynomial | None = None,
                                sphere_determinants: Sequence[float] | None = None) -> LogValue:
    """Equivalent estimate from spherical maxima with a gamma-factor prefactor.

    Evaluates k^(m+(c-1)/2) ((k-2)/2)^(n-m) sqrt((k-2)/2) / (sqrt(8) pi)
    * Gamma(m-n) * sum_x V(x)^n / sqrt((-1)^(c-1) det Hess_S f(x)),
    summing over both members of each antipodal pair.  The spherical
    determinants come from `incidence` (via sphere_hessian_det) unless
    supplied directly; the signed factor (-1)^(c-1) det must be positive
    at every maximizer.
    """
    if not request.is_integral:
        return LogValue.zero("half-integral edge count")
    m = int(request.edge_count)
    n, k, c = request.n, request.degree, request.colors
    if m - n < 1:
        raise ValueError("the gamma factor needs m - n >= 1")
    if sphere_determinants is None:
        if incidence is None:
            raise ValueError("need either the incidence polynomial or precomputed determinants")
        sphere_determinants = [sphere_hessian_det(incidence, maximizer.x)
                               for maximizer in maxima]
    if not maxima or len(maxima) != len(sphere_determinants):
        raise ValueError("need one spherical determinant per maximizer")
    sign_det = (-1) ** (c - 1)
    signed = [sign_det * det for det in sphere_determinants]
    for det in signed:
        if det <= 0.0:
            raise DegenerateCriticalPointError(
                f"signed spherical determinant {det:.3e} is not positive")
    logs = [_mpf_log(abs(maximizer.value)) for maximizer in maxima]
    reference = max(logs)
    summands = []
    for maximizer, log_value, det in zip(maxima, logs, signed):
        with mpmath.workprec(PRECISION_BITS):
            scale = float(mpmath.exp(n * (log_value - reference)))
        orientation = 1.0 if maximizer.value > 0 else -1.0
        summands.append(2.0 * orientation**n * scale / math.sqrt(det))
    total = sum(summands)
    largest = max(abs(s) for s in summands)
    if abs(total) <= CANCELLATION_TOL * largest:
        return LogValue.zero("parity cancellation across spherical maxima")
    with mpmath.workprec(PRECISION_BITS):
        log_half = fraction_log_abs(Fraction(k - 2, 2))
        exponent = mpmath.mpf(2 * m + c - 1) / 2
        log_abs = exponent * mpmath.log(k) \
            + (n - m) * log_half + log_half / 2 \
            - mpmath.log(8) / 2 - mpmath.log(mpmath.pi) \
            + log_gamma(m - n) + n * reference + mpmath.log(abs(total))
    return LogValue(log_abs, 1.0 if total > 0 else -1.0)


@dataclass(frozen=True)
class QuadratureReport:
    """Exact count against the spherical-integral route at one n."""

    n: int
    colors: int
    exact: Fraction
    estimate: float
    relative_error: float
    nodes: int


def _sphere_integral(incidence: Polynomial, n: int) -> tuple[float, int]:
    """Integral of V^n over the unit sphere, surface measure, with node count."""
    c = incidence.nvars
    if c == 1:
        return float(incidence.evaluate((1.0,)))**n + float(incidence.evaluate((-1.0,)))**n, 2
    if c == 2:
        def integrand(angle: float) -> float:
            return float(incidence.evaluate((math.cos(angle), math.sin(angle))))**n

        value, error = scipy.integrate.quad(integrand, 0.0, 2.0 * math.pi,
                                            epsabs=1e-13, epsrel=1e-13, limit=500)
        if error > 1e-9 * max(1.0, abs(value)):
            raise NonConvergenceError(f"quadrature error estimate {error:.3e} too large")
        return value, 0
    if c == 3:
        previous = None
        for nodes in (8, 16, 32, 64, 128, 256):
            t, weights = np.polynomial.legendre.leggauss(nodes)
            theta = math.pi * (t + 1.0) / 2.0
            phi = 2.0 * math.pi * np.arange(2 * nodes) / (2 * nodes)
            sin_t, cos_t = np.sin(theta), np.cos(theta)
            total = 0.0
            for st, ct, w in zip(sin_t, cos_t, weights):
                x = st * np.cos(phi)
                y = st * np.sin(phi)
                row = np.zeros_like(phi)
                for exps, coeff in incidence.terms.items():
                    row += float(coeff) * x**exps[0] * y**exps[1] * ct**exps[2]
                total += w * st * float(np.sum(row**n))
            total *= (math.pi / 2.0) * (2.0 * math.pi / (2 * nodes))
            if previous is not None and abs(total - previous) <= 1e-9 * max(1.0, abs(total)):
                return total, nodes
            previous = total
        raise NonConvergenceError("spherical product quadrature did not stabilize")
    raise ValueError("quadrature supports 1, 2 or 3 colors only")


def sphere_integral_check(n: int, spec: WeightSpec) -> QuadratureReport:
    """Compare the exact count at n against the slowly-converging integral form.

    A(n) = 2^(m+(c-2)/2) Gamma(m + c/2) / ((2 pi)^(c/2) n!) * integral
    of V^n over the unit sphere.  Supported for c in {1, 2, 3}; the
    relative error is against the exact rational (absolute when it is 0).
    """
    if n < 0:
        raise ValueError("n must be non-negative")
    exact = weighted_count_series(n, spec)
    c = spec.colors
    m_twice = n * spec.degree
    incidence = incidence_polynomial(spec)
    if m_twice % 2:
        integral, nodes = 0.0, 0
        estimate = 0.0
    else:
        integral, nodes = _sphere_integral(incidence, n)
        m = m_twice // 2
        log_prefactor = (m + (c - 2) / 2.0) * math.log(2.0) \
            + float(log_gamma(m + c / 2.0)) \
            - (c / 2.0) * math.log(2.0 * math.pi) - float(log_gamma(n + 1))
        estimate = math.exp(log_prefactor) * integral
    if exact == 0:
        relative_error = abs(estimate)
    else:
        relative_error = abs(estimate / float(exact) - 1.0)
    return QuadratureReport(n=n, colors=c, exact=exact, estimate=estimate,
                            relative_error=relative_error, nodes=nodes)


@dataclass(frozen=True)
class ConvergenceRow:
    """One line of an exact-versus-estimate comparison table."""

    n: int
    euler_index: float
    exact_log10: float
    estimate_log10: float
    ratio: float
    deviation: float


def convergence_table(spec: WeightSpec, ns: Sequence[int],
                      restarts: int | None = None, seed: int = 42,
                      pipeline: Sequence[CriticalPoint] | None = None) -> list[ConvergenceRow]:
    """Exact counts against critical-point estimates over a range of n.

    The critical point pipeline runs once (or is supplied precomputed);
    each row reports log10 magnitudes, the exact/estimate ratio and
    |ratio - 1|.  Parity zeros on both sides give ratio 1 by convention.
    """
    if pipeline is None:
        incidence = incidence_polynomial(spec)
        pipeline = critical_points(incidence, restarts=restarts, seed=seed)
    rows = []
    for n in ns:
        request = EstimateRequest(n=n, degree=spec.degree, colors=spec.colors)
        exact = LogValue.from_fraction(weighted_count_series(n, spec))
        estimate = estimate_from_critical_points(request, pipeline)
        ratio = exact.ratio(estimate)
        deviation = abs(ratio - 1.0) if math.isfinite(ratio) else float("inf")
        rows.append(ConvergenceRow(
            n=n, euler_index=float(request.euler_index),
            exact_log10=exact.log10(), estimate_log10=estimate.log10(),
            ratio=ratio, deviation=deviation))
    return rows

