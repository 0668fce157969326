"""Exact sparse multivariate polynomials over the rationals.

Polynomials are stored as a mapping from exponent tuples to nonzero
Fraction coefficients.  All ring operations (add, mul, pow, formal
derivatives) stay exact; rounding happens only when a polynomial is
evaluated at a floating point or complex point.

The module also defines the weight systems used throughout the package:
a WeightSpec assigns a rational weight to every degree-k multi-index in
c colors, and induces the incidence polynomial

    V(x) = sum_w weight(w) * x^w / w!

together with the potential  g(x) = -sum_i x_i^2 / 2 + V(x).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from types import MappingProxyType
from typing import Iterable, Iterator, Mapping

import mpmath

Exponents = tuple[int, ...]


def compositions(total: int, parts: int) -> Iterator[Exponents]:
    """Yield all tuples of `parts` nonnegative integers summing to `total`.

    Order is lexicographic with the first coordinate varying slowest and
    descending, which is deterministic and stable across runs.
    """
    if parts < 0:
        raise ValueError("parts must be nonnegative")
    if parts == 0:
        if total == 0:
            yield ()
        return
    if parts == 1:
        yield (total,)
        return
    for first in range(total, -1, -1):
        for rest in compositions(total - first, parts - 1):
            yield (first,) + rest


def multi_factorial(exponents: Exponents) -> int:
    """Return w! = prod_i w_i! for a multi-index w."""
    out = 1
    for e in exponents:
        out *= math.factorial(e)
    return out


def _as_fraction(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    raise TypeError(f"expected an exact rational coefficient, got {type(value).__name__}")


def _raw_polynomial(nvars: int, terms: dict) -> "Polynomial":
    """Construct without re-validation; callers guarantee clean terms."""
    out = Polynomial.__new__(Polynomial)
    object.__setattr__(out, "nvars", nvars)
    object.__setattr__(out, "terms", MappingProxyType(terms))
    return out


class Polynomial:
    """Immutable sparse polynomial in `nvars` variables over Fraction."""

    __slots__ = ("nvars", "terms")

    def __init__(self, nvars: int, terms: Mapping[Exponents, Fraction] | None = None):
        if nvars < 0:
            raise ValueError("nvars must be nonnegative")
        clean: dict[Exponents, Fraction] = {}
        if terms:
            for exps, coeff in terms.items():
                exps = tuple(int(e) for e in exps)
                if len(exps) != nvars:
                    raise ValueError(f"exponent tuple {exps} does not have {nvars} entries")
                if any(e < 0 for e in exps):
                    raise ValueError(f"negative exponent in {exps}")
                coeff = _as_fraction(coeff)
                if coeff != 0:
                    clean[exps] = clean.get(exps, Fraction(0)) + coeff
                    if clean[exps] == 0:
                        del clean[exps]
        object.__setattr__(self, "nvars", nvars)
        object.__setattr__(self, "terms", MappingProxyType(clean))

    def __setattr__(self, name, value):
        raise AttributeError("Polynomial instances are immutable")

    # -- constructors ---------------------------------------------------

    @classmethod
    def zero(cls, nvars: int) -> "Polynomial":
        return cls(nvars, {})

    @classmethod
    def constant(cls, nvars: int, value) -> "Polynomial":
        return cls(nvars, {(0,) * nvars: _as_fraction(value)})

    @classmethod
    def variable(cls, nvars: int, index: int) -> "Polynomial":
        """Return the monomial x_index."""
        if not 0 <= index < nvars:
            raise ValueError(f"variable index {index} out of range for {nvars} variables")
        exps = tuple(1 if i == index else 0 for i in range(nvars))
        return cls(nvars, {exps: Fraction(1)})

    @classmethod
    def monomial(cls, exponents: Exponents, coefficient=1) -> "Polynomial":
        return cls(len(exponents), {tuple(exponents): _as_fraction(coefficient)})

    # -- ring operations ------------------------------------------------

    def _check_compatible(self, other: "Polynomial") -> None:
        if self.nvars != other.nvars:
            raise ValueError(f"variable count mismatch: {self.nvars} vs {other.nvars}")

    def __add__(self, other) -> "Polynomial":
        if isinstance(other, (int, Fraction)):
            other = Polynomial.constant(self.nvars, other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        self._check_compatible(other)
        terms = dict(self.terms)
        for exps, coeff in other.terms.items():
            acc = terms.get(exps, Fraction(0)) + coeff
            if acc == 0:
                terms.pop(exps, None)
            else:
                terms[exps] = acc
        return _raw_polynomial(self.nvars, terms)

    __radd__ = __add__

    def __neg__(self) -> "Polynomial":
        return _raw_polynomial(self.nvars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other) -> "Polynomial":
        if isinstance(other, (int, Fraction)):
            other = Polynomial.constant(self.nvars, other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> "Polynomial":
        return (-self) + other

    def __mul__(self, other) -> "Polynomial":
        if isinstance(other, (int, Fraction)):
            scalar = _as_fraction(other)
            if scalar == 0:
                return Polynomial.zero(self.nvars)
            return _raw_polynomial(self.nvars,
                                   {e: c * scalar for e, c in self.terms.items()})
        if not isinstance(other, Polynomial):
            return NotImplemented
        self._check_compatible(other)
        terms: dict[Exponents, Fraction] = {}
        for ea, ca in self.terms.items():
            for eb, cb in other.terms.items():
                key = tuple(a + b for a, b in zip(ea, eb))
                acc = terms.get(key, Fraction(0)) + ca * cb
                if acc == 0:
                    terms.pop(key, None)
                else:
                    terms[key] = acc
        return _raw_polynomial(self.nvars, terms)

    __rmul__ = __mul__

    def __pow__(self, exponent: int) -> "Polynomial":
        if not isinstance(exponent, int):
            raise TypeError("polynomial powers must be integers")
        if exponent < 0:
            raise ValueError("negative polynomial powers are not defined")
        result = Polynomial.constant(self.nvars, 1)
        base = self
        e = exponent
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = Polynomial.constant(self.nvars, other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.nvars == other.nvars and self.terms == other.terms

    def __hash__(self) -> int:
        return hash((self.nvars, frozenset(self.terms.items())))

    def __bool__(self) -> bool:
        return bool(self.terms)

    # -- queries --------------------------------------------------------

    def coefficient(self, exponents: Exponents) -> Fraction:
        exponents = tuple(exponents)
        if len(exponents) != self.nvars:
            raise ValueError(f"exponent tuple {exponents} does not have {self.nvars} entries")
        return self.terms.get(exponents, Fraction(0))

    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        if not self.terms:
            return -1
        return max(sum(e) for e in self.terms)

    def homogeneous_degree(self) -> int | None:
        """The common total degree of all terms, or None if mixed or zero."""
        degrees = {sum(e) for e in self.terms}
        if len(degrees) == 1:
            return degrees.pop()
        return None

    def is_homogeneous(self, degree: int | None = None) -> bool:
        d = self.homogeneous_degree()
        if not self.terms:
            return True
        if d is None:
            return False
        return degree is None or d == degree

    def sorted_terms(self) -> list[tuple[Exponents, Fraction]]:
        """Terms in graded lexicographic order (degree, then exponents)."""
        return sorted(self.terms.items(), key=lambda item: (sum(item[0]), item[0]))

    # -- calculus -------------------------------------------------------

    def derivative(self, index: int) -> "Polynomial":
        if not 0 <= index < self.nvars:
            raise ValueError(f"variable index {index} out of range")
        terms: dict[Exponents, Fraction] = {}
        for exps, coeff in self.terms.items():
            e = exps[index]
            if e == 0:
                continue
            key = exps[:index] + (e - 1,) + exps[index + 1:]
            acc = terms.get(key, Fraction(0)) + coeff * e
            if acc == 0:
                terms.pop(key, None)
            else:
                terms[key] = acc
        return _raw_polynomial(self.nvars, terms)

    def gradient(self) -> list["Polynomial"]:
        return [self.derivative(i) for i in range(self.nvars)]

    def hessian(self) -> list[list["Polynomial"]]:
        grad = self.gradient()
        return [[grad[i].derivative(j) for j in range(self.nvars)] for i in range(self.nvars)]

    # -- evaluation -----------------------------------------------------

    def evaluate(self, point: Iterable):
        """Evaluate at a point.

        Integer/Fraction input stays exact and returns a Fraction; any
        float or complex coordinate switches to floating arithmetic with
        coefficients rounded at this call only.
        """
        point = tuple(point)
        if len(point) != self.nvars:
            raise ValueError(f"point has {len(point)} coordinates, expected {self.nvars}")
        exact = all(isinstance(v, (int, Fraction)) for v in point)
        total = Fraction(0) if exact else 0.0
        for exps, coeff in self.terms.items():
            term = coeff if exact else float(coeff)
            for value, e in zip(point, exps):
                if e:
                    term = term * value**e
            total = total + term
        return total

    def evaluate_mp(self, point: Iterable, prec: int = 113):
        """Evaluate with mpmath reals/complexes at `prec` bits of precision."""
        point = tuple(point)
        if len(point) != self.nvars:
            raise ValueError(f"point has {len(point)} coordinates, expected {self.nvars}")
        with mpmath.workprec(prec):
            coords = [mpmath.mpmathify(v) for v in point]
            total = mpmath.mpf(0)
            for exps, coeff in self.terms.items():
                term = mpmath.mpf(coeff.numerator) / coeff.denominator
                for value, e in zip(coords, exps):
                    if e:
                        term = term * value**e
                total = total + term
            return total

    # -- display --------------------------------------------------------

    def __repr__(self) -> str:
        if not self.terms:
            return "Polynomial(0)"
        pieces = []
        for exps, coeff in self.sorted_terms():
            factors = [str(coeff)] if coeff != 1 or not any(exps) else []
            for i, e in enumerate(exps):
                if e == 1:
                    factors.append(f"x{i}")
                elif e > 1:
                    factors.append(f"x{i}^{e}")
            pieces.append("*".join(factors))
        return "Polynomial(" + " + ".join(pieces) + ")"


@dataclass(frozen=True)
class WeightSpec:
    """Rational weights on degree-k multi-indices in c colors.

    `weights` maps exponent tuples of length `colors` with entries summing
    to `degree` to nonzero Fractions.  Multi-indices absent from the map
    carry weight zero.
    """

    colors: int
    degree: int
    weights: Mapping[Exponents, Fraction] = field(default_factory=dict)

    def __post_init__(self):
        if self.colors < 1:
            raise ValueError("colors must be at least 1")
        if self.degree < 3:
            raise ValueError("degree must be at least 3")
        clean: dict[Exponents, Fraction] = {}
        for exps, value in self.weights.items():
            exps = tuple(int(e) for e in exps)
            if len(exps) != self.colors:
                raise ValueError(f"multi-index {exps} does not have {self.colors} entries")
            if any(e < 0 for e in exps):
                raise ValueError(f"negative entry in multi-index {exps}")
            if sum(exps) != self.degree:
                raise ValueError(f"multi-index {exps} does not have degree {self.degree}")
            value = _as_fraction(value)
            if value != 0:
                clean[exps] = value
        object.__setattr__(self, "weights", clean)

    @classmethod
    def single_color(cls, degree: int, value=1) -> "WeightSpec":
        """One color, all vertices of one degree with a common weight."""
        return cls(1, degree, {(degree,): _as_fraction(value)})

    @classmethod
    def proper_coloring(cls, colors: int, degree: int) -> "WeightSpec":
        """Weight 1 on all 0/1 multi-indices: vertices see distinct colors.

        Requires degree <= colors, otherwise no 0/1 multi-index of the
        right degree exists.
        """
        if degree > colors:
            raise ValueError("proper coloring weights need degree <= colors")
        weights = {w: Fraction(1) for w in compositions(degree, colors) if max(w) <= 1}
        return cls(colors, degree, weights)

    def support(self) -> list[Exponents]:
        return sorted(self.weights)

    def scaled(self, factor) -> "WeightSpec":
        factor = _as_fraction(factor)
        return WeightSpec(self.colors, self.degree,
                          {w: factor * v for w, v in self.weights.items()})

    def permuted(self, perm: Iterable[int]) -> "WeightSpec":
        """Relabel colors: new weight at w is the old weight at w o perm."""
        perm = tuple(perm)
        if sorted(perm) != list(range(self.colors)):
            raise ValueError(f"{perm} is not a permutation of 0..{self.colors - 1}")
        moved = {tuple(w[perm[i]] for i in range(self.colors)): v
                 for w, v in self.weights.items()}
        return WeightSpec(self.colors, self.degree, moved)


def incidence_polynomial(spec: WeightSpec) -> Polynomial:
    """V(x) = sum_w weight(w) * x^w / w!  (homogeneous of the spec degree)."""
    terms = {w: v / multi_factorial(w) for w, v in spec.weights.items()}
    return Polynomial(spec.colors, terms)


def potential_polynomial(source: WeightSpec | Polynomial) -> Polynomial:
    """g(x) = -sum_i x_i^2 / 2 + V(x), with V from a WeightSpec or given directly."""
    if isinstance(source, WeightSpec):
        incidence = incidence_polynomial(source)
    elif isinstance(source, Polynomial):
        incidence = source
    else:
        raise TypeError("expected a WeightSpec or a Polynomial")
    quad = {}
    for i in range(incidence.nvars):
        exps = tuple(2 if j == i else 0 for j in range(incidence.nvars))
        quad[exps] = Fraction(-1, 2)
    return Polynomial(incidence.nvars, quad) + incidence


def elementary_symmetric(nvars: int, degree: int) -> Polynomial:
    """The elementary symmetric polynomial e_degree in nvars variables."""
    if not 0 <= degree <= nvars:
        raise ValueError("elementary symmetric degree must lie in 0..nvars")
    terms = {w: Fraction(1) for w in compositions(degree, nvars) if max(w, default=0) <= 1}
    return Polynomial(nvars, terms)
