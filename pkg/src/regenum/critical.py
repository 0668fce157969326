"""Critical points of the potential g(x) = -|x|^2/2 + V(x).

For a homogeneous degree-k polynomial V, every nonzero critical point of
g lies on a ray through a spherical critical point of V, at a complex
radial scale tau solving tau^(k-2) = 1/(k V(x)).  The dominant points
come from the global maxima of |V| on the unit sphere.  This module

  * finds those maxima by multistart projected ascent plus Newton
    polishing, folding antipodal copies to one representative,
  * computes the k-2 radial scales per representative,
  * assembles the complex critical points with their potential values
    and Hessian determinants (full and spherical).

All randomness is driven by a seed; identical seeds give bitwise
identical results.
"""

from __future__ import annotations

import cmath
from dataclasses import dataclass

import numpy as np
import scipy.linalg

from .errors import DegenerateCriticalPointError, NonConvergenceError
from .polynomials import Polynomial, potential_polynomial

STATIONARY_TOL = 1e-10
CRITICAL_TOL = 1e-9
DEGENERACY_TOL = 1e-8
CLUSTER_ANGLE = 1e-6
VALUE_WINDOW = 1e-9


@dataclass(frozen=True)
class SphereMaximizer:
    """A global maximum of |V| on the unit sphere, one per antipodal pair."""

    x: tuple[float, ...]
    value: float
    grad_norm: float
    antipodal_rep: bool = True


@dataclass(frozen=True)
class CriticalPoint:
    """One nonzero critical point z = scale * direction of the potential."""

    direction: tuple[float, ...]
    scale: complex
    z: tuple[complex, ...]
    potential_value: complex
    potential_hessian_det: complex
    sphere_hessian_det: float
    nondegenerate: bool


class _CompiledPoly:
    """Float-coefficient view of a Polynomial for fast repeated evaluation."""

    def __init__(self, poly: Polynomial):
        self.nvars = poly.nvars
        self.exps = np.array(sorted(poly.terms), dtype=np.int64).reshape(len(poly.terms), poly.nvars)
        self.coeffs = np.array([float(poly.terms[tuple(e)]) for e in self.exps])
        grads = poly.gradient()
        rows, gcoeffs, bounds = [], [], [0]
        for g in grads:
            for e, c in g.sorted_terms():
                rows.append(e)
                gcoeffs.append(float(c))
            bounds.append(len(rows))
        self.grad_exps = np.array(rows, dtype=np.int64).reshape(len(rows), poly.nvars)
        self.grad_coeffs = np.array(gcoeffs)
        self.grad_bounds = bounds
        hess = poly.hessian()
        rows, hcoeffs, hbounds = [], [], [0]
        for i in range(poly.nvars):
            for j in range(poly.nvars):
                for e, c in hess[i][j].sorted_terms():
                    rows.append(e)
                    hcoeffs.append(float(c))
                hbounds.append(len(rows))
        self.hess_exps = np.array(rows, dtype=np.int64).reshape(len(rows), poly.nvars)
        self.hess_coeffs = np.array(hcoeffs)
        self.hess_bounds = hbounds

    def value(self, x: np.ndarray) -> float:
        if self.exps.shape[0] == 0:
            return 0.0
        return float(self.coeffs @ np.prod(x**self.exps, axis=1))

    def gradient(self, x: np.ndarray) -> np.ndarray:
        out = np.zeros(self.nvars)
        if self.grad_exps.shape[0] == 0:
            return out
        prods = self.grad_coeffs * np.prod(x**self.grad_exps, axis=1)
        for i in range(self.nvars):
            out[i] = prods[self.grad_bounds[i]:self.grad_bounds[i + 1]].sum()
        return out

    def hessian(self, x: np.ndarray) -> np.ndarray:
        out = np.zeros((self.nvars, self.nvars))
        if self.hess_exps.shape[0] == 0:
            return out
        prods = self.hess_coeffs * np.prod(x**self.hess_exps, axis=1)
        idx = 0
        for i in range(self.nvars):
            for j in range(self.nvars):
                out[i, j] = prods[self.hess_bounds[idx]:self.hess_bounds[idx + 1]].sum()
                idx += 1
        return out


def _check_incidence(poly: Polynomial) -> int:
    degree = poly.homogeneous_degree()
    if not poly.terms or degree is None:
        raise ValueError("V must be a nonzero homogeneous polynomial")
    if degree < 3:
        raise ValueError("V must have degree at least 3")
    return degree


def _tangent_basis(x: np.ndarray) -> np.ndarray:
    """Columns form an orthonormal basis of the tangent space at x."""
    return scipy.linalg.null_space(x.reshape(1, -1))


def _riemannian_gradient(compiled: _CompiledPoly, sign: float, x: np.ndarray) -> np.ndarray:
    grad = sign * compiled.gradient(x)
    return grad - (grad @ x) * x


def _ascend(compiled: _CompiledPoly, sign: float, x: np.ndarray,
            max_iter: int = 400) -> np.ndarray | None:
    """Projected gradient ascent with backtracking, then Newton polishing.

    Maximizes sign * V on the sphere.  Returns the polished point, or
    None when the stationarity tolerance was not reached.
    """
    value = sign * compiled.value(x)
    for _ in range(max_iter):
        rgrad = _riemannian_gradient(compiled, sign, x)
        gnorm = float(np.linalg.norm(rgrad))
        if gnorm < 1e-7:
            break
        step = 1.0
        moved = False
        while step > 1e-14:
            trial = x + step * rgrad
            trial /= np.linalg.norm(trial)
            trial_value = sign * compiled.value(trial)
            if trial_value > value + 1e-4 * step * gnorm * gnorm:
                x, value = trial, trial_value
                moved = True
                break
            step *= 0.5
        if not moved:
            break
    for _ in range(30):
        rgrad = _riemannian_gradient(compiled, sign, x)
        gnorm = float(np.linalg.norm(rgrad))
        if gnorm < 1e-14:
            break
        grad = sign * compiled.gradient(x)
        hess = sign * compiled.hessian(x)
        basis = _tangent_basis(x)
        reduced = basis.T @ (hess - (grad @ x) * np.eye(len(x))) @ basis
        rhs = -(basis.T @ grad)
        try:
            delta = np.linalg.solve(reduced, rhs)
        except np.linalg.LinAlgError:
            return None
        trial = x + basis @ delta
        trial /= np.linalg.norm(trial)
        trial_gnorm = float(np.linalg.norm(_riemannian_gradient(compiled, sign, trial)))
        if trial_gnorm >= gnorm:
            break
        x = trial
    if float(np.linalg.norm(_riemannian_gradient(compiled, sign, x))) > STATIONARY_TOL:
        return None
    return x


def _fold_antipodal(x: np.ndarray) -> np.ndarray:
    """Pick the representative of {x, -x} whose leading component is positive."""
    for component in x:
        if abs(component) > 1e-9:
            return -x if component < 0 else x
    return x


def find_sphere_maxima(poly: Polynomial, restarts: int | None = None, seed: int = 42,
                       value_window: float = VALUE_WINDOW) -> list[SphereMaximizer]:
    """Global maxima of |V| on the unit sphere, one per antipodal pair.

    Multistart ascent of sign(V(x0)) * V from `restarts` random unit
    starts (default max(200, 100 * nvars)), Newton-polished to
    stationarity 1e-10, clustered at angular tolerance 1e-6, folded to
    the antipodal representative with positive leading component, and
    filtered to values within a relative window of the best.
    """
    degree = _check_incidence(poly)
    nvars = poly.nvars
    if nvars == 1:
        value = float(poly.evaluate((1.0,)))
        if value == 0.0:
            raise ValueError("V vanishes identically on the sphere")
        return [SphereMaximizer(x=(1.0,), value=value, grad_norm=0.0)]
    if restarts is None:
        restarts = max(200, 100 * nvars)
    compiled = _CompiledPoly(poly)
    candidates: list[tuple[np.ndarray, float, float]] = []
    for index in range(restarts):
        rng = np.random.default_rng([seed, index])
        x0 = rng.normal(size=nvars)
        norm = np.linalg.norm(x0)
        while norm < 1e-8:
            x0 = rng.normal(size=nvars)
            norm = np.linalg.norm(x0)
        x0 /= norm
        sign = 1.0 if compiled.value(x0) >= 0.0 else -1.0
        polished = _ascend(compiled, sign, x0)
        if polished is None:
            continue
        folded = _fold_antipodal(polished)
        gnorm = float(np.linalg.norm(_riemannian_gradient(compiled, 1.0, folded)))
        candidates.append((folded, compiled.value(folded), gnorm))
    if not candidates:
        raise NonConvergenceError("no restart reached the stationarity tolerance")
    clusters: list[tuple[np.ndarray, float, float, int]] = []
    cos_tol = 1.0 - CLUSTER_ANGLE**2 / 2.0
    for index, (x, value, gnorm) in enumerate(candidates):
        for ci, (cx, cvalue, cgnorm, hits) in enumerate(clusters):
            if float(x @ cx) >= cos_tol:
                clusters[ci] = (cx, cvalue, cgnorm, hits + 1)
                break
        else:
            clusters.append((x, value, gnorm, 1))
    best = max(abs(value) for _, value, _, _ in clusters)
    if best == 0.0:
        raise ValueError("V vanishes at every stationary point found")
    kept = [c for c in clusters if abs(c[1]) >= (1.0 - value_window) * best]
    kept.sort(key=lambda c: (-c[1], tuple(-v for v in c[0])))
    return [SphereMaximizer(x=tuple(float(v) for v in x), value=float(value),
                            grad_norm=float(gnorm))
            for x, value, gnorm, _ in kept]


def radial_scales(value: float, degree: int) -> list[complex]:
    """The (degree - 2) complex solutions of tau^(degree-2) = 1/(degree * value).

    Roots are the principal (degree-2)-th root of 1/(k*value) times the
    (degree-2)-th roots of unity, in phase order.
    """
    if degree < 3:
        raise ValueError("degree must be at least 3")
    if value == 0:
        raise ValueError("radial scales undefined for a vanishing spherical value")
    root_count = degree - 2
    target = 1.0 / (degree * value)
    principal = complex(target) ** (1.0 / root_count)
    return [principal * cmath.exp(2j * cmath.pi * j / root_count) for j in range(root_count)]


def potential_hessian_det(incidence: Polynomial, z: tuple[complex, ...]) -> complex:
    """det(Hess g)(z) for g = -|x|^2/2 + V, evaluated at a complex point."""
    nvars = incidence.nvars
    hess = np.empty((nvars, nvars), dtype=complex)
    rows = incidence.hessian()
    for i in range(nvars):
        for j in range(nvars):
            hess[i, j] = complex(rows[i][j].evaluate(z))
    hess -= np.eye(nvars)
    return complex(np.linalg.det(hess))


def sphere_hessian_det(incidence: Polynomial, x: tuple[float, ...]) -> float:
    """det of the spherical Hessian of f = log|V| restricted, at a maximizer.

    Concretely: det(P Hess V(x) P^T / V(x) - k I) over an orthonormal
    tangent basis P at x.  The matrix must be negative definite at a
    nondegenerate spherical maximum; a nonnegative eigenvalue raises.
    """
    degree = _check_incidence(incidence)
    nvars = incidence.nvars
    if nvars == 1:
        return 1.0
    xvec = np.asarray(x, dtype=float)
    value = float(incidence.evaluate(tuple(xvec)))
    if value == 0.0:
        raise ValueError("spherical Hessian undefined where V vanishes")
    rows = incidence.hessian()
    hess = np.empty((nvars, nvars))
    for i in range(nvars):
        for j in range(nvars):
            hess[i, j] = float(rows[i][j].evaluate(tuple(xvec)))
    basis = _tangent_basis(xvec)
    reduced = basis.T @ hess @ basis / value - degree * np.eye(nvars - 1)
    eigenvalues = np.linalg.eigvalsh((reduced + reduced.T) / 2.0)
    if eigenvalues.max() >= 0.0:
        raise DegenerateCriticalPointError(
            f"spherical Hessian has a nonnegative eigenvalue {eigenvalues.max():.3e}; "
            "not a nondegenerate maximum")
    return float(np.linalg.det(reduced))


def critical_points(incidence: Polynomial,
                    maxima: list[SphereMaximizer] | None = None,
                    restarts: int | None = None, seed: int = 42) -> list[CriticalPoint]:
    """The dominant complex critical points of the potential.

    Each spherical maximizer contributes its k-2 radial scales.  Every
    point is verified: the potential gradient must vanish to within a
    scaled 1e-9, and the radial eigenvector identity
    Hess g(z) z = (k-2) z must hold to 1e-8 relative.
    """
    degree = _check_incidence(incidence)
    if maxima is None:
        maxima = find_sphere_maxima(incidence, restarts=restarts, seed=seed)
    potential = potential_polynomial(incidence)
    grad_polys = potential.gradient()
    hess_polys = potential.hessian()
    points: list[CriticalPoint] = []
    for maximizer in maxima:
        det_sphere = sphere_hessian_det(incidence, maximizer.x)
        for tau in radial_scales(maximizer.value, degree):
            z = tuple(tau * component for component in maximizer.x)
            scale = max(abs(tau), 1.0)
            grad = [complex(p.evaluate(z)) for p in grad_polys]
            residual = max(abs(g) for g in grad)
            if residual > CRITICAL_TOL * scale ** (degree - 1):
                raise NonConvergenceError(
                    f"critical point residual {residual:.3e} exceeds tolerance at {z}")
            hess = np.empty((incidence.nvars, incidence.nvars), dtype=complex)
            for i in range(incidence.nvars):
                for j in range(incidence.nvars):
                    hess[i, j] = complex(hess_polys[i][j].evaluate(z))
            zvec = np.array(z, dtype=complex)
            radial = hess @ zvec - (degree - 2) * zvec
            if np.linalg.norm(radial) > 1e-8 * max(1.0, float(np.linalg.norm(zvec))):
                raise NonConvergenceError(
                    f"radial eigenvector identity violated by {np.linalg.norm(radial):.3e}")
            det_full = complex(np.linalg.det(hess))
            value = complex(potential.evaluate(z))
            points.append(CriticalPoint(
                direction=maximizer.x, scale=tau, z=z, potential_value=value,
                potential_hessian_det=det_full, sphere_hessian_det=det_sphere,
                nondegenerate=abs(det_full) > DEGENERACY_TOL))
    return points
