"""Exact and asymptotic enumeration of edge-colored regular multigraphs.

The package counts isomorphism classes of c-edge-colored k-regular
multigraphs weighted by 1/|Aut| and by rational vertex weights, exposes
saddle-point asymptotics for those counts driven by the critical points
of the potential -|x|^2/2 + V(x), and specializes to proper edge
colorings with closed-form constants.
"""

from .asymptotics import (ConvergenceRow, EstimateRequest, LogValue,
                          QuadratureReport, convergence_table,
                          estimate_from_critical_points,
                          estimate_from_sphere_maxima, set_working_precision,
                          sphere_integral_check)
from .colorings import (AnalyticCriticalData, ColoringRequest, ExpectedRow,
                        closed_form_coloring_count, closed_form_expected,
                        coloring_critical_data, coloring_weight_spec,
                        count_matrix_tuples, empirical_expected,
                        estimate_coloring_count, exact_coloring_count,
                        expected_table, regular_graph_count)
from .counting import (CountTable, count_table, double_factorial,
                       exp_series_coefficient, single_edge_identity,
                       weighted_count_brute_force, weighted_count_partitions,
                       weighted_count_series)
from .critical import (CriticalPoint, SphereMaximizer, critical_points,
                       find_sphere_maxima, potential_hessian_det,
                       radial_scales, sphere_hessian_det)
from .errors import (CapExceededError, ConfigError,
                     DegenerateCriticalPointError, NonConvergenceError,
                     RegenumError, ValidationError)
from .polynomials import (Polynomial, WeightSpec, elementary_symmetric,
                          incidence_polynomial, potential_polynomial)

__version__ = "0.1.0"

__all__ = [
    "AnalyticCriticalData", "CapExceededError", "ColoringRequest",
    "ConfigError", "ConvergenceRow", "CountTable", "CriticalPoint",
    "DegenerateCriticalPointError", "EstimateRequest", "ExpectedRow",
    "LogValue", "NonConvergenceError", "Polynomial", "QuadratureReport",
    "RegenumError", "SphereMaximizer", "ValidationError", "WeightSpec",
    "closed_form_coloring_count", "closed_form_expected",
    "coloring_critical_data", "coloring_weight_spec", "convergence_table",
    "count_matrix_tuples", "count_table", "critical_points",
    "double_factorial", "elementary_symmetric", "empirical_expected",
    "estimate_coloring_count", "estimate_from_critical_points",
    "estimate_from_sphere_maxima", "exact_coloring_count",
    "exp_series_coefficient", "expected_table", "find_sphere_maxima",
    "incidence_polynomial", "potential_hessian_det", "potential_polynomial",
    "radial_scales", "regular_graph_count", "single_edge_identity",
    "set_working_precision", "sphere_hessian_det", "sphere_integral_check",
    "weighted_count_brute_force", "weighted_count_partitions",
    "weighted_count_series",
]
