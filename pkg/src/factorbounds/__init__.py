"""Exact analysis of linear differential operators over Q(z).

The package computes singular structure (Newton polygons, Katz ranks, local
exponents, apparent-singularity detection), checks Fuchs relations, evaluates
fully explicit degree bounds for monic right factors, and searches for the
minimal-order annihilator of a D-finite power series — all in exact rational
arithmetic.
"""

from __future__ import annotations

__version__ = "0.1.0"

from .bounds import (
    BoundInputs,
    BoundReport,
    FuchsSummary,
    OperatorBoundSweep,
    TowerBound,
    apriori_exponent_bound,
    bound_from_operator,
    check_fuchs_relation,
    fuchs_summary,
    degree_bound,
    valuation_bound,
)
from .errors import FactorBoundsError
from .operators import INF, DegreeProfile, DiffOperator, ThetaForm, to_theta_form
from .parsing import operator_from_any, operator_from_json, operator_to_json, parse_operator
from .polynomials import Polynomial, RationalFunction, as_fraction
from .series import (
    MinimizationResult,
    RecurrenceOperator,
    SeriesContext,
    apply_operator,
    extend_coefficients,
    minimize,
    operator_to_recurrence,
)
from .singularities import (
    GlobalCensus,
    NewtonPolygon,
    PointSpec,
    SingularityReport,
    global_census,
    indicial_polynomial,
    is_apparent,
    katz_rank,
    newton_polygon,
    valuation,
)

__all__ = [
    "__version__",
    "BoundInputs",
    "BoundReport",
    "DegreeProfile",
    "DiffOperator",
    "FactorBoundsError",
    "FuchsSummary",
    "GlobalCensus",
    "INF",
    "MinimizationResult",
    "NewtonPolygon",
    "OperatorBoundSweep",
    "PointSpec",
    "Polynomial",
    "RationalFunction",
    "RecurrenceOperator",
    "SeriesContext",
    "SingularityReport",
    "ThetaForm",
    "TowerBound",
    "apply_operator",
    "as_fraction",
    "apriori_exponent_bound",
    "bound_from_operator",
    "check_fuchs_relation",
    "extend_coefficients",
    "fuchs_summary",
    "global_census",
    "indicial_polynomial",
    "is_apparent",
    "katz_rank",
    "minimize",
    "newton_polygon",
    "operator_from_any",
    "operator_from_json",
    "operator_to_json",
    "operator_to_recurrence",
    "parse_operator",
    "degree_bound",
    "to_theta_form",
    "valuation",
    "valuation_bound",
]
