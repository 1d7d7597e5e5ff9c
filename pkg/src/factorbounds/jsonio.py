"""JSON views of the report types.

Exact rationals are rendered as ``"p"`` / ``"p/q"`` strings, never floats;
polynomials as ascending coefficient arrays.  Every top-level report carries
a ``conventions`` block so results are self-describing.
"""

from __future__ import annotations

from fractions import Fraction

from .bounds import (
    BoundInputs,
    BoundReport,
    FuchsSummary,
    OperatorBoundSweep,
    TowerBound,
)
from .operators import DegreeProfile, DiffOperator
from .parsing import operator_to_json
from .polynomials import Polynomial, fraction_str
from .series import MinimizationResult, RecurrenceOperator
from .singularities import GlobalCensus, NewtonPolygon, PointSpec, SingularityReport

CONVENTIONS = {
    "adjoint_sign": "adjoint(L) = sum_j (-D)^j . a_j, so adjoint(D) = -D",
    "singularity_count": (
        "S counts finite non-apparent singularities with the relaxed "
        "convention (indicial polynomial splits into distinct integer "
        "exponents, no logarithm test); S_strict requires a full basis of "
        "power-series solutions; both are reported"
    ),
    "exponent_bound": (
        "E_fuchsian is an upper bound on all local exponent moduli: the "
        "exact maximum when every exponent is rational, else the Cauchy "
        "root bound of the indicial norm"
    ),
    "rationals": "exact decimal strings 'p' or 'p/q'",
}


def frac(x: Fraction | None) -> str | None:
    return None if x is None else fraction_str(x)


def poly_json(p: Polynomial | None) -> list[str] | None:
    if p is None:
        return None
    return [fraction_str(c) for c in p.coeffs]


def operator_json(op: DiffOperator) -> dict:
    out = operator_to_json(op)
    out["text"] = op.format()
    out["order"] = op.order
    return out


def point_json(spec: PointSpec) -> dict:
    if spec.kind == "rational":
        return {"kind": "rational", "value": frac(spec.value)}
    if spec.kind == "orbit":
        return {"kind": "orbit", "value": poly_json(spec.value), "size": spec.size}
    return {"kind": "infinity"}


def polygon_json(poly: NewtonPolygon) -> dict:
    return {
        "vertices": [[int(x), frac(Fraction(y))] for x, y in poly.vertices],
        "edges": [{"slope": frac(s), "length": int(l)} for s, l in poly.edges],
        "max_slope": frac(poly.max_slope),
        "order": poly.order,
    }


def singularity_json(rep: SingularityReport) -> dict:
    out = {
        "point": point_json(rep.point),
        "orbit_size": rep.orbit_size,
        "katz_rank": frac(rep.katz_rank),
        "classification": rep.classification,
        "polygon": polygon_json(rep.polygon),
        "indicial_norm": poly_json(rep.indicial_norm),
        "exponents_rational": (
            None
            if rep.exponents_rational is None
            else [{"value": frac(r), "multiplicity": m} for r, m in rep.exponents_rational]
        ),
        "exponents_all_rational": rep.exponents_all_rational,
        "exponent_modulus_bound": frac(rep.exponent_bound),
        "exponent_sum": frac(rep.exponent_sum),
        "apparent": rep.apparent,
        "apparent_relaxed": rep.apparent_relaxed,
    }
    if rep.indicial_local is not None:
        out["indicial_local"] = [poly_json(c) for c in rep.indicial_local]
    if rep.notes:
        out["notes"] = list(rep.notes)
    return out


def census_json(census: GlobalCensus) -> dict:
    return {
        "finite_singularities": [singularity_json(r) for r in census.finite_singularities],
        "infinity": singularity_json(census.infinity_report),
        "S": census.S,
        "S_strict": census.S_strict,
        "N_max": frac(census.Nmax),
        "is_fuchsian": census.is_fuchsian,
        "E_fuchsian": frac(census.E_fuchsian),
        "sing_count_total": census.sing_count_total,
        "order": census.order,
        "degree": census.degree,
        "conventions": CONVENTIONS,
    }


def degree_profile_json(profile: DegreeProfile) -> dict:
    return {
        "order": profile.order,
        "degree_z": profile.degree_z,
        "denominator_degree": profile.denominator_degree,
    }


def bound_inputs_json(inputs: BoundInputs) -> dict:
    return {
        "r": inputs.r,
        "E": frac(inputs.E),
        "N": frac(inputs.N),
        "S": inputs.S,
        "E_per_point": None
        if inputs.E_per_point is None
        else [frac(e) for e in inputs.E_per_point],
        "q": inputs.q,
        "sing_count": inputs.sing_count,
        "provenance": inputs.provenance,
    }


def bound_report_json(report: BoundReport) -> dict:
    return {
        "inputs": bound_inputs_json(report.inputs),
        "plain_bound": frac(report.plain_bound),
        "plain_ceiling": report.plain_ceiling,
        "refined_bound": frac(report.refined_bound),
        "refined_ceiling": report.refined_ceiling,
        "term_breakdown": [frac(t) for t in report.term_breakdown],
        "refined_terms": [frac(t) for t in report.refined_terms],
        "refinements_applied": list(report.refinements_applied),
    }


def sweep_json(sweep: OperatorBoundSweep) -> dict:
    return {
        "E": frac(sweep.E),
        "E_provenance": sweep.E_provenance,
        "per_order": [
            {
                "r": entry.r,
                "strict": bound_report_json(entry.strict),
                "relaxed": bound_report_json(entry.relaxed),
                "coarse": bound_report_json(entry.coarse),
            }
            for entry in sweep.per_order
        ],
        "census": census_json(sweep.census),
        "conventions": CONVENTIONS,
    }


def fuchs_json(summary: FuchsSummary, holds: bool | None = None) -> dict:
    out = {
        "order": summary.order,
        "per_point": [
            {"point": point_json(p), "S_rho": frac(s)} for p, s in summary.per_point
        ],
        "total": frac(summary.total),
        "expected_total": str(-summary.order * (summary.order - 1)),
        "conventions": CONVENTIONS,
    }
    if holds is not None:
        out["holds"] = holds
    return out


def tower_json(tb: TowerBound) -> dict:
    a, e = tb.base2_exponent
    h, (b, f) = tb.height_part
    log2 = tb.log2_estimate
    if isinstance(log2, Fraction):
        log2_out = frac(log2)
    elif isinstance(log2, int):
        from .polynomials import big_int_str

        log2_out = big_int_str(log2)
    else:
        log2_out = None
    return {
        "base2_exponent": {"base": a, "exponent": e},
        "height_part": {"height": h, "base": b, "exponent": f},
        "log2_estimate": log2_out,
        "log2_is_exact": tb.log2_is_exact,
        "log2_log2_upper": tb.log2_log2_upper,
    }


def recurrence_json(rec: RecurrenceOperator) -> dict:
    return {
        "terms": [{"shift": s, "coefficient": poly_json(p)} for s, p in rec.terms],
        "shift_range": list(rec.shift_range),
        "text": rec.format(),
    }


def minimization_json(result: MinimizationResult) -> dict:
    return {
        "found": result.found,
        "operator": None if result.operator is None else operator_json(result.operator),
        "order": result.order,
        "degree_cap": result.degree_cap,
        "cutoff": result.cutoff,
        "E_used": frac(result.E_used),
        "certificate_zero_through": result.certificate_zero_through,
        "division_remainder_zero": result.division_remainder_zero,
        "orders_tried": list(result.orders_tried),
        "conventions": CONVENTIONS,
    }
