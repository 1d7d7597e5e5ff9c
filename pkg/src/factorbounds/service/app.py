"""FastAPI service exposing the operator analyses.

Every endpoint takes an operator (expression text or structured JSON) and
returns the corresponding exact report; library errors map to HTTP 400/422
with a stable ``code`` field.  The CLI talks to this app in-process through
an ASGI transport, so the same surface serves both network clients and local
use.

Run standalone with::

    uvicorn factorbounds.service.app:app
"""

from __future__ import annotations

from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse

from .. import __version__, jsonio
from ..bounds import apriori_exponent_bound, bound_from_operator, check_fuchs_relation
from ..errors import (
    FactorBoundsError,
    InvalidInputError,
    NeedsExponentBoundError,
    NeedsMoreInitialTermsError,
    ParseError,
    UnsupportedError,
)
from ..operators import INF
from ..parsing import operator_from_any
from ..series import (
    SeriesContext,
    apply_operator,
    extend_coefficients,
    minimize,
    operator_to_recurrence,
)
from ..singularities import (
    PointSpec,
    finite_singular_points,
    global_census,
    newton_polygon,
)
from ..polynomials import as_fraction, fraction_str
from . import schemas

app = FastAPI(
    title="factorbounds",
    version=__version__,
    description=(
        "Exact analysis of linear differential operators over Q(z): "
        "singularity census, Newton polygons, Fuchs relations, right-factor "
        "degree bounds, and minimal-annihilator search."
    ),
)

_STATUS = {
    "invalid-input": 400,
    "parse-error": 400,
    "division-by-zero": 400,
    "unsupported": 422,
    "needs-more-initial-terms": 422,
    "needs-exponent-bound": 422,
    "inconsistency": 422,
    "reducible-modulus": 500,
}


@app.exception_handler(FactorBoundsError)
async def _library_error(_request: Request, exc: FactorBoundsError):
    return JSONResponse(status_code=_STATUS.get(exc.code, 400), content=exc.payload())


def _operator(source, var: str):
    return operator_from_any(source, var=var)


@app.get("/v1/health", response_model=schemas.HealthOut)
def health() -> dict:
    return {"status": "ok", "version": __version__}


@app.post("/v1/analyze", response_model=schemas.CensusOut)
def analyze(req: schemas.AnalyzeRequest) -> dict:
    op = _operator(req.operator, req.var)
    census = global_census(op, conservative_orbits=req.conservative_orbits)
    return jsonio.census_json(census)


@app.post("/v1/bound", response_model=schemas.BoundSweepOut)
def bound(req: schemas.BoundRequest) -> dict:
    op = _operator(req.operator, req.var)
    refinements = req.refine if req.refine == "auto" else set(req.refine)
    tower = None
    e_override = req.E
    if req.kappa is not None or req.height is not None:
        if req.kappa is None or req.height is None:
            raise InvalidInputError("kappa and height must be supplied together")
        polys = op.polynomial_form()
        q = max(p.degree for p in polys if p)
        tower = apriori_exponent_bound(q, op.order, req.kappa, req.height)
    sweep = bound_from_operator(
        op,
        E_override=e_override,
        refinements=refinements,
        conservative_orbits=req.conservative_orbits,
    )
    out = jsonio.sweep_json(sweep)
    if tower is not None:
        out["exponent_tower"] = jsonio.tower_json(tower)
    return out


@app.post("/v1/newton", response_model=schemas.NewtonOut)
def newton(req: schemas.NewtonRequest) -> dict:
    op = _operator(req.operator, req.var)
    if req.points is None:
        specs = finite_singular_points(op) + [PointSpec.infinity()]
    else:
        specs = []
        for text in req.points:
            if text.strip().lower() in ("inf", "infinity", "oo"):
                specs.append(PointSpec.infinity())
            else:
                specs.append(PointSpec.rational(as_fraction(text)))
    polygons = [
        {"point": jsonio.point_json(spec), "polygon": jsonio.polygon_json(newton_polygon(op, spec))}
        for spec in specs
    ]
    return {"polygons": polygons}


@app.post("/v1/fuchs-check", response_model=schemas.FuchsOut)
def fuchs_check(req: schemas.FuchsCheckRequest) -> dict:
    op = _operator(req.operator, req.var)
    holds, summary = check_fuchs_relation(op)
    return jsonio.fuchs_json(summary, holds=holds)


@app.post("/v1/multiply", response_model=schemas.OperatorOut)
def multiply(req: schemas.MultiplyRequest) -> dict:
    left = _operator(req.left, req.var)
    right = _operator(req.right, req.var)
    if not left or not right:
        raise InvalidInputError("multiplication requires nonzero operators")
    return jsonio.operator_json(left * right)


@app.post("/v1/divmod", response_model=schemas.DivmodOut)
def divmod_endpoint(req: schemas.DivmodRequest) -> dict:
    dividend = _operator(req.dividend, req.var)
    divisor = _operator(req.divisor, req.var)
    quotient, remainder = dividend.right_divmod(divisor)
    return {
        "quotient": jsonio.operator_json(quotient),
        "remainder": jsonio.operator_json(remainder),
        "is_right_factor": not remainder,
    }


@app.post("/v1/adjoint", response_model=schemas.OperatorOut)
def adjoint(req: schemas.AdjointRequest) -> dict:
    return jsonio.operator_json(_operator(req.operator, req.var).adjoint())


@app.post("/v1/to-recurrence", response_model=schemas.RecurrenceOut)
def to_recurrence(req: schemas.ToRecurrenceRequest) -> dict:
    return jsonio.recurrence_json(operator_to_recurrence(_operator(req.operator, req.var)))


@app.post("/v1/expand", response_model=schemas.ExpandOut)
def expand(req: schemas.ExpandRequest) -> dict:
    op = _operator(req.operator, req.var)
    ctx = SeriesContext.from_operator(op, [as_fraction(c) for c in req.initial])
    extend_coefficients(ctx, req.upto)
    return {"coefficients": [fraction_str(c) for c in ctx.coefficients[: req.upto + 1]]}


@app.post("/v1/minimize", response_model=schemas.MinimizeOut)
def minimize_endpoint(req: schemas.MinimizeRequest) -> dict:
    op = _operator(req.operator, req.var)
    result = minimize(
        op,
        [as_fraction(c) for c in req.coefficients],
        degree_cap=req.degree_cap,
        E_override=req.E,
        conservative_orbits=req.conservative_orbits,
    )
    return jsonio.minimization_json(result)
