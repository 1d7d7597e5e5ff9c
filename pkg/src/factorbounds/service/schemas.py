"""Pydantic request and response models for the analysis service.

Operators travel either as expression text (``"z*D^2 + (2-z)*D + 3"``) or as
the structured JSON form ``{"var": "z", "coeffs": [...]}``; rationals are
exact strings everywhere.  Response models mirror the report JSON emitted by
``factorbounds.jsonio`` one to one.
"""

from __future__ import annotations

from typing import Literal, Optional, Union

from pydantic import BaseModel, ConfigDict, Field

OperatorLike = Union[str, dict]


class OperatorRequest(BaseModel):
    operator: OperatorLike
    var: str = "z"


class AnalyzeRequest(OperatorRequest):
    conservative_orbits: bool = True


class BoundRequest(OperatorRequest):
    E: Optional[str] = Field(default=None, description="exponent bound override, 'p/q'")
    refine: Union[Literal["auto"], list[str]] = "auto"
    kappa: Optional[int] = Field(default=None, ge=1)
    height: Optional[int] = Field(default=None, ge=1)
    conservative_orbits: bool = True


class NewtonRequest(OperatorRequest):
    points: Optional[list[str]] = Field(
        default=None,
        description="rational points and/or 'inf'; defaults to all finite singularities plus infinity",
    )


class FuchsCheckRequest(OperatorRequest):
    pass


class MultiplyRequest(BaseModel):
    left: OperatorLike
    right: OperatorLike
    var: str = "z"


class DivmodRequest(BaseModel):
    dividend: OperatorLike
    divisor: OperatorLike
    var: str = "z"


class AdjointRequest(OperatorRequest):
    pass


class ToRecurrenceRequest(OperatorRequest):
    pass


class ExpandRequest(OperatorRequest):
    initial: list[str]
    upto: int = Field(ge=0)


class MinimizeRequest(OperatorRequest):
    coefficients: list[str]
    degree_cap: Optional[int] = Field(default=None, ge=0)
    E: Optional[str] = None
    conservative_orbits: bool = True


# --- responses ---------------------------------------------------------------


class OperatorOut(BaseModel):
    var: str
    coeffs: list[Union[list[str], dict]]
    text: str
    order: int


class PointOut(BaseModel):
    kind: Literal["rational", "orbit", "infinity"]
    value: Optional[Union[str, list[str]]] = None
    size: Optional[int] = None


class EdgeOut(BaseModel):
    slope: str
    length: int


class PolygonOut(BaseModel):
    vertices: list[list]
    edges: list[EdgeOut]
    max_slope: str
    order: int


class ExponentOut(BaseModel):
    value: str
    multiplicity: int


class SingularityOut(BaseModel):
    model_config = ConfigDict(extra="allow")

    point: PointOut
    orbit_size: int
    katz_rank: str
    classification: Literal["ordinary", "regular-singular", "irregular"]
    polygon: PolygonOut
    indicial_norm: Optional[list[str]] = None
    exponents_rational: Optional[list[ExponentOut]] = None
    exponents_all_rational: Optional[bool] = None
    exponent_modulus_bound: Optional[str] = None
    exponent_sum: Optional[str] = None
    apparent: Optional[Literal["yes", "no", "undecided"]] = None
    apparent_relaxed: Optional[Literal["yes", "no", "undecided"]] = None


class CensusOut(BaseModel):
    finite_singularities: list[SingularityOut]
    infinity: SingularityOut
    S: int
    S_strict: int
    N_max: str
    is_fuchsian: bool
    E_fuchsian: Optional[str] = None
    sing_count_total: int
    order: int
    degree: int
    conventions: dict


class BoundInputsOut(BaseModel):
    r: int
    E: str
    N: str
    S: int
    E_per_point: Optional[list[str]] = None
    q: Optional[int] = None
    sing_count: Optional[int] = None
    provenance: str


class BoundReportOut(BaseModel):
    inputs: BoundInputsOut
    plain_bound: str
    plain_ceiling: int
    refined_bound: str
    refined_ceiling: int
    term_breakdown: list[str]
    refined_terms: list[str]
    refinements_applied: list[str]


class OrderBoundsOut(BaseModel):
    r: int
    strict: BoundReportOut
    relaxed: BoundReportOut
    coarse: BoundReportOut


class TowerOut(BaseModel):
    base2_exponent: dict
    height_part: dict
    log2_estimate: Optional[str] = None
    log2_is_exact: bool
    log2_log2_upper: Optional[int] = None


class BoundSweepOut(BaseModel):
    E: str
    E_provenance: str
    per_order: list[OrderBoundsOut]
    census: CensusOut
    conventions: dict
    exponent_tower: Optional[TowerOut] = None


class NewtonPointOut(BaseModel):
    point: PointOut
    polygon: PolygonOut


class NewtonOut(BaseModel):
    polygons: list[NewtonPointOut]


class FuchsPointOut(BaseModel):
    point: PointOut
    S_rho: str


class FuchsOut(BaseModel):
    order: int
    per_point: list[FuchsPointOut]
    total: str
    expected_total: str
    holds: bool
    conventions: dict


class DivmodOut(BaseModel):
    quotient: OperatorOut
    remainder: OperatorOut
    is_right_factor: bool


class RecurrenceTermOut(BaseModel):
    shift: int
    coefficient: list[str]


class RecurrenceOut(BaseModel):
    terms: list[RecurrenceTermOut]
    shift_range: list[int]
    text: str


class ExpandOut(BaseModel):
    coefficients: list[str]


class MinimizeOut(BaseModel):
    found: bool
    operator: Optional[OperatorOut] = None
    order: Optional[int] = None
    degree_cap: Optional[int] = None
    cutoff: Optional[int] = None
    E_used: Optional[str] = None
    certificate_zero_through: Optional[int] = None
    division_remainder_zero: Optional[bool] = None
    orders_tried: list[int]
    conventions: dict


class ErrorOut(BaseModel):
    code: str
    message: str
    details: Optional[dict] = None


class HealthOut(BaseModel):
    status: str
    version: str
