"""Pydantic models for the service API, campaign files, and reports.

These are the wire contract: rationals travel as "n/d" strings, floats as
JSON numbers (see wire.py).  Field order is fixed, so serialized reports are
byte-stable except for the wall_time_s field.  JSON Schemas for campaign,
report, and case documents are generated from these models (``plineq schema``).
"""

from __future__ import annotations

from fractions import Fraction
from typing import Any, Literal, Optional, Union

from pydantic import BaseModel, ConfigDict, Field, field_validator

from . import classes, inequalities, wire

WireNumber = Union[int, float, str]

MODES = ("verify", "falsify", "replay", "sharpness")


class FunctionModel(BaseModel):
    """Flat record of a piecewise-linear function."""

    model_config = ConfigDict(extra="forbid")

    domain: list[WireNumber] = Field(default=[0, 1], min_length=2, max_length=2)
    breakpoints: list[WireNumber] = Field(min_length=2)
    values: list[WireNumber] = Field(min_length=2)

    @field_validator("breakpoints", "values", "domain")
    @classmethod
    def _decodable(cls, v):
        for item in v:
            wire.decode_number(item)
        return v

    def to_plfunction(self):
        return wire.decode_function(self.model_dump())

    @classmethod
    def from_plfunction(cls, f) -> "FunctionModel":
        return cls(**wire.encode_function(f))


class CaseModel(BaseModel):
    """Self-contained replayable inequality evaluation."""

    model_config = ConfigDict(extra="forbid")

    inequality: str
    functions: dict[str, FunctionModel]
    variant: Optional[str] = None
    direction: Optional[str] = None
    expected_margin: Optional[WireNumber] = None

    @field_validator("inequality")
    @classmethod
    def _known(cls, v):
        if v not in inequalities.INEQUALITIES:
            raise ValueError(f"unknown inequality {v!r}; "
                             f"known: {inequalities.INEQUALITIES}")
        return v


class GenModel(BaseModel):
    """Generator settings shared by all draws of a campaign."""

    model_config = ConfigDict(extra="forbid")

    n_breakpoints: int = Field(default=17, ge=3)
    value_scale: float = Field(default=1.0, ge=0)
    grid: Literal["uniform", "random"] = "uniform"


class CampaignModel(BaseModel):
    """Fully determines a run; equal campaigns produce identical reports."""

    model_config = ConfigDict(extra="forbid")

    mode: Literal["verify", "falsify", "replay", "sharpness"]
    inequalities: list[str] = Field(
        default_factory=lambda: list(inequalities.INEQUALITIES))
    trials: int = Field(default=100, ge=1)
    seed: int = 0
    arithmetic: Literal["rational", "float"] = "rational"
    tolerance: Optional[float] = None
    gen: GenModel = Field(default_factory=GenModel)
    budget: int = Field(default=10000, ge=1)
    drops: Optional[list[str]] = None
    expected_violations: Optional[list[str]] = None
    sharpness_weights: int = Field(default=5, ge=1)
    out: Optional[str] = None
    case: Optional[CaseModel] = None

    @field_validator("inequalities")
    @classmethod
    def _known(cls, v):
        for name in v:
            if name not in inequalities.INEQUALITIES:
                raise ValueError(f"unknown inequality {name!r}")
        return v


class ClassReportModel(BaseModel):
    kind: Literal["class"] = "class"
    class_name: str
    holds: bool
    tolerance: WireNumber
    violation_at: Optional[WireNumber] = None
    violation_magnitude: Optional[WireNumber] = None

    @classmethod
    def from_report(cls, r: classes.ClassReport) -> "ClassReportModel":
        enc = wire.encode_number
        return cls(class_name=r.class_name, holds=r.holds,
                   tolerance=enc(r.tolerance),
                   violation_at=None if r.violation_at is None
                   else enc(r.violation_at),
                   violation_magnitude=None if r.violation_magnitude is None
                   else enc(r.violation_magnitude))


class MWitnessModel(BaseModel):
    kind: Literal["m_witness"] = "m_witness"
    in_class: bool
    direction: str
    mean: WireNumber
    c_lo: Optional[WireNumber] = None
    c_hi: Optional[WireNumber] = None
    certificate: Optional[list[WireNumber]] = None

    @classmethod
    def from_witness(cls, w: classes.MWitness) -> "MWitnessModel":
        enc = wire.encode_number
        return cls(in_class=w.in_class, direction=w.direction,
                   mean=enc(w.mean),
                   c_lo=None if w.c_lo is None else enc(w.c_lo),
                   c_hi=None if w.c_hi is None else enc(w.c_hi),
                   certificate=None if w.certificate is None
                   else [enc(v) for v in w.certificate])


HypothesisModel = Union[ClassReportModel, MWitnessModel]


class VerdictModel(BaseModel):
    name: str
    lhs: WireNumber
    rhs: WireNumber
    margin: WireNumber
    holds: bool
    tolerance: WireNumber
    hypotheses_ok: bool
    hypothesis_reports: list[HypothesisModel] = Field(default_factory=list)
    details: dict[str, Any] = Field(default_factory=dict)

    @classmethod
    def from_verdict(cls, v: inequalities.InequalityVerdict) -> "VerdictModel":
        enc = wire.encode_number
        reports: list[HypothesisModel] = []
        for r in v.hypothesis_reports:
            if isinstance(r, classes.MWitness):
                reports.append(MWitnessModel.from_witness(r))
            else:
                reports.append(ClassReportModel.from_report(r))
        details = {}
        for key, val in v.details.items():
            if isinstance(val, Fraction):
                details[key] = enc(val)
            else:
                details[key] = val
        return cls(name=v.name, lhs=enc(v.lhs), rhs=enc(v.rhs),
                   margin=enc(v.margin), holds=v.holds,
                   tolerance=enc(v.tolerance),
                   hypotheses_ok=v.hypotheses_ok,
                   hypothesis_reports=reports, details=details)


class SearchResultModel(BaseModel):
    inequality: str
    dropped_hypotheses: list[str]
    best_margin: float
    best_inputs: dict[str, FunctionModel]
    iterations_used: int
    violated: bool
    trace: list[tuple[int, float]]
    seed: int
    variant: Optional[str] = None

    @classmethod
    def from_result(cls, r) -> "SearchResultModel":
        return cls(inequality=r.inequality,
                   dropped_hypotheses=list(r.dropped_hypotheses),
                   best_margin=r.best_margin,
                   best_inputs={k: FunctionModel(**rec)
                                for k, rec in r.best_inputs.items()},
                   iterations_used=r.iterations_used, violated=r.violated,
                   trace=list(r.trace), seed=r.seed, variant=r.variant)


class AggregateModel(BaseModel):
    """Per-inequality rollup of a verify/sharpness campaign."""

    inequality: str
    trials: int
    passes: int
    failures: int
    min_margin: WireNumber
    min_margin_case: Optional[CaseModel] = None
    failing_cases: list[CaseModel] = Field(default_factory=list)


class FalsifyEntryModel(BaseModel):
    """Outcome of one hypothesis-drop search."""

    key: str
    status: Literal["FOUND-VIOLATION", "NO-VIOLATION-FOUND"]
    expected_violation: bool
    result: SearchResultModel
    witness: Optional[CaseModel] = None


class RunReportModel(BaseModel):
    """One structured document per run; stable field order, inline cases."""

    campaign: CampaignModel
    ok: bool
    verify: Optional[list[AggregateModel]] = None
    falsify: Optional[list[FalsifyEntryModel]] = None
    replay: Optional[VerdictModel] = None
    replay_margin_matches: Optional[bool] = None
    wall_time_s: float = 0.0
    version: str = "1"


class CheckRequest(BaseModel):
    """POST /check body: evaluate one inequality on inline functions."""

    model_config = ConfigDict(extra="forbid")

    case: CaseModel
    arithmetic: Literal["rational", "float"] = "rational"
    tolerance: Optional[float] = None


class ClassifyRequest(BaseModel):
    """POST /classify body: test one function against one class."""

    model_config = ConfigDict(extra="forbid")

    function: FunctionModel
    class_name: Literal["convex", "concave", "symmetric", "nonnegative",
                        "nondecreasing_on", "nonincreasing_on", "M+", "M-"]
    on: Optional[list[WireNumber]] = Field(default=None, min_length=2,
                                           max_length=2)
    tolerance: Optional[float] = None


class ClassifyResponse(BaseModel):
    report: Optional[ClassReportModel] = None
    witness: Optional[MWitnessModel] = None


class SearchRequest(BaseModel):
    model_config = ConfigDict(extra="forbid")

    inequality: str
    dropped_hypotheses: list[str] = Field(default_factory=list)
    n_breakpoints: int = Field(default=17, ge=3)
    budget: int = Field(default=2000, ge=1)
    seed: int = 0
    variant: str = inequalities.PLUS_NONDECREASING
