"""Pydantic request/response models for the classification service."""

from __future__ import annotations

from pydantic import BaseModel, ConfigDict, Field


class ClassifyRequest(BaseModel):
    name: str = "group"
    generators: list[str] = Field(min_length=1)
    max_order: int | None = None


class ClassificationInfo(BaseModel):
    case: str
    line: list[float] | None = None
    reflection: list[list[float]] | None = None
    chiral_element: str | None = None
    conjugator: str | None = None
    note: str | None = None


class ElementRow(BaseModel):
    element: str
    trace: float
    det: int
    order: int
    has_invariant_line: bool


class ChiralityRow(BaseModel):
    element: str
    m: int
    a1: int
    a2: int
    isoclinic: bool
    lk_sign: int
    lk_class: int


class InputEcho(BaseModel):
    generators: list[str]
    max_order: int | None = None


class Report(BaseModel):
    model_config = ConfigDict(populate_by_name=True)

    schema_version: int = Field(1, alias="schema")
    name: str
    input: InputEcho
    group_order: int
    classification: ClassificationInfo
    elements: list[ElementRow]
    chirality: list[ChiralityRow]
    timing_ms: float


class SweepRequest(BaseModel):
    family: str
    ranges: dict[str, str] = Field(default_factory=dict)
    expect_paper: bool = False


class SweepItem(BaseModel):
    params: dict[str, int | str | None]
    expected: str | None = None
    match: bool | None = None
    report: Report


class SweepSummary(BaseModel):
    total: int
    counts: dict[str, int]
    mismatches: list[dict[str, str]]


class SweepResponse(BaseModel):
    model_config = ConfigDict(populate_by_name=True)

    schema_version: int = Field(1, alias="schema")
    family: str
    ranges: dict[str, str]
    expect_paper: bool
    reports: list[SweepItem]
    summary: SweepSummary


class InvariantRequest(BaseModel):
    element: str


class InvariantResponse(BaseModel):
    model_config = ConfigDict(populate_by_name=True)

    schema_version: int = Field(1, alias="schema")
    element: str
    canonical: str
    m: int
    a1: int
    a2: int
    isoclinic: bool
    lk_sign: int
    lk_class: int


class VerifyRequest(BaseModel):
    only: str | None = None


class ClaimRow(BaseModel):
    name: str
    passed: bool
    detail: str


class VerifyResponse(BaseModel):
    model_config = ConfigDict(populate_by_name=True)

    schema_version: int = Field(1, alias="schema")
    claims: list[ClaimRow]
    all_passed: bool


class HealthResponse(BaseModel):
    status: str
    version: str
