"""Request and response schemas for the HTTP endpoints.

Types are validated here (wrong shapes give 422); semantic constraints
such as budget ranges, probability bounds, or format rules live in the
core modules so both front ends report them identically (400 here,
exit 1 on the command line).
"""
from __future__ import annotations

from typing import Literal

from pydantic import BaseModel, ConfigDict, Field


class SolveRequest(BaseModel):
    algo: Literal["oracle", "maxleaf", "vi", "mw", "cw", "tw-exact", "tw-apx"]
    graph: str | None = None
    expr: str | None = None
    td: str | None = None
    eps: float | None = None
    k: int | None = None
    x: int | None = None
    caps: dict[str, int] = Field(default_factory=dict)


class SolveResponse(BaseModel):
    command: str
    algo: str
    n: int
    budget: int
    pairs: int
    witness: list[int]
    optimal: bool
    wall_ms: float
    eps: float | None = None
    bound: int | None = None
    decision: bool | None = None


class CountRequest(BaseModel):
    expr: str
    k: int | None = None
    caps: dict[str, int] = Field(default_factory=dict)


class CountRow(BaseModel):
    k: int
    min: int
    count: int
    witness: list[int]


class CountResponse(BaseModel):
    command: str
    n: int
    width: int
    rows: list[CountRow]


class ParamsRequest(BaseModel):
    graph: str


class ParamsResponse(BaseModel):
    command: str
    n: int
    m: int
    fes: int
    max_degree: int
    components: int
    expanded_n: int


class ReduceRequest(BaseModel):
    source: str
    caps: dict[str, int] = Field(default_factory=dict)


class ReduceResponse(BaseModel):
    command: str
    kind: str
    constants: dict[str, int]
    weighted_n: int | None = None
    expanded_n: int
    roles: list[list]
    instance: str


class VerifyRequest(BaseModel):
    graph: str
    deleted: list[int]
    k: int | None = None
    x: int | None = None


class VerifyResponse(BaseModel):
    model_config = ConfigDict(populate_by_name=True)

    command: str
    n: int
    deleted: list[int]
    pairs: int
    budget: int | None = None
    size_ok: bool | None = None
    bound: int | None = None
    pairs_ok: bool | None = None
    passed: bool = Field(alias="pass")


class GenerateRequest(BaseModel):
    n: int
    p: float
    seed: int


class GenerateResponse(BaseModel):
    command: str
    n: int
    m: int
    seed: int
    graph: str


class HealthResponse(BaseModel):
    status: str
    version: str
