"""Request and response models for the analysis service.

Deep report payloads (analysis bundles, sweep aggregates, leaderboards)
are carried as plain JSON objects under the versioned "report-v1"
schema documented in the README; the envelopes here stay typed.
"""

from __future__ import annotations

from typing import Any, Dict, List, Literal, Optional

from pydantic import BaseModel, Field, model_validator

FamilyName = Literal[
    "and", "or", "parity", "dictator", "majority", "tribes",
    "example-h", "compose", "iterate", "random",
]


class FamilySpec(BaseModel):
    """Parameters naming one constructed function."""

    family: FamilyName
    n: Optional[int] = None
    m: Optional[int] = None
    count: Optional[int] = None
    k: Optional[int] = None
    mask: Optional[int] = None
    seed: Optional[int] = None
    depth: Optional[int] = None
    outer_bfn1: Optional[str] = None
    inner_bfn1: Optional[str] = None


class FunctionSource(BaseModel):
    """Exactly one of: a BFN1 payload, or a family specification."""

    bfn1: Optional[str] = None
    family: Optional[FamilySpec] = None

    @model_validator(mode="after")
    def _exactly_one(self) -> "FunctionSource":
        if (self.bfn1 is None) == (self.family is None):
            raise ValueError("provide exactly one of bfn1 or family")
        return self


class ConstructRequest(BaseModel):
    spec: FamilySpec


class ConstructResponse(BaseModel):
    n: int
    bfn1: str
    digest: str


class AnalyzeRequest(BaseModel):
    source: FunctionSource
    eps: float = 0.25
    include_spectrum: bool = True
    checks: List[str] = Field(default_factory=list)


class AnalyzeResponse(BaseModel):
    bundle: Dict[str, Any]


class VerifyScope(BaseModel):
    kind: Literal["function", "exhaustive", "random", "family"]
    bfn1: Optional[str] = None
    family: Optional[FamilySpec] = None
    n: Optional[int] = None
    count: Optional[int] = None
    seed: int = 0

    @model_validator(mode="after")
    def _consistent(self) -> "VerifyScope":
        if self.kind == "function" and self.bfn1 is None and self.family is None:
            raise ValueError("function scope needs bfn1 or family")
        if self.kind in ("exhaustive", "random") and self.n is None:
            raise ValueError(f"{self.kind} scope needs n")
        if self.kind == "random" and self.count is None:
            raise ValueError("random scope needs count")
        if self.kind == "family" and self.family is None:
            raise ValueError("family scope needs a family spec")
        return self


class VerifyRequest(BaseModel):
    scope: VerifyScope
    checks: List[str] = Field(default_factory=lambda: ["all"])
    rho_grid: Optional[List[float]] = None
    eps_grid: Optional[List[float]] = None
    friedgut_eps: Optional[List[float]] = None
    parallel: Optional[int] = None
    include_rows: bool = False


class VerifyResponse(BaseModel):
    report: Dict[str, Any]
    failed: bool
    rows: Optional[List[List[Any]]] = None


class SearchStrategy(BaseModel):
    kind: Literal["exhaustive", "random", "compose-greedy"]
    n: Optional[int] = None
    count: Optional[int] = None
    seed: int = 0
    depth: int = 2

    @model_validator(mode="after")
    def _consistent(self) -> "SearchStrategy":
        if self.kind == "exhaustive" and self.n is None:
            raise ValueError("exhaustive strategy needs n")
        if self.kind == "random" and (self.n is None or self.count is None):
            raise ValueError("random strategy needs n and count")
        return self


class SearchRequest(BaseModel):
    objective: str
    strategy: SearchStrategy
    budget: Optional[int] = None
    parallel: Optional[int] = None


class SearchResponse(BaseModel):
    report: Dict[str, Any]


class SampleRequest(BaseModel):
    source: FunctionSource
    count: int = 1
    seed: int = 0


class SampleResponse(BaseModel):
    n: int
    masks: List[int]


class CheckInfo(BaseModel):
    id: str
    kind: str
    description: str
