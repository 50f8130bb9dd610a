"""Request/response models shared by the HTTP service and the CLI.

Complex numbers travel as two-element [re, im] arrays everywhere, matching
the state file format.
"""

from __future__ import annotations

from typing import Any, Literal, Optional, Union

from pydantic import BaseModel, ConfigDict, Field, model_validator

CPair = tuple[float, float]


class FockModel(BaseModel):
    model_config = ConfigDict(extra="forbid")
    dim: int = 64
    guard: int = 8


class CouplingsModel(BaseModel):
    model_config = ConfigDict(extra="forbid")
    beta: CPair = (0.0, 0.0)
    beta_plus: CPair = (0.0, 0.0)
    beta_minus: CPair = (0.0, 0.0)
    beta_3: CPair = (0.0, 0.0)


class ClassifyRequest(BaseModel):
    model_config = ConfigDict(extra="forbid")
    couplings: CouplingsModel = Field(default_factory=CouplingsModel)
    tol: float = 1e-10


class ClassifyResponse(BaseModel):
    case: str
    scenario: str
    b: CPair
    family_normal: bool
    x: float
    rho: float
    nu: float
    c_plus: CPair


FamilyName = Literal[
    "auto",
    "annihilator",
    "series",
    "general",
    "displacement",
    "bneq0",
    "intelligent",
    "intelligent-polar",
]


class SolveRequest(BaseModel):
    model_config = ConfigDict(extra="forbid")
    preset: Optional[str] = None
    fock: FockModel = Field(default_factory=FockModel)
    twoj: int = 1
    couplings: CouplingsModel = Field(default_factory=CouplingsModel)
    mtilde: Optional[list[list[CPair]]] = None
    m_list: Optional[list[float]] = None
    family: FamilyName = "auto"
    constants: Optional[Union[Literal["displacement"], list[list[CPair]]]] = None
    coeffs: Optional[list[CPair]] = None

    @model_validator(mode="after")
    def _square_mtilde(self):
        if self.mtilde is not None:
            k = len(self.mtilde)
            if k == 0 or any(len(row) != k for row in self.mtilde):
                raise ValueError("mtilde must be a square matrix")
        return self


class ResidualModel(BaseModel):
    relative_residual: float
    tail_mass: float
    guarded_dim: int
    passed: bool


class SolveResponse(BaseModel):
    document: dict
    residual: ResidualModel
    family: str
    k: int


class VerifyRequest(BaseModel):
    model_config = ConfigDict(extra="forbid")
    suite: Optional[Literal["smoke", "full"]] = None
    seed: Optional[int] = None
    document: Optional[dict] = None
    tol: float = 1e-8

    @model_validator(mode="after")
    def _one_mode(self):
        if (self.suite is None) == (self.document is None):
            raise ValueError("provide exactly one of 'suite' or 'document'")
        return self


class CheckRow(BaseModel):
    name: str
    passed: bool
    detail: str


class VerifyResponse(BaseModel):
    passed: bool
    results: list[CheckRow]
    lines: list[str]


class CatalogResponse(BaseModel):
    presets: list[dict[str, Any]]
