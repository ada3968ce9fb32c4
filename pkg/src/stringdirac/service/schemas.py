"""Request and response models for the HTTP service.

The flat parameter block mirrors the CLI flags one-to-one; `split`
converts it into the three core bundles.  Responses are plain data with
no wall-time or host-specific fields, keeping renderings reproducible.
"""

from __future__ import annotations

from typing import Literal

from pydantic import BaseModel, ConfigDict, Field

from ..params import CouplingSet, QuantumNumbers, StringBackground
from ..verify import DEFAULT_SEED

ModeName = Literal["canonical", "strict-omega2"]


class ParamsModel(BaseModel):
    model_config = ConfigDict(extra="forbid")

    rho: float = Field(default=1.0, gt=0.0, le=1.0)
    mass: float = Field(default=1.0, gt=0.0)
    charge: float = 1.0
    a0: float = 0.0
    s1: float = 0.0
    s2: float = 0.0
    m: int = 0
    k: float = 0.0
    n: int = Field(default=0, ge=0)
    mode: ModeName = "canonical"

    def split(self) -> tuple[StringBackground, CouplingSet, QuantumNumbers]:
        bg = StringBackground(rho=self.rho)
        cp = CouplingSet(
            mass=self.mass, charge=self.charge, a0=self.a0, s1=self.s1, s2=self.s2
        )
        qn = QuantumNumbers(m=self.m, k=self.k, n=self.n)
        return bg, cp, qn


class DeriveRequest(BaseModel):
    model_config = ConfigDict(extra="forbid")
    params: ParamsModel = ParamsModel()


class SpectrumRequest(BaseModel):
    model_config = ConfigDict(extra="forbid")
    params: ParamsModel = ParamsModel()
    n_max: int | None = Field(default=None, ge=0)


class WavefunctionRequest(BaseModel):
    model_config = ConfigDict(extra="forbid")
    params: ParamsModel = ParamsModel()
    grid_n: int = Field(default=2001, ge=17)
    r_max: float | None = Field(default=None, gt=0.0)


class SurfaceRequest(BaseModel):
    model_config = ConfigDict(extra="forbid")
    params: ParamsModel = ParamsModel()
    axes: list[str] = Field(min_length=2, max_length=2)
    range1: list[float] | None = Field(default=None, min_length=2, max_length=2)
    range2: list[float] | None = Field(default=None, min_length=2, max_length=2)
    res1: int = Field(default=21, ge=2)
    res2: int = Field(default=21, ge=2)


class OracleRequest(BaseModel):
    model_config = ConfigDict(extra="forbid")
    params: ParamsModel = ParamsModel()
    oracle_points: int = Field(default=8000, ge=64)
    n_eigen: int = Field(default=3, ge=1)
    r_max: float | None = Field(default=None, gt=0.0)
    m_values: list[int] | None = None
    tolerance: float = Field(default=5e-4, gt=0.0)


class VerifyRequest(BaseModel):
    model_config = ConfigDict(extra="forbid")
    suites: list[str] | None = None
    seed: int = DEFAULT_SEED
    oracle_points: int = Field(default=8000, ge=64)
    algebra_points: int = Field(default=16384, ge=1024)


class DerivedResponse(BaseModel):
    j: float
    omega: float
    mixing_angle: float
    mixing_norm: float
    centrifugal_norm: float
    branch_shift: float
    casimir_lower: float
    casimir_upper: float
    casimir_root: float
    origin_exponent: float
    casimir_root_upper: float
    origin_exponent_upper: float
    coulomb_strength: float
    degenerate_branch: bool


class SpectrumRowModel(BaseModel):
    n: int
    m: int
    k: float
    delta: float
    B: float
    eta: float
    E_plus: float | None
    E_minus: float | None
    bound_flag: int


class SpectrumResponse(BaseModel):
    mode: ModeName
    rows: list[SpectrumRowModel]


class WavefunctionResponse(BaseModel):
    mode: ModeName
    eta: float
    E_plus: float
    E_minus: float
    norm_constant: float
    node_count_lower: int
    r: list[float]
    y_lower: list[float]
    y_upper: list[float]


class SurfaceResponse(BaseModel):
    axis1: str
    axis2: str
    values1: list[float]
    values2: list[float]
    E_plus: list[list[float | None]]
    E_minus: list[list[float | None]]
    flag: list[list[int]]


class OracleLevelModel(BaseModel):
    m: int
    n: int
    eta_closed: float
    lambda_closed: float
    lambda_fd: float
    rel_deviation: float
    passed: bool


class OracleResponse(BaseModel):
    tolerance: float
    levels: list[OracleLevelModel]
    skipped: list[dict]
    passed: bool


class CheckModel(BaseModel):
    name: str
    value: float
    tolerance: float
    passed: bool


class SuiteModel(BaseModel):
    name: str
    checks: list[CheckModel]
    passed: bool


class VerifyResponse(BaseModel):
    seed: int
    suites: list[SuiteModel]
    passed: bool
