"""Request and response shapes for the HTTP service.

The response models mirror the serialized report field for field, so a
JSON body returned here re-parses into the same structures the in-process
path produces. Requests reject unknown fields; a silently ignored typo in
a flag name would otherwise change the meaning of a run.
"""

from __future__ import annotations

from typing import Literal

from pydantic import BaseModel, ConfigDict, Field


class ReportRequest(BaseModel):
    model_config = ConfigDict(extra="forbid")

    entries: list[list[str]]
    n: int | None = None
    n_tensor: int = Field(default=1, ge=1)
    kind: Literal["sphere", "torus"] = "sphere"
    faces: Literal["all", "maximal", "jump"] = "all"
    oracle: bool = False
    max_bits: int = Field(default=20, ge=1)


class IsoRequest(BaseModel):
    model_config = ConfigDict(extra="forbid")

    kind: Literal["sphere3", "torus2"]
    theta: str
    n: int = Field(ge=1)
    theta_prime: str
    n_prime: int = Field(ge=1)


class CongruenceRequest(BaseModel):
    model_config = ConfigDict(extra="forbid")

    entries: list[list[str]]
    entries_prime: list[list[str]]


class InputEcho(BaseModel):
    kind: str
    n: int
    entries: list[list[str]]
    n_tensor: int
    faces: str


class ProfileSection(BaseModel):
    ell: int
    h: int
    pi_degree: int
    q: list[int]
    kernel_basis: list[list[int]]


class DecompositionSection(BaseModel):
    free_rank: int
    factors: list[str]
    witness: list[list[int]]


class SkeletonFaceRow(BaseModel):
    face: list[int]
    torus_rank: int
    cover_degree: int


class SkeletonSection(BaseModel):
    dim_x: int
    sphere_sufficient: bool
    faces: list[SkeletonFaceRow]


class FiberRow(BaseModel):
    face: list[int]
    block_size: int
    block_count: int
    total_dim: int
    k0_rank: int


class FinitenessSection(BaseModel):
    algebraically_finite: bool
    topologically_finite: bool


class OracleRow(BaseModel):
    checked_quantity: str
    main_value: int
    oracle_value: int
    agrees: bool


class ReportResponse(BaseModel):
    input: InputEcho
    profile: ProfileSection
    decomposition: DecompositionSection
    jump_faces: list[list[int]]
    azumaya_faces: list[list[int]]
    center_skeleton: SkeletonSection
    fibers: list[FiberRow]
    finiteness: FinitenessSection
    oracles: list[OracleRow] | None


class CharClassValue(BaseModel):
    modulus: int
    residue: int


class IsoResponse(BaseModel):
    kind: str
    theta: str
    n: int
    theta_prime: str
    n_prime: int
    isomorphic: bool
    relation: str | None
    shift: int | None
    classes: list[CharClassValue] | None


class CongruenceResponse(BaseModel):
    n: int
    n_prime: int
    common_denominator: int | None
    divisors: list[int] | None
    zero_rank: int | None
    divisors_prime: list[int] | None
    zero_rank_prime: int | None
    congruent: bool
    witness: list[list[int]] | None


class HealthResponse(BaseModel):
    status: Literal["ok"]
