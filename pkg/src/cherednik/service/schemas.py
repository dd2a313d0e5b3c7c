"""Pydantic request/response models for the verification service."""

from __future__ import annotations

from typing import Any, Literal, Optional, Union

from pydantic import BaseModel, Field

Number = Union[int, float, str]  # rationals accepted as strings like "1/10"


class VerificationReport(BaseModel):
    check: str
    inputs: dict[str, Any]
    status: Literal["pass", "fail", "inconclusive"]
    witness: Optional[Any] = None
    data: dict[str, Any] = Field(default_factory=dict)
    wall_time_ms: float


class DunklRequest(BaseModel):
    group: str = "S3"
    deg: int = Field(default=6, ge=0, le=10)


class PbwRequest(BaseModel):
    group: str = "Z2"
    deg: int = Field(default=3, ge=0, le=4)


class EulerRequest(BaseModel):
    group: str = "Z2"


class SatakeRequest(BaseModel):
    group: str = "Z2"
    deg: int = Field(default=4, ge=1, le=5)


class ConsistencyRequest(BaseModel):
    group: str = "Z2"
    pairs: int = Field(default=100, ge=1, le=2000)
    max_len: int = Field(default=4, ge=1, le=6)
    deg: int = Field(default=5, ge=0, le=8)
    seed: int = 0


class QuasiRequest(BaseModel):
    m: int = Field(default=1, ge=0, le=16)
    deg: int = Field(default=12, ge=0, le=64)


class AllRequest(BaseModel):
    quick: bool = False
    seed: int = 0
    steps: int = Field(default=4096, ge=4, le=1_000_000)
    tol: float = 1e-8
    workers: int = Field(default=4, ge=1, le=32)


class MonodromyRequest(BaseModel):
    n: int = Field(default=2, ge=2, le=12)
    c: Optional[list[Number]] = None
    eta: Number = 0
    steps: int = Field(default=4096, ge=4, le=1_000_000)
    tol: float = 1e-8


class TauRequest(BaseModel):
    n: int = Field(default=2, ge=2, le=12)
    c: Optional[list[Number]] = None
    eta: Number = 0


class RootsRequest(BaseModel):
    n: int = Field(default=2, ge=2, le=12)


class HeckeDimRequest(BaseModel):
    kind: Literal["cyclic", "a2"] = "cyclic"
    n: int = Field(default=4, ge=2, le=8)
    trunc: int = Field(default=2, ge=1, le=3)


class SignatureRequest(BaseModel):
    signature: str = "g=0;2,3,3"
    max_cosets: int = Field(default=10_000, ge=1, le=1_000_000)


class ObstructionRequest(BaseModel):
    signature: str = "g=0;2,3,3"
