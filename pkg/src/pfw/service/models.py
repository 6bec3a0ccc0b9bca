"""Pydantic request/response models for the workbench service."""

from __future__ import annotations

from typing import Any, Optional

from pydantic import BaseModel, Field


class ValidateRequest(BaseModel):
    document: dict


class ValidateResponse(BaseModel):
    valid: bool
    kind: str
    name: str


class ConstructRequest(BaseModel):
    op: str
    args: dict = Field(default_factory=dict)


class ConstructResponse(BaseModel):
    op: str
    result: Any


class CheckRequest(BaseModel):
    filter: Optional[str] = None
    seed: int = 0
    max_ji: Optional[int] = None
    max_universe: Optional[int] = None
    samples: Optional[int] = None
    caps: Optional[dict] = None


class GenRequest(BaseModel):
    kind: str
    seed: int = 0
    count: int = 1
    params: dict = Field(default_factory=dict)


class GenResponse(BaseModel):
    instances: list[dict]


class RenderRequest(BaseModel):
    document: dict


class RenderResponse(BaseModel):
    dot: str


class CapsResponse(BaseModel):
    max_ji: int
    max_elements: int
    max_congruences: int
    max_cideals: int
    max_enum: int
    max_compact_scan: int


class ErrorDetail(BaseModel):
    type: str
    message: str
    path: Optional[str] = None
