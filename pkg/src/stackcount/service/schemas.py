"""Pydantic request/response models for the HTTP service.

Wire formats match the CLI's JSON: forms as {"deg": D, "coeffs": [...]}
(null for the zero form), places as "inf" or {"coeffs": [...]}, exact
rationals as "a/b" strings.
"""

from __future__ import annotations

from pydantic import BaseModel, Field


class FormJSON(BaseModel):
    deg: int
    coeffs: list[int]


class ModelRequest(BaseModel):
    p: int
    n: int
    a4: FormJSON | None = None
    a6: FormJSON | None = None
    seed: int = 0


class SeriesRequest(BaseModel):
    p: int
    weights: list[int]
    n: int
    forms: list[FormJSON | None]
    seed: int = 0


class HeightRequest(SeriesRequest):
    require_minimal: bool = False


class ClassifyResponse(BaseModel):
    fibers: list[dict]
    summary: dict
    height: dict


class MinimalizeResponse(BaseModel):
    minimal: dict
    h: dict | None
    defect: int


class HeightResponse(BaseModel):
    ht: int
    ht_stable: str
    locals: list[dict]
    isotrivial: bool


class MotiveRequest(BaseModel):
    kind: str = Field(pattern="^(wmin|inertia|stratum|poly1|poly)$")
    weights: list[int] | None = None
    n: int = 0
    gamma: str | None = None
    d1: int = 0
    d2: int = 0
    q: int | None = None


class MotiveResponse(BaseModel):
    kind: str
    cls: dict = Field(alias="class")
    pretty: str
    specialized: dict | None = None

    model_config = {"populate_by_name": True}


class ZetaRequest(BaseModel):
    weights: list[int]
    order: int = 8
    q: int | None = None


class ZetaResponse(BaseModel):
    weights: list[int]
    order: int
    coefficients: list[dict]
    pretty: list[str]
    ambient_identity: bool
    specialized: list[str] | None = None


class CountRequest(BaseModel):
    q: int
    b_exp: int
    mode: str = Field(pattern="^(weighted|unweighted|kodaira)$")
    theta: str | None = None


class CensusRequest(BaseModel):
    p: int
    weights: list[int]
    n: int
    gamma: str | None = None
    workers: int = 1


class VerifyRequest(BaseModel):
    workers: int = 1
    full: bool = False
