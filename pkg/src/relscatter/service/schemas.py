"""Request/response models for the scattering service."""

from __future__ import annotations

from typing import Literal

from pydantic import BaseModel, Field, model_validator

UnitMode = Literal["mc2", "raw"]
ModelName = Literal["dirac", "kg"]
GeometryName = Literal["step", "barrier", "profile"]


class ProfileSpec(BaseModel):
    """General piecewise-constant profile: region heights left to right and
    the interior interface positions between them."""

    heights: list[float]
    edges: list[float]

    @model_validator(mode="after")
    def _shape(self) -> "ProfileSpec":
        if len(self.edges) != len(self.heights) - 1:
            raise ValueError("edges must number one fewer than heights")
        return self


class ParticleParams(BaseModel):
    model: ModelName = "dirac"
    energy: float
    mass: float = 1.0
    units: UnitMode = "mc2"

    @model_validator(mode="after")
    def _units(self) -> "ParticleParams":
        if self.units == "mc2" and self.mass == 0.0:
            raise ValueError("raw units are mandatory for massless particles")
        if self.units == "mc2" and self.mass != 1.0:
            raise ValueError(
                "units=mc2 fixes the mass scale to 1; use units=raw to vary it"
            )
        return self


class ScatterRequest(ParticleParams):
    geometry: GeometryName = "step"
    v0: float | None = None
    width: float | None = None
    profile: ProfileSpec | None = None

    @model_validator(mode="after")
    def _geometry(self) -> "ScatterRequest":
        if self.geometry == "profile":
            if self.profile is None:
                raise ValueError("geometry=profile needs a profile")
        elif self.v0 is None:
            raise ValueError("step/barrier geometry needs v0")
        if self.geometry == "barrier" and self.width is None:
            raise ValueError("barrier geometry needs a width")
        return self


class RegionOut(BaseModel):
    v: float
    regime: str
    branch: str
    wave: Literal["propagating", "evanescent"]
    momentum: float
    boundary: str | None = None
    amp_plus_re: float
    amp_plus_im: float
    amp_minus_re: float
    amp_minus_im: float


class ScatterResponse(BaseModel):
    model: ModelName
    r: float
    t: float
    b_re: float
    b_im: float
    asserted: bool
    regions: list[RegionOut]


class GridSpec(BaseModel):
    v0_min: float
    v0_max: float
    count: int = Field(ge=2)
    special_points: bool = True

    @model_validator(mode="after")
    def _ordered(self) -> "GridSpec":
        if not self.v0_min < self.v0_max:
            raise ValueError("grid needs v0_min < v0_max")
        return self


class SweepRequest(ParticleParams):
    geometry: Literal["step", "barrier"] = "step"
    width: float | None = None
    grid: GridSpec

    @model_validator(mode="after")
    def _width(self) -> "SweepRequest":
        if self.geometry == "barrier" and self.width is None:
            raise ValueError("barrier geometry needs a width")
        return self


class SweepRow(BaseModel):
    v0: float
    r: float
    regime: str
    annotation: str


class SweepResponse(BaseModel):
    model: ModelName
    geometry: str
    energy: float
    mass: float
    rows: list[SweepRow]
    alleys: list[float]
    gap: tuple[float, float] | None
    resonances: list[float]
    jump: float | None


class VerifyRequest(BaseModel):
    seed: int = 0
    samples: int = Field(default=200, ge=1)
    inject: str | None = None


class PropertyOut(BaseModel):
    name: str
    passed: bool
    checks: int
    max_error: float
    tolerance: float
    counterexample: str | None


class VerifyResponse(BaseModel):
    passed: bool
    seed: int
    samples: int
    properties: list[PropertyOut]


class FiguresRequest(BaseModel):
    fig: Literal[2, 3, 5, 6]


class FiguresResponse(BaseModel):
    files: dict[str, str]
