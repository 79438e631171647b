from __future__ import annotations

from typing import Literal, Optional

from pydantic import BaseModel, ConfigDict, Field, PositiveFloat, PositiveInt, field_validator

from app.core.config import settings
from app.schemas.grid import GridSpec, PhysicalUnits
from app.schemas.potential import PotentialSpec

MAX_SEED = 2**64 - 1


class RunConfig(BaseModel):
    """
    Config file for the kernel, deficit-sweep and scaling-check commands.
    Published as JSON schema by `mublab schema`.
    """

    model_config = ConfigDict(extra="forbid")

    units: PhysicalUnits = Field(default_factory=PhysicalUnits)
    grid: GridSpec
    potential: PotentialSpec
    t_list: list[PositiveFloat] = Field(min_length=1)
    seed: Optional[int] = Field(default=None, ge=0, le=MAX_SEED)
    window: float = Field(default_factory=lambda: settings.DEFAULT_WINDOW, gt=0.0, le=1.0)
    output_path: Optional[str] = None

    method: Literal["trotter", "oracle", "closed_form"] = "oracle"
    slice_rule: Literal["spectral", "sampled", "midpoint"] = "spectral"
    n_slices: PositiveInt = 64
    matched: bool = True
    points: list[tuple[float, float]] = Field(default_factory=lambda: [(0.5, -0.2)])

    @field_validator("t_list")
    @classmethod
    def _check_order(cls, value: list[float]) -> list[float]:
        if any(b >= a for a, b in zip(value, value[1:])):
            raise ValueError("t_list must be strictly decreasing")
        return value
