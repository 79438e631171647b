from __future__ import annotations

from typing import Literal

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, PositiveFloat, model_validator

MAX_LATTICE_SITES = 2**20


class LatticeConfig(BaseModel):
    """Periodic spatial lattice with D sites per axis, spacing a and field mass m (hbar = c = 1)."""

    model_config = ConfigDict(frozen=True)

    dims: Literal[1, 3] = 1
    sites_per_dim: int = Field(ge=2)
    spacing: PositiveFloat = 1.0
    field_mass: float = Field(default=0.0, ge=0.0)
    boundary: Literal["periodic"] = "periodic"

    @model_validator(mode="after")
    def _check_size(self) -> "LatticeConfig":
        if self.total_sites > MAX_LATTICE_SITES:
            raise ValueError(f"lattice has {self.total_sites} sites, limit is {MAX_LATTICE_SITES}")
        return self

    @property
    def total_sites(self) -> int:
        return self.sites_per_dim**self.dims

    @property
    def shape(self) -> tuple[int, ...]:
        return (self.sites_per_dim,) * self.dims

    @property
    def cell_volume(self) -> float:
        return self.spacing**self.dims

    @property
    def side_length(self) -> float:
        return self.sites_per_dim * self.spacing


class FieldConfig(BaseModel):
    """
    Real field configuration. JSON form:
    {"dims": d, "sites": D, "spacing": a, "mass": m, "values": [...]}
    with values in row-major site order.
    """

    dims: Literal[1, 3] = 1
    sites: int = Field(ge=2)
    spacing: PositiveFloat = 1.0
    mass: float = Field(default=0.0, ge=0.0)
    values: list[float]

    @model_validator(mode="after")
    def _check_values(self) -> "FieldConfig":
        expected = self.sites**self.dims
        if expected > MAX_LATTICE_SITES:
            raise ValueError(f"lattice has {expected} sites, limit is {MAX_LATTICE_SITES}")
        if len(self.values) != expected:
            raise ValueError(f"expected {expected} field values, got {len(self.values)}")
        if not all(np.isfinite(self.values)):
            raise ValueError("field values must be finite")
        return self

    @property
    def lattice(self) -> LatticeConfig:
        return LatticeConfig(dims=self.dims, sites_per_dim=self.sites, spacing=self.spacing, field_mass=self.mass)

    def array(self) -> np.ndarray:
        return np.asarray(self.values, dtype=float).reshape(self.lattice.shape)

    @classmethod
    def from_array(cls, lattice: LatticeConfig, values: np.ndarray) -> "FieldConfig":
        values = np.asarray(values, dtype=float)
        if values.shape != lattice.shape:
            raise ValueError(f"expected array of shape {lattice.shape}, got {values.shape}")
        return cls(
            dims=lattice.dims,
            sites=lattice.sites_per_dim,
            spacing=lattice.spacing,
            mass=lattice.field_mass,
            values=values.ravel().tolist(),
        )


class FieldPair(BaseModel):
    alpha: FieldConfig
    beta: FieldConfig
