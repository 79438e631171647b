from __future__ import annotations

import math
from typing import Literal

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, PositiveFloat, model_validator

MIN_GRID_POINTS = 8


class PhysicalUnits(BaseModel):
    """Values of hbar and the particle mass used by every kernel formula."""

    model_config = ConfigDict(frozen=True)

    hbar: PositiveFloat = 1.0
    mass: PositiveFloat = 1.0


class GridSpec(BaseModel):
    """
    Uniform periodic grid on [x_min, x_max). Node j sits at x_min + j*spacing;
    x_max itself is the periodic image of x_min.
    """

    model_config = ConfigDict(frozen=True)

    n_points: int = Field(ge=MIN_GRID_POINTS)
    x_min: float
    x_max: float
    boundary: Literal["periodic"] = "periodic"

    @model_validator(mode="after")
    def _check_interval(self) -> "GridSpec":
        if not self.x_max > self.x_min:
            raise ValueError("x_max must be greater than x_min")
        return self

    @property
    def length(self) -> float:
        return self.x_max - self.x_min

    @property
    def spacing(self) -> float:
        return self.length / self.n_points

    @property
    def center(self) -> float:
        return 0.5 * (self.x_min + self.x_max)

    def points(self) -> np.ndarray:
        return self.x_min + self.spacing * np.arange(self.n_points)

    def momenta(self, units: PhysicalUnits) -> np.ndarray:
        """
        Spectral momenta hbar*2*pi*k/L in FFT order (k = 0, 1, ..., -1).
        """
        return units.hbar * 2.0 * np.pi * np.fft.fftfreq(self.n_points, d=self.spacing)

    def scaled(self, factor: float) -> "GridSpec":
        """Same node count with every coordinate multiplied by `factor` (> 0)."""
        if factor <= 0:
            raise ValueError("scale factor must be positive")
        return GridSpec(n_points=self.n_points, x_min=self.x_min * factor, x_max=self.x_max * factor)

    def central_window(self, window: float) -> slice:
        """
        Index slice covering the middle `window` fraction of the nodes.
        """
        if not 0.0 < window <= 1.0:
            raise ValueError(f"window must lie in (0, 1], got {window}")
        size = max(1, int(round(window * self.n_points)))
        start = (self.n_points - size) // 2
        return slice(start, start + size)

    def nearest_index(self, x: float) -> int:
        return int(round((x - self.x_min) / self.spacing)) % self.n_points

    @classmethod
    def matched(cls, n_points: int, t: float, units: PhysicalUnits, center: float = 0.0) -> "GridSpec":
        """
        Grid whose spacing satisfies n*dx**2 = 2*pi*hbar*t/m.

        On this grid the spectral free evolution over time t coincides entry by
        entry with the sampled closed-form free kernel (times dx), periodic
        images included, so discrete kernels can be compared with continuum
        formulas without aliasing. Requires an even node count.
        """
        if t <= 0:
            raise ValueError("matched grid needs t > 0")
        if n_points % 2:
            raise ValueError("matched grid needs an even number of points")
        length = math.sqrt(2.0 * math.pi * units.hbar * t * n_points / units.mass)
        return cls(n_points=n_points, x_min=center - 0.5 * length, x_max=center + 0.5 * length)
