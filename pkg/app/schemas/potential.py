from __future__ import annotations

from typing import Annotated, Literal, Optional, Union

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, PositiveFloat, TypeAdapter, field_validator, model_validator

from app.core.errors import UnsupportedPotential
from app.schemas.grid import GridSpec

MAX_POLYNOMIAL_DEGREE = 8


class _PotentialBase(BaseModel):
    model_config = ConfigDict(frozen=True)

    @property
    def label(self) -> str:
        return self.kind  # type: ignore[attr-defined]


class FreePotential(_PotentialBase):
    kind: Literal["free"] = "free"

    def evaluate(self, x, mass: float = 1.0) -> np.ndarray:
        return np.zeros_like(np.asarray(x, dtype=float))

    def rescaled(self, t: float) -> "FreePotential":
        return self

    @property
    def degree(self) -> int:
        return 0

    def polynomial_coeffs(self, mass: float = 1.0) -> list[float]:
        return [0.0]


class HarmonicPotential(_PotentialBase):
    """V(x) = m * omega**2 * x**2 / 2."""

    kind: Literal["harmonic"] = "harmonic"
    omega: PositiveFloat

    def evaluate(self, x, mass: float = 1.0) -> np.ndarray:
        x = np.asarray(x, dtype=float)
        return 0.5 * mass * self.omega**2 * x**2

    def rescaled(self, t: float) -> "HarmonicPotential":
        # t * V(sqrt(t) x) = m (omega t)^2 x^2 / 2
        return HarmonicPotential(omega=self.omega * t)

    @property
    def degree(self) -> int:
        return 2

    @property
    def label(self) -> str:
        return f"harmonic(omega={self.omega!r})"

    def polynomial_coeffs(self, mass: float = 1.0) -> list[float]:
        return [0.0, 0.0, 0.5 * mass * self.omega**2]


class PolynomialPotential(_PotentialBase):
    """V(x) = sum_k coeffs[k] * x**k (ascending degree)."""

    kind: Literal["polynomial"] = "polynomial"
    coeffs: list[float] = Field(min_length=1)

    @field_validator("coeffs")
    @classmethod
    def _check_degree(cls, value: list[float]) -> list[float]:
        if len(value) - 1 > MAX_POLYNOMIAL_DEGREE:
            raise ValueError(f"polynomial degree is limited to {MAX_POLYNOMIAL_DEGREE}")
        if not all(np.isfinite(value)):
            raise ValueError("polynomial coefficients must be finite")
        return value

    def evaluate(self, x, mass: float = 1.0) -> np.ndarray:
        return np.polynomial.polynomial.polyval(np.asarray(x, dtype=float), self.coeffs)

    def rescaled(self, t: float) -> "PolynomialPotential":
        # t * c_k (sqrt(t) x)^k = c_k t^(1 + k/2) x^k
        return PolynomialPotential(coeffs=[c * t ** (1.0 + 0.5 * k) for k, c in enumerate(self.coeffs)])

    @property
    def degree(self) -> int:
        nonzero = np.flatnonzero(self.coeffs)
        return int(nonzero[-1]) if nonzero.size else 0

    @property
    def label(self) -> str:
        return "polynomial(" + ",".join(repr(c) for c in self.coeffs) + ")"

    def polynomial_coeffs(self, mass: float = 1.0) -> list[float]:
        return list(self.coeffs)


class TabulatedPotential(_PotentialBase):
    """
    Potential sampled on its own periodic grid; evaluated elsewhere by periodic
    linear interpolation.
    """

    kind: Literal["tabulated"] = "tabulated"
    grid: GridSpec
    values: list[float]

    @model_validator(mode="after")
    def _check_values(self) -> "TabulatedPotential":
        if len(self.values) != self.grid.n_points:
            raise ValueError("tabulated potential needs one value per grid point")
        if not all(np.isfinite(self.values)):
            raise ValueError("tabulated potential values must be finite")
        return self

    def evaluate(self, x, mass: float = 1.0) -> np.ndarray:
        x = np.asarray(x, dtype=float)
        return np.interp(x, self.grid.points(), np.asarray(self.values), period=self.grid.length)

    def rescaled(self, t: float) -> "TabulatedPotential":
        raise UnsupportedPotential("tabulated potentials cannot be rescaled analytically")

    @property
    def degree(self) -> Optional[int]:
        return None

    def polynomial_coeffs(self, mass: float = 1.0) -> list[float]:
        raise UnsupportedPotential("tabulated potential is not a polynomial")


PotentialSpec = Annotated[
    Union[FreePotential, HarmonicPotential, PolynomialPotential, TabulatedPotential],
    Field(discriminator="kind"),
]

potential_adapter: TypeAdapter[PotentialSpec] = TypeAdapter(PotentialSpec)


def parse_potential(data) -> PotentialSpec:
    """Validate a decoded JSON object (or JSON string/bytes) into a PotentialSpec."""
    if isinstance(data, (str, bytes)):
        return potential_adapter.validate_json(data)
    return potential_adapter.validate_python(data)
