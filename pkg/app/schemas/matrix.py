from __future__ import annotations

import numpy as np
from pydantic import BaseModel, Field, model_validator


class MatrixPayload(BaseModel):
    """JSON form of a complex square matrix: {"dim": M, "re": [[...]], "im": [[...]]}."""

    dim: int = Field(ge=1)
    re: list[list[float]]
    im: list[list[float]]

    @model_validator(mode="after")
    def _check_shape(self) -> "MatrixPayload":
        for name, rows in (("re", self.re), ("im", self.im)):
            if len(rows) != self.dim or any(len(row) != self.dim for row in rows):
                raise ValueError(f"'{name}' must be a {self.dim}x{self.dim} array")
        return self

    def to_array(self) -> np.ndarray:
        return np.asarray(self.re, dtype=float) + 1j * np.asarray(self.im, dtype=float)

    @classmethod
    def from_array(cls, matrix: np.ndarray) -> "MatrixPayload":
        matrix = np.asarray(matrix, dtype=complex)
        if matrix.ndim != 2 or matrix.shape[0] != matrix.shape[1]:
            raise ValueError("matrix must be square")
        return cls(dim=matrix.shape[0], re=matrix.real.tolist(), im=matrix.imag.tolist())
