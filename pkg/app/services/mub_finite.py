"""
Finite-dimensional mutually unbiased bases: overlaps, the unbiasedness deficit,
complex Hadamard checks, phase extraction and the basis-insertion identity.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Sequence

import numpy as np
from scipy import linalg

from app.core.errors import ConfigurationError, DimensionMismatch, NotUnbiased
from app.utils.phase import wrap_phase

logger = logging.getLogger(__name__)

ORTHONORMAL_TOL = 1e-10
DEFAULT_MUB_TOL = 1e-8


@dataclass(frozen=True, slots=True)
class Basis:
    """Columns are the basis vectors |x_i>."""

    columns: np.ndarray

    def __post_init__(self) -> None:
        columns = np.array(self.columns, dtype=complex)
        if columns.ndim != 2 or columns.shape[0] != columns.shape[1]:
            raise DimensionMismatch(f"basis matrix must be square, got shape {columns.shape}")
        err = unitarity_error(columns)
        if err > ORTHONORMAL_TOL:
            raise ConfigurationError(f"basis columns are not orthonormal (max error {err:.3e})")
        columns.setflags(write=False)
        object.__setattr__(self, "columns", columns)

    @property
    def dim(self) -> int:
        return self.columns.shape[0]

    def transformed(self, unitary: np.ndarray) -> "Basis":
        return Basis(np.asarray(unitary) @ self.columns)


@dataclass(frozen=True, slots=True)
class PhaseMatrix:
    """Phases L(a, b) in (-pi, pi] of an unbiased overlap matrix."""

    entries: np.ndarray

    @property
    def dim(self) -> int:
        return self.entries.shape[0]

    def reconstruct(self) -> np.ndarray:
        return np.exp(1j * self.entries) / np.sqrt(self.dim)


def unitarity_error(matrix: np.ndarray) -> float:
    matrix = np.asarray(matrix)
    return float(np.max(np.abs(matrix.conj().T @ matrix - np.eye(matrix.shape[0]))))


def identity_basis(M: int) -> Basis:
    return Basis(np.eye(M, dtype=complex))


def fourier_basis(M: int) -> Basis:
    """Column b has entries exp(2 pi i a b / M) / sqrt(M)."""
    if M < 1:
        raise ConfigurationError("dimension must be >= 1")
    a = np.arange(M)
    # reduce a*b mod M before exponentiating to keep the phases exact
    exponent = np.outer(a, a) % M
    return Basis(np.exp(2j * np.pi * exponent / M) / np.sqrt(M))


def random_basis(M: int, seed) -> Basis:
    """
    Haar-distributed orthonormal basis: QR of a complex Ginibre matrix with the
    diagonal phases of R moved into Q.
    """
    rng = np.random.default_rng(seed)
    z = (rng.standard_normal((M, M)) + 1j * rng.standard_normal((M, M))) / np.sqrt(2.0)
    q, r = linalg.qr(z)
    d = np.diagonal(r)
    return Basis(q * (d / np.abs(d)))


def _check_dims(B1: Basis, B2: Basis) -> None:
    if B1.dim != B2.dim:
        raise DimensionMismatch(f"basis dimensions differ: {B1.dim} vs {B2.dim}")


def overlap_matrix(B1: Basis, B2: Basis) -> np.ndarray:
    """Entry (a, b) = <e_a | f_b>."""
    _check_dims(B1, B2)
    return B1.columns.conj().T @ B2.columns


def flatness(matrix: np.ndarray) -> float:
    """max |M |u_ab|^2 - 1| of a square matrix."""
    matrix = np.asarray(matrix)
    M = matrix.shape[0]
    return float(np.max(np.abs(M * np.abs(matrix) ** 2 - 1.0)))


def mub_deficit(B1: Basis, B2: Basis) -> float:
    return flatness(overlap_matrix(B1, B2))


def bengtsson_distance(B1: Basis, B2: Basis) -> float:
    """
    Chordal distance sqrt(1 - sum_ab (|<e_a|f_b>|^2 - 1/M)^2 / (M - 1)):
    1 for mutually unbiased bases, 0 for coincident ones.
    """
    overlap = overlap_matrix(B1, B2)
    M = B1.dim
    if M == 1:
        return 0.0
    spread = np.sum((np.abs(overlap) ** 2 - 1.0 / M) ** 2) / (M - 1)
    return float(np.sqrt(max(0.0, 1.0 - spread)))


def is_unitary(matrix: np.ndarray, tol: float) -> bool:
    return unitarity_error(matrix) <= tol


def is_unimodular(matrix: np.ndarray, tol: float) -> bool:
    """Every entry has modulus 1/sqrt(M) within tol."""
    matrix = np.asarray(matrix)
    return bool(np.max(np.abs(np.abs(matrix) - 1.0 / np.sqrt(matrix.shape[0]))) <= tol)


def is_hadamard(matrix: np.ndarray, tol: float = DEFAULT_MUB_TOL) -> bool:
    """Unitary and flat: sqrt(M) * matrix is a complex Hadamard matrix."""
    matrix = np.asarray(matrix)
    if matrix.ndim != 2 or matrix.shape[0] != matrix.shape[1]:
        raise DimensionMismatch(f"expected a square matrix, got shape {matrix.shape}")
    return is_unitary(matrix, tol) and is_unimodular(matrix, tol)


def phase_lagrangian(B1: Basis, B2: Basis, tol: float = DEFAULT_MUB_TOL) -> PhaseMatrix:
    """L(a, b) = arg <e_a | f_b> for an unbiased pair."""
    deficit = mub_deficit(B1, B2)
    if deficit > tol:
        raise NotUnbiased(f"bases are not mutually unbiased (deficit {deficit:.3e} > {tol:.3e})")
    return PhaseMatrix(wrap_phase(np.angle(overlap_matrix(B1, B2))))


def insertion_identity(phi: np.ndarray, psi: np.ndarray, bases: Sequence[Basis]) -> complex:
    """
    <Phi|x_1><x_1|x_2> ... <x_N|Psi>, summed over every intermediate label as a
    chain of matrix-vector products.
    """
    phi = np.asarray(phi, dtype=complex)
    psi = np.asarray(psi, dtype=complex)
    if phi.shape != psi.shape or phi.ndim != 1:
        raise DimensionMismatch(f"state shapes differ: {phi.shape} vs {psi.shape}")
    if not bases:
        return complex(np.vdot(phi, psi))
    for basis in bases:
        if basis.dim != phi.size:
            raise DimensionMismatch(f"basis of dimension {basis.dim} inserted between {phi.size}-vectors")

    amplitudes = bases[-1].columns.conj().T @ psi
    for left, right in zip(reversed(bases[:-1]), reversed(bases[1:])):
        amplitudes = overlap_matrix(left, right) @ amplitudes
    return complex(np.vdot(bases[0].columns.conj().T @ phi, amplitudes))


def random_state(M: int, seed) -> np.ndarray:
    rng = np.random.default_rng(seed)
    v = rng.standard_normal(M) + 1j * rng.standard_normal(M)
    return v / np.linalg.norm(v)


def matrix_report(matrix: np.ndarray, tol: float = DEFAULT_MUB_TOL) -> dict:
    """
    Summary used by `mub-check`. The matrix is read as the overlap matrix of its
    columns with the standard basis.
    """
    matrix = np.asarray(matrix, dtype=complex)
    if matrix.ndim != 2 or matrix.shape[0] != matrix.shape[1]:
        raise DimensionMismatch(f"expected a square matrix, got shape {matrix.shape}")
    unitary = is_unitary(matrix, tol)
    unimodular = is_unimodular(matrix, tol)
    deficit = flatness(matrix)
    report = {
        "dim": int(matrix.shape[0]),
        "unitary": unitary,
        "unimodular": unimodular,
        "deficit": deficit,
        "verdict": "MUB" if unitary and unimodular else "not-MUB",
    }
    if unitarity_error(matrix) <= ORTHONORMAL_TOL:
        report["bengtsson_distance"] = bengtsson_distance(identity_basis(matrix.shape[0]), Basis(matrix))
    logger.info("matrix check dim=%d verdict=%s deficit=%.3e", report["dim"], report["verdict"], deficit)
    return report
