"""
Time-sliced kernels, split-operator propagation and the dense spectral oracle.
"""
from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from typing import Literal, Optional

import numpy as np
from scipy import linalg

from app.core.config import settings
from app.core.errors import DimensionTooLarge, GridMismatch, NonPositiveTime
from app.schemas.grid import GridSpec, PhysicalUnits
from app.schemas.potential import PotentialSpec
from app.services.numerics import (
    ComplexGridVector,
    KernelMatrix,
    kinetic_phase,
    momentum_operator_matrix,
)

logger = logging.getLogger(__name__)

SliceRule = Literal["sampled", "midpoint", "spectral"]
PotentialPoint = Literal["endpoint", "midpoint"]
SplitScheme = Literal["lie", "strang"]


@dataclass(frozen=True, slots=True)
class TrotterPlan:
    t_total: float
    n_slices: int

    def __post_init__(self) -> None:
        if not self.t_total > 0:
            raise NonPositiveTime(f"t_total must be positive, got {self.t_total!r}")
        if self.n_slices < 1:
            raise ValueError("n_slices must be >= 1")

    @property
    def delta_s(self) -> float:
        return self.t_total / self.n_slices


def potential_on_grid(V: PotentialSpec, grid: GridSpec, units: PhysicalUnits) -> np.ndarray:
    if getattr(V, "kind", None) == "tabulated" and V.grid == grid:
        return np.asarray(V.values, dtype=float)
    return np.asarray(V.evaluate(grid.points(), units.mass), dtype=float)


def short_time_lagrangian(
    x,
    y,
    delta_s: float,
    V: PotentialSpec,
    units: PhysicalUnits,
    potential_at: PotentialPoint = "endpoint",
):
    """
    (m/2) ((x - y)/ds)^2 - V, with V taken at the endpoint x or, for
    potential_at="midpoint", at (x + y) / 2.
    """
    x, y = np.asarray(x), np.asarray(y)
    velocity = (x - y) / delta_s
    where = 0.5 * (x + y) if potential_at == "midpoint" else x
    return 0.5 * units.mass * velocity**2 - V.evaluate(where, units.mass)


def short_time_kernel(
    x,
    y,
    delta_s: float,
    V: PotentialSpec,
    units: PhysicalUnits,
    potential_at: PotentialPoint = "endpoint",
):
    """(2 pi i hbar ds / m)^(-1/2) exp(i L(x, y) ds / hbar)."""
    if not delta_s > 0:
        raise NonPositiveTime(f"delta_s must be positive, got {delta_s!r}")
    prefactor = np.exp(-0.25j * np.pi) / math.sqrt(2.0 * math.pi * units.hbar * delta_s / units.mass)
    lagrangian = short_time_lagrangian(x, y, delta_s, V, units, potential_at)
    return prefactor * np.exp(1j * lagrangian * delta_s / units.hbar)


def slice_matrix(
    grid: GridSpec,
    V: PotentialSpec,
    delta_s: float,
    units: PhysicalUnits,
    rule: SliceRule = "sampled",
) -> np.ndarray:
    """
    One Trotter slice on the grid.

    "sampled": entries short_time_kernel(x_j, x_k, ds) * spacing, exactly as the
    short-time amplitude prints; every entry has modulus spacing / sqrt(2 pi hbar ds / m).
    "midpoint": the same with the potential at (x_j + x_k) / 2.
    "spectral": diag(exp(-i V ds / hbar)) times the spectral free evolution over
    ds. Unitary on any grid, but its moduli are flat only on a grid matched to ds,
    where it coincides with "sampled".
    """
    if not delta_s > 0:
        raise NonPositiveTime(f"delta_s must be positive, got {delta_s!r}")
    if rule in ("sampled", "midpoint"):
        x = grid.points()
        potential_at = "midpoint" if rule == "midpoint" else "endpoint"
        return short_time_kernel(x[:, None], x[None, :], delta_s, V, units, potential_at) * grid.spacing
    if rule == "spectral":
        potential_phase = np.exp(-1j * potential_on_grid(V, grid, units) * delta_s / units.hbar)
        return potential_phase[:, None] * momentum_operator_matrix(grid, kinetic_phase(grid, delta_s, units))
    raise ValueError(f"unknown slice rule {rule!r}")


def composed_kernel(
    grid: GridSpec,
    V: PotentialSpec,
    plan: TrotterPlan,
    units: PhysicalUnits,
    rule: SliceRule = "sampled",
) -> KernelMatrix:
    """
    N-fold grid composition of identical short-time slices. A product that
    overflows raises BlowUp when the KernelMatrix is built.
    """
    if getattr(V, "kind", None) == "tabulated" and V.grid != grid:
        raise GridMismatch("tabulated potential must be sampled on the kernel grid")
    single = slice_matrix(grid, V, plan.delta_s, units, rule)
    entries = np.linalg.matrix_power(single, plan.n_slices)
    logger.debug("composed %d %s slices on %d points", plan.n_slices, rule, grid.n_points)
    return KernelMatrix(
        grid=grid,
        t=plan.t_total,
        entries=entries,
        method="trotter",
        meta={"n_slices": plan.n_slices, "rule": rule},
    )


def split_operator_step(
    psi: ComplexGridVector,
    delta_s: float,
    V: PotentialSpec,
    units: PhysicalUnits,
    scheme: SplitScheme = "lie",
) -> ComplexGridVector:
    """
    Lie: kinetic factor then potential factor. Strang: half potential, kinetic,
    half potential.
    """
    if not delta_s > 0:
        raise NonPositiveTime(f"delta_s must be positive, got {delta_s!r}")
    if getattr(V, "kind", None) == "tabulated" and V.grid != psi.grid:
        raise GridMismatch("tabulated potential must be sampled on the wave function grid")
    return _SplitStepper(psi.grid, V, delta_s, units, scheme).step(psi)


class _SplitStepper:
    """Precomputed phase factors for repeated split-operator steps."""

    def __init__(self, grid: GridSpec, V: PotentialSpec, delta_s: float, units: PhysicalUnits, scheme: SplitScheme):
        if scheme not in ("lie", "strang"):
            raise ValueError(f"unknown split scheme {scheme!r}")
        self.grid = grid
        self.scheme = scheme
        self.exp_kinetic = kinetic_phase(grid, delta_s, units)
        v = potential_on_grid(V, grid, units)
        self.exp_potential = np.exp(-1j * v * delta_s / units.hbar)
        self.exp_half_potential = np.exp(-0.5j * v * delta_s / units.hbar)

    def _kinetic(self, values: np.ndarray) -> np.ndarray:
        return np.fft.ifft(self.exp_kinetic * np.fft.fft(values))

    def step_values(self, values: np.ndarray) -> np.ndarray:
        if self.scheme == "lie":
            return self.exp_potential * self._kinetic(values)
        return self.exp_half_potential * self._kinetic(self.exp_half_potential * values)

    def step(self, psi: ComplexGridVector) -> ComplexGridVector:
        if psi.grid != self.grid:
            raise GridMismatch("wave function grid differs from stepper grid")
        return psi.with_values(self.step_values(psi.values))


def propagate(
    psi: ComplexGridVector,
    plan: TrotterPlan,
    V: PotentialSpec,
    units: PhysicalUnits,
    scheme: SplitScheme = "lie",
) -> ComplexGridVector:
    """Apply plan.n_slices split-operator steps of size plan.delta_s."""
    if getattr(V, "kind", None) == "tabulated" and V.grid != psi.grid:
        raise GridMismatch("tabulated potential must be sampled on the wave function grid")
    stepper = _SplitStepper(psi.grid, V, plan.delta_s, units, scheme)
    values = np.array(psi.values)
    for _ in range(plan.n_slices):
        values = stepper.step_values(values)
    return psi.with_values(values)


class SpectralOracle:
    """
    Ground-truth U(t) = exp(-i H t / hbar) from one dense eigendecomposition of the
    discretized Hamiltonian (spectral kinetic block plus diagonal potential).
    Every later time reuses the same factorization.
    """

    def __init__(
        self,
        grid: GridSpec,
        V: PotentialSpec,
        units: PhysicalUnits,
        max_points: Optional[int] = None,
    ):
        limit = settings.ORACLE_MAX_POINTS if max_points is None else max_points
        if grid.n_points > limit:
            raise DimensionTooLarge(f"oracle limited to {limit} points, grid has {grid.n_points}")
        self.grid = grid
        self.potential = V
        self.units = units
        self.hamiltonian = self._hamiltonian()
        self.energies, self.eigenvectors = linalg.eigh(self.hamiltonian)
        logger.debug("oracle factorized %d-point Hamiltonian", grid.n_points)

    def _hamiltonian(self) -> np.ndarray:
        p = self.grid.momenta(self.units)
        kinetic = momentum_operator_matrix(self.grid, p**2 / (2.0 * self.units.mass))
        h = kinetic + np.diag(potential_on_grid(self.potential, self.grid, self.units))
        return 0.5 * (h + h.conj().T)

    def kernel(self, t: float) -> KernelMatrix:
        q = self.eigenvectors
        phases = np.exp(-1j * self.energies * t / self.units.hbar)
        entries = (q * phases) @ q.conj().T
        return KernelMatrix(grid=self.grid, t=t, entries=entries, method="oracle")


def spectral_oracle_kernel(
    grid: GridSpec,
    V: PotentialSpec,
    t: float,
    units: PhysicalUnits,
    max_points: Optional[int] = None,
) -> KernelMatrix:
    return SpectralOracle(grid, V, units, max_points).kernel(t)


def central_window_error(K: KernelMatrix, reference: KernelMatrix, window: Optional[float] = None) -> float:
    """Relative Frobenius error of K against reference on the central window block."""
    if K.grid != reference.grid:
        raise GridMismatch("kernels live on different grids")
    window = settings.DEFAULT_WINDOW if window is None else window
    diff = K.window_block(window) - reference.window_block(window)
    return float(np.linalg.norm(diff) / np.linalg.norm(reference.window_block(window)))
