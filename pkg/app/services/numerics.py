"""
Shared numerical substrate: grid vectors, uniform quadrature, spectral
(momentum-space) operator application and the continuous product.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np
from scipy.integrate import trapezoid as _scipy_trapezoid

from app.core.errors import BlowUp, ConfigurationError, GridMismatch, NonPositiveSample
from app.schemas.grid import GridSpec, PhysicalUnits

logger = logging.getLogger(__name__)


def _frozen(values: np.ndarray) -> np.ndarray:
    values.setflags(write=False)
    return values


@dataclass(frozen=True, slots=True)
class ComplexGridVector:
    grid: GridSpec
    values: np.ndarray

    def __post_init__(self) -> None:
        values = np.array(self.values, dtype=complex)
        if values.shape != (self.grid.n_points,):
            raise GridMismatch(f"expected {self.grid.n_points} amplitudes, got shape {values.shape}")
        if not np.all(np.isfinite(values)):
            raise BlowUp("grid vector has non-finite amplitudes")
        object.__setattr__(self, "values", _frozen(values))

    def with_values(self, values: np.ndarray) -> "ComplexGridVector":
        return ComplexGridVector(self.grid, values)


@dataclass(frozen=True, slots=True)
class SampledFunction:
    """Samples of a real or complex function at uniform nodes of [a, b]."""

    a: float
    b: float
    samples: np.ndarray

    def __post_init__(self) -> None:
        if not self.b > self.a:
            raise ConfigurationError("sampled function needs b > a")
        samples = np.array(self.samples)
        if samples.ndim != 1 or samples.size < 2:
            raise ConfigurationError("sampled function needs at least 2 samples")
        object.__setattr__(self, "samples", _frozen(samples))

    @property
    def nodes(self) -> np.ndarray:
        return np.linspace(self.a, self.b, self.samples.size)

    @classmethod
    def from_callable(
        cls, fn: Callable[[np.ndarray], np.ndarray], a: float, b: float, n_samples: int
    ) -> "SampledFunction":
        return cls(a, b, np.asarray(fn(np.linspace(a, b, n_samples))))


@dataclass(frozen=True, slots=True)
class KernelMatrix:
    """
    Discretized U(t) in the grid basis. entries[j, k] approximates K(x_j, x_k, t) * spacing,
    so applying the matrix to a vector of samples evolves it.
    """

    grid: GridSpec
    t: float
    entries: np.ndarray
    method: str = "oracle"
    meta: dict = field(default_factory=dict)

    def __post_init__(self) -> None:
        entries = np.array(self.entries, dtype=complex)
        n = self.grid.n_points
        if entries.shape != (n, n):
            raise GridMismatch(f"kernel matrix must be {n}x{n}, got {entries.shape}")
        if not np.all(np.isfinite(entries)):
            raise BlowUp(f"{self.method} kernel at t={self.t!r} has non-finite entries")
        object.__setattr__(self, "entries", _frozen(entries))

    def continuum(self) -> np.ndarray:
        """Kernel values K(x_j, x_k, t) estimated as entry / spacing."""
        return self.entries / self.grid.spacing

    def unitarity_error(self) -> float:
        u = self.entries
        return float(np.max(np.abs(u.conj().T @ u - np.eye(u.shape[0]))))

    def apply(self, v: ComplexGridVector) -> ComplexGridVector:
        _check_same_grid(self.grid, v.grid)
        return v.with_values(self.entries @ v.values)

    def window_block(self, window: float) -> np.ndarray:
        w = self.grid.central_window(window)
        return self.entries[w, w]


def _check_same_grid(a: GridSpec, b: GridSpec) -> None:
    if a != b:
        raise GridMismatch(f"grids differ: {a!r} vs {b!r}")


def trapezoid(samples: np.ndarray, a: float, b: float) -> complex | float:
    """Composite trapezoid rule for samples at uniform nodes of [a, b]."""
    samples = np.asarray(samples)
    if samples.size < 2:
        raise ConfigurationError("trapezoid needs at least 2 samples")
    h = (b - a) / (samples.size - 1)
    return _scipy_trapezoid(samples, dx=h)


def continuous_product(f: SampledFunction, partitions: Optional[int] = None) -> float:
    """
    Riemann form of prod_t f(t)^dt = exp(int ln f dt) on [a, b].

    `partitions` defaults to the sampling of `f`; any other count resamples
    ln f linearly onto partitions+1 uniform nodes before integrating.
    """
    samples = np.asarray(f.samples)
    if np.iscomplexobj(samples) and np.any(samples.imag != 0):
        raise NonPositiveSample("continuous product needs real positive samples")
    samples = samples.real.astype(float)
    if np.any(samples <= 0):
        bad = int(np.flatnonzero(samples <= 0)[0])
        raise NonPositiveSample(f"sample {bad} at t={f.nodes[bad]!r} is not strictly positive")

    log_f = np.log(samples)
    if partitions is not None and partitions != samples.size - 1:
        if partitions < 1:
            raise ConfigurationError("partitions must be >= 1")
        nodes = np.linspace(f.a, f.b, partitions + 1)
        log_f = np.interp(nodes, f.nodes, log_f)
    return float(np.exp(trapezoid(log_f, f.a, f.b)))


def inner_product(v: ComplexGridVector, w: ComplexGridVector) -> complex:
    """<v|w> = sum conj(v) w * spacing (periodic trapezoid)."""
    _check_same_grid(v.grid, w.grid)
    return complex(np.vdot(v.values, w.values) * v.grid.spacing)


def norm(v: ComplexGridVector) -> float:
    return float(np.sqrt(inner_product(v, v).real))


def apply_momentum_function(
    v: ComplexGridVector,
    g: Callable[[np.ndarray], np.ndarray],
    units: PhysicalUnits,
) -> ComplexGridVector:
    """
    Multiply the discrete Fourier modes of `v` by g(p_k) with spectral momenta p_k.
    """
    p = v.grid.momenta(units)
    multiplier = np.broadcast_to(np.asarray(g(p), dtype=complex), p.shape)
    return v.with_values(np.fft.ifft(multiplier * np.fft.fft(v.values)))


def kinetic_phase(grid: GridSpec, t: float, units: PhysicalUnits) -> np.ndarray:
    """exp(-i p^2 t / (2 m hbar)) on the spectral momenta, FFT order."""
    p = grid.momenta(units)
    return np.exp(-1j * p**2 * t / (2.0 * units.mass * units.hbar))


def momentum_operator_matrix(grid: GridSpec, multiplier: np.ndarray) -> np.ndarray:
    """Dense matrix of the operator F^-1 diag(multiplier) F on the grid."""
    identity = np.eye(grid.n_points, dtype=complex)
    return np.fft.ifft(multiplier[:, None] * np.fft.fft(identity, axis=0), axis=0)


def gaussian_packet(
    grid: GridSpec,
    center: float = 0.0,
    width: float = 1.0,
    momentum: float = 0.0,
    units: Optional[PhysicalUnits] = None,
) -> ComplexGridVector:
    """
    Normalized packet proportional to exp(-(x - center)^2 / (2 width^2) + i momentum x / hbar).
    """
    units = units or PhysicalUnits()
    x = grid.points()
    values = np.exp(-((x - center) ** 2) / (2.0 * width**2) + 1j * momentum * x / units.hbar)
    packet = ComplexGridVector(grid, values)
    return packet.with_values(packet.values / norm(packet))


def expectation_position(v: ComplexGridVector) -> float:
    density = np.abs(v.values) ** 2
    return float(np.sum(v.grid.points() * density) / np.sum(density))
