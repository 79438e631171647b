"""
Free scalar field on a periodic spatial lattice (hbar = c = 1): transition phase
between field configurations on two constant-time surfaces, its short-time
limit, per-mode composition and the lagrangian 4-form rescaling.
"""
from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from typing import Mapping, Optional, Sequence, Union

import numpy as np

from app.core.config import settings
from app.core.errors import GridMismatch, ModeCaustic, NonPositiveTime, UnsupportedPotential
from app.schemas.field import FieldConfig, LatticeConfig
from app.schemas.grid import PhysicalUnits
from app.schemas.potential import PolynomialPotential, PotentialSpec
from app.services.closed_kernels import ContourQuadrature, harmonic_composition_error

logger = logging.getLogger(__name__)

ModeIndex = tuple[int, ...]

FIELD_UNITS = PhysicalUnits(hbar=1.0, mass=1.0)
DEFAULT_COMPOSITION_PAIRS: tuple[tuple[float, float], ...] = ((0.3, -0.2), (-0.5, 0.4), (1.0, 0.7), (0.0, 0.0))

KINETIC_COEFF = 0.5
DEFAULT_GRAD_COEFF = -0.5
DEFAULT_MASS_COEFF = 0.5


@dataclass(slots=True)
class ModeContribution:
    mode_index: ModeIndex
    omega: float
    contribution: float


@dataclass(slots=True)
class ModePhaseBreakdown:
    modes: list[ModeContribution] = field(default_factory=list)
    total_phase: float = 0.0
    short_time_phase: Optional[float] = None


@dataclass(slots=True)
class LagrangianCoefficients:
    """Coefficients of [k phi_t^2 + g (grad phi)^2 + mu phi^2 + V(phi)] dt d^3x."""

    kinetic: float
    gradient: float
    mass: float
    potential: PolynomialPotential


def mode_indices(lattice: LatticeConfig) -> list[ModeIndex]:
    """Signed momentum indices in ascending flat (row-major FFT) order."""
    D = lattice.sites_per_dim
    signed = [int(k) for k in np.fft.fftfreq(D, d=1.0 / D)]
    return [tuple(signed[i] for i in np.unravel_index(flat, lattice.shape)) for flat in range(lattice.total_sites)]


def _as_mode(mode_index: Union[int, Sequence[int]], lattice: LatticeConfig) -> ModeIndex:
    mode = (int(mode_index),) if np.isscalar(mode_index) else tuple(int(n) for n in mode_index)
    if len(mode) != lattice.dims:
        raise ValueError(f"mode index {mode} does not match lattice dimension {lattice.dims}")
    return mode


def dispersion(mode_index: Union[int, Sequence[int]], lattice: LatticeConfig) -> float:
    """omega_k = sqrt(p_k^2 + m^2) with spectral momenta p = 2 pi n / (D a) per axis."""
    mode = _as_mode(mode_index, lattice)
    p = 2.0 * math.pi * np.asarray(mode, dtype=float) / lattice.side_length
    return float(math.sqrt(float(np.sum(p**2)) + lattice.field_mass**2))


def _dispersion_array(lattice: LatticeConfig) -> np.ndarray:
    freqs = 2.0 * math.pi * np.fft.fftfreq(lattice.sites_per_dim, d=lattice.spacing)
    grids = np.meshgrid(*([freqs] * lattice.dims), indexing="ij")
    return np.sqrt(sum(g**2 for g in grids) + lattice.field_mass**2)


def _shared_lattice(alpha: FieldConfig, beta: FieldConfig) -> LatticeConfig:
    if alpha.lattice != beta.lattice:
        raise GridMismatch("field configurations live on different lattices")
    return alpha.lattice


def field_short_time_phase(alpha: FieldConfig, beta: FieldConfig, t: float) -> float:
    """(1/t) sum_sites a^d (alpha - beta)^2."""
    if not t > 0:
        raise NonPositiveTime(f"t must be positive, got {t!r}")
    lattice = _shared_lattice(alpha, beta)
    diff = alpha.array() - beta.array()
    return float(lattice.cell_volume * np.sum(diff**2) / t)


def field_transition_phase(
    alpha: FieldConfig,
    beta: FieldConfig,
    t: float,
    caustic_tol: Optional[float] = None,
    with_short_time: bool = False,
) -> ModePhaseBreakdown:
    """
    Phase sum_k a^d (omega_k / sin omega_k t) (cos omega_k t (|a_k|^2 + |b_k|^2) - 2 Re(conj(a_k) b_k))
    with unitary DFT amplitudes a_k, b_k.

    Modes k and -k of a real field carry equal contributions; they are reported
    once, as one real (cosine, sine) pair, under the first of the two indices in
    flat order. Accumulation runs in ascending flat order.
    """
    if not t > 0:
        raise NonPositiveTime(f"t must be positive, got {t!r}")
    tol = settings.CAUSTIC_TOL if caustic_tol is None else caustic_tol
    lattice = _shared_lattice(alpha, beta)

    a_hat = np.fft.fftn(alpha.array(), norm="ortho").ravel()
    b_hat = np.fft.fftn(beta.array(), norm="ortho").ravel()
    omega = _dispersion_array(lattice).ravel()
    modes = mode_indices(lattice)
    flat_of = {mode: i for i, mode in enumerate(modes)}

    per_mode = np.empty(lattice.total_sites)
    for i, w in enumerate(omega):
        if w == 0.0:
            # massless zero mode: omega / sin(omega t) -> 1/t, cos -> 1
            ratio, cos = 1.0 / t, 1.0
        else:
            s = math.sin(w * t)
            if abs(s) <= tol:
                raise ModeCaustic(modes[i])
            ratio, cos = w / s, math.cos(w * t)
        quad = cos * (abs(a_hat[i]) ** 2 + abs(b_hat[i]) ** 2) - 2.0 * (np.conj(a_hat[i]) * b_hat[i]).real
        per_mode[i] = lattice.cell_volume * ratio * quad

    breakdown = ModePhaseBreakdown()
    for i, mode in enumerate(modes):
        partner = flat_of[_negated(mode, lattice)]
        if partner < i:
            continue
        contribution = per_mode[i] + (per_mode[partner] if partner != i else 0.0)
        breakdown.modes.append(ModeContribution(mode, float(omega[i]), float(contribution)))
    breakdown.total_phase = math.fsum(m.contribution for m in breakdown.modes)
    if with_short_time:
        breakdown.short_time_phase = field_short_time_phase(alpha, beta, t)
    logger.debug("field phase over %d modes at t=%g: %g", len(breakdown.modes), t, breakdown.total_phase)
    return breakdown


def _negated(mode: ModeIndex, lattice: LatticeConfig) -> ModeIndex:
    """-k reduced back into the signed FFT index range."""
    D = lattice.sites_per_dim
    lo = -(D // 2)
    return tuple((-n - lo) % D + lo for n in mode)


def field_config_from_modes(
    lattice: LatticeConfig,
    amplitudes: Mapping[ModeIndex, Union[float, tuple[float, float]]],
) -> FieldConfig:
    """
    Real configuration sum_k (A_k cos(p_k . x) + B_k sin(p_k . x)); a bare float
    amplitude means a pure cosine.
    """
    axes = [lattice.spacing * np.arange(lattice.sites_per_dim)] * lattice.dims
    coords = np.meshgrid(*axes, indexing="ij")
    values = np.zeros(lattice.shape)
    for mode, amplitude in amplitudes.items():
        mode = _as_mode(mode, lattice)
        cos_amp, sin_amp = (amplitude, 0.0) if np.isscalar(amplitude) else amplitude
        phase = sum(2.0 * math.pi * n * x / lattice.side_length for n, x in zip(mode, coords))
        values = values + cos_amp * np.cos(phase) + sin_amp * np.sin(phase)
    return FieldConfig.from_array(lattice, values)


def mode_composition_check(
    omega: float,
    t1: float,
    t2: float,
    quad_grid: Optional[ContourQuadrature] = None,
    pairs: Sequence[tuple[float, float]] = DEFAULT_COMPOSITION_PAIRS,
    caustic_tol: Optional[float] = None,
) -> float:
    """
    Each mode evolves with the unit-mass oscillator kernel of frequency omega.
    Returns the max relative deviation of int K(a, g, t1) K(g, b, t2) dg from
    K(a, b, t1 + t2) over the sample pairs.
    """
    return max(
        harmonic_composition_error(a, b, t1, t2, omega, FIELD_UNITS, quad_grid, caustic_tol) for a, b in pairs
    )


def rescale_lagrangian_4form(
    s: float,
    grad_coeff: float = DEFAULT_GRAD_COEFF,
    mass_coeff: float = DEFAULT_MASS_COEFF,
    potential: Optional[PotentialSpec] = None,
    kinetic_coeff: float = KINETIC_COEFF,
) -> LagrangianCoefficients:
    """
    t -> s t, phi -> sqrt(s) phi. The kinetic term is invariant, gradient and
    mass terms pick up s^2 and s V(sqrt(s) phi) rescales c_k by s^(1 + k/2).
    """
    if not s > 0:
        raise ValueError("scale factor s must be positive")
    if potential is None:
        potential = PolynomialPotential(coeffs=[0.0])
    if potential.kind == "tabulated":
        raise UnsupportedPotential("4-form rescaling needs a polynomial potential")
    polynomial = PolynomialPotential(coeffs=potential.polynomial_coeffs(FIELD_UNITS.mass))
    return LagrangianCoefficients(
        kinetic=kinetic_coeff,
        gradient=grad_coeff * s**2,
        mass=mass_coeff * s**2,
        potential=polynomial.rescaled(s),
    )
