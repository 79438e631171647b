"""
How unbiased are the position bases at times 0 and t?

Flatness deficit of discretized kernels, t -> 0 sweeps, the scaling identity
K_V(x, y, t) = t^(-1/2) K_{V_t}(x/sqrt(t), y/sqrt(t), 1) with V_t(x) = t V(sqrt(t) x),
quadratic phase fits and the R, S, P Riccati system.
"""
from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from typing import NamedTuple, Optional, Sequence

import numpy as np

from app.core.config import settings
from app.core.errors import (
    BlowUp,
    ConfigurationError,
    NonPositiveTime,
    NonUnitaryKernel,
    PhaseUnwrapFailure,
    UnsupportedPotential,
)
from app.schemas.grid import GridSpec, PhysicalUnits
from app.schemas.potential import PolynomialPotential, PotentialSpec
from app.services.closed_kernels import free_kernel, harmonic_kernel, translation_matrix
from app.services.numerics import KernelMatrix
from app.services.trotter import SpectralOracle

logger = logging.getLogger(__name__)

DEFAULT_RICCATI_T0 = 1e-3

# iψ̇ = -ψ_xx + Vψ
RICCATI_UNITS = PhysicalUnits(hbar=1.0, mass=0.5)

MAX_UNWRAP_STEP = 0.9 * math.pi

# deficits below this count as zero when checking monotonicity
MONOTONE_FLOOR = 1e-12


@dataclass(slots=True)
class DeficitCurve:
    potential: str
    window: float
    points: list[tuple[float, float]] = field(default_factory=list)

    @property
    def times(self) -> list[float]:
        return [t for t, _ in self.points]

    @property
    def deficits(self) -> list[float]:
        return [d for _, d in self.points]

    def rows(self) -> list[tuple[float, float, float, str]]:
        """CSV rows `t,deficit,window,potential`."""
        return [(t, d, self.window, self.potential) for t, d in self.points]


@dataclass(slots=True)
class QuadraticPhaseFit:
    R: float
    S: float
    P: float
    residual: float


@dataclass(slots=True)
class RiccatiState:
    k1: float
    k2: float
    k3: float
    times: np.ndarray
    R: np.ndarray
    S: np.ndarray
    P: np.ndarray

    def implied_potential(self) -> PolynomialPotential:
        """V(x) = -k1 x^2 - k2 x - k3."""
        return PolynomialPotential(coeffs=[-self.k3, -self.k2, -self.k1])


class ScalingResult(NamedTuple):
    lhs: complex
    rhs: complex
    rel_error: float


def kernel_flatness_deficit(K: KernelMatrix, window: Optional[float] = None, tol: Optional[float] = None) -> float:
    """
    max |M_w |u|^2 / mean(|u|^2) - 1| over the central window block, i.e. the
    block renormalized to mean squared modulus 1/M_w. An all-zero block counts
    as maximally biased (M_w - 1).
    """
    window = settings.DEFAULT_WINDOW if window is None else window
    tol = settings.UNITARY_TOL if tol is None else tol
    if not 0.0 < window <= 1.0:
        raise ConfigurationError(f"window must lie in (0, 1], got {window}")
    err = K.unitarity_error()
    if err > tol:
        raise NonUnitaryKernel(f"kernel unitarity error {err:.3e} exceeds {tol:.3e}")

    block = np.abs(K.window_block(window)) ** 2
    size = block.shape[0]
    mean = block.mean()
    if mean == 0.0:
        return float(size - 1)
    return float(np.max(np.abs(block / mean - 1.0)))


def _check_sweep_times(t_list: Sequence[float]) -> None:
    if not t_list:
        raise ConfigurationError("t_list is empty")
    if any(not t > 0 for t in t_list):
        raise NonPositiveTime("sweep times must be positive")
    if any(b >= a for a, b in zip(t_list, t_list[1:])):
        raise ConfigurationError("sweep times must be strictly decreasing")


def asymptotic_mub_sweep(
    V: PotentialSpec,
    grid: GridSpec,
    t_list: Sequence[float],
    units: PhysicalUnits,
    window: Optional[float] = None,
    matched: bool = True,
) -> DeficitCurve:
    """
    Flatness deficit of the oracle kernel at each t.

    With matched=True every t gets its own grid (same node count and center)
    with n dx^2 = 2 pi hbar t / m, which by the discrete scaling identity is the
    same as evaluating V_t at unit time on one fixed grid. matched=False keeps
    `grid` for every t and reuses one eigendecomposition.
    """
    window = settings.DEFAULT_WINDOW if window is None else window
    _check_sweep_times(t_list)
    curve = DeficitCurve(potential=V.label, window=window)

    if matched:
        logger.info(
            "sweep %s uses grids matched to each t: %d points about %.6g, configured span [%.6g, %.6g) not used",
            V.label,
            grid.n_points,
            grid.center,
            grid.x_min,
            grid.x_max,
        )
    fixed_oracle = None if matched else SpectralOracle(grid, V, units)
    for t in t_list:
        if matched:
            t_grid = GridSpec.matched(grid.n_points, t, units, grid.center)
            logger.debug(
                "sweep %s t=%.6g on matched grid [%.6g, %.6g)",
                V.label,
                t,
                t_grid.x_min,
                t_grid.x_max,
            )
            oracle = SpectralOracle(t_grid, V, units)
        else:
            oracle = fixed_oracle
        deficit = kernel_flatness_deficit(oracle.kernel(t), window)
        logger.debug("sweep %s t=%.6g deficit=%.6g", V.label, t, deficit)
        curve.points.append((float(t), deficit))

    logger.info("deficit sweep for %s over %d times finished", V.label, len(t_list))
    return curve


def translation_deficit_curve(grid: GridSpec, t_list: Sequence[float], window: Optional[float] = None) -> DeficitCurve:
    """Negative control: the translation group keeps exact position information."""
    window = settings.DEFAULT_WINDOW if window is None else window
    _check_sweep_times(t_list)
    curve = DeficitCurve(potential="translation", window=window)
    for t in t_list:
        curve.points.append((float(t), kernel_flatness_deficit(translation_matrix(grid, t), window)))
    return curve


def is_nonincreasing(curve: DeficitCurve, slack: Optional[float] = None, floor: float = MONOTONE_FLOOR) -> bool:
    """
    Each step may grow by at most `slack` times the previous value, or up to
    `floor` when both values sit at rounding level.
    """
    slack = settings.MONOTONE_SLACK if slack is None else slack
    d = curve.deficits
    return all(b <= max(a * (1.0 + slack), floor) for a, b in zip(d, d[1:]))


def scaling_check(
    V: PotentialSpec,
    x: float,
    y: float,
    t: float,
    units: PhysicalUnits,
    grid: GridSpec,
) -> ScalingResult:
    """
    Both sides of the scaling identity from two independent oracle runs.

    lhs uses `grid` at time t; rhs uses `grid` scaled by 1/sqrt(t) with V_t at
    unit time, so the nodes correspond one to one. (x, y) snap to the nearest
    nodes of `grid`.
    """
    if not t > 0:
        raise NonPositiveTime(f"t must be positive, got {t!r}")
    V_t = V.rescaled(t)
    j, k = grid.nearest_index(x), grid.nearest_index(y)
    root_t = math.sqrt(t)

    lhs = complex(SpectralOracle(grid, V, units).kernel(t).continuum()[j, k])
    scaled_grid = grid.scaled(1.0 / root_t)
    rhs = complex(SpectralOracle(scaled_grid, V_t, units).kernel(1.0).continuum()[j, k]) / root_t
    return ScalingResult(lhs, rhs, abs(lhs - rhs) / abs(lhs))


def scaling_check_closed_form(
    V: PotentialSpec,
    x: float,
    y: float,
    t: float,
    units: PhysicalUnits,
    caustic_tol: Optional[float] = None,
) -> ScalingResult:
    """Scaling identity with both sides from the free or oscillator closed forms."""
    if not t > 0:
        raise NonPositiveTime(f"t must be positive, got {t!r}")
    V_t = V.rescaled(t)
    root_t = math.sqrt(t)
    if V.kind == "free":
        lhs = complex(free_kernel(x, y, t, units))
        rhs = complex(free_kernel(x / root_t, y / root_t, 1.0, units)) / root_t
    elif V.kind == "harmonic":
        lhs = complex(harmonic_kernel(x, y, t, V.omega, units, caustic_tol))
        rhs = complex(harmonic_kernel(x / root_t, y / root_t, 1.0, V_t.omega, units, caustic_tol)) / root_t
    else:
        raise UnsupportedPotential(f"no closed-form kernel for {V.label}")
    return ScalingResult(lhs, rhs, abs(lhs - rhs) / abs(lhs))


def phase_quadratic_fit(
    K: KernelMatrix,
    y_index: int,
    window: Optional[float] = None,
    modulus_floor: Optional[float] = None,
    max_step: float = MAX_UNWRAP_STEP,
) -> QuadraticPhaseFit:
    """
    Least-squares fit of R x^2 / 2 + S x + P to the unwrapped phase of column
    y_index over the central window. residual is the RMS misfit in radians.

    Unwrapping needs the phase to move by well under pi between nodes; a step
    above max_step means the grid does not resolve the column.
    """
    window = settings.DEFAULT_WINDOW if window is None else window
    floor = settings.PHASE_MODULUS_FLOOR if modulus_floor is None else modulus_floor
    w = K.grid.central_window(window)
    x = K.grid.points()[w]
    column = K.entries[w, y_index]
    if x.size < 3:
        raise ConfigurationError("phase fit needs at least 3 window points")

    modulus = np.abs(column)
    if modulus.max() == 0.0 or modulus.min() < floor * modulus.max():
        raise PhaseUnwrapFailure(
            f"column {y_index} modulus drops below {floor:.1e} of its maximum inside the window"
        )
    phase = np.unwrap(np.angle(column))
    largest = float(np.max(np.abs(np.diff(phase))))
    if largest > max_step:
        raise PhaseUnwrapFailure(
            f"column {y_index} phase steps by {largest:.3f} rad between nodes (limit {max_step:.3f}); grid too coarse"
        )

    design = np.column_stack([0.5 * x**2, x, np.ones_like(x)])
    (R, S, P), *_ = np.linalg.lstsq(design, phase, rcond=None)
    residual = float(np.sqrt(np.mean((design @ np.array([R, S, P]) - phase) ** 2)))
    return QuadraticPhaseFit(float(R), float(S), float(P), residual)


def riccati_constants(V: PotentialSpec) -> tuple[float, float, float]:
    """
    (k1, k2, k3) with V(x) = -k1 x^2 - k2 x - k3, in the units of
    i psi_t = -psi_xx + V psi (hbar = 1, m = 1/2).
    """
    if V.kind == "tabulated" or V.degree > 2:
        raise UnsupportedPotential(f"{V.label} is not polynomial of degree <= 2")
    coeffs = (list(V.polynomial_coeffs(RICCATI_UNITS.mass)) + [0.0, 0.0, 0.0])[:3]
    return -coeffs[2], -coeffs[1], -coeffs[0]


def _riccati_rhs(k1: float, k2: float, k3: float, state: np.ndarray) -> np.ndarray:
    R, S, _ = state
    return np.array([2.0 * (k1 - R * R), k2 - 2.0 * R * S, k3 - S * S])


def riccati_solve(
    k1: float,
    k2: float,
    k3: float,
    t0: float = DEFAULT_RICCATI_T0,
    t_end: float = 1.0,
    steps: int = 10_000,
    source: float = 0.0,
    guard: Optional[float] = None,
) -> RiccatiState:
    """
    Fixed-step RK4 for R'/2 + R^2 = k1, S' + 2RS = k2, P' + S^2 = k3 from the
    free-kernel phase at t0: R = 1/(2 t0), S = -y/(2 t0), P = y^2/(4 t0).
    """
    guard = settings.RICCATI_BLOWUP_GUARD if guard is None else guard
    if not t0 > 0:
        raise NonPositiveTime("Riccati start time t0 must be positive")
    if not t_end > t0:
        raise ConfigurationError("t_end must exceed t0")
    if steps < 1:
        raise ConfigurationError("steps must be >= 1")

    h = (t_end - t0) / steps
    times = t0 + h * np.arange(steps + 1)
    trajectory = np.empty((steps + 1, 3))
    state = np.array([1.0 / (2.0 * t0), -source / (2.0 * t0), source**2 / (4.0 * t0)])
    trajectory[0] = state

    for i in range(steps):
        a = _riccati_rhs(k1, k2, k3, state)
        b = _riccati_rhs(k1, k2, k3, state + 0.5 * h * a)
        c = _riccati_rhs(k1, k2, k3, state + 0.5 * h * b)
        d = _riccati_rhs(k1, k2, k3, state + h * c)
        state = state + (h / 6.0) * (a + 2.0 * b + 2.0 * c + d)
        if not np.all(np.isfinite(state)) or abs(state[0]) > guard:
            raise BlowUp(f"|R| exceeded {guard:.1e} at t={times[i + 1]:.6g} (caustic)")
        trajectory[i + 1] = state

    logger.debug("riccati k=(%g, %g, %g) integrated over %d steps", k1, k2, k3, steps)
    return RiccatiState(k1, k2, k3, times, trajectory[:, 0], trajectory[:, 1], trajectory[:, 2])
