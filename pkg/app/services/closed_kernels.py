"""
Closed-form propagators used as ground truth.

Square-root branch: for t > 0 the free prefactor (2 pi i hbar t / m)^(-1/2) is
exp(-i pi/4) * (2 pi hbar t / m)^(-1/2). The oscillator prefactor carries the
same exp(-i pi/4) on its first sheet and picks up exp(-i pi/2) each time omega*t
crosses a multiple of pi, so the group law holds across caustics.
"""
from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np

from app.core.config import settings
from app.core.errors import CausticSingularity, NonPositiveTime
from app.schemas.grid import GridSpec, PhysicalUnits
from app.services.numerics import ComplexGridVector, KernelMatrix, trapezoid

logger = logging.getLogger(__name__)

KernelFn = Callable[[np.ndarray, np.ndarray], np.ndarray]

FRESNEL_PHASE = np.exp(-0.25j * np.pi)


def _require_positive_time(t: float) -> None:
    if not t > 0:
        raise NonPositiveTime(f"kernel time must be positive, got {t!r}")


def free_kernel(x, y, t: float, units: PhysicalUnits):
    """<x, t | y, 0> for a free particle. Accepts scalars or arrays (also complex x, y)."""
    _require_positive_time(t)
    scale = 2.0 * np.pi * units.hbar * t / units.mass
    dx = np.asarray(x) - np.asarray(y)
    return FRESNEL_PHASE / np.sqrt(scale) * np.exp(1j * units.mass * dx**2 / (2.0 * units.hbar * t))


def _oscillator_sine(t: float, omega: float, caustic_tol: Optional[float]) -> float:
    _require_positive_time(t)
    if not omega > 0:
        raise ValueError("omega must be positive")
    tol = settings.CAUSTIC_TOL if caustic_tol is None else caustic_tol
    s = math.sin(omega * t)
    if abs(s) <= tol:
        raise CausticSingularity(f"|sin(omega t)| = {abs(s):.3e} at omega={omega!r}, t={t!r}")
    return s


def harmonic_phase(x, y, t: float, omega: float, units: PhysicalUnits, caustic_tol: Optional[float] = None):
    """
    Real exponent of the oscillator kernel:
    m omega / (2 hbar sin wt) * ((x^2 + y^2) cos wt - 2 x y).
    """
    s = _oscillator_sine(t, omega, caustic_tol)
    c = math.cos(omega * t)
    x = np.asarray(x)
    y = np.asarray(y)
    return units.mass * omega / (2.0 * units.hbar * s) * ((x**2 + y**2) * c - 2.0 * x * y)


def harmonic_kernel(x, y, t: float, omega: float, units: PhysicalUnits, caustic_tol: Optional[float] = None):
    s = _oscillator_sine(t, omega, caustic_tol)
    sheet = math.floor(omega * t / math.pi)
    modulus = math.sqrt(units.mass * omega / (2.0 * math.pi * units.hbar * abs(s)))
    prefactor = modulus * FRESNEL_PHASE * np.exp(-0.5j * np.pi * sheet)
    return prefactor * np.exp(1j * harmonic_phase(x, y, t, omega, units, caustic_tol))


def heat_kernel(x, y, t: float, units: PhysicalUnits):
    """Wick rotation t -> -i t of the free kernel; a normalized Gaussian in x with variance hbar t / m."""
    _require_positive_time(t)
    scale = 2.0 * np.pi * units.hbar * t / units.mass
    dx = np.asarray(x) - np.asarray(y)
    return np.exp(-units.mass * dx**2 / (2.0 * units.hbar * t)) / np.sqrt(scale)


def translation_shift(grid: GridSpec, t: float) -> int:
    """Shift by t, rounded to the nearest whole number of grid spacings."""
    return int(round(t / grid.spacing))


def translation_kernel_apply(v: ComplexGridVector, t: float) -> ComplexGridVector:
    """psi(x) -> psi(x - t) on the periodic grid, t rounded to the nearest grid multiple."""
    return v.with_values(np.roll(v.values, translation_shift(v.grid, t)))


def translation_matrix(grid: GridSpec, t: float) -> KernelMatrix:
    """Dense permutation matrix of the translation; only used by the flatness diagnostic."""
    shift = translation_shift(grid, t)
    entries = np.roll(np.eye(grid.n_points, dtype=complex), shift, axis=0)
    return KernelMatrix(grid=grid, t=t, entries=entries, method="translation", meta={"shift": shift})


def kernel_matrix_from_closed_form(grid: GridSpec, kernel_fn: Callable[..., np.ndarray], t: float) -> KernelMatrix:
    """
    Sample kernel_fn(x, y, t) on the grid nodes; entry = K(x_j, y_k, t) * spacing.
    """
    x = grid.points()
    entries = kernel_fn(x[:, None], x[None, :], t) * grid.spacing
    return KernelMatrix(grid=grid, t=t, entries=np.broadcast_to(entries, (grid.n_points,) * 2), method="closed_form")


@dataclass(slots=True)
class ContourQuadrature:
    """
    Trapezoid nodes on z = center + exp(i*rotation)*s, s in [-half_width, half_width].
    rotation = +-pi/4 turns a Fresnel integrand exp(i A z^2) into a decaying
    Gaussian when sign(rotation) = sign(A); rotation = 0 is the real axis.
    """

    half_width: float = 20.0
    n_nodes: int = 4001


def compose_numerically(
    k1: KernelFn,
    k2: KernelFn,
    x: float,
    y: float,
    *,
    quad: Optional[ContourQuadrature] = None,
    center: float = 0.0,
    rotation: float = 0.0,
) -> complex:
    """int K1(x, z) K2(z, y) dz along the rotated ray through `center`."""
    quad = quad or ContourQuadrature()
    s = np.linspace(-quad.half_width, quad.half_width, quad.n_nodes)
    direction = np.exp(1j * rotation)
    z = center + direction * s
    integrand = k1(x, z) * k2(z, y) * direction
    return complex(trapezoid(integrand, -quad.half_width, quad.half_width))


def _relative_deviation(value: complex, exact: complex) -> float:
    return abs(value - exact) / abs(exact)


def free_composition_error(
    x: float, y: float, t1: float, t2: float, units: PhysicalUnits, quad: Optional[ContourQuadrature] = None
) -> float:
    """Relative deviation of int K(x,z,t1) K(z,y,t2) dz from K(x,y,t1+t2) for the free kernel."""
    center = (x / t1 + y / t2) / (1.0 / t1 + 1.0 / t2)
    value = compose_numerically(
        lambda a, z: free_kernel(a, z, t1, units),
        lambda z, b: free_kernel(z, b, t2, units),
        x,
        y,
        quad=quad,
        center=center,
        rotation=np.pi / 4,
    )
    return _relative_deviation(value, complex(free_kernel(x, y, t1 + t2, units)))


def harmonic_composition(
    x: float,
    y: float,
    t1: float,
    t2: float,
    omega: float,
    units: PhysicalUnits,
    quad: Optional[ContourQuadrature] = None,
    caustic_tol: Optional[float] = None,
) -> complex:
    """Numerical int K(x,z,t1) K(z,y,t2) dz for the oscillator, contour through the stationary point."""
    s1 = _oscillator_sine(t1, omega, caustic_tol)
    s2 = _oscillator_sine(t2, omega, caustic_tol)
    # coefficient of z^2 in the exponent, up to m omega / (2 hbar)
    curvature = math.cos(omega * t1) / s1 + math.cos(omega * t2) / s2
    center = (x / s1 + y / s2) / curvature
    return compose_numerically(
        lambda a, z: harmonic_kernel(a, z, t1, omega, units, caustic_tol),
        lambda z, b: harmonic_kernel(z, b, t2, omega, units, caustic_tol),
        x,
        y,
        quad=quad,
        center=center,
        rotation=math.copysign(np.pi / 4, curvature),
    )


def harmonic_composition_error(
    x: float,
    y: float,
    t1: float,
    t2: float,
    omega: float,
    units: PhysicalUnits,
    quad: Optional[ContourQuadrature] = None,
    caustic_tol: Optional[float] = None,
) -> float:
    exact = complex(harmonic_kernel(x, y, t1 + t2, omega, units, caustic_tol))
    value = harmonic_composition(x, y, t1, t2, omega, units, quad, caustic_tol)
    return _relative_deviation(value, exact)


def heat_composition_error(
    x: float, y: float, t1: float, t2: float, units: PhysicalUnits, quad: Optional[ContourQuadrature] = None
) -> float:
    """Chapman-Kolmogorov check on the real axis."""
    value = compose_numerically(
        lambda a, z: heat_kernel(a, z, t1, units),
        lambda z, b: heat_kernel(z, b, t2, units),
        x,
        y,
        quad=quad,
    )
    return _relative_deviation(value, complex(heat_kernel(x, y, t1 + t2, units)))
