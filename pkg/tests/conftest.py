"""
Pytest configuration and shared fixtures for all tests.
"""
from pathlib import Path

import numpy as np
import orjson
import pytest

from app.schemas.grid import GridSpec, PhysicalUnits
from app.schemas.potential import FreePotential, HarmonicPotential, PolynomialPotential


@pytest.fixture
def units() -> PhysicalUnits:
    """hbar = m = 1."""
    return PhysicalUnits(hbar=1.0, mass=1.0)


@pytest.fixture
def small_grid() -> GridSpec:
    """128-point periodic grid on [-10, 10)."""
    return GridSpec(n_points=128, x_min=-10.0, x_max=10.0)


@pytest.fixture
def rng() -> np.random.Generator:
    """Seeded generator for reproducible random samples."""
    return np.random.default_rng(20240611)


@pytest.fixture
def free() -> FreePotential:
    return FreePotential()


@pytest.fixture
def harmonic() -> HarmonicPotential:
    return HarmonicPotential(omega=1.0)


@pytest.fixture
def quartic() -> PolynomialPotential:
    """V(x) = x^4."""
    return PolynomialPotential(coeffs=[0.0, 0.0, 0.0, 0.0, 1.0])


@pytest.fixture
def write_json(tmp_path):
    """Write a payload as JSON under tmp_path and return the path."""

    def _write(name: str, payload) -> Path:
        path = tmp_path / name
        path.write_bytes(orjson.dumps(payload, option=orjson.OPT_SERIALIZE_NUMPY))
        return path

    return _write


@pytest.fixture
def run_config_payload() -> dict:
    """Minimal valid RunConfig for a free particle."""
    return {
        "units": {"hbar": 1.0, "mass": 1.0},
        "grid": {"n_points": 32, "x_min": -5.0, "x_max": 5.0},
        "potential": {"kind": "free"},
        "t_list": [0.4, 0.2],
        "seed": 7,
        "window": 0.5,
    }
