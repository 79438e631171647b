"""
Unit tests for app.schemas.potential module.
"""
import numpy as np
import pytest
from pydantic import ValidationError

from app.core.errors import UnsupportedPotential
from app.schemas.grid import GridSpec
from app.schemas.potential import (
    FreePotential,
    HarmonicPotential,
    PolynomialPotential,
    TabulatedPotential,
    parse_potential,
)


class TestParsePotential:
    """Test discriminated-union parsing."""

    def test_parse_each_kind(self):
        """Test that the kind field selects the variant."""
        assert isinstance(parse_potential({"kind": "free"}), FreePotential)
        assert isinstance(parse_potential({"kind": "harmonic", "omega": 2.0}), HarmonicPotential)
        assert isinstance(parse_potential('{"kind": "polynomial", "coeffs": [0, 1]}'), PolynomialPotential)

    def test_unknown_kind(self):
        """Test that an unknown kind is a validation error."""
        with pytest.raises(ValidationError):
            parse_potential({"kind": "morse"})

    def test_degree_limit(self):
        """Test that polynomials above degree 8 are rejected."""
        with pytest.raises(ValidationError):
            PolynomialPotential(coeffs=[1.0] * 10)

    def test_harmonic_needs_positive_omega(self):
        """Test that omega must be positive."""
        with pytest.raises(ValidationError):
            HarmonicPotential(omega=0.0)


class TestEvaluate:
    """Test potential evaluation."""

    def test_harmonic_uses_mass(self):
        """Test V = m omega^2 x^2 / 2."""
        V = HarmonicPotential(omega=2.0)

        assert V.evaluate(3.0, mass=0.5) == pytest.approx(9.0)

    def test_polynomial_ascending(self):
        """Test ascending-degree coefficient order."""
        V = PolynomialPotential(coeffs=[1.0, 0.0, 2.0])

        np.testing.assert_allclose(V.evaluate(np.array([0.0, 1.0, 2.0])), [1.0, 3.0, 9.0])

    def test_tabulated_periodic_interpolation(self):
        """Test linear interpolation with periodic wrap."""
        grid = GridSpec(n_points=8, x_min=0.0, x_max=8.0)
        V = TabulatedPotential(grid=grid, values=[float(i) for i in range(8)])

        assert V.evaluate(2.5) == pytest.approx(2.5)
        assert V.evaluate(10.0) == pytest.approx(2.0)

    def test_tabulated_length_checked(self):
        """Test that the value count must match the grid."""
        with pytest.raises(ValidationError):
            TabulatedPotential(grid=GridSpec(n_points=8, x_min=0, x_max=1), values=[0.0])


class TestRescaled:
    """Test V_t(x) = t V(sqrt(t) x)."""

    def test_harmonic_maps_to_harmonic(self):
        """Test Harmonic(omega) -> Harmonic(omega t)."""
        assert HarmonicPotential(omega=1.5).rescaled(0.2).omega == pytest.approx(0.3)

    def test_polynomial_coefficients(self):
        """Test c_k -> c_k t^(1 + k/2) against direct evaluation."""
        V = PolynomialPotential(coeffs=[0.3, -1.0, 0.5, 0.0, 2.0])
        t = 0.37
        x = np.linspace(-3, 3, 11)

        np.testing.assert_allclose(V.rescaled(t).evaluate(x), t * V.evaluate(np.sqrt(t) * x), rtol=1e-12, atol=1e-14)

    def test_free_unchanged(self):
        """Test that the free potential is scale invariant."""
        assert FreePotential().rescaled(0.1) == FreePotential()

    def test_tabulated_unsupported(self):
        """Test that tabulated potentials cannot be rescaled."""
        V = TabulatedPotential(grid=GridSpec(n_points=8, x_min=0, x_max=1), values=[0.0] * 8)

        with pytest.raises(UnsupportedPotential):
            V.rescaled(0.5)

    def test_degree(self):
        """Test reported polynomial degree ignores trailing zeros."""
        assert PolynomialPotential(coeffs=[1.0, 2.0, 0.0]).degree == 1
        assert HarmonicPotential(omega=1.0).degree == 2
        assert FreePotential().degree == 0
