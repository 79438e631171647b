"""
Unit tests for app.services.field_lattice module.
"""
import math

import numpy as np
import pytest

from app.core.errors import GridMismatch, ModeCaustic, NonPositiveTime, UnsupportedPotential
from app.schemas.field import FieldConfig, LatticeConfig
from app.schemas.grid import GridSpec, PhysicalUnits
from app.schemas.potential import HarmonicPotential, PolynomialPotential, TabulatedPotential
from app.services import field_lattice as fl
from app.services.closed_kernels import harmonic_phase


@pytest.fixture
def lattice_1d() -> LatticeConfig:
    """16 sites, unit spacing, unit mass."""
    return LatticeConfig(dims=1, sites_per_dim=16, spacing=1.0, field_mass=1.0)


@pytest.fixture
def random_pair(lattice_1d, rng):
    """Two random configurations on the 16-site lattice."""
    alpha = FieldConfig.from_array(lattice_1d, rng.standard_normal(16))
    beta = FieldConfig.from_array(lattice_1d, rng.standard_normal(16))
    return alpha, beta


class TestDispersion:
    """Test dispersion and mode_indices functions."""

    def test_zero_mode_is_mass(self):
        """Test omega = m at zero momentum."""
        lattice = LatticeConfig(dims=1, sites_per_dim=8, field_mass=1.0)

        assert fl.dispersion(0, lattice) == pytest.approx(1.0)

    def test_massless_unit_frequency(self):
        """Test omega = 1 for n = 1 when D a = 2 pi."""
        lattice = LatticeConfig(dims=1, sites_per_dim=8, spacing=2.0 * math.pi / 8, field_mass=0.0)

        assert fl.dispersion(1, lattice) == pytest.approx(1.0)

    def test_three_dimensions(self):
        """Test that momenta add in quadrature across axes."""
        lattice = LatticeConfig(dims=3, sites_per_dim=4, spacing=1.0, field_mass=0.5)
        p = 2.0 * math.pi / 4.0

        assert fl.dispersion((1, 0, -1), lattice) == pytest.approx(math.sqrt(2.0 * p**2 + 0.25))

    def test_wrong_rank(self):
        """Test that the mode index must match the lattice dimension."""
        lattice = LatticeConfig(dims=3, sites_per_dim=4)

        with pytest.raises(ValueError):
            fl.dispersion(1, lattice)

    def test_mode_order(self):
        """Test signed indices in FFT flat order."""
        lattice = LatticeConfig(dims=1, sites_per_dim=4)

        assert fl.mode_indices(lattice) == [(0,), (1,), (-2,), (-1,)]


class TestFieldTransitionPhase:
    """Test field_transition_phase function."""

    def test_zero_fields(self, lattice_1d):
        """Test that vanishing configurations have zero phase."""
        zero = FieldConfig.from_array(lattice_1d, np.zeros(16))

        assert fl.field_transition_phase(zero, zero, 0.5).total_phase == 0.0

    @pytest.mark.parametrize("k", [1, 3])
    def test_single_mode_is_oscillator_phase(self, lattice_1d, k):
        """Test that one excited mode reproduces L times the oscillator exponent."""
        A, B, t = 0.7, -0.3, 0.4
        alpha = fl.field_config_from_modes(lattice_1d, {(k,): A})
        beta = fl.field_config_from_modes(lattice_1d, {(k,): B})
        omega = fl.dispersion(k, lattice_1d)

        breakdown = fl.field_transition_phase(alpha, beta, t)
        expected = lattice_1d.side_length * harmonic_phase(A, B, t, omega, PhysicalUnits())

        assert breakdown.total_phase == pytest.approx(float(expected), rel=1e-10)
        excited = [m for m in breakdown.modes if abs(m.contribution) > 1e-12]
        assert [m.mode_index for m in excited] == [(k,)]
        assert excited[0].omega == pytest.approx(omega)

    def test_sine_mode(self, lattice_1d):
        """Test that a sine component enters like a cosine one."""
        t = 0.4
        alpha = fl.field_config_from_modes(lattice_1d, {(2,): (0.0, 0.5)})
        beta = fl.field_config_from_modes(lattice_1d, {(2,): (0.0, 0.1)})
        omega = fl.dispersion(2, lattice_1d)

        expected = lattice_1d.side_length * harmonic_phase(0.5, 0.1, t, omega, PhysicalUnits())

        assert fl.field_transition_phase(alpha, beta, t).total_phase == pytest.approx(float(expected), rel=1e-10)

    def test_mode_pairs_reported_once(self):
        """Test that k and -k share one entry and the Nyquist mode stands alone."""
        lattice = LatticeConfig(dims=1, sites_per_dim=8, field_mass=1.0)
        zero = FieldConfig.from_array(lattice, np.zeros(8))

        modes = [m.mode_index for m in fl.field_transition_phase(zero, zero, 0.3).modes]

        assert modes == [(0,), (1,), (2,), (3,), (-4,)]

    def test_symmetric_in_alpha_beta(self, random_pair):
        """Test phase(alpha, beta) = phase(beta, alpha)."""
        alpha, beta = random_pair

        assert fl.field_transition_phase(alpha, beta, 0.7).total_phase == pytest.approx(
            fl.field_transition_phase(beta, alpha, 0.7).total_phase, rel=1e-12
        )

    def test_translation_invariant(self, lattice_1d, random_pair):
        """Test that shifting both configurations leaves the phase unchanged."""
        alpha, beta = random_pair
        shifted_alpha = FieldConfig.from_array(lattice_1d, np.roll(alpha.array(), 5))
        shifted_beta = FieldConfig.from_array(lattice_1d, np.roll(beta.array(), 5))

        assert fl.field_transition_phase(shifted_alpha, shifted_beta, 0.7).total_phase == pytest.approx(
            fl.field_transition_phase(alpha, beta, 0.7).total_phase, rel=1e-10
        )

    def test_three_dimensional_translation(self, rng):
        """Test translation invariance on a d = 3 lattice."""
        lattice = LatticeConfig(dims=3, sites_per_dim=4, spacing=0.5, field_mass=0.3)
        a = rng.standard_normal(lattice.shape)
        b = rng.standard_normal(lattice.shape)
        base = fl.field_transition_phase(FieldConfig.from_array(lattice, a), FieldConfig.from_array(lattice, b), 0.2)
        moved = fl.field_transition_phase(
            FieldConfig.from_array(lattice, np.roll(a, (1, 2, 3), axis=(0, 1, 2))),
            FieldConfig.from_array(lattice, np.roll(b, (1, 2, 3), axis=(0, 1, 2))),
            0.2,
        )

        assert moved.total_phase == pytest.approx(base.total_phase, rel=1e-10)

    def test_massless_zero_mode_limit(self):
        """Test that constant massless fields give L (c1 - c2)^2 / t."""
        lattice = LatticeConfig(dims=1, sites_per_dim=8, spacing=0.5, field_mass=0.0)
        alpha = FieldConfig.from_array(lattice, np.full(8, 1.5))
        beta = FieldConfig.from_array(lattice, np.full(8, 0.5))

        assert fl.field_transition_phase(alpha, beta, 0.2).total_phase == pytest.approx(4.0 * 1.0 / 0.2)

    def test_mode_caustic(self):
        """Test that sin(omega_k t) = 0 raises ModeCaustic naming the mode."""
        lattice = LatticeConfig(dims=1, sites_per_dim=8, spacing=1.0, field_mass=0.0)
        zero = FieldConfig.from_array(lattice, np.zeros(8))

        with pytest.raises(ModeCaustic) as exc_info:
            fl.field_transition_phase(zero, zero, 4.0)

        assert exc_info.value.mode == (1,)

    def test_lattice_mismatch(self, lattice_1d):
        """Test that configurations on different lattices are refused."""
        other = LatticeConfig(dims=1, sites_per_dim=8, field_mass=1.0)

        with pytest.raises(GridMismatch):
            fl.field_transition_phase(
                FieldConfig.from_array(lattice_1d, np.zeros(16)), FieldConfig.from_array(other, np.zeros(8)), 0.1
            )

    def test_non_positive_time(self, random_pair):
        """Test that t <= 0 raises NonPositiveTime."""
        with pytest.raises(NonPositiveTime):
            fl.field_transition_phase(*random_pair, 0.0)


class TestShortTimePhase:
    """Test field_short_time_phase against the full phase."""

    def test_agreement_at_small_time(self, random_pair):
        """Test relative agreement within 1e-2 at t = 1e-3."""
        breakdown = fl.field_transition_phase(*random_pair, 1e-3, with_short_time=True)

        assert breakdown.short_time_phase == pytest.approx(breakdown.total_phase, rel=1e-2)

    def test_deviation_decreases(self, random_pair):
        """Test that the relative deviation shrinks as t -> 0."""
        deviations = []
        for t in (1e-1, 1e-2, 1e-3):
            full = fl.field_transition_phase(*random_pair, t).total_phase
            short = fl.field_short_time_phase(*random_pair, t)
            deviations.append(abs(full - short) / abs(full))

        assert deviations[0] > deviations[1] > deviations[2]

    def test_volume_factor(self):
        """Test (1/t) sum a^d (alpha - beta)^2 by hand."""
        lattice = LatticeConfig(dims=1, sites_per_dim=4, spacing=0.5)
        alpha = FieldConfig.from_array(lattice, np.array([1.0, 0.0, 0.0, 0.0]))
        beta = FieldConfig.from_array(lattice, np.zeros(4))

        assert fl.field_short_time_phase(alpha, beta, 0.25) == pytest.approx(2.0)


class TestModeComposition:
    """Test mode_composition_check function."""

    @pytest.mark.parametrize("omega", [0.5, 1.3, 3.0])
    def test_group_law_per_mode(self, omega):
        """Test that each mode kernel composes within 1e-6."""
        assert fl.mode_composition_check(omega, 0.2, 0.3) <= 1e-6


class TestRescaleLagrangian:
    """Test rescale_lagrangian_4form function."""

    def test_composition_law(self):
        """Test that rescaling by s1 then s2 equals rescaling by s1 * s2."""
        V = PolynomialPotential(coeffs=[0.1, 0.0, 0.4, 0.0, 2.0])
        first = fl.rescale_lagrangian_4form(0.6, potential=V)
        twice = fl.rescale_lagrangian_4form(
            0.3,
            grad_coeff=first.gradient,
            mass_coeff=first.mass,
            potential=first.potential,
            kinetic_coeff=first.kinetic,
        )
        once = fl.rescale_lagrangian_4form(0.18, potential=V)

        assert twice.kinetic == once.kinetic == 0.5
        assert twice.gradient == pytest.approx(once.gradient, rel=1e-12)
        assert twice.mass == pytest.approx(once.mass, rel=1e-12)
        np.testing.assert_allclose(twice.potential.coeffs, once.potential.coeffs, rtol=1e-12)

    def test_quartic_coupling(self):
        """Test lambda -> s^3 lambda for a quartic self-coupling."""
        result = fl.rescale_lagrangian_4form(0.25, potential=PolynomialPotential(coeffs=[0.0, 0.0, 0.0, 0.0, 1.0]))

        assert result.potential.coeffs[4] == pytest.approx(0.25**3)
        assert result.gradient == pytest.approx(-0.5 / 16.0)
        assert result.mass == pytest.approx(0.5 / 16.0)

    def test_non_kinetic_terms_decay(self):
        """Test that only the kinetic term survives as s -> 0."""
        V = HarmonicPotential(omega=2.0)
        result = fl.rescale_lagrangian_4form(1e-4, potential=V)

        assert result.kinetic == 0.5
        assert abs(result.gradient) < 1e-7
        assert abs(result.mass) < 1e-7
        assert max(abs(c) for c in result.potential.coeffs) < 1e-7

    def test_default_potential(self):
        """Test that no potential rescales to zero."""
        assert fl.rescale_lagrangian_4form(2.0).potential.coeffs == [0.0]

    def test_invalid_scale(self):
        """Test that s <= 0 is rejected."""
        with pytest.raises(ValueError):
            fl.rescale_lagrangian_4form(0.0)

    def test_tabulated_unsupported(self):
        """Test that tabulated potentials cannot be rescaled."""
        V = TabulatedPotential(grid=GridSpec(n_points=8, x_min=0.0, x_max=1.0), values=[0.0] * 8)

        with pytest.raises(UnsupportedPotential):
            fl.rescale_lagrangian_4form(0.5, potential=V)
