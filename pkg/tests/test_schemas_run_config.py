"""
Unit tests for app.schemas.run_config, app.schemas.field and app.schemas.matrix.
"""
import numpy as np
import pytest
from pydantic import ValidationError

from app.schemas.field import FieldConfig, LatticeConfig
from app.schemas.matrix import MatrixPayload
from app.schemas.run_config import RunConfig


class TestRunConfig:
    """Test RunConfig validation."""

    def test_valid_config(self, run_config_payload):
        """Test that a minimal payload validates with defaults filled in."""
        config = RunConfig.model_validate(run_config_payload)

        assert config.potential.kind == "free"
        assert config.method == "oracle"
        assert config.matched is True
        assert config.seed == 7

    def test_empty_t_list(self, run_config_payload):
        """Test that an empty sweep is rejected."""
        run_config_payload["t_list"] = []

        with pytest.raises(ValidationError):
            RunConfig.model_validate(run_config_payload)

    def test_t_list_must_decrease(self, run_config_payload):
        """Test that sweep times must be strictly decreasing."""
        run_config_payload["t_list"] = [0.1, 0.2]

        with pytest.raises(ValidationError):
            RunConfig.model_validate(run_config_payload)

    def test_missing_potential(self, run_config_payload):
        """Test that the potential is mandatory."""
        del run_config_payload["potential"]

        with pytest.raises(ValidationError):
            RunConfig.model_validate(run_config_payload)

    def test_unknown_field_forbidden(self, run_config_payload):
        """Test that typos in config keys are caught."""
        run_config_payload["windw"] = 0.3

        with pytest.raises(ValidationError):
            RunConfig.model_validate(run_config_payload)

    def test_seed_range(self, run_config_payload):
        """Test that seeds are unsigned 64-bit."""
        run_config_payload["seed"] = 2**64

        with pytest.raises(ValidationError):
            RunConfig.model_validate(run_config_payload)

    def test_json_schema_published(self):
        """Test that the schema lists the required sections."""
        schema = RunConfig.model_json_schema()

        assert {"grid", "potential", "t_list"} <= set(schema["required"])


class TestFieldConfig:
    """Test FieldConfig and LatticeConfig."""

    def test_round_trip_array(self):
        """Test row-major reshaping for d = 3."""
        lattice = LatticeConfig(dims=3, sites_per_dim=2, spacing=0.5, field_mass=1.0)
        values = np.arange(8.0).reshape(2, 2, 2)
        config = FieldConfig.from_array(lattice, values)

        assert config.values == list(np.arange(8.0))
        np.testing.assert_array_equal(config.array(), values)
        assert config.lattice == lattice

    def test_value_count_checked(self):
        """Test that the number of values must equal sites^dims."""
        with pytest.raises(ValidationError):
            FieldConfig(dims=1, sites=4, values=[0.0, 1.0])

    def test_site_limit(self):
        """Test the 2^20 site limit."""
        with pytest.raises(ValidationError):
            LatticeConfig(dims=3, sites_per_dim=128)


class TestMatrixPayload:
    """Test the {dim, re, im} matrix format."""

    def test_to_and_from_array(self):
        """Test conversion to a complex array."""
        matrix = np.array([[1.0, 1j], [0.5, -2.0]])
        payload = MatrixPayload.from_array(matrix)

        assert payload.dim == 2
        np.testing.assert_array_equal(payload.to_array(), matrix)

    def test_shape_checked(self):
        """Test that ragged rows are rejected."""
        with pytest.raises(ValidationError):
            MatrixPayload(dim=2, re=[[1.0, 0.0], [0.0]], im=[[0.0, 0.0], [0.0, 0.0]])
