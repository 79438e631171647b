"""
Unit tests for app.utils.formatting module.
"""
import numpy as np
import pytest

from app.utils.formatting import canonical_json, config_hash, format_cell, format_float, mode_label


class TestFormatFloat:
    """Test format_float function."""

    def test_default_round_trips(self):
        """Test that 17 significant digits reproduce the double exactly."""
        value = 0.1 + 0.2

        assert float(format_float(value)) == value
        assert format_float(0.5) == "5.0000000000000000e-01"

    def test_custom_digits(self):
        """Test a shorter precision."""
        assert format_float(1234.5, 3) == "1.23e+03"

    @pytest.mark.parametrize("value, expected", [(float("nan"), "nan"), (float("inf"), "inf"), (float("-inf"), "-inf")])
    def test_non_finite(self, value, expected):
        """Test that non-finite values print as their repr."""
        assert format_float(value) == expected


class TestFormatCell:
    """Test format_cell function."""

    @pytest.mark.parametrize(
        "value, expected",
        [
            (True, "true"),
            (None, "none"),
            (7, "7"),
            ("free", "free"),
            (np.int64(3), "3"),
            (complex(1.0, -2.0), "1.00e+00-2.00e+00j"),
            (complex(0.5, 0.0), "5.00e-01+0.00e+00j"),
        ],
    )
    def test_cells(self, value, expected):
        """Test cell rendering per type."""
        assert format_cell(value, 3) == expected

    def test_numpy_float(self):
        """Test that numpy floats use the float format."""
        assert format_cell(np.float64(0.25), 2) == "2.5e-01"


class TestConfigHash:
    """Test canonical_json and config_hash."""

    def test_key_order_irrelevant(self):
        """Test that dict ordering does not change the hash."""
        assert config_hash({"a": 1, "b": [1.5, 2]}) == config_hash({"b": [1.5, 2], "a": 1})

    def test_hash_is_sha256_hex(self):
        """Test the digest format."""
        digest = config_hash({"x": 1})

        assert len(digest) == 64
        assert int(digest, 16) >= 0

    def test_canonical_json_numpy(self):
        """Test that numpy arrays serialize."""
        assert canonical_json({"v": np.array([1, 2])}) == b'{"v":[1,2]}'


class TestModeLabel:
    """Test mode_label function."""

    def test_label(self):
        """Test colon-joined signed indices."""
        assert mode_label((1, 0, -2)) == "1:0:-2"
        assert mode_label((3,)) == "3"
