from pathlib import Path
from unittest.mock import patch

import pytest
import yaml

from zagreb.common import (
    CycleError,
    TreeValidationError,
    ZagrebError,
    load_user_config,
    validate_file,
)


class TestUserConfig:
    """
    Tests and fixtures for working with user configurations.
    """

    @pytest.fixture
    def tmp_cfg(self, tmp_path):
        fname = tmp_path / "cfg.yaml"
        with open(fname, "w") as f:
            yaml.dump({"budget": 500, "enumeration": {"threads": 2}}, f)
        return fname

    def test_load_user_config(self, tmp_cfg):
        cfg = load_user_config(tmp_cfg)
        assert cfg.budget == 500
        assert cfg.enumeration.threads == 2

    def test_load_empty_config(self, tmp_path):
        fname = tmp_path / "empty.yaml"
        fname.touch()
        assert load_user_config(fname) == {}


class TestPathValidation:
    """
    Unit tests and fixtures for file-related validation functions.
    """

    @pytest.fixture
    def tmp_dir(self, tmp_path):
        path = tmp_path
        return path

    def test_validate_file(self, tmp_dir):
        p = "trees.g6"
        # Test for bad input
        with pytest.raises(TypeError):
            validate_file(None)

        # Test for bad path
        with pytest.raises(FileNotFoundError):
            validate_file(p, create=False)

        # Test for good path
        with patch("pathlib.Path.is_file", return_value=True):
            validated_path = validate_file(p, create=False)
        assert validated_path == Path(p)

        # Test that non-existent file is created
        tmp_file = tmp_dir / "out" / "witness.dot"
        assert tmp_file.is_file() is False
        assert validate_file(tmp_file, create=True).is_file()

        # Test that filename exists but is not a file
        samename = tmp_dir / "out" / "runs"
        assert samename.exists() is False
        samename.mkdir(parents=True)
        with pytest.raises(FileExistsError):
            validate_file(samename, create=False)
        with pytest.raises(FileExistsError):
            validate_file(samename, create=True)


def test_error_hierarchy():
    assert issubclass(CycleError, TreeValidationError)
    assert issubclass(TreeValidationError, ZagrebError)
    # callers catching ValueError still see validation failures
    assert issubclass(TreeValidationError, ValueError)
