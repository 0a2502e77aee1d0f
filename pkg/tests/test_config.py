"""Tests for the settings file."""

from __future__ import annotations

from pathlib import Path

import pytest
from pydantic import ValidationError

from knotring.config import CONFIG_FILE_NAME, DEFAULT_SAMPLES, Settings, load_config, save_config


class TestConfig:
  def test_defaults_without_file(self, tmp_path: Path):
    settings = load_config(project_root=str(tmp_path))
    assert settings == Settings()
    assert settings.curves.samples == DEFAULT_SAMPLES

  def test_explicit_path_must_exist(self, tmp_path: Path):
    with pytest.raises(FileNotFoundError):
      load_config(str(tmp_path / "missing.toml"))

  def test_round_trip(self, tmp_path: Path):
    """Test that saved settings load back unchanged."""
    settings = Settings.model_validate({"curves": {"samples": 1024, "tol": 1e-9}, "rings": {"max_exponent": 64}})
    path = tmp_path / CONFIG_FILE_NAME
    save_config(settings, str(path))
    assert load_config(project_root=str(tmp_path)) == settings

  def test_partial_file(self, tmp_path: Path):
    """Test that missing keys fall back to defaults."""
    path = tmp_path / CONFIG_FILE_NAME
    path.write_text("[curves]\nbudget = 5\n")
    settings = load_config(str(path))
    assert settings.curves.budget == 5
    assert settings.curves.samples == DEFAULT_SAMPLES

  def test_invalid_values(self, tmp_path: Path):
    path = tmp_path / CONFIG_FILE_NAME
    path.write_text("[curves]\nsamples = 3\n")
    with pytest.raises(ValidationError):
      load_config(str(path))

  def test_shipped_file_matches_defaults(self):
    """Test that the knotring.toml in the repository holds the defaults."""
    root = Path(__file__).resolve().parent.parent
    assert load_config(str(root / CONFIG_FILE_NAME)) == Settings()
