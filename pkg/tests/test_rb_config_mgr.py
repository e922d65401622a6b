"""pytest for RBConfigManager class."""
import datetime as dt
import os
import sys

import pytest

from resonant_blocks import RBConfigManager, RunConfig, VerifyConfig

# Remove the period if running this in the debugger
from .config_schemas import ConfigSchema

CONFIG_FILE = "tests/config.yaml"


print("Running test for RBConfigManager...")
# Get our default schema, validation schema, and placeholders
schemas = ConfigSchema()

# Initialize the RBConfigManager class
try:
    config = RBConfigManager(
        config_file=CONFIG_FILE,
        default_config=schemas.default,
        validation_schema=schemas.validation,
        placeholders=schemas.placeholders
    )
except RuntimeError as e:
    print(f"Configuration file error: {e}", file=sys.stderr)
    sys.exit(1)


def test_get_value():
    """Test reading configuration values from the config file."""
    value1 = config.get("Testing", "Value1")
    value2 = config.get("Testing", "Value2")

    string1 = config.get("Testing", "String1")
    string2 = config.get("Testing", "String2")

    assert value1 == value2, "Value1 and Value2 should be equal"
    assert string1 == string2, "String1 and String2 should be equal"
    assert config.get("Run", "MaxVertices") == 3, "MaxVertices from the file"
    assert config.get("Run", "NoSuchKey", default="fallback") == "fallback", "Missing keys return the default"


def test_load_config():
    """Test loading the configuration file."""
    assert config.load_config(), "Failed to load configuration"


def test_check_for_config_changes():
    """Test checking for changes in the configuration file."""
    # Create a fake last check time well in the past
    last_check = dt.datetime.now().astimezone() - dt.timedelta(days=365)
    assert config.check_for_config_changes(last_check) is not None, "Configuration changes were not detected"

    future_check = dt.datetime.now().astimezone() + dt.timedelta(days=1)
    assert config.check_for_config_changes(future_check) is None, "No change after the last check"


def test_reload_after_edit(tmp_path):
    """A newer file is reloaded in place and its values replace the old ones."""
    config_file = tmp_path / "reload.yaml"
    config_file.write_text("Run:\n  Seed: 3\n", encoding="utf-8")
    manager = RBConfigManager(config_file=str(config_file))
    loaded_at = manager.get_config_file_last_modified()
    assert manager.check_for_config_changes(loaded_at) is None, "Unchanged file"

    config_file.write_text("Run:\n  Seed: 11\n", encoding="utf-8")
    later = loaded_at.timestamp() + 60
    os.utime(config_file, (later, later))
    assert manager.check_for_config_changes(loaded_at) is not None, "Newer file detected"
    assert manager.get("Run", "Seed") == 11, "Seed from the edited file"


def test_check_for_placeholders():
    """Test checking for placeholders in the configuration."""
    assert not config.check_for_placeholders(schemas.placeholders), "Placeholders were found in the configuration"


def test_placeholder_in_file(tmp_path):
    bad_file = tmp_path / "placeholder.yaml"
    bad_file.write_text("Run:\n  OutputFolder: <Your report folder here>\n", encoding="utf-8")
    with pytest.raises(RuntimeError, match="Placeholder"):
        RBConfigManager(config_file=str(bad_file), placeholders=schemas.placeholders)


def test_validation_error(tmp_path):
    bad_file = tmp_path / "invalid.yaml"
    bad_file.write_text("Run:\n  MaxVertices: many\n", encoding="utf-8")
    with pytest.raises(RuntimeError, match="Validation error"):
        RBConfigManager(config_file=str(bad_file))


def test_missing_file_gets_defaults(tmp_path):
    """A config file that does not exist yet is created from the default configuration."""
    new_file = tmp_path / "new_config.yaml"
    manager = RBConfigManager(config_file=str(new_file), default_config=schemas.default, validation_schema=schemas.validation)
    assert new_file.exists(), "Default configuration written to disk"
    assert manager.get("Run", "Seed") == 7, "Seed from the default configuration"


def test_get_logger_settings():
    """Test getting logger settings from the configuration."""
    logger_settings = config.get_logger_settings()

    assert isinstance(logger_settings, dict), "Logger settings should be a dictionary"
    assert "logfile_name" in logger_settings, "Logger settings should contain 'logfile_name'"
    assert logger_settings["file_verbosity"] == "detailed", "File verbosity from the config file"
    assert logger_settings["max_lines"] == 5000, "Maximum lines from the config file"


def test_get_run_settings():
    settings = config.get_run_settings()
    assert isinstance(settings, RunConfig), "Run settings should be a RunConfig"
    assert (settings.m, settings.max_vertices, settings.seed, settings.samples) == (2, 3, 7, 64), "Values from the Run section"
    assert settings.primes == RunConfig().primes, "Primes fall back to the built-in list"

    overridden = config.get_run_settings(max_vertices=5, seed=None)
    assert overridden.max_vertices == 5, "Command line value wins"
    assert overridden.seed == 7, "None leaves the configured value"


def test_run_config_validation():
    with pytest.raises(ValueError, match="max_vertices"):
        RunConfig(max_vertices=0)
    with pytest.raises(ValueError, match="tolerance"):
        RunConfig(tolerance=0.0)
    with pytest.raises(ValueError, match="primes"):
        RunConfig(primes=())


def test_get_verify_settings():
    verify = config.get_verify_settings()
    assert isinstance(verify, VerifyConfig), "Verify settings should be a VerifyConfig"
    assert (verify.sweep_m, verify.sweep_max_vertices, verify.site_samples) == (2, 4, 3), "Values from the Verify section"


def test_in_memory_defaults():
    manager = RBConfigManager()
    assert manager.get("Files", "LogfileName") is None, "No log file by default"
    assert manager.get_run_settings() == RunConfig(), "Built-in defaults match RunConfig"
    assert manager.get_verify_settings() == VerifyConfig(), "Built-in defaults match VerifyConfig"
    assert manager.check_for_config_changes(None) is None, "Nothing on disk to watch"
