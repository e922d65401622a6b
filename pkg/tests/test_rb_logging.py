"""pytest for RBLogger class."""
import io
import sys

import pytest

from resonant_blocks import RBConfigManager, RBLogger

# Remove the period if running this in the debugger
from .config_schemas import ConfigSchema

CONFIG_FILE = "tests/config.yaml"


print("Running test for RBLogging...")
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

# Initialize the RBLogger class
try:
    logger = RBLogger(config.get_logger_settings())
except RuntimeError as e:
    print(f"Logger initialisation error: {e}", file=sys.stderr)
    sys.exit(1)


def test_log_normal():
    """Test logging a normal message."""
    message = f"Test message from {sys._getframe().f_code.co_name}"  # noqa: SLF001

    assert logger.log_message(message, "summary") is None, "Logging normal message."


def test_log_error():
    """Test logging an error message."""
    message = f"Test error message from {sys._getframe().f_code.co_name}"  # noqa: SLF001

    assert logger.log_message(message, "error") is None, "Logging error message."


def test_log_invalid_verbosity():
    with pytest.raises(ValueError, match="Invalid verbosity"):
        logger.log_message("Never written", "loud")


def test_trim_logfile():
    assert logger.trim_logfile() is None, "Trimming log file."


def test_console_stream_and_levels(capsys):
    """Summary messages go to the console stream, warnings and errors to standard error."""
    stream = io.StringIO()
    quiet = RBLogger({"console_verbosity": "summary", "file_verbosity": "none"}, console_stream=stream)
    quiet.log_message("Graph [0,0] [1,-1] certified", "summary")
    quiet.log_message("Hidden detail", "detailed")
    quiet.log_message("Inconclusive at every prime", "warning")

    assert stream.getvalue() == "Graph [0,0] [1,-1] certified\n", "Only the summary line reaches the stream"
    assert "WARNING: Inconclusive at every prime" in capsys.readouterr().err, "Warnings go to standard error"


def test_logfile_is_trimmed(tmp_path):
    log_path = tmp_path / "trim.log"
    small = RBLogger({"logfile_name": str(log_path), "file_verbosity": "all", "console_verbosity": "none", "max_lines": 3})
    for index in range(6):
        small.log_message(f"line {index}", "debug")
    small.trim_logfile()

    lines = log_path.read_text(encoding="utf-8").splitlines()
    assert len(lines) == 3, "Only max_lines lines are kept"
    assert lines[-1].endswith("line 5"), "The newest lines survive"


def test_invalid_settings():
    with pytest.raises(ValueError, match="Invalid verbosity"):
        RBLogger({"console_verbosity": "shouting"})


def test_log_fatal_error():
    quiet = RBLogger({"console_verbosity": "none", "file_verbosity": "none"})
    with pytest.raises(SystemExit) as exc_info:
        quiet.log_fatal_error("Cannot continue", exit_code=2)
    assert exc_info.value.code == 2, "Exit code is passed through"
