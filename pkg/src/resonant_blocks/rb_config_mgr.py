"""Resonant blocks configuration manager module.

Management of the YAML run configuration.
"""
import copy
import datetime as dt
from dataclasses import dataclass
from pathlib import Path

import yaml
from cerberus import Validator
from mergedeep import merge

from resonant_blocks.rb_common import RBCommon
from resonant_blocks.rb_finite_field import PRIMES
from resonant_blocks.validation_schema import yaml_config_validation

DEFAULT_CONFIG = {
    "Files": {
        "LogfileName": None,
        "LogfileMaxLines": 10000,
        "LogfileVerbosity": "none",
        "ConsoleVerbosity": "summary",
    },
    "Run": {
        "M": 2,
        "MaxVertices": 4,
        "CoordBound": 2,
        "Primes": list(PRIMES),
        "Seed": 0,
        "Samples": 256,
        "Tolerance": 1e-6,
        "OutputFolder": "reports",
        "SitesDimension": 4,
        "SitesBox": 6,
        "Attempts": 64,
        "SymmetryQuotient": False,
        "LogRatioSpan": 4.0,
    },
    "Verify": {
        "SweepM": 4,
        "SweepMaxVertices": 6,
        "SweepBound": 3,
        "SeparationM": 3,
        "SeparationMaxVertices": 4,
        "SeparationBound": 2,
        "SiteSamples": 20,
        "SpectralTriples": 100,
        "MaxInconclusiveRate": 0.05,
    },
}


@dataclass(frozen=True)
class RunConfig:
    """Settings of one CLI run. All bounds are at least 1 and the tolerance is positive."""
    m: int = 2
    max_vertices: int = 4
    coord_bound: int = 2
    primes: tuple[int, ...] = PRIMES
    seed: int = 0
    samples: int = 256
    tolerance: float = 1e-6
    output_folder: str = "reports"
    sites_dimension: int = 4
    sites_box: int = 6
    attempts: int = 64
    symmetry_quotient: bool = False
    log_ratio_span: float = 4.0

    def __post_init__(self):
        for name in ("m", "max_vertices", "coord_bound", "samples", "sites_dimension", "sites_box", "attempts"):
            if getattr(self, name) < 1:
                msg = f"RunConfig.{name} must be at least 1, got {getattr(self, name)}."
                raise ValueError(msg)
        if self.tolerance <= 0:
            msg = f"RunConfig.tolerance must be positive, got {self.tolerance}."
            raise ValueError(msg)
        if not self.primes:
            msg = "RunConfig.primes must not be empty."
            raise ValueError(msg)
        object.__setattr__(self, "primes", tuple(self.primes))


@dataclass(frozen=True)
class VerifyConfig:
    """Ranges of the verification sweeps."""
    sweep_m: int = 4
    sweep_max_vertices: int = 6
    sweep_bound: int = 3
    separation_m: int = 3
    separation_max_vertices: int = 4
    separation_bound: int = 2
    site_samples: int = 20
    spectral_triples: int = 100
    max_inconclusive_rate: float = 0.05


class RBConfigManager:
    """Loads the configuration from a YAML file, validates it, and provides access to the configuration values."""

    def __init__(self, config_file: str | None = None, default_config: dict | None = None, validation_schema: dict | None = None, placeholders: dict | None = None):
        """Initializes the configuration manager.

        Args:
            config_file (Optional[str]): The relative or absolute path to the configuration file. None means the
                default configuration is used in memory and nothing is read from disk.
            default_config (Optional[dict], optional): A default configuration dict, written to config_file if that file
                does not exist. Defaults to DEFAULT_CONFIG.
            validation_schema (Optional[dict], optional): A cerberus style validation schema dict merged into the built-in schema.
            placeholders (Optional[dict], optional): A dictionary of placeholders to check in the config. If any of these are found, a exception will be raised.

        Raises:
            RuntimeError: If the config file cannot be located, or if there are YAML or validation errors in the config file.

        """
        self._config = {}
        self.config_file = config_file
        self.placeholders = placeholders
        self.default_config = copy.deepcopy(default_config if default_config is not None else DEFAULT_CONFIG)

        if validation_schema is None:
            self.validation_schema = yaml_config_validation
        else:
            self.validation_schema = merge({}, yaml_config_validation, validation_schema)

        self.config_path = None
        if self.config_file is not None:
            self.config_path = RBCommon.select_file_location(self.config_file)
            if self.config_path is None:
                msg = f"Cannot find config file {self.config_file}. Please check the path."
                raise RuntimeError(msg)

            # If the config file doesn't exist, write the default config to file
            if not self.config_path.exists():
                with Path(self.config_path).open("w", encoding="utf-8") as file:
                    yaml.dump(self.default_config, file)

        self.load_config()

    def load_config(self) -> bool:
        """Load the configuration from the config file specified to the __init__ method.

        Raises:
            RuntimeError: If there are YAML errors in the config file, if placeholders are found, or if validation fails.

        Returns:
            result (bool): True if the configuration was loaded successfully.
        """
        if self.config_path is None:
            self._config = copy.deepcopy(self.default_config)
        else:
            with Path(self.config_path).open(encoding="utf-8") as file:
                try:
                    self._config = yaml.safe_load(file) or {}
                except yaml.YAMLError as e:
                    msg = f"YAML error in config file {self.config_file}: {e}"
                    raise RuntimeError(msg) from e

        # Make sure there are no placeholders in the config, exit if there are
        self.check_for_placeholders(self.placeholders)

        if self.validation_schema is not None:
            v = Validator()
            if not v.validate(self._config, self.validation_schema):  # type: ignore[call-arg]
                error_lines = self._format_validator_errors(v.errors)  # type: ignore[call-arg]
                nice = "\n".join(error_lines)
                msg = f"Validation error for config file {self.config_path or '<defaults>'}: \n{nice}"
                raise RuntimeError(msg)

        return True

    @staticmethod
    def _format_validator_errors(err, path=""):
        msgs = []
        # dict: descend into keys
        if isinstance(err, dict):
            for k, vv in err.items():
                new_path = f"{path}: {k}" if path else str(k)
                msgs.extend(RBConfigManager._format_validator_errors(vv, new_path))
            return msgs
        # list: may contain strings or nested dicts (e.g. list of item errors)
        if isinstance(err, list):
            for idx, item in enumerate(err):
                if isinstance(item, dict):
                    new_path = f"{path}" if path else f"[{idx}]"
                    msgs.extend(RBConfigManager._format_validator_errors(item, new_path))
                elif isinstance(item, list):
                    msgs.extend(RBConfigManager._format_validator_errors(item, path))
                elif path:
                    msgs.append(f"{path} - {item}")
                else:
                    msgs.append(str(item))
            return msgs
        if path:
            msgs.append(f"{path}: {err}")
        else:
            msgs.append(str(err))
        return msgs

    def get_config_file_last_modified(self) -> dt.datetime | None:
        """Get the last modified time of the config file.

        Returns:
            dt.datetime | None: The last modified time if the config file exists, None otherwise.
        """
        if self.config_path is None or not self.config_path.exists():
            return None

        return dt.datetime.fromtimestamp(self.config_path.stat().st_mtime).astimezone()

    def check_for_config_changes(self, last_check: dt.datetime | None) -> dt.datetime | None:
        """Check if the configuration file has changed. If it has, reload the configuration.

        Args:
            last_check (dt.datetime | None): The last time the config was checked.

        Returns:
            result (dt.datetime | None): The new last modified time if the config has changed and was reloaded, None otherwise.
        """
        last_modified_dt = self.get_config_file_last_modified()
        if last_modified_dt is None:
            return None

        if last_check is None or last_modified_dt > last_check:
            self.load_config()
            return last_modified_dt

        return None

    def check_for_placeholders(self, placeholders: dict | None) -> bool:
        """Recursively scan the config for any instances of a key found in placeholders.

        Args:
            placeholders (dict): A dictionary of placeholders to check in the config.

        Raises:
            RuntimeError: If any placeholder is found in the config, an exception will be raised with a message indicating the placeholder and its value.

        Returns:
            result (bool): False when no placeholders are found.
        """  # noqa: DOC502
        def recursive_check(config_section, placeholder_section):
            for key, placeholder_value in placeholder_section.items():
                if key and key in config_section:
                    config_value = config_section[key]
                    if isinstance(placeholder_value, dict) and isinstance(config_value, dict):
                        if recursive_check(config_value, placeholder_value):
                            return True
                    elif config_value == placeholder_value:
                        msg = f"Placeholder value '{key}: {placeholder_value}' found in config file {self.config_path}. Please fix this."
                        raise RuntimeError(msg)
            return False

        if placeholders is None:
            return False

        return recursive_check(self._config, placeholders)

    def get(self, *keys, default=None):
        """Retrieve a value from the config dictionary using a sequence of nested keys.

        Example:
            value = config_mgr.get("Run", "MaxVertices")

        Args:
            keys (*keys): Sequence of keys to traverse the config dictionary.
            default (Optional[variable], optional): Value to return if the key path does not exist.

        Returns:
            value (variable): The value if found, otherwise the default.

        """
        value = self._config
        try:
            for key in keys:
                value = value[key]
        except (KeyError, TypeError):
            return default
        else:
            return default if value is None else value

    def get_logger_settings(self, config_section: str | None = "Files") -> dict:
        """Returns the logger settings from the config file.

        Args:
            config_section (Optional[str], optional): The section in the config file where logger settings are stored.

        Returns:
            settings (dict): A dictionary of logger settings that can be passed to the RBLogger() class initialization.
        """
        return {
            "logfile_name": self.get(config_section, "LogfileName"),
            "file_verbosity": self.get(config_section, "LogfileVerbosity", default="summary"),
            "console_verbosity": self.get(config_section, "ConsoleVerbosity", default="summary"),
            "max_lines": self.get(config_section, "LogfileMaxLines", default=10000),
            "timestamp_format": self.get(config_section, "TimestampFormat", default="%Y-%m-%d %H:%M:%S"),
            "log_process_id": self.get(config_section, "LogProcessID", default=False),
            "log_thread_id": self.get(config_section, "LogThreadID", default=False),
        }

    def get_run_settings(self, config_section: str = "Run", **overrides) -> RunConfig:
        """Returns the run settings, with command line overrides applied on top.

        Args:
            config_section (str, optional): The section in the config file where run settings are stored.
            **overrides: RunConfig field values that replace the configured ones when not None.

        Returns:
            RunConfig: The settings.
        """
        defaults = RunConfig()
        settings = {
            "m": self.get(config_section, "M", default=defaults.m),
            "max_vertices": self.get(config_section, "MaxVertices", default=defaults.max_vertices),
            "coord_bound": self.get(config_section, "CoordBound", default=defaults.coord_bound),
            "primes": tuple(self.get(config_section, "Primes", default=defaults.primes)),
            "seed": self.get(config_section, "Seed", default=defaults.seed),
            "samples": self.get(config_section, "Samples", default=defaults.samples),
            "tolerance": float(self.get(config_section, "Tolerance", default=defaults.tolerance)),
            "output_folder": self.get(config_section, "OutputFolder", default=defaults.output_folder),
            "sites_dimension": self.get(config_section, "SitesDimension", default=defaults.sites_dimension),
            "sites_box": self.get(config_section, "SitesBox", default=defaults.sites_box),
            "attempts": self.get(config_section, "Attempts", default=defaults.attempts),
            "symmetry_quotient": self.get(config_section, "SymmetryQuotient", default=defaults.symmetry_quotient),
            "log_ratio_span": float(self.get(config_section, "LogRatioSpan", default=defaults.log_ratio_span)),
        }
        settings.update({k: v for k, v in overrides.items() if v is not None})
        return RunConfig(**settings)

    def get_verify_settings(self, config_section: str = "Verify") -> VerifyConfig:
        """Returns the sweep ranges used by the verification suite.

        Args:
            config_section (str, optional): The section in the config file where verification settings are stored.

        Returns:
            VerifyConfig: The settings.
        """
        defaults = VerifyConfig()
        return VerifyConfig(
            sweep_m=self.get(config_section, "SweepM", default=defaults.sweep_m),
            sweep_max_vertices=self.get(config_section, "SweepMaxVertices", default=defaults.sweep_max_vertices),
            sweep_bound=self.get(config_section, "SweepBound", default=defaults.sweep_bound),
            separation_m=self.get(config_section, "SeparationM", default=defaults.separation_m),
            separation_max_vertices=self.get(config_section, "SeparationMaxVertices", default=defaults.separation_max_vertices),
            separation_bound=self.get(config_section, "SeparationBound", default=defaults.separation_bound),
            site_samples=self.get(config_section, "SiteSamples", default=defaults.site_samples),
            spectral_triples=self.get(config_section, "SpectralTriples", default=defaults.spectral_triples),
            max_inconclusive_rate=float(self.get(config_section, "MaxInconclusiveRate", default=defaults.max_inconclusive_rate)),
        )
