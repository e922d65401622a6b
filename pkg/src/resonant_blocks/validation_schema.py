"""Validation schema for YAML configuration files."""

yaml_config_validation = {
    "Files": {
        "type": "dict",
        "schema": {
            "LogfileName": {"type": "string", "required": False, "nullable": True},
            "LogfileMaxLines": {"type": "number", "required": False, "nullable": True, "min": 0, "max": 100000},
            "TimestampFormat": {"type": "string", "required": False, "nullable": True},
            "LogProcessID": {"type": "boolean", "required": False, "nullable": True},
            "LogThreadID": {"type": "boolean", "required": False, "nullable": True},
            "LogfileVerbosity": {"type": "string", "required": True, "allowed": ["none", "error", "warning", "summary", "detailed", "debug", "all"]},
            "ConsoleVerbosity": {"type": "string", "required": True, "allowed": ["none", "error", "warning", "summary", "detailed", "debug"]},
        },
    },
    "Run": {
        "type": "dict",
        "required": False,
        "schema": {
            "M": {"type": "integer", "required": False, "nullable": True, "min": 1, "max": 8},
            "MaxVertices": {"type": "integer", "required": False, "nullable": True, "min": 1, "max": 12},
            "CoordBound": {"type": "integer", "required": False, "nullable": True, "min": 1, "max": 10},
            "Primes": {"type": "list", "required": False, "nullable": True, "minlength": 1, "schema": {"type": "integer", "min": 3}},
            "Seed": {"type": "integer", "required": False, "nullable": True},
            "Samples": {"type": "integer", "required": False, "nullable": True, "min": 1},
            "Tolerance": {"type": "number", "required": False, "nullable": True, "min": 0},
            "OutputFolder": {"type": "string", "required": False, "nullable": True},
            "SitesDimension": {"type": "integer", "required": False, "nullable": True, "min": 1, "max": 32},
            "SitesBox": {"type": "integer", "required": False, "nullable": True, "min": 1},
            "Attempts": {"type": "integer", "required": False, "nullable": True, "min": 1},
            "SymmetryQuotient": {"type": "boolean", "required": False, "nullable": True},
            "LogRatioSpan": {"type": "number", "required": False, "nullable": True, "min": 0},
        },
    },
    "Verify": {
        "type": "dict",
        "required": False,
        "schema": {
            "SweepM": {"type": "integer", "required": False, "nullable": True, "min": 1, "max": 8},
            "SweepMaxVertices": {"type": "integer", "required": False, "nullable": True, "min": 1, "max": 12},
            "SweepBound": {"type": "integer", "required": False, "nullable": True, "min": 1, "max": 10},
            "SeparationM": {"type": "integer", "required": False, "nullable": True, "min": 1, "max": 8},
            "SeparationMaxVertices": {"type": "integer", "required": False, "nullable": True, "min": 1, "max": 12},
            "SeparationBound": {"type": "integer", "required": False, "nullable": True, "min": 1, "max": 10},
            "SiteSamples": {"type": "integer", "required": False, "nullable": True, "min": 1},
            "SpectralTriples": {"type": "integer", "required": False, "nullable": True, "min": 1},
            "MaxInconclusiveRate": {"type": "number", "required": False, "nullable": True, "min": 0, "max": 1},
        },
    },
}
