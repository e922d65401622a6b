"""Configuration schemas for use with the RBConfigManager class."""


class ConfigSchema:
    """Base class for configuration schemas."""

    def __init__(self):
        self.default = {
            "Files": {
                "LogfileName": "dev_testing/dev_testing.log",
                "LogfileMaxLines": 5000,
                "LogfileVerbosity": "detailed",
                "ConsoleVerbosity": "summary",
            },
            "Run": {
                "M": 2,
                "MaxVertices": 4,
                "CoordBound": 2,
                "Seed": 0,
                "Samples": 256,
                "OutputFolder": "<Your report folder here>",
                "Attempts": 64,
            },
            "Verify": {
                "SweepM": 3,
                "SweepMaxVertices": 4,
                "SweepBound": 2,
                "SiteSamples": 5,
                "SpectralTriples": 20,
            },
        }

        self.placeholders = {
            "Run": {
                "OutputFolder": "<Your report folder here>",
            }
        }

        self.validation = None
