# Settings for the logging system, including log levels, formatting and handlers.

import logging
import os
from pathlib import Path
from typing import Union

from settings.common import BASE_DIR


LOGS_DIR = Path(os.getenv("FLOW_LOGS_DIR", BASE_DIR.parent / "logs"))

# Create a directory if it doesn't exist
LOGS_DIR.mkdir(parents=True, exist_ok=True)

LOGS_FILE_NAME = "logs"

# Level of the solver packages; DEBUG shows per-iteration detail of the numerical methods
FLOW_LOG_LEVEL = os.getenv("FLOW_LOG_LEVEL", "INFO")

SOLVER_PACKAGES = (
    "analytic_flow",
    "core",
    "flow_cli",
    "inverse_solver",
    "lambert_w",
    "levelset_solver",
)


class DebugAndInfoOnlyFilter(logging.Filter):
    """
    A logging filter that only allows DEBUG and INFO level log records to pass through.

    Attached to the console handler so that warnings and errors go to the rotating file only and the CSV a command
    writes to stdout is never interleaved with diagnostics above INFO.
    """

    def filter(self, record: logging.LogRecord) -> Union[bool, logging.LogRecord]:
        return record.levelno in (logging.DEBUG, logging.INFO)


LOGGING = {
    "version": 1,
    "disable_existing_loggers": False,
    "filters": {
        "debug_and_info_only_filter": {
            "()": DebugAndInfoOnlyFilter,
        },
    },
    "formatters": {
        "custom_formatter": {
            "format": "{levelname} - {asctime} - {pathname}:{lineno} - {funcName}() - {message}",
            "style": "{",
        },
    },
    "handlers": {
        "console": {
            "class": "logging.StreamHandler",
            # stderr keeps stdout clean for CSV output
            "stream": "ext://sys.stderr",
            "filters": [
                "debug_and_info_only_filter",
            ],
            "formatter": "custom_formatter",
        },
        "file": {
            "level": "WARNING",
            "class": "logging.handlers.TimedRotatingFileHandler",
            "formatter": "custom_formatter",
            "filename": os.path.join(LOGS_DIR, LOGS_FILE_NAME),
            "when": "midnight",
            "backupCount": 3,
        },
    },
    "loggers": {package: {"level": FLOW_LOG_LEVEL} for package in SOLVER_PACKAGES},
    "root": {
        "handlers": [
            "console",
            "file",
        ],
        "level": "INFO",
    },
}
