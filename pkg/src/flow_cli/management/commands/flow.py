import io
import logging
from typing import Any

from django.core.management.base import (
    BaseCommand,
    CommandError,
    CommandParser,
)

from core.exceptions import (
    DomainError,
    FlowError,
)
from flow_cli import messages
from flow_cli.config import RunCommand
from flow_cli.runners import run
from flow_cli.serializers import RunConfigSerializer


logger = logging.getLogger(__name__)

# Exit statuses besides 0
VALIDATION_FAILED = 1
SOLVER_FAILED = 2

OPTION_NAMES = (
    "cmd",
    "r0",
    "a",
    "b",
    "t_end",
    "dt_sample",
    "n",
    "extent",
    "samples",
    "zmax",
    "r_max",
    "vary",
    "values",
    "input",
    "out",
    "snapshot",
    "slice",
)


def _flatten_errors(errors: dict) -> str:
    parts = []
    for field, details in errors.items():
        details = details if isinstance(details, list) else [details]
        parts.append(f"{field}: {' '.join(str(detail) for detail in details)}")
    return "; ".join(parts)


class Command(BaseCommand):
    help = "Emit sphere-flow data as CSV: closed form, level set, vanishing time, fits, convergence and phase tables"

    def add_arguments(self, parser: CommandParser) -> None:
        parser.add_argument("--cmd", required=True, choices=RunCommand.values, help="What to compute")
        parser.add_argument("--r0", type=float, help="Initial radius (default 9)")
        parser.add_argument("--a", type=float, help="Advection rate (default 1)")
        parser.add_argument("--b", type=float, help="Curvature rate, >= 0 (default 10)")
        parser.add_argument("--t-end", type=float, help="End time (default 20)")
        parser.add_argument("--dt-sample", type=float, help="Sampling interval (default 0.1)")
        parser.add_argument("--n", type=int, help="Level-set cells per axis (default 64)")
        parser.add_argument("--extent", type=float, help="Level-set domain half-width (default 2*r0)")
        parser.add_argument("--samples", type=int, help="Rows of the phase and lambert tables")
        parser.add_argument("--zmax", type=float, help="Largest Lambert W argument (default 1)")
        parser.add_argument("--r-max", type=float, help="Largest radius of the phase table (default 2*b/a)")
        parser.add_argument("--vary", help="Rate varied by `family`: a or b (default a)")
        parser.add_argument("--values", help="Comma-separated values of the varied rate")
        parser.add_argument("--in", dest="input", help="Trajectory CSV read by `invert`")
        parser.add_argument("--out", help="Output CSV path (default stdout)")
        parser.add_argument("--snapshot", help="Binary snapshot of the final level-set field")
        parser.add_argument("--slice", help="CSV x,y,phi through the center of the final level-set field")

    def handle(self, *args: Any, **options: Any) -> None:
        data = {name: options[name] for name in OPTION_NAMES if options.get(name) is not None}
        command = data.get("cmd")

        serializer = RunConfigSerializer(data=data)
        if not serializer.is_valid():
            message = messages.VALIDATION_ERROR_MESSAGE.format(
                command=command, errors=_flatten_errors(serializer.errors)
            )
            logger.error(message)
            raise CommandError(message, returncode=VALIDATION_FAILED)
        config = serializer.to_config()

        logger.info(messages.RUN_STARTED_MESSAGE.format(command=command))
        buffer = io.StringIO()
        try:
            run(config, buffer)
        except FlowError as error:
            message = messages.RUN_FAILED_MESSAGE.format(command=command, error=error)
            logger.error(message)
            returncode = VALIDATION_FAILED if isinstance(error, DomainError) else SOLVER_FAILED
            raise CommandError(message, returncode=returncode) from error

        if config.output_path:
            try:
                with open(config.output_path, "w", newline="") as stream:
                    stream.write(buffer.getvalue())
            except OSError as error:
                message = messages.UNWRITABLE_OUTPUT_ERROR_MESSAGE.format(path=config.output_path, error=error)
                logger.error(message)
                raise CommandError(message, returncode=VALIDATION_FAILED) from error
            destination = config.output_path
        else:
            self.stdout.write(buffer.getvalue(), ending="")
            destination = "stdout"
        logger.info(messages.RUN_FINISHED_MESSAGE.format(command=command, destination=destination))
