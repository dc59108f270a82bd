"""
One function per `flow` command, each writing its CSV to a text stream.
"""

import csv
import logging
import math
from typing import (
    IO,
    Callable,
    Optional,
)

from django.conf import settings

from analytic_flow.closed_form import (
    evolve_trajectory,
    meta_stable_radius,
    vanishing_time,
)
from analytic_flow.domain import (
    FlowParams,
    RadiusTrajectory,
)
from analytic_flow.sampling import sample_times
from core.exceptions import DomainError
from core.formatting import (
    format_number,
    write_csv,
)
from flow_cli import messages
from flow_cli.config import (
    RunCommand,
    RunConfig,
    VariedRate,
)
from inverse_solver.exceptions import DegenerateData
from inverse_solver.linear import fit_linear
from inverse_solver.nonlinear import fit_nonlinear
from lambert_w.branches import LambertBranch
from lambert_w.functions import (
    BRANCH_POINT,
    lambert_w,
)
from levelset_solver.domain import GridSpec
from levelset_solver.evolution import run_evolution
from levelset_solver.snapshots import (
    write_slice,
    write_snapshot,
)


logger = logging.getLogger(__name__)

ORIGIN = (0.0, 0.0, 0.0)
# Without a meta-stable radius the phase table spans this multiple of r0
PHASE_SPAN_FACTOR = 2.0


def _finite_or_none(value: float) -> Optional[float]:
    return value if math.isfinite(value) else None


def read_trajectory(path: str) -> RadiusTrajectory:
    """
    Reads a `t,r` CSV with a header row.

    :raises DomainError: if the file cannot be read or does not hold a valid trajectory.
    """

    try:
        with open(path, newline="") as stream:
            reader = csv.DictReader(stream)
            if reader.fieldnames is None or not {"t", "r"} <= set(reader.fieldnames):
                raise DomainError(messages.INPUT_COLUMNS_ERROR_MESSAGE.format(path=path, header=reader.fieldnames))
            samples = []
            for row in reader:
                try:
                    samples.append((float(row["t"]), float(row["r"])))
                except (TypeError, ValueError) as error:
                    raise DomainError(
                        messages.INPUT_VALUE_ERROR_MESSAGE.format(path=path, line=reader.line_num, error=error)
                    )
    except OSError as error:
        raise DomainError(messages.UNREADABLE_INPUT_ERROR_MESSAGE.format(path=path, error=error)) from error

    return RadiusTrajectory.from_samples(samples)


def run_analytic(config: RunConfig, stream: IO[str]) -> None:
    trajectory = evolve_trajectory(config.params, config.r0, sample_times(config.t_end, config.dt_sample))
    write_csv(stream, ("t", "r"), trajectory.samples)


def run_levelset(config: RunConfig, stream: IO[str]) -> None:
    """Level-set radius next to the closed form at every sample, with optional snapshot and center slice."""

    run = run_evolution(config.grid, ORIGIN, config.r0, config.params, config.t_end, config.dt_sample)
    numeric = run.trajectory
    analytic = evolve_trajectory(config.params, config.r0, numeric.times).radii
    rows = (
        (float(t), float(r), float(exact), abs(float(r) - float(exact)))
        for t, r, exact in zip(numeric.times, numeric.radii, analytic)
    )
    write_csv(stream, ("t", "r_numeric", "r_analytic", "abs_error"), rows)

    try:
        if config.snapshot_path:
            write_snapshot(run.field, config.snapshot_path)
            logger.info(f"Final field written to {config.snapshot_path}")
        if config.slice_path:
            with open(config.slice_path, "w", newline="") as slice_stream:
                write_slice(run.field, slice_stream)
            logger.info(f"Center slice written to {config.slice_path}")
    except OSError as error:
        path = error.filename or config.snapshot_path or config.slice_path
        raise DomainError(messages.UNWRITABLE_OUTPUT_ERROR_MESSAGE.format(path=path, error=error)) from error


def run_vanish(config: RunConfig, stream: IO[str]) -> None:
    vanish = vanishing_time(config.params, config.r0)
    value = format_number(vanish.time) if vanish.is_finite else "inf"
    stream.write(f"vanishing_time,{value}\n")


def run_invert(config: RunConfig, stream: IO[str]) -> None:
    """
    Fits the rates of a trajectory CSV: the nonlinear fit seeded by the linear one, or the flagged minimum-norm
    linear fit for degenerate data.
    """

    trajectory = read_trajectory(config.input_path)
    try:
        seed = fit_linear(trajectory)
    except DegenerateData as error:
        result = error.result
    else:
        result = fit_nonlinear(trajectory, seed.params)

    row = (
        result.params.a,
        result.params.b,
        _finite_or_none(result.residual),
        _finite_or_none(result.condition),
        result.dominant_term_warning,
    )
    write_csv(stream, ("a", "b", "residual", "condition", "warning"), [row])


def run_convergence(config: RunConfig, stream: IO[str]) -> None:
    """
    Final level-set radius error over `FLOW_CONVERGENCE_LADDER`; the observed order compares each grid with the
    previous one and is left empty on the first row.
    """

    exact = float(evolve_trajectory(config.params, config.r0, [0.0, config.t_end]).radii[-1])
    rows = []
    previous: Optional[tuple[float, float]] = None
    for n in settings.FLOW_CONVERGENCE_LADDER:
        spec = GridSpec(n=n, extent=config.extent)
        run = run_evolution(spec, ORIGIN, config.r0, config.params, config.t_end, config.t_end)
        error = abs(run.trajectory.final_radius - exact)

        order = None
        if previous is not None and previous[1] > 0.0 and error > 0.0:
            order = math.log(previous[1] / error) / math.log(previous[0] / spec.spacing)
        rows.append((n, spec.spacing, error, order))
        logger.info(f"n={n}: error={error!r}, observed order={order!r}")
        previous = (spec.spacing, error)

    write_csv(stream, ("n", "h", "error", "observed_order"), rows)


def run_phase(config: RunConfig, stream: IO[str]) -> None:
    """
    dr/dt = a - b/r at `samples` radii r_max*i/samples, i = 1..samples.

    By default r_max is twice the meta-stable radius b/a, which then falls exactly on the middle sample; without a
    meta-stable radius it is twice r0.
    """

    params = config.params
    r_max = config.r_max
    if r_max is None:
        stable = meta_stable_radius(params)
        r_max = PHASE_SPAN_FACTOR * (stable if stable is not None else config.r0)

    rows = []
    for index in range(1, config.samples + 1):
        r = r_max * index / config.samples
        rows.append((r, params.a - params.b / r))
    write_csv(stream, ("r", "dr_dt"), rows)


def run_lambert(config: RunConfig, stream: IO[str]) -> None:
    """Both real branches over z from -1/e to `zmax`; the secondary column is empty for z >= 0."""

    rows = []
    for index in range(config.samples + 1):
        z = BRANCH_POINT + (config.zmax - BRANCH_POINT) * index / config.samples
        secondary = lambert_w(LambertBranch.SECONDARY, z) if z < 0.0 else None
        rows.append((z, lambert_w(LambertBranch.PRINCIPAL, z), secondary))
    write_csv(stream, ("z", "w_principal", "w_secondary"), rows)


def run_family(config: RunConfig, stream: IO[str]) -> None:
    """Closed-form trajectories from the same r0, one series per value of the varied rate."""

    times = sample_times(config.t_end, config.dt_sample)
    rows = []
    for value in config.values:
        if config.vary == VariedRate.A:
            params = FlowParams(a=value, b=config.b)
        else:
            params = FlowParams(a=config.a, b=value)
        trajectory = evolve_trajectory(params, config.r0, times)
        rows.extend((value, t, r) for t, r in trajectory.samples)
    write_csv(stream, ("series", "t", "r"), rows)


RUNNERS: dict[RunCommand, Callable[[RunConfig, IO[str]], None]] = {
    RunCommand.ANALYTIC: run_analytic,
    RunCommand.LEVELSET: run_levelset,
    RunCommand.VANISH: run_vanish,
    RunCommand.INVERT: run_invert,
    RunCommand.CONVERGENCE: run_convergence,
    RunCommand.PHASE: run_phase,
    RunCommand.LAMBERT: run_lambert,
    RunCommand.FAMILY: run_family,
}


def run(config: RunConfig, stream: IO[str]) -> None:
    """
    Runs one command.

    :raises DomainError: for inputs outside the domain of the command.
    :raises FlowError: when a solver cannot produce the result.
    """

    RUNNERS[config.command](config, stream)
