import math
import os
import tempfile
from io import StringIO
from unittest import mock

import numpy as np
from django.core.management import call_command
from django.core.management.base import CommandError
from django.test import (
    SimpleTestCase,
    override_settings,
)

from analytic_flow.closed_form import evolve_trajectory
from analytic_flow.domain import FlowParams
from core.exceptions import ConvergenceError
from core.formatting import write_csv
from levelset_solver.snapshots import read_snapshot


def flow(**options) -> list[str]:
    out = StringIO()
    call_command("flow", stdout=out, **options)
    return out.getvalue().splitlines()


def columns(lines: list[str]) -> list[list[float]]:
    return [[float(cell) for cell in line.split(",")] for line in lines[1:]]


class AnalyticCommandTest(SimpleTestCase):

    def test_pure_advection(self):
        """r0 = 10 shrinking at unit speed reaches 0 at t = 10 and stays there"""
        lines = flow(cmd="analytic", r0=10.0, a=-1.0, b=0.0, t_end=12.0, dt_sample=1.0)
        self.assertEqual(lines[0], "t,r")
        self.assertEqual(lines[1:4], ["0,10", "1,9", "2,8"])
        self.assertEqual(lines[11:], ["10,0", "11,0", "12,0"])

    def test_pure_curvature(self):
        """r0 = 10 under mean curvature flow with b = 1 vanishes at t = 50"""
        rows = columns(flow(cmd="analytic", r0=10.0, a=0.0, b=1.0, t_end=50.0, dt_sample=10.0))
        self.assertEqual(rows[-1], [50.0, 0.0])
        self.assertEqual(rows[1][1], math.sqrt(80.0))

    def test_deterministic(self):
        """The same options produce byte-identical output"""
        options = {"cmd": "analytic", "t_end": 20.0, "dt_sample": 0.1}
        self.assertEqual(flow(**options), flow(**options))

    def test_output_file(self):
        """--out writes the CSV to a file instead of stdout"""
        with tempfile.TemporaryDirectory() as directory:
            path = os.path.join(directory, "curve.csv")
            lines = flow(cmd="analytic", r0=10.0, a=-1.0, b=0.0, t_end=2.0, dt_sample=1.0, out=path)
            with open(path) as stream:
                content = stream.read()

        self.assertEqual(lines, [])
        self.assertEqual(content, "t,r\n0,10\n1,9\n2,8\n")

    def test_unwritable_output_file(self):
        """--out inside a missing directory fails with status 1 and names the path"""
        with tempfile.TemporaryDirectory() as directory:
            path = os.path.join(directory, "missing", "curve.csv")
            with self.assertRaises(CommandError) as context:
                flow(cmd="analytic", t_end=1.0, dt_sample=0.5, out=path)

        self.assertEqual(context.exception.returncode, 1)
        self.assertIn(path, str(context.exception))

    def test_validation_error(self):
        """Invalid options exit with status 1 before anything runs"""
        with self.assertRaises(CommandError) as context:
            flow(cmd="analytic", r0=-1.0, dt_sample=0.0)
        self.assertEqual(context.exception.returncode, 1)
        self.assertIn("r0", str(context.exception))
        self.assertIn("dt_sample", str(context.exception))


class VanishCommandTest(SimpleTestCase):

    def test_finite(self):
        """Below the meta-stable radius the sphere vanishes at 10 ln 10 - 9"""
        lines = flow(cmd="vanish", r0=9.0, a=1.0, b=10.0)
        self.assertEqual(len(lines), 1)
        name, value = lines[0].split(",")
        self.assertEqual(name, "vanishing_time")
        self.assertAlmostEqual(float(value), 10.0 * math.log(10.0) - 9.0, delta=1e-12)

    def test_never(self):
        self.assertEqual(flow(cmd="vanish", r0=11.0, a=1.0, b=10.0), ["vanishing_time,inf"])

    def test_static_flow(self):
        """A domain error raised while running also exits with status 1"""
        with self.assertRaises(CommandError) as context:
            flow(cmd="vanish", a=0.0, b=0.0)
        self.assertEqual(context.exception.returncode, 1)


class PhaseCommandTest(SimpleTestCase):

    def test_meta_stable_radius_is_sampled(self):
        """dr/dt is exactly 0 at r = b/a = 10"""
        lines = flow(cmd="phase", a=1.0, b=10.0)
        self.assertEqual(lines[0], "r,dr_dt")
        self.assertIn("10,0", lines)
        rows = columns(lines)
        self.assertEqual(len(rows), 200)
        self.assertTrue(all(rate < 0.0 for r, rate in rows if r < 10.0))
        self.assertTrue(all(rate > 0.0 for r, rate in rows if r > 10.0))

    def test_odd_samples(self):
        with self.assertRaises(CommandError) as context:
            flow(cmd="phase", samples=7)
        self.assertEqual(context.exception.returncode, 1)


class LambertCommandTest(SimpleTestCase):

    def test_branches(self):
        """Both branches meet at -1 at the branch point, the secondary one ends at z = 0"""
        lines = flow(cmd="lambert", samples=10, zmax=1.0)
        self.assertEqual(lines[0], "z,w_principal,w_secondary")
        self.assertEqual(len(lines), 12)

        z, principal, secondary = (float(cell) for cell in lines[1].split(","))
        self.assertAlmostEqual(z, -1.0 / math.e, delta=1e-15)
        self.assertEqual((principal, secondary), (-1.0, -1.0))

        self.assertTrue(lines[-1].endswith(","))
        z, principal = (float(cell) for cell in lines[-1].split(",")[:2])
        self.assertAlmostEqual(principal * math.exp(principal), z, delta=1e-12)


class FamilyCommandTest(SimpleTestCase):

    def test_advection_family(self):
        lines = flow(cmd="family", vary="a", values="-1,0", r0=10.0, b=0.0, t_end=2.0, dt_sample=1.0)
        self.assertEqual(lines, ["series,t,r", "-1,0,10", "-1,1,9", "-1,2,8", "0,0,10", "0,1,10", "0,2,10"])

    def test_curvature_family(self):
        """Each curvature rate b vanishes at r0^2 / 2b"""
        lines = flow(cmd="family", vary="b", values="1,2", r0=10.0, a=0.0, t_end=50.0, dt_sample=25.0)
        self.assertEqual(lines[1:], ["1,0,10", "1,25,7.0710678118654755", "1,50,0", "2,0,10", "2,25,0", "2,50,0"])

    def test_invalid_values(self):
        with self.assertRaises(CommandError) as context:
            flow(cmd="family", values="1,x")
        self.assertEqual(context.exception.returncode, 1)


class InvertCommandTest(SimpleTestCase):

    def setUp(self):
        self.directory = tempfile.TemporaryDirectory()
        self.path = os.path.join(self.directory.name, "trajectory.csv")

    def tearDown(self):
        self.directory.cleanup()

    def write_trajectory(self, samples):
        with open(self.path, "w", newline="") as stream:
            write_csv(stream, ("t", "r"), samples)

    def test_recovers_rates(self):
        """A closed-form trajectory written at full precision is fitted back"""
        trajectory = evolve_trajectory(FlowParams(a=1.0, b=10.0), 9.0, np.linspace(0.0, 5.0, 200))
        self.write_trajectory(trajectory.samples)

        lines = flow(cmd="invert", input=self.path)
        self.assertEqual(lines[0], "a,b,residual,condition,warning")
        a, b, _, _, warning = lines[1].split(",")
        self.assertAlmostEqual(float(a), 1.0, delta=1e-6)
        self.assertAlmostEqual(float(b), 10.0, delta=1e-5)
        self.assertEqual(warning, "false")

    def test_degenerate(self):
        """Constant data is reported with the warning set and no condition number"""
        self.write_trajectory([(float(t), 10.0) for t in range(10)])
        lines = flow(cmd="invert", input=self.path)
        self.assertEqual(lines[1], "0,0,0,,true")

    def test_missing_input(self):
        with self.assertRaises(CommandError) as context:
            flow(cmd="invert")
        self.assertEqual(context.exception.returncode, 1)

        with self.assertRaises(CommandError) as context:
            flow(cmd="invert", input=os.path.join(self.directory.name, "missing.csv"))
        self.assertEqual(context.exception.returncode, 1)

    def test_bad_header(self):
        with open(self.path, "w") as stream:
            stream.write("time,radius\n0,1\n")
        with self.assertRaises(CommandError) as context:
            flow(cmd="invert", input=self.path)
        self.assertEqual(context.exception.returncode, 1)


class LevelsetCommandTest(SimpleTestCase):

    def test_trajectory_snapshot_and_slice(self):
        """Shrinking sphere on a coarse grid, with the final field written both ways"""
        with tempfile.TemporaryDirectory() as directory:
            snapshot = os.path.join(directory, "field.bin")
            center_slice = os.path.join(directory, "slice.csv")
            lines = flow(
                cmd="levelset",
                r0=1.0,
                a=-1.0,
                b=0.0,
                n=16,
                extent=2.0,
                t_end=0.2,
                dt_sample=0.1,
                snapshot=snapshot,
                slice=center_slice,
            )
            field = read_snapshot(snapshot)
            with open(center_slice) as stream:
                slice_lines = stream.read().splitlines()

        self.assertEqual(lines[0], "t,r_numeric,r_analytic,abs_error")
        rows = columns(lines)
        self.assertEqual([row[0] for row in rows], [0.0, 0.1, 0.2])
        self.assertAlmostEqual(rows[-1][2], 0.8, delta=1e-15)
        for t, numeric, analytic, error in rows:
            self.assertEqual(error, abs(numeric - analytic))
            self.assertLess(error, 0.5)

        self.assertEqual(field.spec.n, 16)
        self.assertEqual(slice_lines[0], "x,y,phi")
        self.assertEqual(len(slice_lines), 1 + 16 * 16)

    def test_unwritable_snapshot(self):
        """--snapshot or --slice inside a missing directory fails with status 1 and names the path"""
        with tempfile.TemporaryDirectory() as directory:
            missing = os.path.join(directory, "missing")
            for option in ("snapshot", "slice"):
                path = os.path.join(missing, f"{option}.out")
                options = {"r0": 1.0, "a": -1.0, "b": 0.0, "n": 16, "extent": 2.0, "t_end": 0.1, "dt_sample": 0.1}
                with self.assertRaises(CommandError) as context:
                    flow(cmd="levelset", **options, **{option: path})

                self.assertEqual(context.exception.returncode, 1)
                self.assertIn(path, str(context.exception))

    def test_sphere_does_not_fit(self):
        with self.assertRaises(CommandError) as context:
            flow(cmd="levelset", r0=1.0, a=0.0, b=0.1, n=16, extent=1.0, t_end=0.1, dt_sample=0.1)
        self.assertEqual(context.exception.returncode, 1)

    def test_solver_failure(self):
        """Errors other than domain errors exit with status 2"""
        with mock.patch("flow_cli.management.commands.flow.run", side_effect=ConvergenceError("no answer")):
            with self.assertRaises(CommandError) as context:
                flow(cmd="vanish")
        self.assertEqual(context.exception.returncode, 2)
        self.assertIn("no answer", str(context.exception))


class ConvergenceCommandTest(SimpleTestCase):

    @override_settings(FLOW_CONVERGENCE_LADDER=(16, 32))
    def test_ladder(self):
        """One row per grid, the first without an observed order"""
        lines = flow(cmd="convergence", r0=1.0, a=-1.0, b=0.0, extent=2.0, t_end=0.1)
        self.assertEqual(lines[0], "n,h,error,observed_order")
        self.assertEqual(len(lines), 3)
        self.assertTrue(lines[1].startswith("16,0.25,"))
        self.assertTrue(lines[1].endswith(","))
        self.assertTrue(lines[2].startswith("32,0.125,"))

    def test_positive_end_time(self):
        with self.assertRaises(CommandError) as context:
            flow(cmd="convergence", t_end=0.0)
        self.assertEqual(context.exception.returncode, 1)
