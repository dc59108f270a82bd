import io
import itertools
import math
import os
import tempfile
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path
from unittest import (
    mock,
    skipUnless,
)

import numpy as np
from django.test import (
    SimpleTestCase,
    override_settings,
)

from analytic_flow.closed_form import radius_at
from analytic_flow.domain import FlowParams
from core.exceptions import DomainError
from levelset_solver.curvature import mean_curvature
from levelset_solver.differences import (
    limited_one_sided_differences,
    minmod,
)
from levelset_solver.domain import (
    GridSpec,
    LevelSetField,
)
from levelset_solver.evolution import (
    evolve,
    run_evolution,
)
from levelset_solver.exceptions import (
    CFLViolation,
    DegenerateGradient,
    DomainEscape,
    EmptySurface,
    SnapshotFormatError,
)
from levelset_solver.measure import (
    extract_radius,
    smoothed_heaviside,
)
from levelset_solver.scheme import (
    NO_MOTION,
    cfl_dt,
    step,
)
from levelset_solver.sdf import init_sphere_sdf
from levelset_solver.snapshots import (
    read_snapshot,
    write_slice,
    write_snapshot,
)


ORIGIN = (0.0, 0.0, 0.0)
SLOW_TESTS = bool(os.environ.get("LEVELSET_SLOW_TESTS"))
SLOW_TESTS_REASON = "set LEVELSET_SLOW_TESTS=1 to run grid runs at n >= 64"


def cube_symmetries(values: np.ndarray):
    """The 48 images of a cube array under axis permutations and reflections."""

    for permutation in itertools.permutations(range(3)):
        permuted = np.transpose(values, permutation)
        for flips in itertools.product((False, True), repeat=3):
            yield permuted[tuple(slice(None, None, -1) if flip else slice(None) for flip in flips)]


def run_steps(field: LevelSetField, params: FlowParams, count: int, safety: float = 0.9, workers: int = 1):
    dt = cfl_dt(field, params, safety)
    for _ in range(count):
        field = step(field, params, dt, workers=workers)
    return field


class GridSpecTest(SimpleTestCase):

    def test_spacing(self):
        """h = 2*extent/n"""
        self.assertEqual(GridSpec(n=64, extent=2.0).spacing, 0.0625)

    def test_axis_is_symmetric(self):
        """Cell-centered nodes are exact mirror images about the origin"""
        axis = GridSpec(n=33, extent=1.7).axis()
        np.testing.assert_array_equal(axis, -axis[::-1])
        self.assertEqual(len(axis), 33)

    def test_invalid_grid(self):
        """Fewer than 8 cells or a non-positive extent are rejected"""
        with self.assertRaises(DomainError):
            GridSpec(n=7, extent=1.0)
        with self.assertRaises(DomainError):
            GridSpec(n=16, extent=0.0)

    def test_field_must_be_finite(self):
        """NaN values are rejected"""
        spec = GridSpec(n=8, extent=1.0)
        values = np.zeros(spec.shape)
        values[1, 2, 3] = np.nan
        with self.assertRaises(DomainError):
            LevelSetField(spec=spec, values=values)


class InitSphereSdfTest(SimpleTestCase):

    def setUp(self):
        self.spec = GridSpec(n=64, extent=2.0)
        self.field = init_sphere_sdf(self.spec, ORIGIN, 1.0)
        self.h = self.spec.spacing

    def test_exact_distance(self):
        """phi at the nodes closest to the origin and to (1, 0, 0) is the exact signed distance"""
        axis = self.spec.axis()
        for point, expected in (((0.0, 0.0, 0.0), -1.0), ((1.0, 0.0, 0.0), 0.0)):
            i, j, k = self.spec.nearest_index(point)
            value = self.field.values[i, j, k]
            self.assertAlmostEqual(value, math.sqrt(axis[i] ** 2 + axis[j] ** 2 + axis[k] ** 2) - 1.0, delta=1e-15)
            self.assertAlmostEqual(value, expected, delta=self.h)

    def test_measured_radius(self):
        """The enclosed volume gives the radius back within one cell"""
        radius = extract_radius(self.field)
        self.assertGreaterEqual(radius, 1.0 - self.h)
        self.assertLessEqual(radius, 1.0 + self.h)

    def test_values_are_read_only(self):
        """Fields are immutable"""
        with self.assertRaises(ValueError):
            self.field.values[0, 0, 0] = 1.0

    def test_sphere_must_fit(self):
        """The sphere plus its growth margin must stay inside the domain"""
        with self.assertRaises(DomainError):
            init_sphere_sdf(self.spec, ORIGIN, 2.0)
        with self.assertRaises(DomainError):
            init_sphere_sdf(self.spec, (0.5, 0.0, 0.0), 1.6)
        with self.assertRaises(DomainError):
            init_sphere_sdf(self.spec, ORIGIN, 1.0, growth_margin=1.0)

    def test_sphere_must_be_resolved(self):
        """Radii below four cells are rejected"""
        with self.assertRaises(DomainError):
            init_sphere_sdf(self.spec, ORIGIN, 3.0 * self.h)


class MeanCurvatureTest(SimpleTestCase):

    def setUp(self):
        self.spec = GridSpec(n=64, extent=2.0)
        self.h = self.spec.spacing

    def _shell_curvature(self, r0: float) -> tuple[float, float]:
        field = init_sphere_sdf(self.spec, ORIGIN, r0)
        index = self.spec.nearest_index((r0, 0.0, 0.0))
        node = self.spec.axis()[list(index)]
        return mean_curvature(field, index), float(np.linalg.norm(node))

    def test_unit_sphere(self):
        """kappa = 1/r, not the 2/r of the plain divergence"""
        kappa, distance = self._shell_curvature(1.0)
        self.assertAlmostEqual(kappa, 1.0 / distance, delta=0.02)
        self.assertLess(abs(kappa - 1.0), self.h)

    def test_half_sphere(self):
        """A sphere of radius 0.5 has kappa close to 2"""
        kappa, distance = self._shell_curvature(0.5)
        self.assertAlmostEqual(kappa, 1.0 / distance, delta=0.05)
        self.assertLess(abs(kappa - 2.0), 4.0 * self.h)

    def test_plane(self):
        """A plane has zero curvature exactly"""
        x, _, _ = np.meshgrid(self.spec.axis(), self.spec.axis(), self.spec.axis(), indexing="ij")
        field = LevelSetField(spec=self.spec, values=x)
        self.assertEqual(mean_curvature(field, (20, 31, 40)), 0.0)

    def test_degenerate_gradient(self):
        """A flat field has no normal"""
        field = LevelSetField(spec=self.spec, values=np.ones(self.spec.shape))
        with self.assertRaises(DegenerateGradient):
            mean_curvature(field, (10, 10, 10))

    def test_index_near_boundary(self):
        """The stencil must stay two cells away from the faces"""
        field = init_sphere_sdf(self.spec, ORIGIN, 1.0)
        for index in ((1, 30, 30), (30, 62, 30)):
            with self.assertRaises(DomainError):
                mean_curvature(field, index)


class LimitedDifferencesTest(SimpleTestCase):

    def test_minmod(self):
        """Smaller magnitude for equal signs, 0 for opposite signs or a zero"""
        first = np.array([1.0, -3.0, 2.0, 0.0, -1.0])
        second = np.array([2.0, -1.0, -2.0, 5.0, -1.0])
        np.testing.assert_array_equal(minmod(first, second), [1.0, -1.0, 0.0, 0.0, -1.0])
        np.testing.assert_array_equal(minmod(second, first), minmod(first, second))

    def test_exact_for_quadratics(self):
        """Both one-sided differences of x^2 + 2y^2 - z reproduce its gradient"""
        h = 0.1
        axis = h * np.arange(-4, 5)
        x, y, z = np.meshgrid(axis, axis, axis, indexing="ij")
        differences = limited_one_sided_differences(x * x + 2.0 * y * y - z, h)

        inner = (slice(2, -2),) * 3
        expected = (2.0 * x[inner], 4.0 * y[inner], -np.ones_like(z[inner]))
        for axis_index in range(3):
            self.assertEqual(differences.backward[axis_index].shape, (5, 5, 5))
            np.testing.assert_allclose(differences.backward[axis_index], expected[axis_index], atol=1e-12)
            np.testing.assert_allclose(differences.forward[axis_index], expected[axis_index], atol=1e-12)


class CflDtTest(SimpleTestCase):

    def setUp(self):
        self.coarse = init_sphere_sdf(GridSpec(n=64, extent=2.0), ORIGIN, 1.0)
        self.fine = init_sphere_sdf(GridSpec(n=64, extent=1.0), ORIGIN, 0.5)

    def test_pure_curvature(self):
        """safety * h^2 / (12 b) with h = 0.0625, b = 0.5"""
        h = 0.0625
        self.assertAlmostEqual(cfl_dt(self.coarse, FlowParams(a=0.0, b=0.5), 0.5), 0.5 * h * h / 6.0, delta=1e-18)

    def test_pure_advection(self):
        """safety * h / |a|"""
        self.assertAlmostEqual(cfl_dt(self.coarse, FlowParams(a=1.0, b=0.0), 0.9), 0.05625, delta=1e-15)
        self.assertAlmostEqual(cfl_dt(self.coarse, FlowParams(a=-1.0, b=0.0), 0.9), 0.05625, delta=1e-15)

    def test_diffusion_dominated(self):
        """With h = 1/32, a = 1, b = 10 the curvature term sets the step"""
        h = 0.03125
        expected = 0.5 / (1.0 / h + 120.0 / (h * h))
        dt = cfl_dt(self.fine, FlowParams(a=1.0, b=10.0), 0.5)
        self.assertAlmostEqual(dt, expected, delta=1e-20)
        self.assertLess(dt, 0.5 * h * h / 120.0 * 1.001)

    def test_no_motion(self):
        """a = b = 0 has no step limit"""
        self.assertEqual(cfl_dt(self.coarse, FlowParams(a=0.0, b=0.0), 0.9), NO_MOTION)

    def test_safety_range(self):
        """The safety factor lies in (0, 1]"""
        for safety in (0.0, -0.1, 1.5):
            with self.assertRaises(DomainError):
                cfl_dt(self.coarse, FlowParams(a=1.0, b=1.0), safety)


class StepTest(SimpleTestCase):

    def setUp(self):
        self.spec = GridSpec(n=32, extent=2.0)
        self.h = self.spec.spacing
        self.field = init_sphere_sdf(self.spec, ORIGIN, 1.0)

    def test_zero_rates(self):
        """Nothing changes without advection or curvature"""
        updated = step(self.field, FlowParams(a=0.0, b=0.0), 0.1)
        np.testing.assert_array_equal(updated.values, self.field.values)

    def test_cfl_violation(self):
        """Steps above the stable step are refused"""
        params = FlowParams(a=1.0, b=1.0)
        with self.assertRaises(CFLViolation):
            step(self.field, params, 2.0 * cfl_dt(self.field, params, 1.0))
        with self.assertRaises(DomainError):
            step(self.field, params, 0.0)

    def test_pure_advection_shrinks_by_dt(self):
        """With a = -1 one step moves the surface inwards by about dt"""
        spec = GridSpec(n=64, extent=2.0)
        field = init_sphere_sdf(spec, ORIGIN, 1.0)
        params = FlowParams(a=-1.0, b=0.0)
        dt = cfl_dt(field, params, 0.9)
        shrinkage = extract_radius(field) - extract_radius(step(field, params, dt))
        self.assertAlmostEqual(shrinkage, dt, delta=0.15 * dt)

    def test_meta_stable_drift(self):
        """a = b = 10 keeps the unit sphere in place for 100 steps"""
        initial = extract_radius(self.field)
        field = run_steps(self.field, FlowParams(a=10.0, b=10.0), 100)
        radius = extract_radius(field)
        self.assertLessEqual(abs(radius - initial), 2.0 * self.h)
        self.assertLessEqual(abs(radius - 1.0), 2.0 * self.h)

    def test_cube_symmetry(self):
        """A centered sphere stays invariant under the 48 symmetries of the grid"""
        spec = GridSpec(n=16, extent=2.0)
        field = run_steps(init_sphere_sdf(spec, ORIGIN, 1.0), FlowParams(a=1.0, b=0.5), 5)
        for image in cube_symmetries(field.values):
            self.assertLessEqual(float(np.max(np.abs(image - field.values))), 1e-12)

    def test_slabs_match_single_thread(self):
        """Threaded slabs read the previous field only, so the result does not depend on the worker count"""
        params = FlowParams(a=-0.5, b=0.3)
        single = run_steps(self.field, params, 3, workers=1)
        threaded = run_steps(self.field, params, 3, workers=4)
        np.testing.assert_array_equal(single.values, threaded.values)

    @override_settings(LEVELSET_WORKERS=3)
    def test_workers_from_settings(self):
        """LEVELSET_WORKERS is the default worker count"""
        params = FlowParams(a=1.0, b=0.2)
        dt = cfl_dt(self.field, params, 0.9)
        expected = step(self.field, params, dt, workers=1)
        np.testing.assert_array_equal(step(self.field, params, dt).values, expected.values)

    def test_neumann_faces(self):
        """Faces are copies of the adjacent interior layer"""
        field = run_steps(self.field, FlowParams(a=1.0, b=0.5), 2)
        np.testing.assert_array_equal(field.values[0], field.values[1])
        np.testing.assert_array_equal(field.values[:, -1], field.values[:, -2])
        np.testing.assert_array_equal(field.values[:, :, 0], field.values[:, :, 1])

    def test_shrinking_is_monotone(self):
        """For a <= 0 the measured radius never grows by more than half a cell"""
        params = FlowParams(a=-1.0, b=0.1)
        dt = cfl_dt(self.field, params, 0.9)
        field, previous = self.field, extract_radius(self.field)
        for _ in range(5):
            field = step(field, params, dt)
            radius = extract_radius(field)
            self.assertLessEqual(radius, previous + 0.5 * self.h)
            previous = radius

    def test_comparison_principle(self):
        """Ordered fields stay ordered under the upwind advection step"""
        lower = self.field
        other = init_sphere_sdf(self.spec, (0.25, 0.0, 0.0), 0.75)
        upper = lower.with_values(np.maximum(lower.values, other.values))
        for a in (1.0, -1.0):
            params = FlowParams(a=a, b=0.0)
            dt = cfl_dt(lower, params, 0.5)
            difference = step(upper, params, dt).values - step(lower, params, dt).values
            self.assertGreaterEqual(float(np.min(difference)), -1e-12)


class ExtractRadiusTest(SimpleTestCase):

    def setUp(self):
        self.spec = GridSpec(n=64, extent=2.0)

    def test_exact_sdf(self):
        """Radius 1 and radius 0.25 are measured to within 0.05"""
        for r0 in (1.0, 0.25):
            self.assertAlmostEqual(extract_radius(init_sphere_sdf(self.spec, ORIGIN, r0)), r0, delta=0.05)

    def test_off_center_sphere(self):
        """The measurement does not depend on the center"""
        field = init_sphere_sdf(self.spec, (0.3, -0.2, 0.1), 0.8)
        self.assertAlmostEqual(extract_radius(field), 0.8, delta=0.05)

    def test_flattened_field(self):
        """Scaling phi, as an evolving field does away from |grad phi| = 1, leaves the radius unchanged"""
        field = init_sphere_sdf(self.spec, ORIGIN, 1.0)
        for scale in (0.01, 20.0):
            scaled = field.with_values(scale * field.values)
            self.assertAlmostEqual(extract_radius(scaled), extract_radius(field), delta=1e-12)

    def test_empty_surface(self):
        """phi > 0 everywhere means the sphere is gone"""
        field = LevelSetField(spec=self.spec, values=np.ones(self.spec.shape))
        with self.assertRaises(EmptySurface):
            extract_radius(field)

    def test_smoothed_heaviside(self):
        """0 and 1 outside the band, 1/2 on the surface"""
        values = smoothed_heaviside(np.array([-1.0, -0.1, 0.0, 0.1, 1.0]), 0.1)
        np.testing.assert_allclose(values, [0.0, 0.0, 0.5, 1.0, 1.0], atol=1e-15)


class EvolveTest(SimpleTestCase):

    def setUp(self):
        self.spec = GridSpec(n=32, extent=2.0)
        self.h = self.spec.spacing

    def test_pure_advection(self):
        """a = -1 shrinks the unit sphere to 0.5 by t = 0.5"""
        trajectory = evolve(self.spec, ORIGIN, 1.0, FlowParams(a=-1.0, b=0.0), 0.5, 0.1)
        np.testing.assert_allclose(trajectory.times, [0.0, 0.1, 0.2, 0.3, 0.4, 0.5], atol=1e-15)
        self.assertAlmostEqual(trajectory.final_radius, 0.5, delta=2.0 * self.h)
        self.assertIsNone(trajectory.vanishing_time)

    def test_pure_curvature(self):
        """b = 0.5 shrinks the unit sphere to sqrt(0.4) by t = 0.6"""
        trajectory = evolve(self.spec, ORIGIN, 1.0, FlowParams(a=0.0, b=0.5), 0.6, 0.2)
        self.assertEqual(trajectory.times[-1], 0.6)
        self.assertAlmostEqual(trajectory.final_radius, math.sqrt(0.4), delta=2.0 * self.h)

    def test_meta_stable(self):
        """The unit sphere with a = b = 10 stays within two cells of radius 1"""
        trajectory = evolve(self.spec, ORIGIN, 1.0, FlowParams(a=10.0, b=10.0), 0.05, 0.01)
        for radius in trajectory.radii:
            self.assertLessEqual(abs(radius - 1.0), 2.0 * self.h)

    def test_meta_stable_coarse_grid(self):
        """On 16^3 the unit sphere with a = b = 10 holds radius 1 within two cells up to t = 0.3"""
        spec = GridSpec(n=16, extent=2.0)
        trajectory = evolve(spec, ORIGIN, 1.0, FlowParams(a=10.0, b=10.0), 0.3, 0.05)
        self.assertIsNone(trajectory.vanishing_time)
        self.assertEqual(len(trajectory.radii), 7)
        for radius in trajectory.radii:
            self.assertLessEqual(abs(radius - 1.0), 2.0 * spec.spacing)

    def test_one_pool_per_run(self):
        """Threaded runs share one pool across all steps and match the single-threaded run"""
        params = FlowParams(a=1.0, b=0.3)
        single = run_evolution(self.spec, ORIGIN, 1.0, params, 0.01, 0.01, workers=1)
        with mock.patch("levelset_solver.evolution.ThreadPoolExecutor", wraps=ThreadPoolExecutor) as run_pool:
            with mock.patch("levelset_solver.scheme.ThreadPoolExecutor") as step_pool:
                threaded = run_evolution(self.spec, ORIGIN, 1.0, params, 0.01, 0.01, workers=3)

        self.assertGreater(threaded.steps, 1)
        self.assertEqual(run_pool.call_count, 1)
        step_pool.assert_not_called()
        np.testing.assert_array_equal(threaded.field.values, single.field.values)

    def test_vanishing(self):
        """A small sphere under mean curvature flow vanishes and the run stops there"""
        trajectory = evolve(self.spec, ORIGIN, 0.5, FlowParams(a=0.0, b=0.5), 0.4, 0.05)
        self.assertIsNotNone(trajectory.vanishing_time)
        self.assertEqual(trajectory.final_radius, 0.0)
        self.assertEqual(trajectory.times[-1], trajectory.vanishing_time)
        self.assertGreater(trajectory.vanishing_time, 0.15)
        self.assertLess(trajectory.vanishing_time, 0.35)

    def test_run_keeps_final_field(self):
        """The full run exposes the last field and the number of steps"""
        run = run_evolution(self.spec, ORIGIN, 1.0, FlowParams(a=-1.0, b=0.0), 0.2, 0.1, safety=0.5)
        self.assertEqual(run.steps, 4)
        self.assertAlmostEqual(extract_radius(run.field), run.trajectory.final_radius, delta=1e-15)

    def test_domain_escape(self):
        """A sphere touching the outer layers is reported"""
        spec = GridSpec(n=16, extent=2.0)
        with self.assertRaises(DomainEscape):
            evolve(spec, (0.75, 0.0, 0.0), 1.0, FlowParams(a=0.0, b=0.1), 0.1, 0.1)

    def test_growth_must_fit(self):
        """A sphere whose analytic growth leaves the domain is refused up front"""
        with self.assertRaises(DomainError):
            evolve(self.spec, ORIGIN, 1.0, FlowParams(a=1.0, b=0.0), 2.0, 0.5)


class SnapshotTest(SimpleTestCase):

    def setUp(self):
        self.field = init_sphere_sdf(GridSpec(n=16, extent=1.0), (0.0, 0.125, -0.125), 0.5)
        self.directory = tempfile.TemporaryDirectory()
        self.path = Path(self.directory.name) / "field.bin"

    def tearDown(self):
        self.directory.cleanup()

    def test_binary_layout(self):
        """Header of five doubles and a count, then n^3 doubles with k fastest"""
        write_snapshot(self.field, self.path)
        data = self.path.read_bytes()
        self.assertEqual(len(data), 48 + 8 * 4096)
        np.testing.assert_array_equal(np.frombuffer(data[:40], dtype="<f8"), [16.0, 1.0, 0.0, 0.125, -0.125])
        self.assertEqual(int(np.frombuffer(data[40:48], dtype="<i8")[0]), 4096)
        self.assertEqual(float(np.frombuffer(data[48:56], dtype="<f8")[0]), self.field.values[0, 0, 0])
        self.assertEqual(float(np.frombuffer(data[56:64], dtype="<f8")[0]), self.field.values[0, 0, 1])

    def test_read_back(self):
        """The reader restores grid, center and values"""
        write_snapshot(self.field, self.path)
        restored = read_snapshot(self.path)
        self.assertEqual(restored.spec, self.field.spec)
        self.assertEqual(restored.center, self.field.center)
        np.testing.assert_array_equal(restored.values, self.field.values)

    def test_truncated(self):
        """Missing values are detected"""
        write_snapshot(self.field, self.path)
        self.path.write_bytes(self.path.read_bytes()[:-8])
        with self.assertRaises(SnapshotFormatError):
            read_snapshot(self.path)

    def test_slice(self):
        """The center plane is written as x,y,phi rows"""
        stream = io.StringIO()
        self.assertEqual(write_slice(self.field, stream), 256)
        lines = stream.getvalue().splitlines()
        self.assertEqual(lines[0], "x,y,phi")
        self.assertEqual(len(lines), 257)
        x, y, phi = (float(cell) for cell in lines[1].split(","))
        self.assertEqual((x, y), (-0.9375, -0.9375))
        self.assertEqual(phi, self.field.values[0, 0, 7])


@skipUnless(SLOW_TESTS, SLOW_TESTS_REASON)
class EvolveConvergenceTest(SimpleTestCase):

    def _error(self, n: int, params: FlowParams, t_end: float) -> float:
        spec = GridSpec(n=n, extent=2.0)
        trajectory = evolve(spec, ORIGIN, 1.0, params, t_end, t_end)
        return abs(trajectory.final_radius - radius_at(params, 1.0, t_end))

    def test_pure_curvature_order(self):
        """Errors fall with observed order >= 0.9 over n = 32, 64, 128 and stay within two cells"""
        params = FlowParams(a=0.0, b=0.5)
        errors = [self._error(n, params, 0.6) for n in (32, 64, 128)]
        for n, error in zip((32, 64, 128), errors):
            self.assertLessEqual(error, 2.0 * 4.0 / n)
        for coarse, fine in zip(errors, errors[1:]):
            self.assertLess(fine, coarse)
            self.assertGreaterEqual(math.log2(coarse / fine), 0.9)

    def test_pure_advection_bound(self):
        """a = -1 up to t = 0.5 within two cells at n = 64"""
        self.assertLessEqual(self._error(64, FlowParams(a=-1.0, b=0.0), 0.5), 2.0 * 4.0 / 64)

    def test_pure_curvature_bound(self):
        """b = 0.5 up to t = 0.6 within two cells at n = 64"""
        self.assertLessEqual(self._error(64, FlowParams(a=0.0, b=0.5), 0.6), 2.0 * 4.0 / 64)

    def test_meta_stable_drift(self):
        """a = b = 10 at n = 64 stays within two cells of radius 1 up to t = 0.5"""
        spec = GridSpec(n=64, extent=2.0)
        trajectory = evolve(spec, ORIGIN, 1.0, FlowParams(a=10.0, b=10.0), 0.5, 0.05)
        self.assertEqual(trajectory.times[-1], 0.5)
        for radius in trajectory.radii:
            self.assertLessEqual(abs(radius - 1.0), 2.0 * spec.spacing)
