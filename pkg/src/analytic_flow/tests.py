import math

import numpy as np
from django.test import SimpleTestCase
from django.urls import reverse
from rest_framework import status
from rest_framework.test import APIClient

from analytic_flow.closed_form import (
    classify_regime,
    evolve_trajectory,
    meta_stable_radius,
    prescribed_curvature,
    radius_at,
    vanishing_time,
)
from analytic_flow.domain import (
    FlowParams,
    FlowRegime,
    RadiusTrajectory,
    VanishingTime,
)
from analytic_flow.exceptions import (
    StiffnessError,
    VanishedError,
)
from analytic_flow.reference import reference_integrate
from analytic_flow.sampling import sample_times
from core.exceptions import (
    DomainError,
    NonFiniteInput,
)


ORACLE_TOLERANCE = 1e-10

# Growth, shrinkage and shrinkage with negative advection around the meta-stable radius b/a = 10
SOLUTION_CASES = (
    (FlowParams(a=1.0, b=10.0), 11.0),
    (FlowParams(a=1.0, b=10.0), 9.0),
    (FlowParams(a=-1.0, b=10.0), 10.0),
)


def oracle_crossing_time(params: FlowParams, r0: float, t_end: float) -> float:
    try:
        return reference_integrate(params, r0, t_end, ORACLE_TOLERANCE).vanishing_time
    except StiffnessError as error:
        return error.crossing_time


class FlowParamsTest(SimpleTestCase):

    def test_negative_curvature_rate(self):
        """b < 0 would be inverse mean curvature flow"""
        with self.assertRaises(DomainError):
            FlowParams(a=1.0, b=-0.5)

    def test_non_finite_rates(self):
        """Rates must be finite"""
        with self.assertRaises(NonFiniteInput):
            FlowParams(a=float("nan"), b=1.0)

    def test_from_prescribed_curvature(self):
        """a = kappa * b round-trips through prescribed_curvature"""
        params = FlowParams.from_prescribed_curvature(0.1, 10.0)
        self.assertAlmostEqual(params.a, 1.0, places=15)
        self.assertAlmostEqual(prescribed_curvature(params), 0.1, places=15)


class PrescribedCurvatureTest(SimpleTestCase):

    def test_values(self):
        """kappa = a/b keeps the sign of a"""
        self.assertEqual(prescribed_curvature(FlowParams(a=1.0, b=10.0)), 0.1)
        self.assertEqual(prescribed_curvature(FlowParams(a=0.0, b=5.0)), 0.0)
        self.assertEqual(prescribed_curvature(FlowParams(a=-2.0, b=4.0)), -0.5)

    def test_undefined_without_curvature(self):
        """b = 0 has no prescribed curvature"""
        with self.assertRaises(DomainError):
            prescribed_curvature(FlowParams(a=1.0, b=0.0))

    def test_meta_stable_radius(self):
        """b/a only for a > 0 and b > 0"""
        self.assertEqual(meta_stable_radius(FlowParams(a=1.0, b=10.0)), 10.0)
        self.assertIsNone(meta_stable_radius(FlowParams(a=-1.0, b=10.0)))
        self.assertIsNone(meta_stable_radius(FlowParams(a=1.0, b=0.0)))


class ClassifyRegimeTest(SimpleTestCase):

    def test_examples(self):
        """Regimes around the meta-stable radius"""
        self.assertEqual(classify_regime(FlowParams(a=1.0, b=10.0), 10.0), FlowRegime.META_STABLE)
        self.assertEqual(classify_regime(FlowParams(a=1.0, b=10.0), 11.0), FlowRegime.GROW_UNBOUNDED)
        self.assertEqual(classify_regime(FlowParams(a=1.0, b=10.0), 9.0), FlowRegime.SHRINK_TO_ZERO)
        self.assertEqual(classify_regime(FlowParams(a=-1.0, b=10.0), 10.0), FlowRegime.SHRINK_TO_ZERO)
        self.assertEqual(classify_regime(FlowParams(a=0.0, b=1.0), 5.0), FlowRegime.SHRINK_TO_ZERO)

    def test_degenerate_rates(self):
        """Pure advection grows or shrinks with a; the static flow is meta-stable"""
        self.assertEqual(classify_regime(FlowParams(a=2.0, b=0.0), 1.0), FlowRegime.GROW_UNBOUNDED)
        self.assertEqual(classify_regime(FlowParams(a=-2.0, b=0.0), 1.0), FlowRegime.SHRINK_TO_ZERO)
        self.assertEqual(classify_regime(FlowParams(a=0.0, b=0.0), 1.0), FlowRegime.META_STABLE)

    def test_no_tolerance_band(self):
        """A radius one ulp away from b/a is not meta-stable"""
        params = FlowParams(a=1.0, b=10.0)
        self.assertEqual(classify_regime(params, math.nextafter(10.0, 11.0)), FlowRegime.GROW_UNBOUNDED)
        self.assertEqual(classify_regime(params, math.nextafter(10.0, 9.0)), FlowRegime.SHRINK_TO_ZERO)

    def test_invalid_radius(self):
        """r0 must be positive"""
        for r0 in (0.0, -1.0):
            with self.assertRaises(DomainError):
                classify_regime(FlowParams(a=1.0, b=1.0), r0)


class RadiusAtTest(SimpleTestCase):

    def test_pure_curvature_vanishes(self):
        """a = 0: sqrt(r0^2 - 2bt) reaches 0 at r0^2/2b"""
        self.assertEqual(radius_at(FlowParams(a=0.0, b=1.0), 10.0, 50.0), 0.0)

    def test_pure_advection(self):
        """b = 0: r0 + at"""
        self.assertEqual(radius_at(FlowParams(a=-1.0, b=0.0), 10.0, 4.0), 6.0)

    def test_special_cases_are_exact(self):
        """The a = 0 and b = 0 formulas are reproduced to machine precision"""
        for t in np.linspace(0.0, 49.0, 50):
            self.assertEqual(radius_at(FlowParams(a=0.0, b=1.0), 10.0, t), math.sqrt(100.0 - 2.0 * t))
            self.assertEqual(radius_at(FlowParams(a=2.0, b=0.0), 1.0, t), 1.0 + 2.0 * t)

    def test_meta_stable_is_constant(self):
        """r0 = b/a stays put for all time"""
        params = FlowParams(a=1.0, b=10.0)
        for t in np.linspace(0.0, 100.0, 101):
            self.assertAlmostEqual(radius_at(params, 10.0, t), 10.0, delta=1e-12)

    def test_matches_reference_integrator(self):
        """Shrinking with a > 0 (principal branch) and with a < 0 (secondary branch) agree with RK4"""
        for params, r0, t in ((FlowParams(a=1.0, b=10.0), 9.0, 5.0), (FlowParams(a=-1.0, b=10.0), 10.0, 1.0)):
            reference = reference_integrate(params, r0, t, ORACLE_TOLERANCE)
            self.assertAlmostEqual(radius_at(params, r0, t), reference.final_radius, delta=1e-8)

    def test_past_vanishing(self):
        """Asking for the radius of a vanished sphere is an error"""
        with self.assertRaises(VanishedError):
            radius_at(FlowParams(a=0.0, b=1.0), 10.0, 50.1)
        with self.assertRaises(VanishedError):
            radius_at(FlowParams(a=-1.0, b=0.0), 10.0, 10.5)
        with self.assertRaises(VanishedError):
            radius_at(FlowParams(a=1.0, b=10.0), 9.0, 20.0)
        with self.assertRaises(VanishedError):
            radius_at(FlowParams(a=-1.0, b=10.0), 10.0, 5.0)

    def test_vanished_error_is_domain_error(self):
        """Callers guarding preconditions catch vanishing too"""
        with self.assertRaises(DomainError):
            radius_at(FlowParams(a=0.0, b=1.0), 10.0, 60.0)

    def test_invalid_arguments(self):
        """Negative time and non-positive radius are rejected"""
        with self.assertRaises(DomainError):
            radius_at(FlowParams(a=1.0, b=1.0), 1.0, -1.0)
        with self.assertRaises(DomainError):
            radius_at(FlowParams(a=1.0, b=1.0), 0.0, 1.0)

    def test_large_growth_does_not_overflow(self):
        """Far past the meta-stable radius the argument of W leaves double range; the radius stays finite"""
        params = FlowParams(a=1.0, b=10.0)
        t, h = 10_000.0, 1e-3
        radius = radius_at(params, 11.0, t)
        self.assertTrue(math.isfinite(radius))
        derivative = (radius_at(params, 11.0, t + h) - radius_at(params, 11.0, t - h)) / (2.0 * h)
        self.assertAlmostEqual(derivative, params.a - params.b / radius, delta=1e-6)

    def test_tiny_secondary_argument(self):
        """Strong negative advection pushes the secondary argument below exp(-700) early on"""
        params = FlowParams(a=-1.0, b=0.01)
        for t in (0.05, 1.0):
            reference = reference_integrate(params, 8.0, t, ORACLE_TOLERANCE)
            self.assertAlmostEqual(radius_at(params, 8.0, t), reference.final_radius, delta=1e-8)

    def test_offset_keeps_digits_near_branch_point(self):
        """Close to -1/e the radius still matches the pure curvature solution for tiny a"""
        params = FlowParams(a=1e-6, b=1.0)
        expected = math.sqrt(100.0 - 2.0 * 30.0)
        self.assertAlmostEqual(radius_at(params, 10.0, 30.0), expected, delta=1e-4)


class RadiusAtPropertiesTest(SimpleTestCase):

    def test_ode_residual(self):
        """Central differences of the closed form satisfy r' = a - b/r"""
        h = 1e-5
        for params, r0 in SOLUTION_CASES + ((FlowParams(a=0.5, b=1.0), 1.0), (FlowParams(a=-2.0, b=0.1), 0.5)):
            vanish = vanishing_time(params, r0).as_float()
            for t in np.linspace(0.1, min(10.0, 0.8 * vanish), 7):
                radius = radius_at(params, r0, t)
                derivative = (radius_at(params, r0, t + h) - radius_at(params, r0, t - h)) / (2.0 * h)
                expected = params.a - params.b / radius
                self.assertLessEqual(abs(derivative - expected), 1e-6 * max(1.0, abs(expected)))

    def test_oracle_equivalence_sweep(self):
        """Closed form and RK4 agree to 1e-8 over a sweep of rates and radii"""
        for a in (-2.0, -1.0, 0.5, 1.0, 2.0):
            for b in (0.1, 1.0, 10.0):
                for r0 in (0.5, 1.0, 9.0, 11.0):
                    params = FlowParams(a=a, b=b)
                    t_end = min(5.0, 0.9 * vanishing_time(params, r0).as_float())
                    reference = reference_integrate(params, r0, t_end, ORACLE_TOLERANCE)
                    for t, r in reference.samples:
                        self.assertAlmostEqual(radius_at(params, r0, t), r, delta=1e-8, msg=f"{a=} {b=} {r0=} {t=}")

    def test_continuity_at_zero_advection(self):
        """The closed form tends to sqrt(r0^2 - 2bt) as a -> 0 from either side"""
        for t in (0.0, 10.0, 20.0, 25.0):
            expected = radius_at(FlowParams(a=0.0, b=1.0), 10.0, t)
            for a in (1e-6, -1e-6):
                self.assertLessEqual(abs(radius_at(FlowParams(a=a, b=1.0), 10.0, t) - expected), 1e-4)

    def test_vanish_consistency(self):
        """Just before the vanishing time the radius is ~0, just after it is gone"""
        cases = (
            (FlowParams(a=0.0, b=1.0), 10.0),
            (FlowParams(a=-1.0, b=0.0), 10.0),
            (FlowParams(a=1.0, b=10.0), 9.0),
            (FlowParams(a=-1.0, b=10.0), 10.0),
        )
        for params, r0 in cases:
            vanish = vanishing_time(params, r0).time
            self.assertLessEqual(radius_at(params, r0, vanish * (1.0 - 1e-9)), 1e-3)
            with self.assertRaises(VanishedError):
                radius_at(params, r0, vanish * (1.0 + 1e-6))

    def test_monotone_regimes(self):
        """Growing trajectories increase, shrinking ones decrease, the meta-stable one is flat"""
        params = FlowParams(a=1.0, b=10.0)
        for r0 in (11.0, 9.0, 10.0):
            regime = classify_regime(params, r0)
            end = min(20.0, 0.95 * vanishing_time(params, r0).as_float())
            radii = np.diff(evolve_trajectory(params, r0, np.linspace(0.0, end, 200)).radii)
            if regime == FlowRegime.GROW_UNBOUNDED:
                self.assertTrue(np.all(radii > 0.0))
            elif regime == FlowRegime.SHRINK_TO_ZERO:
                self.assertTrue(np.all(radii < 0.0))
            else:
                self.assertTrue(np.all(radii == 0.0))

    def test_meta_stable_phase(self):
        """Above b/a the sphere grows, below it shrinks"""
        for a, b in ((1.0, 10.0), (0.3, 2.0), (5.0, 0.5)):
            for r in np.linspace(0.01, 4.0 * b / a, 400):
                if abs(r - b / a) < 1e-9:
                    continue
                self.assertEqual(np.sign(a - b / r), np.sign(r - b / a))


class VanishingTimeTest(SimpleTestCase):

    def test_examples(self):
        """Closed-form vanishing times of the three families"""
        self.assertEqual(vanishing_time(FlowParams(a=0.0, b=1.0), 10.0), VanishingTime.finite(50.0))
        self.assertEqual(vanishing_time(FlowParams(a=-1.0, b=0.0), 10.0), VanishingTime.finite(10.0))
        self.assertEqual(vanishing_time(FlowParams(a=1.0, b=10.0), 11.0), VanishingTime.never())
        self.assertEqual(vanishing_time(FlowParams(a=1.0, b=10.0), 10.0), VanishingTime.never())
        self.assertEqual(vanishing_time(FlowParams(a=2.0, b=0.0), 1.0), VanishingTime.never())
        self.assertAlmostEqual(
            vanishing_time(FlowParams(a=1.0, b=10.0), 9.0).time, 10.0 * math.log(10.0) - 9.0, delta=1e-12
        )

    def test_matches_reference_crossing(self):
        """The vanishing time matches the RK4 crossing time"""
        for params, r0 in ((FlowParams(a=1.0, b=10.0), 9.0), (FlowParams(a=-1.0, b=10.0), 10.0)):
            expected = vanishing_time(params, r0).time
            self.assertAlmostEqual(oracle_crossing_time(params, r0, 2.0 * expected), expected, delta=1e-6)

    def test_limits(self):
        """The general expression tends to the pure advection and pure curvature times"""
        self.assertAlmostEqual(vanishing_time(FlowParams(a=1e-7, b=1.0), 10.0).time, 50.0, delta=1e-4)
        self.assertAlmostEqual(vanishing_time(FlowParams(a=-1e-7, b=1.0), 10.0).time, 50.0, delta=1e-4)
        self.assertAlmostEqual(vanishing_time(FlowParams(a=-1.0, b=1e-9), 10.0).time, 10.0, delta=1e-6)

    def test_static_flow(self):
        """Nothing moves for a = b = 0"""
        with self.assertRaises(DomainError):
            vanishing_time(FlowParams(a=0.0, b=0.0), 1.0)

    def test_never_as_float(self):
        """Never reads as infinity"""
        self.assertEqual(VanishingTime.never().as_float(), math.inf)
        self.assertEqual(str(VanishingTime.never()), "inf")


class EvolveTrajectoryTest(SimpleTestCase):

    def test_meta_stable(self):
        """The meta-stable sphere keeps its radius"""
        trajectory = evolve_trajectory(FlowParams(a=1.0, b=10.0), 10.0, [0.0, 1.0, 2.0])
        self.assertEqual(trajectory.samples, [(0.0, 10.0), (1.0, 10.0), (2.0, 10.0)])

    def test_clamps_after_vanishing(self):
        """Samples after the vanishing time carry r = 0"""
        trajectory = evolve_trajectory(FlowParams(a=-1.0, b=0.0), 10.0, [0.0, 5.0, 10.0, 15.0])
        self.assertEqual(trajectory.samples, [(0.0, 10.0), (5.0, 5.0), (10.0, 0.0), (15.0, 0.0)])
        self.assertEqual(trajectory.vanishing_time, 10.0)

    def test_shrinking_curve(self):
        """On a 0.1 grid the samples are the closed form before vanishing and 0 after it"""
        params = FlowParams(a=1.0, b=10.0)
        trajectory = evolve_trajectory(params, 9.0, sample_times(15.0, 0.1))
        vanish = vanishing_time(params, 9.0).time
        self.assertEqual(len(trajectory), 151)
        for t, r in trajectory.samples:
            if t < vanish:
                self.assertEqual(r, radius_at(params, 9.0, t))
            else:
                self.assertEqual(r, 0.0)

    def test_matches_reference_samples(self):
        """Sampled at the oracle's own steps the curve agrees with RK4"""
        params = FlowParams(a=1.0, b=10.0)
        reference = reference_integrate(params, 9.0, 13.0, ORACLE_TOLERANCE)
        trajectory = evolve_trajectory(params, 9.0, reference.times)
        np.testing.assert_allclose(trajectory.radii, reference.radii, rtol=0.0, atol=1e-8)

    def test_invalid_times(self):
        """Times must start at 0 and increase strictly"""
        params = FlowParams(a=1.0, b=10.0)
        with self.assertRaises(DomainError):
            evolve_trajectory(params, 9.0, [1.0, 2.0])
        with self.assertRaises(DomainError):
            evolve_trajectory(params, 9.0, [0.0, 2.0, 2.0])

    def test_static_flow(self):
        """a = b = 0 is a constant trajectory"""
        trajectory = evolve_trajectory(FlowParams(a=0.0, b=0.0), 3.0, [0.0, 1.0])
        self.assertEqual(trajectory.samples, [(0.0, 3.0), (1.0, 3.0)])


class ReferenceIntegrateTest(SimpleTestCase):

    def test_pure_curvature(self):
        """sqrt(100 - 36) = 8"""
        trajectory = reference_integrate(FlowParams(a=0.0, b=1.0), 10.0, 18.0, ORACLE_TOLERANCE)
        self.assertAlmostEqual(trajectory.final_radius, 8.0, delta=1e-8)
        self.assertEqual(trajectory.times[-1], 18.0)

    def test_meta_stable(self):
        """r' = 0 at the start keeps the radius at 10"""
        trajectory = reference_integrate(FlowParams(a=1.0, b=10.0), 10.0, 100.0, ORACLE_TOLERANCE)
        self.assertEqual(trajectory.final_radius, 10.0)

    def test_pure_advection(self):
        """1 + 2*3 = 7"""
        trajectory = reference_integrate(FlowParams(a=2.0, b=0.0), 1.0, 3.0, ORACLE_TOLERANCE)
        self.assertAlmostEqual(trajectory.final_radius, 7.0, delta=1e-12)

    def test_advection_crossing(self):
        """Linear shrinkage halts cleanly at the floor and reports the crossing time"""
        trajectory = reference_integrate(FlowParams(a=-1.0, b=0.0), 10.0, 12.0, ORACLE_TOLERANCE)
        self.assertAlmostEqual(trajectory.vanishing_time, 10.0, delta=1e-8)
        self.assertEqual(trajectory.final_radius, 0.0)

    def test_crossing_near_vanishing(self):
        """Curvature-driven vanishing is stiff; the crossing time is reported whichever way integration stops"""
        self.assertAlmostEqual(oracle_crossing_time(FlowParams(a=0.0, b=1.0), 10.0, 60.0), 50.0, delta=1e-6)

    def test_stiffness_error_carries_partial_trajectory(self):
        """A StiffnessError keeps the samples integrated so far"""
        try:
            trajectory = reference_integrate(FlowParams(a=0.0, b=1.0), 10.0, 60.0, ORACLE_TOLERANCE)
        except StiffnessError as error:
            self.assertIsInstance(error.trajectory, RadiusTrajectory)
            self.assertGreater(len(error.trajectory), 1)
            self.assertLessEqual(error.trajectory.times[-1], error.crossing_time)
        else:
            self.assertEqual(trajectory.final_radius, 0.0)

    def test_invalid_tolerance(self):
        """tol must be positive"""
        with self.assertRaises(DomainError):
            reference_integrate(FlowParams(a=1.0, b=1.0), 1.0, 1.0, 0.0)


class SolutionCasesTest(SimpleTestCase):

    def test_closed_form_against_oracle(self):
        """Growth, shrinkage and negative advection match RK4 to 1e-8 up to min(20, 0.99 T)"""
        for params, r0 in SOLUTION_CASES:
            t_end = min(20.0, 0.99 * vanishing_time(params, r0).as_float())
            reference = reference_integrate(params, r0, t_end, ORACLE_TOLERANCE)
            error = max(abs(radius_at(params, r0, t) - r) for t, r in reference.samples)
            self.assertLessEqual(error, 1e-8)


class SampleTimesTest(SimpleTestCase):

    def test_grid(self):
        """k*dt up to t_end, with t_end appended when it is not on the grid"""
        np.testing.assert_array_equal(sample_times(1.0, 0.25), [0.0, 0.25, 0.5, 0.75, 1.0])
        np.testing.assert_array_equal(sample_times(1.1, 0.5), [0.0, 0.5, 1.0, 1.1])
        self.assertEqual(sample_times(15.0, 0.1)[-1], 15.0)
        self.assertEqual(len(sample_times(15.0, 0.1)), 151)

    def test_zero_end(self):
        """A zero-length run has the initial sample only"""
        np.testing.assert_array_equal(sample_times(0.0, 1.0), [0.0])


class FlowViewsTest(SimpleTestCase):

    def setUp(self):
        self.client = APIClient()

    def test_summary(self):
        """Summary of the shrinking sphere below the meta-stable radius"""
        response = self.client.post(reverse("flow_summary"), {"a": 1.0, "b": 10.0, "r0": 9.0}, format="json")
        self.assertEqual(response.status_code, status.HTTP_200_OK)
        self.assertEqual(response.data["regime"], FlowRegime.SHRINK_TO_ZERO)
        self.assertAlmostEqual(response.data["vanishing_time"], 10.0 * math.log(10.0) - 9.0, delta=1e-12)
        self.assertEqual(response.data["meta_stable_radius"], 10.0)
        self.assertAlmostEqual(response.data["prescribed_curvature"], 0.1)

    def test_summary_never_vanishes(self):
        """Growth has no vanishing time and pure advection no prescribed curvature"""
        response = self.client.post(reverse("flow_summary"), {"a": 1.0, "b": 0.0, "r0": 9.0}, format="json")
        self.assertEqual(response.status_code, status.HTTP_200_OK)
        self.assertIsNone(response.data["vanishing_time"])
        self.assertIsNone(response.data["prescribed_curvature"])

    def test_summary_validation(self):
        """Negative b and non-positive r0 are rejected"""
        response = self.client.post(reverse("flow_summary"), {"a": 1.0, "b": -1.0, "r0": 0.0}, format="json")
        self.assertEqual(response.status_code, status.HTTP_400_BAD_REQUEST)
        self.assertIn("b", response.data)
        self.assertIn("r0", response.data)

    def test_trajectory(self):
        """Trajectory samples clamp to zero after vanishing"""
        payload = {"a": -1.0, "b": 0.0, "r0": 10.0, "t_end": 15.0, "dt_sample": 5.0}
        response = self.client.post(reverse("flow_trajectory"), payload, format="json")
        self.assertEqual(response.status_code, status.HTTP_200_OK)
        self.assertEqual(response.data["samples"], [[0.0, 10.0], [5.0, 5.0], [10.0, 0.0], [15.0, 0.0]])
        self.assertEqual(response.data["vanishing_time"], 10.0)

    def test_trajectory_sample_limit(self):
        """Requests above the configured number of samples are refused"""
        payload = {"a": 1.0, "b": 10.0, "r0": 10.0, "t_end": 1e9, "dt_sample": 1e-3}
        response = self.client.post(reverse("flow_trajectory"), payload, format="json")
        self.assertEqual(response.status_code, status.HTTP_400_BAD_REQUEST)
