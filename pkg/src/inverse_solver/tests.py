import math

import numpy as np
from django.test import SimpleTestCase
from django.urls import reverse
from rest_framework import status
from rest_framework.test import APIClient

from analytic_flow.closed_form import (
    evolve_trajectory,
    vanishing_time,
)
from analytic_flow.domain import (
    FlowParams,
    RadiusTrajectory,
)
from core.exceptions import DomainError
from inverse_solver.exceptions import (
    DegenerateData,
    InsufficientData,
    NoConvergence,
)
from inverse_solver.forward import (
    finite_difference_jacobian,
    rms_misfit,
)
from inverse_solver.identifiability import identifiability_report
from inverse_solver.linear import fit_linear
from inverse_solver.nonlinear import fit_nonlinear
from inverse_solver.results import IdentifiabilityReport


BALANCED = FlowParams(a=1.0, b=10.0)
BALANCED_R0 = 9.0
NOISE_SEEDS = range(20)
# Same seeds at every level, so the noise itself scales exactly with sigma
NOISE_LEVELS = (1e-4, 1e-3, 1e-2)
NOISE_SLACK = 0.5


def closed_form_trajectory(params: FlowParams, r0: float, t_end: float, samples: int = 200) -> RadiusTrajectory:
    return evolve_trajectory(params, r0, np.linspace(0.0, t_end, samples))


def with_noise(traj: RadiusTrajectory, sigma: float, seed: int) -> RadiusTrajectory:
    noise = np.random.default_rng(seed).normal(0.0, sigma, size=len(traj))
    return RadiusTrajectory(times=traj.times, radii=traj.radii + noise)


def relative_error(estimate: FlowParams, truth: FlowParams) -> float:
    return max(abs(estimate.a - truth.a) / abs(truth.a), abs(estimate.b - truth.b) / abs(truth.b))


def refine(traj: RadiusTrajectory):
    linear = fit_linear(traj)
    try:
        return linear, fit_nonlinear(traj, linear.params)
    except NoConvergence as error:
        return linear, error.result


class FitLinearTest(SimpleTestCase):

    def test_pure_advection(self):
        """r = r0 + 2t is recovered as a = 2 and b = 0"""
        times = np.linspace(0.0, 5.0, 50)
        result = fit_linear(RadiusTrajectory(times=times, radii=1.0 + 2.0 * times))
        self.assertAlmostEqual(result.params.a, 2.0, delta=1e-9)
        self.assertAlmostEqual(result.params.b, 0.0, delta=1e-9)
        self.assertAlmostEqual(result.residual, 0.0, delta=1e-6)

    def test_closed_form_trajectory(self):
        """Noiseless closed-form data near the meta-stable radius gives the rates within 1%"""
        result = fit_linear(closed_form_trajectory(BALANCED, BALANCED_R0, 5.0))
        self.assertLess(relative_error(result.params, BALANCED), 1e-2)
        self.assertGreaterEqual(result.condition, 1.0)
        self.assertTrue(result.converged)

    def test_constant_trajectory_is_degenerate(self):
        """A sphere sitting at its meta-stable radius cannot separate a from b"""
        traj = RadiusTrajectory(times=np.linspace(0.0, 5.0, 20), radii=np.full(20, 10.0))
        with self.assertRaises(DegenerateData) as context:
            fit_linear(traj)

        result = context.exception.result
        self.assertTrue(result.dominant_term_warning)
        self.assertEqual(result.condition, math.inf)
        self.assertEqual((result.params.a, result.params.b), (0.0, 0.0))
        self.assertEqual(result.residual, 0.0)

    def test_negative_curvature_rate_is_projected(self):
        """r = sqrt(1 + 2t) solves r' = 1/r, i.e. b = -1, which projects onto b = 0"""
        times = np.linspace(0.0, 2.0, 40)
        result = fit_linear(RadiusTrajectory(times=times, radii=np.sqrt(1.0 + 2.0 * times)))
        self.assertEqual(result.params.b, 0.0)
        self.assertGreater(result.params.a, 0.0)

    def test_small_radius_variation_warns(self):
        """Less than 1% of radius change is flagged"""
        result = fit_linear(closed_form_trajectory(BALANCED, 9.9, 1.0, samples=50))
        self.assertTrue(result.dominant_term_warning)

    def test_insufficient_data(self):
        """At least four samples are needed and all radii must be positive"""
        with self.assertRaises(InsufficientData):
            fit_linear(RadiusTrajectory(times=[0.0, 1.0, 2.0], radii=[3.0, 2.0, 1.0]))
        with self.assertRaises(DomainError):
            fit_linear(RadiusTrajectory(times=[0.0, 1.0, 2.0, 3.0], radii=[3.0, 2.0, 1.0, 0.0]))


class FitNonlinearTest(SimpleTestCase):

    def test_recovers_balanced_rates(self):
        """Noiseless data is fitted to 1e-6 relative"""
        traj = closed_form_trajectory(BALANCED, BALANCED_R0, 5.0)
        result = fit_nonlinear(traj, fit_linear(traj).params)
        self.assertTrue(result.converged)
        self.assertLess(relative_error(result.params, BALANCED), 1e-6)
        self.assertLess(result.residual, 1e-8)

    def test_exact_recovery_sweep(self):
        """Noiseless data of every regime is fitted to 1e-6 relative"""
        for a in (-2.0, -0.5, 0.5, 2.0):
            for b in (0.5, 5.0, 20.0):
                for r0 in (0.5 * b / a, 2.0, 11.0):
                    if r0 <= 0.0:
                        continue
                    params = FlowParams(a=a, b=b)
                    vanish = vanishing_time(params, r0)
                    t_end = 0.5 * vanish.time if vanish.is_finite else 0.5 * r0 / (a - b / r0)
                    with self.subTest(a=a, b=b, r0=r0):
                        _, result = refine(closed_form_trajectory(params, r0, t_end))
                        self.assertTrue(result.converged)
                        self.assertLess(relative_error(result.params, params), 1e-6)

    def test_zero_curvature_rate(self):
        """Pure advection data drives b onto its bound from a positive start"""
        traj = closed_form_trajectory(FlowParams(a=2.0, b=0.0), 1.0, 2.0)
        result = fit_nonlinear(traj, FlowParams(a=1.5, b=0.1))
        self.assertTrue(result.converged)
        self.assertAlmostEqual(result.params.a, 2.0, delta=1e-6)
        self.assertLessEqual(result.params.b, 1e-6)

    def test_residual_not_above_linear(self):
        """The refinement never ends with a larger misfit than its linear seed"""
        for seed in range(3):
            with self.subTest(seed=seed):
                linear, nonlinear = refine(with_noise(closed_form_trajectory(BALANCED, BALANCED_R0, 5.0), 1e-3, seed))
                self.assertLessEqual(nonlinear.residual, linear.residual)

    def test_no_convergence_carries_best_estimate(self):
        """Running out of iterations reports the best estimate seen"""
        traj = closed_form_trajectory(BALANCED, BALANCED_R0, 5.0)
        init = FlowParams(a=0.5, b=5.0)
        with self.assertRaises(NoConvergence) as context:
            fit_nonlinear(traj, init, max_iterations=1)

        result = context.exception.result
        self.assertFalse(result.converged)
        self.assertEqual(result.iterations, 1)
        self.assertLessEqual(result.residual, rms_misfit(init, traj.times, traj.radii))

    def test_constant_trajectory_is_flagged(self):
        """Starting from the minimum-norm estimate of degenerate data the result stays flagged"""
        traj = RadiusTrajectory(times=np.linspace(0.0, 5.0, 20), radii=np.full(20, 10.0))
        result = fit_nonlinear(traj, FlowParams(a=0.0, b=0.0))
        self.assertTrue(result.dominant_term_warning)

    def test_insufficient_data(self):
        with self.assertRaises(InsufficientData):
            fit_nonlinear(RadiusTrajectory(times=[0.0, 1.0], radii=[3.0, 2.0]), BALANCED)


class NoisyFitTest(SimpleTestCase):

    @classmethod
    def setUpClass(cls):
        super().setUpClass()
        clean = closed_form_trajectory(BALANCED, BALANCED_R0, 5.0)
        cls.errors = {
            sigma: [relative_error(refine(with_noise(clean, sigma, seed))[1].params, BALANCED) for seed in NOISE_SEEDS]
            for sigma in NOISE_LEVELS
        }

    def test_median_error(self):
        """Gaussian noise of 1e-3 keeps the median error within 5%"""
        self.assertLessEqual(np.median(self.errors[1e-3]), 5e-2)

    def test_error_grows_linearly_with_noise(self):
        """Each tenfold increase of the noise from 1e-4 to 1e-2 raises the median error at most tenfold, with slack"""
        medians = [np.median(self.errors[sigma]) for sigma in NOISE_LEVELS]
        for smaller, larger in zip(medians, medians[1:]):
            self.assertGreater(smaller, 0.0)
            self.assertLessEqual(larger / smaller, 10.0 * (1.0 + NOISE_SLACK))


class FiniteDifferenceJacobianTest(SimpleTestCase):

    def test_step_halving_agreement(self):
        """Halving the step changes the Jacobian by less than 1e-4 relative"""
        times = np.linspace(0.0, 5.0, 200)
        coarse = finite_difference_jacobian(times, BALANCED_R0, BALANCED, relative_step=1e-6)
        fine = finite_difference_jacobian(times, BALANCED_R0, BALANCED, relative_step=5e-7)
        self.assertLess(np.linalg.norm(coarse - fine) / np.linalg.norm(coarse), 1e-4)

    def test_advection_derivative(self):
        """For b = 0 the radius r0 + a*t has dr/da = t"""
        times = np.linspace(0.0, 5.0, 11)
        jacobian = finite_difference_jacobian(times, 1.0, FlowParams(a=2.0, b=0.0))
        np.testing.assert_allclose(jacobian[:, 0], times, atol=1e-8)
        self.assertTrue(np.all(jacobian[1:, 1] < 0.0))

    def test_non_positive_step(self):
        with self.assertRaises(DomainError):
            finite_difference_jacobian(np.linspace(0.0, 1.0, 5), 1.0, BALANCED, relative_step=0.0)


class IdentifiabilityReportTest(SimpleTestCase):

    def test_advection_dominated(self):
        """A large sphere is driven by advection"""
        report = identifiability_report(FlowParams(a=1.0, b=10.0), 100.0, 10.0)
        self.assertEqual(report.dominant_term, "a")
        self.assertGreater(report.ratio, 5.0)
        self.assertFalse(report.non_dominant_risk)

    def test_curvature_dominated(self):
        """Weak advection on a small sphere is invisible in the data"""
        report = identifiability_report(FlowParams(a=1e-3, b=10.0), 1.0, 0.025)
        self.assertEqual(report.dominant_term, "b")
        self.assertTrue(report.non_dominant_risk)

    def test_balanced(self):
        """Near the meta-stable radius both rates matter"""
        report = identifiability_report(BALANCED, BALANCED_R0, 5.0)
        self.assertLess(report.ratio, 10.0)
        self.assertFalse(report.non_dominant_risk)

    def test_zero_sensitivity(self):
        report = IdentifiabilityReport(sensitivity_a=1.0, sensitivity_b=0.0)
        self.assertEqual(report.ratio, math.inf)
        self.assertTrue(report.non_dominant_risk)
        self.assertEqual(report.dominant_term, "a")

    def test_invalid_horizon(self):
        """The horizon must be positive and before the vanishing time"""
        with self.assertRaises(DomainError):
            identifiability_report(BALANCED, BALANCED_R0, 0.0)
        with self.assertRaises(DomainError):
            identifiability_report(BALANCED, BALANCED_R0, 100.0)


class InverseViewsTest(SimpleTestCase):

    def setUp(self):
        self.client = APIClient()

    def test_fit(self):
        """Both fits are returned for well-posed data"""
        samples = [list(sample) for sample in closed_form_trajectory(BALANCED, BALANCED_R0, 5.0).samples]
        response = self.client.post(reverse("inverse_fit"), {"samples": samples}, format="json")
        self.assertEqual(response.status_code, status.HTTP_200_OK)
        self.assertFalse(response.data["degenerate"])
        self.assertAlmostEqual(response.data["linear"]["a"], 1.0, delta=1e-2)
        self.assertAlmostEqual(response.data["nonlinear"]["a"], 1.0, delta=1e-6)
        self.assertAlmostEqual(response.data["nonlinear"]["b"], 10.0, delta=1e-5)
        self.assertTrue(response.data["nonlinear"]["converged"])

    def test_fit_degenerate(self):
        """Constant data returns the flagged linear fit only"""
        samples = [[float(t), 10.0] for t in range(10)]
        response = self.client.post(reverse("inverse_fit"), {"samples": samples}, format="json")
        self.assertEqual(response.status_code, status.HTTP_200_OK)
        self.assertTrue(response.data["degenerate"])
        self.assertIsNone(response.data["nonlinear"])
        self.assertIsNone(response.data["linear"]["condition"])
        self.assertTrue(response.data["linear"]["dominant_term_warning"])

    def test_fit_validation(self):
        """Too few samples and malformed pairs are rejected"""
        response = self.client.post(reverse("inverse_fit"), {"samples": [[0, 3], [1, 2], [2, 1]]}, format="json")
        self.assertEqual(response.status_code, status.HTTP_400_BAD_REQUEST)
        self.assertIn("detail", response.data)

        response = self.client.post(reverse("inverse_fit"), {"samples": [[0, 3, 1]]}, format="json")
        self.assertEqual(response.status_code, status.HTTP_400_BAD_REQUEST)
        self.assertIn("samples", response.data)

    def test_identifiability(self):
        payload = {"a": 1e-3, "b": 10.0, "r0": 1.0, "t_end": 0.025}
        response = self.client.post(reverse("inverse_identifiability"), payload, format="json")
        self.assertEqual(response.status_code, status.HTTP_200_OK)
        self.assertTrue(response.data["non_dominant_risk"])
        self.assertEqual(response.data["dominant_term"], "b")

    def test_identifiability_past_vanishing(self):
        payload = {"a": 1.0, "b": 10.0, "r0": 9.0, "t_end": 100.0}
        response = self.client.post(reverse("inverse_identifiability"), payload, format="json")
        self.assertEqual(response.status_code, status.HTTP_400_BAD_REQUEST)
