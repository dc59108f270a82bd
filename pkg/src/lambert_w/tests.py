import math

import numpy as np
from django.test import SimpleTestCase
from django.urls import reverse
from rest_framework import status
from rest_framework.test import APIClient

from core.exceptions import NonFiniteInput
from lambert_w.branches import LambertBranch
from lambert_w.exceptions import LambertDomainError
from lambert_w.functions import (
    BRANCH_POINT,
    lambert_w,
    lambert_w_near_branch_point,
    lambert_w_of_exp,
)


OMEGA = 0.5671432904097838
W_SECONDARY_MINUS_TENTH = -3.577152063957297


def residual_ratio(w: float, z: float) -> float:
    return abs(w * math.exp(w) - z) / max(1.0, abs(z))


class LambertWValuesTest(SimpleTestCase):

    def test_principal_trivial_values(self):
        """W_0(0) = 0 and W_0(e) = 1"""
        self.assertEqual(lambert_w(LambertBranch.PRINCIPAL, 0.0), 0.0)
        self.assertAlmostEqual(lambert_w(LambertBranch.PRINCIPAL, math.e), 1.0, places=14)

    def test_branch_point(self):
        """Both branches meet at -1 for z = -1/e"""
        self.assertAlmostEqual(lambert_w(LambertBranch.PRINCIPAL, -1 / math.e), -1.0, delta=1e-8)
        self.assertAlmostEqual(lambert_w(LambertBranch.SECONDARY, -1 / math.e), -1.0, delta=1e-8)
        self.assertEqual(lambert_w(LambertBranch.SECONDARY, BRANCH_POINT), -1.0)

    def test_omega_constant(self):
        """W_0(1) is the omega constant"""
        self.assertAlmostEqual(lambert_w(LambertBranch.PRINCIPAL, 1.0), OMEGA, delta=1e-14)

    def test_secondary_value(self):
        """W_-1(-0.1) matches a bisection reference"""
        self.assertAlmostEqual(lambert_w(LambertBranch.SECONDARY, -0.1), W_SECONDARY_MINUS_TENTH, delta=1e-13)

    def test_branch_ranges(self):
        """Principal values are >= -1, secondary values are <= -1"""
        for z in (-0.3678, -0.3, -0.1, -1e-5):
            self.assertGreaterEqual(lambert_w(LambertBranch.PRINCIPAL, z), -1.0)
            self.assertLessEqual(lambert_w(LambertBranch.SECONDARY, z), -1.0)

    def test_branch_accepts_integer_index(self):
        """The branch can be given as its index k"""
        self.assertAlmostEqual(lambert_w(-1, -0.1), W_SECONDARY_MINUS_TENTH, delta=1e-13)


class LambertWErrorsTest(SimpleTestCase):

    def test_principal_below_branch_point(self):
        """z < -1/e has no real solution on the principal branch"""
        with self.assertRaises(LambertDomainError):
            lambert_w(LambertBranch.PRINCIPAL, -0.4)

    def test_secondary_non_negative(self):
        """The secondary branch is undefined for z >= 0"""
        for z in (0.0, 1.0):
            with self.assertRaises(LambertDomainError):
                lambert_w(LambertBranch.SECONDARY, z)

    def test_secondary_below_branch_point(self):
        """The secondary branch is undefined for z < -1/e"""
        with self.assertRaises(LambertDomainError):
            lambert_w(LambertBranch.SECONDARY, -0.5)

    def test_non_finite_input(self):
        """NaN and infinities are rejected before any iteration"""
        for z in (float("nan"), float("inf"), float("-inf")):
            with self.assertRaises(NonFiniteInput):
                lambert_w(LambertBranch.PRINCIPAL, z)

    def test_domain_error_is_value_error(self):
        """Domain errors can be caught as ValueError"""
        with self.assertRaises(ValueError):
            lambert_w(LambertBranch.PRINCIPAL, -1.0)


class LambertWPropertiesTest(SimpleTestCase):

    def test_residual_principal_log_spaced(self):
        """|W e^W - z| <= 1e-12 max(1, |z|) over log-spaced arguments of the principal branch"""
        positive = np.logspace(-300, 300, 50_000)
        negative = np.maximum(-np.logspace(-300, math.log10(1 / math.e), 50_000), BRANCH_POINT)
        arguments = np.concatenate([positive, negative])
        worst = max(residual_ratio(lambert_w(LambertBranch.PRINCIPAL, z), z) for z in arguments)
        self.assertLessEqual(worst, 1e-12)

    def test_residual_secondary_log_spaced(self):
        """|W e^W - z| <= 1e-12 max(1, |z|) over log-spaced arguments of the secondary branch"""
        negative = np.maximum(-np.logspace(-300, math.log10(1 / math.e), 100_000), BRANCH_POINT)
        worst = max(residual_ratio(lambert_w(LambertBranch.SECONDARY, z), z) for z in negative)
        self.assertLessEqual(worst, 1e-12)

    def test_round_trip_principal(self):
        """W_0(w e^w) = w for w in [-1, 30] away from the ill-conditioned neighbourhood of -1"""
        for w in np.concatenate([[-1.0], np.linspace(-0.999, 30.0, 5000)]):
            recovered = lambert_w(LambertBranch.PRINCIPAL, w * math.exp(w))
            self.assertLessEqual(abs(recovered - w), 1e-10 * max(1.0, abs(w)), msg=f"w={w!r}")

    def test_round_trip_secondary(self):
        """W_-1(w e^w) = w for w in [-30, -1] away from the ill-conditioned neighbourhood of -1"""
        for w in np.concatenate([np.linspace(-30.0, -1.001, 5000), [-1.0]]):
            recovered = lambert_w(LambertBranch.SECONDARY, w * math.exp(w))
            self.assertLessEqual(abs(recovered - w), 1e-10 * abs(w), msg=f"w={w!r}")

    def test_monotonicity(self):
        """W_0 is nondecreasing and W_-1 nonincreasing on their domains"""
        z_values = np.linspace(BRANCH_POINT, -1e-9, 2000)
        principal = [lambert_w(LambertBranch.PRINCIPAL, z) for z in z_values]
        secondary = [lambert_w(LambertBranch.SECONDARY, z) for z in z_values]
        self.assertTrue(np.all(np.diff(principal) >= 0.0))
        self.assertTrue(np.all(np.diff(secondary) <= 0.0))

        growing = [lambert_w(LambertBranch.PRINCIPAL, z) for z in np.logspace(-5, 5, 500)]
        self.assertTrue(np.all(np.diff(growing) >= 0.0))


class LambertWOfExpTest(SimpleTestCase):

    def test_agrees_with_direct_evaluation(self):
        """Log-space evaluation matches W of the formed argument where that argument is representable"""
        for log_magnitude in (2.0, 50.0, 700.0):
            direct = lambert_w(LambertBranch.PRINCIPAL, math.exp(log_magnitude))
            self.assertAlmostEqual(lambert_w_of_exp(LambertBranch.PRINCIPAL, log_magnitude), direct, delta=1e-10)
        direct = lambert_w(LambertBranch.SECONDARY, -math.exp(-20.0))
        self.assertAlmostEqual(lambert_w_of_exp(LambertBranch.SECONDARY, -20.0), direct, delta=1e-10)

    def test_beyond_double_range(self):
        """Arguments exp(+-800) are handled without overflow or underflow"""
        w = lambert_w_of_exp(LambertBranch.PRINCIPAL, 800.0)
        self.assertAlmostEqual(w + math.log(w), 800.0, delta=1e-10)

        w = lambert_w_of_exp(LambertBranch.SECONDARY, -800.0)
        self.assertLess(w, -1.0)
        self.assertAlmostEqual(w + math.log(-w), -800.0, delta=1e-10)

    def test_secondary_domain(self):
        """log|z| > -1 puts the secondary branch argument below -1/e"""
        with self.assertRaises(LambertDomainError):
            lambert_w_of_exp(LambertBranch.SECONDARY, 0.0)


class LambertWNearBranchPointTest(SimpleTestCase):

    def test_branch_point(self):
        """A zero offset is the branch point itself on both branches"""
        self.assertEqual(lambert_w_near_branch_point(LambertBranch.PRINCIPAL, 0.0), -1.0)
        self.assertEqual(lambert_w_near_branch_point(LambertBranch.SECONDARY, 0.0), -1.0)

    def test_square_root_behaviour(self):
        """For tiny offsets (w + 1)^2 / 2 recovers the offset with the right sign of w + 1"""
        for offset in (1e-14, 1e-12, 1e-9):
            principal = lambert_w_near_branch_point(LambertBranch.PRINCIPAL, offset)
            secondary = lambert_w_near_branch_point(LambertBranch.SECONDARY, offset)
            self.assertGreater(principal, -1.0)
            self.assertLess(secondary, -1.0)
            for w in (principal, secondary):
                self.assertAlmostEqual((w + 1.0) ** 2 / 2.0, offset, delta=1e-5 * offset)

    def test_agrees_with_argument_form(self):
        """Away from the branch point it is W of (offset - 1)/e"""
        for branch in LambertBranch:
            self.assertEqual(lambert_w_near_branch_point(branch, 0.3), lambert_w(branch, (0.3 - 1.0) / math.e))

    def test_domain(self):
        """Negative offsets and, on the secondary branch, offsets of 1 or more are rejected"""
        with self.assertRaises(LambertDomainError):
            lambert_w_near_branch_point(LambertBranch.PRINCIPAL, -1e-3)
        with self.assertRaises(LambertDomainError):
            lambert_w_near_branch_point(LambertBranch.SECONDARY, 1.0)


class LambertWViewTest(SimpleTestCase):

    def setUp(self):
        self.client = APIClient()
        self.url = reverse("lambert_w")

    def test_principal_value(self):
        """GET returns W_0(1)"""
        response = self.client.get(self.url, {"branch": 0, "z": 1.0})
        self.assertEqual(response.status_code, status.HTTP_200_OK)
        self.assertAlmostEqual(response.data["w"], OMEGA, delta=1e-14)

    def test_secondary_value(self):
        """GET returns W_-1(-0.1)"""
        response = self.client.get(self.url, {"branch": -1, "z": -0.1})
        self.assertEqual(response.status_code, status.HTTP_200_OK)
        self.assertEqual(response.data["branch"], -1)
        self.assertAlmostEqual(response.data["w"], W_SECONDARY_MINUS_TENTH, delta=1e-13)

    def test_domain_error_is_bad_request(self):
        """An argument outside the branch domain is a 400 with a detail message"""
        response = self.client.get(self.url, {"branch": 0, "z": -1.0})
        self.assertEqual(response.status_code, status.HTTP_400_BAD_REQUEST)
        self.assertIn("detail", response.data)

    def test_unknown_branch(self):
        """Only k = 0 and k = -1 exist"""
        response = self.client.get(self.url, {"branch": 1, "z": 1.0})
        self.assertEqual(response.status_code, status.HTTP_400_BAD_REQUEST)
