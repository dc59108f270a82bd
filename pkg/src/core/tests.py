import math
from io import StringIO
from unittest import mock

from django.test import (
    SimpleTestCase,
    override_settings,
)
from django.urls import reverse
from rest_framework import status
from rest_framework.exceptions import ValidationError
from rest_framework.test import APIClient

from core.exception_handler import flow_exception_handler
from core.exceptions import (
    ConvergenceError,
    DomainError,
    NonFiniteInput,
)
from core.formatting import (
    format_number,
    write_csv,
)
from core.validators import require_finite


class FormattingTest(SimpleTestCase):

    def test_lossless_digits(self):
        """17 significant digits round-trip every double"""
        for value in (0.1, 1.0 / 3.0, math.pi * 1e300, 5e-324, -2.5):
            self.assertEqual(float(format_number(value)), value)

    def test_integral_values(self):
        self.assertEqual(format_number(10.0), "10")
        self.assertEqual(format_number(-0.0), "0")

    @override_settings(FLOW_CSV_SIGNIFICANT_DIGITS=3)
    def test_configured_digits(self):
        self.assertEqual(format_number(math.pi), "3.14")

    def test_non_finite(self):
        """NaN and infinities never reach a CSV"""
        for value in (math.nan, math.inf, -math.inf):
            with self.assertRaises(ValueError):
                format_number(value)

    def test_write_csv(self):
        stream = StringIO()
        count = write_csv(stream, ("x", "flag", "note"), [(0.5, True, None), (2, False, "text")])
        self.assertEqual(count, 2)
        self.assertEqual(stream.getvalue(), "x,flag,note\n0.5,true,\n2,false,text\n")


class RequireFiniteTest(SimpleTestCase):

    def test_finite(self):
        self.assertEqual(require_finite("x", 3), 3.0)

    def test_non_finite(self):
        """NonFiniteInput is a DomainError and a ValueError"""
        with self.assertRaises(NonFiniteInput) as context:
            require_finite("x", math.nan)
        self.assertIsInstance(context.exception, DomainError)
        self.assertIsInstance(context.exception, ValueError)
        self.assertIn("x", str(context.exception))


class ExceptionHandlerTest(SimpleTestCase):

    def test_domain_error(self):
        response = flow_exception_handler(DomainError("outside"), {"view": None})
        self.assertEqual(response.status_code, status.HTTP_400_BAD_REQUEST)
        self.assertEqual(response.data, {"detail": "outside"})

    def test_solver_error(self):
        response = flow_exception_handler(ConvergenceError("stuck"), {"view": None})
        self.assertEqual(response.status_code, status.HTTP_422_UNPROCESSABLE_ENTITY)

    def test_framework_errors_pass_through(self):
        response = flow_exception_handler(ValidationError({"a": ["bad"]}), {"view": None})
        self.assertEqual(response.status_code, status.HTTP_400_BAD_REQUEST)
        self.assertEqual(response.data, {"a": ["bad"]})

    def test_unknown_errors(self):
        """Errors outside the toolkit are left to Django"""
        self.assertIsNone(flow_exception_handler(KeyError("x"), {"view": None}))


class CheckSystemTest(SimpleTestCase):

    def setUp(self):
        self.client = APIClient()

    def test_all_checks_pass(self):
        response = self.client.get(reverse("check_system"))
        self.assertEqual(response.status_code, status.HTTP_200_OK)
        self.assertEqual(set(response.data), {"logs", "oracle", "lambert"})

    def test_failed_check(self):
        """A failing check is reported as a solver failure"""
        with mock.patch("core.views.check_system.ORACLE_TOLERANCE", -1.0):
            response = self.client.get(reverse("check_system"))
        self.assertEqual(response.status_code, status.HTTP_422_UNPROCESSABLE_ENTITY)
        self.assertIn("reference integrator", response.data["detail"])
