import inspect
import logging
import math
from typing import (
    Any,
    Optional,
)

from django.conf import settings
from rest_framework.request import Request
from rest_framework.response import Response
from rest_framework.views import APIView

from analytic_flow.closed_form import radius_at
from analytic_flow.domain import FlowParams
from analytic_flow.reference import reference_integrate
from core import messages
from core.exceptions import FlowError
from core.utils import check_method
from lambert_w.branches import LambertBranch
from lambert_w.functions import lambert_w


logger = logging.getLogger(__name__)

# Growth past the meta-stable radius, where the reference integrator never stiffens
ORACLE_PARAMS = FlowParams(a=1.0, b=10.0)
ORACLE_R0 = 11.0
ORACLE_T_END = 5.0
ORACLE_TOLERANCE = 1e-8

LAMBERT_SAMPLES = {
    LambertBranch.PRINCIPAL: (-0.3, -0.1, 0.5, 1.0, 10.0, 1e6),
    LambertBranch.SECONDARY: (-0.3, -0.1, -1e-3, -1e-10),
}
LAMBERT_TOLERANCE = 1e-12


class CheckSystem(APIView):
    """
    Class for checking system settings and their status.

    Inherits from `APIView` and runs every method decorated with `check_method`: the logging configuration, the
    closed form against the reference integrator and the Lambert W round trip.
    """

    def __init__(self, **kwargs: Any) -> None:
        super().__init__(**kwargs)
        self.DEFAULT_ERROR_MESSAGE = messages.CHECK_FAILED_MESSAGE
        self.DEFAULT_SUCCESS_MESSAGE = messages.CHECK_SUCCESS_MESSAGE
        self.data: dict[str, Any] = {}

    @check_method(
        data_item_name="logs",
        error_message=messages.LOGS_CHECK_FAILED_MESSAGE,
        success_message=messages.LOGS_CHECK_SUCCESS_MESSAGE,
    )
    def check_logs(self) -> Optional[bool]:
        """
        Emits one record per level through the configured handlers.

        :return: True if every record was handled, False if the logging configuration is broken.
        """

        try:
            for level in (logging.DEBUG, logging.INFO, logging.WARNING, logging.ERROR, logging.CRITICAL):
                logger.log(level, f"example {logging.getLevelName(level)} message")
            return True
        except (KeyError, ValueError) as e:
            logger.exception(f"Logging configuration error: {e}")
            return False

    @check_method(
        data_item_name="oracle",
        error_message=messages.ORACLE_CHECK_FAILED_MESSAGE,
        success_message=messages.ORACLE_CHECK_SUCCESS_MESSAGE,
    )
    def check_oracle(self) -> bool:
        """Compares the closed form with the RK4 reference on a growing sphere."""

        try:
            reference = reference_integrate(ORACLE_PARAMS, ORACLE_R0, ORACLE_T_END, settings.FLOW_REFERENCE_TOLERANCE)
            deviation = max(
                abs(radius_at(ORACLE_PARAMS, ORACLE_R0, float(t)) - r) for t, r in zip(reference.times, reference.radii)
            )
        except FlowError as e:
            logger.error(f"Oracle check failed: {e}")
            return False

        logger.info(f"Closed form deviates from the reference by {deviation!r}")
        return deviation <= ORACLE_TOLERANCE

    @check_method(
        data_item_name="lambert",
        error_message=messages.LAMBERT_CHECK_FAILED_MESSAGE,
        success_message=messages.LAMBERT_CHECK_SUCCESS_MESSAGE,
    )
    def check_lambert(self) -> bool:
        """Checks w * exp(w) = z on both branches."""

        for branch, arguments in LAMBERT_SAMPLES.items():
            for z in arguments:
                w = lambert_w(branch, z)
                if abs(w * math.exp(w) - z) > LAMBERT_TOLERANCE * max(1.0, abs(z)):
                    logger.error(f"W_{branch.value}({z!r}) = {w!r} fails the round trip")
                    return False
        return True

    def get(self, request: Request) -> Response:
        """
        Performs all checks and returns their results as a JSON response.

        :param request: The rest_framework Request object.

        :return: Response with the results of all checks.
        """

        # Finds all methods that are checks (decorated with check_method)
        checks = [
            method
            for name, method in inspect.getmembers(self, predicate=inspect.ismethod)
            if getattr(method, "__is_check_method__", False)
        ]
        for check in checks:
            check()

        return Response(self.data)
