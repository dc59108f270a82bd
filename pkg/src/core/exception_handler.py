import logging
from typing import (
    Any,
    Optional,
)

from rest_framework import status
from rest_framework.response import Response
from rest_framework.views import exception_handler

from core.exceptions import (
    DomainError,
    FlowError,
)


logger = logging.getLogger(__name__)


def flow_exception_handler(exc: Exception, context: dict[str, Any]) -> Optional[Response]:
    """
    Extends the DRF exception handler with the toolkit's errors.

    `DomainError` means the request asked for something that does not exist (400); any other `FlowError` means the
    solver could not produce an answer for a valid request (422).
    """

    if isinstance(exc, DomainError):
        return Response({"detail": str(exc)}, status=status.HTTP_400_BAD_REQUEST)
    if isinstance(exc, FlowError):
        logger.warning(f"Solver failure in {context.get('view').__class__.__name__}: {exc}")
        return Response({"detail": str(exc)}, status=status.HTTP_422_UNPROCESSABLE_ENTITY)

    return exception_handler(exc, context)
