import logging
from traceback import format_exc
from typing import Any, Optional

from pydantic import ValidationError

from ska_tropical_newton.common.constant import PRODUCTION
from ska_tropical_newton.common.custom_exceptions import TropicalNewtonError
from ska_tropical_newton.domain.app_model import ErrorDetails, ErrorResponseTraceback

LOGGER = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FAILURE = 1


def error_details(
    status: int,
    title: str,
    detail: str,
    traceback: Optional[ErrorResponseTraceback],
    context: Optional[dict[str, Any]] = None,
):
    return ErrorDetails(
        status=status,
        title=title,
        detail=detail,
        context=context or {},
        traceback=traceback,
    ).model_dump(mode="json", exclude_none=True)


def _variant(err: Exception) -> str:
    if isinstance(err, TropicalNewtonError):
        return err.variant
    if isinstance(err, ValidationError):
        return "InputFormatError"
    return type(err).__name__


def error_response(
    operation: str, err: Exception, production: bool = PRODUCTION
) -> dict[str, Any]:
    """
    Build the structured error document written when a run fails.

    Outside production the full traceback is attached, which exposes
    implementation details. Do not ship that to untrusted consumers.
    """
    variant = _variant(err)
    traceback = None
    if not production:
        traceback = ErrorResponseTraceback(
            key=variant, type=str(type(err)), full_traceback=format_exc()
        )
    context = err.context() if isinstance(err, TropicalNewtonError) else {}
    message = err.message if isinstance(err, TropicalNewtonError) else repr(err)
    LOGGER.error("%s failed with %s: %s", operation, variant, message)
    return {
        "detail": error_details(
            EXIT_FAILURE,
            title=variant,
            detail=message,
            traceback=traceback,
            context=context,
        ),
        "operation": operation,
        "variant": variant,
    }
