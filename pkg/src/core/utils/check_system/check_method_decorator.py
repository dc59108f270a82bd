from functools import wraps
from typing import (
    Callable,
    Optional,
)

from core.exceptions import FlowError


_CHECK_SYSTEM_VIEW_TYPE = "CheckSystem"
_METHOD_TO_CHECK_TYPE = Callable[[_CHECK_SYSTEM_VIEW_TYPE], Optional[bool]]
_DECORATOR_RETURN_TYPE = Callable[[_CHECK_SYSTEM_VIEW_TYPE], None]
_CHECK_METHOD_TYPE = Callable[[_METHOD_TO_CHECK_TYPE], _DECORATOR_RETURN_TYPE]


class CheckFailed(FlowError):
    """A system check reported failure."""


def check_method(
    data_item_name: str, error_message: Optional[str] = None, success_message: Optional[str] = None
) -> _CHECK_METHOD_TYPE:
    """
    Decorator for checking methods.

    Marks the wrapper with `__is_check_method__` so `CheckSystem.get` can find it. A passing check stores its success
    message (or the view's default) under `data_item_name` in `self.data`.

    :param data_item_name: Name of the data item to store in `self.data`.
    :param error_message: Message of the error raised when the check fails. Defaults to the view's message.
    :param success_message: Success message to store in `self.data`. Defaults to the view's message.

    :return: Decorated method that performs the check and updates `self.data`.

    :raises CheckFailed: If the check method returns a falsy value.
    """

    def decorator(method_to_check: _METHOD_TO_CHECK_TYPE) -> _DECORATOR_RETURN_TYPE:
        @wraps(method_to_check)
        def wrapper(self: _CHECK_SYSTEM_VIEW_TYPE) -> None:
            if not method_to_check(self):
                # If the error message is not specified, uses the default
                raise CheckFailed(
                    error_message if error_message else self.DEFAULT_ERROR_MESSAGE.format(item=method_to_check.__name__)
                )

            # If the success message is not specified, uses the default
            self.data[data_item_name] = success_message if success_message else self.DEFAULT_SUCCESS_MESSAGE

        # Marks the wrapper method with a custom attribute
        wrapper.__is_check_method__ = True  # type: ignore[attr-defined]
        return wrapper

    return decorator
