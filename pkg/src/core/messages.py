# Success message
CHECK_SUCCESS_MESSAGE = "Successfully configured!"
LOGS_CHECK_SUCCESS_MESSAGE = "Logging is working!"
ORACLE_CHECK_SUCCESS_MESSAGE = "Closed form agrees with the reference integrator."
LAMBERT_CHECK_SUCCESS_MESSAGE = "Lambert W round trip holds on both branches."


# Errors message
CHECK_FAILED_MESSAGE = "Check {item} failed."
LOGS_CHECK_FAILED_MESSAGE = "Logging is not configured in the project."
ORACLE_CHECK_FAILED_MESSAGE = "Closed form and reference integrator disagree."
LAMBERT_CHECK_FAILED_MESSAGE = "Lambert W round trip failed."
NON_FINITE_VALUE_ERROR_MESSAGE = "{name} must be a finite number, got {value!r}."
