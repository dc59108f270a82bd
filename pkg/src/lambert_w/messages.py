# Errors message
PRINCIPAL_DOMAIN_ERROR_MESSAGE = "The principal branch of W is real only for z >= -1/e, got z={z!r}."
SECONDARY_DOMAIN_ERROR_MESSAGE = "The secondary branch of W is real only for -1/e <= z < 0, got z={z!r}."
SECONDARY_LOG_DOMAIN_ERROR_MESSAGE = "The secondary branch of W needs log|z| <= -1, got {log_magnitude!r}."
OFFSET_DOMAIN_ERROR_MESSAGE = "W_{branch} is real only for offsets e*z + 1 in its domain, got {offset!r}."
CONVERGENCE_ERROR_MESSAGE = "W_{branch}({z!r}) did not converge in {iterations} iterations (last w={w!r})."
