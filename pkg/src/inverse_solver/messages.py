# Errors message
INSUFFICIENT_DATA_ERROR_MESSAGE = "Fitting needs at least {minimum} samples, got {count}."
NON_POSITIVE_OBSERVED_RADIUS_ERROR_MESSAGE = "Observed radii must all be > 0 to be fitted."
DEGENERATE_DATA_ERROR_MESSAGE = (
    "All observed radii equal {radius!r}: every (a, b) with a*r = b fits, returning the minimum-norm solution."
)
FORWARD_MODEL_ERROR_MESSAGE = "The closed form failed for a={a!r}, b={b!r}: {error}"
NO_CONVERGENCE_ERROR_MESSAGE = "The nonlinear fit did not converge in {iterations} iterations, best a={a!r}, b={b!r}."
NON_POSITIVE_HORIZON_ERROR_MESSAGE = "The sensitivity horizon must be > 0, got t_end={t_end!r}."
HORIZON_PAST_VANISHING_ERROR_MESSAGE = "t_end={t_end!r} is not before the vanishing time {vanishing_time!r}."
NON_POSITIVE_RELATIVE_STEP_ERROR_MESSAGE = "The relative finite-difference step must be > 0, got {step!r}."

# Warnings message
DOMINANT_TERM_WARNING_MESSAGE = (
    "One term dominates the data (condition={condition!r}, radius variation={variation!r}); "
    "the non-dominant rate is poorly determined."
)
