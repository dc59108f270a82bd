# Errors message
NEGATIVE_CURVATURE_RATE_ERROR_MESSAGE = (
    "The curvature rate b must be >= 0 (b < 0 is inverse mean curvature flow), got {b!r}."
)
NON_POSITIVE_RADIUS_ERROR_MESSAGE = "The initial radius must be > 0, got {r0!r}."
NEGATIVE_TIME_ERROR_MESSAGE = "Time must be >= 0, got {t!r}."
PRESCRIBED_CURVATURE_UNDEFINED_ERROR_MESSAGE = "The prescribed curvature a/b is undefined for b = 0."
STATIC_FLOW_VANISHING_ERROR_MESSAGE = "With a = b = 0 nothing moves; the vanishing time is not defined."
VANISHED_ERROR_MESSAGE = "The sphere (a={a!r}, b={b!r}, r0={r0!r}) has vanished before t={t!r}."
TIMES_NOT_INCREASING_ERROR_MESSAGE = "Sample times must be strictly increasing."
TIMES_NOT_FROM_ZERO_ERROR_MESSAGE = "Sample times must start at t = 0, got {t!r}."
EMPTY_TRAJECTORY_ERROR_MESSAGE = "A trajectory needs at least one sample."
TRAJECTORY_SHAPE_ERROR_MESSAGE = "Times and radii must be one-dimensional and of equal length."
NEGATIVE_RADIUS_SAMPLE_ERROR_MESSAGE = "Trajectory radii must be finite and >= 0."
NON_POSITIVE_TOLERANCE_ERROR_MESSAGE = "The integration tolerance must be > 0, got {tol!r}."
STIFFNESS_ERROR_MESSAGE = "Step size underflowed at t={t!r} (r={r!r}); estimated crossing time {crossing_time!r}."
NON_POSITIVE_SAMPLE_INTERVAL_ERROR_MESSAGE = "The sampling interval must be > 0, got {dt!r}."
