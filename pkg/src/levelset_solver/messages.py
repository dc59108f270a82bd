# Errors message
GRID_TOO_SMALL_ERROR_MESSAGE = "A grid needs at least {minimum} cells per axis, got n={n}."
NON_POSITIVE_EXTENT_ERROR_MESSAGE = "The domain half-width must be > 0, got extent={extent!r}."
FIELD_SHAPE_ERROR_MESSAGE = "Level-set values must have shape {expected}, got {shape}."
NON_FINITE_FIELD_ERROR_MESSAGE = "Level-set values must all be finite."
CENTER_SHAPE_ERROR_MESSAGE = "The center must be a 3-vector, got {center!r}."
SPHERE_DOES_NOT_FIT_ERROR_MESSAGE = (
    "A sphere of radius {r0!r} (plus a growth margin of {margin!r}) centered at {center!r} does not fit in "
    "[-{extent!r}, {extent!r}]^3."
)
SPHERE_UNDER_RESOLVED_ERROR_MESSAGE = "A sphere of radius {r0!r} spans fewer than {cells} cells of size {h!r}."
INDEX_TOO_CLOSE_TO_BOUNDARY_ERROR_MESSAGE = (
    "Curvature needs an index at least {margin} cells from the boundary, got {index}."
)
DEGENERATE_GRADIENT_ERROR_MESSAGE = "|grad phi| = {norm!r} at {index} is below {minimum!r}, the normal is undefined."
SAFETY_RANGE_ERROR_MESSAGE = "The CFL safety factor must lie in (0, 1], got {safety!r}."
NON_POSITIVE_STEP_ERROR_MESSAGE = "The time step must be > 0, got dt={dt!r}."
CFL_VIOLATION_ERROR_MESSAGE = "The time step dt={dt!r} exceeds the stable step {limit!r}."
EMPTY_SURFACE_ERROR_MESSAGE = "The level-set field has no interior (phi > 0 everywhere), the sphere has vanished."
DOMAIN_ESCAPE_ERROR_MESSAGE = "The zero level set reached the outer {layers} cell layers at t={t!r}."
NEGATIVE_END_TIME_ERROR_MESSAGE = "The end time must be >= 0, got t_end={t_end!r}."
SNAPSHOT_TRUNCATED_ERROR_MESSAGE = "The snapshot holds {size} bytes, expected {expected}."
SNAPSHOT_HEADER_ERROR_MESSAGE = "The snapshot header is inconsistent: n={n!r}, count={count}."
