# Success message
RUN_STARTED_MESSAGE = "Running `{command}`"
RUN_FINISHED_MESSAGE = "`{command}` wrote {destination}"


# Errors message
VALIDATION_ERROR_MESSAGE = "Invalid arguments for `{command}`: {errors}"
RUN_FAILED_MESSAGE = "`{command}` failed: {error}"
MISSING_INPUT_ERROR_MESSAGE = "`invert` needs --in with a t,r CSV."
UNREADABLE_INPUT_ERROR_MESSAGE = "Cannot read {path}: {error}"
UNWRITABLE_OUTPUT_ERROR_MESSAGE = "Cannot write {path}: {error}"
INPUT_COLUMNS_ERROR_MESSAGE = "{path} must have a header with columns t and r, got {header!r}."
INPUT_VALUE_ERROR_MESSAGE = "{path}, line {line}: {error}"
NON_FINITE_OPTION_ERROR_MESSAGE = "Must be a finite number."
ODD_SAMPLES_ERROR_MESSAGE = "The phase table needs an even number of samples so that r = b/a is one of them."
EMPTY_VALUES_ERROR_MESSAGE = "Give at least one comma-separated value."
INVALID_VALUES_ERROR_MESSAGE = "Values must be comma-separated numbers, got {values!r}."
POSITIVE_T_END_ERROR_MESSAGE = "The convergence study needs t_end > 0."
ZMAX_BELOW_BRANCH_POINT_ERROR_MESSAGE = "zmax must exceed -1/e."
NON_POSITIVE_R0_ERROR_MESSAGE = "The initial radius must be > 0."
NON_POSITIVE_DT_SAMPLE_ERROR_MESSAGE = "The sampling interval must be > 0."
NON_POSITIVE_EXTENT_ERROR_MESSAGE = "The domain half-width must be > 0."
NON_POSITIVE_R_MAX_ERROR_MESSAGE = "The largest radius must be > 0."
