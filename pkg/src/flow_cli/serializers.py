import math

from django.conf import settings
from rest_framework import serializers

from flow_cli import messages
from flow_cli.config import (
    RunCommand,
    RunConfig,
    VariedRate,
)
from lambert_w.functions import BRANCH_POINT
from levelset_solver.domain import MIN_CELLS


# Defaults put the sphere just inside the meta-stable radius b/a = 10
DEFAULT_R0 = 9.0
DEFAULT_A = 1.0
DEFAULT_B = 10.0
DEFAULT_FAMILY_VALUES = "-1,-0.5,0,0.5,1"
# The domain half-width defaults to this multiple of r0
DEFAULT_EXTENT_FACTOR = 2.0


class RunConfigSerializer(serializers.Serializer):
    """
    Validates the options of the `flow` management command and builds the `RunConfig` it runs.
    """

    cmd = serializers.ChoiceField(choices=RunCommand.choices)
    r0 = serializers.FloatField(default=DEFAULT_R0)
    a = serializers.FloatField(default=DEFAULT_A)
    b = serializers.FloatField(default=DEFAULT_B, min_value=0.0)
    t_end = serializers.FloatField(default=20.0, min_value=0.0)
    dt_sample = serializers.FloatField(default=0.1)
    n = serializers.IntegerField(default=64, min_value=MIN_CELLS)
    extent = serializers.FloatField(required=False)
    samples = serializers.IntegerField(required=False, min_value=2)
    zmax = serializers.FloatField(default=1.0)
    r_max = serializers.FloatField(required=False)
    vary = serializers.ChoiceField(choices=VariedRate.choices, default=VariedRate.A)
    values = serializers.CharField(default=DEFAULT_FAMILY_VALUES)
    input = serializers.CharField(required=False)
    out = serializers.CharField(required=False)
    snapshot = serializers.CharField(required=False)
    slice = serializers.CharField(required=False)

    def validate_values(self, value: str) -> tuple[float, ...]:
        items = [item.strip() for item in value.split(",") if item.strip()]
        if not items:
            raise serializers.ValidationError(messages.EMPTY_VALUES_ERROR_MESSAGE)
        try:
            parsed = tuple(float(item) for item in items)
        except ValueError:
            raise serializers.ValidationError(messages.INVALID_VALUES_ERROR_MESSAGE.format(values=value))
        if not all(math.isfinite(item) for item in parsed):
            raise serializers.ValidationError(messages.NON_FINITE_OPTION_ERROR_MESSAGE)
        return parsed

    def validate(self, attrs: dict) -> dict:
        errors = {}
        for name in ("r0", "a", "b", "t_end", "dt_sample", "extent", "zmax", "r_max"):
            if name in attrs and not math.isfinite(attrs[name]):
                errors[name] = messages.NON_FINITE_OPTION_ERROR_MESSAGE
        if attrs["r0"] <= 0.0:
            errors["r0"] = messages.NON_POSITIVE_R0_ERROR_MESSAGE
        if attrs["dt_sample"] <= 0.0:
            errors["dt_sample"] = messages.NON_POSITIVE_DT_SAMPLE_ERROR_MESSAGE
        if attrs.get("extent", 1.0) <= 0.0:
            errors["extent"] = messages.NON_POSITIVE_EXTENT_ERROR_MESSAGE
        if attrs.get("r_max", 1.0) <= 0.0:
            errors["r_max"] = messages.NON_POSITIVE_R_MAX_ERROR_MESSAGE

        command = attrs["cmd"]
        if command == RunCommand.INVERT and not attrs.get("input"):
            errors["input"] = messages.MISSING_INPUT_ERROR_MESSAGE
        if command == RunCommand.PHASE and attrs.get("samples", settings.FLOW_PHASE_SAMPLES) % 2:
            errors["samples"] = messages.ODD_SAMPLES_ERROR_MESSAGE
        if command == RunCommand.CONVERGENCE and attrs["t_end"] <= 0.0:
            errors["t_end"] = messages.POSITIVE_T_END_ERROR_MESSAGE
        if command == RunCommand.LAMBERT and attrs["zmax"] <= BRANCH_POINT:
            errors["zmax"] = messages.ZMAX_BELOW_BRANCH_POINT_ERROR_MESSAGE

        if errors:
            raise serializers.ValidationError(errors)
        return attrs

    def to_config(self) -> RunConfig:
        data = self.validated_data
        return RunConfig(
            command=RunCommand(data["cmd"]),
            r0=data["r0"],
            a=data["a"],
            b=data["b"],
            t_end=data["t_end"],
            dt_sample=data["dt_sample"],
            n=data["n"],
            extent=data.get("extent", DEFAULT_EXTENT_FACTOR * data["r0"]),
            samples=data.get("samples", settings.FLOW_PHASE_SAMPLES),
            zmax=data["zmax"],
            vary=VariedRate(data["vary"]),
            values=data["values"],
            r_max=data.get("r_max"),
            input_path=data.get("input"),
            output_path=data.get("out"),
            snapshot_path=data.get("snapshot"),
            slice_path=data.get("slice"),
        )
