from django.conf import settings
from django.utils.translation import gettext_lazy as _
from rest_framework import serializers

from analytic_flow.domain import (
    FlowParams,
    FlowRegime,
)


class FlowParamsSerializer(serializers.Serializer):
    a = serializers.FloatField(label=_("Advection rate a"))
    b = serializers.FloatField(min_value=0.0, label=_("Curvature rate b"))

    def to_params(self) -> FlowParams:
        return FlowParams(a=self.validated_data["a"], b=self.validated_data["b"])


class SphereFlowSerializer(FlowParamsSerializer):
    r0 = serializers.FloatField(label=_("Initial radius r0"))

    def validate_r0(self, value: float) -> float:
        if value <= 0.0:
            raise serializers.ValidationError(_("The initial radius must be > 0."))
        return value


class TrajectoryRequestSerializer(SphereFlowSerializer):
    t_end = serializers.FloatField(min_value=0.0, label=_("End time"))
    dt_sample = serializers.FloatField(label=_("Sampling interval"))

    def validate(self, attrs: dict) -> dict:
        if attrs["dt_sample"] <= 0.0:
            raise serializers.ValidationError({"dt_sample": _("The sampling interval must be > 0.")})
        if attrs["t_end"] / attrs["dt_sample"] > settings.FLOW_API_MAX_SAMPLES:
            raise serializers.ValidationError(
                _("At most %(limit)s samples per request.") % {"limit": settings.FLOW_API_MAX_SAMPLES}
            )
        return attrs


class FlowSummarySerializer(serializers.Serializer):
    regime = serializers.ChoiceField(choices=FlowRegime.choices)
    vanishing_time = serializers.FloatField(allow_null=True, help_text=_("null when the sphere never vanishes"))
    prescribed_curvature = serializers.FloatField(allow_null=True, help_text=_("null when b = 0"))
    meta_stable_radius = serializers.FloatField(allow_null=True, help_text=_("null unless a > 0 and b > 0"))


class TrajectorySerializer(serializers.Serializer):
    samples = serializers.ListField(child=serializers.ListField(child=serializers.FloatField(), min_length=2))
    vanishing_time = serializers.FloatField(allow_null=True)
