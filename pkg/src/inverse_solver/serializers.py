import math
from typing import Optional

from django.conf import settings
from django.utils.translation import gettext_lazy as _
from rest_framework import serializers

from analytic_flow.serializers import SphereFlowSerializer
from inverse_solver.results import (
    FitResult,
    IdentifiabilityReport,
)


def _finite_or_none(value: float) -> Optional[float]:
    return value if math.isfinite(value) else None


class FitRequestSerializer(serializers.Serializer):
    samples = serializers.ListField(
        child=serializers.ListField(child=serializers.FloatField(), min_length=2, max_length=2),
        help_text=_("Observed [t, r] pairs with strictly increasing t"),
    )

    def validate_samples(self, value: list) -> list:
        if len(value) > settings.FLOW_API_MAX_SAMPLES:
            raise serializers.ValidationError(
                _("At most %(limit)s samples per request.") % {"limit": settings.FLOW_API_MAX_SAMPLES}
            )
        return value


class FitResultSerializer(serializers.Serializer):
    a = serializers.FloatField(source="params.a")
    b = serializers.FloatField(source="params.b")
    residual = serializers.SerializerMethodField(help_text=_("null when the closed form could not be evaluated"))
    condition = serializers.SerializerMethodField(help_text=_("null for degenerate data"))
    dominant_term_warning = serializers.BooleanField()
    iterations = serializers.IntegerField()
    converged = serializers.BooleanField()

    def get_residual(self, result: FitResult) -> Optional[float]:
        return _finite_or_none(result.residual)

    def get_condition(self, result: FitResult) -> Optional[float]:
        return _finite_or_none(result.condition)


class FitResponseSerializer(serializers.Serializer):
    linear = FitResultSerializer()
    nonlinear = FitResultSerializer(allow_null=True, help_text=_("null when the data is degenerate"))
    degenerate = serializers.BooleanField()


class IdentifiabilityRequestSerializer(SphereFlowSerializer):
    t_end = serializers.FloatField(label=_("Horizon"))

    def validate_t_end(self, value: float) -> float:
        if value <= 0.0:
            raise serializers.ValidationError(_("The horizon must be > 0."))
        return value


class IdentifiabilityReportSerializer(serializers.Serializer):
    sensitivity_a = serializers.FloatField()
    sensitivity_b = serializers.FloatField()
    ratio = serializers.SerializerMethodField(help_text=_("null when one sensitivity is 0"))
    non_dominant_risk = serializers.BooleanField()
    dominant_term = serializers.CharField(allow_null=True)

    def get_ratio(self, report: IdentifiabilityReport) -> Optional[float]:
        return _finite_or_none(report.ratio)
