from typing import Optional

from drf_spectacular.utils import extend_schema
from rest_framework.request import Request
from rest_framework.response import Response
from rest_framework.views import APIView

from analytic_flow.closed_form import (
    classify_regime,
    evolve_trajectory,
    meta_stable_radius,
    prescribed_curvature,
    vanishing_time,
)
from analytic_flow.domain import FlowParams
from analytic_flow.sampling import sample_times
from analytic_flow.serializers import (
    FlowSummarySerializer,
    SphereFlowSerializer,
    TrajectoryRequestSerializer,
    TrajectorySerializer,
)


class FlowSummaryView(APIView):
    """
    Returns the regime, vanishing time, prescribed curvature and meta-stable radius of one sphere.
    """

    @extend_schema(request=SphereFlowSerializer, responses=FlowSummarySerializer)
    def post(self, request: Request) -> Response:
        serializer = SphereFlowSerializer(data=request.data)
        serializer.is_valid(raise_exception=True)
        params = serializer.to_params()
        r0 = serializer.validated_data["r0"]

        vanish: Optional[float] = None if params.is_static else vanishing_time(params, r0).time
        summary = {
            "regime": classify_regime(params, r0),
            "vanishing_time": vanish,
            "prescribed_curvature": prescribed_curvature(params) if params.b > 0.0 else None,
            "meta_stable_radius": meta_stable_radius(params),
        }
        return Response(FlowSummarySerializer(summary).data)


class TrajectoryView(APIView):
    """
    Samples the closed-form radius every `dt_sample` up to `t_end`; samples past the vanishing time are 0.
    """

    @extend_schema(request=TrajectoryRequestSerializer, responses=TrajectorySerializer)
    def post(self, request: Request) -> Response:
        serializer = TrajectoryRequestSerializer(data=request.data)
        serializer.is_valid(raise_exception=True)
        data = serializer.validated_data

        params = FlowParams(a=data["a"], b=data["b"])
        trajectory = evolve_trajectory(params, data["r0"], sample_times(data["t_end"], data["dt_sample"]))

        samples = [list(sample) for sample in trajectory.samples]
        return Response(TrajectorySerializer({"samples": samples, "vanishing_time": trajectory.vanishing_time}).data)
