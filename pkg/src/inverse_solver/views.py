from drf_spectacular.utils import extend_schema
from rest_framework.request import Request
from rest_framework.response import Response
from rest_framework.views import APIView

from analytic_flow.domain import RadiusTrajectory
from inverse_solver.exceptions import (
    DegenerateData,
    NoConvergence,
)
from inverse_solver.identifiability import identifiability_report
from inverse_solver.linear import fit_linear
from inverse_solver.nonlinear import fit_nonlinear
from inverse_solver.serializers import (
    FitRequestSerializer,
    FitResponseSerializer,
    IdentifiabilityReportSerializer,
    IdentifiabilityRequestSerializer,
)


class FitView(APIView):
    """
    Recovers (a, b) from an observed radius trajectory: the linear fit, then the nonlinear refinement seeded by it.

    Degenerate data returns the flagged minimum-norm linear fit only; a refinement that runs out of iterations
    returns its best estimate with `converged` false.
    """

    @extend_schema(request=FitRequestSerializer, responses=FitResponseSerializer)
    def post(self, request: Request) -> Response:
        serializer = FitRequestSerializer(data=request.data)
        serializer.is_valid(raise_exception=True)
        trajectory = RadiusTrajectory.from_samples(serializer.validated_data["samples"])

        try:
            linear = fit_linear(trajectory)
        except DegenerateData as error:
            return Response(FitResponseSerializer({"linear": error.result, "nonlinear": None, "degenerate": True}).data)

        try:
            nonlinear = fit_nonlinear(trajectory, linear.params)
        except NoConvergence as error:
            nonlinear = error.result

        return Response(FitResponseSerializer({"linear": linear, "nonlinear": nonlinear, "degenerate": False}).data)


class IdentifiabilityView(APIView):
    """
    Reports how strongly each rate shapes the closed-form trajectory up to `t_end`.
    """

    @extend_schema(request=IdentifiabilityRequestSerializer, responses=IdentifiabilityReportSerializer)
    def post(self, request: Request) -> Response:
        serializer = IdentifiabilityRequestSerializer(data=request.data)
        serializer.is_valid(raise_exception=True)
        report = identifiability_report(
            serializer.to_params(), serializer.validated_data["r0"], serializer.validated_data["t_end"]
        )
        return Response(IdentifiabilityReportSerializer(report).data)
