from drf_spectacular.utils import (
    OpenApiParameter,
    extend_schema,
)
from rest_framework.request import Request
from rest_framework.response import Response
from rest_framework.views import APIView

from lambert_w.branches import LambertBranch
from lambert_w.functions import lambert_w
from lambert_w.serializers import (
    LambertQuerySerializer,
    LambertValueSerializer,
)


class LambertWView(APIView):
    """
    Evaluates the real Lambert W function on one branch.
    """

    @extend_schema(
        parameters=[
            OpenApiParameter("branch", int, enum=LambertBranch.values, description="0 or -1"),
            OpenApiParameter("z", float, required=True),
        ],
        responses=LambertValueSerializer,
    )
    def get(self, request: Request) -> Response:
        query = LambertQuerySerializer(data=request.query_params)
        query.is_valid(raise_exception=True)

        branch = LambertBranch(int(query.validated_data["branch"]))
        z = query.validated_data["z"]
        w = lambert_w(branch, z)

        return Response(LambertValueSerializer({"branch": branch.value, "z": z, "w": w}).data)
