from django.utils.translation import gettext_lazy as _
from rest_framework import serializers

from lambert_w.branches import LambertBranch


class LambertQuerySerializer(serializers.Serializer):
    branch = serializers.ChoiceField(
        choices=LambertBranch.choices,
        default=LambertBranch.PRINCIPAL,
        label=_("Branch index k"),
    )
    z = serializers.FloatField(label=_("Argument z"))


class LambertValueSerializer(LambertQuerySerializer):
    w = serializers.FloatField(label=_("W_k(z)"))
