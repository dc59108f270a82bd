from django.db.models import IntegerChoices
from django.utils.translation import gettext_lazy as _


class LambertBranch(IntegerChoices):
    """
    The two real branches of the Lambert W function, valued by their branch index k.

    The principal branch returns w >= -1 for z >= -1/e, the secondary branch returns w <= -1 for -1/e <= z < 0.
    """

    PRINCIPAL = 0, _("Principal")
    SECONDARY = -1, _("Secondary")
