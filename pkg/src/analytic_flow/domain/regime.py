from django.db.models import TextChoices
from django.utils.translation import gettext_lazy as _


class FlowRegime(TextChoices):
    SHRINK_TO_ZERO = "shrink_to_zero", _("Shrink to zero")
    META_STABLE = "meta_stable", _("Meta-stable")
    GROW_UNBOUNDED = "grow_unbounded", _("Grow unbounded")
