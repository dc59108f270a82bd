from django.apps import AppConfig
from django.utils.translation import gettext_lazy as _


class LambertWConfig(AppConfig):
    name = "lambert_w"
    verbose_name = _("Real branches of the Lambert W function")
