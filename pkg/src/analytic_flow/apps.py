from django.apps import AppConfig
from django.utils.translation import gettext_lazy as _


class AnalyticFlowConfig(AppConfig):
    name = "analytic_flow"
    verbose_name = _("Closed-form sphere evolution under advection and mean curvature flow")
