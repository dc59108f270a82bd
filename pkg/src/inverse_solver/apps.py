from django.apps import AppConfig
from django.utils.translation import gettext_lazy as _


class InverseSolverConfig(AppConfig):
    name = "inverse_solver"
    verbose_name = _("Recovery of flow rates from observed radius trajectories")
