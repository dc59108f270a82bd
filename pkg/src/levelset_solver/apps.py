from django.apps import AppConfig
from django.utils.translation import gettext_lazy as _


class LevelsetSolverConfig(AppConfig):
    name = "levelset_solver"
    verbose_name = _("Level-set solver for spheres under advection and mean curvature flow")
