# Settings for registering Django applications and their configurations.

INSTALLED_APPS = [
    "core.apps.CoreConfig",
    "lambert_w.apps.LambertWConfig",
    "analytic_flow.apps.AnalyticFlowConfig",
    "levelset_solver.apps.LevelsetSolverConfig",
    "inverse_solver.apps.InverseSolverConfig",
    "flow_cli.apps.FlowCliConfig",
    "django.contrib.auth",
    "django.contrib.contenttypes",
    "django.contrib.staticfiles",
    "rest_framework",
    "drf_spectacular",
    "drf_spectacular_sidecar",
]
