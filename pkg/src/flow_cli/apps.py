from django.apps import AppConfig
from django.utils.translation import gettext_lazy as _


class FlowCliConfig(AppConfig):
    name = "flow_cli"
    verbose_name = _("Command-line front end emitting the flow data as CSV")
