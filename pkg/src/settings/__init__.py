from settings.apps import *
from settings.common import *
from settings.database import *
from settings.drf import *
from settings.flow import *
from settings.i18n import *
from settings.logging import *
from settings.middleware import *
from settings.static import *
from settings.templates import *
