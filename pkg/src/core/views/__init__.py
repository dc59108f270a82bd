from core.views.check_system import *
