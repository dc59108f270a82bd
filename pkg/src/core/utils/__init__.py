from core.utils.check_system import *
