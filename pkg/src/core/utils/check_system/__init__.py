from core.utils.check_system.check_method_decorator import *
