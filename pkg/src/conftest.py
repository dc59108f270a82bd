# Configures Django before pytest imports the apps' test modules.

import os

import django


os.environ.setdefault("DJANGO_SETTINGS_MODULE", "settings")
django.setup()
