"""
WSGI config of the flow toolkit's HTTP API.

It exposes the WSGI callable as a module-level variable named ``application``.
"""

import logging
import os

from django.core.wsgi import get_wsgi_application


os.environ.setdefault("DJANGO_SETTINGS_MODULE", "settings")

# Django applies settings.LOGGING while building the application
application = get_wsgi_application()
logger = logging.getLogger(__name__)
logger.info("The flow API on the WSGI server has been successfully launched")
