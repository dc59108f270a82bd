from django.urls import path

from core.views.check_system import CheckSystem


urlpatterns = [
    path("check-system/", CheckSystem.as_view(), name="check_system"),
]
