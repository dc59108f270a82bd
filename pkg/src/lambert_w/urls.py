from django.urls import path

from lambert_w import views


urlpatterns = [
    path("", views.LambertWView.as_view(), name="lambert_w"),
]
