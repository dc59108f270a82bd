from django.urls import path

from inverse_solver import views


urlpatterns = [
    path("fit/", views.FitView.as_view(), name="inverse_fit"),
    path("identifiability/", views.IdentifiabilityView.as_view(), name="inverse_identifiability"),
]
