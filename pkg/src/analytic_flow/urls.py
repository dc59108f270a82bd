from django.urls import path

from analytic_flow import views


urlpatterns = [
    path("summary/", views.FlowSummaryView.as_view(), name="flow_summary"),
    path("trajectory/", views.TrajectoryView.as_view(), name="flow_trajectory"),
]
