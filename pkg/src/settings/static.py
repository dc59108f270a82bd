# Static files; the toolkit serves none of its own, only the Swagger UI and Redoc bundles of drf-spectacular-sidecar.

STATIC_URL = "static/"
