from django.apps import AppConfig


class FraclapConfig(AppConfig):
    default_auto_field = "django.db.models.BigAutoField"
    name = "fraclap"
    verbose_name = "Fractional Laplacian engine"
