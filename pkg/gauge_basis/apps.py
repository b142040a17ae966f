from django.apps import AppConfig


class GaugeBasisConfig(AppConfig):
    default_auto_field = 'django.db.models.BigAutoField'
    name = 'gauge_basis'
    verbose_name = 'Bases invariantes de gauge'
