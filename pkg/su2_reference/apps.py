from django.apps import AppConfig


class Su2ReferenceConfig(AppConfig):
    default_auto_field = 'django.db.models.BigAutoField'
    name = 'su2_reference'
    verbose_name = 'Plaquete de referência SU(2)'
