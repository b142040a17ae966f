from django.apps import AppConfig


class LocalPlaquetteConfig(AppConfig):
    default_auto_field = 'django.db.models.BigAutoField'
    name = 'local_plaquette'
    verbose_name = 'Plaquete na base local de qutrits'
