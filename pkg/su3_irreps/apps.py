from django.apps import AppConfig


class Su3IrrepsConfig(AppConfig):
    default_auto_field = 'django.db.models.BigAutoField'
    name = 'su3_irreps'
    verbose_name = 'Representações irredutíveis de SU(3)'
