from django.apps import AppConfig


class Su3ClebschConfig(AppConfig):
    default_auto_field = 'django.db.models.BigAutoField'
    name = 'su3_clebsch'
    verbose_name = 'Coeficientes de Clebsch-Gordan de SU(3)'
