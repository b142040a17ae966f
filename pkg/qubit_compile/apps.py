from django.apps import AppConfig


class QubitCompileConfig(AppConfig):
    default_auto_field = 'django.db.models.BigAutoField'
    name = 'qubit_compile'
    verbose_name = 'Compilação para qubits'
