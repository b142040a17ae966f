"""
Django settings for core project.

Generated by 'django-admin startproject' using Django 5.2.1.

For more information on this file, see
https://docs.djangoproject.com/en/5.2/topics/settings/

For the full list of settings and their values, see
https://docs.djangoproject.com/en/5.2/ref/settings/
"""
from decouple import config
from pathlib import Path

# Build paths inside the project like this: BASE_DIR / 'subdir'.
BASE_DIR = Path(__file__).resolve().parent.parent


# SECURITY WARNING: keep the secret key used in production secret!
SECRET_KEY = config('SECRET_KEY', default='django-insecure-rede-su3-apenas-para-calculo-local')

DEBUG = config('DEBUG', default=False, cast=bool)

ALLOWED_HOSTS = []


# Application definition

INSTALLED_APPS = [
    'django.contrib.contenttypes',

    'su3_irreps.apps.Su3IrrepsConfig',
    'su3_clebsch.apps.Su3ClebschConfig',
    'gauge_basis.apps.GaugeBasisConfig',
    'hamiltonian.apps.HamiltonianConfig',
    'evolution.apps.EvolutionConfig',
    'local_plaquette.apps.LocalPlaquetteConfig',
    'qubit_compile.apps.QubitCompileConfig',
    'counting.apps.CountingConfig',
    'su2_reference.apps.Su2ReferenceConfig',
    'cli.apps.CliConfig',

    'rest_framework',
]

MIDDLEWARE = []


# Nenhum módulo usa base de dados; o backend em memória satisfaz o test runner

DATABASES = {
    'default': {
        'ENGINE': 'django.db.backends.sqlite3',
        'NAME': ':memory:',
    }
}


# Internationalization
# https://docs.djangoproject.com/en/5.2/topics/i18n/

LANGUAGE_CODE = 'pt-pt'
TIME_ZONE = 'Africa/Bissau'

USE_I18N = True

USE_TZ = True

DEFAULT_AUTO_FIELD = 'django.db.models.BigAutoField'


REST_FRAMEWORK = {
    'DEFAULT_AUTHENTICATION_CLASSES': (),
    'DEFAULT_PERMISSION_CLASSES': (),
    'UNAUTHENTICATED_USER': None,
}


# Parâmetros numéricos da rede

LATTICE = {
    'THREADS': config('LGT_THREADS', default=0, cast=int),
    'ZERO_TOL': config('LGT_ZERO_TOL', default=1e-12, cast=float),
    'RANK_TOL': config('LGT_RANK_TOL', default=1e-10, cast=float),
    'EXACT_DENSE_MAX': config('LGT_EXACT_DENSE_MAX', default=5000, cast=int),
    'LOG_LEVEL': config('LGT_LOG_LEVEL', default='INFO'),
    'SLOW_TESTS': config('LGT_SLOW_TESTS', default=False, cast=bool),
}


LOGGING = {
    'version': 1,
    'disable_existing_loggers': False,
    'formatters': {
        'verbose': {
            'format': '{asctime} {levelname} {name}: {message}',
            'style': '{',
        },
    },
    'handlers': {
        'console': {
            'class': 'logging.StreamHandler',
            'formatter': 'verbose',
        },
    },
    'root': {
        'handlers': ['console'],
        'level': LATTICE['LOG_LEVEL'],
    },
}
