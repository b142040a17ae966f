# core/parallel.py
"""
Número de trabalhadores para enumerações, varrimentos e contagens

Autor: Sistema Rede SU(3)
Data: 2025
"""

import os

from django.conf import settings


def worker_count():
    threads = settings.LATTICE['THREADS']
    if threads and threads > 0:
        return threads
    return os.cpu_count() or 1
