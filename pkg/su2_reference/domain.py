# su2_reference/domain.py
"""
Modelo de um plaquete SU(2) na base de Casimir

H_{j,j'} = (g²/2) j(j+1) δ + (1/g²)(2δ − δ_{j+1,j'} − δ_{j−1,j'}),
com j = 0..j_max inteiro.

Autor: Sistema Rede SU(3)
Data: 2025
"""

from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class SU2PlaquetteModel:
    j_max: int
    g: float = 1.0

    def __post_init__(self):
        if self.j_max < 1:
            raise ValueError('O corte j_max deve ser pelo menos 1')
        if not self.g > 0:
            raise ValueError('O acoplamento g deve ser positivo')

    @property
    def dimension(self):
        return self.j_max + 1

    def js(self):
        return np.arange(self.dimension)

    def diagonal(self):
        j = self.js()
        return self.g ** 2 * j * (j + 1) / 2 + 2 / self.g ** 2

    def off_diagonal(self):
        return np.full(self.j_max, -1 / self.g ** 2)

    def predicted_slope(self):
        """Declive −g²/(2√2) de log ψ₀ contra (j+½)² no limite contínuo"""
        return -self.g ** 2 / (2 * np.sqrt(2))
