# gauge_basis/domain.py
"""
Configurações de ligações, estados globais e bases de rede

Autor: Sistema Rede SU(3)
Data: 2025
"""

from dataclasses import dataclass, field
from fractions import Fraction
from functools import total_ordering

import numpy as np


@total_ordering
@dataclass(frozen=True)
class LinkConfig:
    """
    Atribuição de uma irrep a cada ligação, na ordem da geometria
    """

    irreps: tuple

    @property
    def casimir(self):
        return sum((r.casimir for r in self.irreps), Fraction(0))

    @property
    def sort_key(self):
        return tuple(r.sort_key for r in self.irreps)

    def conjugate(self):
        return LinkConfig(tuple(r.conjugate() for r in self.irreps))

    def is_vacuum(self):
        return all(r.p == 0 and r.q == 0 for r in self.irreps)

    def replace(self, changes):
        irreps = list(self.irreps)
        for i, r in changes.items():
            irreps[i] = r
        return LinkConfig(tuple(irreps))

    def label(self):
        return '(' + ','.join(r.label() for r in self.irreps) + ')'

    def __lt__(self, other):
        if not isinstance(other, LinkConfig):
            return NotImplemented
        return self.sort_key < other.sort_key

    def __len__(self):
        return len(self.irreps)

    def __getitem__(self, i):
        return self.irreps[i]

    def __str__(self):
        return self.label()


@dataclass(frozen=True, eq=False)
class GlobalState:
    """
    Combinação de configurações com números quânticos de simetria

    components guarda pares (LinkConfig, amplitude real) na ordem das
    configurações; quantum_numbers mapeia o nome da simetria no sinal.
    """

    components: tuple
    quantum_numbers: dict = field(default_factory=dict)

    @property
    def casimir(self):
        return self.components[0][0].casimir

    def leading_config(self):
        return min(c for c, _ in self.components)

    def norm(self):
        return float(np.sqrt(sum(a * a for _, a in self.components)))

    def label(self):
        return ' '.join(f'{a:+.6f}{c.label()}' for c, a in self.components)


@dataclass(frozen=True, eq=False)
class LatticeBasis:
    """
    Base sobre a qual os operadores são montados

    Sem estados globais, cada configuração é um elemento da base; com
    estados globais, as colunas de vectors() dão as amplitudes de cada
    estado nas configurações.
    """

    geometry: object
    configs: tuple
    states: tuple = None
    truncation: object = None

    @property
    def is_global(self):
        return self.states is not None

    @property
    def dimension(self):
        return len(self.states) if self.is_global else len(self.configs)

    def index(self):
        return {c: i for i, c in enumerate(self.configs)}

    def vectors(self):
        """Matriz (configurações × estados) das amplitudes"""
        if not self.is_global:
            return np.eye(len(self.configs))
        position = self.index()
        v = np.zeros((len(self.configs), len(self.states)))
        for k, state in enumerate(self.states):
            for config, amplitude in state.components:
                v[position[config], k] = amplitude
        return v

    def elements(self):
        return self.states if self.is_global else self.configs

    def labels(self):
        return [e.label() for e in self.elements()]

    def casimirs(self):
        return [e.casimir for e in self.elements()]
