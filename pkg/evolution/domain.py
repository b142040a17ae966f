# evolution/domain.py
"""
Estados, trajetórias e esquemas de Trotter

Autor: Sistema Rede SU(3)
Data: 2025
"""

import csv
import logging
from dataclasses import dataclass, field, replace
from functools import cached_property

import numpy as np

from core.exceptions import ToleranceError, check_tolerance

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class StateVector:
    """
    Amplitudes complexas sobre os elementos de uma base
    """

    amplitudes: np.ndarray
    labels: tuple = ()

    def __post_init__(self):
        amplitudes = np.asarray(self.amplitudes, dtype=complex).reshape(-1)
        object.__setattr__(self, 'amplitudes', amplitudes)
        if self.labels and len(self.labels) != amplitudes.size:
            raise ValueError('Número de rótulos diferente do número de amplitudes')
        check_tolerance(abs(self.norm() - 1.0), 1e-12, 'norma do estado')

    @classmethod
    def basis(cls, dimension, index=0, labels=()):
        psi = np.zeros(dimension, dtype=complex)
        psi[index] = 1.0
        return cls(psi, tuple(labels))

    @classmethod
    def vacuum(cls, operator):
        """Vácuo elétrico: o elemento de menor energia elétrica"""
        index = int(np.argmin([float(e) for e in operator.electric_diag]))
        return cls.basis(operator.dimension, index, operator.labels)

    @property
    def dimension(self):
        return self.amplitudes.size

    def norm(self):
        return float(np.linalg.norm(self.amplitudes))

    def probabilities(self):
        return np.abs(self.amplitudes) ** 2


@dataclass(frozen=True, eq=False)
class Trajectory:
    """
    Observáveis ao longo do tempo

    persistence é |⟨ψ₀|ψ(t)⟩|², electric_energy é ⟨H_E⟩ e leakage, quando
    existe, a norma² fora do subespaço físico.
    """

    times: np.ndarray
    persistence: np.ndarray
    electric_energy: np.ndarray
    leakage: np.ndarray = None
    label: str = ''

    def __post_init__(self):
        for name in ('times', 'persistence', 'electric_energy', 'leakage'):
            value = getattr(self, name)
            if value is not None:
                object.__setattr__(self, name, np.asarray(value, dtype=float))
        n = self.times.size
        if self.persistence.size != n or self.electric_energy.size != n:
            raise ValueError('Observáveis com tamanhos diferentes da grelha de tempos')
        if self.leakage is not None and self.leakage.size != n:
            raise ValueError('Fuga de gauge com tamanho diferente da grelha de tempos')
        if n:
            excess = max(-self.persistence.min(), self.persistence.max() - 1.0, 0.0)
            check_tolerance(excess, 1e-10, 'probabilidade de persistência')

    def __len__(self):
        return self.times.size

    def max_leakage(self):
        return 0.0 if self.leakage is None else float(self.leakage.max(initial=0.0))

    def rows(self):
        leakage = self.leakage if self.leakage is not None else [None] * len(self)
        return zip(self.times, self.persistence, self.electric_energy, leakage)

    def to_csv(self, path):
        with open(path, 'w', newline='', encoding='utf-8') as fh:
            fh.write('# schema=1\n')
            writer = csv.writer(fh)
            writer.writerow(['t', 'persistence', 'electric_energy', 'leakage'])
            for t, p, e, leak in self.rows():
                writer.writerow([
                    f'{t:.10g}', f'{p:.12g}', f'{e:.12g}', '' if leak is None else f'{leak:.3e}',
                ])
        logger.info(f'Trajetória com {len(self)} tempos exportada para {path}')


@dataclass(frozen=True)
class Extrema:
    """
    Primeiro mínimo e primeiro máximo interiores; None quando ausentes
    """

    t_min: float = None
    e_min: float = None
    t_max: float = None
    e_max: float = None

    @property
    def has_min(self):
        return self.t_min is not None

    @property
    def has_max(self):
        return self.t_max is not None


@dataclass(frozen=True, eq=False)
class TrotterScheme:
    """
    Decomposição H = Σ_k H_k para a evolução por produtos de exponenciais

    Ordem 1: e^{−iΔtH_1} primeiro, e^{−iΔtH_N} por último.
    Ordem 2: meias etapas de H_1…H_{N−1}, H_N completo e as meias etapas
    pela ordem inversa.
    """

    name: str
    terms: tuple
    hamiltonian: np.ndarray
    electric: np.ndarray
    order: int = 1
    dt: float = None
    labels: tuple = ()
    _cache: dict = field(default_factory=dict, repr=False)

    def __post_init__(self):
        if self.order not in (1, 2):
            raise ValueError(f'Ordem de Trotter não suportada: {self.order}')
        if not self.terms:
            raise ValueError('O esquema precisa de pelo menos um termo')
        total = sum(m for _, m in self.terms)
        deviation = float(np.abs(total - self.hamiltonian).max())
        if deviation > 1e-12 * max(1.0, float(np.abs(self.hamiltonian).max())):
            raise ToleranceError(f'Termos do esquema {self.name} não somam H', deviation, 1e-12)

    @property
    def dimension(self):
        return self.hamiltonian.shape[0]

    @cached_property
    def _spectra(self):
        return [np.linalg.eigh(m) for _, m in self.terms]

    def _exponential(self, k, dt):
        w, v = self._spectra[k]
        return (v * np.exp(-1j * dt * w)) @ v.conj().T

    def sequence(self):
        """Pares (índice do termo, fração de dt) pela ordem de aplicação"""
        n = len(self.terms)
        if self.order == 1 or n == 1:
            return [(k, 1.0) for k in range(n)]
        half = [(k, 0.5) for k in range(n - 1)]
        return half + [(n - 1, 1.0)] + half[::-1]

    def step_unitary(self, dt=None):
        """
        Unitário de uma etapa

        Raises:
            ValueError: sem passo definido
        """
        dt = self.dt if dt is None else dt
        if dt is None:
            raise ValueError(f'O esquema {self.name} não tem passo de tempo')
        key = float(dt)
        if key not in self._cache:
            u = np.eye(self.dimension, dtype=complex)
            for k, fraction in self.sequence():
                u = self._exponential(k, fraction * dt) @ u
            check_tolerance(
                float(np.abs(u.conj().T @ u - np.eye(self.dimension)).max()), 1e-12,
                f'unitariedade da etapa de {self.name}',
            )
            if len(self._cache) > 64:
                self._cache.clear()
            self._cache[key] = u
        return self._cache[key]

    def with_dt(self, dt):
        return replace(self, dt=dt, _cache={})
