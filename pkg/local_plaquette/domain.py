# local_plaquette/domain.py
"""
Registos de qudits, setores de controlo e geradores de setor

Cada ligação é um qudit cujos níveis são as irreps do truncamento por
ordem de Casimir; para {1,3,3bar} os níveis 0, 1 e 2 são 1, 3 e 3bar.
As quatro ligações ativas seguem a ordem (Rb, Qr, Rt, Qℓ) e os
controlos a ordem (C1, C2, C3, C4).

Autor: Sistema Rede SU(3)
Data: 2025
"""

import enum
import logging
from dataclasses import dataclass, field
from functools import cached_property, reduce

import numpy as np

from core.exceptions import check_tolerance
from qubit_compile.circuits import basis_state

logger = logging.getLogger(__name__)


class Completion(str, enum.Enum):
    """
    Completamento fora do subespaço físico

    - XSTRING: cada termo é um produto de 𝒳_jk, um por ligação ativa
    - TWO_LEVEL: cada termo liga só os dois estados físicos
    """

    XSTRING = 'xstring'
    TWO_LEVEL = 'two_level'


# Mapas de paridade e conjugação como (origem, conjugar) por posição
CONTROL_MAPS = {
    'C': ((0, True), (1, True), (2, True), (3, True)),
    'H': ((2, True), (3, True), (0, True), (1, True)),
    'V': ((1, False), (0, False), (3, False), (2, False)),
}
ACTIVE_MAPS = {
    'C': ((0, True), (1, True), (2, True), (3, True)),
    'H': ((0, True), (3, False), (2, True), (1, False)),
    'V': ((2, False), (1, True), (0, False), (3, True)),
}
TRANSFORM_WORDS = ('', 'C', 'H', 'V', 'HC', 'VC', 'HV', 'HVC')


def _remap(values, mapping, conj):
    return tuple(conj(values[src]) if flip else values[src] for src, flip in mapping)


@dataclass(frozen=True, eq=False)
class QuditRegister:
    """
    Vetor de estado sobre sítios (ligação, dimensão local)

    O sítio 0 é o mais significativo no vetor achatado.
    """

    sites: tuple
    amplitudes: np.ndarray

    def __post_init__(self):
        sites = tuple((int(link), int(d)) for link, d in self.sites)
        object.__setattr__(self, 'sites', sites)
        amplitudes = np.asarray(self.amplitudes, dtype=complex).reshape(-1)
        if amplitudes.size != int(np.prod(self.dims)):
            raise ValueError(
                f'{amplitudes.size} amplitudes para um registo de dimensão {int(np.prod(self.dims))}'
            )
        object.__setattr__(self, 'amplitudes', amplitudes)
        check_tolerance(abs(np.linalg.norm(amplitudes) - 1.0), 1e-12, 'norma do registo')

    @classmethod
    def basis(cls, sites, levels):
        sites = tuple(sites)
        return cls(sites, basis_state(tuple(d for _, d in sites), levels))

    @classmethod
    def for_links(cls, n_links, d, levels=None):
        """Registo de n_links qudits, por omissão no vácuo |0…0⟩"""
        levels = (0,) * n_links if levels is None else levels
        return cls.basis(tuple((i, d) for i in range(n_links)), levels)

    @property
    def dims(self):
        return tuple(d for _, d in self.sites)

    def position(self, link):
        for i, (site_link, _) in enumerate(self.sites):
            if site_link == link:
                return i
        raise ValueError(f'A ligação {link} não pertence ao registo')

    def tensor(self):
        return self.amplitudes.reshape(self.dims)

    def with_amplitudes(self, amplitudes):
        return QuditRegister(self.sites, amplitudes)

    def probabilities(self):
        return np.abs(self.amplitudes) ** 2


@dataclass(frozen=True)
class ControlSector:
    """
    Irreps das quatro ligações de controlo

    orbit é o rótulo do setor base de onde este se obtém aplicando
    transform (palavra em C, H, V).
    """

    irreps: tuple
    orbit: str = field(default='', compare=False)
    transform: str = field(default='', compare=False)

    def label(self):
        return ','.join(r.label() for r in self.irreps)

    def transformed(self, word):
        irreps = self.irreps
        for letter in word:
            irreps = _remap(irreps, CONTROL_MAPS[letter], lambda r: r.conjugate())
        return ControlSector(irreps)

    def __str__(self):
        return self.label()


@dataclass(frozen=True)
class SectorTerm:
    """
    Termo c·O de um gerador

    modes guarda um par de níveis por ligação ativa. Na forma XSTRING o
    par (j,k) é 𝒳_jk = |j⟩⟨k| + |k⟩⟨j| e (j,j) o projetor |j⟩⟨j|; na forma
    TWO_LEVEL o par (a,b) é |a⟩⟨b| e soma-se o conjugado hermítico.
    """

    coefficient: float
    modes: tuple

    @property
    def is_diagonal(self):
        return all(j == k for j, k in self.modes)

    def label(self):
        return ''.join(f'P{j}' if j == k else f'X{j}{k}' for j, k in self.modes)


@dataclass(frozen=True, eq=False)
class SectorGenerator:
    """
    Gerador hermítico das rotações do espaço ativo num setor de controlo

    physical guarda os estados ativos (níveis) que satisfazem a lei de
    Gauss com os controlos do setor.
    """

    sector: ControlSector
    terms: tuple
    levels: tuple
    completion: Completion = Completion.XSTRING
    physical: tuple = ()

    @property
    def d(self):
        return len(self.levels)

    @property
    def n_active(self):
        return len(self.terms[0].modes) if self.terms else len(self.sector.irreps)

    def level_of(self, irrep):
        try:
            return self.levels.index(irrep)
        except ValueError:
            raise ValueError(f'A irrep {irrep.label()} não é um nível do qudit') from None

    def link_factor(self, j, k):
        m = np.zeros((self.d, self.d))
        m[j, k] = 1.0
        if self.completion is Completion.XSTRING:
            m[k, j] = 1.0
        return m

    def term_matrix(self, term):
        """Operador hermítico do termo, sem o coeficiente"""
        k = reduce(np.kron, [self.link_factor(j, kk) for j, kk in term.modes])
        if self.completion is Completion.TWO_LEVEL and not term.is_diagonal:
            k = k + k.T
        return k

    def matrix(self):
        size = self.d ** self.n_active
        m = np.zeros((size, size))
        for term in self.terms:
            m += term.coefficient * self.term_matrix(term)
        return m

    def physical_indices(self):
        shape = (self.d,) * self.n_active
        return [int(np.ravel_multi_index(state, shape)) for state in self.physical]

    def physical_block(self):
        idx = self.physical_indices()
        return self.matrix()[np.ix_(idx, idx)]

    @cached_property
    def _spectrum(self):
        return np.linalg.eigh(self.matrix())

    def unitary(self, alpha):
        """exp(−iα·G) sobre o espaço ativo"""
        w, v = self._spectrum
        return (v * np.exp(-1j * alpha * w)) @ v.conj().T

    def conjugate_level(self, level):
        return self.level_of(self.levels[level].conjugate())

    def transformed(self, word):
        """
        Gerador obtido por paridades e conjugação

        Os coeficientes são copiados; os sinais dependem da convenção de
        fase dos estados e podem diferir do gerador construído diretamente.
        """
        conj_level = self.conjugate_level

        def conj_pair(pair):
            image = tuple(conj_level(x) for x in pair)
            return tuple(sorted(image)) if self.completion is Completion.XSTRING else image

        terms, physical = self.terms, self.physical
        for letter in word:
            mapping = ACTIVE_MAPS[letter]
            terms = tuple(
                SectorTerm(t.coefficient, _remap(t.modes, mapping, conj_pair)) for t in terms
            )
            physical = tuple(_remap(s, mapping, conj_level) for s in physical)
        return SectorGenerator(
            self.sector.transformed(word),
            tuple(sorted(terms, key=lambda t: t.modes)),
            self.levels,
            self.completion,
            tuple(sorted(physical)),
        )

    def to_json(self):
        return {
            'sector': [r.label() for r in self.sector.irreps],
            'orbit': self.sector.orbit,
            'transform': self.sector.transform,
            'completion': self.completion.value,
            'terms': [
                {'coefficient': float(t.coefficient), 'modes': [list(p) for p in t.modes]}
                for t in self.terms
            ],
        }
