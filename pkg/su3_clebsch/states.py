# su3_clebsch/states.py
"""
Estados internos das irreps de SU(3) e matrizes dos geradores

Os estados são padrões de Gelfand-Tsetlin (GT) com linha superior
(p+q, q, 0), rotulados também por isospin de cor T, projeção Tz e
hipercarga Y. Os geradores E_ij de gl(3) são construídos com os
elementos de matriz de GT, reais na base ortonormada.

Autor: Sistema Rede SU(3)
Data: 2025
"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import product

import numpy as np

from su3_irreps.domain import Irrep

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class IrrepState:
    """
    Estado interno de uma irrep

    pattern guarda (m13, m23, m33, m12, m22, m11); index é a posição do
    estado na ordem canónica de enumerate_states.
    """

    irrep: Irrep
    pattern: tuple
    index: int

    @property
    def Y(self):
        m13, m23, m33, m12, m22, _ = self.pattern
        return Fraction(m12 + m22) - Fraction(2, 3) * (m13 + m23 + m33)

    @property
    def T(self):
        _, _, _, m12, m22, _ = self.pattern
        return Fraction(m12 - m22, 2)

    @property
    def Tz(self):
        _, _, _, m12, m22, m11 = self.pattern
        return m11 - Fraction(m12 + m22, 2)

    @property
    def label(self):
        return (self.T, self.Tz, self.Y)


def _patterns(r):
    top = (r.p + r.q, r.q, 0)
    for m12, m22 in product(range(top[1], top[0] + 1), range(top[2], top[1] + 1)):
        for m11 in range(m22, m12 + 1):
            yield top + (m12, m22, m11)


@lru_cache(maxsize=None)
def enumerate_states(r):
    """
    Lista os estados de uma irrep em ordem determinística

    Ordem: Y decrescente, depois T decrescente, depois Tz decrescente.

    Args:
        r (Irrep): irrep

    Returns:
        tuple[IrrepState]: dim(r) estados
    """
    raw = [IrrepState(r, pattern, -1) for pattern in _patterns(r)]
    raw.sort(key=lambda s: (-s.Y, -s.T, -s.Tz))
    states = tuple(IrrepState(r, s.pattern, i) for i, s in enumerate(raw))
    if len(states) != r.dimension:
        raise ArithmeticError(f'Número de padrões GT diferente da dimensão para ({r})')
    return states


def _rows(pattern):
    m13, m23, m33, m12, m22, m11 = pattern
    return {1: (m11,), 2: (m12, m22), 3: (m13, m23, m33)}


def _unrows(rows):
    return rows[3] + rows[2] + rows[1]


def _raising_element(rows, k, i):
    """
    Elemento ⟨M+δ_ki|E_{k,k+1}|M⟩ da base ortonormada de GT

    Usa l_kj = m_kj − j + 1; o radicando é não negativo sempre que o
    padrão de destino é válido.
    """
    l = {row: [m - j for j, m in enumerate(vals)] for row, vals in rows.items()}
    lki = l[k][i]
    num = -1
    for lj in l[k + 1]:
        num *= lki - lj
    for lj in l.get(k - 1, []):
        num *= lki - lj + 1
    den = 1
    for j, lkj in enumerate(l[k]):
        if j != i:
            den *= (lki - lkj) * (lki - lkj + 1)
    value = Fraction(num, den)
    if value < 0:
        raise ArithmeticError(f'Radicando negativo no elemento de GT: {value}')
    return float(value) ** 0.5


def _is_valid(rows):
    m13, m23, m33 = rows[3]
    m12, m22 = rows[2]
    (m11,) = rows[1]
    return m13 >= m12 >= m23 >= m22 >= m33 and m12 >= m11 >= m22


@lru_cache(maxsize=None)
def _ladder_matrices(r):
    states = enumerate_states(r)
    position = {s.pattern: s.index for s in states}
    dim = len(states)
    raising = {1: np.zeros((dim, dim)), 2: np.zeros((dim, dim))}
    diagonal = {k: np.zeros(dim) for k in (1, 2, 3)}
    for s in states:
        rows = _rows(s.pattern)
        diagonal[1][s.index] = rows[1][0]
        diagonal[2][s.index] = sum(rows[2]) - rows[1][0]
        diagonal[3][s.index] = sum(rows[3]) - sum(rows[2])
        for k in (1, 2):
            for i in range(k):
                target = {row: list(vals) for row, vals in rows.items()}
                target[k][i] += 1
                target = {row: tuple(vals) for row, vals in target.items()}
                if not _is_valid(target):
                    continue
                raising[k][position[_unrows(target)], s.index] = _raising_element(rows, k, i)
    return raising[1], raising[2], diagonal


@dataclass(frozen=True)
class GeneratorSet:
    """
    Geradores de uma realização de SU(3)

    ladder guarda E_ij (i≠j) e as combinações de Cartan h1=E11−E22,
    h2=E22−E33; hermitian guarda T1…T8 com Tr normalizado tal que
    Σ T_a² = casimir·I.
    """

    irrep: Irrep
    dual: bool
    ladder: dict
    hermitian: tuple

    def casimir_matrix(self):
        return sum(t @ t for t in self.hermitian)

    @property
    def dimension(self):
        return self.irrep.dimension


@lru_cache(maxsize=None)
def generators(r, dual=False):
    """
    Geradores de r na base de GT

    Args:
        r (Irrep): irrep
        dual (bool): se True devolve a realização dual X ↦ −Xᵀ, usada na
            extremidade de saída de uma ligação

    Returns:
        GeneratorSet: E_ij, h1, h2 e os oito geradores hermitianos
    """
    e12, e23, diagonal = _ladder_matrices(r)
    e21, e32 = e12.T.copy(), e23.T.copy()
    ops = {
        'E12': e12, 'E23': e23, 'E21': e21, 'E32': e32,
        'E11': np.diag(diagonal[1]), 'E22': np.diag(diagonal[2]), 'E33': np.diag(diagonal[3]),
    }
    ops['E13'] = ops['E12'] @ ops['E23'] - ops['E23'] @ ops['E12']
    ops['E31'] = ops['E32'] @ ops['E21'] - ops['E21'] @ ops['E32']
    if dual:
        # E'_ij = −E_ijᵀ
        ops = {name: -m.T for name, m in ops.items()}
    ops['h1'] = ops['E11'] - ops['E22']
    ops['h2'] = ops['E22'] - ops['E33']

    hermitian = (
        (ops['E12'] + ops['E21']) / 2,
        -0.5j * (ops['E12'] - ops['E21']),
        (ops['E11'] - ops['E22']) / 2,
        (ops['E13'] + ops['E31']) / 2,
        -0.5j * (ops['E13'] - ops['E31']),
        (ops['E23'] + ops['E32']) / 2,
        -0.5j * (ops['E23'] - ops['E32']),
        (ops['E11'] + ops['E22'] - 2 * ops['E33']) / (2 * np.sqrt(3)),
    )
    for m in list(ops.values()) + list(hermitian):
        m.flags.writeable = False
    logger.debug(f'Geradores construídos para ({r}), dual={dual}')
    return GeneratorSet(irrep=r, dual=dual, ladder=ops, hermitian=hermitian)


def hermitian_generators(r):
    return generators(r).hermitian


def structure_constants():
    """
    Constantes de estrutura f_abc de su(3) na normalização de Gell-Mann

    Returns:
        np.ndarray: tensor 8×8×8 totalmente antissimétrico
    """
    f = np.zeros((8, 8, 8))
    values = {
        (0, 1, 2): 1.0,
        (0, 3, 6): 0.5, (0, 4, 5): -0.5,
        (1, 3, 5): 0.5, (1, 4, 6): 0.5,
        (2, 3, 4): 0.5, (2, 5, 6): -0.5,
        (3, 4, 7): np.sqrt(3) / 2, (5, 6, 7): np.sqrt(3) / 2,
    }
    for (a, b, c), v in values.items():
        for (i, j, k), sign in (((a, b, c), 1), ((b, c, a), 1), ((c, a, b), 1),
                                ((b, a, c), -1), ((a, c, b), -1), ((c, b, a), -1)):
            f[i, j, k] = sign * v
    return f
