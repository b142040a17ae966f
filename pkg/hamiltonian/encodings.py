# hamiltonian/encodings.py
"""
Codificações de um plaquete em registos de qubits

- Codificação global de três qubits de {1,3,3bar,8,6,6bar}, com os
  estados |101⟩ e |110⟩ não físicos e uma completação escolhida para
  simplificar o hamiltoniano em oito grupos de termos
- Incorporação de um OperatorMatrix num registo de 2^n estados

Autor: Sistema Rede SU(3)
Data: 2025
"""

import logging

import numpy as np

from qubit_compile.pauli import operator_string_matrix, pauli_sum
from su3_irreps.domain import Irrep

logger = logging.getLogger(__name__)

# posição no registo → irrep; None marca estados não físicos
SIX_ENCODING = ('1', '3', '3bar', '8', '6', None, None, '6bar')


def _h0():
    """Parte elétrica, coeficiente de g²/2"""
    return 2 * pauli_sum({
        'III': 14 / 3, 'ZII': -11 / 6, 'IIZ': -3 / 2, 'ZZI': -3 / 2, 'IZZ': 1 / 6,
    })


def _magnetic_groups():
    """Grupos H1…H7, coeficiente de 1/(2g²)"""
    return {
        'H1': -0.5 * pauli_sum({'IIX': 1}),
        'H2': -0.5 * pauli_sum({'IXI': 1, 'ZXI': 1}),
        'H3': -0.5 * pauli_sum({'IXX': 1, 'IYY': 1}),
        'H4': -0.5 * pauli_sum({'XIX': 1, 'ZIX': 1}),
        'H5': -0.5 * pauli_sum({'YZY': 1}),
        'H6': -(operator_string_matrix('Bbb') + operator_string_matrix('bBB')),
        'H7': -0.25 * pauli_sum({'XII': 1, 'XIZ': -1, 'XZI': -1, 'XZZ': 1}),
    }


def six_truncation_groups():
    """
    Os oito grupos do hamiltoniano de três qubits

    Returns:
        dict: 'H0' com o coeficiente de g²/2 e 'H1'…'H7' com o de 1/(2g²)
    """
    groups = {'H0': _h0()}
    groups.update(_magnetic_groups())
    return groups


def six_truncation_matrices():
    """(elétrica, magnética) somadas, sem o termo constante"""
    groups = six_truncation_groups()
    magnetic = sum(m for name, m in groups.items() if name != 'H0')
    return groups['H0'].real, magnetic.real


def embed(operator, encoding, part='full', g=None):
    """
    Coloca um OperatorMatrix nas posições do registo indicadas por encoding

    Args:
        operator (OperatorMatrix): operador com elementos Irrep
        encoding: rótulo da irrep em cada posição (None = não físico)
        part (str): 'full', 'electric' ou 'magnetic'

    Returns:
        tuple[np.ndarray, list[int]]: matriz 2^n×2^n e posições físicas
    """
    if part == 'electric':
        source = operator.electric_matrix()
    elif part == 'magnetic':
        source = operator.magnetic_matrix()
    else:
        source = operator.dense(g)
    labels = list(operator.labels)
    size = len(encoding)
    m = np.zeros((size, size))
    physical = []
    origin = []
    for pos, label in enumerate(encoding):
        if label is None:
            continue
        label = Irrep.from_label(label).label()
        if label not in labels:
            raise ValueError(f'Irrep {label} ausente do operador')
        physical.append(pos)
        origin.append(labels.index(label))
    m[np.ix_(physical, physical)] = source[np.ix_(origin, origin)]
    return m, physical
