# evolution/schemes.py
"""
Esquemas de Trotter com nome

Os termos H_k são obtidos agrupando a decomposição de Pauli do próprio
hamiltoniano montado; a soma dos grupos reproduz H exatamente.

- global8: um plaquete {1,3,3bar,8}, H1 de um qubit e H2 = {ZZ,XX,YY},
  ordem 2
- color6: paridade de cor (1,3+,6+,8), H1 de um qubit, H2 = XZ e
  H3 = {XX,YY,ZZ}, ordens 1 e 2
- twoplaq_pp: setor ++ de dois plaquetes {1,3,3bar}, H1 de um qubit,
  H2 = {ZZ,XX,YY} e H3 = {XZ,ZX}, ordem 1
- even_odd: parte diagonal e □+□† dos plaquetes pares e ímpares, para
  qualquer base
- exact: um único termo (sem erro de Trotter)

Autor: Sistema Rede SU(3)
Data: 2025
"""

import logging
from collections import deque

import numpy as np
from scipy import sparse

from gauge_basis.geometry import two_plaquette_pbc
from gauge_basis.services import global_basis
from hamiltonian.domain import OperatorMatrix
from hamiltonian.services import (
    build_hamiltonian,
    color_parity_reduce,
    config_magnetic_matrix,
    one_plaquette_pq_hamiltonian,
)
from qubit_compile.pauli import pauli_decompose, pauli_reconstruct
from su3_irreps.domain import Truncation

from .domain import TrotterScheme

logger = logging.getLogger(__name__)

T133 = Truncation.from_irreps(['1', '3', '3bar'])
T1338 = Truncation.from_irreps(['1', '3', '3bar', '8'])
T6 = Truncation.from_irreps(['1', '3', '3bar', '8', '6', '6bar'])

SINGLE_QUBIT = ('II', 'ZI', 'IZ', 'XI', 'IX')
CARTAN = ('ZZ', 'XX', 'YY')

PAULI_GROUPS = {
    'global8': (('H1', SINGLE_QUBIT), ('H2', CARTAN)),
    'color6': (('H1', SINGLE_QUBIT), ('H2', ('XZ',)), ('H3', CARTAN)),
    'twoplaq_pp': (('H1', SINGLE_QUBIT), ('H2', CARTAN), ('H3', ('XZ', 'ZX'))),
}


def positive_couplings(operator, root=None):
    """
    Escolhe o sinal de cada estado para que □ tenha elementos positivos

    Os sinais seguem uma árvore de procura em largura a partir de root
    (por omissão o estado de menor energia elétrica). Ciclos frustrados
    ficam com o sinal da árvore e são registados em aviso.

    Returns:
        OperatorMatrix: mesmo operador numa base com sinais trocados
    """
    box = -operator.magnetic.toarray()
    n = operator.dimension
    if root is None:
        root = int(np.argmin([float(e) for e in operator.electric_diag]))
    signs = np.zeros(n)
    for start in [root] + list(range(n)):
        if signs[start]:
            continue
        signs[start] = 1.0
        queue = deque([start])
        while queue:
            i = queue.popleft()
            for j in np.flatnonzero(box[i]):
                if j != i and not signs[j]:
                    signs[j] = signs[i] * np.sign(box[i, j])
                    queue.append(j)
    flipped = np.outer(signs, signs) * box
    np.fill_diagonal(flipped, 0.0)
    if (flipped < -1e-12).any():
        logger.warning('Sinais de □ frustrados: nem todos os elementos ficam positivos')
    d = sparse.diags(signs)
    return OperatorMatrix(
        labels=operator.labels,
        electric_diag=operator.electric_diag,
        magnetic=sparse.csr_matrix(d @ operator.magnetic @ d),
        constant=operator.constant,
        g=operator.g,
        include_constant=operator.include_constant,
        elements=operator.elements,
    )


def _electric(operator):
    return operator.electric_energy_operator()


def pauli_grouped_scheme(name, operator, groups, order=1, dt=None):
    """
    Agrupa as cadeias de Pauli de H nos grupos indicados

    Args:
        name (str): nome do esquema
        operator (OperatorMatrix): hamiltoniano de dimensão 2^n
        groups: pares (rótulo, cadeias); II pode aparecer num grupo
        order (int): 1 ou 2
        dt (float | None): passo

    Raises:
        ValueError: se uma cadeia de H não pertencer a nenhum grupo
    """
    h = operator.dense()
    terms = pauli_decompose(h, hermitian=True, tol=1e-15)
    owner = {s: label for label, strings in groups for s in strings}
    buckets = {label: [] for label, _ in groups}
    for term in terms:
        label = owner.get(term.string)
        if label is None:
            raise ValueError(f'Cadeia {term.string} de H fora dos grupos de {name}')
        buckets[label].append(term)
    n_qubits = len(terms[0].string)
    matrices = []
    for label, _ in groups:
        if buckets[label]:
            m = pauli_reconstruct(buckets[label], n_qubits).real
        else:
            m = np.zeros_like(h)
        matrices.append((label, m))
    logger.debug(f'Esquema {name}: ' + ', '.join(
        f'{label}={[t.string for t in buckets[label]]}' for label, _ in groups
    ))
    return TrotterScheme(
        name=name,
        terms=tuple(matrices),
        hamiltonian=h,
        electric=_electric(operator),
        order=order,
        dt=dt,
        labels=operator.labels,
    )


def global8_operator(g=1.0):
    """Um plaquete {1,3,3bar,8} em |00⟩,|01⟩,|10⟩,|11⟩ = 1,3,3bar,8"""
    return one_plaquette_pq_hamiltonian(T1338, g)


def color3_operator(g=1.0):
    return positive_couplings(color_parity_reduce(one_plaquette_pq_hamiltonian(T133, g)))


def color6_operator(g=1.0):
    """Paridade de cor truncada em 6, na ordem (1,3+,6+,8)"""
    reduced = color_parity_reduce(one_plaquette_pq_hamiltonian(T6, g))
    return positive_couplings(reduced.reordered(['1', '3+', '6+', '8']))


def twoplaq_pp_operator(g=1.0):
    """
    Setor ++ de dois plaquetes {1,3,3bar}

    Ordem: energia elétrica crescente e, a igual energia, diagonal
    magnética crescente.
    """
    operator = build_hamiltonian(global_basis(two_plaquette_pbc(), T133, '++'), g)
    diag = operator.magnetic.diagonal()
    order = sorted(
        range(operator.dimension), key=lambda i: (operator.electric_diag[i], diag[i], i),
    )
    return positive_couplings(operator.reordered(order))


NAMED_OPERATORS = {
    'global8': global8_operator,
    'color6': color6_operator,
    'twoplaq_pp': twoplaq_pp_operator,
}

DEFAULT_ORDER = {'global8': 2, 'color6': 1, 'twoplaq_pp': 1}


def named_scheme(name, g=1.0, order=None, dt=None):
    """
    Esquema com nome sobre o hamiltoniano correspondente

    Raises:
        ValueError: nome desconhecido
    """
    if name not in NAMED_OPERATORS:
        raise ValueError(f'Esquema de Trotter desconhecido: {name!r}')
    order = DEFAULT_ORDER[name] if order is None else order
    return pauli_grouped_scheme(name, NAMED_OPERATORS[name](g), PAULI_GROUPS[name], order, dt)


def exact_scheme(operator, dt=None):
    """Um só termo: cada etapa é a exponencial exata"""
    return TrotterScheme(
        name='exact',
        terms=(('H', operator.dense()),),
        hamiltonian=operator.dense(),
        electric=_electric(operator),
        dt=dt,
        labels=operator.labels,
    )


def even_odd_scheme(basis, g=1.0, order=1, dt=None):
    """
    Parte diagonal seguida de □+□† dos plaquetes pares e dos ímpares

    Args:
        basis (LatticeBasis): base local ou global
        g (float): acoplamento

    Returns:
        TrotterScheme: termos 'D', 'even' e 'odd' (o último omitido sem
        plaquetes ímpares)
    """
    operator = build_hamiltonian(basis, g)
    h = operator.dense()
    diagonal = np.diag(np.diag(h))
    geometry = basis.geometry
    v = basis.vectors()
    terms = [('D', diagonal)]
    for label, parity in (('even', 0), ('odd', 1)):
        chosen = [i for i in range(len(geometry.plaquettes)) if i % 2 == parity]
        if not chosen:
            continue
        m = config_magnetic_matrix(basis.configs, geometry, chosen).toarray()
        m = -(v.T @ m @ v) / (2 * g * g)
        terms.append((label, m - np.diag(np.diag(m))))
    return TrotterScheme(
        name='even_odd',
        terms=tuple(terms),
        hamiltonian=h,
        electric=_electric(operator),
        order=order,
        dt=dt,
        labels=operator.labels,
    )
