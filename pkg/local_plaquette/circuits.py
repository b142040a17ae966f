# local_plaquette/circuits.py
"""
Circuitos das rotações de setor

G^{𝒳…𝒳}_jk(α) = exp(−iα 𝒳_jk⊗…⊗𝒳_jk) decompõe-se numa escada de X_jk
controlados pelo nível k, numa rotação de Givens partida em duas
metades e numa Y_jk controlada em "ou inclusivo" pelo terceiro nível,
que cancela a rotação quando algum qudit está fora do par (j,k).
Pares diferentes por qudit alinham-se com transposições X antes e depois.

Na codificação (p,q) cada ligação são dois qubits e
𝒳01 → X⊗I, 𝒳12 → X⊗X, 𝒳02 → I⊗X.

Autor: Sistema Rede SU(3)
Data: 2025
"""

import enum
import logging
from functools import reduce
from itertools import combinations

import numpy as np

from qubit_compile.circuits import Circuit, Gate, GateKind
from su3_irreps.domain import Irrep

from .domain import Completion
from .services import PlaquetteFrame, build_all_generators

logger = logging.getLogger(__name__)


class Encoding(str, enum.Enum):
    SINGLE_QUDIT = 'single_qudit'
    PQ_PAIR = 'pq_pair'


PQ_LEVELS = (Irrep(0, 0), Irrep(1, 0), Irrep(0, 1))
# bits (p,q) de cada nível
PQ_BITS = {0: (0, 0), 1: (1, 0), 2: (0, 1)}
PQ_SUBSTITUTIONS = {(0, 1): (1, 0), (1, 2): (1, 1), (0, 2): (0, 1)}

_PAULI_X = np.array([[0.0, 1.0], [1.0, 0.0]])


def _alignment(pair, reference):
    """Transposições que levam o par de níveis ao par de referência"""
    m, n = pair
    j, k = reference
    if {m, n} == {j, k}:
        return []
    shared = {m, n} & {j, k}
    if shared:
        (a,) = {m, n} - shared
        (b,) = {j, k} - shared
        return [tuple(sorted((a, b)))]
    return [tuple(sorted((m, j))), tuple(sorted((n, k)))]


def xstring_rotation_gates(dims, sites, modes, angle, controls=()):
    """
    Portas de exp(−i·angle·⊗𝒳) sobre os sítios dados

    Args:
        dims (tuple): dimensão de cada sítio do circuito
        sites (list): sítios da cadeia; o último recebe a rotação
        modes (list): par (j,k) de cada sítio
        angle (float): ângulo
        controls: controlos extra só das duas rotações

    Returns:
        list[Gate]: portas pela ordem temporal

    Raises:
        ValueError: pares degenerados ou de tamanho diferente dos sítios
    """
    if len(sites) != len(modes) or not sites:
        raise ValueError('É preciso um par de níveis por sítio')
    if any(j == k for j, k in modes):
        raise ValueError('A cadeia 𝒳 não pode conter projetores')
    j, k = sorted(modes[-1])
    target = sites[-1]
    align = []
    for site, pair in zip(sites[:-1], modes[:-1]):
        align += [Gate(GateKind.X, site, swap) for swap in _alignment(tuple(sorted(pair)), (j, k))]
    ladder = [
        Gate(GateKind.X, sites[i], (j, k), controls=((sites[i + 1], (k,)),))
        for i in range(len(sites) - 1)
    ]
    others = tuple(lv for lv in range(dims[target]) if lv not in (j, k))
    spectators = sites[:-1]
    if others and spectators:
        or_y = [
            Gate(GateKind.Y, target, (j, k), controls=tuple((s, others) for s in subset))
            for size in range(1, len(spectators) + 1)
            for subset in combinations(spectators, size)
        ]
        half = Gate(GateKind.GIVENS, target, (j, k), angle=angle / 2, controls=controls)
        core = [half] + or_y + [half] + or_y
    else:
        core = [Gate(GateKind.GIVENS, target, (j, k), angle=angle, controls=controls)]
    return align + ladder + core + ladder[::-1] + align[::-1]


def _pq_sites(link, pair):
    p_flip, q_flip = PQ_SUBSTITUTIONS[tuple(sorted(pair))]
    return [s for s, flip in ((2 * link, p_flip), (2 * link + 1, q_flip)) if flip]


def compile_sector_circuit(gen, sector=None, encoding=Encoding.SINGLE_QUDIT, alpha=1.0,
                           geometry=None, plaquette=0):
    """
    Circuito das rotações dos termos de um setor

    Cada termo c·𝒳…𝒳 dá G^{𝒳…𝒳}(c·α), controlado pelos níveis das
    ligações de controlo; os termos aplicam-se pela ordem do gerador.

    Args:
        gen (SectorGenerator): gerador na forma de cadeias 𝒳
        sector (ControlSector): setor; por omissão o do gerador
        encoding (Encoding): um qudit por ligação ou um par (p,q) de qubits
        alpha (float): ângulo

    Returns:
        Circuit: circuito sobre todas as ligações da geometria

    Raises:
        ValueError: completamento ou truncamento sem circuito
    """
    encoding = Encoding(encoding)
    sector = gen.sector if sector is None else sector
    if sector != gen.sector:
        raise ValueError(f'O gerador é do setor {gen.sector}, não de {sector}')
    if gen.completion is not Completion.XSTRING:
        raise ValueError('Só geradores em cadeias 𝒳 têm circuito')
    frame = PlaquetteFrame.build(geometry, plaquette)
    assignment = frame.control_assignment(sector)
    n_links = frame.geometry.n_links

    if encoding is Encoding.SINGLE_QUDIT:
        circuit = Circuit((gen.d,) * n_links)
        controls = tuple((link, (gen.level_of(r),)) for link, r in assignment.items())
        for term in gen.terms:
            circuit.extend(xstring_rotation_gates(
                circuit.dims, list(frame.active), list(term.modes),
                alpha * term.coefficient, controls,
            ))
    else:
        if gen.levels != PQ_LEVELS:
            raise ValueError('A codificação (p,q) só está definida para {1,3,3bar}')
        circuit = Circuit.qubits(2 * n_links)
        controls = []
        for link, r in assignment.items():
            p, q = PQ_BITS[gen.level_of(r)]
            controls += [(2 * link, (p,)), (2 * link + 1, (q,))]
        for term in gen.terms:
            sites = [s for link, pair in zip(frame.active, term.modes) for s in _pq_sites(link, pair)]
            circuit.extend(xstring_rotation_gates(
                circuit.dims, sites, [(0, 1)] * len(sites),
                alpha * term.coefficient, tuple(controls),
            ))
    logger.debug(f'Circuito do setor {sector} ({encoding.value}): {circuit.gate_counts()}')
    return circuit


def pq_term_matrix(term):
    """Cadeia de Paulis X de um termo sobre os oito qubits ativos"""
    factors = []
    for pair in term.modes:
        p_flip, q_flip = PQ_SUBSTITUTIONS[tuple(sorted(pair))]
        factors += [_PAULI_X if p_flip else np.eye(2), _PAULI_X if q_flip else np.eye(2)]
    return reduce(np.kron, factors)


def pq_generator_matrix(gen):
    """Gerador substituído na codificação (p,q), sobre 2^(2·ligações ativas)"""
    size = 4 ** gen.n_active
    m = np.zeros((size, size))
    for term in gen.terms:
        m += term.coefficient * pq_term_matrix(term)
    return m


def pq_index(state):
    """Índice (p,q) de um estado ativo de qutrits"""
    bits = [b for level in state for b in PQ_BITS[level]]
    return int(np.ravel_multi_index(tuple(bits), (2,) * len(bits)))


def sector_resources(trunc, geometry=None, plaquette=0, encoding=Encoding.SINGLE_QUDIT):
    """
    Contagem de portas de todos os setores de um plaquete

    Returns:
        dict: contagens somadas e número de setores
    """
    totals = {'sectors': 0}
    for gen in build_all_generators(trunc, geometry, plaquette):
        counts = compile_sector_circuit(gen, encoding=encoding, geometry=geometry,
                                        plaquette=plaquette).gate_counts()
        totals['sectors'] += 1
        for key, value in counts.items():
            totals[key] = totals.get(key, 0) + value
    logger.info(f'Recursos do plaquete ({encoding.value}, {trunc}): {totals}')
    return totals
