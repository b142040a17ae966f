# qubit_compile/gray.py
"""
Rotações de dois níveis por código de Gray

exp(−iα(O + O†)), com O uma cadeia em {I,b,B}, liga dois estados que
diferem em todos os qubits com b ou B. O caminho de Gray leva um dos
estados até à vizinhança do outro com X multicontrolados; segue-se uma
rotação controlada e a inversão do caminho.

Autor: Sistema Rede SU(3)
Data: 2025
"""

import logging
from dataclasses import dataclass

from .circuits import Circuit, mcx, rx
from .registers import plaquette_hermitian_terms

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class GrayRotation:
    """
    Plano da rotação: estados ligados, inversões e qubit rodado

    source e target são cadeias de bits com '-' nos qubits livres (I);
    flips lista os qubits invertidos por ordem a partir de source.
    """

    n_qubits: int
    source: str
    target: str
    flips: tuple
    rotation_qubit: int

    @property
    def active(self):
        return [i for i, ch in enumerate(self.source) if ch != '-']

    @property
    def hamming(self):
        return len(self.active)

    def stages(self):
        return 2 * len(self.flips) + 1

    def path(self):
        """Estados ativos visitados, de source até ao vizinho de target"""
        bits = list(self.source)
        visited = [''.join(bits)]
        for q in self.flips:
            bits[q] = '1' if bits[q] == '0' else '0'
            visited.append(''.join(bits))
        return visited


def plan_gray_rotation(string, order=None):
    """
    Planeia a rotação de dois níveis de uma cadeia em {I,b,B}

    O caminho parte do estado com 0 nos b e 1 nos B. Por omissão inverte
    primeiro o qubit ativo mais significativo e depois os restantes do
    menos para o mais significativo, rodando o último.

    Args:
        string (str): cadeia O
        order: ordem opcional dos qubits ativos (o último é rodado)

    Returns:
        GrayRotation: plano com Hamming−1 inversões

    Raises:
        ValueError: se a cadeia não tiver b nem B ou a ordem for inválida
    """
    active = [i for i, ch in enumerate(string) if ch in 'bB']
    if not active:
        raise ValueError(f'A cadeia {string!r} não liga dois estados distintos')
    if set(string) - set('IbB'):
        raise ValueError(f'Cadeia inválida: {string!r}')
    if order is None:
        order = [active[0]] + active[:0:-1]
    order = list(order)
    if sorted(order) != active:
        raise ValueError(f'Ordem {order} não percorre os qubits ativos {active}')
    source = ''.join('0' if ch == 'b' else '1' if ch == 'B' else '-' for ch in string)
    target = ''.join('1' if ch == 'b' else '0' if ch == 'B' else '-' for ch in string)
    return GrayRotation(len(string), source, target, tuple(order[:-1]), order[-1])


def gray_rotation_circuit(string, alpha, order=None):
    """
    Circuito de exp(−iα(O + O†))

    Args:
        string (str): cadeia O em {I,b,B}
        alpha (float): ângulo
        order: ordem opcional do caminho de Gray

    Returns:
        Circuit: X multicontrolados, rotação controlada e o inverso dos X
    """
    plan = plan_gray_rotation(string, order)
    bits = {q: int(plan.source[q]) for q in plan.active}
    swaps = []
    for q in plan.flips:
        swaps.append(mcx(q, {c: bits[c] for c in plan.active if c != q}))
        bits[q] ^= 1
    r = plan.rotation_qubit
    rotation = rx(r, alpha, controls=tuple((c, (bits[c],)) for c in plan.active if c != r))
    circuit = Circuit.qubits(plan.n_qubits)
    circuit.extend(swaps)
    circuit.append(rotation)
    circuit.extend(reversed(swaps))
    return circuit


def plaquette_rotation_circuit(n, alpha):
    """
    Produto das n² + 2n rotações de dois níveis de □ + □†

    As rotações não comutam entre si; o produto é um passo de Trotter de
    exp(−iα(□ + □†)) sobre os registos (p, q).
    """
    circuit = Circuit.qubits(2 * n)
    for string in plaquette_hermitian_terms(n):
        circuit = circuit + gray_rotation_circuit(string, alpha)
    logger.info(f'Circuito do plaquete (p,q) com n={n}: {len(circuit.gates)} portas')
    return circuit
