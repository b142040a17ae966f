# qubit_compile/registers.py
"""
Operadores sobre registos binários (p,q) de um plaquete

Cada índice p e q é guardado em n qubits, bit mais significativo
primeiro. Os operadores são somas de cadeias em {I, b, B}, com
b = |0⟩⟨1| e B = b†.

Autor: Sistema Rede SU(3)
Data: 2025
"""

import logging
from dataclasses import dataclass

import numpy as np

from .pauli import operator_string_matrix, pauli_decompose

logger = logging.getLogger(__name__)

_DAGGER = {'I': 'I', 'b': 'B', 'B': 'b'}


def dagger_string(string):
    return ''.join(_DAGGER[ch] for ch in string)


@dataclass(frozen=True)
class BinaryRegisterOp:
    """
    Soma Σ c·(cadeia em {I,b,B}) sobre n_qubits
    """

    n_qubits: int
    terms: tuple

    def __post_init__(self):
        for _, string in self.terms:
            if len(string) != self.n_qubits or set(string) - set(_DAGGER):
                raise ValueError(f'Cadeia inválida para {self.n_qubits} qubits: {string!r}')

    @classmethod
    def identity(cls, n):
        return cls(n, ((1.0, 'I' * n),))

    def strings(self):
        return [string for _, string in self.terms]

    def matrix(self):
        size = 2 ** self.n_qubits
        m = np.zeros((size, size), dtype=complex)
        for c, string in self.terms:
            m += c * operator_string_matrix(string)
        return m

    def dagger(self):
        return BinaryRegisterOp(
            self.n_qubits, tuple((np.conj(c), dagger_string(s)) for c, s in self.terms),
        )

    def tensor(self, other):
        return BinaryRegisterOp(
            self.n_qubits + other.n_qubits,
            tuple((a * b, s + t) for a, s in self.terms for b, t in other.terms),
        )

    def __add__(self, other):
        if self.n_qubits != other.n_qubits:
            raise ValueError('Operadores em registos de tamanhos diferentes')
        return BinaryRegisterOp(self.n_qubits, self.terms + other.terms)

    def pauli_terms(self, tol=None):
        """Expansão de Pauli complexa (o operador não é hermitiano)"""
        return pauli_decompose(self.matrix(), self.n_qubits, hermitian=False, tol=tol)


def lowering_operator(n):
    """
    B_n: |p⟩ → |p−1⟩ e B_n|0⟩ = 0

    B_n = I⊗B_{n−1} + b⊗B^{⊗(n−1)}; o termo k põe b no bit k (a contar
    do menos significativo) e B nos k bits abaixo.

    Args:
        n (int): qubits do registo

    Returns:
        BinaryRegisterOp: n termos por ordem crescente de k
    """
    if n < 1:
        raise ValueError('O registo precisa de pelo menos um qubit')
    return BinaryRegisterOp(n, tuple(
        (1.0, 'I' * (n - k - 1) + 'b' + 'B' * k) for k in range(n)
    ))


def plaquette_pq_operator(n):
    """
    □ = B†⊗I + B⊗B† + I⊗B sobre os registos (p, q) de n qubits cada
    """
    lower = lowering_operator(n)
    one = BinaryRegisterOp.identity(n)
    box = lower.dagger().tensor(one) + lower.tensor(lower.dagger()) + one.tensor(lower)
    logger.debug(f'Operador de plaquete (p,q) com {len(box.terms)} cadeias em {2 * n} qubits')
    return box


def plaquette_hermitian_terms(n):
    """
    Cadeias O_j com □ + □† = Σ_j (O_j + O_j†)

    Returns:
        list[str]: n² + 2n cadeias de 2n caracteres
    """
    lower = lowering_operator(n).strings()
    one = 'I' * n
    terms = [s + one for s in lower]
    terms += [one + s for s in lower]
    terms += [s + dagger_string(t) for s in lower for t in lower]
    return terms


def pq_index(p, q, n):
    """Posição de |p⟩|q⟩ no registo de 2n qubits"""
    size = 2 ** n
    if not (0 <= p < size and 0 <= q < size):
        raise ValueError(f'(p,q)=({p},{q}) fora de registos de {n} qubits')
    return p * size + q


def hermitian_pauli_count(n):
    box = plaquette_pq_operator(n).matrix()
    return len(pauli_decompose(box + box.conj().T, 2 * n))
