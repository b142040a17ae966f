# qubit_compile/pauli.py
"""
Decomposição de operadores em cadeias de Pauli

c_P = Tr(H P) / 2^n para cada cadeia P ∈ {I,X,Y,Z}^n; o primeiro
caractere da cadeia atua no qubit mais significativo.

Autor: Sistema Rede SU(3)
Data: 2025
"""

import csv
import logging
from dataclasses import dataclass
from functools import lru_cache, reduce
from itertools import product

import numpy as np
from django.conf import settings

logger = logging.getLogger(__name__)

PAULI = {
    'I': np.eye(2, dtype=complex),
    'X': np.array([[0, 1], [1, 0]], dtype=complex),
    'Y': np.array([[0, -1j], [1j, 0]], dtype=complex),
    'Z': np.array([[1, 0], [0, -1]], dtype=complex),
}

# M[a, 2r+c] = P_a[c, r], de modo que Σ_rc h[r,c] P_a[c,r] = Tr(h P_a)
_TRACE_MAP = np.stack([PAULI[ch].T.reshape(-1) for ch in 'IXYZ'])

# b = |0⟩⟨1| = (X + iY)/2
LADDER = {
    'I': np.eye(2, dtype=complex),
    'b': np.array([[0, 1], [0, 0]], dtype=complex),
    'B': np.array([[0, 0], [1, 0]], dtype=complex),
}


@dataclass(frozen=True)
class PauliTerm:
    coefficient: complex
    string: str

    @property
    def is_identity(self):
        return set(self.string) <= {'I'}

    def matrix(self):
        return self.coefficient * pauli_string_matrix(self.string)

    def __str__(self):
        c = self.coefficient
        value = f'{c.real:+.12g}' if abs(c.imag) < 1e-15 else f'({c:.12g})'
        return f'{value} {self.string}'


@lru_cache(maxsize=None)
def pauli_string_matrix(string):
    m = reduce(np.kron, (PAULI[ch] for ch in string))
    m.flags.writeable = False
    return m


def operator_string_matrix(string, alphabet=None):
    """Produto tensorial de uma cadeia em {I,X,Y,Z,b,B}"""
    table = {**PAULI, **LADDER} if alphabet is None else alphabet
    return reduce(np.kron, (table[ch] for ch in string))


def pad_to_qubits(h, n_qubits=None):
    """
    Completa com linhas e colunas nulas até 2^n
    """
    h = np.asarray(h)
    dim = h.shape[0]
    if n_qubits is None:
        n_qubits = max(1, int(np.ceil(np.log2(dim))))
    size = 2 ** n_qubits
    if dim > size:
        raise ValueError(f'Matriz {dim}×{dim} não cabe em {n_qubits} qubits')
    padded = np.zeros((size, size), dtype=h.dtype)
    padded[:dim, :dim] = h
    return padded, n_qubits


def pauli_decompose(h, n_qubits=None, hermitian=True, tol=None):
    """
    Coeficientes de Pauli de uma matriz

    Args:
        h: matriz quadrada (completada com zeros até 2^n)
        n_qubits (int | None): número de qubits
        hermitian (bool): se True exige coeficientes reais
        tol (float | None): corte dos coeficientes (ZERO_TOL por omissão)

    Returns:
        list[PauliTerm]: termos não nulos por ordem lexicográfica de I,X,Y,Z

    Raises:
        ValueError: se hermitian e a matriz não for hermitiana
    """
    tol = settings.LATTICE['ZERO_TOL'] if tol is None else tol
    h, n_qubits = pad_to_qubits(h, n_qubits)
    if hermitian and np.abs(h - h.conj().T).max() > 1e-10:
        raise ValueError('A matriz não é hermitiana')
    coefficients = _pauli_coefficients(h, n_qubits)
    terms = []
    for letters, c in zip(product('IXYZ', repeat=n_qubits), coefficients):
        string = ''.join(letters)
        if abs(c) < tol:
            continue
        terms.append(PauliTerm(float(c.real) if hermitian else complex(c), string))
    logger.debug(f'Decomposição de Pauli em {n_qubits} qubits: {len(terms)} termos')
    return terms


def pauli_reconstruct(terms, n_qubits=None):
    terms = list(terms)
    if n_qubits is None:
        n_qubits = len(terms[0].string)
    h = np.zeros((2 ** n_qubits, 2 ** n_qubits), dtype=complex)
    for t in terms:
        h += t.matrix()
    return h


def pauli_dict(terms):
    return {t.string: t.coefficient for t in terms}


def pauli_sum(coefficients):
    """Matriz de {cadeia: coeficiente}"""
    items = list(coefficients.items())
    n = len(items[0][0])
    h = np.zeros((2 ** n, 2 ** n), dtype=complex)
    for string, c in items:
        h += c * pauli_string_matrix(string)
    return h


def dump_pauli_csv(path, terms):
    with open(path, 'w', newline='', encoding='utf-8') as fh:
        fh.write('# schema=1\n')
        writer = csv.writer(fh)
        writer.writerow(['coefficient', 'string'])
        for t in terms:
            c = t.coefficient
            writer.writerow([f'{c.real:.15g}' if np.isreal(c) else str(c), t.string])
    logger.info(f'{len(terms)} termos de Pauli exportados para {path}')


def _pauli_coefficients(h, n_qubits):
    """
    Todos os Tr(hP)/2^n de uma vez, qubit a qubit

    Os índices (linha, coluna) de cada qubit são agrupados num eixo de
    tamanho 4 e contraídos com _TRACE_MAP; o resultado vem na ordem
    lexicográfica de I,X,Y,Z.
    """
    n = n_qubits
    t = np.asarray(h, dtype=complex).reshape((2,) * (2 * n))
    t = t.transpose([axis for k in range(n) for axis in (k, n + k)]).reshape((4,) * n)
    for k in range(n):
        t = np.moveaxis(np.tensordot(_TRACE_MAP, t, axes=([1], [k])), 0, k)
    return t.reshape(-1) / 2 ** n
