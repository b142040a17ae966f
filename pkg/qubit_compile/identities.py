# qubit_compile/identities.py
"""
Circuitos de dois qubits para as exponenciais usadas nos passos de Trotter

- exp(i(aXX + bYY + cZZ)) com três CNOT (subálgebra de Cartan)
- exp(iαX⊗Z)
- exp(i(αZ⊗X + βX⊗Z))

Autor: Sistema Rede SU(3)
Data: 2025
"""

import logging
from concurrent.futures import ThreadPoolExecutor

import numpy as np
from scipy.linalg import expm

from core.parallel import worker_count

from .circuits import Circuit, cnot, h, phase_deviation, rx, rz, s
from .pauli import pauli_sum

logger = logging.getLogger(__name__)


def cartan_circuit(a, b, c):
    """exp(i(aXX + bYY + cZZ)), a menos de uma fase global"""
    return Circuit.qubits(2).extend([
        cnot(0, 1),
        rx(0, -a), rz(1, -c),
        h(0),
        cnot(0, 1),
        s(0), rz(1, b),
        h(0),
        cnot(0, 1),
        rx(0, -np.pi / 4), rx(1, np.pi / 4),
    ])


def xz_circuit(alpha):
    """exp(iαX⊗Z)"""
    return Circuit.qubits(2).extend([
        h(0), cnot(1, 0), rz(0, -alpha), cnot(1, 0), h(0),
    ])


def zx_xz_circuit(alpha, beta):
    """exp(i(αZ⊗X + βX⊗Z))"""
    return Circuit.qubits(2).extend([
        h(0), cnot(0, 1), h(0),
        rz(0, -alpha), rz(1, -beta),
        h(0), cnot(0, 1), h(0),
    ])


IDENTITIES = {
    'cartan': (3, cartan_circuit, lambda a, b, c: {'XX': a, 'YY': b, 'ZZ': c}),
    'xz': (1, xz_circuit, lambda alpha: {'XZ': alpha}),
    'zx_xz': (2, zx_xz_circuit, lambda alpha, beta: {'ZX': alpha, 'XZ': beta}),
}


def identity_deviation(name, params):
    """Desvio entre o circuito e exp(i·Σ θP) a menos de fase global"""
    _, build, generator = IDENTITIES[name]
    target = expm(1j * pauli_sum(generator(*params)))
    return phase_deviation(build(*params).unitary(), target)


def verify_circuit_identities(draws=100, seed=0):
    """
    Verifica cada identidade de circuito para parâmetros aleatórios

    Args:
        draws (int): sorteios por identidade
        seed (int): semente do gerador

    Returns:
        dict: nome → desvio máximo observado
    """
    rng = np.random.default_rng(seed)
    report = {}
    for name, (n_params, _, _) in IDENTITIES.items():
        params = rng.uniform(-np.pi, np.pi, size=(draws, n_params))
        with ThreadPoolExecutor(max_workers=worker_count()) as pool:
            deviations = list(pool.map(lambda p: identity_deviation(name, p), params))
        report[name] = max(deviations)
        logger.info(f'Identidade {name}: desvio máximo {report[name]:.3e} em {draws} sorteios')
    return report
