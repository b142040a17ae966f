# counting/services.py
"""
Contagens de recursos do plaquete controlado

Este módulo implementa:
- Vértices de três e de quatro irreps com pelo menos um singleto
- Estados físicos e elementos de matriz não nulos do plaquete local
- Ajustes polinomiais das tabelas de contagem
- Estimativa de qubits lógicos de uma rede L^D

Um tuplo ordenado de irreps conta uma vez, seja qual for a
multiplicidade do singleto no produto.

Autor: Sistema Rede SU(3)
Data: 2025
"""

import logging
import math
from collections import Counter
from concurrent.futures import ThreadPoolExecutor
from dataclasses import replace
from itertools import product

import numpy as np
from django.conf import settings

from core.parallel import worker_count
from gauge_basis.geometry import local_plaquette
from gauge_basis.services import enumerate_physical, plaquette_neighbors
from hamiltonian.services import box_element
from su3_irreps.domain import Truncation
from su3_irreps.services import coleman_decompose

from .domain import PolynomialFit, ScalingTable

logger = logging.getLogger(__name__)


def _truncation(lam):
    return lam if isinstance(lam, Truncation) else Truncation.symmetric(int(lam))


def _check_lambda(lam):
    if not isinstance(lam, Truncation) and int(lam) < 0:
        raise ValueError(f'O corte Λ deve ser não negativo, recebido {lam}')


def _support(r1, r2):
    return frozenset(coleman_decompose(r1, r2))


def count_3pt_singlets(lam):
    """
    Tuplos (r1,r2,r3) com p,q ≤ Λ cujo produto contém um singleto

    Para cada par (r2,r3) conta as irreps distintas de r2⊗r3 cuja
    conjugada está no truncamento.

    Args:
        lam: corte Λ ou Truncation

    Returns:
        int: número de vértices de três pontos físicos
    """
    _check_lambda(lam)
    trunc = _truncation(lam)
    irreps = trunc.irreps()

    def outer(r2):
        return sum(
            sum(1 for r in _support(r2, r3) if trunc.admits(r.conjugate()))
            for r3 in irreps
        )

    with ThreadPoolExecutor(max_workers=worker_count()) as pool:
        total = sum(pool.map(outer, irreps))
    logger.info(f'Vértices de três pontos com Λ={trunc}: {total}')
    return total


def count_4pt_singlets(lam):
    """
    Tuplos (r1,r2,r3,r4) com p,q ≤ Λ cujo produto contém um singleto

    Há singleto quando r1⊗r2 e r3⊗r4 partilham uma irrep e a conjugada.
    Os pares agrupam-se pelo conjunto de irreps do produto, e o cruzamento
    faz-se entre conjuntos distintos.

    Args:
        lam: corte Λ ou Truncation

    Returns:
        int: número de produtos de quatro irreps com singleto
    """
    _check_lambda(lam)
    trunc = _truncation(lam)
    irreps = trunc.irreps()
    left = Counter(_support(a, b) for a, b in product(irreps, repeat=2))
    right_items = [(frozenset(r.conjugate() for r in s), m) for s, m in left.items()]
    supports = sorted(left.items(), key=lambda item: sorted(item[0]))

    def outer(item):
        support, m = item
        return m * sum(n for other, n in right_items if not support.isdisjoint(other))

    with ThreadPoolExecutor(max_workers=worker_count()) as pool:
        total = sum(pool.map(outer, supports))
    logger.info(f'Vértices de quatro pontos com Λ={trunc}: {total} ({len(left)} suportes distintos)')
    return total


def count_plaquette_physical(trunc, geometry=None, plaquette=0):
    """
    Estados físicos e elementos ⟨out|□|in⟩ não nulos do plaquete local

    Args:
        trunc (Truncation): truncamento das oito ligações
        geometry: por omissão o plaquete local com quatro controlos

    Returns:
        tuple[int, int]: (estados, elementos de matriz)
    """
    geometry = local_plaquette() if geometry is None else geometry
    plaq = geometry.plaquettes[plaquette] if isinstance(plaquette, int) else plaquette
    configs = enumerate_physical(geometry, trunc)
    physical = set(configs)
    zero = settings.LATTICE['ZERO_TOL']

    def row(cfg):
        return sum(
            1 for target in plaquette_neighbors(cfg, plaq)
            if target in physical and abs(box_element(target, cfg, geometry, plaq)) >= zero
        )

    with ThreadPoolExecutor(max_workers=worker_count()) as pool:
        elements = sum(pool.map(row, configs))
    states = len(configs)
    logger.info(
        f'Plaquete com truncamento {trunc}: {states} estados, {elements} elementos '
        f'({elements / states:.2f} por estado)'
    )
    return states, elements


def scaling_table(name, counter, lambdas):
    """
    Tabela de contagens para uma sequência de cortes

    Raises:
        ValueError: contagens que não crescem com Λ
    """
    table = ScalingTable(name, tuple((lam, counter(lam)) for lam in lambdas))
    if not table.is_increasing():
        raise ValueError(f'As contagens de {name} não crescem estritamente com Λ')
    return table


def polynomial_fits(x, y, max_degree):
    """
    Ajustes de mínimos quadrados f(x) = Σ cₙxⁿ para n_max = 0..max_degree

    x é reescalado para [0,1] antes do ajuste; os coeficientes devolvidos
    são os da variável original.
    """
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    scale = float(x.max()) if x.size and x.max() > 0 else 1.0
    fits = []
    for degree in range(min(max_degree, x.size - 1) + 1):
        a = np.polynomial.polynomial.polyvander(x / scale, degree)
        c, *_ = np.linalg.lstsq(a, y, rcond=None)
        residual = float(np.linalg.norm(y - a @ c))
        coefficients = tuple(float(ci / scale ** n) for n, ci in enumerate(c))
        fits.append(PolynomialFit(degree, coefficients, residual))
    return fits


def plateau_degree(fits, y, factor=10.0, rtol=1e-6):
    """
    Menor grau cujo resíduo fica a um fator do melhor resíduo

    Resíduos abaixo de rtol·‖y‖ contam como ruído de arredondamento.
    """
    best = min(f.residual for f in fits)
    floor = max(factor * best, rtol * float(np.linalg.norm(y)))
    return min(f.degree for f in fits if f.residual <= floor)


def fit_scaling(table, max_degree=10, factor=10.0):
    """
    Relatório de ajuste de uma tabela de contagem

    Além dos ajustes por grau, o expoente local d ln N / d ln(Λ+1) entre
    os dois últimos cortes estima a potência dominante (Λ+1 valores por
    índice).

    Args:
        table (ScalingTable): contagens
        max_degree (int): grau máximo dos ajustes
        factor (float): tolerância do patamar face ao melhor resíduo

    Returns:
        ScalingTable: a mesma tabela com fits, plateau_degree e exponent
    """
    if max_degree < 0:
        raise ValueError('O grau máximo deve ser não negativo')
    x, y = table.lambdas, table.counts
    fits = polynomial_fits(x, y, max_degree)
    plateau = plateau_degree(fits, y, factor)
    exponent = None
    if len(x) >= 2 and y[-2] > 0 and y[-1] > 0:
        exponent = float(np.log(y[-1] / y[-2]) / np.log((x[-1] + 1) / (x[-2] + 1)))
    logger.info(
        f'Ajuste de {table.name}: patamar no grau {plateau}, expoente local '
        f'{exponent if exponent is None else round(exponent, 3)}'
    )
    return replace(table, fits=tuple(fits), plateau_degree=plateau, exponent=exponent)


def qubit_estimate(L, D, lam):
    """⌈2·L^D·log₂(Λ+1)⌉ qubits lógicos para a rede inteira"""
    if L < 1 or D < 1 or lam < 0:
        raise ValueError('L e D devem ser positivos e Λ não negativo')
    return math.ceil(2 * L ** D * math.log2(lam + 1))
