# su2_reference/services.py
"""
Localização gaussiana do estado fundamental SU(2) no espaço de j

Este módulo implementa:
- O hamiltoniano tridiagonal do plaquete SU(2) como OperatorMatrix
- O estado fundamental positivo, com a cauda obtida por razões
  ψ(j+1)/ψ(j) calculadas de j_max para trás
- O declive de log ψ₀ contra (j+½)² e a sua previsão contínua
- Convergência da energia fundamental em j_max

Os vetores próprios densos perdem a cauda abaixo de ~1e-16; as razões
mantêm precisão relativa em todo o intervalo.

Autor: Sistema Rede SU(3)
Data: 2025
"""

import csv
import logging
import math
from concurrent.futures import ThreadPoolExecutor

import numpy as np
from scipy import sparse
from scipy.linalg import eigh_tridiagonal

from core.exceptions import ToleranceError
from core.parallel import worker_count
from hamiltonian.domain import OperatorMatrix

from .domain import SU2PlaquetteModel

logger = logging.getLogger(__name__)

MIN_WINDOW = 4


def su2_hamiltonian(model):
    """
    Hamiltoniano do plaquete SU(2) nos coeficientes simbólicos de g

    Parte elétrica j(j+1); parte magnética −2(δ_{j+1,j'} + δ_{j−1,j'})
    com constante 4, para que (1/(2g²))(B + 4) reproduza o laplaciano.
    """
    n = model.dimension
    off = np.full(n - 1, -2.0)
    magnetic = sparse.diags([off, off], [1, -1], shape=(n, n), format='csr')
    return OperatorMatrix(
        labels=tuple(f'j={j}' for j in range(n)),
        electric_diag=tuple(j * (j + 1) for j in range(n)),
        magnetic=magnetic,
        constant=4.0,
        g=model.g,
    )


def ground_energy(model):
    w = eigh_tridiagonal(
        model.diagonal(), model.off_diagonal(), eigvals_only=True, select='i', select_range=(0, 0),
    )
    return float(w[0])


def _log_amplitudes(model, energy):
    """log ψ(j) − log ψ(0) pelas razões de trás para a frente"""
    d = model.diagonal() - energy
    c = 1 / model.g ** 2
    ratios = np.zeros(model.j_max)
    following = 0.0
    for j in range(model.j_max - 1, -1, -1):
        following = c / (d[j + 1] - c * following)
        ratios[j] = following
    if np.any(ratios <= 0):
        raise ToleranceError(f'Razões não positivas no estado fundamental de {model}')
    return np.concatenate(([0.0], np.cumsum(np.log(ratios))))


def ground_state(model):
    """
    Energia e amplitudes do estado fundamental

    Returns:
        tuple[float, np.ndarray]: E₀ e ψ₀ normalizado, com ψ₀(j) > 0
    """
    energy = ground_energy(model)
    logs = _log_amplitudes(model, energy)
    psi = np.exp(logs - logs.max())
    psi /= np.linalg.norm(psi)
    logger.debug(f'Estado fundamental SU(2) com j_max={model.j_max}, g={model.g}: E₀={energy:.12f}')
    return energy, psi


def tail_window(model):
    """
    Janela [⌈4/g⌉, min(j_max−4, ⌊√2/g²⌋)] do ajuste da cauda

    Acima de √2/g² o decaimento de log ψ₀ por passo em j passa de 1 e a
    cauda discreta deixa de ser gaussiana.

    Raises:
        ValueError: janela com menos de MIN_WINDOW valores de j
    """
    lo = math.ceil(4 / model.g)
    hi = min(model.j_max - 4, math.floor(math.sqrt(2) / model.g ** 2))
    if hi - lo + 1 < MIN_WINDOW:
        raise ValueError(
            f'Janela da cauda [{lo}, {hi}] demasiado pequena para g={model.g}, j_max={model.j_max}'
        )
    return lo, hi


def tail_slope(model, window=None):
    """
    Declive de mínimos quadrados de log ψ₀(j) contra (j+½)²

    Args:
        model (SU2PlaquetteModel): modelo
        window (tuple): (j_min, j_max) do ajuste; por omissão tail_window

    Returns:
        float: declive, a comparar com model.predicted_slope()
    """
    lo, hi = tail_window(model) if window is None else window
    if hi - lo + 1 < MIN_WINDOW or lo < 0 or hi > model.j_max:
        raise ValueError(f'Janela da cauda inválida: [{lo}, {hi}]')
    logs = _log_amplitudes(model, ground_energy(model))
    j = np.arange(lo, hi + 1)
    slope, _ = np.polyfit((j + 0.5) ** 2, logs[lo:hi + 1], 1)
    logger.info(
        f'Cauda SU(2) g={model.g}: declive {slope:.5f}, previsto {model.predicted_slope():.5f}'
    )
    return float(slope)


def tail_slope_sweep(g_values, j_max):
    """Declives medidos e previstos para vários acoplamentos"""
    def one(g):
        model = SU2PlaquetteModel(j_max, g)
        return g, tail_slope(model), model.predicted_slope()

    with ThreadPoolExecutor(max_workers=worker_count()) as pool:
        return list(pool.map(one, g_values))


def ground_energy_convergence(g, j_max_values):
    """Energia fundamental para cada corte j_max"""
    return [(j_max, ground_energy(SU2PlaquetteModel(j_max, g))) for j_max in j_max_values]


def dump_ground_state_csv(path, model):
    energy, psi = ground_state(model)
    with open(path, 'w', newline='', encoding='utf-8') as fh:
        fh.write('# schema=1\n')
        fh.write(f'# g={model.g:.6g} j_max={model.j_max} E0={energy:.15g}\n')
        writer = csv.writer(fh)
        writer.writerow(['j', 'psi0'])
        for j, a in enumerate(psi):
            writer.writerow([j, f'{a:.15e}'])
    logger.info(f'Estado fundamental SU(2) exportado para {path}')
