# evolution/services.py
"""
Evolução temporal e observáveis

Este módulo implementa:
- Evolução exata por decomposição espectral (ou ação de Krylov acima de
  EXACT_DENSE_MAX)
- Evolução de Trotter estroboscópica e com número fixo de etapas
- Primeiro mínimo e primeiro máximo de ⟨H_E⟩ com refinamento parabólico
- Varrimentos de convergência no truncamento de um plaquete
- Amplitudes do estado fundamental

Autor: Sistema Rede SU(3)
Data: 2025
"""

import csv
import enum
import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np
from django.conf import settings
from scipy.sparse.linalg import expm_multiply

from core.exceptions import check_tolerance
from core.parallel import worker_count
from hamiltonian.services import color_parity_reduce, one_plaquette_pq_hamiltonian
from su3_irreps.domain import Irrep, Truncation

from .domain import Extrema, StateVector, Trajectory

logger = logging.getLogger(__name__)

DT_SCAN = 0.005


def _initial(psi0, dimension):
    if psi0 is None:
        return StateVector.basis(dimension).amplitudes
    amplitudes = psi0.amplitudes if isinstance(psi0, StateVector) else np.asarray(psi0, complex)
    if amplitudes.size != dimension:
        raise ValueError(f'Estado de dimensão {amplitudes.size} para H de dimensão {dimension}')
    return amplitudes


def _observables(states, psi0, electric):
    """states tem uma coluna por tempo"""
    probabilities = np.abs(states) ** 2
    persistence = np.abs(psi0.conj() @ states) ** 2
    energy = electric @ probabilities
    return persistence, energy


def _uniform(times):
    times = np.asarray(times, dtype=float)
    if times.size < 3:
        return False
    steps = np.diff(times)
    return bool(np.allclose(steps, steps[0], rtol=1e-9, atol=1e-12))


def exact_evolve(operator, psi0=None, times=(0.0,), label='exact'):
    """
    Evolução exata e^{−iHt}|ψ₀⟩

    Args:
        operator (OperatorMatrix): hamiltoniano (o acoplamento é o do operador)
        psi0: StateVector ou amplitudes (por omissão o primeiro elemento)
        times: tempos
        label (str): rótulo da trajetória

    Returns:
        Trajectory: persistência e ⟨H_E⟩ em cada tempo

    Raises:
        ToleranceError: se ⟨H⟩ não se conservar
    """
    times = np.asarray(times, dtype=float)
    n = operator.dimension
    psi = _initial(psi0, n)
    electric = operator.electric_energy_operator()
    if n <= settings.LATTICE['EXACT_DENSE_MAX']:
        h = operator.dense()
        w, v = np.linalg.eigh(h)
        coefficients = v.conj().T @ psi
        states = v @ (np.exp(-1j * np.outer(w, times)) * coefficients[:, None])
        energies = np.real(np.einsum('it,it->t', states.conj(), h @ states))
        e0 = float(np.real(psi.conj() @ h @ psi))
        tolerance = 1e-10
    else:
        h = operator.sparse()
        logger.info(f'Evolução de Krylov: dimensão {n}, {times.size} tempos')
        if _uniform(times):
            states = expm_multiply(
                -1j * h, psi, start=times[0], stop=times[-1], num=times.size, endpoint=True,
            ).T
        else:
            states = np.column_stack([expm_multiply(-1j * t * h, psi) for t in times])
        energies = np.real(np.einsum('it,it->t', states.conj(), h @ states))
        e0 = float(np.real(psi.conj() @ (h @ psi)))
        tolerance = 1e-8
    check_tolerance(
        float(np.abs(energies - e0).max(initial=0.0)) / max(1.0, abs(e0)), tolerance,
        'conservação de ⟨H⟩',
    )
    persistence, energy = _observables(states, psi, electric)
    logger.debug(f'Evolução exata de dimensão {n} em {times.size} tempos')
    return Trajectory(times, persistence, energy, label=label)


def evolve_state(operator, psi0, t):
    """Estado e^{−iHt}|ψ₀⟩ num só tempo"""
    psi = _initial(psi0, operator.dimension)
    if operator.dimension <= settings.LATTICE['EXACT_DENSE_MAX']:
        w, v = np.linalg.eigh(operator.dense())
        return v @ (np.exp(-1j * w * t) * (v.conj().T @ psi))
    return expm_multiply(-1j * t * operator.sparse(), psi)


def trotter_evolve(scheme, psi0=None, n_steps=1):
    """
    Aplica n_steps etapas de passo scheme.dt

    Returns:
        Trajectory: observáveis em t = k·dt, k = 0…n_steps
    """
    if n_steps < 0:
        raise ValueError('O número de etapas não pode ser negativo')
    psi = _initial(psi0, scheme.dimension)
    u = scheme.step_unitary()
    states = [psi]
    for _ in range(n_steps):
        states.append(u @ states[-1])
    states = np.column_stack(states)
    drift = float(np.abs(np.linalg.norm(states, axis=0) - 1.0).max())
    if drift > 1e-12:
        logger.warning(f'Norma desviou {drift:.2e} em {n_steps} etapas de {scheme.name}')
    persistence, energy = _observables(states, psi, scheme.electric)
    times = scheme.dt * np.arange(n_steps + 1)
    return Trajectory(times, persistence, energy, label=f'{scheme.name}/o{scheme.order}')


def trotter_trace(scheme, psi0=None, times=(0.0,), n_steps=1):
    """
    Curva de Trotter com número fixo de etapas: Δt = t/n_steps em cada t

    É a curva que aproxima a evolução exata por n_steps etapas até t.
    """
    if n_steps < 1:
        raise ValueError('São precisas pelo menos uma etapa')
    times = np.asarray(times, dtype=float)
    psi = _initial(psi0, scheme.dimension)
    columns = []
    for t in times:
        u = scheme.step_unitary(t / n_steps)
        state = psi
        for _ in range(n_steps):
            state = u @ state
        columns.append(state)
    states = np.column_stack(columns)
    persistence, energy = _observables(states, psi, scheme.electric)
    return Trajectory(
        times, persistence, energy, label=f'{scheme.name}/o{scheme.order}/n{n_steps}',
    )


def scan_times(t_max, g=1.0, dt_scan=DT_SCAN):
    """Grelha uniforme de passo dt_scan/g² até t_max"""
    step = dt_scan / (g * g)
    return np.arange(int(np.floor(t_max / step + 1e-9)) + 1) * step


def _refine(times, values, i):
    """Vértice da parábola pelos pontos i−1, i, i+1"""
    y0, y1, y2 = values[i - 1], values[i], values[i + 1]
    curvature = y0 - 2 * y1 + y2
    if curvature == 0:
        return float(times[i]), float(y1)
    h = times[i + 1] - times[i]
    offset = 0.5 * h * (y0 - y2) / curvature
    return float(times[i] + offset), float(y1 - (y0 - y2) ** 2 / (8 * curvature))


def find_first_extrema(trajectory, observable='electric_energy'):
    """
    Primeiro mínimo e primeiro máximo interiores de um observável

    Args:
        trajectory (Trajectory): amostragem uniforme
        observable (str): 'electric_energy' ou 'persistence'

    Returns:
        Extrema: campos None quando o extremo não existe na janela

    Raises:
        ValueError: se a grelha de tempos não for uniforme
    """
    values = np.asarray(getattr(trajectory, observable), dtype=float)
    times = trajectory.times
    if times.size >= 3 and not _uniform(times):
        raise ValueError('O refinamento parabólico exige uma grelha uniforme')
    found = {}
    for i in range(1, values.size - 1):
        if 'max' not in found and values[i] > values[i - 1] and values[i] >= values[i + 1]:
            found['max'] = _refine(times, values, i)
        if 'min' not in found and values[i] < values[i - 1] and values[i] <= values[i + 1]:
            found['min'] = _refine(times, values, i)
        if len(found) == 2:
            break
    t_min, e_min = found.get('min', (None, None))
    t_max, e_max = found.get('max', (None, None))
    if 'min' not in found:
        logger.info(f'{trajectory.label}: sem mínimo interior até t={times[-1]:.3f}')
    return Extrema(t_min, e_min, t_max, e_max)


class Observable(str, enum.Enum):
    MASS_GAP = 'mass_gap'
    MASS_GAP_EVEN = 'mass_gap_even'
    PLAQUETTE_VEV = 'plaquette_vev'
    ELECTRIC_ENERGY = 'electric_energy'


@dataclass(frozen=True)
class SweepRow:
    g: float
    lam: int
    observable: str
    value: float
    deviation_percent: float


def _spectrum(operator):
    return np.linalg.eigh(operator.dense())


def mass_gap(operator):
    w = np.linalg.eigvalsh(operator.dense())
    if w.size < 2:
        raise ValueError('O espectro precisa de pelo menos dois níveis')
    return float(w[1] - w[0])


def plaquette_vev(operator):
    """⟨Ω|□+□†|Ω⟩ no estado fundamental"""
    w, v = _spectrum(operator)
    ground = v[:, 0]
    return float(-ground @ operator.magnetic_matrix(include_constant=False) @ ground)


def electric_energy_at(operator, t):
    """⟨H_E⟩(t) a partir do vácuo elétrico"""
    psi0 = StateVector.vacuum(operator)
    state = evolve_state(operator, psi0, t)
    return float(operator.electric_energy_operator() @ (np.abs(state) ** 2))


def observable_value(observable, g, lam, t=None):
    """Valor de um observável do plaquete isolado com truncamento Λ"""
    observable = Observable(observable)
    operator = one_plaquette_pq_hamiltonian(Truncation.symmetric(lam), g)
    if observable is Observable.MASS_GAP:
        return mass_gap(operator)
    if observable is Observable.MASS_GAP_EVEN:
        return mass_gap(color_parity_reduce(operator))
    if observable is Observable.PLAQUETTE_VEV:
        return plaquette_vev(operator)
    if t is None:
        raise ValueError('A energia elétrica precisa de um tempo t')
    return electric_energy_at(operator, t)


def convergence_sweep(observable, g_values, lambdas, t=None):
    """
    Desvio percentual de um observável face ao maior Λ de cada g

    Args:
        observable: Observable ou o seu valor em texto
        g_values: acoplamentos
        lambdas: cortes Λ (o maior é a referência)
        t (float | None): tempo para a energia elétrica

    Returns:
        list[SweepRow]: linhas por (g, Λ) com Λ crescente
    """
    observable = Observable(observable)
    lambdas = sorted(set(int(lam) for lam in lambdas))
    if not lambdas or lambdas[0] < 1:
        raise ValueError('Os cortes Λ devem ser inteiros positivos')
    cells = [(g, lam) for g in g_values for lam in lambdas]
    with ThreadPoolExecutor(max_workers=worker_count()) as pool:
        values = list(pool.map(lambda c: observable_value(observable, c[0], c[1], t), cells))
    table = dict(zip(cells, values))
    rows = []
    for g in g_values:
        reference = table[(g, lambdas[-1])]
        for lam in lambdas:
            value = table[(g, lam)]
            deviation = 0.0 if lam == lambdas[-1] else 100 * abs(value - reference) / abs(reference)
            rows.append(SweepRow(float(g), lam, observable.value, value, deviation))
    logger.info(f'Varrimento de {observable.value}: {len(g_values)} acoplamentos × {len(lambdas)} cortes')
    return rows


@dataclass(frozen=True)
class LogFit:
    slope: float
    intercept: float
    r2: float
    n_points: int


def fit_log_deviation(rows, floor=1e-12, min_lambda=1):
    """
    Ajuste linear de log10(desvio) em função de Λ², por acoplamento

    Pontos com desvio abaixo de floor (incluindo a referência) ficam de
    fora.

    Returns:
        dict: g → LogFit, só para acoplamentos com pelo menos três pontos
    """
    fits = {}
    for g in sorted({r.g for r in rows}):
        points = [
            (r.lam ** 2, np.log10(r.deviation_percent)) for r in rows
            if r.g == g and r.lam >= min_lambda and r.deviation_percent > floor
        ]
        if len(points) < 3:
            logger.warning(f'g={g}: apenas {len(points)} pontos acima de {floor:.0e}')
            continue
        x, y = map(np.array, zip(*points))
        slope, intercept = np.polyfit(x, y, 1)
        residual = y - (slope * x + intercept)
        total = ((y - y.mean()) ** 2).sum()
        r2 = 1.0 - (residual ** 2).sum() / total if total > 0 else 1.0
        fits[g] = LogFit(float(slope), float(intercept), float(r2), len(points))
    return fits


def dump_sweep_csv(path, rows):
    with open(path, 'w', newline='', encoding='utf-8') as fh:
        fh.write('# schema=1\n')
        writer = csv.writer(fh)
        writer.writerow(['g', 'lambda', 'observable', 'deviation_percent'])
        for r in rows:
            writer.writerow([f'{r.g:.6g}', r.lam, f'{r.value:.15g}', f'{r.deviation_percent:.6e}'])
    logger.info(f'{len(rows)} linhas de varrimento exportadas para {path}')


def ground_state_amplitudes(operator):
    """
    Amplitudes do estado fundamental por elemento da base

    A fase global é escolhida com a maior componente positiva.

    Returns:
        dict: elemento (ou rótulo) → amplitude real
    """
    _, v = _spectrum(operator)
    ground = v[:, 0].real
    if ground[np.argmax(np.abs(ground))] < 0:
        ground = -ground
    keys = operator.elements or operator.labels
    return {k: float(a) for k, a in zip(keys, ground)}


def amplitude_grid(amplitudes):
    """Reindexa amplitudes de irreps pela grelha (p−q, p+q)"""
    return {
        (r.p - r.q, r.p + r.q): a for r, a in amplitudes.items() if isinstance(r, Irrep)
    }
