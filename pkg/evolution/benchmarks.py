# evolution/benchmarks.py
"""
Extremos de ⟨H_E⟩ de um plaquete a partir do vácuo elétrico

Cada linha fixa a base, o truncamento e, para as linhas de Trotter, o
esquema, a ordem e o número de etapas até ao tempo t (Δt = t/etapas).

Autor: Sistema Rede SU(3)
Data: 2025
"""

import csv
import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

from core.parallel import worker_count
from hamiltonian.services import one_plaquette_pq_hamiltonian
from su3_irreps.domain import Truncation

from .schemes import color3_operator, color6_operator, global8_operator, named_scheme
from .services import exact_evolve, find_first_extrema, scan_times, trotter_trace

logger = logging.getLogger(__name__)

# p,q ≤ 8 já reproduz o limite sem truncamento com quatro casas decimais
FULL_LAMBDA = 8


@dataclass(frozen=True)
class BenchmarkRow:
    system: str
    steps: int = 0
    order: int = 0

    @property
    def is_exact(self):
        return self.steps == 0

    def key(self):
        return self.system if self.is_exact else f'{self.system}/n{self.steps}/o{self.order}'


BENCHMARK_ROWS = (
    BenchmarkRow('global_full'),
    BenchmarkRow('color3'),
    BenchmarkRow('global8'),
    BenchmarkRow('global8', 1, 2),
    BenchmarkRow('global8', 2, 2),
    BenchmarkRow('global8', 3, 2),
    BenchmarkRow('global8', 4, 2),
    BenchmarkRow('color6'),
    BenchmarkRow('color6', 1, 1),
    BenchmarkRow('color6', 2, 1),
    BenchmarkRow('color6', 1, 2),
)

_EXACT_OPERATORS = {
    'global_full': lambda g: one_plaquette_pq_hamiltonian(Truncation.symmetric(FULL_LAMBDA), g),
    'color3': color3_operator,
    'global8': global8_operator,
    'color6': color6_operator,
}


@dataclass(frozen=True)
class BenchmarkResult:
    row: BenchmarkRow
    g: float
    t_max: float
    extrema: object


def run_benchmark(row, g=1.0, t_max=8.0):
    """
    Curva de ⟨H_E⟩ de uma linha e os seus primeiros extremos

    Raises:
        ValueError: sistema desconhecido
    """
    if row.system not in _EXACT_OPERATORS:
        raise ValueError(f'Sistema de referência desconhecido: {row.system!r}')
    times = scan_times(t_max, g)
    if row.is_exact:
        trajectory = exact_evolve(_EXACT_OPERATORS[row.system](g), times=times, label=row.key())
    else:
        scheme = named_scheme(row.system, g, order=row.order)
        trajectory = trotter_trace(scheme, times=times, n_steps=row.steps)
    extrema = find_first_extrema(trajectory)
    logger.info(f'{row.key()}: máximo {extrema.e_max}, mínimo {extrema.e_min}')
    return BenchmarkResult(row, g, t_max, extrema)


def run_benchmarks(rows=BENCHMARK_ROWS, g=1.0, t_max=8.0):
    with ThreadPoolExecutor(max_workers=worker_count()) as pool:
        return list(pool.map(lambda r: run_benchmark(r, g, t_max), rows))


def _cell(value):
    return '-' if value is None else f'{value:.4f}'


def dump_benchmark_csv(path, results):
    """Tabela dos extremos; '-' marca um extremo ausente"""
    with open(path, 'w', newline='', encoding='utf-8') as fh:
        fh.write('# schema=1\n')
        writer = csv.writer(fh)
        writer.writerow(['system', 'steps', 'order', 'g', 't_max', 'e_max', 't_max_at', 'e_min', 't_min_at'])
        for r in results:
            e = r.extrema
            writer.writerow([
                r.row.system, r.row.steps or '-', r.row.order or '-', f'{r.g:g}', f'{r.t_max:g}',
                _cell(e.e_max), _cell(e.t_max), _cell(e.e_min), _cell(e.t_min),
            ])
    logger.info(f'{len(results)} linhas de extremos exportadas para {path}')
