# cli/services.py
"""
Execução dos subcomandos a partir de uma RunConfig

Cada função recebe a configuração validada, escreve os ficheiros de
dados no diretório de saída e devolve a lista de caminhos escritos.
Todos os ficheiros começam com a linha "# schema=1" (CSV) ou com a
chave "schema" (JSON).

Autor: Sistema Rede SU(3)
Data: 2025
"""

import csv
import json
import logging
from itertools import product
from pathlib import Path

import numpy as np

from counting.services import (
    count_3pt_singlets,
    count_4pt_singlets,
    count_plaquette_physical,
    fit_scaling,
    scaling_table,
)
from evolution.benchmarks import dump_benchmark_csv, run_benchmarks
from evolution.domain import StateVector
from evolution.schemes import NAMED_OPERATORS, even_odd_scheme, named_scheme
from evolution.services import (
    convergence_sweep,
    dump_sweep_csv,
    exact_evolve,
    find_first_extrema,
    fit_log_deviation,
    trotter_evolve,
)
from gauge_basis.geometry import build_geometry
from gauge_basis.services import SECTOR_ORDER, global_basis, local_basis, singlet_basis
from hamiltonian.services import build_hamiltonian, color_parity_reduce
from local_plaquette.circuits import Encoding, compile_sector_circuit
from local_plaquette.domain import Completion
from local_plaquette.services import build_all_generators, local_trotter_evolve
from su2_reference.domain import SU2PlaquetteModel
from su2_reference.services import dump_ground_state_csv, tail_slope

logger = logging.getLogger(__name__)

SCHEMA = 1


def _output_dir(config):
    path = Path(config.out)
    path.mkdir(parents=True, exist_ok=True)
    return path


def _g_tag(g):
    return f'g{g:g}'


def dump_rows(path, columns, rows, fmt='csv'):
    """
    Tabela genérica em CSV (com cabeçalho de esquema) ou em JSON
    """
    rows = [list(r) for r in rows]
    with open(path, 'w', newline='', encoding='utf-8') as fh:
        if fmt == 'json':
            json.dump({'schema': SCHEMA, 'columns': list(columns), 'rows': rows}, fh, indent=1)
            fh.write('\n')
        else:
            fh.write(f'# schema={SCHEMA}\n')
            writer = csv.writer(fh)
            writer.writerow(columns)
            writer.writerows(rows)
    logger.info(f'{len(rows)} linhas exportadas para {path}')
    return path


def dump_json(path, payload):
    with open(path, 'w', encoding='utf-8') as fh:
        json.dump({'schema': SCHEMA, **payload}, fh, indent=1)
        fh.write('\n')
    logger.info(f'Relatório exportado para {path}')
    return path


def _sector_names(geometry):
    return tuple(n for n in SECTOR_ORDER if n in geometry.symmetries)


def _all_plus(geometry):
    return '+' * len(_sector_names(geometry))


def spectrum_blocks(config):
    """
    Operadores (rótulo, OperatorMatrix) de cada bloco do espectro

    No modo global percorre os setores pedidos (por omissão todas as
    combinações de sinais) e omite os vazios.
    """
    geometry = build_geometry(config.geometry)
    if config.mode == 'local':
        return [('local', build_hamiltonian(local_basis(geometry, config.trunc)))]
    if config.mode == 'color_parity':
        operator = build_hamiltonian(singlet_basis(geometry, config.trunc))
        return [('C+', color_parity_reduce(operator))]

    names = _sector_names(geometry)
    sectors = config.sectors or tuple(''.join(s) for s in product('+-', repeat=len(names)))
    blocks = []
    for sector in sectors:
        basis = global_basis(geometry, config.trunc, sector)
        if basis.dimension == 0:
            logger.info(f'Setor {sector} vazio com truncamento {config.trunc}')
            continue
        blocks.append((sector, build_hamiltonian(basis)))
    if not blocks:
        raise ValueError(f'Nenhum setor com estados em {config.geometry} com {config.trunc}')
    return blocks


def run_spectrum(config):
    """
    Níveis g²E de cada setor numa grelha de acoplamentos

    Returns:
        list[Path]: o ficheiro spectrum.<formato>
    """
    rows = []
    for label, operator in spectrum_blocks(config):
        for g in config.g:
            for index, energy in enumerate(np.linalg.eigvalsh(operator.dense(g))):
                rows.append((label, index, f'{g:.6g}', f'{g * g * energy:.12g}'))
    path = _output_dir(config) / f'spectrum.{config.format}'
    dump_rows(path, ['sector', 'index', 'g', 'g2E'], rows, config.format)
    return [path]


def _evolve_basis(config, geometry):
    if config.mode == 'local':
        return local_basis(geometry, config.trunc)
    if config.mode == 'color_parity':
        return singlet_basis(geometry, config.trunc)
    sector = config.sectors[0] if config.sectors else _all_plus(geometry)
    return global_basis(geometry, config.trunc, sector)


def evolve_trajectory(config, g):
    """
    Trajetória de ⟨H_E⟩ e da persistência a partir do vácuo elétrico

    O esquema 'exact' usa a exponencial exata numa grelha de passo dt; os
    restantes aplicam round(t_max/dt) etapas de Trotter.
    """
    n_steps = int(round(config.tmax / config.dt))
    if config.scheme in NAMED_OPERATORS:
        scheme = named_scheme(config.scheme, g, order=config.order, dt=config.dt)
        return trotter_evolve(scheme, n_steps=n_steps)

    geometry = build_geometry(config.geometry)
    if config.scheme == 'local_qudit':
        return local_trotter_evolve(
            geometry, config.trunc, g, config.dt, n_steps, config.order, config.split_terms,
        )
    basis = _evolve_basis(config, geometry)
    if config.scheme == 'even_odd':
        if config.mode == 'color_parity':
            raise ValueError('O esquema even_odd não tem versão de paridade de cor')
        scheme = even_odd_scheme(basis, g, config.order, config.dt)
        return trotter_evolve(scheme, n_steps=n_steps)

    operator = build_hamiltonian(basis, g)
    if config.mode == 'color_parity':
        operator = color_parity_reduce(operator)
    times = config.dt * np.arange(n_steps + 1)
    return exact_evolve(operator, StateVector.vacuum(operator), times, label='exact')


def _trajectory_rows(trajectory):
    return [
        (f'{t:.10g}', f'{p:.12g}', f'{e:.12g}', '' if leak is None else f'{leak:.3e}')
        for t, p, e, leak in trajectory.rows()
    ]


def _cell(value):
    return '-' if value is None else f'{value:.6f}'


def run_evolve(config):
    """
    Uma trajetória por acoplamento e, opcionalmente, os primeiros extremos

    Returns:
        list[Path]: ficheiros de trajetória e de extremos
    """
    out = _output_dir(config)
    paths, extrema_rows = [], []
    for g in config.g:
        trajectory = evolve_trajectory(config, g)
        path = out / f'evolve_{config.scheme}_{_g_tag(g)}.{config.format}'
        if config.format == 'csv':
            trajectory.to_csv(path)
        else:
            dump_rows(path, ['t', 'persistence', 'electric_energy', 'leakage'],
                      _trajectory_rows(trajectory), 'json')
        paths.append(path)
        if trajectory.leakage is not None:
            logger.info(f'g={g}: fuga de gauge máxima {trajectory.max_leakage():.2e}')
        if config.extrema:
            e = find_first_extrema(trajectory)
            extrema_rows.append((
                f'{g:.6g}', _cell(e.e_max), _cell(e.t_max), _cell(e.e_min), _cell(e.t_min),
            ))
    if config.extrema:
        path = out / f'extrema_{config.scheme}.{config.format}'
        dump_rows(path, ['g', 'e_max', 't_max_at', 'e_min', 't_min_at'], extrema_rows, config.format)
        paths.append(path)
    return paths


def run_converge(config):
    """
    Desvio percentual face ao maior Λ e ajuste de log(desvio) contra Λ²
    """
    out = _output_dir(config)
    rows = convergence_sweep(config.observable, config.g, config.lambdas, config.time)
    path = out / f'converge_{config.observable}.{config.format}'
    if config.format == 'csv':
        dump_sweep_csv(path, rows)
    else:
        dump_rows(path, ['g', 'lambda', 'observable', 'deviation_percent'], [
            (r.g, r.lam, r.value, r.deviation_percent) for r in rows
        ], 'json')
    fits = fit_log_deviation(rows)
    fit_path = dump_json(out / f'converge_{config.observable}_fits.json', {
        'observable': config.observable,
        'fits': [
            {'g': g, 'slope': f.slope, 'intercept': f.intercept, 'r2': f.r2, 'points': f.n_points}
            for g, f in fits.items()
        ],
    })
    return [path, fit_path]


def run_count(config):
    """
    Tabelas de vértices de três e quatro pontos, ajustes e contagem do
    plaquete com o truncamento da configuração
    """
    out = _output_dir(config)
    paths = []
    tables = []
    for name, counter in (('three_point', count_3pt_singlets), ('four_point', count_4pt_singlets)):
        table = fit_scaling(scaling_table(name, counter, config.lambdas), config.max_degree)
        path = out / f'{name}.{config.format}'
        if config.format == 'csv':
            table.dump_csv(path)
        else:
            table.dump_json(path)
        paths.append(path)
        tables.append(table)
    paths.append(dump_json(out / 'count_fits.json', {'tables': [t.to_json() for t in tables]}))

    states, elements = count_plaquette_physical(config.trunc, build_geometry(config.geometry))
    paths.append(dump_rows(
        out / f'plaquette.{config.format}', ['truncation', 'states', 'elements', 'ratio'],
        [(str(config.trunc), states, elements, f'{elements / states:.2f}')], config.format,
    ))
    return paths


def run_compile(config):
    """
    Circuitos de todos os setores de controlo de um plaquete

    Setores completados sem cadeias 𝒳 ficam registados sem circuito.
    """
    out = _output_dir(config)
    geometry = build_geometry(config.geometry)
    encoding = Encoding(config.encoding)
    sectors, rows = [], []
    for gen in build_all_generators(config.trunc, geometry):
        entry = {'sector': gen.sector.label(), 'generator': gen.to_json(), 'circuit': None}
        if gen.completion is Completion.XSTRING:
            circuit = compile_sector_circuit(gen, encoding=encoding, geometry=geometry)
            counts = circuit.gate_counts()
            entry['circuit'] = circuit.to_json()
            entry['gate_counts'] = counts
            rows.append((gen.sector.label(), counts.get('rotations', 0),
                         counts.get('controlled_paulis', 0), counts.get('total', 0)))
        else:
            logger.warning(f'Setor {gen.sector} completado com {gen.completion.value}: sem circuito')
            rows.append((gen.sector.label(), '-', '-', '-'))
        sectors.append(entry)
    circuits = dump_json(out / 'circuits.json', {
        'geometry': config.geometry,
        'truncation': str(config.trunc),
        'encoding': encoding.value,
        'sectors': sectors,
    })
    resources = dump_rows(
        out / f'resources.{config.format}',
        ['sector', 'rotations', 'controlled_paulis', 'total'], rows, config.format,
    )
    logger.info(f'{len(sectors)} setores compilados ({encoding.value})')
    return [circuits, resources]


def run_benchmark(config):
    """Tabela de extremos das curvas exatas e de Trotter de referência"""
    out = _output_dir(config)
    results = run_benchmarks(g=config.g[0], t_max=config.tmax)
    path = out / f'benchmark.{config.format}'
    if config.format == 'csv':
        dump_benchmark_csv(path, results)
    else:
        dump_rows(path, ['system', 'steps', 'order', 'g', 't_max', 'e_max', 't_max_at', 'e_min', 't_min_at'], [
            (r.row.system, r.row.steps, r.row.order, r.g, r.t_max,
             r.extrema.e_max, r.extrema.t_max, r.extrema.e_min, r.extrema.t_min)
            for r in results
        ], 'json')
    return [path]


def run_su2_tail(config):
    """Declive da cauda e estado fundamental SU(2) de cada acoplamento"""
    out = _output_dir(config)
    paths, rows = [], []
    for g in config.g:
        model = SU2PlaquetteModel(config.j_max, g)
        slope = tail_slope(model, config.window)
        predicted = model.predicted_slope()
        rows.append((f'{g:.6g}', config.j_max, f'{slope:.8g}', f'{predicted:.8g}',
                     f'{abs(slope - predicted) / abs(predicted):.4f}'))
        psi_path = out / f'su2_psi_{_g_tag(g)}.csv'
        dump_ground_state_csv(psi_path, model)
        paths.append(psi_path)
    paths.insert(0, dump_rows(
        out / f'su2_tail.{config.format}',
        ['g', 'j_max', 'slope', 'predicted', 'relative_deviation'], rows, config.format,
    ))
    return paths


RUNNERS = {
    'spectrum': run_spectrum,
    'evolve': run_evolve,
    'converge': run_converge,
    'count': run_count,
    'compile': run_compile,
    'benchmark': run_benchmark,
    'su2_tail': run_su2_tail,
}


def run(config):
    """Executa o subcomando da configuração"""
    return RUNNERS[config.subcommand](config)
