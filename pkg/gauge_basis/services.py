# gauge_basis/services.py
"""
Enumeração de configurações físicas e projeção em setores de simetria

Este módulo implementa:
- Lei de Gauss em cada vértice (existência de singleto)
- Enumeração por retrocesso das configurações físicas
- Filtro de singletos globais (alcançáveis a partir do vácuo)
- Projeção nos setores de paridade de cor, translação e reflexão
- Exportação da base em CSV

Autor: Sistema Rede SU(3)
Data: 2025
"""

import csv
import logging
from collections import defaultdict, deque
from concurrent.futures import ThreadPoolExecutor
from functools import lru_cache
from itertools import product

import numpy as np
from django.conf import settings

from core.parallel import worker_count
from su3_irreps.domain import Direction, Irrep
from su3_irreps.services import singlet_multiplicity, tensor_fundamental

from .domain import GlobalState, LatticeBasis, LinkConfig

logger = logging.getLogger(__name__)

SINGLET = Irrep(0, 0)

SECTOR_ORDER = ('color_parity', 'translation', 'reflection')


def vertex_singlet_multiplicity(ends):
    """
    Multiplicidade do singleto num vértice

    Args:
        ends: pares (Irrep, ligação entrante); as ligações entrantes
            contribuem com a conjugada

    Returns:
        int: número de singletos no produto das extremidades

    Raises:
        ValueError: para vértices com menos de duas extremidades
    """
    ends = tuple(ends)
    if len(ends) < 2:
        raise ValueError('Um vértice precisa de pelo menos duas extremidades')
    return _vertex_multiplicity(ends)


@lru_cache(maxsize=None)
def _vertex_multiplicity(ends):
    return singlet_multiplicity([r.conjugate() if incoming else r for r, incoming in ends])


def vertex_ends(vertex, irreps):
    return tuple((irreps[i], incoming) for i, incoming in vertex.ends)


def is_physical(config, geometry):
    return all(
        _vertex_multiplicity(vertex_ends(v, config.irreps)) > 0 for v in geometry.vertices
    )


def _checks_by_link(geometry):
    """Vértices verificáveis assim que a ligação de maior índice é atribuída"""
    checks = defaultdict(list)
    for v in geometry.vertices:
        checks[max(v.link_indices())].append(v)
    return checks


def _extend(prefix, irreps, checks, n_links, out):
    k = len(prefix)
    if k == n_links:
        out.append(LinkConfig(tuple(prefix)))
        return
    for r in irreps:
        prefix.append(r)
        if all(_vertex_multiplicity(vertex_ends(v, prefix)) > 0 for v in checks.get(k, ())):
            _extend(prefix, irreps, checks, n_links, out)
        prefix.pop()


def enumerate_physical(geometry, trunc):
    """
    Todas as configurações que satisfazem a lei de Gauss em cada vértice

    A primeira ligação é particionada entre trabalhadores; o resultado é
    reordenado lexicograficamente depois da junção.

    Args:
        geometry (LatticeGeometry): geometria
        trunc (Truncation): truncamento local das ligações

    Returns:
        list[LinkConfig]: configurações físicas em ordem determinística
    """
    irreps = trunc.irreps()
    checks = _checks_by_link(geometry)
    n_links = geometry.n_links

    def branch(first):
        out = []
        prefix = [first]
        if all(_vertex_multiplicity(vertex_ends(v, prefix)) > 0 for v in checks.get(0, ())):
            _extend(prefix, irreps, checks, n_links, out)
        return out

    with ThreadPoolExecutor(max_workers=worker_count()) as pool:
        parts = list(pool.map(branch, irreps))
    configs = sorted(c for part in parts for c in part)
    logger.info(
        f'Base física enumerada: {len(configs)} configurações '
        f'({geometry}, truncamento {trunc})'
    )
    return configs


def plaquette_neighbors(config, plaquette, dagger=False):
    """
    Configurações alcançáveis por □ (ou □†) a partir de config

    Cada ligação ativa percorrida no seu sentido recebe um 3 sob □ e um
    3bar sob □†; no sentido inverso é o contrário.
    """
    choices = []
    for link, forward in plaquette.active:
        direction = Direction.FUND if forward != dagger else Direction.ANTIFUND
        choices.append([(link, r) for r in tensor_fundamental(config[link], direction)])
    for combo in product(*choices):
        yield config.replace(dict(combo))


def vacuum_config(geometry):
    return LinkConfig((SINGLET,) * geometry.n_links)


def global_singlet_filter(configs, geometry, casimir_cutoff=None):
    """
    Mantém as configurações ligadas ao vácuo trivial por □ e □†

    Args:
        configs: configurações físicas
        geometry (LatticeGeometry): geometria
        casimir_cutoff: corte opcional no Casimir elétrico total

    Returns:
        list[LinkConfig]: singletos globais em ordem determinística

    Raises:
        ValueError: se o vácuo não estiver entre as configurações
    """
    allowed = {
        c for c in configs if casimir_cutoff is None or c.casimir <= casimir_cutoff
    }
    vacuum = vacuum_config(geometry)
    if vacuum not in allowed:
        raise ValueError('O vácuo trivial não pertence às configurações dadas')
    reached = {vacuum}
    queue = deque([vacuum])
    while queue:
        config = queue.popleft()
        for plaquette in geometry.plaquettes:
            for dagger in (False, True):
                for target in plaquette_neighbors(config, plaquette, dagger):
                    if target in allowed and target not in reached:
                        reached.add(target)
                        queue.append(target)
    result = sorted(reached)
    logger.info(f'Filtro de singletos globais: {len(configs)} → {len(result)} configurações')
    return result


def symmetry_permutation(configs, link_map):
    """Índice da imagem de cada configuração sob o mapa"""
    position = {c: i for i, c in enumerate(configs)}
    perm = []
    for c in configs:
        image = LinkConfig(link_map.apply(c.irreps))
        if image not in position:
            raise ValueError(f'Conjunto de configurações não fechado sob a simetria: {c}')
        perm.append(position[image])
    return np.array(perm)


def symmetry_signs(configs, link_map, magnetic):
    """
    Sinais s_j de S|c_j⟩ = s_j |c_π(j)⟩ que fazem S comutar com o plaquete

    Os sinais propagam-se a partir do vácuo (+1) pelas entradas não nulas
    do operador magnético: s_j = s_i · M[πj,πi] / M[j,i].

    Args:
        configs: configurações (ordenadas)
        link_map (LinkMap): mapa de simetria
        magnetic: matriz esparsa de □+□† sobre as configurações

    Returns:
        tuple[np.ndarray, np.ndarray]: permutação e sinais
    """
    perm = symmetry_permutation(configs, link_map)
    start = next((i for i, c in enumerate(configs) if c.is_vacuum()), 0)
    return perm, signs_from_permutation(perm, magnetic, start)


def signs_from_permutation(perm, magnetic, start=0):
    """Propaga os sinais de uma permutação de simetria a partir de start"""
    m = magnetic.tocsr()
    n = len(perm)
    signs = np.zeros(n)
    signs[start] = 1.0
    queue = deque([start])
    while queue:
        i = queue.popleft()
        row = m.getrow(i)
        for j, value in zip(row.indices, row.data):
            if signs[j] != 0:
                continue
            ratio = m[perm[j], perm[i]] / value
            if abs(abs(ratio) - 1) > 1e-8:
                logger.warning(f'Razão de simetria {ratio:.6g} diferente de ±1 entre {i} e {j}')
            signs[j] = signs[i] * np.sign(ratio)
            queue.append(j)
    missing = np.flatnonzero(signs == 0)
    if missing.size:
        logger.warning(f'{missing.size} configurações sem sinal de simetria; usado +1')
        signs[missing] = 1.0
    return signs


def symmetry_matrix(perm, signs):
    n = len(perm)
    s = np.zeros((n, n))
    s[perm, np.arange(n)] = signs
    return s


def parse_sector(text, names=SECTOR_ORDER):
    """
    Converte "++-" (ou {"color_parity": 1, ...}) no dicionário de sinais
    """
    if isinstance(text, dict):
        return {k: int(v) for k, v in text.items()}
    text = str(text).strip()
    if not text or any(ch not in '+-' for ch in text) or len(text) > len(names):
        raise ValueError(f'Setor inválido: {text!r}')
    return {name: (1 if ch == '+' else -1) for name, ch in zip(names, text)}


def _orbits(n, perms):
    parent = list(range(n))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for perm in perms:
        for i, j in enumerate(perm):
            a, b = find(i), find(int(j))
            if a != b:
                parent[max(a, b)] = min(a, b)
    groups = defaultdict(list)
    for i in range(n):
        groups[find(i)].append(i)
    return [sorted(g) for _, g in sorted(groups.items())]


def project_symmetry(configs, geometry, sector, magnetic=None):
    """
    Combinações simetrizadas das configurações num setor

    Args:
        configs: configurações com filtro de singleto global
        geometry (LatticeGeometry): geometria com os mapas de simetria
        sector: dicionário nome → ±1 (ou texto "++", "+-+")
        magnetic: matriz de □+□† sobre configs (calculada se omitida)

    Returns:
        list[GlobalState]: estados ortonormados, ordenados por Casimir e
        pela primeira configuração; lista vazia se o setor não tiver estados
    """
    configs = sorted(configs)
    sector = parse_sector(sector, tuple(n for n in SECTOR_ORDER if n in geometry.symmetries))
    if magnetic is None:
        from hamiltonian.services import config_magnetic_matrix
        magnetic = config_magnetic_matrix(configs, geometry)

    zero = settings.LATTICE['ZERO_TOL']
    n = len(configs)
    projector = np.eye(n)
    perms = []
    operators = []
    for name, eigenvalue in sector.items():
        if name not in geometry.symmetries:
            raise ValueError(f'Simetria {name!r} não definida para {geometry}')
        perm, signs = symmetry_signs(configs, geometry.symmetries[name], magnetic)
        s = symmetry_matrix(perm, signs)
        perms.append(perm)
        operators.append(s)
        projector = projector @ (np.eye(n) + eigenvalue * s) / 2
    for a in range(len(operators)):
        for b in range(a + 1, len(operators)):
            if np.abs(operators[a] @ operators[b] - operators[b] @ operators[a]).max() > 1e-10:
                logger.warning('Operadores de simetria não comutam; projeção aproximada')

    states = []
    for orbit in _orbits(n, perms):
        vector = None
        for i in orbit:
            column = projector[:, i]
            if np.linalg.norm(column) > 1e-8:
                vector = column / np.linalg.norm(column)
                break
        if vector is None:
            continue
        vector[np.abs(vector) < zero] = 0.0
        support = np.flatnonzero(vector)
        if vector[support[0]] < 0:
            vector = -vector
        states.append(GlobalState(
            tuple((configs[k], float(vector[k])) for k in support), dict(sector),
        ))
    states.sort(key=lambda s: (s.casimir, s.leading_config()))
    logger.info(f'Setor {sector}: {len(states)} estados globais')
    return states


def local_basis(geometry, trunc):
    return LatticeBasis(geometry, tuple(enumerate_physical(geometry, trunc)), truncation=trunc)


def singlet_basis(geometry, trunc, casimir_cutoff=None):
    configs = global_singlet_filter(enumerate_physical(geometry, trunc), geometry, casimir_cutoff)
    return LatticeBasis(geometry, tuple(configs), truncation=trunc)


def global_basis(geometry, trunc, sector, casimir_cutoff=None):
    """
    Base global de um setor de simetria

    Returns:
        LatticeBasis: configurações com singleto global e estados do setor
    """
    configs = global_singlet_filter(enumerate_physical(geometry, trunc), geometry, casimir_cutoff)
    states = project_symmetry(configs, geometry, sector)
    return LatticeBasis(geometry, tuple(configs), tuple(states), trunc)


def dump_basis_csv(path, basis):
    """
    Uma linha por componente: (estado, Casimir, configuração, amplitude)
    """
    with open(path, 'w', newline='', encoding='utf-8') as fh:
        fh.write('# schema=1\n')
        writer = csv.writer(fh)
        writer.writerow(['state', 'casimir', 'config', 'amplitude'])
        if basis.is_global:
            for k, state in enumerate(basis.states):
                for config, amplitude in state.components:
                    writer.writerow([k, str(state.casimir), config.label(), f'{amplitude:.12g}'])
        else:
            for k, config in enumerate(basis.configs):
                writer.writerow([k, str(config.casimir), config.label(), '1'])
    logger.info(f'Base com {basis.dimension} elementos exportada para {path}')
