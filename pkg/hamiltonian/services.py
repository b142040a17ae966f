# hamiltonian/services.py
"""
Montagem dos hamiltonianos elétrico e magnético

Este módulo implementa:
- Elementos de matriz do plaquete a partir dos tensores de vértice
- Matriz de □+□† sobre um conjunto de configurações
- Hamiltoniano sobre bases locais ou globais
- Redução à paridade de cor positiva
- Hamiltoniano de um plaquete nos índices (p,q)

Autor: Sistema Rede SU(3)
Data: 2025
"""

import logging
from concurrent.futures import ThreadPoolExecutor
from functools import lru_cache

import numpy as np
from django.conf import settings
from scipy import sparse

from core.parallel import worker_count
from gauge_basis.services import (
    plaquette_neighbors,
    signs_from_permutation,
    vertex_ends,
)
from su3_clebsch.cg import intertwiners
from su3_clebsch.vertex import vertex_tensor
from su3_irreps.domain import Direction, Irrep
from su3_irreps.services import tensor_fundamental

from .domain import OperatorMatrix

logger = logging.getLogger(__name__)

FUNDAMENTAL = Irrep(1, 0)


@lru_cache(maxsize=None)
def _link_step(r_in, r_out, forward):
    """Entrelaçador (d, 3, d') do operador de ligação, ou None se proibido"""
    direction = Direction.FUND if forward else Direction.ANTIFUND
    if r_out not in tensor_fundamental(r_in, direction):
        return None
    return intertwiners((r_in, False), (FUNDAMENTAL, not forward), r_out)[0]


@lru_cache(maxsize=None)
def _vertex_factor(ends_in, ends_out, positions, forwards):
    """
    Contração dos tensores de vértice com os operadores de ligação

    F = Σ T[a,b,r] T'[x,y,r] W_i[a,u,x] W_j[b,u,y]
    """
    t_in, t_out = vertex_tensor(ends_in), vertex_tensor(ends_out)
    if t_in is None or t_out is None:
        return 0.0
    i, j = positions
    w_i = _link_step(ends_in[i][0], ends_out[i][0], forwards[0])
    w_j = _link_step(ends_in[j][0], ends_out[j][0], forwards[1])
    if w_i is None or w_j is None:
        return 0.0
    a = np.moveaxis(t_in, (i, j), (0, 1))
    b = np.moveaxis(t_out, (i, j), (0, 1))
    a = a.reshape(a.shape[0], a.shape[1], -1)
    b = b.reshape(b.shape[0], b.shape[1], -1)
    return float(np.einsum('abr,xyr,aux,buy->', a, b, w_i, w_j))


def resolve_plaquette(geometry, plaquette):
    if isinstance(plaquette, int):
        return geometry.plaquettes[plaquette]
    if isinstance(plaquette, str):
        for p in geometry.plaquettes:
            if p.name == plaquette:
                return p
        raise ValueError(f'Plaquete desconhecido: {plaquette!r}')
    return plaquette


def box_element(cfg_out, cfg_in, geometry, plaquette):
    """
    ⟨cfg_out|□|cfg_in⟩ para um plaquete

    Produto do fator √(d/d') de cada ligação ativa pelos fatores de
    vértice dos quatro cantos; 0.0 para transições proibidas.
    """
    plaquette = resolve_plaquette(geometry, plaquette)
    active = dict(plaquette.active)
    for i in range(geometry.n_links):
        if i not in active and cfg_out[i] != cfg_in[i]:
            return 0.0
    value = 1.0
    for link, forward in plaquette.active:
        r_in, r_out = cfg_in[link], cfg_out[link]
        if _link_step(r_in, r_out, forward) is None:
            return 0.0
        value *= np.sqrt(r_in.dimension / r_out.dimension)
    for vi, positions in geometry.plaquette_vertices(plaquette):
        vertex = geometry.vertices[vi]
        forwards = tuple(active[vertex.ends[k][0]] for k in positions)
        value *= _vertex_factor(
            vertex_ends(vertex, cfg_in.irreps),
            vertex_ends(vertex, cfg_out.irreps),
            positions,
            forwards,
        )
        if value == 0.0:
            return 0.0
    return value


def plaquette_matrix_element(cfg_out, cfg_in, geometry, plaquette=0):
    """
    Elementos (□, □†) entre duas configurações

    Args:
        cfg_out (LinkConfig): configuração final
        cfg_in (LinkConfig): configuração inicial
        geometry (LatticeGeometry): geometria
        plaquette: índice, nome ou objeto do plaquete

    Returns:
        tuple[float, float]: ⟨out|□|in⟩ e ⟨out|□†|in⟩ = ⟨in|□|out⟩
    """
    plaquette = resolve_plaquette(geometry, plaquette)
    return (
        box_element(cfg_out, cfg_in, geometry, plaquette),
        box_element(cfg_in, cfg_out, geometry, plaquette),
    )


def config_magnetic_matrix(configs, geometry, plaquettes=None):
    """
    Matriz simétrica de Σ_p (□_p + □_p†) sobre as configurações

    A montagem é particionada por linhas entre trabalhadores.

    Returns:
        scipy.sparse.csr_matrix: entradas abaixo de ZERO_TOL descartadas
    """
    configs = list(configs)
    position = {c: i for i, c in enumerate(configs)}
    plaquettes = geometry.plaquettes if plaquettes is None else [
        resolve_plaquette(geometry, p) for p in plaquettes
    ]
    zero = settings.LATTICE['ZERO_TOL']

    def row(i):
        cfg = configs[i]
        entries = {}
        for plaquette in plaquettes:
            for dagger in (False, True):
                for target in plaquette_neighbors(cfg, plaquette, dagger):
                    j = position.get(target)
                    if j is None:
                        continue
                    if dagger:
                        value = box_element(cfg, target, geometry, plaquette)
                    else:
                        value = box_element(target, cfg, geometry, plaquette)
                    entries[j] = entries.get(j, 0.0) + value
        return [(j, i, v) for j, v in entries.items() if abs(v) >= zero]

    with ThreadPoolExecutor(max_workers=worker_count()) as pool:
        triplets = [t for part in pool.map(row, range(len(configs))) for t in part]
    n = len(configs)
    if triplets:
        rows, cols, data = zip(*triplets)
    else:
        rows, cols, data = (), (), ()
    m = sparse.csr_matrix((data, (rows, cols)), shape=(n, n))
    logger.debug(f'Matriz magnética de configurações: {n}×{n}, {m.nnz} entradas')
    return m


def _drop_small(m):
    m = sparse.csr_matrix(m)
    m.data[np.abs(m.data) < settings.LATTICE['ZERO_TOL']] = 0.0
    m.eliminate_zeros()
    return m


def build_hamiltonian(basis, g=1.0, include_constant=True):
    """
    Hamiltoniano de Kogut-Susskind sobre uma base

    Para bases globais, a matriz de configurações é projetada nos
    estados simetrizados: B = Vᵀ M V.

    Args:
        basis (LatticeBasis): base local ou global
        g (float): acoplamento
        include_constant (bool): inclui o termo constante por plaquete

    Returns:
        OperatorMatrix: operador com partes elétrica e magnética separadas

    Raises:
        ValueError: se a base estiver vazia ou g ≤ 0
    """
    if basis.dimension == 0:
        raise ValueError('Não é possível montar o hamiltoniano numa base vazia')
    if g <= 0:
        raise ValueError('O acoplamento g deve ser positivo')
    m = config_magnetic_matrix(basis.configs, basis.geometry)
    if basis.is_global:
        v = basis.vectors()
        magnetic = _drop_small(-(v.T @ m.toarray() @ v))
    else:
        magnetic = _drop_small(-m)
    operator = OperatorMatrix(
        labels=tuple(basis.labels()),
        electric_diag=tuple(basis.casimirs()),
        magnetic=magnetic,
        constant=float(basis.geometry.magnetic_constant()),
        g=g,
        include_constant=include_constant,
        elements=tuple(basis.elements()),
    )
    if not operator.is_symmetric():
        logger.warning('Parte magnética não simétrica acima da tolerância')
    logger.info(f'Hamiltoniano montado: dimensão {operator.dimension}, {magnetic.nnz} entradas magnéticas')
    return operator


def color_parity_reduce(operator):
    """
    Projeta o operador nos estados de paridade de cor positiva

    |R⁺⟩ = (|R⟩ + s|R̄⟩)/√2 para pares conjugados e |R⟩ para elementos
    reais; os sinais s vêm da comutação com a parte magnética.

    Raises:
        ValueError: se os elementos da base não souberem conjugar-se
    """
    elements = operator.elements
    if not elements or not all(hasattr(e, 'conjugate') for e in elements):
        raise ValueError('A redução de paridade de cor precisa de elementos conjugáveis')
    position = {e: i for i, e in enumerate(elements)}
    try:
        perm = np.array([position[e.conjugate()] for e in elements])
    except KeyError as e:
        raise ValueError('Base não fechada sob conjugação de cor') from e
    start = int(np.argmin([float(c) for c in operator.electric_diag]))
    signs = signs_from_permutation(perm, operator.magnetic, start)

    columns, labels, electric = [], [], []
    for i in range(len(elements)):
        j = perm[i]
        if j < i:
            continue
        v = np.zeros(len(elements))
        if j == i:
            if signs[i] < 0:
                continue
            v[i] = 1.0
            labels.append(operator.labels[i])
        else:
            v[i] = 1 / np.sqrt(2)
            v[j] = signs[i] / np.sqrt(2)
            labels.append(_plus_label(elements[i]))
        columns.append(v)
        electric.append(operator.electric_diag[i])
    v = np.column_stack(columns)
    magnetic = _drop_small(v.T @ operator.magnetic.toarray() @ v)
    logger.info(f'Redução de paridade de cor: {len(elements)} → {len(labels)} estados')
    return OperatorMatrix(
        labels=tuple(labels),
        electric_diag=tuple(electric),
        magnetic=magnetic,
        constant=operator.constant,
        g=operator.g,
        include_constant=operator.include_constant,
    )


def _plus_label(element):
    if isinstance(element, Irrep):
        r = element if element.p >= element.q else element.conjugate()
        return f'{r.label()}+'
    return f'{element.label()}+'


def one_plaquette_pq_hamiltonian(trunc, g=1.0, include_constant=True):
    """
    Hamiltoniano de um plaquete indexado pelas irreps (p,q)

    Diagonal elétrica 4·Casimir e □ com elemento 1 entre (p,q) e cada
    termo de (p,q)⊗3 dentro do truncamento.

    Args:
        trunc (Truncation): truncamento
        g (float): acoplamento

    Returns:
        OperatorMatrix: elementos são as irreps ordenadas
    """
    irreps = trunc.irreps()
    position = {r: i for i, r in enumerate(irreps)}
    n = len(irreps)
    rows, cols = [], []
    for r in irreps:
        for target in tensor_fundamental(r):
            if target in position:
                rows += [position[target], position[r]]
                cols += [position[r], position[target]]
    box = sparse.csr_matrix((np.ones(len(rows)), (rows, cols)), shape=(n, n))
    logger.debug(f'Hamiltoniano (p,q) de um plaquete com {n} irreps')
    return OperatorMatrix(
        labels=tuple(r.label() for r in irreps),
        electric_diag=tuple(4 * r.casimir for r in irreps),
        magnetic=-box,
        constant=6.0,
        g=g,
        include_constant=include_constant,
        elements=tuple(irreps),
    )
