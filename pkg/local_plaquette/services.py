# local_plaquette/services.py
"""
Evolução do plaquete na base local de qudits

Este módulo implementa:
- Enumeração dos setores de controlo físicos e das suas órbitas sob
  paridades e conjugação
- Geradores de setor com coeficientes dos elementos de matriz do plaquete
- Rotações controladas pelo setor sobre um registo de qudits
- Evolução de Trotter na base local, com medida da fuga de gauge

Autor: Sistema Rede SU(3)
Data: 2025
"""

import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from functools import reduce
from itertools import combinations, product

import numpy as np
from django.conf import settings
from scipy import sparse

from core.parallel import worker_count
from evolution.domain import Trajectory
from gauge_basis.domain import LinkConfig
from gauge_basis.geometry import local_plaquette
from gauge_basis.services import enumerate_physical, vertex_ends, vertex_singlet_multiplicity
from hamiltonian.services import box_element, resolve_plaquette
from su3_irreps.domain import Irrep

from .domain import (
    TRANSFORM_WORDS,
    Completion,
    ControlSector,
    QuditRegister,
    SectorGenerator,
    SectorTerm,
)

logger = logging.getLogger(__name__)

SINGLET = Irrep(0, 0)

# Setores de onde os restantes se obtêm por paridades e conjugação
BASE_SECTORS = (
    '1,1,1,1',
    '1,1,3,3bar',
    '1,3,1,3',
    '1,3,3,1',
    '1,3,3bar,3bar',
    '3,3,3,3',
    '3,3bar,3,3bar',
    '3,3bar,3bar,3',
)


def qudit_levels(trunc):
    """Irreps do truncamento na ordem dos níveis do qudit"""
    return tuple(sorted(trunc.irreps(), key=lambda r: (r.casimir, -r.p, r.q)))


def parse_sector(text):
    """ControlSector a partir de "1,3,3bar,3bar" """
    labels = [t for t in str(text).replace(' ', '').split(',') if t]
    if len(labels) != 4:
        raise ValueError(f'Um setor precisa de quatro irreps de controlo: {text!r}')
    return ControlSector(tuple(Irrep.from_label(t) for t in labels))


@dataclass(frozen=True)
class PlaquetteFrame:
    """
    Ligações ativas, ligações de controlo distintas e vértices de um plaquete
    """

    geometry: object
    plaquette: object
    active: tuple
    controls: tuple
    control_links: tuple
    vertices: tuple

    @classmethod
    def build(cls, geometry=None, plaquette=0):
        geometry = local_plaquette() if geometry is None else geometry
        plaquette = resolve_plaquette(geometry, plaquette)
        if not plaquette.controls:
            raise ValueError(f'O plaquete {plaquette.name} não tem ligações de controlo')
        active = tuple(plaquette.active_links())
        control_links = tuple(dict.fromkeys(plaquette.controls))
        vertices = tuple(geometry.vertices[vi] for vi, _ in geometry.plaquette_vertices(plaquette))
        known = set(active) | set(control_links)
        for v in vertices:
            if not set(v.link_indices()) <= known:
                raise ValueError(f'O vértice {v.name} tem ligações fora do plaquete e dos controlos')
        return cls(geometry, plaquette, active, plaquette.controls, control_links, vertices)

    def control_assignment(self, sector):
        """Irrep de cada ligação de controlo distinta"""
        if len(sector.irreps) != len(self.controls):
            raise ValueError(f'O setor {sector} não tem {len(self.controls)} controlos')
        assignment = {}
        for link, irrep in zip(self.controls, sector.irreps):
            if assignment.setdefault(link, irrep) != irrep:
                raise ValueError(f'O setor {sector} atribui irreps diferentes à ligação {link}')
        return assignment

    def config(self, active_irreps, assignment):
        irreps = [SINGLET] * self.geometry.n_links
        for link, r in assignment.items():
            irreps[link] = r
        for link, r in zip(self.active, active_irreps):
            irreps[link] = r
        return LinkConfig(tuple(irreps))

    def is_physical(self, config):
        return all(
            vertex_singlet_multiplicity(vertex_ends(v, config.irreps)) > 0 for v in self.vertices
        )

    def active_states(self, levels, sector):
        """Estados ativos (níveis) fisicamente permitidos no setor"""
        assignment = self.control_assignment(sector)
        states = []
        for state in product(range(len(levels)), repeat=len(self.active)):
            if self.is_physical(self.config([levels[i] for i in state], assignment)):
                states.append(state)
        return states


def sector_orbit(sector):
    """Imagens do setor sob cada palavra de transformações"""
    return {word: sector.transformed(word) for word in TRANSFORM_WORDS}


def _orbit_metadata(sectors):
    known = {s.irreps: s for s in sectors}
    bases = [parse_sector(label).irreps for label in BASE_SECTORS]
    result = []
    for s in sectors:
        orbit = sector_orbit(s)
        images = {img.irreps: word for word, img in orbit.items()}
        base = next((b for b in bases if b in images), None)
        if base is None:
            base = min((irreps for irreps in images if irreps in known),
                       key=lambda irreps: tuple(r.sort_key for r in irreps))
        # as transformações são involuções que comutam
        result.append(ControlSector(s.irreps, ControlSector(base).label(), images[base]))
    return result


def enumerate_control_sectors(trunc, geometry=None, plaquette=0):
    """
    Setores de controlo com pelo menos um estado ativo físico

    Args:
        trunc (Truncation): truncamento das ligações
        geometry (LatticeGeometry): geometria; por omissão o plaquete local
        plaquette: índice, nome ou objeto do plaquete

    Returns:
        list[ControlSector]: setores na ordem dos níveis, com órbita e
        transformação a partir do setor base

    Raises:
        ValueError: se o plaquete não tiver controlos
    """
    frame = PlaquetteFrame.build(geometry, plaquette)
    levels = qudit_levels(trunc)
    sectors = []
    for values in product(levels, repeat=len(frame.control_links)):
        assignment = dict(zip(frame.control_links, values))
        sector = ControlSector(tuple(assignment[link] for link in frame.controls))
        if frame.active_states(levels, sector):
            sectors.append(sector)
    sectors = _orbit_metadata(sectors)
    logger.info(
        f'{len(sectors)} setores de controlo físicos ({frame.geometry}, '
        f'plaquete {frame.plaquette.name}, truncamento {trunc})'
    )
    return sectors


def _xstring_is_exact(terms, states):
    """Cada cadeia 𝒳 só pode tocar nos estados físicos do seu par"""
    for term in terms:
        touched = [
            s for s in states
            if all(level in (j, k) for level, (j, k) in zip(s, term.modes))
        ]
        if len(touched) != (1 if term.is_diagonal else 2):
            return False
    return True


def build_sector_generator(sector, trunc, geometry=None, plaquette=0):
    """
    Gerador de □+□† restrito a um setor de controlo

    Cada par de estados físicos com elemento não nulo dá um termo; a
    cadeia 𝒳 do termo muda cada ligação ativa entre os seus dois níveis.
    Se as cadeias tocarem em estados físicos alheios ao par, usa-se o
    completamento de dois níveis.

    Raises:
        ValueError: setor sem estados físicos
    """
    frame = PlaquetteFrame.build(geometry, plaquette)
    levels = qudit_levels(trunc)
    assignment = frame.control_assignment(sector)
    states = frame.active_states(levels, sector)
    if not states:
        raise ValueError(f'O setor {sector} não tem estados físicos no truncamento {trunc}')
    configs = [frame.config([levels[i] for i in s], assignment) for s in states]
    zero = settings.LATTICE['ZERO_TOL']

    pairs = []
    for a, b in combinations(range(len(states)), 2):
        value = (box_element(configs[b], configs[a], frame.geometry, frame.plaquette)
                 + box_element(configs[a], configs[b], frame.geometry, frame.plaquette))
        if abs(value) >= zero:
            pairs.append((value, states[a], states[b]))
    for a, state in enumerate(states):
        value = box_element(configs[a], configs[a], frame.geometry, frame.plaquette)
        if abs(value) >= zero:
            pairs.append((2 * value, state, state))

    terms = tuple(sorted(
        (SectorTerm(v, tuple(tuple(sorted(p)) for p in zip(a, b))) for v, a, b in pairs),
        key=lambda t: t.modes,
    ))
    completion = Completion.XSTRING
    if not _xstring_is_exact(terms, states):
        logger.warning(f'Cadeias 𝒳 não exatas no setor {sector}; completamento de dois níveis')
        completion = Completion.TWO_LEVEL
        terms = tuple(SectorTerm(v, tuple(zip(a, b))) for v, a, b in pairs)
    logger.debug(f'Setor {sector}: {len(states)} estados físicos, {len(terms)} termos')
    return SectorGenerator(sector, terms, levels, completion, tuple(states))


def build_all_generators(trunc, geometry=None, plaquette=0):
    sectors = enumerate_control_sectors(trunc, geometry, plaquette)
    return [build_sector_generator(s, trunc, geometry, plaquette) for s in sectors]


def _control_sites(frame, gen, sites_of):
    assignment = frame.control_assignment(gen.sector)
    return tuple((sites_of(link), gen.level_of(r)) for link, r in assignment.items())


def _rotate(psi, u, active, controls):
    """
    Aplica u aos eixos ativos do tensor psi onde os controlos coincidem
    """
    index = [slice(None)] * psi.ndim
    for site, level in controls:
        index[site] = level
    index = tuple(index)
    fixed = {site for site, _ in controls}
    remaining = [s for s in range(psi.ndim) if s not in fixed]
    axes = [remaining.index(s) for s in active]
    front = list(range(len(axes)))
    block = np.moveaxis(psi[index], axes, front)
    shape = block.shape
    rotated = (u @ block.reshape(u.shape[0], -1)).reshape(shape)
    psi[index] = np.moveaxis(rotated, front, axes)
    return psi


def apply_controlled_sector_rotation(reg, sector, gen, alpha, geometry=None, plaquette=0):
    """
    exp(−iα·G) no espaço ativo onde os controlos estão no setor

    Args:
        reg (QuditRegister): registo com as ligações do plaquete
        sector (ControlSector): setor que controla a rotação
        gen (SectorGenerator): gerador do setor
        alpha (float): ângulo

    Returns:
        QuditRegister: novo registo

    Raises:
        ValueError: ângulo não finito ou setor diferente do do gerador
    """
    if not np.isfinite(alpha):
        raise ValueError(f'Ângulo não finito: {alpha}')
    if sector != gen.sector:
        raise ValueError(f'O gerador é do setor {gen.sector}, não de {sector}')
    frame = PlaquetteFrame.build(geometry, plaquette)
    active = [reg.position(link) for link in frame.active]
    controls = _control_sites(frame, gen, reg.position)
    psi = _rotate(reg.tensor().copy(), gen.unitary(alpha), active, controls)
    return reg.with_amplitudes(psi.reshape(-1))


def term_rotation(gen, term, theta):
    """exp(−iθ·O) de um termo; O² é o projetor sobre o domínio do termo"""
    o = gen.term_matrix(term)
    o2 = o @ o
    return np.eye(o.shape[0]) - (1 - np.cos(theta)) * o2 - 1j * np.sin(theta) * o


def sector_term_product(gen, alpha):
    """Produto das rotações dos termos, o primeiro termo aplicado primeiro"""
    size = gen.d ** gen.n_active
    u = np.eye(size, dtype=complex)
    for term in gen.terms:
        u = term_rotation(gen, term, alpha * term.coefficient) @ u
    return u


def embed_sector_generator(gen, geometry=None, plaquette=0):
    """
    Gerador do setor no registo completo, com projetores nos controlos

    Returns:
        scipy.sparse.csr_matrix: operador sobre d^(número de ligações)
    """
    frame = PlaquetteFrame.build(geometry, plaquette)
    d = gen.d
    controls = dict(_control_sites(frame, gen, lambda link: link))
    position = {link: i for i, link in enumerate(frame.active)}
    total = None
    for term in gen.terms:
        factors = []
        for link in range(frame.geometry.n_links):
            if link in position:
                factors.append(sparse.csr_matrix(gen.link_factor(*term.modes[position[link]])))
            elif link in controls:
                p = np.zeros((d, d))
                p[controls[link], controls[link]] = 1.0
                factors.append(sparse.csr_matrix(p))
            else:
                factors.append(sparse.identity(d, format='csr'))
        k = reduce(lambda a, b: sparse.kron(a, b, format='csr'), factors)
        if gen.completion is Completion.TWO_LEVEL and not term.is_diagonal:
            k = k + k.T
        k = term.coefficient * k
        total = k if total is None else total + k
    return total.tocsr()


def config_index(config, levels):
    """Índice de uma configuração no registo de qudits"""
    shape = (len(levels),) * len(config)
    return int(np.ravel_multi_index(tuple(levels.index(r) for r in config.irreps), shape))


@dataclass
class _SectorStep:
    active: tuple
    controls: tuple
    gen: SectorGenerator

    def unitaries(self, alpha, split_terms):
        if split_terms:
            return [term_rotation(self.gen, t, alpha * t.coefficient) for t in self.gen.terms]
        return [self.gen.unitary(alpha)]


def _plan(geometry, trunc):
    """Passos de setor de cada plaquete, construídos em paralelo"""

    def for_plaquette(index):
        frame = PlaquetteFrame.build(geometry, index)
        steps = []
        for sector in enumerate_control_sectors(trunc, geometry, index):
            gen = build_sector_generator(sector, trunc, geometry, index)
            steps.append(_SectorStep(frame.active, _control_sites(frame, gen, lambda l: l), gen))
        return steps

    with ThreadPoolExecutor(max_workers=worker_count()) as pool:
        return list(pool.map(for_plaquette, range(len(geometry.plaquettes))))


def _plaquette_unitaries(plan, alpha, split_terms):
    return [
        [(step, u) for step in steps for u in step.unitaries(alpha, split_terms)]
        for steps in plan
    ]


def _apply_plaquette(psi, rotations):
    for step, u in rotations:
        psi = _rotate(psi, u, step.active, step.controls)
    return psi


def _electric_diagonal(levels, n_links, g):
    casimirs = np.array([float(r.casimir) for r in levels])
    return reduce(np.add.outer, [casimirs] * n_links).reshape(-1) * g * g / 2


def local_hamiltonian(geometry, trunc, g=1.0):
    """
    H_E + H_B sobre o registo completo de qudits, sem a constante 6/g²

    H_B é −(□+□†)/(2g²) somado por plaquete a partir dos geradores de setor.

    Returns:
        scipy.sparse.csr_matrix
    """
    if g <= 0:
        raise ValueError('O acoplamento deve ser positivo')
    levels = qudit_levels(trunc)
    h = sparse.diags(_electric_diagonal(levels, geometry.n_links, g), format='csr')
    for index in range(len(geometry.plaquettes)):
        for gen in build_all_generators(trunc, geometry, index):
            h = h - embed_sector_generator(gen, geometry, index) / (2 * g * g)
    return h.tocsr()


def _validate(geometry, trunc, g, dt, n_steps, order, psi0):
    if g <= 0 or dt <= 0:
        raise ValueError('O acoplamento e o passo devem ser positivos')
    if n_steps < 0:
        raise ValueError('O número de etapas não pode ser negativo')
    if order not in (1, 2):
        raise ValueError(f'Ordem de Trotter não suportada: {order}')
    d = len(qudit_levels(trunc))
    n_links = geometry.n_links
    if psi0 is None:
        psi0 = QuditRegister.for_links(n_links, d)
    if psi0.dims != (d,) * n_links:
        raise ValueError(f'Registo de dimensões {psi0.dims} para uma rede de {n_links} qudits')
    return psi0


def _local_step(geometry, trunc, g, dt, order, split_terms):
    """
    Uma etapa de Trotter sobre o vetor achatado

    Primeira ordem: fase elétrica e depois os plaquetes por ordem. Segunda
    ordem: meia fase, meios plaquetes até ao último, o último inteiro, os
    meios plaquetes por ordem inversa e meia fase.
    """
    levels = qudit_levels(trunc)
    dims = (len(levels),) * geometry.n_links
    electric = _electric_diagonal(levels, geometry.n_links, g)
    plan = _plan(geometry, trunc)
    alpha = -dt / (2 * g * g)
    if order == 1:
        phase = np.exp(-1j * dt * electric)
        sequence = _plaquette_unitaries(plan, alpha, split_terms)
    else:
        phase = np.exp(-0.5j * dt * electric)
        half = _plaquette_unitaries(plan, alpha / 2, split_terms)
        if split_terms:
            middle = [half[-1] + list(reversed(half[-1]))]
        else:
            middle = _plaquette_unitaries(plan, alpha, split_terms)[-1:]
        sequence = half[:-1] + middle + [list(reversed(r)) for r in reversed(half[:-1])]

    def step(psi):
        psi = psi * phase
        tensor = psi.reshape(dims)
        for rotations in sequence:
            tensor = _apply_plaquette(tensor, rotations)
        psi = tensor.reshape(-1)
        if order == 2:
            psi = psi * phase
        return psi

    return step, electric


def local_trotter_state(geometry, trunc, g=1.0, dt=0.1, n_steps=1, order=1,
                        split_terms=False, psi0=None):
    """Registo após n_steps etapas de Trotter locais"""
    psi0 = _validate(geometry, trunc, g, dt, n_steps, order, psi0)
    step, _ = _local_step(geometry, trunc, g, dt, order, split_terms)
    psi = psi0.amplitudes
    for _ in range(n_steps):
        psi = step(psi.copy())
    return QuditRegister(psi0.sites, psi / np.linalg.norm(psi))


def local_trotter_evolve(geometry, trunc, g=1.0, dt=0.1, n_steps=1, order=1,
                         split_terms=False, psi0=None):
    """
    Evolução de Trotter com um qudit por ligação

    Cada etapa aplica a fase elétrica diagonal e, por plaquete, as
    rotações de todos os setores com α = −Δt/(2g²). Na segunda ordem a
    etapa é simétrica. Com split_terms cada termo de cada setor é uma
    rotação separada.

    Partindo do vácuo, o erro de ⟨H_E⟩ é O(Δt²) nas duas ordens: o vácuo
    é estado próprio da fase elétrica e a translação troca os plaquetes.
    O erro do estado segue a ordem do esquema (ver local_trotter_state).

    Args:
        geometry (LatticeGeometry): geometria com controlos em cada plaquete
        trunc (Truncation): truncamento
        g (float): acoplamento
        dt (float): passo
        n_steps (int): número de etapas
        order (int): 1 ou 2
        split_terms (bool): decompõe cada setor nos seus termos
        psi0 (QuditRegister): estado inicial; por omissão o vácuo

    Returns:
        Trajectory: persistência, ⟨H_E⟩ e fuga de gauge em t = k·dt

    Raises:
        ValueError: parâmetros fora do domínio
    """
    psi0 = _validate(geometry, trunc, g, dt, n_steps, order, psi0)
    levels = qudit_levels(trunc)
    physical = np.zeros(len(levels) ** geometry.n_links, dtype=bool)
    physical[[config_index(c, levels) for c in enumerate_physical(geometry, trunc)]] = True
    step, electric = _local_step(geometry, trunc, g, dt, order, split_terms)

    start = psi0.amplitudes
    states = [start]
    for _ in range(n_steps):
        states.append(step(states[-1].copy()))
    states = np.column_stack(states)
    probabilities = np.abs(states) ** 2
    drift = float(np.abs(probabilities.sum(axis=0) - 1.0).max())
    if drift > 1e-12:
        logger.warning(f'Norma desviou {drift:.2e} em {n_steps} etapas locais')
    leakage = probabilities[~physical].sum(axis=0)
    persistence = np.clip(np.abs(start.conj() @ states) ** 2, 0.0, 1.0)
    energy = electric @ probabilities
    times = dt * np.arange(n_steps + 1)
    logger.info(
        f'Evolução local: {n_steps} etapas de {dt:g} ({geometry}, ordem {order}), '
        f'fuga máxima {leakage.max():.2e}'
    )
    return Trajectory(times, persistence, energy, leakage,
                      label=f'local/{geometry}/o{order}' + ('/split' if split_terms else ''))


def local_trotter_sweep(geometry, trunc, g, t_final, dts, order=1, split_terms=False):
    """Trajetórias independentes para vários passos, em paralelo"""

    def run(dt):
        n_steps = int(round(t_final / dt))
        return local_trotter_evolve(geometry, trunc, g, dt, n_steps, order, split_terms)

    with ThreadPoolExecutor(max_workers=worker_count()) as pool:
        return list(pool.map(run, dts))
