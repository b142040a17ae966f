# gauge_basis/geometry.py
"""
Geometrias de rede com ligações orientadas

Cada geometria fixa:
- A lista ordenada de ligações (a ordem das irreps numa configuração)
- Os vértices, cada um com as suas extremidades (ligação, entrante)
- Os plaquetes, com as ligações ativas na ordem de percurso
  (Rb, Qr, Rt, Qℓ) e as ligações de controlo (C1, C2, C3, C4)
- Os mapas de simetria sobre configurações

Autor: Sistema Rede SU(3)
Data: 2025
"""

import enum
from dataclasses import dataclass, field
from functools import cached_property


class GeometryKind(enum.Enum):
    ONE_PLAQUETTE = 'one_plaquette'
    TWO_PLAQUETTE_PBC = 'two_plaquette_pbc'
    LOCAL_PLAQUETTE = 'local_plaquette'
    PLAQUETTE_STRING = 'plaquette_string'


@dataclass(frozen=True)
class Link:
    name: str
    source: str
    target: str


@dataclass(frozen=True)
class Vertex:
    """
    Vértice com extremidades (índice da ligação, entrante) numa ordem fixa;
    a ordem define os eixos do tensor de vértice
    """

    name: str
    ends: tuple

    def link_indices(self):
        return [i for i, _ in self.ends]


@dataclass(frozen=True)
class Plaquette:
    """
    Plaquete elementar

    active guarda (índice da ligação, percorrida no sentido da ligação)
    para Rb, Qr, Rt, Qℓ; controls guarda C1…C4 (vazio se não houver);
    constant é o termo constante do plaquete em unidades de 1/(2g²).
    """

    name: str
    active: tuple
    controls: tuple = ()
    constant: int = 6

    def active_links(self):
        return [i for i, _ in self.active]


@dataclass(frozen=True)
class LinkMap:
    """
    Mapa de simetria: nova[i] = antiga[perm[i]], conjugada se conj[i]
    """

    perm: tuple
    conj: tuple

    def apply(self, irreps):
        return tuple(
            irreps[j].conjugate() if flip else irreps[j]
            for j, flip in zip(self.perm, self.conj)
        )

    @classmethod
    def color_parity(cls, n_links):
        return cls(tuple(range(n_links)), (True,) * n_links)


@dataclass(frozen=True)
class LatticeGeometry:
    kind: GeometryKind
    links: tuple
    vertices: tuple
    plaquettes: tuple
    symmetries: dict = field(default_factory=dict, compare=False, hash=False)
    dimension: int = 2

    def __post_init__(self):
        for v in self.vertices:
            for i, _ in v.ends:
                if not 0 <= i < len(self.links):
                    raise ValueError(f'Vértice {v.name} refere ligação inexistente {i}')

    @property
    def n_links(self):
        return len(self.links)

    @cached_property
    def link_index(self):
        return {link.name: i for i, link in enumerate(self.links)}

    @cached_property
    def vertices_by_link(self):
        touched = {i: [] for i in range(self.n_links)}
        for vi, v in enumerate(self.vertices):
            for i, _ in v.ends:
                touched[i].append(vi)
        return touched

    def plaquette_vertices(self, plaquette):
        """Vértices do plaquete com as posições das duas extremidades ativas"""
        active = set(plaquette.active_links())
        result = []
        for vi, v in enumerate(self.vertices):
            positions = [k for k, (i, _) in enumerate(v.ends) if i in active]
            if positions:
                if len(positions) != 2:
                    raise ValueError(f'O vértice {v.name} deve ter duas extremidades ativas')
                result.append((vi, tuple(positions)))
        return result

    def magnetic_constant(self):
        return sum(p.constant for p in self.plaquettes)

    def __str__(self):
        return self.kind.value


def _vertex(name, *ends, index):
    """ends como pares (nome da ligação, 'in'|'out')"""
    return Vertex(name, tuple((index[link], flag == 'in') for link, flag in ends))


def _links(*specs):
    links = tuple(Link(*spec) for spec in specs)
    return links, {link.name: i for i, link in enumerate(links)}


def one_plaquette():
    """
    Um plaquete isolado: quatro ligações em ciclo, vértices de duas extremidades
    """
    links, idx = _links(
        ('Rb', 'BL', 'BR'), ('Qr', 'BR', 'TR'), ('Rt', 'TR', 'TL'), ('Ql', 'TL', 'BL'),
    )
    vertices = (
        _vertex('BL', ('Ql', 'in'), ('Rb', 'out'), index=idx),
        _vertex('BR', ('Rb', 'in'), ('Qr', 'out'), index=idx),
        _vertex('TR', ('Qr', 'in'), ('Rt', 'out'), index=idx),
        _vertex('TL', ('Rt', 'in'), ('Ql', 'out'), index=idx),
    )
    plaquette = Plaquette(
        'P', tuple((idx[n], True) for n in ('Rb', 'Qr', 'Rt', 'Ql')), constant=6,
    )
    return LatticeGeometry(
        GeometryKind.ONE_PLAQUETTE, links, vertices, (plaquette,),
        symmetries={'color_parity': LinkMap.color_parity(4)},
    )


def two_plaquette_pbc():
    """
    Dois plaquetes com condições de fronteira periódicas

    Ordem das ligações: (R1, Q1, R2, R3, Q2, R4). Cada plaquete conta
    3 no termo constante, 6 no total.
    """
    links, idx = _links(
        ('R1', 'V1', 'V2'), ('Q1', 'V4', 'V2'), ('R2', 'V3', 'V4'),
        ('R3', 'V2', 'V1'), ('Q2', 'V3', 'V1'), ('R4', 'V4', 'V3'),
    )
    vertices = (
        _vertex('V1', ('R3', 'in'), ('R1', 'out'), ('Q2', 'in'), index=idx),
        _vertex('V2', ('R1', 'in'), ('R3', 'out'), ('Q1', 'in'), index=idx),
        _vertex('V3', ('R4', 'in'), ('R2', 'out'), ('Q2', 'out'), index=idx),
        _vertex('V4', ('R2', 'in'), ('R4', 'out'), ('Q1', 'out'), index=idx),
    )
    traversal = (True, True, False, False)

    def plaquette(name, active, controls):
        return Plaquette(
            name,
            tuple((idx[n], fwd) for n, fwd in zip(active, traversal)),
            tuple(idx[n] for n in controls),
            constant=3,
        )

    plaquettes = (
        plaquette('A', ('R2', 'Q1', 'R1', 'Q2'), ('R3', 'R4', 'R3', 'R4')),
        plaquette('B', ('R4', 'Q2', 'R3', 'Q1'), ('R1', 'R2', 'R1', 'R2')),
    )
    symmetries = {
        'color_parity': LinkMap.color_parity(6),
        # (R1,Q1,R2,R3,Q2,R4) → (R3,Q2,R4,R1,Q1,R2)
        'translation': LinkMap((3, 4, 5, 0, 1, 2), (False,) * 6),
        # (R1,Q1,R2,R3,Q2,R4) → (R2,Q̄1,R1,R4,Q̄2,R3)
        'reflection': LinkMap((2, 1, 0, 5, 4, 3), (False, True, False, False, True, False)),
    }
    return LatticeGeometry(
        GeometryKind.TWO_PLAQUETTE_PBC, links, vertices, plaquettes, symmetries=symmetries,
    )


def local_plaquette():
    """
    Um plaquete dentro de uma rede maior: quatro ligações ativas e quatro
    ligações de controlo pendentes

    Ordem das ligações: (Rb, Qr, Rt, Qℓ, C1, C2, C3, C4). C1 entra em TL,
    C2 entra em BL, C3 sai de TR e C4 sai de BR.
    """
    links, idx = _links(
        ('Rb', 'BL', 'BR'), ('Qr', 'BR', 'TR'), ('Rt', 'TL', 'TR'), ('Ql', 'BL', 'TL'),
        ('C1', '*', 'TL'), ('C2', '*', 'BL'), ('C3', 'TR', '*'), ('C4', 'BR', '*'),
    )
    vertices = (
        _vertex('TL', ('C1', 'in'), ('Rt', 'out'), ('Ql', 'in'), index=idx),
        _vertex('TR', ('Rt', 'in'), ('C3', 'out'), ('Qr', 'in'), index=idx),
        _vertex('BL', ('C2', 'in'), ('Rb', 'out'), ('Ql', 'out'), index=idx),
        _vertex('BR', ('Rb', 'in'), ('C4', 'out'), ('Qr', 'out'), index=idx),
    )
    plaquette = Plaquette(
        'P',
        ((idx['Rb'], True), (idx['Qr'], True), (idx['Rt'], False), (idx['Ql'], False)),
        tuple(idx[n] for n in ('C1', 'C2', 'C3', 'C4')),
        constant=6,
    )
    symmetries = {
        'color_parity': LinkMap.color_parity(8),
        # espelho vertical: troca esquerda/direita, inverte Rb e Rt
        'horizontal_parity': LinkMap((0, 3, 2, 1, 6, 7, 4, 5), (True, False, True, False, True, True, True, True)),
        # espelho horizontal: troca cima/baixo, inverte Qr e Qℓ
        'vertical_parity': LinkMap((2, 1, 0, 3, 5, 4, 7, 6), (False, True, False, True, False, False, False, False)),
    }
    return LatticeGeometry(
        GeometryKind.LOCAL_PLAQUETTE, links, vertices, (plaquette,), symmetries=symmetries,
    )


def plaquette_string(n, periodic=False):
    """
    Escada de n plaquetes

    Ligações inferiores B_i e superiores T_i da esquerda para a direita,
    degraus V_i de baixo para cima. O plaquete i percorre
    B_i, V_{i+1}, T_i (inverso) e V_i (inverso).
    """
    if n < 1:
        raise ValueError('A escada precisa de pelo menos um plaquete')
    if periodic and n < 2:
        raise ValueError('Uma escada periódica precisa de pelo menos dois plaquetes')
    n_rungs = n if periodic else n + 1

    def site(i):
        return i % n_rungs

    specs = []
    specs += [(f'B{i}', f'b{site(i)}', f'b{site(i + 1)}') for i in range(n)]
    specs += [(f'T{i}', f't{site(i)}', f't{site(i + 1)}') for i in range(n)]
    specs += [(f'V{i}', f'b{i}', f't{i}') for i in range(n_rungs)]
    links, idx = _links(*specs)

    vertices = []
    for i in range(n_rungs):
        for row, rung_flag in (('B', 'out'), ('T', 'in')):
            ends = []
            left = (i - 1) % n if periodic else i - 1
            if periodic or i > 0:
                ends.append((f'{row}{left}', 'in'))
            if periodic or i < n:
                ends.append((f'{row}{i}', 'out'))
            ends.append((f'V{i}', rung_flag))
            vertices.append(_vertex(f'{row.lower()}{i}', *ends, index=idx))

    plaquettes = tuple(
        Plaquette(
            f'P{i}',
            ((idx[f'B{i}'], True), (idx[f'V{site(i + 1)}'], True),
             (idx[f'T{i}'], False), (idx[f'V{i}'], False)),
            constant=6,
        )
        for i in range(n)
    )
    symmetries = {'color_parity': LinkMap.color_parity(len(links))}
    if periodic:
        perm = [idx[f'B{(i - 1) % n}'] for i in range(n)]
        perm += [idx[f'T{(i - 1) % n}'] for i in range(n)]
        perm += [idx[f'V{(i - 1) % n}'] for i in range(n)]
        symmetries['translation'] = LinkMap(tuple(perm), (False,) * len(links))
    return LatticeGeometry(
        GeometryKind.PLAQUETTE_STRING, links, tuple(vertices), plaquettes, symmetries=symmetries,
    )


GEOMETRIES = {
    'one_plaquette': one_plaquette,
    'two_plaquette_pbc': two_plaquette_pbc,
    'local_plaquette': local_plaquette,
}


def build_geometry(name):
    """
    Constrói uma geometria a partir do nome da linha de comando

    Aceita também "string:N" e "string:N:periodic".
    """
    if name in GEOMETRIES:
        return GEOMETRIES[name]()
    if name.startswith('string:'):
        parts = name.split(':')
        try:
            n = int(parts[1])
        except (IndexError, ValueError) as e:
            raise ValueError(f'Geometria inválida: {name!r}') from e
        return plaquette_string(n, periodic=len(parts) > 2 and parts[2] == 'periodic')
    raise ValueError(f'Geometria desconhecida: {name!r}')
