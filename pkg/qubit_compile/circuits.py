# qubit_compile/circuits.py
"""
Circuitos de qudits e simulador de vetor de estado

Representação partilhada pelos circuitos de qubits (d=2) e pelos
circuitos de qutrits do plaquete local:
- Gate: porta de um sítio alvo com controlos opcionais, cada controlo
  aceitando um conjunto de níveis (controlo "ou inclusivo")
- Circuit: sequência ordenada de portas sobre sítios de dimensão fixa
- Simulação por contração do eixo do sítio alvo, sem matrizes completas

O sítio 0 é o mais significativo no vetor achatado, como nas cadeias
de Pauli.

Autor: Sistema Rede SU(3)
Data: 2025
"""

import enum
import json
import logging
from collections import Counter
from dataclasses import dataclass, field

import numpy as np

logger = logging.getLogger(__name__)


class GateKind(str, enum.Enum):
    GIVENS = 'givens'
    X = 'x'
    Y = 'y'
    Z = 'z'
    ZROT = 'zrot'
    H = 'h'
    S = 's'
    SDG = 'sdg'
    PHASE = 'phase'


ROTATIONS = {GateKind.GIVENS, GateKind.ZROT, GateKind.PHASE}
PAULIS = {GateKind.X, GateKind.Y, GateKind.Z}


@dataclass(frozen=True)
class Gate:
    """
    Porta num sítio alvo

    - GIVENS: exp(−iθ(cosφ X_jk + sinφ Y_jk)), transfere população entre
      os níveis j e k
    - X, Y, Z: Paulis do par de níveis (j,k); X_jk troca os níveis
    - ZROT: exp(−iθ(|j⟩⟨j| − |k⟩⟨k|))
    - H, S, SDG: portas de um qubit
    - PHASE: diag(exp(−i·phases))

    controls guarda pares (sítio, níveis aceites); a porta atua só onde
    todos os controlos estão satisfeitos.
    """

    kind: GateKind
    site: int
    modes: tuple = (0, 1)
    angle: float = 0.0
    phase: float = 0.0
    controls: tuple = ()
    phases: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, 'kind', GateKind(self.kind))
        object.__setattr__(self, 'controls', tuple(
            (int(site), frozenset(levels)) for site, levels in self.controls
        ))
        if any(site == self.site for site, _ in self.controls):
            raise ValueError(f'O sítio {self.site} não pode controlar-se a si próprio')
        j, k = self.modes
        if j == k:
            raise ValueError(f'Par de níveis degenerado: {self.modes}')

    def matrix(self, d):
        """Matriz local d×d"""
        j, k = self.modes
        if max(j, k) >= d and self.kind is not GateKind.PHASE:
            raise ValueError(f'Níveis {self.modes} fora de um sítio de dimensão {d}')
        m = np.eye(d, dtype=complex)
        if self.kind is GateKind.GIVENS:
            c, s = np.cos(self.angle), np.sin(self.angle)
            m[j, j] = m[k, k] = c
            m[j, k] = -1j * np.exp(-1j * self.phase) * s
            m[k, j] = -1j * np.exp(1j * self.phase) * s
        elif self.kind is GateKind.X:
            m[j, j] = m[k, k] = 0
            m[j, k] = m[k, j] = 1
        elif self.kind is GateKind.Y:
            m[j, j] = m[k, k] = 0
            m[j, k], m[k, j] = -1j, 1j
        elif self.kind is GateKind.Z:
            m[k, k] = -1
        elif self.kind is GateKind.ZROT:
            m[j, j], m[k, k] = np.exp(-1j * self.angle), np.exp(1j * self.angle)
        elif self.kind is GateKind.PHASE:
            if len(self.phases) != d:
                raise ValueError(f'São precisas {d} fases, recebidas {len(self.phases)}')
            m = np.diag(np.exp(-1j * np.asarray(self.phases, dtype=float)))
        else:
            if d != 2:
                raise ValueError(f'A porta {self.kind.value} só existe para qubits')
            if self.kind is GateKind.H:
                m = np.array([[1, 1], [1, -1]], dtype=complex) / np.sqrt(2)
            elif self.kind is GateKind.S:
                m = np.diag([1, 1j])
            else:
                m = np.diag([1, -1j])
        return m

    def inverse(self):
        if self.kind in (GateKind.GIVENS, GateKind.ZROT):
            return Gate(self.kind, self.site, self.modes, -self.angle, self.phase, self.controls)
        if self.kind is GateKind.PHASE:
            return Gate(self.kind, self.site, self.modes, controls=self.controls,
                        phases=tuple(-p for p in self.phases))
        if self.kind is GateKind.S:
            return Gate(GateKind.SDG, self.site, controls=self.controls)
        if self.kind is GateKind.SDG:
            return Gate(GateKind.S, self.site, controls=self.controls)
        return self

    def to_json(self):
        data = {
            'kind': self.kind.value,
            'sites': [self.site],
            'modes': list(self.modes),
            'angle': float(self.angle),
            'controls': [[site, sorted(levels)] for site, levels in self.controls],
        }
        if self.phase:
            data['phase'] = float(self.phase)
        if self.phases:
            data['phases'] = [float(p) for p in self.phases]
        return data

    @classmethod
    def from_json(cls, data):
        return cls(
            GateKind(data['kind']),
            data['sites'][0],
            tuple(data.get('modes', (0, 1))),
            data.get('angle', 0.0),
            data.get('phase', 0.0),
            tuple((site, levels) for site, levels in data.get('controls', ())),
            tuple(data.get('phases', ())),
        )


# Construtores das portas de qubit com nome

def h(site):
    return Gate(GateKind.H, site)


def s(site):
    return Gate(GateKind.S, site)


def rx(site, theta, controls=()):
    """exp(−iθX)"""
    return Gate(GateKind.GIVENS, site, angle=theta, controls=controls)


def rz(site, theta):
    """exp(−iθZ)"""
    return Gate(GateKind.ZROT, site, angle=theta)


def cnot(control, target):
    return Gate(GateKind.X, target, controls=((control, (1,)),))


def mcx(target, values):
    """X controlado por {sítio: bit}; bit 0 é um controlo aberto"""
    return Gate(GateKind.X, target, controls=tuple((q, (b,)) for q, b in values.items()))


@dataclass
class Circuit:
    dims: tuple
    gates: list = field(default_factory=list)

    def __post_init__(self):
        self.dims = tuple(int(d) for d in self.dims)

    @classmethod
    def qubits(cls, n):
        return cls((2,) * n)

    @property
    def size(self):
        return int(np.prod(self.dims))

    def append(self, gate):
        if not 0 <= gate.site < len(self.dims):
            raise ValueError(f'Sítio {gate.site} fora do circuito de {len(self.dims)} sítios')
        self.gates.append(gate)
        return self

    def extend(self, gates):
        for gate in gates:
            self.append(gate)
        return self

    def inverse(self):
        return Circuit(self.dims, [g.inverse() for g in reversed(self.gates)])

    def __add__(self, other):
        if self.dims != other.dims:
            raise ValueError('Circuitos com sítios diferentes')
        return Circuit(self.dims, self.gates + other.gates)

    def gate_counts(self):
        """
        Resumo de recursos: rotações, Paulis controladas e restantes
        """
        counts = Counter()
        for g in self.gates:
            if g.kind in ROTATIONS:
                counts['rotations'] += 1
            elif g.kind in PAULIS and g.controls:
                counts['controlled_paulis'] += 1
            else:
                counts['single_site'] += 1
            counts[f'{g.kind.value}_c{len(g.controls)}'] += 1
        counts['total'] = len(self.gates)
        return dict(counts)

    def depth(self):
        """Número de estágios com controlos (portas que não são de um sítio)"""
        return sum(1 for g in self.gates if g.controls or g.kind in ROTATIONS)

    def unitary(self):
        return simulate(self, np.eye(self.size, dtype=complex))

    def to_json(self):
        return {'schema': 1, 'dims': list(self.dims), 'gates': [g.to_json() for g in self.gates]}

    def dump_json(self, path):
        with open(path, 'w', encoding='utf-8') as fh:
            json.dump(self.to_json(), fh, indent=1)
        logger.info(f'Circuito com {len(self.gates)} portas exportado para {path}')

    @classmethod
    def from_json(cls, data):
        return cls(tuple(data['dims']), [Gate.from_json(g) for g in data['gates']])


def _control_mask(gate, dims):
    mask = np.ones(dims, dtype=bool)
    for site, levels in gate.controls:
        selected = np.zeros(dims[site], dtype=bool)
        selected[[lv for lv in levels if lv < dims[site]]] = True
        shape = [1] * len(dims)
        shape[site] = dims[site]
        mask = mask & selected.reshape(shape)
    return mask


def apply_gate(state, gate, dims):
    """
    Aplica uma porta a um vetor (ou a colunas de vetores) de estado

    Args:
        state: array de tamanho Π dims, ou (Π dims, k) para k colunas
        gate (Gate): porta
        dims (tuple): dimensão de cada sítio

    Returns:
        np.ndarray: novo estado com a forma de entrada
    """
    state = np.asarray(state)
    batch = state.ndim == 2
    psi = state.reshape(tuple(dims) + ((-1,) if batch else ()))
    u = gate.matrix(dims[gate.site])
    new = np.moveaxis(np.tensordot(u, psi, axes=([1], [gate.site])), 0, gate.site)
    if gate.controls:
        mask = _control_mask(gate, dims)
        if batch:
            mask = mask[..., None]
        new = np.where(mask, new, psi)
    return new.reshape(state.shape)


def simulate(circuit, state):
    state = np.asarray(state, dtype=complex)
    if state.shape[0] != circuit.size:
        raise ValueError(f'Estado de dimensão {state.shape[0]} para circuito de {circuit.size}')
    for gate in circuit.gates:
        state = apply_gate(state, gate, circuit.dims)
    return state


def basis_state(dims, levels):
    """Vetor |levels⟩ num registo de dimensões dims"""
    psi = np.zeros(int(np.prod(dims)), dtype=complex)
    psi[np.ravel_multi_index(tuple(levels), tuple(dims))] = 1.0
    return psi


def phase_deviation(u, target):
    """
    Desvio máximo entre u e target a menos de uma fase global
    """
    u, target = np.asarray(u), np.asarray(target)
    overlap = np.vdot(target, u)
    phase = overlap / abs(overlap) if abs(overlap) > 1e-14 else 1.0
    return float(np.abs(u - phase * target).max())
