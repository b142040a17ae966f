# su3_clebsch/cg.py
"""
Coeficientes de Clebsch-Gordan de SU(3) e símbolos 9-R

O acoplamento R1⊗R2 → R' é construído numericamente:
1. Espaço nulo dos operadores de subida totais no setor de peso (p',q')
2. Resolução da multiplicidade (simétrico antes de antissimétrico
   quando os fatores são idênticos, Gram-Schmidt caso contrário)
3. Fase: a primeira componente não nula do vetor de peso máximo é positiva
4. Descida a partir do peso máximo até cobrir todos os estados de R'

Autor: Sistema Rede SU(3)
Data: 2025
"""

import json
import logging
from collections import deque
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from django.conf import settings

from su3_irreps.domain import Irrep
from su3_irreps.services import tensor_decompose

from .states import enumerate_states, generators

logger = logging.getLogger(__name__)

_LADDER = ('E12', 'E23', 'E21', 'E32', 'h1', 'h2')


def _tol(key):
    return settings.LATTICE[key]


@dataclass(frozen=True, eq=False)
class CGTensor:
    """
    Coeficientes ⟨R1,a; R2,b | R',m⟩_γ num array real (d1, d2, d')
    """

    r1: Irrep
    r2: Irrep
    r_out: Irrep
    gamma: int
    coefficients: np.ndarray

    @property
    def key(self):
        return f'{self.r1}|{self.r2}|{self.r_out}|{self.gamma}'

    def as_matrix(self):
        d1, d2, dout = self.coefficients.shape
        return self.coefficients.reshape(d1 * d2, dout)


def _product_ops(f1, f2):
    eye1, eye2 = np.eye(f1.dimension), np.eye(f2.dimension)
    return {
        name: np.kron(f1.ladder[name], eye2) + np.kron(eye1, f2.ladder[name])
        for name in _LADDER
    }


def _gram_schmidt(candidates, tol):
    basis = []
    for v in candidates:
        w = v.copy()
        for b in basis:
            w -= (b @ w) * b
        norm = np.linalg.norm(w)
        if norm > tol:
            basis.append(w / norm)
    return basis


def _fix_phase(v, tol):
    for c in v:
        if abs(c) > tol:
            return v if c > 0 else -v
    return v


def _highest_weight_vectors(ops, target, symmetric_pair, dim1, tol):
    """Vetores de peso máximo de target no produto, já resolvidos e com fase"""
    h1, h2 = np.diag(ops['h1']), np.diag(ops['h2'])
    sector = np.flatnonzero((np.abs(h1 - target.p) < 0.5) & (np.abs(h2 - target.q) < 0.5))
    if sector.size == 0:
        return []
    raising = np.vstack([ops['E12'][:, sector], ops['E23'][:, sector]])
    _, s, vt = np.linalg.svd(raising)
    rank = int(np.sum(s > tol))
    null = vt[rank:].T
    if null.shape[1] == 0:
        return []

    def embed(local):
        full = np.zeros(len(h1))
        full[sector] = local
        return full

    projector = null @ null.T
    units = [projector[:, i] for i in range(sector.size)]

    if not symmetric_pair:
        vectors = _gram_schmidt(units, tol)[: null.shape[1]]
        return [_fix_phase(embed(v), tol) for v in vectors]

    # troca de fatores restrita ao espaço nulo: autovalores +1 e −1
    swap = np.zeros((len(h1), len(h1)))
    for a in range(dim1):
        for b in range(dim1):
            swap[b * dim1 + a, a * dim1 + b] = 1.0
    swap_local = swap[np.ix_(sector, sector)]
    vectors = []
    for sign in (1.0, -1.0):
        eig_projector = projector @ (np.eye(sector.size) + sign * swap_local) @ projector / 2
        vectors.extend(_gram_schmidt([eig_projector[:, i] for i in range(sector.size)], tol))
    return [_fix_phase(embed(v), tol) for v in vectors]


def _lower_to_full_irrep(target_gen, ops, v, tol):
    """
    Estende o vetor de peso máximo a uma isometria W: R' → produto

    Pares (x em R', y no produto) são gerados por E21 e E32 a partir do
    peso máximo; guardam-se os que aumentam o posto do conjunto de x.
    """
    dim_out = target_gen.dimension
    hw_index = 0
    xs, ys = [], []
    x0 = np.zeros(dim_out)
    x0[hw_index] = 1.0
    queue = deque([(x0, v)])
    while queue and len(xs) < dim_out:
        x, y = queue.popleft()
        trial = np.column_stack(xs + [x])
        if np.linalg.matrix_rank(trial, tol=tol) <= len(xs):
            continue
        xs.append(x)
        ys.append(y)
        for name in ('E21', 'E32'):
            nx = target_gen.ladder[name] @ x
            if np.linalg.norm(nx) > tol:
                queue.append((nx, ops[name] @ y))
    if len(xs) < dim_out:
        raise ArithmeticError(f'Descida incompleta para ({target_gen.irrep}): {len(xs)}/{dim_out}')
    rv = np.column_stack(xs)
    pv = np.column_stack(ys)
    return np.linalg.solve(rv.T, pv.T).T


@lru_cache(maxsize=None)
def intertwiners(first, second, target):
    """
    Isometrias W_γ: R' → R1⊗R2 que entrelaçam as ações de sl(3)

    Args:
        first (tuple[Irrep, bool]): irrep e indicador de realização dual
        second (tuple[Irrep, bool]): idem para o segundo fator
        target (Irrep): irrep de saída, sempre na realização padrão

    Returns:
        tuple[np.ndarray]: um array (d1, d2, d') por cópia de multiplicidade
    """
    tol = _tol('RANK_TOL')
    zero = _tol('ZERO_TOL')
    f1, f2 = generators(*first), generators(*second)
    ops = _product_ops(f1, f2)
    target_gen = generators(target)
    symmetric_pair = first == second
    tensors = []
    for v in _highest_weight_vectors(ops, target, symmetric_pair, f1.dimension, tol):
        w = _lower_to_full_irrep(target_gen, ops, v, tol)
        w[np.abs(w) < zero] = 0.0
        w = w.reshape(f1.dimension, f2.dimension, target_gen.dimension)
        w.flags.writeable = False
        tensors.append(w)
    logger.debug(
        f'Entrelaçadores {first}⊗{second}→({target}): multiplicidade {len(tensors)}'
    )
    return tuple(tensors)


def _realized(irrep, dual):
    return irrep.conjugate() if dual else irrep


def coupling_multiplicity(first, second, target):
    r1, r2 = _realized(*first), _realized(*second)
    return tensor_decompose(r1, r2).multiplicity(target)


@lru_cache(maxsize=None)
def cg_decompose(r1, r2):
    """
    Todos os tensores de Clebsch-Gordan de r1⊗r2

    Args:
        r1 (Irrep): primeiro fator
        r2 (Irrep): segundo fator

    Returns:
        tuple[CGTensor]: um por par (r_out, γ), na ordem canónica de r_out

    Raises:
        ArithmeticError: se a multiplicidade numérica divergir da regra LR
    """
    result = []
    for r_out, mult in tensor_decompose(r1, r2).items():
        ws = intertwiners((r1, False), (r2, False), r_out)
        if len(ws) != mult:
            raise ArithmeticError(
                f'Multiplicidade numérica {len(ws)} ≠ {mult} em ({r1})⊗({r2})→({r_out})'
            )
        result.extend(CGTensor(r1, r2, r_out, gamma, w) for gamma, w in enumerate(ws))
    logger.info(f'CG de ({r1})⊗({r2}): {len(result)} tensores')
    return tuple(result)


def cg_tensors(r1, r2, r_out):
    return [t for t in cg_decompose(r1, r2) if t.r_out == r_out]


def stacked_cg_matrix(r1, r2):
    """Matriz ortogonal d1·d2 × d1·d2 com todos os acoplamentos em coluna"""
    return np.hstack([t.as_matrix() for t in cg_decompose(r1, r2)])


def nine_r(slots, gamma=None):
    """
    Símbolo 9-R com a linha do meio (f, 1, f)

    Disposição por linhas: (A, B, C; f, 1, f; D, B, E). O valor soma,
    sobre componentes e multiplicidades, o produto
    ⟨D,B|E⟩ ⟨A,B|C⟩ ⟨A,f|D⟩ ⟨C,f|E⟩.

    Args:
        slots (Sequence[Irrep]): as nove irreps por linhas
        gamma (tuple[int] | None): escolhe (Γ1, Γ2, Γ3, Γ4) em vez de somar

    Returns:
        float: 0.0 quando alguma cadeia não contém a irrep pedida

    Raises:
        ValueError: se a linha do meio não for (3,1,3) ou (3bar,1,3bar)
    """
    slots = [s if isinstance(s, Irrep) else Irrep.from_label(s) for s in slots]
    if len(slots) != 9:
        raise ValueError('O símbolo 9-R precisa de exatamente nove irreps')
    a, b, c, f, one, f2, d, b2, e = slots
    if one != Irrep(0, 0) or f != f2 or f not in (Irrep(1, 0), Irrep(0, 1)) or b != b2:
        raise ValueError(f'Padrão de 9-R não suportado: {[str(s) for s in slots]}')

    chains = [cg_tensors(d, b, e), cg_tensors(a, b, c), cg_tensors(a, f, d), cg_tensors(c, f, e)]
    if any(not chain for chain in chains):
        return 0.0
    if gamma is None:
        parts = [sum(t.coefficients for t in chain) for chain in chains]
    else:
        parts = [chain[g].coefficients for chain, g in zip(chains, gamma)]
    return float(np.einsum('uxv,yxq,ycu,qcv->', *parts))


def dump_cg_json(path, products):
    """
    Exporta tensores CG em JSON; em "tensors" as chaves são "p1,q1|p2,q2|pout,qout|gamma"

    Args:
        path: caminho do ficheiro de saída
        products: iterável de pares (r1, r2)
    """
    payload = {}
    for r1, r2 in products:
        for t in cg_decompose(r1, r2):
            payload[t.key] = {
                'shape': list(t.coefficients.shape),
                'nonzero': [
                    [int(i), int(j), int(k), float(t.coefficients[i, j, k])]
                    for i, j, k in zip(*np.nonzero(t.coefficients))
                ],
                'states': [
                    [str(s.T), str(s.Tz), str(s.Y)]
                    for s in enumerate_states(t.r_out)
                ],
            }
    with open(path, 'w', encoding='utf-8') as fh:
        json.dump({'schema': 1, 'tensors': payload}, fh, indent=1, sort_keys=True)
    logger.info(f'{len(payload)} tensores CG exportados para {path}')
    return len(payload)
