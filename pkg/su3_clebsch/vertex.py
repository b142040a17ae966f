# su3_clebsch/vertex.py
"""
Tensores invariantes de vértice

Cada extremidade de ligação num vértice usa a realização padrão da irrep
da ligação quando a ligação entra no vértice e a realização dual quando
sai. O tensor de vértice é o singleto (normalizado) do produto das
extremidades; vértices com 2 ou 3 extremidades são suportados.

Quando o produto tem mais de um singleto (8⊗8⊗8), o tensor é o singleto
simétrico na troca de duas extremidades equivalentes, com todas as
extremidades levadas à realização padrão da sua classe. Essa escolha é
preservada pela conjugação de cor.

Autor: Sistema Rede SU(3)
Data: 2025
"""

import logging
from functools import lru_cache
from itertools import combinations

import numpy as np
from django.conf import settings

from su3_irreps.domain import Irrep

from .cg import intertwiners

logger = logging.getLogger(__name__)

SINGLET = Irrep(0, 0)


def _singlet_pair(first, second):
    """Singleto de dois fatores como matriz (d1, d2), ou None"""
    ws = intertwiners(first, second, SINGLET)
    if not ws:
        return None
    return ws[0][:, :, 0]


@lru_cache(maxsize=None)
def canonical_map(irrep, dual):
    """
    Classe de uma extremidade e a matriz ortogonal que leva as suas
    coordenadas à realização padrão dessa classe

    A dual de R é equivalente à padrão de R̄; o mapa é √d·Sᵀ, com S o
    singleto de R⊗R̄ nas realizações padrão.

    Returns:
        tuple[Irrep, np.ndarray]
    """
    if not dual:
        return irrep, np.eye(irrep.dimension)
    target = irrep.conjugate()
    pairing = _singlet_pair((irrep, False), (target, False))
    return target, np.sqrt(irrep.dimension) * pairing.T


def to_canonical(tensor, realized):
    """Tensor de três extremidades nas coordenadas padrão de cada classe"""
    maps = [canonical_map(*end)[1] for end in realized]
    return np.einsum('ia,jb,kc,abc->ijk', *maps, tensor)


def _symmetric_singlet(realized, candidates):
    """
    Combinação dos singletos simétrica na troca de duas extremidades da
    mesma classe; sem par equivalente fica o primeiro singleto
    """
    flat = np.array([c.ravel() for c in candidates])
    _, s, vt = np.linalg.svd(flat, full_matrices=False)
    rank = int(np.sum(s > settings.LATTICE['RANK_TOL']))
    basis = [v.reshape(candidates[0].shape) for v in vt[:rank]]
    classes = [canonical_map(*end)[0] for end in realized]
    pair = next(((i, j) for i, j in combinations(range(3), 2) if classes[i] == classes[j]), None)
    if pair is None:
        logger.debug(f'Sem extremidades equivalentes em {realized}: primeiro singleto')
        return basis[0]
    canonical = [to_canonical(b, realized) for b in basis]
    swapped = [np.swapaxes(c, *pair) for c in canonical]
    exchange = np.array([[np.vdot(a, b) for b in swapped] for a in canonical])
    _, vectors = np.linalg.eigh((exchange + exchange.T) / 2)
    weights = vectors[:, -1]
    return sum(w * b for w, b in zip(weights, basis))


def _fix_sign(tensor):
    flat = tensor.ravel()
    nonzero = np.flatnonzero(np.abs(flat) > settings.LATTICE['ZERO_TOL'])
    if nonzero.size and flat[nonzero[0]] < 0:
        return -tensor
    return tensor


@lru_cache(maxsize=None)
def vertex_tensor(ends):
    """
    Tensor invariante de um vértice

    Para três extremidades cada acoplamento W_Γ(e1⊗e2 → X) é contraído com
    o singleto de X⊗e3; havendo mais de um, usa-se o singleto simétrico.

    Args:
        ends (tuple[tuple[Irrep, bool]]): (irrep, ligação entrante) por extremidade

    Returns:
        np.ndarray | None: tensor com um eixo por extremidade, None se não
        houver singleto

    Raises:
        ValueError: para vértices com mais de 3 extremidades
    """
    realized = tuple((irrep, not incoming) for irrep, incoming in ends)
    if len(realized) == 1:
        irrep, _ = realized[0]
        return np.ones(1) if irrep == SINGLET else None
    if len(realized) == 2:
        return _singlet_pair(*realized)
    if len(realized) != 3:
        raise ValueError(f'Vértices com {len(realized)} extremidades não são suportados')

    first, second, (r3, dual3) = realized
    x = r3 if dual3 else r3.conjugate()
    ws = intertwiners(first, second, x)
    closing = _singlet_pair((x, False), (r3, dual3))
    if not ws or closing is None:
        return None
    candidates = [np.einsum('abx,xc->abc', w, closing) for w in ws]
    if len(candidates) == 1:
        tensor = candidates[0]
    else:
        logger.debug(f'Vértice {ends} com {len(candidates)} singletos: escolhido o simétrico')
        tensor = _fix_sign(_symmetric_singlet(realized, candidates))
    norm = np.linalg.norm(tensor)
    if norm < 1e-12:
        logger.warning(f'Tensor de vértice nulo para {ends}')
        return None
    tensor = tensor / norm
    tensor.flags.writeable = False
    return tensor
