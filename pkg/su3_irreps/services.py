# su3_irreps/services.py
"""
Operações exatas sobre irreps de SU(3)

Este módulo implementa:
- Dimensão, Casimir e conjugação
- Produto com o fundamental/antifundamental (conectividade do plaquete)
- Decomposição completa de produtos tensoriais (Littlewood-Richardson)
- Fórmula explícita em soma dupla para produtos (caminho rápido de contagem)
- Vizinhos no diagrama hexagonal de conectividade

Toda a aritmética é inteira ou racional exata.

Autor: Sistema Rede SU(3)
Data: 2025
"""

import logging
from collections import Counter
from functools import lru_cache

from .domain import Direction, Irrep, IrrepMultiset

logger = logging.getLogger(__name__)


def dimension(r):
    return r.dimension


def casimir(r):
    return r.casimir


def conjugate(r):
    return r.conjugate()


def tensor_fundamental(r, direction=Direction.FUND):
    """
    Produto de uma irrep com o 3 (ou com o 3bar)

    (p,q)⊗3 = (p+1,q) ⊕ (p−1,q+1) ⊕ (p,q−1), descartando termos com
    índices negativos. O caso 3bar obtém-se por conjugação.

    Args:
        r (Irrep): irrep de partida
        direction (Direction): FUND ou ANTIFUND

    Returns:
        IrrepMultiset: termos sobreviventes, todos com multiplicidade 1
    """
    p, q = r.p, r.q
    if direction is Direction.FUND:
        candidates = [(p + 1, q), (p - 1, q + 1), (p, q - 1)]
    else:
        candidates = [(p, q + 1), (p + 1, q - 1), (p - 1, q)]
    return IrrepMultiset({Irrep(a, b): 1 for a, b in candidates if a >= 0 and b >= 0})


@lru_cache(maxsize=None)
def tensor_decompose(r1, r2):
    """
    Decomposição de Littlewood-Richardson de r1⊗r2

    Cada irrep (p,q) é o diagrama de Young de linhas (p+q, q, 0).
    Acrescentam-se μ1 caixas "1" e depois μ2 caixas "2" de r2 como faixas
    horizontais, impondo a condição de palavra reticulada, e descartam-se
    diagramas com mais de 3 linhas.

    Returns:
        IrrepMultiset: irreps resultantes com multiplicidades exatas
    """
    lam = (r1.p + r1.q, r1.q, 0)
    mu1, mu2 = r2.p + r2.q, r2.q
    result = Counter()

    for a2 in range(min(mu1, lam[0] - lam[1]) + 1):
        for a3 in range(min(mu1 - a2, lam[1] - lam[2]) + 1):
            a1 = mu1 - a2 - a3
            kappa = (lam[0] + a1, lam[1] + a2, lam[2] + a3)
            # os "2" nunca entram na primeira linha
            for b2 in range(min(mu2, kappa[0] - kappa[1], a1) + 1):
                b3 = mu2 - b2
                if b3 > kappa[1] - kappa[2] or b2 + b3 > a1 + a2:
                    continue
                nu = (kappa[0], kappa[1] + b2, kappa[2] + b3)
                result[Irrep(nu[0] - nu[1], nu[1] - nu[2])] += 1

    decomposition = IrrepMultiset(result)
    if decomposition.total_dimension() != r1.dimension * r2.dimension:
        raise ArithmeticError(
            f'Regra da soma de dimensões violada em ({r1})⊗({r2})'
        )
    logger.debug(f'Decomposição ({r1})⊗({r2}) com {len(decomposition)} irreps distintas')
    return decomposition


def _reduced_product(a, b, c, d):
    """Termos de (a,b)⊗'(c,d) na fórmula em soma dupla, com repetição"""
    for k in range(min(a, c) + 1):
        yield Irrep(a + c - 2 * k, b + d + k)
    for k in range(1, min(b, d) + 1):
        yield Irrep(a + c + k, b + d - 2 * k)


def coleman_terms(r1, r2):
    """
    Gera os termos do produto r1⊗r2 pela fórmula explícita em soma dupla

    (p1,q1)⊗(p2,q2) = ⊕_{i≤min(p1,q2)} ⊕_{j≤min(p2,q1)} (p1−i,q1−j)⊗'(p2−j,q2−i)
    """
    for i in range(min(r1.p, r2.q) + 1):
        for j in range(min(r2.p, r1.q) + 1):
            yield from _reduced_product(r1.p - i, r1.q - j, r2.p - j, r2.q - i)


def coleman_decompose(r1, r2):
    """Decomposição de r1⊗r2 pela fórmula explícita; deve coincidir com LR"""
    return IrrepMultiset(Counter(coleman_terms(r1, r2)))


def singlet_multiplicity(irreps):
    """
    Multiplicidade do singleto no produto de uma lista de irreps

    Args:
        irreps (list[Irrep]): fatores do produto, já orientados

    Returns:
        int: número de singletos (0,0) no produto
    """
    irreps = list(irreps)
    if not irreps:
        return 1
    if len(irreps) == 1:
        return int(irreps[0] == Irrep(0, 0))
    # acumula o produto dos primeiros n−1 fatores e procura a conjugada do último
    partial = Counter({irreps[0]: 1})
    for r in irreps[1:-1]:
        nxt = Counter()
        for x, m in partial.items():
            for y, n in tensor_decompose(x, r).items():
                nxt[y] += m * n
        partial = nxt
    return partial.get(irreps[-1].conjugate(), 0)


def hex_neighbors(r, trunc):
    """
    Arestas dirigidas do diagrama de conectividade a partir de r

    Args:
        r (Irrep): irrep de partida
        trunc (Truncation): truncamento ativo

    Returns:
        list[tuple[Irrep, Direction]]: no máximo 3 arestas por direção
    """
    edges = []
    for direction in (Direction.FUND, Direction.ANTIFUND):
        for target in tensor_fundamental(r, direction):
            if trunc.admits(target):
                edges.append((target, direction))
    return edges
