# core/testing.py
"""
Utilitários partilhados pelos testes

As bases físicas só estão definidas a menos de um sinal por estado;
as comparações com matrizes de referência procuram esses sinais.

Autor: Sistema Rede SU(3)
Data: 2025
"""

from collections import deque
from itertools import permutations

import numpy as np


def state_signs(a, b, tol=1e-10):
    """
    Sinais d tais que diag(d)·a·diag(d) = b, ou None se não existirem
    """
    a, b = np.asarray(a, dtype=float), np.asarray(b, dtype=float)
    n = a.shape[0]
    d = np.zeros(n)
    for root in range(n):
        if d[root]:
            continue
        d[root] = 1.0
        queue = deque([root])
        while queue:
            i = queue.popleft()
            for j in range(n):
                if j == i or abs(a[i, j]) <= tol:
                    continue
                if abs(b[i, j]) <= tol:
                    return None
                s = d[i] * np.sign(b[i, j] / a[i, j])
                if d[j] == 0:
                    d[j] = s
                    queue.append(j)
                elif d[j] != s:
                    return None
    return d


def equal_up_to_signs(a, b, tol=1e-10):
    d = state_signs(a, b, tol)
    if d is None:
        return False
    return np.abs(np.outer(d, d) * np.asarray(a) - np.asarray(b)).max() <= tol


def equal_up_to_signs_and_order(a, b, diag_a=None, diag_b=None, tol=1e-10):
    """
    Procura uma permutação (que preserve diag_a → diag_b) e sinais que
    levem a em b; só para dimensões pequenas
    """
    a, b = np.asarray(a), np.asarray(b)
    n = a.shape[0]
    if n > 8:
        raise ValueError('Busca por permutações limitada a 8 estados')
    for perm in permutations(range(n)):
        if diag_a is not None and any(
            abs(float(diag_a[perm[k]]) - float(diag_b[k])) > tol for k in range(n)
        ):
            continue
        if equal_up_to_signs(a[np.ix_(perm, perm)], b, tol):
            return True
    return False
