# hamiltonian/domain.py
"""
Representação de operadores hamiltonianos

O hamiltoniano é guardado em coeficientes simbólicos de g:
H = (g²/2)·diag(E) + (1/(2g²))·(B + c·I), onde E são os Casimirs
elétricos exatos, B é a parte magnética −Σ(□+□†) e c o termo constante.

Autor: Sistema Rede SU(3)
Data: 2025
"""

import json
from dataclasses import dataclass, field, replace

import numpy as np
from scipy import sparse


@dataclass(frozen=True, eq=False)
class OperatorMatrix:
    labels: tuple
    electric_diag: tuple
    magnetic: sparse.csr_matrix
    constant: float = 0.0
    g: float = 1.0
    include_constant: bool = True
    elements: tuple = field(default=(), repr=False)

    def __post_init__(self):
        if self.g <= 0:
            raise ValueError('O acoplamento g deve ser positivo')
        n = len(self.labels)
        if len(self.electric_diag) != n or self.magnetic.shape != (n, n):
            raise ValueError('Dimensões inconsistentes no operador')

    @property
    def dimension(self):
        return len(self.labels)

    def electric_matrix(self):
        """Coeficiente de g²/2"""
        return np.diag([float(e) for e in self.electric_diag])

    def magnetic_matrix(self, include_constant=None):
        """Coeficiente de 1/(2g²)"""
        if include_constant is None:
            include_constant = self.include_constant
        m = self.magnetic.toarray()
        if include_constant:
            m = m + self.constant * np.eye(self.dimension)
        return m

    def dense(self, g=None):
        g = self.g if g is None else g
        return g * g / 2 * self.electric_matrix() + self.magnetic_matrix() / (2 * g * g)

    def sparse(self, g=None):
        g = self.g if g is None else g
        e = sparse.diags([float(x) for x in self.electric_diag])
        m = self.magnetic
        if self.include_constant:
            m = m + self.constant * sparse.identity(self.dimension)
        return (g * g / 2 * e + m / (2 * g * g)).tocsr()

    def electric_energy_operator(self, g=None):
        g = self.g if g is None else g
        return g * g / 2 * np.array([float(x) for x in self.electric_diag])

    def with_coupling(self, g):
        return replace(self, g=g)

    def reordered(self, order):
        """
        Nova ordem da base, por índices ou rótulos
        """
        index = [self.labels.index(o) if isinstance(o, str) else int(o) for o in order]
        m = self.magnetic[index][:, index]
        return replace(
            self,
            labels=tuple(self.labels[i] for i in index),
            electric_diag=tuple(self.electric_diag[i] for i in index),
            magnetic=sparse.csr_matrix(m),
            elements=tuple(self.elements[i] for i in index) if self.elements else (),
        )

    def is_symmetric(self, tol=1e-12):
        diff = self.magnetic - self.magnetic.T
        return diff.count_nonzero() == 0 or np.abs(diff.data).max() <= tol

    def to_json(self):
        coo = self.magnetic.tocoo()
        return {
            'schema': 1,
            'labels': list(self.labels),
            'electric_diag': [str(e) for e in self.electric_diag],
            'magnetic': [
                [int(i), int(j), float(v)] for i, j, v in zip(coo.row, coo.col, coo.data)
            ],
            'constant': self.constant,
            'include_constant': self.include_constant,
        }

    def dump_json(self, path):
        with open(path, 'w', encoding='utf-8') as fh:
            json.dump(self.to_json(), fh, indent=1)

    def render_text(self, g=None, precision=6):
        """
        Matriz densa em texto, para ficheiros de referência até 20×20
        """
        if self.dimension > 20:
            raise ValueError('Renderização densa limitada a 20×20')
        h = self.dense(g)
        width = precision + 7
        rows = []
        for label, row in zip(self.labels, h):
            cells = ''.join(f'{v:{width}.{precision}f}' for v in row)
            rows.append(f'{label:>24} {cells}')
        return '\n'.join(rows)
