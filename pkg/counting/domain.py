# counting/domain.py
"""
Tabelas de escalamento e relatórios de ajuste polinomial

Autor: Sistema Rede SU(3)
Data: 2025
"""

import csv
import json
import logging
from dataclasses import dataclass, field

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class PolynomialFit:
    degree: int
    coefficients: tuple
    residual: float


@dataclass(frozen=True)
class ScalingTable:
    """
    Contagens por corte Λ, estritamente crescentes

    fits guarda um PolynomialFit por grau depois de fit_scaling.
    """

    name: str
    rows: tuple
    fits: tuple = field(default=(), compare=False)
    plateau_degree: int = None
    exponent: float = None

    def __post_init__(self):
        rows = tuple((int(lam), int(n)) for lam, n in self.rows)
        if not rows:
            raise ValueError('A tabela de escalamento não pode estar vazia')
        lambdas = [lam for lam, _ in rows]
        if lambdas != sorted(set(lambdas)):
            raise ValueError('Os cortes Λ devem ser distintos e crescentes')
        object.__setattr__(self, 'rows', rows)

    @property
    def lambdas(self):
        return [lam for lam, _ in self.rows]

    @property
    def counts(self):
        return [n for _, n in self.rows]

    def is_increasing(self):
        counts = self.counts
        return all(a < b for a, b in zip(counts, counts[1:]))

    def residuals(self):
        return {f.degree: f.residual for f in self.fits}

    def to_json(self):
        return {
            'schema': 1,
            'name': self.name,
            'rows': [list(r) for r in self.rows],
            'fits': [
                {'degree': f.degree, 'coefficients': list(f.coefficients), 'residual': f.residual}
                for f in self.fits
            ],
            'plateau_degree': self.plateau_degree,
            'exponent': self.exponent,
        }

    def dump_csv(self, path):
        with open(path, 'w', newline='', encoding='utf-8') as fh:
            fh.write('# schema=1\n')
            writer = csv.writer(fh)
            writer.writerow(['lambda', self.name])
            writer.writerows(self.rows)
        logger.info(f'Tabela {self.name} exportada para {path}')

    def dump_json(self, path):
        with open(path, 'w', encoding='utf-8') as fh:
            json.dump(self.to_json(), fh, indent=1)
        logger.info(f'Relatório de ajuste de {self.name} exportado para {path}')
