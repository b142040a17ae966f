# cli/domain.py
"""
Configuração validada de uma execução da linha de comando

Autor: Sistema Rede SU(3)
Data: 2025
"""

from dataclasses import asdict, dataclass

SUBCOMMANDS = ('spectrum', 'evolve', 'converge', 'count', 'compile', 'benchmark', 'su2_tail')


@dataclass(frozen=True)
class RunConfig:
    """
    Parâmetros de um subcomando depois da validação

    trunc já é uma Truncation, g e lambdas são tuplos e sectors é um
    tuplo de cadeias de sinais.
    """

    subcommand: str
    geometry: str
    trunc: object
    g: tuple
    mode: str = 'global'
    sectors: tuple = ()
    tmax: float = 3.0
    dt: float = 0.1
    order: int = 1
    scheme: str = 'exact'
    split_terms: bool = False
    extrema: bool = False
    observable: str = 'mass_gap'
    lambdas: tuple = (1, 2, 3, 4)
    time: float = None
    max_degree: int = 10
    encoding: str = 'single_qudit'
    j_max: int = 60
    window: tuple = None
    out: str = '.'
    format: str = 'csv'
    threads: int = 0

    def describe(self):
        data = asdict(self)
        data['trunc'] = str(self.trunc)
        return data
