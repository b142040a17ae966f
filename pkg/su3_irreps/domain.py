# su3_irreps/domain.py
"""
Tipos de domínio das representações irredutíveis (irreps) de SU(3)

Este módulo define os objetos imutáveis usados por todo o sistema:
- Irrep: representação rotulada pelos índices tensoriais (p,q)
- IrrepMultiset: soma direta de irreps com multiplicidades
- Truncation: truncamento (Λp,Λq) com lista opcional de irreps permitidas
- Direction: fundamental (3) ou antifundamental (3bar)

Autor: Sistema Rede SU(3)
Data: 2025
"""

import enum
import re
from collections.abc import Mapping
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property, total_ordering


class Direction(enum.Enum):
    """Direção do passo de fluxo aplicado por um operador de ligação"""
    FUND = 'fund'
    ANTIFUND = 'antifund'

    @property
    def irrep(self):
        return Irrep(1, 0) if self is Direction.FUND else Irrep(0, 1)

    def reverse(self):
        return Direction.ANTIFUND if self is Direction.FUND else Direction.FUND


@total_ordering
@dataclass(frozen=True)
class Irrep:
    """
    Representação irredutível de SU(3) com índices tensoriais (p,q)

    p conta índices fundamentais e q índices antifundamentais. A ordem
    total usada em todo o projeto é (casimir, p, q), crescente.
    """

    p: int
    q: int

    def __post_init__(self):
        if not isinstance(self.p, int) or not isinstance(self.q, int):
            raise ValueError(f'Índices (p,q) devem ser inteiros: ({self.p!r},{self.q!r})')
        if self.p < 0 or self.q < 0:
            raise ValueError(f'Índices (p,q) devem ser não negativos: ({self.p},{self.q})')

    @property
    def dimension(self):
        return (self.p + 1) * (self.q + 1) * (self.p + self.q + 2) // 2

    @property
    def casimir(self):
        p, q = self.p, self.q
        return Fraction(p * p + q * q + p * q + 3 * p + 3 * q, 3)

    @property
    def triality(self):
        return (self.p - self.q) % 3

    def conjugate(self):
        return Irrep(self.q, self.p)

    @property
    def is_real(self):
        return self.p == self.q

    @property
    def sort_key(self):
        return (self.casimir, self.p, self.q)

    def __lt__(self, other):
        if not isinstance(other, Irrep):
            return NotImplemented
        return self.sort_key < other.sort_key

    def __str__(self):
        return f'{self.p},{self.q}'

    def label(self):
        """
        Rótulo por dimensão, com plicas para dimensões degeneradas
        e o sufixo "bar" quando q > p

        Returns:
            str: por exemplo "1", "3bar", "8", "15", "15'"
        """
        lo, hi = min(self.p, self.q), max(self.p, self.q)
        canonical = [r for r in _same_dimension(self.dimension) if r.p >= r.q]
        primes = "'" * canonical.index(Irrep(hi, lo))
        bar = 'bar' if self.q > self.p else ''
        return f'{self.dimension}{primes}{bar}'

    @classmethod
    def from_label(cls, text):
        """
        Constrói uma irrep a partir de "p,q" ou de um rótulo de dimensão

        Args:
            text (str): "1,1", "8", "3bar", "15'", "6bar"

        Returns:
            Irrep: irrep correspondente

        Raises:
            ValueError: Se o rótulo não corresponder a nenhuma irrep
        """
        text = str(text).strip().replace('\u0304', 'bar')
        if ',' in text:
            p, q = text.strip('()').split(',')
            return cls(int(p), int(q))
        match = _LABEL_RE.fullmatch(text)
        if not match:
            raise ValueError(f'Rótulo de irrep inválido: {text!r}')
        dim = int(match.group('dim'))
        primes = len(match.group('primes'))
        canonical = [r for r in _same_dimension(dim) if r.p >= r.q]
        if primes >= len(canonical):
            raise ValueError(f'Não existe irrep de SU(3) com rótulo {text!r}')
        irrep = canonical[primes]
        if match.group('bar'):
            if irrep.is_real:
                raise ValueError(f'A irrep {dim} é real e não tem conjugada distinta')
            irrep = irrep.conjugate()
        return irrep


_LABEL_RE = re.compile(r"(?P<dim>\d+)(?P<primes>'*)(?P<bar>bar|b)?")


def _same_dimension(dim):
    """Irreps com a dimensão dada, ordenadas por (casimir, p, q)"""
    found = []
    s = 0
    while (s + 1) * (s + 2) // 2 <= dim:
        for p in range(s + 1):
            r = Irrep(p, s - p)
            if r.dimension == dim:
                found.append(r)
        s += 1
    return sorted(found)


class IrrepMultiset(Mapping):
    """
    Soma direta de irreps com multiplicidades inteiras positivas

    Iteração em ordem canónica (casimir, p, q).
    """

    def __init__(self, entries=None):
        clean = {}
        for irrep, mult in dict(entries or {}).items():
            if mult < 0:
                raise ValueError(f'Multiplicidade negativa para {irrep}: {mult}')
            if mult:
                clean[irrep] = clean.get(irrep, 0) + int(mult)
        self._entries = dict(sorted(clean.items()))

    def __getitem__(self, irrep):
        return self._entries[irrep]

    def __iter__(self):
        return iter(self._entries)

    def __len__(self):
        return len(self._entries)

    def __eq__(self, other):
        if isinstance(other, Mapping):
            return self._entries == dict(other)
        return NotImplemented

    def __hash__(self):
        return hash(frozenset(self._entries.items()))

    def __repr__(self):
        body = ', '.join(f'({r}):{m}' for r, m in self._entries.items())
        return f'IrrepMultiset({{{body}}})'

    def multiplicity(self, irrep):
        return self._entries.get(irrep, 0)

    def total_dimension(self):
        return sum(r.dimension * m for r, m in self._entries.items())

    def conjugate(self):
        return IrrepMultiset({r.conjugate(): m for r, m in self._entries.items()})

    def restricted(self, trunc):
        return IrrepMultiset({r: m for r, m in self._entries.items() if trunc.admits(r)})


@dataclass(frozen=True)
class Truncation:
    """
    Truncamento de índices (Λp,Λq), opcionalmente restrito a uma lista
    de irreps permitidas (ex.: {1,3,3bar,8,6,15})
    """

    lambda_p: int
    lambda_q: int
    allowed: frozenset = field(default=None)

    def __post_init__(self):
        if self.lambda_p < 0 or self.lambda_q < 0:
            raise ValueError('Os cortes Λp e Λq devem ser não negativos')
        if self.allowed is not None:
            allowed = frozenset(self.allowed)
            bad = [r for r in allowed if r.p > self.lambda_p or r.q > self.lambda_q]
            if bad:
                raise ValueError(f'Irreps fora do truncamento: {sorted(bad)}')
            object.__setattr__(self, 'allowed', allowed)

    @classmethod
    def symmetric(cls, lam):
        return cls(lam, lam)

    @classmethod
    def from_irreps(cls, irreps, close_conjugates=False):
        """
        Truncamento definido por uma lista de irreps (rótulos ou Irrep)

        Args:
            irreps: iterável de Irrep ou rótulos como "3bar"
            close_conjugates (bool): acrescenta as conjugadas de cada irrep
        """
        chosen = {r if isinstance(r, Irrep) else Irrep.from_label(r) for r in irreps}
        if close_conjugates:
            chosen |= {r.conjugate() for r in chosen}
        if not chosen:
            raise ValueError('A lista de irreps permitidas não pode ser vazia')
        return cls(max(r.p for r in chosen), max(r.q for r in chosen), frozenset(chosen))

    @classmethod
    def parse(cls, text):
        """
        Interpreta o texto de truncamento da linha de comando

        Formatos aceites: "1" (Λp=Λq=1), "2,1" (Λp,Λq) e
        "{1,3,3bar,8}" (lista de irreps permitidas).
        """
        text = str(text).strip()
        if text.startswith('{') and text.endswith('}'):
            return cls.from_irreps(t for t in text[1:-1].split(',') if t.strip())
        parts = [t for t in text.split(',') if t.strip()]
        try:
            if len(parts) == 1:
                return cls.symmetric(int(parts[0]))
            if len(parts) == 2:
                return cls(int(parts[0]), int(parts[1]))
        except ValueError as e:
            raise ValueError(f'Truncamento inválido: {text!r}') from e
        raise ValueError(f'Truncamento inválido: {text!r}')

    def admits(self, irrep):
        if irrep.p > self.lambda_p or irrep.q > self.lambda_q:
            return False
        return self.allowed is None or irrep in self.allowed

    @cached_property
    def _irreps(self):
        if self.allowed is not None:
            return tuple(sorted(self.allowed))
        return tuple(sorted(
            Irrep(p, q) for p in range(self.lambda_p + 1) for q in range(self.lambda_q + 1)
        ))

    def irreps(self):
        return list(self._irreps)

    def conjugate(self):
        allowed = None if self.allowed is None else frozenset(r.conjugate() for r in self.allowed)
        return Truncation(self.lambda_q, self.lambda_p, allowed)

    def __str__(self):
        if self.allowed is not None:
            return '{' + ','.join(r.label() for r in self.irreps()) + '}'
        if self.lambda_p == self.lambda_q:
            return str(self.lambda_p)
        return f'{self.lambda_p},{self.lambda_q}'
