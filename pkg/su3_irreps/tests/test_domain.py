from fractions import Fraction

from django.test import SimpleTestCase

from su3_irreps.domain import Direction, Irrep, IrrepMultiset, Truncation


class IrrepTestCase(SimpleTestCase):
    """
    Testes para o tipo Irrep
    """

    def test_dimensao(self):
        # Testa a fórmula da dimensão nos casos conhecidos
        self.assertEqual(Irrep(0, 0).dimension, 1)
        self.assertEqual(Irrep(1, 1).dimension, 8)
        self.assertEqual(Irrep(2, 1).dimension, 15)
        self.assertEqual(Irrep(2, 2).dimension, 27)

    def test_casimir_racional(self):
        # Testa que o Casimir é racional exato
        self.assertEqual(Irrep(0, 0).casimir, 0)
        self.assertEqual(Irrep(1, 0).casimir, Fraction(4, 3))
        self.assertEqual(Irrep(1, 1).casimir, 3)
        self.assertIsInstance(Irrep(2, 0).casimir, Fraction)

    def test_conjugada(self):
        # Testa conjugação e invariância de dimensão e Casimir
        for p in range(4):
            for q in range(4):
                r = Irrep(p, q)
                self.assertEqual(r.conjugate().conjugate(), r)
                self.assertEqual(r.conjugate().dimension, r.dimension)
                self.assertEqual(r.conjugate().casimir, r.casimir)
        self.assertEqual(Irrep(1, 1).conjugate(), Irrep(1, 1))

    def test_indices_negativos(self):
        # Testa rejeição de índices negativos
        with self.assertRaises(ValueError):
            Irrep(-1, 0)

    def test_ordem_canonica(self):
        # Testa a ordenação por (casimir, p, q)
        ordered = sorted([Irrep(1, 1), Irrep(0, 1), Irrep(2, 0), Irrep(0, 0), Irrep(1, 0)])
        self.assertEqual(ordered, [Irrep(0, 0), Irrep(0, 1), Irrep(1, 0), Irrep(1, 1), Irrep(2, 0)])

    def test_rotulos(self):
        # Testa os rótulos por dimensão, com barra e plicas
        self.assertEqual(Irrep(0, 1).label(), '3bar')
        self.assertEqual(Irrep(0, 2).label(), '6bar')
        self.assertEqual(Irrep(1, 1).label(), '8')
        self.assertEqual(Irrep(2, 1).label(), '15')
        self.assertEqual(Irrep(4, 0).label(), "15'")
        self.assertEqual(str(Irrep(2, 1)), '2,1')

    def test_leitura_de_rotulos(self):
        # Testa a leitura de rótulos de texto
        self.assertEqual(Irrep.from_label('3bar'), Irrep(0, 1))
        self.assertEqual(Irrep.from_label('8'), Irrep(1, 1))
        self.assertEqual(Irrep.from_label('2,1'), Irrep(2, 1))
        self.assertEqual(Irrep.from_label("15'"), Irrep(4, 0))
        self.assertEqual(Irrep.from_label('3̄'), Irrep(0, 1))
        with self.assertRaises(ValueError):
            Irrep.from_label('7')
        with self.assertRaises(ValueError):
            Irrep.from_label('8bar')


class TruncationTestCase(SimpleTestCase):
    """
    Testes para o truncamento de índices
    """

    def test_truncamento_simetrico(self):
        # Testa a lista de irreps admitidas com Λ=1
        trunc = Truncation.symmetric(1)
        self.assertEqual(trunc.irreps(), [Irrep(0, 0), Irrep(0, 1), Irrep(1, 0), Irrep(1, 1)])
        self.assertFalse(trunc.admits(Irrep(2, 0)))

    def test_lista_permitida(self):
        # Testa truncamento intermédio com lista de irreps
        trunc = Truncation.from_irreps(['1', '3', '8', '6'], close_conjugates=True)
        self.assertEqual(len(trunc.irreps()), 6)
        self.assertTrue(trunc.admits(Irrep(0, 2)))
        self.assertFalse(trunc.admits(Irrep(2, 1)))

    def test_leitura_de_texto(self):
        # Testa os três formatos aceites
        self.assertEqual(Truncation.parse('2'), Truncation(2, 2))
        self.assertEqual(Truncation.parse('2,1'), Truncation(2, 1))
        self.assertEqual(len(Truncation.parse('{1,3,3bar}').irreps()), 3)
        with self.assertRaises(ValueError):
            Truncation.parse('a,b,c')

    def test_irreps_fora_do_corte(self):
        # Testa rejeição de irreps fora de (Λp,Λq)
        with self.assertRaises(ValueError):
            Truncation(1, 1, frozenset({Irrep(2, 0)}))


class IrrepMultisetTestCase(SimpleTestCase):
    """
    Testes para a soma direta com multiplicidades
    """

    def test_dimensao_total(self):
        # Testa a soma das dimensões
        ms = IrrepMultiset({Irrep(1, 1): 2, Irrep(0, 0): 1})
        self.assertEqual(ms.total_dimension(), 17)
        self.assertEqual(ms.multiplicity(Irrep(2, 0)), 0)

    def test_direcao(self):
        # Testa a irrep associada a cada direção
        self.assertEqual(Direction.FUND.irrep, Irrep(1, 0))
        self.assertIs(Direction.FUND.reverse(), Direction.ANTIFUND)
