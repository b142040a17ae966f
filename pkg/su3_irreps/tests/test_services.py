from django.test import SimpleTestCase

from su3_irreps.domain import Direction, Irrep, IrrepMultiset, Truncation
from su3_irreps.services import (
    coleman_decompose,
    hex_neighbors,
    singlet_multiplicity,
    tensor_decompose,
    tensor_fundamental,
)


def irreps_ate(lam):
    return [Irrep(p, q) for p in range(lam + 1) for q in range(lam + 1)]


class TensorFundamentalTestCase(SimpleTestCase):
    """
    Testes para o produto com o fundamental
    """

    def test_casos_de_fronteira(self):
        # Testa o corte de termos com índices negativos
        self.assertEqual(tensor_fundamental(Irrep(0, 0)), {Irrep(1, 0): 1})
        self.assertEqual(tensor_fundamental(Irrep(1, 0)), {Irrep(2, 0): 1, Irrep(0, 1): 1})
        self.assertEqual(
            tensor_fundamental(Irrep(1, 1)),
            {Irrep(2, 1): 1, Irrep(0, 2): 1, Irrep(1, 0): 1},
        )

    def test_antifundamental(self):
        # Testa a variante (0,1)
        self.assertEqual(tensor_fundamental(Irrep(0, 0), Direction.ANTIFUND), {Irrep(0, 1): 1})

    def test_concorda_com_lr(self):
        # Testa a concordância com a decomposição completa até p,q ≤ 12
        for r in irreps_ate(12):
            self.assertEqual(tensor_fundamental(r), tensor_decompose(r, Irrep(1, 0)))
            self.assertEqual(
                tensor_fundamental(r, Direction.ANTIFUND), tensor_decompose(r, Irrep(0, 1))
            )


class TensorDecomposeTestCase(SimpleTestCase):
    """
    Testes para a decomposição de Littlewood-Richardson
    """

    def test_tres_por_tres_barra(self):
        # Testa 3⊗3bar = 8⊕1
        self.assertEqual(tensor_decompose(Irrep(1, 0), Irrep(0, 1)), {Irrep(1, 1): 1, Irrep(0, 0): 1})

    def test_oito_por_oito(self):
        # Testa 8⊗8 = 27⊕10⊕10bar⊕8⊕8⊕1
        expected = {Irrep(2, 2): 1, Irrep(3, 0): 1, Irrep(0, 3): 1, Irrep(1, 1): 2, Irrep(0, 0): 1}
        self.assertEqual(tensor_decompose(Irrep(1, 1), Irrep(1, 1)), expected)

    def test_singleto_identidade(self):
        # Testa que o singleto é a identidade do produto
        for r in irreps_ate(4):
            self.assertEqual(tensor_decompose(Irrep(0, 0), r), {r: 1})
            self.assertEqual(tensor_decompose(r, Irrep(0, 0)), {r: 1})

    def test_regra_da_soma_e_conjugacao(self):
        # Testa a regra da soma de dimensões e a covariância por conjugação
        for r1 in irreps_ate(3):
            for r2 in irreps_ate(3):
                d = tensor_decompose(r1, r2)
                self.assertEqual(d.total_dimension(), r1.dimension * r2.dimension)
                self.assertEqual(tensor_decompose(r1.conjugate(), r2.conjugate()), d.conjugate())
                self.assertEqual(tensor_decompose(r2, r1), d)

    def test_formula_explicita(self):
        # Testa a fórmula explícita contra LR
        for r1 in irreps_ate(4):
            for r2 in irreps_ate(4):
                self.assertEqual(coleman_decompose(r1, r2), tensor_decompose(r1, r2))


class SingletMultiplicityTestCase(SimpleTestCase):
    """
    Testes para a multiplicidade do singleto
    """

    def test_produtos_conhecidos(self):
        # Testa 3⊗3⊗3, 3⊗3⊗15 e 8⊗8⊗8
        three = Irrep(1, 0)
        self.assertEqual(singlet_multiplicity([three, three, three]), 1)
        self.assertEqual(singlet_multiplicity([three, three, Irrep(2, 1)]), 0)
        self.assertEqual(singlet_multiplicity([Irrep(1, 1)] * 3), 2)
        self.assertEqual(singlet_multiplicity([Irrep(0, 0)] * 3), 1)


class HexNeighborsTestCase(SimpleTestCase):
    """
    Testes para o diagrama de conectividade
    """

    def test_vacuo(self):
        # Testa as arestas a partir do singleto com Λ=1
        edges = hex_neighbors(Irrep(0, 0), Truncation.symmetric(1))
        self.assertEqual(edges, [(Irrep(1, 0), Direction.FUND), (Irrep(0, 1), Direction.ANTIFUND)])

    def test_octeto_truncado(self):
        # Testa que o corte Λ=1 deixa apenas o 3 na direção fundamental
        edges = hex_neighbors(Irrep(1, 1), Truncation.symmetric(1))
        fund = [r for r, d in edges if d is Direction.FUND]
        self.assertEqual(fund, [Irrep(1, 0)])

    def test_irrep_interior(self):
        # Testa 3 arestas por direção longe da fronteira
        edges = hex_neighbors(Irrep(3, 3), Truncation.symmetric(10))
        self.assertEqual(sum(1 for _, d in edges if d is Direction.FUND), 3)
        self.assertEqual(sum(1 for _, d in edges if d is Direction.ANTIFUND), 3)
        self.assertIsInstance(tensor_fundamental(Irrep(3, 3)), IrrepMultiset)
