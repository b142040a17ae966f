import json
import os
import tempfile

import numpy as np
from django.test import SimpleTestCase

from su3_irreps.domain import Irrep
from su3_irreps.services import tensor_decompose
from su3_clebsch.cg import cg_decompose, cg_tensors, dump_cg_json, intertwiners, nine_r, stacked_cg_matrix
from su3_clebsch.states import generators
from su3_clebsch.vertex import canonical_map, to_canonical, vertex_tensor

ONE, THREE, THREE_BAR, EIGHT = Irrep(0, 0), Irrep(1, 0), Irrep(0, 1), Irrep(1, 1)


def irreps_ate(lam):
    return [Irrep(p, q) for p in range(lam + 1) for q in range(lam + 1)]


class CGDecomposeTestCase(SimpleTestCase):
    """
    Testes para os coeficientes de Clebsch-Gordan
    """

    def test_singleto_de_tres_por_tres_barra(self):
        # Testa quadrados 1/3 nos três pares que conservam (Tz,Y)
        (t,) = cg_tensors(THREE, THREE_BAR, ONE)
        squares = t.coefficients[:, :, 0] ** 2
        np.testing.assert_allclose(np.sort(squares[squares > 1e-12]), [1 / 3] * 3, atol=1e-12)
        self.assertAlmostEqual(squares.sum(), 1.0, places=12)

    def test_octeto_simetrico_e_antissimetrico(self):
        # Testa as duas cópias do 8 em 8⊗8: γ=0 simétrica, γ=1 antissimétrica
        sym, anti = cg_tensors(EIGHT, EIGHT, EIGHT)
        self.assertEqual((sym.gamma, anti.gamma), (0, 1))
        np.testing.assert_allclose(sym.coefficients, sym.coefficients.transpose(1, 0, 2), atol=1e-12)
        np.testing.assert_allclose(anti.coefficients, -anti.coefficients.transpose(1, 0, 2), atol=1e-12)

    def test_ortonormalidade_e_regra_da_soma(self):
        # Testa ortonormalidade, regra da soma e completude para p,q ≤ 2
        for r1 in irreps_ate(2):
            for r2 in irreps_ate(2):
                tensors = cg_decompose(r1, r2)
                expected = sum(tensor_decompose(r1, r2).values())
                self.assertEqual(len(tensors), expected)
                for t in tensors:
                    self.assertAlmostEqual(np.sum(t.coefficients ** 2), t.r_out.dimension, places=10)
                    self.assertTrue(np.isrealobj(t.coefficients))
                stacked = stacked_cg_matrix(r1, r2)
                n = r1.dimension * r2.dimension
                self.assertEqual(stacked.shape, (n, n))
                np.testing.assert_allclose(stacked.T @ stacked, np.eye(n), atol=1e-10)

    def test_bloco_diagonalizacao(self):
        # Testa que os CG bloco-diagonalizam os geradores do produto
        for r1 in irreps_ate(2):
            for r2 in irreps_ate(2):
                g1, g2 = generators(r1), generators(r2)
                for a in range(8):
                    total = np.kron(g1.hermitian[a], np.eye(r2.dimension)) + np.kron(
                        np.eye(r1.dimension), g2.hermitian[a]
                    )
                    for t in cg_decompose(r1, r2):
                        w = t.as_matrix()
                        block = w.T @ total @ w
                        np.testing.assert_allclose(block, generators(t.r_out).hermitian[a], atol=1e-10)

    def test_determinismo(self):
        # Testa que recalcular devolve arrays idênticos bit a bit
        first = [t.coefficients.copy() for t in cg_decompose(EIGHT, EIGHT)]
        intertwiners.cache_clear()
        cg_decompose.cache_clear()
        second = [t.coefficients for t in cg_decompose(EIGHT, EIGHT)]
        for a, b in zip(first, second):
            self.assertTrue(np.array_equal(a, b))

    def test_exportacao_json(self):
        # Testa a exportação com chaves "p1,q1|p2,q2|pout,qout|gamma"
        with tempfile.TemporaryDirectory() as tmp:
            path = os.path.join(tmp, 'cg.json')
            count = dump_cg_json(path, [(THREE, THREE_BAR)])
            with open(path, encoding='utf-8') as fh:
                payload = json.load(fh)
        self.assertEqual(payload['schema'], 1)
        self.assertEqual(count, 2)
        self.assertIn('1,0|0,1|0,0|0', payload['tensors'])


class NineRTestCase(SimpleTestCase):
    """
    Testes para os símbolos 9-R com truncamento Λ=1
    """

    def valor(self, text):
        return nine_r(text.split())

    def test_valores_sem_multiplicidade(self):
        # Testa os valores absolutos dos símbolos sem multiplicidade
        casos = [
            ('1 3 3 3bar 1 3bar 3bar 3 1', 1.0),
            ('1 3 3 3bar 1 3bar 3bar 3 8', 8.0),
            ('3 3bar 1 3bar 1 3bar 8 3bar 3bar', 2 * np.sqrt(2)),
            ('3 3bar 1 3 1 3 3bar 3bar 3', np.sqrt(3)),
            ('3 3 3bar 3 1 3 3bar 3 1', 1.0),
            ('3 3 3bar 3 1 3 3bar 3 8', 4.0),
            ('3 3 3bar 3bar 1 3bar 8 3 3', np.sqrt(6)),
        ]
        for text, expected in casos:
            self.assertAlmostEqual(abs(self.valor(text)), expected, places=10, msg=text)

    def test_valores_com_multiplicidade(self):
        # Testa 8⊗8→8: as partes simétrica e antissimétrica e o par conjugado
        direct = self.valor('8 8 8 3 1 3 3 8 3')
        conjugate = self.valor('8 8 8 3bar 1 3bar 3bar 8 3bar')
        expected = sorted([0.75 * (np.sqrt(5) + 3), 0.75 * (3 - np.sqrt(5))])
        np.testing.assert_allclose(sorted([abs(direct), abs(conjugate)]), expected, atol=1e-10)
        slots = '8 8 8 3 1 3 3 8 3'.split()
        parts = [abs(nine_r(slots, gamma=(0, g, 0, 0))) for g in (0, 1)]
        np.testing.assert_allclose(parts, [0.75 * np.sqrt(5), 2.25], atol=1e-10)

    def test_cadeia_proibida(self):
        # Testa valor nulo quando uma cadeia não contém a irrep pedida
        self.assertEqual(self.valor('1 3 3 3 1 3 3bar 3 1'), 0.0)

    def test_padrao_invalido(self):
        # Testa a rejeição de uma linha do meio não suportada
        with self.assertRaises(ValueError):
            self.valor('1 3 3 8 1 8 8 3 3')


class VertexTensorTestCase(SimpleTestCase):
    """
    Testes para os tensores invariantes de vértice
    """

    def test_invariancia(self):
        # Testa que o tensor é aniquilado pelos geradores totais
        ends = ((THREE, True), (THREE, False), (EIGHT, True))
        tensor = vertex_tensor(ends)
        self.assertAlmostEqual(np.linalg.norm(tensor), 1.0, places=12)
        gens = [generators(r, not inc) for r, inc in ends]
        for a in range(8):
            total = (
                np.einsum('ia,abc->ibc', gens[0].hermitian[a], tensor)
                + np.einsum('ib,abc->aic', gens[1].hermitian[a], tensor)
                + np.einsum('ic,abc->abi', gens[2].hermitian[a], tensor)
            )
            np.testing.assert_allclose(total, 0, atol=1e-10)

    def test_sem_singleto(self):
        # Testa que 3⊗3⊗15 (todas a sair) não tem tensor invariante
        ends = ((THREE, False), (THREE, False), (Irrep(2, 1), False))
        self.assertIsNone(vertex_tensor(ends))

    def test_vertice_de_duas_ligacoes(self):
        # Testa o singleto de uma ligação que entra e outra que sai com a mesma irrep
        tensor = vertex_tensor(((EIGHT, True), (EIGHT, False)))
        self.assertEqual(tensor.shape, (8, 8))
        self.assertAlmostEqual(np.linalg.norm(tensor), 1.0, places=12)

    def test_vertice_de_quatro_ligacoes(self):
        # Testa a rejeição de vértices com quatro extremidades
        with self.assertRaises(ValueError):
            vertex_tensor(((ONE, True),) * 4)

    def test_mapa_canonico_entrelaca(self):
        # Testa que o mapa da realização dual do 3 leva os geradores aos do 3bar padrão
        target, m = canonical_map(THREE, True)
        self.assertEqual(target, THREE_BAR)
        np.testing.assert_allclose(m @ m.T, np.eye(3), atol=1e-12)
        dual, std = generators(THREE, True), generators(THREE_BAR)
        for a in range(8):
            np.testing.assert_allclose(m @ dual.hermitian[a], std.hermitian[a] @ m, atol=1e-10)

    def test_octetos_acoplamento_simetrico(self):
        # Testa que o vértice 8⊗8⊗8 usa o singleto simétrico nas coordenadas padrão
        ends = ((EIGHT, True), (EIGHT, False), (EIGHT, True))
        tensor = vertex_tensor(ends)
        self.assertAlmostEqual(np.linalg.norm(tensor), 1.0, places=12)
        canonical = to_canonical(tensor, tuple((r, not inc) for r, inc in ends))
        np.testing.assert_allclose(canonical, canonical.transpose(1, 0, 2), atol=1e-10)
        np.testing.assert_allclose(canonical, canonical.transpose(2, 1, 0), atol=1e-10)
        gens = [generators(r, not inc) for r, inc in ends]
        for a in range(8):
            total = (
                np.einsum('ia,abc->ibc', gens[0].hermitian[a], tensor)
                + np.einsum('ib,abc->aic', gens[1].hermitian[a], tensor)
                + np.einsum('ic,abc->abi', gens[2].hermitian[a], tensor)
            )
            np.testing.assert_allclose(total, 0, atol=1e-10)
