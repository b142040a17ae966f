from fractions import Fraction

import numpy as np
from django.test import SimpleTestCase

from su3_irreps.domain import Irrep
from su3_clebsch.states import enumerate_states, generators, structure_constants


def irreps_ate(lam):
    return [Irrep(p, q) for p in range(lam + 1) for q in range(lam + 1)]


class EnumerateStatesTestCase(SimpleTestCase):
    """
    Testes para a enumeração de padrões de Gelfand-Tsetlin
    """

    def test_contagem_igual_a_dimensao(self):
        # Testa que o número de estados é a dimensão
        for r in irreps_ate(4):
            self.assertEqual(len(enumerate_states(r)), r.dimension)

    def test_singleto(self):
        # Testa o único estado do singleto
        (state,) = enumerate_states(Irrep(0, 0))
        self.assertEqual(state.label, (0, 0, 0))

    def test_octeto(self):
        # Testa que o 8 contém (T,Tz,Y) = (0,0,0) e (1,0,0)
        labels = [s.label for s in enumerate_states(Irrep(1, 1))]
        self.assertIn((0, 0, 0), labels)
        self.assertIn((1, 0, 0), labels)
        self.assertEqual(len(set(labels)), 8)

    def test_ordem_deterministica(self):
        # Testa a ordem Y, T, Tz decrescentes no tripleto
        labels = [s.label for s in enumerate_states(Irrep(1, 0))]
        self.assertEqual(labels, [
            (Fraction(1, 2), Fraction(1, 2), Fraction(1, 3)),
            (Fraction(1, 2), Fraction(-1, 2), Fraction(1, 3)),
            (0, 0, Fraction(-2, 3)),
        ])

    def test_projecao_dentro_do_multipleto(self):
        # Testa Tz ∈ {−T, …, T}
        for r in irreps_ate(3):
            for s in enumerate_states(r):
                self.assertLessEqual(abs(s.Tz), s.T)
                self.assertEqual((s.T - s.Tz) % 1, 0)


class GeneratorsTestCase(SimpleTestCase):
    """
    Testes para as matrizes dos geradores
    """

    def test_singleto_nulo(self):
        # Testa que os geradores do singleto são nulos
        for t in generators(Irrep(0, 0)).hermitian:
            self.assertEqual(t.shape, (1, 1))
            self.assertEqual(abs(t[0, 0]), 0)

    def test_casimir(self):
        # Testa Σ T² = casimir·I nas realizações padrão e dual
        for r in irreps_ate(3):
            for dual in (False, True):
                c = generators(r, dual).casimir_matrix()
                np.testing.assert_allclose(c, float(r.casimir) * np.eye(r.dimension), atol=1e-12)

    def test_hermiticidade(self):
        # Testa que T1…T8 são hermitianos e E21 = E12ᵀ
        gen = generators(Irrep(2, 1))
        for t in gen.hermitian:
            np.testing.assert_allclose(t, t.conj().T, atol=1e-12)
        np.testing.assert_allclose(gen.ladder['E21'], gen.ladder['E12'].T)

    def test_relacoes_de_comutacao(self):
        # Testa [T_a, T_b] = i f_abc T_c para p,q ≤ 4
        f = structure_constants()
        for r in irreps_ate(4):
            for dual in (False, True):
                ts = generators(r, dual).hermitian
                for a in range(8):
                    for b in range(a + 1, 8):
                        lhs = ts[a] @ ts[b] - ts[b] @ ts[a]
                        rhs = 1j * sum(f[a, b, c] * ts[c] for c in range(8))
                        np.testing.assert_allclose(lhs, rhs, atol=1e-12)

    def test_tripleto_gell_mann(self):
        # Testa que no 3 os geradores são as matrizes de Gell-Mann sobre 2
        ts = generators(Irrep(1, 0)).hermitian
        lambda7 = np.array([[0, 0, 0], [0, 0, -1j], [0, 1j, 0]])
        np.testing.assert_allclose(ts[6], lambda7 / 2, atol=1e-15)
        np.testing.assert_allclose(ts[7], np.diag([1, 1, -2]) / (2 * np.sqrt(3)), atol=1e-15)
