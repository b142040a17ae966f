import numpy as np
from django.test import SimpleTestCase
from scipy.linalg import expm

from evolution.schemes import (
    T133,
    color3_operator,
    even_odd_scheme,
    exact_scheme,
    named_scheme,
    positive_couplings,
    twoplaq_pp_operator,
)
from gauge_basis.geometry import one_plaquette, two_plaquette_pbc
from gauge_basis.services import local_basis
from qubit_compile.pauli import pauli_sum

R2 = np.sqrt(2)


def terms(scheme):
    return dict(scheme.terms)


class NamedSchemeTestCase(SimpleTestCase):
    """
    Testes para os esquemas com nome
    """

    def test_global8(self):
        # Testa H1 e H2 do plaquete {1,3,3bar,8}
        g = 1.3
        g2 = g * g
        t = terms(named_scheme('global8', g))
        h1 = pauli_sum({
            'II': 17 * g2 / 6 + 3 / g2, 'ZI': -1.5 * g2, 'IZ': -1.5 * g2,
            'XI': -0.5 / g2, 'IX': -0.5 / g2,
        }).real
        h2 = pauli_sum({'ZZ': g2 / 6, 'XX': -0.25 / g2, 'YY': -0.25 / g2}).real
        np.testing.assert_allclose(t['H1'], h1, atol=1e-12)
        np.testing.assert_allclose(t['H2'], h2, atol=1e-12)
        self.assertEqual(named_scheme('global8').order, 2)

    def test_color6(self):
        # Testa H1, H2 e H3 da paridade de cor truncada em 6
        g = 0.8
        g2 = g * g
        t = terms(named_scheme('color6', g))
        h1 = pauli_sum({
            'II': 23 * g2 / 6 + 23 / (8 * g2),
            'ZI': -(5 * g2 / 2 + 1 / (8 * g2)),
            'IZ': -(g2 / 2 - 1 / (8 * g2)),
            'XI': -1 / (2 * R2 * g2),
            'IX': -1 / (R2 * g2),
        }).real
        h2 = pauli_sum({'XZ': 1 / (2 * R2 * g2)}).real
        h3 = pauli_sum({
            'XX': -1 / (4 * g2), 'YY': -1 / (4 * g2), 'ZZ': -(5 * g2 / 6 - 1 / (8 * g2)),
        }).real
        np.testing.assert_allclose(t['H1'], h1, atol=1e-12)
        np.testing.assert_allclose(t['H2'], h2, atol=1e-12)
        np.testing.assert_allclose(t['H3'], h3, atol=1e-12)

    def test_twoplaq_pp(self):
        # Testa os três termos do setor ++ de dois plaquetes
        t = terms(named_scheme('twoplaq_pp', 1.0))
        h1 = pauli_sum({
            'II': 7 / 3 + 23 / 8, 'ZI': -(1 / 8 + 1), 'IZ': 1 / 8 - 1,
            'XI': -1 / (6 * R2), 'IX': -2 / 3,
        }).real
        h2 = pauli_sum({'ZZ': 1 / 8 - 1 / 3, 'XX': -1 / (18 * R2), 'YY': -1 / (18 * R2)}).real
        h3 = pauli_sum({'XZ': 1 / (6 * R2), 'ZX': -1 / 3}).real
        np.testing.assert_allclose(t['H1'], h1, atol=1e-12)
        np.testing.assert_allclose(t['H2'], h2, atol=1e-12)
        np.testing.assert_allclose(t['H3'], h3, atol=1e-12)

    def test_nome_desconhecido(self):
        # Testa o erro para um esquema inexistente
        with self.assertRaises(ValueError):
            named_scheme('quatro_plaquetes')


class SignsTestCase(SimpleTestCase):
    """
    Testes para a escolha de sinais dos estados
    """

    def test_acoplamentos_positivos(self):
        # Testa □ sem elementos negativos e o espectro inalterado
        operator = twoplaq_pp_operator()
        box = -operator.magnetic.toarray()
        self.assertTrue((box >= -1e-12).all())
        self.assertEqual(float(operator.electric_diag[0]), 0.0)
        again = positive_couplings(operator)
        np.testing.assert_allclose(
            np.linalg.eigvalsh(again.dense()), np.linalg.eigvalsh(operator.dense()), atol=1e-12,
        )

    def test_color3(self):
        # Testa o hamiltoniano de {1,3+} com acoplamento −√2
        np.testing.assert_allclose(
            color3_operator().magnetic_matrix(), [[6, -R2], [-R2, 5]], atol=1e-12,
        )


class GenericSchemeTestCase(SimpleTestCase):
    """
    Testes para os esquemas exato e par/ímpar
    """

    def test_exato(self):
        # Testa que uma etapa do esquema exato é e^{−iHΔt}
        operator = color3_operator(0.9)
        s = exact_scheme(operator, dt=0.7)
        np.testing.assert_allclose(s.step_unitary(), expm(-0.7j * operator.dense()), atol=1e-12)

    def test_par_impar_dois_plaquetes(self):
        # Testa os termos D, even e odd sobre a base local
        s = even_odd_scheme(local_basis(two_plaquette_pbc(), T133), g=1.0)
        self.assertEqual([label for label, _ in s.terms], ['D', 'even', 'odd'])
        d = dict(s.terms)['D']
        np.testing.assert_allclose(d, np.diag(np.diag(d)))

    def test_par_impar_um_plaquete(self):
        # Testa que um plaquete isolado só tem o termo par
        s = even_odd_scheme(local_basis(one_plaquette(), T133), g=1.0)
        self.assertEqual([label for label, _ in s.terms], ['D', 'even'])
