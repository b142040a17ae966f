import os
import tempfile

import numpy as np
from django.test import SimpleTestCase

from su2_reference.domain import SU2PlaquetteModel
from su2_reference.services import (
    dump_ground_state_csv,
    ground_energy,
    ground_energy_convergence,
    ground_state,
    su2_hamiltonian,
    tail_slope,
    tail_slope_sweep,
    tail_window,
)


class HamiltonianTestCase(SimpleTestCase):
    """
    Testes para o hamiltoniano tridiagonal SU(2)
    """

    def test_elementos(self):
        # Testa a diagonal e as entradas fora da diagonal
        g = 0.7
        h = su2_hamiltonian(SU2PlaquetteModel(10, g)).dense()
        self.assertAlmostEqual(h[0, 0], 2 / g ** 2)
        self.assertAlmostEqual(h[1, 1], g ** 2 + 2 / g ** 2)
        np.testing.assert_allclose(np.diag(h, 1), -1 / g ** 2)
        np.testing.assert_allclose(np.diag(h, -1), -1 / g ** 2)
        self.assertEqual(np.count_nonzero(np.triu(h, 2)), 0)

    def test_modelo(self):
        # Testa as mesmas entradas pelo modelo e pelo operador
        model = SU2PlaquetteModel(6, 1.3)
        h = su2_hamiltonian(model).dense()
        np.testing.assert_allclose(np.diag(h), model.diagonal())
        np.testing.assert_allclose(np.diag(h, 1), model.off_diagonal())

    def test_parametros(self):
        # Testa a rejeição de g ≤ 0 e de j_max < 1
        with self.assertRaises(ValueError):
            SU2PlaquetteModel(10, 0.0)
        with self.assertRaises(ValueError):
            SU2PlaquetteModel(0, 1.0)


class GroundStateTestCase(SimpleTestCase):
    """
    Testes para o estado fundamental e a sua cauda
    """

    def test_positivo(self):
        # Testa ψ₀(j) > 0 em todo o intervalo
        for g in (0.5, 1.0, 2.0):
            with self.subTest(g=g):
                _, psi = ground_state(SU2PlaquetteModel(40, g))
                self.assertTrue(np.all(psi > 0))
                self.assertAlmostEqual(float(np.linalg.norm(psi)), 1.0)

    def test_contra_diagonalizacao_densa(self):
        # Testa as razões contra o vetor próprio denso
        model = SU2PlaquetteModel(30, 0.6)
        w, v = np.linalg.eigh(su2_hamiltonian(model).dense())
        energy, psi = ground_state(model)
        dense = np.abs(v[:, 0])
        self.assertAlmostEqual(energy, w[0], places=10)
        np.testing.assert_allclose(psi, dense, atol=1e-10)

    def test_convergencia_da_energia(self):
        # Testa que duplicar j_max não altera E₀
        for g in (0.5, 1.0):
            with self.subTest(g=g):
                (_, e1), (_, e2) = ground_energy_convergence(g, [40, 80])
                self.assertLess(abs(e1 - e2), 1e-10)

    def test_acoplamento_forte(self):
        # Testa E₀ → 2/g², só a constante magnética, no acoplamento forte
        g = 20.0
        self.assertAlmostEqual(ground_energy(SU2PlaquetteModel(10, g)), 2 / g ** 2, delta=1e-4)


class TailSlopeTestCase(SimpleTestCase):
    """
    Testes para o declive gaussiano da cauda
    """

    def test_previsao_continua(self):
        # Testa o declive dentro de 15% de −g²/(2√2)
        for g in (0.2, 0.25):
            with self.subTest(g=g):
                model = SU2PlaquetteModel(60, g)
                slope = tail_slope(model)
                predicted = model.predicted_slope()
                self.assertLess(abs(slope - predicted) / abs(predicted), 0.15)

    def test_negativo(self):
        # Testa declives negativos com janelas explícitas
        for g in (0.5, 1.0, 2.0):
            with self.subTest(g=g):
                self.assertLess(tail_slope(SU2PlaquetteModel(40, g), window=(2, 20)), 0)

    def test_janela(self):
        # Testa a janela [⌈4/g⌉, ⌊√2/g²⌋] e o erro para janelas curtas
        self.assertEqual(tail_window(SU2PlaquetteModel(60, 0.25)), (16, 22))
        with self.assertRaises(ValueError):
            tail_window(SU2PlaquetteModel(40, 1.0))
        with self.assertRaises(ValueError):
            tail_slope(SU2PlaquetteModel(40, 1.0), window=(5, 6))

    def test_varrimento(self):
        # Testa o varrimento em g pela ordem de entrada
        rows = tail_slope_sweep([0.25, 0.2], 60)
        self.assertEqual([g for g, _, _ in rows], [0.25, 0.2])
        self.assertTrue(all(s < 0 and p < 0 for _, s, p in rows))

    def test_csv(self):
        # Testa o ficheiro (j, ψ₀(j)) com cabeçalho de esquema
        model = SU2PlaquetteModel(12, 1.0)
        with tempfile.TemporaryDirectory() as tmp:
            path = os.path.join(tmp, 'psi.csv')
            dump_ground_state_csv(path, model)
            with open(path, encoding='utf-8') as fh:
                lines = fh.read().splitlines()
        self.assertEqual(lines[0], '# schema=1')
        self.assertEqual(lines[2], 'j,psi0')
        self.assertEqual(len(lines), 3 + 13)
