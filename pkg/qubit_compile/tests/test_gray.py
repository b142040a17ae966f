import numpy as np
from django.test import SimpleTestCase
from scipy.linalg import expm

from qubit_compile.circuits import GateKind
from qubit_compile.gray import gray_rotation_circuit, plan_gray_rotation, plaquette_rotation_circuit
from qubit_compile.pauli import operator_string_matrix
from qubit_compile.registers import plaquette_hermitian_terms


def target(string, alpha):
    o = operator_string_matrix(string)
    return expm(-1j * alpha * (o + o.conj().T))


class GrayRotationTestCase(SimpleTestCase):
    """
    Testes para as rotações de dois níveis por código de Gray
    """

    def test_caminho_1000_0111(self):
        # Testa o caminho 0111 → 1111 → 1110 → 1100 e a rotação para 1000
        plan = plan_gray_rotation('bBBB')
        self.assertEqual((plan.source, plan.target), ('0111', '1000'))
        self.assertEqual(plan.path(), ['0111', '1111', '1110', '1100'])
        self.assertEqual(plan.rotation_qubit, 1)
        self.assertEqual(plan.stages(), 7)

    def test_circuito_1000_0111(self):
        # Testa a unitária do circuito de quatro qubits
        circuit = gray_rotation_circuit('bBBB', 0.37)
        np.testing.assert_allclose(circuit.unitary(), target('bBBB', 0.37), atol=1e-12)
        self.assertLessEqual(circuit.depth(), 2 * 4 + 1)

    def test_hamming_um(self):
        # Testa uma única rotação controlada sem passos de Gray
        circuit = gray_rotation_circuit('IIbI', 0.8)
        self.assertEqual(len(circuit.gates), 1)
        self.assertEqual(circuit.gates[0].kind, GateKind.GIVENS)
        self.assertEqual(circuit.gates[0].controls, ())
        np.testing.assert_allclose(circuit.unitary(), target('IIbI', 0.8), atol=1e-12)

    def test_cadeias_aleatorias_seis_qubits(self):
        # Testa cadeias aleatórias de seis qubits contra a exponencial densa
        rng = np.random.default_rng(11)
        for _ in range(10):
            string = ''.join(rng.choice(list('IbB'), size=6))
            if set(string) == {'I'}:
                continue
            alpha = rng.uniform(-np.pi, np.pi)
            circuit = gray_rotation_circuit(string, alpha)
            np.testing.assert_allclose(circuit.unitary(), target(string, alpha), atol=1e-12)
            hamming = sum(ch != 'I' for ch in string)
            self.assertLessEqual(circuit.depth(), 2 * hamming + 1)

    def test_ordem_alternativa(self):
        # Testa que outro caminho de Gray dá a mesma unitária
        circuit = gray_rotation_circuit('bBBB', 0.5, order=[3, 2, 1, 0])
        np.testing.assert_allclose(circuit.unitary(), target('bBBB', 0.5), atol=1e-12)

    def test_erros(self):
        # Testa cadeias sem b/B e ordens inválidas
        with self.assertRaises(ValueError):
            plan_gray_rotation('III')
        with self.assertRaises(ValueError):
            plan_gray_rotation('bB', order=[0])
        with self.assertRaises(ValueError):
            plan_gray_rotation('bX')

    def test_termos_do_plaquete(self):
        # Testa cada termo O_j + O_j† de n=2 e o circuito completo
        for string in plaquette_hermitian_terms(2):
            circuit = gray_rotation_circuit(string, 0.21)
            np.testing.assert_allclose(circuit.unitary(), target(string, 0.21), atol=1e-12)
        full = plaquette_rotation_circuit(2, 0.21)
        u = full.unitary()
        np.testing.assert_allclose(u @ u.conj().T, np.eye(16), atol=1e-12)
