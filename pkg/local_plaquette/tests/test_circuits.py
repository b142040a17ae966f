import dataclasses
import os
import tempfile
import json
from functools import reduce

import numpy as np
from django.test import SimpleTestCase
from scipy import sparse
from scipy.linalg import expm

from evolution.schemes import T133, T1338
from gauge_basis.geometry import two_plaquette_pbc
from local_plaquette.circuits import (
    PQ_BITS,
    Encoding,
    compile_sector_circuit,
    pq_generator_matrix,
    pq_index,
    sector_resources,
    xstring_rotation_gates,
)
from local_plaquette.domain import Completion, SectorTerm
from local_plaquette.services import (
    build_all_generators,
    build_sector_generator,
    embed_sector_generator,
    parse_sector,
    qudit_levels,
)
from qubit_compile.circuits import Circuit, simulate

PAIRS = ((0, 1), (0, 2), (1, 2))


def xstring(modes, d=3):
    factors = []
    for j, k in modes:
        m = np.zeros((d, d))
        m[j, k] = m[k, j] = 1.0
        factors.append(m)
    return reduce(np.kron, factors)


def rotation(e, theta):
    """exp(−iθE) para E hermítico com E² projetor"""
    e2 = e @ e
    return sparse.identity(e.shape[0], format='csr') - (1 - np.cos(theta)) * e2 - 1j * np.sin(theta) * e


class XStringCircuitTestCase(SimpleTestCase):
    """
    Testes para a decomposição de exp(−iα𝒳⊗…⊗𝒳)
    """

    def test_dois_qutrits(self):
        # Testa G^{𝒳𝒳}_jk com a rotação do modo espectador
        for pair in PAIRS:
            with self.subTest(pair=pair):
                alpha = 0.83
                circuit = Circuit((3, 3)).extend(xstring_rotation_gates((3, 3), [0, 1], [pair, pair], alpha))
                target = expm(-1j * alpha * xstring([pair, pair]))
                np.testing.assert_allclose(circuit.unitary(), target, atol=1e-10)

    def test_pares_diferentes(self):
        # Testa o alinhamento dos modos com transposições X
        alpha = -1.2
        modes = [(0, 2), (1, 2)]
        circuit = Circuit((3, 3)).extend(xstring_rotation_gates((3, 3), [0, 1], modes, alpha))
        np.testing.assert_allclose(circuit.unitary(), expm(-1j * alpha * xstring(modes)), atol=1e-10)

    def test_quatro_qutrits_angulos_aleatorios(self):
        # Testa G^{𝒳𝒳𝒳𝒳} para 200 ângulos e cadeias aleatórias
        rng = np.random.default_rng(2025)
        worst = 0.0
        for _ in range(200):
            alpha = rng.uniform(-np.pi, np.pi)
            modes = [PAIRS[i] for i in rng.integers(0, 3, size=4)]
            circuit = Circuit((3,) * 4).extend(xstring_rotation_gates((3,) * 4, [0, 1, 2, 3], modes, alpha))
            target = expm(-1j * alpha * xstring(modes))
            worst = max(worst, np.abs(circuit.unitary() - target).max())
        self.assertLess(worst, 1e-10)

    def test_ou_inclusivo(self):
        # Testa as sete Y controladas de cada lado da rotação central
        gates = xstring_rotation_gates((3,) * 4, [0, 1, 2, 3], [(0, 1)] * 4, 0.5)
        ys = [g for g in gates if g.kind.value == 'y']
        self.assertEqual(len(ys), 14)
        self.assertEqual(sum(1 for g in gates if g.kind.value == 'givens'), 2)

    def test_qubits(self):
        # Testa exp(−iαX⊗X⊗X) sem controlos de nível espectador
        alpha = 0.4
        gates = xstring_rotation_gates((2,) * 3, [0, 1, 2], [(0, 1)] * 3, alpha)
        circuit = Circuit((2,) * 3).extend(gates)
        np.testing.assert_allclose(
            circuit.unitary(), expm(-1j * alpha * xstring([(0, 1)] * 3, d=2)), atol=1e-10,
        )
        self.assertEqual(sum(1 for g in gates if g.kind.value == 'givens'), 1)

    def test_projetor(self):
        # Testa o erro para cadeias com projetores
        with self.assertRaises(ValueError):
            xstring_rotation_gates((3, 3), [0, 1], [(0, 1), (2, 2)], 0.1)


class SectorCircuitTestCase(SimpleTestCase):
    """
    Testes para os circuitos de setor
    """

    def setUp(self):
        self.geometry = two_plaquette_pbc()

    def _expected(self, gen, alpha):
        u = sparse.identity(3 ** 6, format='csr', dtype=complex)
        for term in gen.terms:
            single = dataclasses.replace(gen, terms=(SectorTerm(1.0, term.modes),))
            e = embed_sector_generator(single, self.geometry, 'A')
            u = rotation(e, alpha * term.coefficient) @ u
        return u.toarray()

    def test_um_qudit_por_ligacao(self):
        # Testa o circuito contra o produto das exponenciais dos termos
        for label in ('1,1,1,1', '3,3bar,3,3bar', '1,3bar,1,3bar'):
            with self.subTest(sector=label):
                gen = build_sector_generator(parse_sector(label), T133, self.geometry, 'A')
                alpha = 0.61
                circuit = compile_sector_circuit(gen, alpha=alpha, geometry=self.geometry, plaquette='A')
                self.assertEqual(circuit.dims, (3,) * 6)
                np.testing.assert_allclose(circuit.unitary(), self._expected(gen, alpha), atol=1e-10)

    def test_termo_unico_igual_a_exponencial(self):
        # Testa exp(−iαG) exato para um gerador de um só termo
        gen = build_sector_generator(parse_sector('3,3,3,3'), T133, self.geometry, 'A')
        gen = dataclasses.replace(gen, terms=gen.terms[:1])
        alpha = 1.3
        circuit = compile_sector_circuit(gen, alpha=alpha, geometry=self.geometry, plaquette='A')
        target = expm(-1j * alpha * embed_sector_generator(gen, self.geometry, 'A').toarray())
        np.testing.assert_allclose(circuit.unitary(), target, atol=1e-10)

    def test_codificacao_pq(self):
        # Testa o circuito (p,q) contra as cadeias de X substituídas
        gen = build_sector_generator(parse_sector('1,3,1,3'), T133, self.geometry, 'A')
        alpha = 0.9
        circuit = compile_sector_circuit(gen, encoding=Encoding.PQ_PAIR, alpha=alpha,
                                         geometry=self.geometry, plaquette='A')
        self.assertEqual(circuit.dims, (2,) * 12)
        self.assertTrue(all(g.modes == (0, 1) for g in circuit.gates))
        controls = {0: 0, 1: 1}  # R3 = 1 e R4 = 3 nos bits (p,q)
        x, eye = sparse.csr_matrix([[0.0, 1.0], [1.0, 0.0]]), sparse.identity(2, format='csr')
        u = sparse.identity(2 ** 12, format='csr', dtype=complex)
        active = {link: i for i, link in enumerate((2, 1, 0, 4))}
        for term in gen.terms:
            factors = []
            for link in range(6):
                if link in active:
                    flips = {(0, 1): (1, 0), (1, 2): (1, 1), (0, 2): (0, 1)}[term.modes[active[link]]]
                    factors += [x if f else eye for f in flips]
                elif link in (3, 5):
                    bits = PQ_BITS[controls[(3, 5).index(link)]]
                    factors += [sparse.csr_matrix(np.diag([1.0 - b, float(b)])) for b in bits]
                else:
                    factors += [eye, eye]
            e = reduce(lambda a, b: sparse.kron(a, b, format='csr'), factors)
            u = rotation(e, alpha * term.coefficient) @ u
        rng = np.random.default_rng(3)
        columns = rng.choice(2 ** 12, size=48, replace=False)
        states = np.eye(2 ** 12, dtype=complex)[:, columns]
        np.testing.assert_allclose(simulate(circuit, states), u.toarray()[:, columns], atol=1e-10)

    def test_elementos_fisicos_pq(self):
        # Testa que as substituições (p,q) reproduzem os elementos físicos
        for gen in build_all_generators(T133):
            with self.subTest(sector=gen.sector.label()):
                idx = [pq_index(s) for s in gen.physical]
                np.testing.assert_allclose(
                    pq_generator_matrix(gen)[np.ix_(idx, idx)], gen.physical_block(), atol=1e-12,
                )

    def test_erros(self):
        # Testa os geradores sem circuito
        gen = build_sector_generator(parse_sector('1,1,1,1'), T133)
        with self.assertRaises(ValueError):
            compile_sector_circuit(dataclasses.replace(gen, completion=Completion.TWO_LEVEL))
        with self.assertRaises(ValueError):
            compile_sector_circuit(dataclasses.replace(gen, levels=qudit_levels(T1338)),
                                   encoding=Encoding.PQ_PAIR)
        with self.assertRaises(ValueError):
            compile_sector_circuit(gen, sector=parse_sector('3,3,3,3'))


class ResourcesTestCase(SimpleTestCase):
    """
    Testes para a contagem de portas e a exportação
    """

    def test_contagem_por_setor(self):
        # Testa rotações e Paulis controladas de um setor de três termos
        gen = build_sector_generator(parse_sector('1,1,1,1'), T133)
        counts = compile_sector_circuit(gen).gate_counts()
        self.assertEqual(counts['rotations'], 6)
        self.assertEqual(counts['controlled_paulis'], 3 * (2 * 3 + 14))
        pq = compile_sector_circuit(gen, encoding='pq_pair').gate_counts()
        self.assertEqual(pq['rotations'], 3)

    def test_plaquete_inteiro(self):
        # Testa os 27 setores e as 81 rotações de termo
        totals = sector_resources(T133)
        self.assertEqual(totals['sectors'], 27)
        self.assertEqual(totals['rotations'], 2 * 81)

    def test_json(self):
        # Testa a exportação do circuito e do gerador
        gen = build_sector_generator(parse_sector('1,1,3,3bar'), T133)
        circuit = compile_sector_circuit(gen, alpha=0.2)
        with tempfile.TemporaryDirectory() as tmp:
            path = os.path.join(tmp, 'setor.json')
            circuit.dump_json(path)
            with open(path, encoding='utf-8') as fh:
                data = json.load(fh)
        self.assertEqual(data['dims'], [3] * 8)
        self.assertEqual(set(data['gates'][0]), {'kind', 'sites', 'modes', 'angle', 'controls'})
        self.assertEqual(Circuit.from_json(data).gate_counts(), circuit.gate_counts())
        self.assertEqual(gen.to_json()['sector'], ['1', '1', '3', '3bar'])
        self.assertEqual(len(gen.to_json()['terms']), 3)
