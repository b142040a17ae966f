import csv
import filecmp
import json
import os
import tempfile
import unittest
from collections import Counter
from io import StringIO
from pathlib import Path
from unittest import mock

from django.conf import settings
from django.core.management import call_command
from django.core.management.base import CommandError
from django.test import SimpleTestCase

from core.exceptions import ToleranceError


def read_csv(path):
    with open(path, encoding='utf-8') as fh:
        lines = fh.read().splitlines()
    return lines[0], list(csv.reader(lines[1:]))


class CommandTestCase(SimpleTestCase):
    """
    Base com diretório de saída temporário
    """

    def setUp(self):
        self._tmp = tempfile.TemporaryDirectory()
        self.out = self._tmp.name

    def tearDown(self):
        self._tmp.cleanup()

    def call(self, name, **options):
        options.setdefault('out', self.out)
        call_command(name, stdout=StringIO(), **options)
        return Path(options['out'])


class SpectrumCommandTestCase(CommandTestCase):
    """
    Testes para o subcomando spectrum
    """

    def test_setores_de_dois_plaquetes(self):
        # Testa nove níveis em quatro setores, com um só nível em +-
        out = self.call('spectrum', trunc='{1,3,3bar}', sectors='++,-+,+-,--', g='1.0')
        header, rows = read_csv(out / 'spectrum.csv')
        self.assertEqual(header, '# schema=1')
        self.assertEqual(rows[0], ['sector', 'index', 'g', 'g2E'])
        self.assertEqual(len(rows) - 1, 9)
        self.assertEqual(Counter(r[0] for r in rows[1:]), {'++': 4, '-+': 2, '+-': 1, '--': 2})

    def test_setores_vazios_omitidos(self):
        # Testa que todas as combinações de sinais somam os mesmos nove níveis
        out = self.call('spectrum', trunc='{1,3,3bar}', g='1.0')
        _, rows = read_csv(out / 'spectrum.csv')
        self.assertEqual(len(rows) - 1, 9)

    def test_acoplamento_forte(self):
        # Testa g²E₀ → (B₀₀ + constante)/2 = 3 no acoplamento forte
        out = self.call('spectrum', trunc='{1,3,3bar}', sectors='++', g='20')
        _, rows = read_csv(out / 'spectrum.csv')
        self.assertAlmostEqual(float(rows[1][3]), 3.0, delta=1e-3)

    def test_json(self):
        # Testa o formato JSON com colunas e esquema
        out = self.call('spectrum', trunc='{1,3,3bar}', sectors='+-', g='1.0,2.0', format='json')
        with open(out / 'spectrum.json', encoding='utf-8') as fh:
            data = json.load(fh)
        self.assertEqual(data['schema'], 1)
        self.assertEqual(data['columns'], ['sector', 'index', 'g', 'g2E'])
        self.assertEqual(len(data['rows']), 2)

    def test_determinismo(self):
        # Testa ficheiros idênticos byte a byte para a mesma configuração
        first = self.call('spectrum', trunc='{1,3,3bar}', g='0.5,1.0', out=os.path.join(self.out, 'a'))
        second = self.call('spectrum', trunc='{1,3,3bar}', g='0.5,1.0', out=os.path.join(self.out, 'b'))
        self.assertTrue(filecmp.cmp(first / 'spectrum.csv', second / 'spectrum.csv', shallow=False))


class EvolveCommandTestCase(CommandTestCase):
    """
    Testes para o subcomando evolve
    """

    def test_tempo_zero(self):
        # Testa uma só linha com persistência 1 quando t_max = 0
        out = self.call('evolve', trunc='{1,3,3bar}', tmax='0', g='1.0')
        header, rows = read_csv(out / 'evolve_exact_g1.csv')
        self.assertEqual(header, '# schema=1')
        self.assertEqual(len(rows), 2)
        self.assertAlmostEqual(float(rows[1][1]), 1.0, places=10)
        self.assertAlmostEqual(float(rows[1][2]), 0.0, places=10)

    def test_local_contra_global(self):
        # Testa a proximidade das curvas local e global exata com passo pequeno
        self.call('evolve', trunc='{1,3,3bar}', tmax='0.5', dt='0.01', g='1.0')
        self.call('evolve', trunc='{1,3,3bar}', tmax='0.5', dt='0.01', g='1.0',
                  mode='local', scheme='local_qudit')
        _, exact = read_csv(Path(self.out) / 'evolve_exact_g1.csv')
        _, local = read_csv(Path(self.out) / 'evolve_local_qudit_g1.csv')
        self.assertEqual(len(exact), len(local))
        for a, b in zip(exact[1:], local[1:]):
            self.assertAlmostEqual(float(a[2]), float(b[2]), delta=0.05)
            self.assertLess(float(b[3]), 1e-12)

    def test_extremos(self):
        # Testa o ficheiro de extremos de um esquema com nome
        out = self.call('evolve', scheme='global8', order='2', tmax='8', dt='0.05', g='1.0', extrema=True)
        _, rows = read_csv(out / 'extrema_global8.csv')
        self.assertEqual(rows[0], ['g', 'e_max', 't_max_at', 'e_min', 't_min_at'])
        self.assertEqual(len(rows), 2)
        self.assertNotEqual(rows[1][1], '-')

    def test_esquema_local_fora_do_modo_local(self):
        # Testa o erro de configuração com código 2
        with self.assertRaises(CommandError) as cm:
            self.call('evolve', scheme='local_qudit', mode='global')
        self.assertEqual(cm.exception.returncode, 2)


class ConvergeCommandTestCase(CommandTestCase):
    """
    Testes para o subcomando converge
    """

    def test_corte_unico(self):
        # Testa a linha de referência com desvio zero
        out = self.call('converge', lambdas='4', g='1.0', observable='mass_gap')
        _, rows = read_csv(out / 'converge_mass_gap.csv')
        self.assertEqual(len(rows), 2)
        self.assertEqual(rows[1][1], '4')
        self.assertEqual(float(rows[1][3]), 0.0)
        with open(out / 'converge_mass_gap_fits.json', encoding='utf-8') as fh:
            self.assertEqual(json.load(fh)['fits'], [])

    def test_energia_sem_tempo(self):
        # Testa o erro quando a energia elétrica não tem tempo
        with self.assertRaises(CommandError) as cm:
            self.call('converge', observable='electric_energy')
        self.assertEqual(cm.exception.returncode, 2)


class CountCommandTestCase(CommandTestCase):
    """
    Testes para o subcomando count
    """

    def test_lambda_um(self):
        # Testa 19 vértices de três pontos e 82 de quatro pontos em Λ = 1
        out = self.call('count', lambdas='1', trunc='{1,3,3bar}')
        _, three = read_csv(out / 'three_point.csv')
        _, four = read_csv(out / 'four_point.csv')
        self.assertEqual(three[1], ['1', '19'])
        self.assertEqual(four[1], ['1', '82'])
        _, plaquette = read_csv(out / 'plaquette.csv')
        self.assertEqual(plaquette[1][1:3], ['81', '81'])


class CompileCommandTestCase(CommandTestCase):
    """
    Testes para o subcomando compile
    """

    def test_27_setores(self):
        # Testa 27 circuitos de setores para {1,3,3bar}
        out = self.call('compile', trunc='{1,3,3bar}')
        with open(out / 'circuits.json', encoding='utf-8') as fh:
            data = json.load(fh)
        self.assertEqual(data['schema'], 1)
        self.assertEqual(len(data['sectors']), 27)
        self.assertTrue(all(s['circuit'] is not None for s in data['sectors']))
        _, rows = read_csv(out / 'resources.csv')
        self.assertEqual(len(rows) - 1, 27)

    def test_codificacao_pq(self):
        # Testa circuitos de qubits na codificação (p,q)
        out = self.call('compile', trunc='{1,3,3bar}', encoding='pq_pair')
        with open(out / 'circuits.json', encoding='utf-8') as fh:
            data = json.load(fh)
        self.assertEqual(data['sectors'][0]['circuit']['dims'], [2] * 16)


class Su2TailCommandTestCase(CommandTestCase):
    """
    Testes para o subcomando su2_tail
    """

    def test_declive(self):
        # Testa a tabela de declives e o ficheiro do estado fundamental
        out = self.call('su2_tail', g='0.25', j_max='60')
        _, rows = read_csv(out / 'su2_tail.csv')
        self.assertEqual(rows[0], ['g', 'j_max', 'slope', 'predicted', 'relative_deviation'])
        self.assertLess(float(rows[1][4]), 0.15)
        self.assertTrue((out / 'su2_psi_g0.25.csv').exists())

    def test_janela_curta(self):
        # Testa o código 2 quando a janela automática é demasiado curta
        with self.assertRaises(CommandError) as cm:
            self.call('su2_tail', g='1.0', j_max='40')
        self.assertEqual(cm.exception.returncode, 2)

    def test_janela_explicita(self):
        # Testa um declive negativo com janela dada
        out = self.call('su2_tail', g='1.0', j_max='40', window='2,20')
        _, rows = read_csv(out / 'su2_tail.csv')
        self.assertLess(float(rows[1][2]), 0)


class BenchmarkCommandTestCase(CommandTestCase):
    """
    Testes para o subcomando benchmark
    """

    @unittest.skipUnless(settings.LATTICE['SLOW_TESTS'], 'tabela completa com LGT_SLOW_TESTS=1')
    def test_tabela(self):
        # Testa as onze linhas da tabela de extremos
        out = self.call('benchmark')
        _, rows = read_csv(out / 'benchmark.csv')
        self.assertEqual(len(rows) - 1, 11)


class ErrorCodeTestCase(CommandTestCase):
    """
    Testes para os códigos de saída e a precedência da configuração
    """

    def write_ini(self, text):
        path = os.path.join(self.out, 'run.ini')
        with open(path, 'w', encoding='utf-8') as fh:
            fh.write(text)
        return path

    def test_chave_desconhecida(self):
        # Testa a rejeição de chaves desconhecidas no ficheiro
        path = self.write_ini('[run]\nsubcommand = spectrum\ncolour = red\n')
        with self.assertRaises(CommandError) as cm:
            self.call('spectrum', config=path)
        self.assertEqual(cm.exception.returncode, 2)

    def test_truncamento_invalido(self):
        # Testa o código 2 para um truncamento ilegível
        with self.assertRaises(CommandError) as cm:
            self.call('spectrum', trunc='a,b,c')
        self.assertEqual(cm.exception.returncode, 2)

    def test_tolerancia(self):
        # Testa o código 3 para falhas de tolerância numérica
        with mock.patch('cli.management.base.run', side_effect=ToleranceError('norma', 1e-3, 1e-10)):
            with self.assertRaises(CommandError) as cm:
                self.call('spectrum')
        self.assertEqual(cm.exception.returncode, 3)

    def test_precedencia(self):
        # Testa linha de comando > ficheiro > omissão
        path = self.write_ini('[run]\nsubcommand = spectrum\ntrunc = {1,3,3bar}\nsectors = ++\ng = 2.0\n')
        out = self.call('spectrum', config=path, g='1.0')
        _, rows = read_csv(out / 'spectrum.csv')
        self.assertEqual({r[2] for r in rows[1:]}, {'1'})
        self.assertEqual({r[0] for r in rows[1:]}, {'++'})
