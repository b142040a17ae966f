# cli/management/base.py
"""
Comando base dos subcomandos de simulação

Acrescenta as opções comuns, junta-as com o ficheiro --config, valida a
RunConfig e traduz erros em códigos de saída: 2 para configuração
inválida e 3 para falhas de tolerância numérica.

Autor: Sistema Rede SU(3)
Data: 2025
"""

import logging

from django.conf import settings
from django.core.management.base import BaseCommand, CommandError
from django.test import override_settings
from rest_framework import serializers

from cli.serializers import RunConfigSerializer, load_run_config
from cli.services import run
from core.exceptions import ToleranceError

logger = logging.getLogger(__name__)

CONFIG_ERROR = 2
TOLERANCE_ERROR = 3


class RunCommand(BaseCommand):
    """
    Subcomando com configuração validada

    As subclasses definem subcommand e podem acrescentar opções em
    add_extra_arguments; todas as opções têm default None para que só
    as explicitamente dadas sobreponham o ficheiro.
    """

    subcommand = None

    def add_arguments(self, parser):
        parser.add_argument('--config', help='Ficheiro INI com a secção [run]')
        parser.add_argument('--geometry', help='one_plaquette, two_plaquette_pbc, local_plaquette ou string:N')
        parser.add_argument('--trunc', help='Truncamento: "1", "2,1" ou "{1,3,3bar,8}"')
        parser.add_argument('--g', help='Acoplamentos separados por vírgulas')
        parser.add_argument('--tmax', help='Tempo final')
        parser.add_argument('--dt', help='Passo de tempo')
        parser.add_argument('--order', help='Ordem de Trotter (1 ou 2)')
        parser.add_argument('--scheme', help='exact, even_odd, local_qudit, global8, color6 ou twoplaq_pp')
        parser.add_argument('--mode', help='local, global ou color_parity')
        parser.add_argument('--out', help='Diretório de saída')
        parser.add_argument('--format', help='csv ou json')
        parser.add_argument('--threads', help='Trabalhadores (0 = paralelismo da máquina)')
        self.add_extra_arguments(parser)

    def add_extra_arguments(self, parser):
        pass

    def overrides(self, options):
        fields = RunConfigSerializer().fields
        return {k: v for k, v in options.items() if k in fields and v is not None}

    def handle(self, *args, **options):
        try:
            config = load_run_config(self.subcommand, options.get('config'), self.overrides(options))
        except serializers.ValidationError as e:
            raise CommandError(f'Configuração inválida: {e.detail}', returncode=CONFIG_ERROR)

        lattice = dict(settings.LATTICE)
        if config.threads:
            lattice['THREADS'] = config.threads
        try:
            with override_settings(LATTICE=lattice):
                paths = run(config)
        except ToleranceError as e:
            logger.error(f'{self.subcommand}: {e}')
            raise CommandError(str(e), returncode=TOLERANCE_ERROR)
        except ValueError as e:
            logger.error(f'{self.subcommand}: {e}')
            raise CommandError(str(e), returncode=CONFIG_ERROR)

        for path in paths:
            self.stdout.write(str(path))
        self.stdout.write(self.style.SUCCESS(f'{self.subcommand}: {len(paths)} ficheiros escritos'))
