from cli.management.base import RunCommand


class Command(RunCommand):
    help = 'Evolução temporal exata, de Trotter ou com qudits locais'
    subcommand = 'evolve'

    def add_extra_arguments(self, parser):
        parser.add_argument('--sectors', help='Setor da base global, por exemplo "+++"')
        parser.add_argument('--split-terms', action='store_true', default=None,
                            help='Uma rotação por termo de cada setor de controlo')
        parser.add_argument('--extrema', action='store_true', default=None,
                            help='Exporta o primeiro máximo e o primeiro mínimo de ⟨H_E⟩')
