from cli.management.base import RunCommand


class Command(RunCommand):
    help = 'Contagens de vértices e de elementos de matriz do plaquete'
    subcommand = 'count'

    def add_extra_arguments(self, parser):
        parser.add_argument('--lambdas', help='Cortes Λ crescentes')
        parser.add_argument('--max-degree', help='Grau máximo dos ajustes polinomiais')
