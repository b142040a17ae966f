from cli.management.base import RunCommand


class Command(RunCommand):
    help = 'Convergência de observáveis do plaquete isolado com o truncamento'
    subcommand = 'converge'

    def add_extra_arguments(self, parser):
        parser.add_argument('--observable', help='mass_gap, mass_gap_even, plaquette_vev ou electric_energy')
        parser.add_argument('--lambdas', help='Cortes Λ crescentes')
        parser.add_argument('--time', help='Tempo da energia elétrica')
