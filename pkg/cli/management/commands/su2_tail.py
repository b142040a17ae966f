from cli.management.base import RunCommand


class Command(RunCommand):
    help = 'Cauda gaussiana do estado fundamental do plaquete SU(2)'
    subcommand = 'su2_tail'

    def add_extra_arguments(self, parser):
        parser.add_argument('--j-max', help='Corte j_max')
        parser.add_argument('--window', help='Janela "j_min,j_max" do ajuste')
