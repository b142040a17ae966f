from cli.management.base import RunCommand


class Command(RunCommand):
    help = 'Níveis de energia por setor numa grelha de acoplamentos'
    subcommand = 'spectrum'

    def add_extra_arguments(self, parser):
        parser.add_argument('--sectors', help='Setores separados por vírgulas, por exemplo "++,-+"')
