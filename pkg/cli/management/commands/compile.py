from cli.management.base import RunCommand


class Command(RunCommand):
    help = 'Circuitos das rotações controladas de todos os setores de um plaquete'
    subcommand = 'compile'

    def add_extra_arguments(self, parser):
        parser.add_argument('--encoding', help='single_qudit ou pq_pair')
