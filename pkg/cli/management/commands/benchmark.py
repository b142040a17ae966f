from cli.management.base import RunCommand


class Command(RunCommand):
    help = 'Extremos de ⟨H_E⟩ das curvas exatas e de Trotter de referência'
    subcommand = 'benchmark'
