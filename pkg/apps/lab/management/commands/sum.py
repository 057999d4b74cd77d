from apps.lab.management.base import LabCommand


class Command(LabCommand):
    help = 'Evaluate S_f(x) exactly'
    kind = 'sum'

    def add_experiment_arguments(self, parser):
        parser.add_argument('--r', type=int, required=True)
        parser.add_argument('--h', default='one', help='one | const:p/q | pow:a')
        parser.add_argument('--x', required=True)
        parser.add_argument('--method', choices=['fast', 'brute', 'both'], default='fast')
