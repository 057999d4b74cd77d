from apps.lab.management.base import LabCommand


class Command(LabCommand):
    help = 'Split S_f(x) into its dagger, flat and sharp pieces and the psi error sums'
    kind = 'decompose'

    def add_experiment_arguments(self, parser):
        parser.add_argument('--r', type=int, required=True)
        parser.add_argument('--h', default='one', help='one | const:p/q | pow:a')
        parser.add_argument('--x', required=True)
        parser.add_argument('--A', dest='A', required=True)
        parser.add_argument('--B', dest='B', required=True)
        parser.add_argument('--verify', action='store_true', help='Compare the total with a brute-force sum')
