from apps.lab.management.base import LabCommand


class Command(LabCommand):
    help = 'Sweep the conjectured psi sum, or tabulate its dyadic blocks against the exponent-pair bound'
    kind = 'psi'

    def add_experiment_arguments(self, parser):
        parser.add_argument('--r', type=int, required=True)
        parser.add_argument('--x-min')
        parser.add_argument('--x-max')
        parser.add_argument('--points', type=int, default=40)
        parser.add_argument('--delta', type=int, choices=[0, 1], help='Both 0 and 1 when omitted')
        parser.add_argument('--blocks', action='store_true')
        parser.add_argument('--x', help='x for the block table (defaults to --x-max)')
        parser.add_argument('--word', default='BA2', help='Exponent pair used for the block bound')
        parser.add_argument('--check', action='store_true', help='Fail when a block exceeds GK_BLOCK_CONSTANT times its bound')
