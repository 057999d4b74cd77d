from apps.lab.management.base import LabCommand


class Command(LabCommand):
    help = 'Evaluate, search for, or apply exponent pairs'
    kind = 'exppair'

    def add_experiment_arguments(self, parser):
        parser.add_argument('--word', help='Process word such as BA2 (applied right to left)')
        parser.add_argument('--search-r', type=int, help='Search for ell/k closest to this ratio')
        parser.add_argument('--max-len', type=int, default=8)
        parser.add_argument('--eps', help='Stop the search once |ell/k - r| <= eps')
        parser.add_argument('--prune-dominated', action='store_true')
        parser.add_argument('--theorem', action='store_true', help='Print the error exponents for --r and --alpha')
        parser.add_argument('--r', type=int)
        parser.add_argument('--alpha', default='0')
