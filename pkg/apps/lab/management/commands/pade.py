from apps.lab.management.base import LabCommand


class Command(LabCommand):
    help = 'Construct and verify the polynomial pairs for (1-x)^r'
    kind = 'pade'

    def add_experiment_arguments(self, parser):
        parser.add_argument('--r', type=int, required=True)
        parser.add_argument('--l', type=int, help='Degree plus one; every l in 1..r when omitted')
