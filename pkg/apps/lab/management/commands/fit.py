from apps.lab.management.base import LabCommand


class Command(LabCommand):
    help = 'Fit the error exponent of a sweep CSV'
    kind = 'fit'

    def add_experiment_arguments(self, parser):
        parser.add_argument('--in', dest='input', required=True, help='Sweep CSV to read')
