from apps.lab.management.base import LabCommand


class Command(LabCommand):
    help = 'Certified enclosure of C_f'
    kind = 'cf'

    def add_experiment_arguments(self, parser):
        parser.add_argument('--r', type=int, required=True)
        parser.add_argument('--h', default='one', help='one | const:p/q | pow:a')
        parser.add_argument('--eps', help='Enclosure width, e.g. 1/1000000000')
