from apps.lab.management.base import LabCommand


class Command(LabCommand):
    help = 'Sweep |S_f(x) - C_f x| over a geometric grid of x'
    kind = 'sweep'

    def add_experiment_arguments(self, parser):
        parser.add_argument('--r', type=int, required=True)
        parser.add_argument('--h', default='one', help='one | const:p/q | pow:a')
        parser.add_argument('--x-min', required=True)
        parser.add_argument('--x-max', required=True)
        parser.add_argument('--points', type=int, default=40)
        parser.add_argument('--eps', help='Initial C_f enclosure width')
