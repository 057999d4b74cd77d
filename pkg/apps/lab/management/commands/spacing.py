from apps.lab.management.base import LabCommand, rational_list


class Command(LabCommand):
    help = 'Dyadic T(D) counts, bounds and window scans, or calibration of the spacing constants'
    kind = 'spacing'

    def add_experiment_arguments(self, parser):
        parser.add_argument('--x')
        parser.add_argument('--r', type=int, required=True)
        parser.add_argument('--l', type=int, required=True)
        parser.add_argument('--dmin', type=int, help='First dyadic D (admissible range when omitted)')
        parser.add_argument('--dmax', type=int)
        parser.add_argument('--window-constant', help='Override SPACING_WINDOW_CONSTANT')
        parser.add_argument('--check', action='store_true', help='Fail on any violated spacing property')
        parser.add_argument('--calibrate', action='store_true')
        parser.add_argument('--grid', type=rational_list, help='Calibration x values, comma separated')
