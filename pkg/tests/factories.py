"""
factory_boy factories for lab objects.
"""

from fractions import Fraction

import factory
from factory.django import DjangoModelFactory

from apps.arithfn.functions import CONSTANT, PowerSupportedFunction
from apps.lab.models import ExperimentRun


class PowerSupportedFunctionFactory(factory.Factory):
    class Meta:
        model = PowerSupportedFunction

    r = 2
    h_kind = CONSTANT
    coefficient = Fraction(1)
    exponent = 0


class ExperimentRunFactory(DjangoModelFactory):
    class Meta:
        model = ExperimentRun

    kind = 'sum'
    status = 'pending'
    parameters = factory.LazyAttribute(lambda run: {'r': 2, 'h': 'one', 'x': '100'})
    created_by = factory.Sequence(lambda n: f'user{n}')

    class Params:
        completed = factory.Trait(
            status='completed',
            summary={'s_f': '59', 'method': 'fast'},
            results={'header': ['x', 'r', 'h', 's_f'], 'rows': [['100', '2', 'one', '59']]},
            row_count=1,
        )
        failed = factory.Trait(status='failed', error_message='x must be a positive integer')
