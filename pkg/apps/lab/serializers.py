"""
Serializers for recorded runs and for experiment parameters.

Experiment parameters from the command line and the API go through the same
serializers, so validation messages are identical on both surfaces.
"""

from rest_framework import serializers

from apps.arithfn.functions import parse_h
from apps.common.exceptions import LabError
from apps.common.serializers import BaseModelSerializer, RationalField
from apps.exact.arithmetic import integer_rth_root
from apps.exppairs.processes import parse_word

from .models import ExperimentRun


class ExperimentRunSerializer(BaseModelSerializer):
    """
    Serializer for ExperimentRun with full details.
    """

    duration_seconds = serializers.ReadOnlyField()

    class Meta:
        model = ExperimentRun
        fields = BaseModelSerializer.Meta.fields + [
            'kind', 'status', 'parameters', 'summary', 'results', 'row_count',
            'started_at', 'finished_at', 'error_message', 'duration_seconds'
        ]
        read_only_fields = fields


class ExperimentRunListSerializer(BaseModelSerializer):
    """
    Lightweight serializer for run list views.
    """

    class Meta:
        model = ExperimentRun
        fields = ['id', 'kind', 'status', 'summary', 'row_count', 'created_at', 'finished_at']
        read_only_fields = fields


class FunctionConfigSerializer(serializers.Serializer):
    """r and the h mini-language; validated data gains the parsed function as F."""

    r = serializers.IntegerField(min_value=1)
    h = serializers.CharField(default='one')

    def validate(self, attrs):
        attrs = super().validate(attrs)
        try:
            attrs['F'] = parse_h(attrs['h'], attrs['r'])
        except LabError as e:
            raise serializers.ValidationError({'h': e.message})
        return attrs


class SumConfigSerializer(FunctionConfigSerializer):
    METHOD_CHOICES = ['fast', 'brute', 'both']

    x = RationalField(integer=True, min_value=1)
    method = serializers.ChoiceField(choices=METHOD_CHOICES, default='fast')


class DecomposeConfigSerializer(FunctionConfigSerializer):
    x = RationalField(integer=True, min_value=1)
    A = RationalField(min_value=1)
    B = RationalField(min_value=1)
    verify = serializers.BooleanField(default=False)

    def validate(self, attrs):
        attrs = super().validate(attrs)
        if attrs['B'] > attrs['A']:
            raise serializers.ValidationError({'B': 'B must not exceed A.'})
        if attrs['A'] ** 2 > attrs['x']:
            raise serializers.ValidationError({'A': 'A must not exceed sqrt(x).'})
        return attrs


class CfConfigSerializer(FunctionConfigSerializer):
    eps = RationalField(positive=True, required=False)


class PadeConfigSerializer(serializers.Serializer):
    r = serializers.IntegerField(min_value=2)
    l = serializers.IntegerField(min_value=1, required=False)

    def validate(self, attrs):
        if attrs.get('l') is not None and attrs['l'] > attrs['r']:
            raise serializers.ValidationError({'l': 'l must not exceed r.'})
        return attrs


class PadeQuerySerializer(PadeConfigSerializer):
    l = serializers.IntegerField(min_value=1)


class SpacingConfigSerializer(serializers.Serializer):
    r = serializers.IntegerField(min_value=2)
    l = serializers.IntegerField(min_value=1)
    x = RationalField(integer=True, min_value=1, required=False)
    dmin = serializers.IntegerField(min_value=1, required=False)
    dmax = serializers.IntegerField(min_value=1, required=False)
    window_constant = RationalField(positive=True, required=False)
    calibrate = serializers.BooleanField(default=False)
    grid = serializers.ListField(
        child=RationalField(integer=True, min_value=1),
        required=False,
        allow_empty=False,
    )
    check = serializers.BooleanField(default=False)

    def validate(self, attrs):
        if attrs['l'] > attrs['r']:
            raise serializers.ValidationError({'l': 'l must not exceed r.'})
        if not attrs['calibrate'] and attrs.get('x') is None:
            raise serializers.ValidationError({'x': 'x is required unless calibrating.'})
        if attrs.get('dmin') and attrs.get('dmax') and attrs['dmin'] > attrs['dmax']:
            raise serializers.ValidationError({'dmax': 'dmax must be at least dmin.'})
        return attrs


class WordField(serializers.CharField):
    def to_internal_value(self, data):
        value = super().to_internal_value(data)
        try:
            parse_word(value)
        except LabError as e:
            raise serializers.ValidationError(e.message)
        return value


class ExpPairConfigSerializer(serializers.Serializer):
    """One of: a word to evaluate, a ratio search, or the theorem exponents."""

    word = WordField(required=False, allow_blank=True)
    search_r = serializers.IntegerField(min_value=1, required=False)
    max_len = serializers.IntegerField(min_value=0, max_value=24, default=8)
    eps = RationalField(min_value=0, required=False)
    prune_dominated = serializers.BooleanField(default=False)
    theorem = serializers.BooleanField(default=False)
    r = serializers.IntegerField(min_value=1, required=False)
    alpha = RationalField(min_value=0, required=False)

    def validate(self, attrs):
        modes = [attrs.get('word') is not None and not attrs['theorem'], attrs.get('search_r') is not None, attrs['theorem']]
        if sum(modes) != 1:
            raise serializers.ValidationError('Give exactly one of --word, --search-r or --theorem.')
        if attrs['theorem'] and attrs.get('r') is None:
            raise serializers.ValidationError({'r': 'r is required with --theorem.'})
        return attrs


class SweepConfigSerializer(FunctionConfigSerializer):
    x_min = RationalField(integer=True, min_value=1)
    x_max = RationalField(integer=True, min_value=1)
    points = serializers.IntegerField(min_value=1, default=40)
    eps = RationalField(positive=True, required=False)
    threads = serializers.IntegerField(min_value=1, required=False)

    def validate(self, attrs):
        attrs = super().validate(attrs)
        if attrs['x_max'] < attrs['x_min']:
            raise serializers.ValidationError({'x_max': 'x_max must be at least x_min.'})
        return attrs


class FitConfigSerializer(serializers.Serializer):
    input = serializers.CharField()


class PsiConfigSerializer(serializers.Serializer):
    r = serializers.IntegerField(min_value=2)
    x_min = RationalField(integer=True, min_value=1, required=False)
    x_max = RationalField(integer=True, min_value=1, required=False)
    points = serializers.IntegerField(min_value=1, default=40)
    delta = serializers.ChoiceField(choices=[0, 1], required=False)
    blocks = serializers.BooleanField(default=False)
    x = RationalField(integer=True, min_value=1, required=False)
    word = WordField(default='BA2')
    check = serializers.BooleanField(default=False)
    threads = serializers.IntegerField(min_value=1, required=False)

    def validate(self, attrs):
        if attrs['blocks']:
            if attrs.get('x') is None and attrs.get('x_max') is None:
                raise serializers.ValidationError({'x': 'x is required for the block table.'})
        else:
            if attrs.get('x_min') is None or attrs.get('x_max') is None:
                raise serializers.ValidationError('x_min and x_max are required for a psi sweep.')
            if attrs['x_max'] < attrs['x_min']:
                raise serializers.ValidationError({'x_max': 'x_max must be at least x_min.'})
        return attrs


class FloorSumQuerySerializer(FunctionConfigSerializer):
    MAX_ROOTS = 10 ** 6

    x = RationalField(integer=True, min_value=1)

    def validate(self, attrs):
        attrs = super().validate(attrs)
        if integer_rth_root(attrs['x'], attrs['r']) > self.MAX_ROOTS:
            raise serializers.ValidationError({'x': f"x^(1/r) must not exceed {self.MAX_ROOTS}."})
        return attrs


class ExpPairQuerySerializer(serializers.Serializer):
    word = WordField(allow_blank=True)
