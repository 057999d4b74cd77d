"""
Common serializers and fields for the floor-sum lab.
"""

from rest_framework import serializers

from apps.common.exceptions import PreconditionError
from apps.exact.arithmetic import format_rational, parse_rational


class BaseModelSerializer(serializers.ModelSerializer):
    """
    Base serializer for models inheriting from BaseModel.
    Provides common functionality and read-only fields.
    """

    # Make audit fields read-only
    created_at = serializers.DateTimeField(read_only=True)
    updated_at = serializers.DateTimeField(read_only=True)
    created_by = serializers.CharField(read_only=True)
    updated_by = serializers.CharField(read_only=True)

    class Meta:
        fields = ['id', 'created_at', 'updated_at', 'is_active', 'created_by', 'updated_by']
        read_only_fields = ['id', 'created_at', 'updated_at', 'created_by', 'updated_by']

    def create(self, validated_data):
        """Override create to set audit fields."""
        request = self.context.get('request')
        if request and hasattr(request, 'user') and request.user.is_authenticated:
            validated_data['created_by'] = str(request.user.username)
            validated_data['updated_by'] = str(request.user.username)

        return super().create(validated_data)


class RationalField(serializers.Field):
    """
    Exact rational input: integers, ``p/q`` strings or decimal strings.

    With ``integer=True`` the value must be a whole number and is returned as
    an int. Output is always the exact ``p/q`` spelling.
    """

    default_error_messages = {
        'invalid': 'Enter an integer, a p/q rational or a decimal string.',
        'not_integer': 'Enter a whole number.',
        'min_value': 'Ensure this value is at least {min_value}.',
        'positive': 'Ensure this value is strictly positive.',
    }

    def __init__(self, integer=False, min_value=None, positive=False, **kwargs):
        self.integer = integer
        self.min_value = min_value
        self.positive = positive
        super().__init__(**kwargs)

    def to_internal_value(self, data):
        try:
            value = parse_rational(data if not isinstance(data, str) else data.replace('_', ''))
        except PreconditionError:
            self.fail('invalid')
        if self.positive and value <= 0:
            self.fail('positive')
        if self.min_value is not None and value < self.min_value:
            self.fail('min_value', min_value=self.min_value)
        if self.integer:
            if value.denominator != 1:
                self.fail('not_integer')
            return int(value)
        return value

    def to_representation(self, value):
        return format_rational(value)
