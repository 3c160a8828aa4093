"""
Validation of the group file format.

    {"format": "hopfdouble-group", "version": 1, "name": "S3",
     "elements": ["e", "(12)", ...], "table": [[0, 1, ...], ...]}

or, instead of a table, {"generators": "(12),(123)"}.
"""
from rest_framework import serializers

GROUP_FORMAT = 'hopfdouble-group'
GROUP_VERSION = 1


class GroupSpecSerializer(serializers.Serializer):
    format = serializers.CharField(required=False, default=GROUP_FORMAT)
    version = serializers.IntegerField(required=False, default=GROUP_VERSION)
    name = serializers.CharField(required=False, allow_blank=True, default='')
    elements = serializers.ListField(child=serializers.CharField(), required=False)
    table = serializers.ListField(
        child=serializers.ListField(child=serializers.IntegerField(min_value=0)),
        required=False,
        allow_empty=False,
    )
    generators = serializers.CharField(required=False)

    def validate_format(self, value):
        if value != GROUP_FORMAT:
            raise serializers.ValidationError(f'Unsupported format "{value}".')
        return value

    def validate_version(self, value):
        if value != GROUP_VERSION:
            raise serializers.ValidationError(f'Unsupported version {value}.')
        return value

    def validate(self, attrs):
        if ('table' in attrs) == ('generators' in attrs):
            raise serializers.ValidationError({'table': ['Give exactly one of "table" and "generators".']})
        if 'table' in attrs:
            order = len(attrs['table'])
            for position, row in enumerate(attrs['table']):
                if len(row) != order:
                    raise serializers.ValidationError({'table': {position: [f'Expected {order} entries.']}})
            if 'elements' in attrs and len(attrs['elements']) != order:
                raise serializers.ValidationError({'elements': [f'Expected {order} labels.']})
        return attrs
