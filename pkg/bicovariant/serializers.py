"""
Validation of the representation file format.

    {"format": "hopfdouble-representation", "version": 1, "name": "...",
     "n": 2,
     "rhoF": [[["1", "0"], ["0", "1"]], ...],    ρ_D(e_A), one matrix per A
     "rhoU": [...]}                              ρ_D(e^B), one matrix per B
"""
from rest_framework import serializers

from core.serializers import ScalarField

REPRESENTATION_FORMAT = 'hopfdouble-representation'
REPRESENTATION_VERSION = 1


def matrix_list_field():
    return serializers.ListField(
        child=serializers.ListField(child=serializers.ListField(child=ScalarField())),
        allow_empty=False,
    )


class RepresentationSpecSerializer(serializers.Serializer):
    format = serializers.CharField(required=False, default=REPRESENTATION_FORMAT)
    version = serializers.IntegerField(required=False, default=REPRESENTATION_VERSION)
    name = serializers.CharField(required=False, allow_blank=True, default='')
    n = serializers.IntegerField(min_value=1)
    rhoF = matrix_list_field()
    rhoU = matrix_list_field()

    def validate_format(self, value):
        if value != REPRESENTATION_FORMAT:
            raise serializers.ValidationError(f'Unsupported format "{value}".')
        return value

    def validate_version(self, value):
        if value != REPRESENTATION_VERSION:
            raise serializers.ValidationError(f'Unsupported version {value}.')
        return value

    def validate(self, attrs):
        n = attrs['n']
        for key in ('rhoF', 'rhoU'):
            for position, matrix in enumerate(attrs[key]):
                if len(matrix) != n or any(len(row) != n for row in matrix):
                    raise serializers.ValidationError({key: {position: [f'Expected a {n}x{n} matrix.']}})
        if len(attrs['rhoF']) != len(attrs['rhoU']):
            raise serializers.ValidationError({'rhoU': ['rhoF and rhoU must have one matrix per basis element.']})
        return attrs
