"""
Validation of the Hopf algebra JSON file format.

    {
      "format": "hopfdouble-algebra", "version": 1,
      "name": "F(S3)", "dim": 6, "basis": ["e", "(12)", ...],
      "mult":     [[A, B, C, "p/q"], ...],
      "comult":   [[A, B, C, "p/q"], ...],
      "counit":   ["1", "0", ...],
      "antipode": [[A, B, "p/q"], ...],     S(e_A) = Σ value·e_B
      "unit":     ["1", "1", ...]
    }
"""
from fractions import Fraction
from typing import Any, Dict, Tuple

from rest_framework import serializers

from .exceptions import SpecFileError
from .scalars import QQ

ALGEBRA_FORMAT = 'hopfdouble-algebra'
FORMAT_VERSION = 1


class ScalarField(serializers.Field):
    """Exact scalar written as an integer or a 'p/q' string."""

    default_error_messages = {
        'invalid': 'Expected an integer or a "p/q" string, got {value!r}.',
    }

    def to_internal_value(self, data) -> Fraction:
        if isinstance(data, bool) or not isinstance(data, (int, str)):
            self.fail('invalid', value=data)
        try:
            return QQ.coerce(data)
        except (ValueError, ZeroDivisionError):
            self.fail('invalid', value=data)

    def to_representation(self, value) -> str:
        return QQ.format(value)


class IndexedEntryField(serializers.Field):
    """A row [i_1, ..., i_k, value] of a sparse tensor."""

    default_error_messages = {
        'shape': 'Expected a list of {arity} indices followed by a value.',
        'index': 'Indices must be non-negative integers.',
    }

    def __init__(self, arity: int, **kwargs):
        self.arity = arity
        self.scalar = ScalarField()
        super().__init__(**kwargs)

    def to_internal_value(self, data):
        if not isinstance(data, list) or len(data) != self.arity + 1:
            self.fail('shape', arity=self.arity)
        indices = data[:-1]
        if any(isinstance(i, bool) or not isinstance(i, int) or i < 0 for i in indices):
            self.fail('index')
        return tuple(indices) + (self.scalar.to_internal_value(data[-1]),)

    def to_representation(self, value):
        return list(value[:-1]) + [QQ.format(value[-1])]


class AlgebraSpecSerializer(serializers.Serializer):
    format = serializers.CharField(required=False, default=ALGEBRA_FORMAT)
    version = serializers.IntegerField(required=False, default=FORMAT_VERSION)
    name = serializers.CharField(required=False, allow_blank=True, default='')
    dim = serializers.IntegerField(min_value=1)
    basis = serializers.ListField(child=serializers.CharField(), required=False)
    mult = serializers.ListField(child=IndexedEntryField(3), allow_empty=False)
    comult = serializers.ListField(child=IndexedEntryField(3), allow_empty=False)
    counit = serializers.ListField(child=ScalarField())
    antipode = serializers.ListField(child=IndexedEntryField(2))
    unit = serializers.ListField(child=ScalarField())

    def validate_format(self, value):
        if value != ALGEBRA_FORMAT:
            raise serializers.ValidationError(f'Unsupported format "{value}".')
        return value

    def validate_version(self, value):
        if value != FORMAT_VERSION:
            raise serializers.ValidationError(f'Unsupported version {value}.')
        return value

    def validate(self, attrs):
        dim = attrs['dim']
        errors: Dict[str, Any] = {}
        for key in ('mult', 'comult', 'antipode'):
            for position, row in enumerate(attrs[key]):
                if any(i >= dim for i in row[:-1]):
                    errors[key] = {position: [f'Index outside 0..{dim - 1}.']}
                    break
        for key in ('counit', 'unit'):
            if len(attrs[key]) != dim:
                errors[key] = [f'Expected {dim} entries, got {len(attrs[key])}.']
        if 'basis' in attrs and len(attrs['basis']) != dim:
            errors['basis'] = [f'Expected {dim} labels, got {len(attrs["basis"])}.']
        if errors:
            raise serializers.ValidationError(errors)
        return attrs


def first_error_location(errors: Any, prefix: str = "") -> Tuple[str, str]:
    """Walk DRF's nested error structure to the first message and its path."""
    if isinstance(errors, dict):
        for key in sorted(errors, key=str):
            if errors[key]:
                name = str(key)
                path = f"{prefix}[{name}]" if name.isdigit() else (f"{prefix}.{name}" if prefix else name)
                return first_error_location(errors[key], path)
    if isinstance(errors, list):
        for position, item in enumerate(errors):
            if isinstance(item, (dict, list)):
                if item:
                    return first_error_location(item, f"{prefix}[{position}]")
            elif item:
                return prefix, str(item)
    return prefix, str(errors)


def validated(serializer: serializers.Serializer, source: str = '') -> Dict[str, Any]:
    """
    Run a serializer and turn validation errors into SpecFileError.

    Args:
        serializer: Bound serializer instance
        source: File name used as the location prefix

    Returns:
        serializer.validated_data
    """
    if not serializer.is_valid():
        path, message = first_error_location(serializer.errors)
        location = f"{source}:{path}" if source else path
        raise SpecFileError(message, location=location)
    return serializer.validated_data
