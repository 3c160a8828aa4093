"""
Exact scalars.

The ground field is the rationals, represented by fractions.Fraction, which
keeps every value reduced with a positive denominator. RationalField is the
seam through which algebra code creates, parses and prints scalars, so a
cyclotomic field can later be dropped in behind the same interface.
"""
from fractions import Fraction
from typing import Union

from .exceptions import FieldError

ExactScalar = Fraction

ScalarLike = Union[Fraction, int, str]


class RationalField:
    """Field operations on exact rationals."""

    name = 'QQ'
    zero = Fraction(0)
    one = Fraction(1)

    def coerce(self, value: ScalarLike) -> Fraction:
        if isinstance(value, Fraction):
            return value
        if isinstance(value, bool):
            raise TypeError("booleans are not field elements")
        if isinstance(value, (int, str)):
            try:
                return Fraction(value)
            except ZeroDivisionError as exc:
                raise FieldError(f"zero denominator in {value!r}") from exc
        raise TypeError(f"cannot convert {type(value).__name__} to an exact scalar")

    def add(self, x: Fraction, y: Fraction) -> Fraction:
        return x + y

    def mul(self, x: Fraction, y: Fraction) -> Fraction:
        return x * y

    def neg(self, x: Fraction) -> Fraction:
        return -x

    def inv(self, x: Fraction) -> Fraction:
        if x == 0:
            raise FieldError("inverse of zero")
        return 1 / x

    def format(self, x: Fraction) -> str:
        """Serialize as 'p/q' (or 'p' for integers)."""
        return str(x)

    def parse(self, text: str) -> Fraction:
        return self.coerce(text.strip())


QQ = RationalField()


def field_ops(x: ScalarLike, y: ScalarLike = None, op: str = 'add') -> Fraction:
    """
    Apply one field operation exactly.

    Args:
        x: First operand
        y: Second operand (ignored by the unary ops inv and neg)
        op: One of add, mul, inv, neg

    Returns:
        Reduced exact result

    Raises:
        FieldError: op is inv and x is zero
    """
    x = QQ.coerce(x)
    if op == 'add':
        return QQ.add(x, QQ.coerce(y))
    if op == 'mul':
        return QQ.mul(x, QQ.coerce(y))
    if op == 'inv':
        return QQ.inv(x)
    if op == 'neg':
        return QQ.neg(x)
    raise ValueError(f"Unknown field operation: {op}")
