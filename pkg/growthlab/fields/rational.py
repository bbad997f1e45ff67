"""The rational numbers."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import count
from math import gcd
from typing import TYPE_CHECKING

from typing_extensions import override

from common.literals import strict_fullmatch
from fields.base import Field, FieldDivisionByZeroError

if TYPE_CHECKING:
    from collections.abc import Iterator


@dataclass(frozen=True)
class RationalField(Field):
    """The field Q, values stored as reduced Fractions with positive denominator."""

    @property
    @override
    def tag(self) -> str:
        return "Q"

    @property
    @override
    def characteristic(self) -> int:
        return 0

    @property
    @override
    def order(self) -> None:
        return None

    @override
    def canonical(self, value: Fraction | int) -> Fraction:
        return Fraction(value)

    @override
    def from_int(self, n: int) -> Fraction:
        return Fraction(n)

    @override
    def add_values(self, x: Fraction, y: Fraction) -> Fraction:
        return x + y

    @override
    def neg_values(self, x: Fraction) -> Fraction:
        return -x

    @override
    def mul_values(self, x: Fraction, y: Fraction) -> Fraction:
        return x * y

    @override
    def inv_values(self, x: Fraction) -> Fraction:
        if x == 0:
            error_message = "Cannot invert zero in Q"
            raise FieldDivisionByZeroError(error_message)
        return 1 / x

    @override
    def is_zero_value(self, x: Fraction) -> bool:
        return x == 0

    @override
    def sort_key(self, x: Fraction) -> Fraction:
        return x

    @override
    def format_value(self, x: Fraction) -> str:
        return str(x)

    @override
    def parse_value(self, text: str) -> Fraction:
        match = strict_fullmatch(r"(?P<numerator>-?\d+)(?:/(?P<denominator>-?\d+))?", text)
        denominator = int(match.group("denominator") or 1)
        if denominator == 0:
            error_message = f"Zero denominator in {text}"
            raise FieldDivisionByZeroError(error_message)
        return Fraction(int(match.group("numerator")), denominator)

    @override
    def enumerate_values(self) -> Iterator[Fraction]:
        """Yield 0, then every reduced a/b by increasing height max(|a|, b), positive before negative."""
        yield Fraction(0)
        for height in count(1):
            for denominator in range(1, height + 1):
                numerators = [height] if denominator < height else range(1, height + 1)
                for numerator in numerators:
                    if gcd(numerator, denominator) == 1:
                        yield Fraction(numerator, denominator)
                        yield Fraction(-numerator, denominator)
