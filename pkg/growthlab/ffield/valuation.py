"""The degree valuation |x| = q^deg(x) on F_q(t), stored as the exponent deg(x)."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import total_ordering
from typing import TYPE_CHECKING

from ffield.element import FunctionField

if TYPE_CHECKING:
    from fields.base import FieldElement


class NotAFunctionFieldError(Exception):
    """Exception raised when a valuation is asked for outside of F_q(t)."""


@total_ordering
@dataclass(frozen=True)
class Valuation:
    """Exponent e with |x| = q^e, or BOTTOM (exponent None) for |0| = 0."""

    exponent: int | None

    @property
    def is_bottom(self) -> bool:
        return self.exponent is None

    def __lt__(self, other: Valuation) -> bool:
        if self.exponent is None:
            return other.exponent is not None
        return other.exponent is not None and self.exponent < other.exponent

    def __add__(self, other: Valuation) -> Valuation:
        """Valuation of a product."""
        if self.exponent is None or other.exponent is None:
            return BOTTOM
        return Valuation(self.exponent + other.exponent)

    def absolute(self, q: int) -> Fraction:
        return Fraction(0) if self.exponent is None else Fraction(q) ** self.exponent

    def __str__(self) -> str:
        return "BOTTOM" if self.exponent is None else str(self.exponent)


BOTTOM = Valuation(None)


def valuation(x: FieldElement) -> Valuation:
    """Return deg(numerator) - deg(denominator), BOTTOM for zero.

    Raises:
        NotAFunctionFieldError: If x is not in F_q(t)
    """
    if not isinstance(x.field, FunctionField):
        error_message = f"The degree valuation lives on F_q(t), got {x.field.tag}"
        raise NotAFunctionFieldError(error_message)
    return Valuation(x.value.degree)


def dist(x: FieldElement, y: FieldElement) -> Valuation:
    return valuation(x - y)
