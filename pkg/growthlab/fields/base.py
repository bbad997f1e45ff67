"""Contains Field and FieldElement.

A Field works on raw canonical representatives (an int residue, a coefficient tuple, a Fraction or a reduced rational
function) and a FieldElement pairs one of those representatives with the field it belongs to.
"""
from __future__ import annotations

from abc import ABC, abstractmethod
from dataclasses import dataclass
from enum import StrEnum
from fractions import Fraction
from functools import total_ordering
from typing import TYPE_CHECKING, Any

if TYPE_CHECKING:
    from collections.abc import Hashable, Iterator


class FieldMismatchError(Exception):
    """Exception raised when two values from different fields are combined."""


class FieldDivisionByZeroError(Exception):
    """Exception raised when dividing by zero."""


class FieldOperation(StrEnum):
    ADD = "add"
    SUB = "sub"
    MUL = "mul"
    DIV = "div"


class Field(ABC):
    """Abstract class that every supported exact field implements."""

    @property
    @abstractmethod
    def tag(self) -> str:
        """Literal form of the field, for example Fp(101)."""

    @property
    @abstractmethod
    def characteristic(self) -> int:
        """Characteristic of the field, 0 for the rationals."""

    @property
    @abstractmethod
    def order(self) -> int | None:
        """Number of elements, None for infinite fields."""

    @abstractmethod
    def canonical(self, value: Any) -> Hashable:  # noqa: ANN401
        """Return the canonical representative of a raw value."""

    @abstractmethod
    def from_int(self, n: int) -> Hashable:
        """Return the representative of the image of the integer n."""

    @abstractmethod
    def add_values(self, x: Any, y: Any) -> Hashable:  # noqa: ANN401
        """Add two canonical representatives."""

    @abstractmethod
    def neg_values(self, x: Any) -> Hashable:  # noqa: ANN401
        """Negate a canonical representative."""

    @abstractmethod
    def mul_values(self, x: Any, y: Any) -> Hashable:  # noqa: ANN401
        """Multiply two canonical representatives."""

    @abstractmethod
    def inv_values(self, x: Any) -> Hashable:  # noqa: ANN401
        """Invert a nonzero canonical representative."""

    @abstractmethod
    def sort_key(self, x: Any) -> Any:  # noqa: ANN401
        """Key giving the canonical total order of the field's elements."""

    @abstractmethod
    def format_value(self, x: Any) -> str:  # noqa: ANN401
        """Text form of a representative, readable by parse_value."""

    @abstractmethod
    def parse_value(self, text: str) -> Hashable:
        """Parse an element literal into a canonical representative."""

    @abstractmethod
    def enumerate_values(self) -> Iterator[Hashable]:
        """Yield every representative once, in a fixed order. Infinite for infinite fields."""

    def is_zero_value(self, x: Any) -> bool:  # noqa: ANN401
        return x == self.from_int(0)

    def element(self, value: Any) -> FieldElement:  # noqa: ANN401
        return FieldElement(self, self.canonical(value))

    def __call__(self, value: int | str | Fraction | FieldElement) -> FieldElement:
        """Coerce an integer, a literal or an element of this field into a FieldElement.

        Raises:
            FieldMismatchError: If an element of another field is given
        """
        if isinstance(value, FieldElement):
            if value.field != self:
                error_message = f"{value} is in {value.field.tag}, not {self.tag}"
                raise FieldMismatchError(error_message)
            return value
        if isinstance(value, bool):
            return FieldElement(self, self.from_int(int(value)))
        if isinstance(value, int):
            return FieldElement(self, self.from_int(value))
        if isinstance(value, Fraction):
            return self(value.numerator) / self(value.denominator)
        return FieldElement(self, self.parse_value(value))

    def zero(self) -> FieldElement:
        return FieldElement(self, self.from_int(0))

    def one(self) -> FieldElement:
        return FieldElement(self, self.from_int(1))

    def elements(self) -> Iterator[FieldElement]:
        """Yield every element of the field in enumeration order."""
        for value in self.enumerate_values():
            yield FieldElement(self, value)

    def __str__(self) -> str:
        return self.tag


@total_ordering
@dataclass(frozen=True, eq=True)
class FieldElement:
    """A canonical value of a field.

    Equality is equality of the field and the canonical representative, the order is the field's canonical order.
    """

    field: Field
    value: Any

    def _coerce(self, other: FieldElement | int) -> Any:  # noqa: ANN401
        if isinstance(other, int):
            return self.field.from_int(other)
        if other.field != self.field:
            error_message = f"Cannot combine {self.field.tag} with {other.field.tag}"
            raise FieldMismatchError(error_message)
        return other.value

    def __add__(self, other: FieldElement | int) -> FieldElement:
        return FieldElement(self.field, self.field.add_values(self.value, self._coerce(other)))

    def __radd__(self, other: int) -> FieldElement:
        return self + other

    def __neg__(self) -> FieldElement:
        return FieldElement(self.field, self.field.neg_values(self.value))

    def __sub__(self, other: FieldElement | int) -> FieldElement:
        return FieldElement(self.field, self.field.add_values(self.value, self.field.neg_values(self._coerce(other))))

    def __rsub__(self, other: int) -> FieldElement:
        return -self + other

    def __mul__(self, other: FieldElement | int) -> FieldElement:
        return FieldElement(self.field, self.field.mul_values(self.value, self._coerce(other)))

    def __rmul__(self, other: int) -> FieldElement:
        return self * other

    def inverse(self) -> FieldElement:
        if self.is_zero:
            error_message = f"Cannot invert zero in {self.field.tag}"
            raise FieldDivisionByZeroError(error_message)
        return FieldElement(self.field, self.field.inv_values(self.value))

    def __truediv__(self, other: FieldElement | int) -> FieldElement:
        divisor = FieldElement(self.field, self._coerce(other))
        if divisor.is_zero:
            error_message = f"Division of {self} by zero in {self.field.tag}"
            raise FieldDivisionByZeroError(error_message)
        return self * divisor.inverse()

    def __rtruediv__(self, other: int) -> FieldElement:
        return self.field(other) / self

    def __pow__(self, exponent: int) -> FieldElement:
        base = self if exponent >= 0 else self.inverse()
        exponent = abs(exponent)
        result = self.field.one()
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    @property
    def is_zero(self) -> bool:
        return self.field.is_zero_value(self.value)

    def __lt__(self, other: FieldElement) -> bool:
        self._coerce(other)
        return self.field.sort_key(self.value) < self.field.sort_key(other.value)

    def __str__(self) -> str:
        return self.field.format_value(self.value)

    def __repr__(self) -> str:
        return f"{self.field.tag}:{self}"


def field_ops(x: FieldElement, y: FieldElement, op: FieldOperation) -> FieldElement:
    """Apply one of the four field operations to two elements of the same field.

    Raises:
        FieldMismatchError: If x and y are in different fields
        FieldDivisionByZeroError: If op is division and y is zero
    """
    if x.field != y.field:
        error_message = f"Cannot combine {x.field.tag} with {y.field.tag}"
        raise FieldMismatchError(error_message)
    match op:
        case FieldOperation.ADD:
            return x + y
        case FieldOperation.SUB:
            return x - y
        case FieldOperation.MUL:
            return x * y
        case FieldOperation.DIV:
            return x / y
