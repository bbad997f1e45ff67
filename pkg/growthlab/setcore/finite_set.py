"""Contains FiniteSet."""
from __future__ import annotations

from bisect import bisect_left
from functools import cached_property
from typing import TYPE_CHECKING

from common.literals import split_top_level, strict_fullmatch
from fields.base import Field, FieldElement, FieldMismatchError
from fields.parsing import parse_field

if TYPE_CHECKING:
    from collections.abc import Iterable, Iterator
    from fractions import Fraction


class EmptyInputError(Exception):
    """Exception raised when an operation needs a nonempty set."""


class NotInSetError(Exception):
    """Exception raised when an element is not in the set it was looked up in."""


class FiniteSet:
    """Finite set of elements of one field, kept strictly sorted in the field's canonical order."""

    def __init__(self, field: Field, elements: Iterable[FieldElement | int | str | Fraction] = ()) -> None:
        self.field = field
        self.elements: tuple[FieldElement, ...] = tuple(sorted({field(element) for element in elements}))

    @classmethod
    def parse(cls, text: str) -> FiniteSet:
        """Parse a set literal such as Fp(101){1,2,3} or Fq(t;2){1,t,t^2}."""
        match = strict_fullmatch(r"(?P<field>[^{]+)\{(?P<elements>.*)\}", text)
        field = parse_field(match.group("field"))
        return cls(field, split_top_level(match.group("elements")))

    @cached_property
    def members(self) -> frozenset[FieldElement]:
        return frozenset(self.elements)

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self) -> Iterator[FieldElement]:
        return iter(self.elements)

    def __getitem__(self, index: int) -> FieldElement:
        return self.elements[index]

    def __contains__(self, element: object) -> bool:
        return element in self.members

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, FiniteSet):
            return NotImplemented
        return self.field == other.field and self.elements == other.elements

    def __hash__(self) -> int:
        return hash((self.field, self.elements))

    def __str__(self) -> str:
        return f"{self.field.tag}{{{','.join(str(element) for element in self.elements)}}}"

    def __repr__(self) -> str:
        return f"FiniteSet({self})"

    def index(self, element: FieldElement) -> int:
        """Position of an element in the sorted order.

        Raises:
            NotInSetError: If the element is not in the set
        """
        position = bisect_left(self.elements, element)
        if position == len(self.elements) or self.elements[position] != element:
            error_message = f"{element} is not in {self}"
            raise NotInSetError(error_message)
        return position

    def _same_field(self, other: FiniteSet) -> None:
        if self.field != other.field:
            error_message = f"Cannot combine sets over {self.field.tag} and {other.field.tag}"
            raise FieldMismatchError(error_message)

    def with_elements(self, elements: Iterable[FieldElement]) -> FiniteSet:
        """New set over the same field."""
        return FiniteSet(self.field, elements)

    def __or__(self, other: FiniteSet) -> FiniteSet:
        self._same_field(other)
        return self.with_elements(self.members | other.members)

    def __and__(self, other: FiniteSet) -> FiniteSet:
        self._same_field(other)
        return self.with_elements(self.members & other.members)

    def __sub__(self, other: FiniteSet) -> FiniteSet:
        self._same_field(other)
        return self.with_elements(self.members - other.members)

    def __le__(self, other: FiniteSet) -> bool:
        self._same_field(other)
        return self.members <= other.members

    def __neg__(self) -> FiniteSet:
        return self.with_elements(-element for element in self.elements)

    def without_zero(self) -> FiniteSet:
        return self.with_elements(element for element in self.elements if not element.is_zero)

    def subset(self, indices: Iterable[int]) -> FiniteSet:
        return self.with_elements(self.elements[i] for i in indices)

    def to_json(self) -> list[str]:
        return [str(element) for element in self.elements]

    @classmethod
    def from_json(cls, field: Field, values: list[str]) -> FiniteSet:
        return cls(field, values)
