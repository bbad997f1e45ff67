"""Rational function fields F_q(t)."""
from __future__ import annotations

from dataclasses import dataclass
from itertools import count
from typing import TYPE_CHECKING, Any

from typing_extensions import override

from common.literals import split_top_level, strict_fullmatch
from fields.base import Field, FieldDivisionByZeroError, FieldElement
from fields.extension import ExtField
from fields.polynomial import Polynomial, polynomial_gcd, polynomials_of_degree
from fields.prime import PrimeField

if TYPE_CHECKING:
    from collections.abc import Iterator


@dataclass(frozen=True)
class FFElement:
    """Reduced fraction of polynomials over F_q with a monic denominator, zero stored as 0/1."""

    numerator: Polynomial
    denominator: Polynomial

    @classmethod
    def reduced(cls, numerator: Polynomial, denominator: Polynomial) -> FFElement:
        if denominator.is_zero:
            error_message = "Rational function with zero denominator"
            raise FieldDivisionByZeroError(error_message)
        if numerator.is_zero:
            return cls(numerator, Polynomial.constant(numerator.field, 1))
        common = polynomial_gcd(numerator, denominator)
        numerator = numerator // common
        denominator = denominator // common
        scale = numerator.field.inv_values(denominator.leading)
        return cls(numerator.scale(scale), denominator.scale(scale))

    @property
    def is_zero(self) -> bool:
        return self.numerator.is_zero

    @property
    def degree(self) -> int | None:
        """deg(numerator) - deg(denominator), None for zero."""
        if self.is_zero:
            return None
        return self.numerator.degree - self.denominator.degree


@dataclass(frozen=True)
class FunctionField(Field):
    """The field F_q(t) of rational functions over a finite field."""

    base: PrimeField | ExtField

    @property
    def q(self) -> int:
        return self.base.order

    @property
    @override
    def tag(self) -> str:
        if isinstance(self.base, PrimeField):
            return f"Fq(t;{self.base.p})"
        return f"Fq(t;{self.base.p},{self.base.degree})"

    @property
    @override
    def characteristic(self) -> int:
        return self.base.characteristic

    @property
    @override
    def order(self) -> None:
        return None

    def polynomial(self, coefficients: list[Any]) -> Polynomial:
        return Polynomial.of(self.base, coefficients)

    def t_power(self, exponent: int) -> FieldElement:
        """The element t^exponent, for any integer exponent."""
        one = Polynomial.constant(self.base, 1)
        power = Polynomial.monomial(self.base, abs(exponent))
        if exponent >= 0:
            return FieldElement(self, FFElement(power, one))
        return FieldElement(self, FFElement(one, power))

    @override
    def canonical(self, value: FFElement | Polynomial | int) -> FFElement:
        if isinstance(value, int):
            return self.from_int(value)
        if isinstance(value, Polynomial):
            return FFElement.reduced(value, Polynomial.constant(self.base, 1))
        return FFElement.reduced(value.numerator, value.denominator)

    @override
    def from_int(self, n: int) -> FFElement:
        return FFElement(Polynomial.constant(self.base, self.base.from_int(n)), Polynomial.constant(self.base, 1))

    @override
    def add_values(self, x: FFElement, y: FFElement) -> FFElement:
        if x.denominator == y.denominator:
            return FFElement.reduced(x.numerator + y.numerator, x.denominator)
        return FFElement.reduced(
            x.numerator * y.denominator + y.numerator * x.denominator,
            x.denominator * y.denominator,
        )

    @override
    def neg_values(self, x: FFElement) -> FFElement:
        return FFElement(-x.numerator, x.denominator)

    @override
    def mul_values(self, x: FFElement, y: FFElement) -> FFElement:
        return FFElement.reduced(x.numerator * y.numerator, x.denominator * y.denominator)

    @override
    def inv_values(self, x: FFElement) -> FFElement:
        if x.is_zero:
            error_message = f"Cannot invert zero in {self.tag}"
            raise FieldDivisionByZeroError(error_message)
        return FFElement.reduced(x.denominator, x.numerator)

    @override
    def is_zero_value(self, x: FFElement) -> bool:
        return x.is_zero

    @override
    def sort_key(self, x: FFElement) -> tuple[Any, ...]:
        return x.denominator.sort_key(), x.numerator.sort_key()

    @override
    def format_value(self, x: FFElement) -> str:
        numerator = x.numerator.format("t")
        if x.denominator.degree == 0:
            return numerator
        return f"({numerator})/({x.denominator.format('t')})"

    @override
    def parse_value(self, text: str) -> FFElement:
        pieces = split_top_level(text.replace(" ", ""), "/")
        numerator = Polynomial.parse(self.base, _strip_parentheses(pieces[0]), "t")
        denominator = Polynomial.constant(self.base, 1)
        for piece in pieces[1:]:
            denominator = denominator * Polynomial.parse(self.base, _strip_parentheses(piece), "t")
        return FFElement.reduced(numerator, denominator)

    @override
    def enumerate_values(self) -> Iterator[FFElement]:
        """Yield every element by increasing height max(deg numerator, deg denominator)."""
        yield self.from_int(0)
        for height in count(0):
            for denominator_degree in range(height + 1):
                for denominator in polynomials_of_degree(self.base, denominator_degree, monic=True):
                    numerator_degrees = [height] if denominator_degree < height else range(height + 1)
                    for numerator_degree in numerator_degrees:
                        for numerator in polynomials_of_degree(self.base, numerator_degree):
                            if polynomial_gcd(numerator, denominator).degree == 0:
                                yield FFElement.reduced(numerator, denominator)


def _strip_parentheses(text: str) -> str:
    if text.startswith("(") and text.endswith(")"):
        return text[1:-1]
    return text


def parse_ff_literal(text: str) -> FieldElement:
    """Parse an element literal such as (t^2+1)/(t+1) @ Fq(2) or t+1 @ Fq(3,2)."""
    match = strict_fullmatch(r"(?P<element>.+)@\s*Fq\((?P<p>\d+)(?:,(?P<degree>\d+))?\)", text)
    p = int(match.group("p"))
    degree = int(match.group("degree") or 1)
    base = PrimeField(p) if degree == 1 else ExtField.of(p, degree)
    field = FunctionField(base)
    return FieldElement(field, field.parse_value(match.group("element").strip()))
