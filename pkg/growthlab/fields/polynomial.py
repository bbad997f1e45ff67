"""Polynomials over a finite field, used for extension fields and for F_q[t]."""
from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import TYPE_CHECKING, Any

from common.literals import LiteralSyntaxError, split_top_level, strict_fullmatch
from fields.base import Field, FieldDivisionByZeroError

if TYPE_CHECKING:
    from collections.abc import Hashable, Iterable, Iterator


class InfiniteFieldError(Exception):
    """Exception raised when an operation needs a finite field."""


_TERM_PATTERN = r"(?P<coefficient>\d+|\[[^\]]*\])?\*?(?P<variable>{variable})?(?:\^(?P<exponent>\d+))?"


@dataclass(frozen=True)
class Polynomial:
    """Polynomial with coefficients stored lowest degree first as canonical values of the base field.

    The coefficient tuple never has a trailing zero, so the zero polynomial is the empty tuple.
    """

    field: Field
    coefficients: tuple[Hashable, ...]

    @classmethod
    def of(cls, field: Field, coefficients: Iterable[Any]) -> Polynomial:
        """Build a polynomial from raw coefficients, lowest degree first."""
        values = [field.canonical(c) if not isinstance(c, int) else field.from_int(c) for c in coefficients]
        while values and field.is_zero_value(values[-1]):
            values.pop()
        return cls(field, tuple(values))

    @classmethod
    def constant(cls, field: Field, value: Any) -> Polynomial:  # noqa: ANN401
        return cls.of(field, [value])

    @classmethod
    def monomial(cls, field: Field, degree: int) -> Polynomial:
        return cls.of(field, [0] * degree + [1])

    @property
    def degree(self) -> int:
        """Degree of the polynomial, -1 for zero."""
        return len(self.coefficients) - 1

    @property
    def is_zero(self) -> bool:
        return not self.coefficients

    @property
    def leading(self) -> Hashable:
        return self.coefficients[-1]

    def coefficient(self, i: int) -> Hashable:
        return self.coefficients[i] if 0 <= i < len(self.coefficients) else self.field.from_int(0)

    def __add__(self, other: Polynomial) -> Polynomial:
        length = max(len(self.coefficients), len(other.coefficients))
        return Polynomial.of(
            self.field,
            [self.field.add_values(self.coefficient(i), other.coefficient(i)) for i in range(length)],
        )

    def __neg__(self) -> Polynomial:
        return Polynomial(self.field, tuple(self.field.neg_values(c) for c in self.coefficients))

    def __sub__(self, other: Polynomial) -> Polynomial:
        return self + (-other)

    def scale(self, value: Any) -> Polynomial:  # noqa: ANN401
        return Polynomial.of(self.field, [self.field.mul_values(c, value) for c in self.coefficients])

    def __mul__(self, other: Polynomial) -> Polynomial:
        if self.is_zero or other.is_zero:
            return Polynomial(self.field, ())
        zero = self.field.from_int(0)
        result = [zero] * (len(self.coefficients) + len(other.coefficients) - 1)
        for i, a in enumerate(self.coefficients):
            if self.field.is_zero_value(a):
                continue
            for j, b in enumerate(other.coefficients):
                result[i + j] = self.field.add_values(result[i + j], self.field.mul_values(a, b))
        return Polynomial.of(self.field, result)

    def __divmod__(self, divisor: Polynomial) -> tuple[Polynomial, Polynomial]:
        if divisor.is_zero:
            error_message = "Polynomial division by zero"
            raise FieldDivisionByZeroError(error_message)
        remainder = list(self.coefficients)
        quotient = [self.field.from_int(0)] * max(len(remainder) - divisor.degree, 0)
        inverse_leading = self.field.inv_values(divisor.leading)
        while len(remainder) - 1 >= divisor.degree and remainder:
            shift = len(remainder) - 1 - divisor.degree
            factor = self.field.mul_values(remainder[-1], inverse_leading)
            quotient[shift] = factor
            for i, c in enumerate(divisor.coefficients):
                remainder[shift + i] = self.field.add_values(
                    remainder[shift + i],
                    self.field.neg_values(self.field.mul_values(factor, c)),
                )
            while remainder and self.field.is_zero_value(remainder[-1]):
                remainder.pop()
        return Polynomial.of(self.field, quotient), Polynomial.of(self.field, remainder)

    def __floordiv__(self, divisor: Polynomial) -> Polynomial:
        return divmod(self, divisor)[0]

    def __mod__(self, divisor: Polynomial) -> Polynomial:
        return divmod(self, divisor)[1]

    def monic(self) -> Polynomial:
        if self.is_zero:
            return self
        return self.scale(self.field.inv_values(self.leading))

    def power_mod(self, exponent: int, modulus: Polynomial) -> Polynomial:
        result = Polynomial.constant(self.field, 1) % modulus
        base = self % modulus
        while exponent:
            if exponent & 1:
                result = result * base % modulus
            base = base * base % modulus
            exponent >>= 1
        return result

    def evaluate(self, x: Any) -> Hashable:  # noqa: ANN401
        result = self.field.from_int(0)
        for c in reversed(self.coefficients):
            result = self.field.add_values(self.field.mul_values(result, x), c)
        return result

    def sort_key(self) -> tuple[int, tuple[Any, ...]]:
        """Order by degree, then by coefficients from the highest degree down."""
        return self.degree, tuple(self.field.sort_key(c) for c in reversed(self.coefficients))

    def format(self, variable: str) -> str:
        """Text form such as t^2+2t+1, readable by Polynomial.parse."""
        if self.is_zero:
            return "0"
        one = self.field.from_int(1)
        terms: list[str] = []
        for degree in range(self.degree, -1, -1):
            c = self.coefficients[degree]
            if self.field.is_zero_value(c):
                continue
            coefficient = self.field.format_value(c)
            if not coefficient.lstrip("-").isdigit():
                coefficient = f"[{coefficient}]"
            if degree == 0:
                terms.append(coefficient)
                continue
            power = variable if degree == 1 else f"{variable}^{degree}"
            terms.append(power if c == one else f"{coefficient}{power}")
        return "+".join(terms)

    @classmethod
    def parse(cls, field: Field, text: str, variable: str) -> Polynomial:
        """Parse a polynomial literal such as t^2+1 or 2x+[x+1].

        Bracketed coefficients are element literals of the coefficient field.

        Raises:
            LiteralSyntaxError: If the text is not a polynomial in the given variable
        """
        text = text.replace(" ", "")
        if not text:
            error_message = "Empty polynomial literal"
            raise LiteralSyntaxError(error_message)
        result = Polynomial(field, ())
        for sign, term in _signed_terms(text):
            match = strict_fullmatch(_TERM_PATTERN.format(variable=variable), term)
            if not term or (match.group("exponent") and not match.group("variable")):
                error_message = f"Could not parse the term {term!r} of {text!r}"
                raise LiteralSyntaxError(error_message)
            raw_coefficient = match.group("coefficient")
            if raw_coefficient is None:
                coefficient = field.from_int(1)
            elif raw_coefficient.startswith("["):
                coefficient = field.parse_value(raw_coefficient[1:-1])
            else:
                coefficient = field.from_int(int(raw_coefficient))
            degree = int(match.group("exponent") or 1) if match.group("variable") else 0
            if sign < 0:
                coefficient = field.neg_values(coefficient)
            result = result + Polynomial.monomial(field, degree).scale(coefficient)
        return result


def _signed_terms(text: str) -> list[tuple[int, str]]:
    """Split a polynomial literal into signed terms, ignoring signs inside brackets."""
    terms: list[tuple[int, str]] = []
    for piece in split_top_level(text.replace("-", "+-"), "+"):
        if piece.startswith("-"):
            terms.append((-1, piece[1:]))
        elif piece:
            terms.append((1, piece))
    return terms


def polynomial_gcd(a: Polynomial, b: Polynomial) -> Polynomial:
    """Monic greatest common divisor, zero only when both inputs are zero."""
    while not b.is_zero:
        a, b = b, a % b
    return a.monic()


def polynomials_of_degree(field: Field, degree: int, *, monic: bool = False) -> Iterator[Polynomial]:
    """Yield the polynomials of exactly the given degree in increasing sort_key order.

    The base field must be finite.
    """
    values = list(field.enumerate_values())
    leading_values = [field.from_int(1)] if monic else [v for v in values if not field.is_zero_value(v)]
    for leading in leading_values:
        for lower in product(values, repeat=degree):
            yield Polynomial.of(field, [*reversed(lower), leading])


def is_irreducible(f: Polynomial) -> bool:
    """Ben-Or test: f has no irreducible factor of degree up to deg(f)/2.

    The base field must be finite.
    """
    if f.degree < 1:
        return False
    q = f.field.order
    if q is None:
        error_message = f"Irreducibility is only tested over finite fields, not {f.field.tag}"
        raise InfiniteFieldError(error_message)
    x = Polynomial.monomial(f.field, 1)
    power = x % f
    for _ in range(f.degree // 2):
        power = power.power_mod(q, f)
        if polynomial_gcd(f, power - x).degree > 0:
            return False
    return True
