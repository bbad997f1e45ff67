"""Extension fields F_q = F_p[x]/(m(x))."""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import TYPE_CHECKING

from typing_extensions import override

from fields.base import Field, FieldDivisionByZeroError
from fields.polynomial import Polynomial, is_irreducible, polynomials_of_degree
from fields.prime import InvalidModulusError, PrimeField

if TYPE_CHECKING:
    from collections.abc import Iterator


class ReducibleModulusError(Exception):
    """Exception raised when an extension field modulus is not a monic irreducible polynomial."""


def irreducible_poly(p: int, degree: int) -> Polynomial:
    """Return the lexicographically smallest monic irreducible polynomial of the given degree over F_p."""
    if degree < 1:
        error_message = f"Degree must be at least 1, got {degree}"
        raise InvalidModulusError(error_message)
    for candidate in polynomials_of_degree(PrimeField(p), degree, monic=True):
        if is_irreducible(candidate):
            return candidate
    # Unreachable, irreducible polynomials exist in every degree
    error_message = f"No irreducible polynomial of degree {degree} over F_{p}"
    raise ReducibleModulusError(error_message)


@dataclass(frozen=True)
class ExtField(Field):
    """The field F_p[x]/(m(x)) of order p^degree.

    Elements are coefficient tuples of length degree, lowest power of x first.
    """

    p: int
    modulus_coefficients: tuple[int, ...]

    @classmethod
    def of(cls, p: int, degree: int, modulus: Polynomial | None = None) -> ExtField:
        """Build F_{p^degree}, using the smallest irreducible polynomial when no modulus is given."""
        if modulus is None:
            modulus = irreducible_poly(p, degree)
        if modulus.degree != degree:
            error_message = f"Modulus {modulus.format('x')} does not have degree {degree}"
            raise ReducibleModulusError(error_message)
        return cls(p, tuple(int(c) for c in modulus.coefficients))

    def __post_init__(self) -> None:
        modulus = self.modulus
        if modulus.leading != 1 or not is_irreducible(modulus):
            error_message = f"{modulus.format('x')} is not monic irreducible over F_{self.p}"
            raise ReducibleModulusError(error_message)

    @cached_property
    def prime_field(self) -> PrimeField:
        return PrimeField(self.p)

    @property
    def modulus(self) -> Polynomial:
        return Polynomial.of(PrimeField(self.p), self.modulus_coefficients)

    @property
    def degree(self) -> int:
        return len(self.modulus_coefficients) - 1

    @property
    @override
    def tag(self) -> str:
        return f"Fq({self.p},{self.degree};{self.modulus.format('x')})"

    @property
    @override
    def characteristic(self) -> int:
        return self.p

    @property
    @override
    def order(self) -> int:
        return self.p**self.degree

    def _to_polynomial(self, value: tuple[int, ...]) -> Polynomial:
        return Polynomial.of(self.prime_field, value)

    def _from_polynomial(self, polynomial: Polynomial) -> tuple[int, ...]:
        reduced = polynomial % self.modulus
        return tuple(int(reduced.coefficient(i)) for i in range(self.degree))

    @override
    def canonical(self, value: tuple[int, ...] | int) -> tuple[int, ...]:
        if isinstance(value, int):
            return self.from_int(value)
        return self._from_polynomial(self._to_polynomial(value))

    @override
    def from_int(self, n: int) -> tuple[int, ...]:
        return (n % self.p,) + (0,) * (self.degree - 1)

    @override
    def add_values(self, x: tuple[int, ...], y: tuple[int, ...]) -> tuple[int, ...]:
        return tuple((a + b) % self.p for a, b in zip(x, y, strict=True))

    @override
    def neg_values(self, x: tuple[int, ...]) -> tuple[int, ...]:
        return tuple(-a % self.p for a in x)

    @override
    def mul_values(self, x: tuple[int, ...], y: tuple[int, ...]) -> tuple[int, ...]:
        return self._from_polynomial(self._to_polynomial(x) * self._to_polynomial(y))

    @override
    def inv_values(self, x: tuple[int, ...]) -> tuple[int, ...]:
        if not any(x):
            error_message = f"Cannot invert zero in {self.tag}"
            raise FieldDivisionByZeroError(error_message)
        return self._from_polynomial(self._to_polynomial(x).power_mod(self.order - 2, self.modulus))

    @override
    def is_zero_value(self, x: tuple[int, ...]) -> bool:
        return not any(x)

    @override
    def sort_key(self, x: tuple[int, ...]) -> int:
        return sum(c * self.p**i for i, c in enumerate(x))

    @override
    def format_value(self, x: tuple[int, ...]) -> str:
        return self._to_polynomial(x).format("x")

    @override
    def parse_value(self, text: str) -> tuple[int, ...]:
        return self._from_polynomial(Polynomial.parse(self.prime_field, text, "x"))

    @override
    def enumerate_values(self) -> Iterator[tuple[int, ...]]:
        for n in range(self.order):
            digits = []
            for _ in range(self.degree):
                n, digit = divmod(n, self.p)
                digits.append(digit)
            yield tuple(digits)
