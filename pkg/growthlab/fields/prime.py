"""Prime fields F_p."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import TYPE_CHECKING

from typing_extensions import override

from common.literals import strict_fullmatch
from fields.base import Field, FieldDivisionByZeroError, FieldElement
from growthlab.settings import MAX_MODULUS

if TYPE_CHECKING:
    from collections.abc import Iterator

# Deterministic Miller-Rabin witnesses, correct for every n below 3.3 * 10**24
_WITNESSES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)


class InvalidModulusError(Exception):
    """Exception raised when a field modulus is not a prime in the supported range."""


class GeneratorRangeError(Exception):
    """Exception raised when a generator is requested for a field with no candidates in [2, p)."""


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin primality test."""
    if n < 2:
        return False
    for witness in _WITNESSES:
        if n % witness == 0:
            return n == witness
    d = n - 1
    s = 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for witness in _WITNESSES:
        x = pow(witness, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = pow(x, 2, n)
            if x == n - 1:
                break
        else:
            return False
    return True


def prime_factors(n: int) -> list[int]:
    """Distinct prime factors of n in increasing order, by trial division."""
    factors: list[int] = []
    candidate = 2
    while candidate * candidate <= n:
        if n % candidate == 0:
            factors.append(candidate)
            while n % candidate == 0:
                n //= candidate
        candidate += 1 if candidate == 2 else 2
    if n > 1:
        factors.append(n)
    return factors


@dataclass(frozen=True)
class PrimeField(Field):
    """The field of residues modulo a prime p."""

    p: int

    def __post_init__(self) -> None:
        if not 2 <= self.p < MAX_MODULUS or not is_prime(self.p):
            error_message = f"{self.p} is not a prime below 2^64"
            raise InvalidModulusError(error_message)

    @property
    @override
    def tag(self) -> str:
        return f"Fp({self.p})"

    @property
    @override
    def characteristic(self) -> int:
        return self.p

    @property
    @override
    def order(self) -> int:
        return self.p

    @override
    def canonical(self, value: int) -> int:
        return value % self.p

    @override
    def from_int(self, n: int) -> int:
        return n % self.p

    @override
    def add_values(self, x: int, y: int) -> int:
        return (x + y) % self.p

    @override
    def neg_values(self, x: int) -> int:
        return -x % self.p

    @override
    def mul_values(self, x: int, y: int) -> int:
        return x * y % self.p

    @override
    def inv_values(self, x: int) -> int:
        if x == 0:
            error_message = f"Cannot invert zero in {self.tag}"
            raise FieldDivisionByZeroError(error_message)
        return pow(x, -1, self.p)

    @override
    def is_zero_value(self, x: int) -> bool:
        return x == 0

    @override
    def sort_key(self, x: int) -> int:
        return x

    @override
    def format_value(self, x: int) -> str:
        return str(x)

    @override
    def parse_value(self, text: str) -> int:
        match = strict_fullmatch(r"(?P<numerator>-?\d+)(?:/(?P<denominator>-?\d+))?", text)
        value = Fraction(int(match.group("numerator")), int(match.group("denominator") or 1))
        return self.mul_values(self.from_int(value.numerator), self.inv_values(self.from_int(value.denominator)))

    @override
    def enumerate_values(self) -> Iterator[int]:
        return iter(range(self.p))


def find_generator(field: PrimeField) -> FieldElement:
    """Return the smallest g in [2, p) generating the multiplicative group of F_p.

    Raises:
        GeneratorRangeError: If p = 2
    """
    if field.p < 3:
        error_message = f"No generator candidates in [2, {field.p})"
        raise GeneratorRangeError(error_message)
    group_order = field.p - 1
    factors = prime_factors(group_order)
    for candidate in range(2, field.p):
        if all(pow(candidate, group_order // prime, field.p) != 1 for prime in factors):
            return field(candidate)
    # Unreachable for prime p since the multiplicative group is cyclic
    error_message = f"No generator found for {field.tag}"
    raise GeneratorRangeError(error_message)
