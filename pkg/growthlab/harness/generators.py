"""Seeded instance families.

Every family is a function of (field, size, seed) only, so a campaign reproduces its instances from its seed.
"""
from __future__ import annotations

from enum import StrEnum
from functools import cache
from typing import TYPE_CHECKING

from common.prng import SplitMix64
from ffield.element import FunctionField
from fields.prime import PrimeField
from incidence.constructions import (
    FieldTooSmallError,
    InvalidSizeError,
    NotACubeError,
    bourgain_garaev_set,
    elekes_config,
    extremal_grid,
)
from incidence.geometry import IncidenceInstance
from setcore.finite_set import FiniteSet

if TYPE_CHECKING:
    from collections.abc import Callable

    from fields.base import Field, FieldElement

Sample = FiniteSet | IncidenceInstance

# Largest finite field whose elements are listed to draw random members
ENUMERATED_ORDER_LIMIT = 10**5


class SpecInvalidError(Exception):
    """Exception raised when a campaign or instance description cannot be realized."""


class Family(StrEnum):
    AP = "ap"
    GP = "gp"
    RANDOM = "random"
    T_POWERS = "t-powers"
    BG_SET = "bg-set"
    ELEKES = "elekes"
    EXTREMAL_GRID = "extremal-grid"


def family_of(text: str) -> Family:
    """Parse a family name.

    Raises:
        SpecInvalidError: If the text names no family
    """
    try:
        return Family(text.strip().lower())
    except ValueError:
        error_message = f"Unknown family {text!r}, expected one of {', '.join(Family)}"
        raise SpecInvalidError(error_message) from None


def polynomial_from_code(field: FunctionField, code: int) -> FieldElement:
    """The polynomial whose coefficients are the base q digits of code, lowest degree first."""
    element = field.zero()
    degree = 0
    while code:
        code, digit = divmod(code, field.q)
        element = element + digit * field.t_power(degree)
        degree += 1
    return element


@cache
def _listed_elements(field: Field) -> tuple[FieldElement, ...]:
    return tuple(field.elements())


def _universe(field: Field, size: int) -> int:
    """Number of candidate elements random members are drawn from."""
    if isinstance(field, FunctionField):
        universe = field.q
        while universe < 4 * size:
            universe *= field.q
        return universe
    if field.order is not None:
        return field.order
    return 8 * size + 1


def _element_at(field: Field, index: int, universe: int) -> FieldElement:
    if isinstance(field, PrimeField):
        return field(index)
    if isinstance(field, FunctionField):
        return polynomial_from_code(field, index)
    if field.order is not None:
        return _listed_elements(field)[index]
    return field(index - universe // 2)


def _random_element(field: Field, rng: SplitMix64, universe: int, *, nonzero: bool = False) -> FieldElement:
    while True:
        element = _element_at(field, rng.below(universe), universe)
        if not (nonzero and element.is_zero):
            return element


def _check_enumerable(field: Field) -> None:
    if field.order is not None and field.order > ENUMERATED_ORDER_LIMIT and not isinstance(field, PrimeField):
        error_message = f"{field.tag} is too large to draw elements from"
        raise SpecInvalidError(error_message)


def _exact_size(field: Field, elements: list[FieldElement], size: int, family: Family) -> FiniteSet:
    A = FiniteSet(field, elements)
    if len(A) != size:
        error_message = f"{family} of size {size} does not exist in {field.tag}"
        raise SpecInvalidError(error_message)
    return A


def _random_set(field: Field, size: int, rng: SplitMix64) -> FiniteSet:
    universe = _universe(field, size)
    if size > universe:
        error_message = f"{field.tag} has fewer than {size} elements"
        raise SpecInvalidError(error_message)
    if universe > ENUMERATED_ORDER_LIMIT:
        members: set[FieldElement] = set()
        while len(members) < size:
            members.add(_element_at(field, rng.below(universe), universe))
        return FiniteSet(field, members)
    return FiniteSet(field, [_element_at(field, index, universe) for index in rng.sample(range(universe), size)])


def _progression(field: Field, size: int, rng: SplitMix64) -> FiniteSet:
    universe = _universe(field, size)
    start = _random_element(field, rng, universe)
    step = _random_element(field, rng, universe, nonzero=True)
    return _exact_size(field, [start + i * step for i in range(size)], size, Family.AP)


def _geometric(field: Field, size: int, rng: SplitMix64) -> FiniteSet:
    universe = _universe(field, size)
    start = _random_element(field, rng, universe, nonzero=True)
    for _ in range(64):
        ratio = _random_element(field, rng, universe, nonzero=True)
        if ratio == field.one() or ratio == -field.one():
            continue
        elements = [start * ratio**i for i in range(size)]
        if len(set(elements)) == size:
            return FiniteSet(field, elements)
    error_message = f"No ratio of order at least {size} found in {field.tag}"
    raise SpecInvalidError(error_message)


def _t_powers(field: Field, size: int, _rng: SplitMix64) -> FiniteSet:
    if not isinstance(field, FunctionField):
        error_message = f"t-powers need a function field, got {field.tag}"
        raise SpecInvalidError(error_message)
    return FiniteSet(field, [field.t_power(j) for j in range(size)])


def _bourgain_garaev(field: Field, size: int, _rng: SplitMix64) -> FiniteSet:
    if not isinstance(field, PrimeField):
        error_message = f"bg-set needs a prime field, got {field.tag}"
        raise SpecInvalidError(error_message)
    return bourgain_garaev_set(field.p, size).subset


def _elekes(field: Field, size: int, rng: SplitMix64) -> IncidenceInstance:
    return elekes_config(_random_set(field, size, rng))[0]


def _extremal(field: Field, size: int, _rng: SplitMix64) -> IncidenceInstance:
    return extremal_grid(field, size)


_GENERATORS: dict[Family, Callable[[Field, int, SplitMix64], Sample]] = {
    Family.AP: _progression,
    Family.GP: _geometric,
    Family.RANDOM: _random_set,
    Family.T_POWERS: _t_powers,
    Family.BG_SET: _bourgain_garaev,
    Family.ELEKES: _elekes,
    Family.EXTREMAL_GRID: _extremal,
}


def generate(family: Family, field: Field, size: int, seed: int) -> Sample:
    """Build the instance of a family for a size and seed.

    Raises:
        SpecInvalidError: If the family has no instance of that size over the field
    """
    if size < 1:
        error_message = f"Instance sizes start at 1, got {size}"
        raise SpecInvalidError(error_message)
    _check_enumerable(field)
    try:
        return _GENERATORS[family](field, size, SplitMix64(seed))
    except (NotACubeError, FieldTooSmallError, InvalidSizeError) as error:
        raise SpecInvalidError(str(error)) from error


def random_set(field: Field, size: int, seed: int) -> FiniteSet:
    """Seeded random set of the given size, the random family without the Sample union."""
    _check_enumerable(field)
    return _random_set(field, size, SplitMix64(seed))
