"""Rich points, rich lines and dyadic pigeonholing."""
from __future__ import annotations

from enum import StrEnum
from fractions import Fraction
from typing import TYPE_CHECKING, Generic, NamedTuple, TypeVar

from common.certificate import Certificate
from incidence.geometry import AffineLine, AffinePoint

if TYPE_CHECKING:
    from collections.abc import Collection, Mapping

Key = TypeVar("Key")


class NoIncidencesError(Exception):
    """Exception raised when a refinement step is asked for on a configuration with no incidences."""


class RichSide(StrEnum):
    POINTS = "points"
    LINES = "lines"


class RichSubset(NamedTuple):
    members: tuple[AffinePoint, ...] | tuple[AffineLine, ...]
    incidences: int
    threshold: Fraction
    certificate: Certificate


def rich_filter(P: Collection[AffinePoint], L: Collection[AffineLine], side: RichSide) -> RichSubset:
    """Keep the points on at least I(P, L) / 2|P| lines of L, or the lines through at least I(P, L) / 2|L| points.

    The kept part always carries at least half of the incidences, which the certificate checks.

    Raises:
        NoIncidencesError: If I(P, L) = 0
    """
    points = sorted(P)
    lines = sorted(L)
    on_line = {line: sum(1 for point in points if line.contains(point)) for line in lines}
    total = sum(on_line.values())
    if total == 0:
        error_message = f"No incidences between {len(points)} points and {len(lines)} lines"
        raise NoIncidencesError(error_message)
    if side is RichSide.LINES:
        threshold = Fraction(total, 2 * len(lines))
        members: tuple = tuple(line for line in lines if on_line[line] >= threshold)
        kept = sum(on_line[line] for line in members)
    else:
        threshold = Fraction(total, 2 * len(points))
        through = {point: sum(1 for line in lines if line.contains(point)) for point in points}
        members = tuple(point for point in points if through[point] >= threshold)
        kept = sum(through[point] for point in members)

    certificate = Certificate(f"rich-{side}", {"|P|": len(points), "|L|": len(lines)})
    certificate.record("I(P,L)", total)
    certificate.record("threshold", threshold)
    certificate.record("kept", len(members))
    certificate.check("half-incidences", total, 2 * kept)
    return RichSubset(members, kept, threshold, certificate)


class DyadicClass(NamedTuple, Generic[Key]):
    j: int
    members: tuple[Key, ...]
    mass: int


def dyadic_classes(values: Mapping[Key, int]) -> DyadicClass[Key]:
    """Return the class of keys with value in [2^j, 2^(j+1)) of largest total value, smaller j on ties.

    Raises:
        ValueError: If values is empty or holds a value below 1
    """
    if not values or min(values.values()) < 1:
        error_message = "Dyadic pigeonholing needs a nonempty map of positive integers"
        raise ValueError(error_message)
    classes: dict[int, list[Key]] = {}
    for key, value in values.items():
        classes.setdefault(value.bit_length() - 1, []).append(key)
    masses = {j: sum(values[key] for key in keys) for j, keys in classes.items()}
    best = min(masses, key=lambda j: (-masses[j], j))
    return DyadicClass(best, tuple(classes[best]), masses[best])
