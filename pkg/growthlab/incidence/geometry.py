"""Points and lines of the affine plane F^2 and the incidence count I(P, L)."""
from __future__ import annotations

import json
from dataclasses import dataclass
from functools import cached_property
from itertools import combinations
from typing import TYPE_CHECKING, Any

from json_file import JSONFile

from fields.parsing import parse_field
from projective.space import AtInfinityError, ProjHyperplane, ProjPoint, canonical_vector, join

if TYPE_CHECKING:
    from collections.abc import Iterable

    from paved_path import PavedPath

    from fields.base import Field, FieldElement


class TooFewPointsError(Exception):
    """Exception raised when fewer than two points are given to determine lines."""


@dataclass(frozen=True, order=True)
class AffinePoint:
    x: FieldElement
    y: FieldElement

    @classmethod
    def of(cls, field: Field, x: FieldElement | int | str, y: FieldElement | int | str) -> AffinePoint:
        return cls(field(x), field(y))

    @classmethod
    def from_projective(cls, point: ProjPoint) -> AffinePoint:
        """Raises AtInfinityError for points on the line at infinity."""
        x, y, z = point.coordinates
        if z.is_zero:
            error_message = f"{point} lies on the line at infinity"
            raise AtInfinityError(error_message)
        return cls(x / z, y / z)

    @property
    def field(self) -> Field:
        return self.x.field

    def projective(self) -> ProjPoint:
        return ProjPoint((self.x, self.y, self.field.one()))

    def to_json(self) -> list[str]:
        return [str(self.x), str(self.y)]

    def __str__(self) -> str:
        return f"({self.x},{self.y})"


@dataclass(frozen=True, order=True)
class AffineLine:
    """The line ax + by + c = 0, scaled so that the first nonzero coefficient is 1."""

    a: FieldElement
    b: FieldElement
    c: FieldElement

    def __post_init__(self) -> None:
        if self.a.is_zero and self.b.is_zero:
            error_message = "ax + by + c = 0 with a = b = 0 is not an affine line"
            raise AtInfinityError(error_message)
        a, b, c = canonical_vector((self.a, self.b, self.c))
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)
        object.__setattr__(self, "c", c)

    @classmethod
    def of(
        cls,
        field: Field,
        a: FieldElement | int | str,
        b: FieldElement | int | str,
        c: FieldElement | int | str,
    ) -> AffineLine:
        return cls(field(a), field(b), field(c))

    @classmethod
    def from_projective(cls, hyperplane: ProjHyperplane) -> AffineLine:
        return cls(*hyperplane.coordinates)

    @classmethod
    def through(cls, p: AffinePoint, q: AffinePoint) -> AffineLine:
        """The line l_pq through two distinct points."""
        return cls.from_projective(join(p.projective(), q.projective()))

    @classmethod
    def graph(cls, slope: FieldElement, intercept: FieldElement) -> AffineLine:
        """The line y = slope * x + intercept."""
        return cls(slope, -slope.field.one(), intercept)

    @property
    def field(self) -> Field:
        return self.a.field

    def contains(self, point: AffinePoint) -> bool:
        return (self.a * point.x + self.b * point.y + self.c).is_zero

    def projective(self) -> ProjHyperplane:
        return ProjHyperplane((self.a, self.b, self.c))

    def to_json(self) -> list[str]:
        return [str(self.a), str(self.b), str(self.c)]

    def __str__(self) -> str:
        return f"[{self.a},{self.b},{self.c}]"


def incidence_count(P: Iterable[AffinePoint], L: Iterable[AffineLine]) -> int:
    """I(P, L), the number of pairs (p, l) with p on l."""
    lines = list(L)
    return sum(1 for point in P for line in lines if line.contains(point))


class DeterminedLines(dict[AffineLine, int]):
    """The lines L(P) determined by pairs of a point set, mapped to their richness mu(l)."""

    @property
    def richest(self) -> int:
        return max(self.values(), default=0)


def lines_determined(P: Iterable[AffinePoint]) -> DeterminedLines:
    """Return L(P) with mu(l) = |P intersect l| for each line.

    Raises:
        TooFewPointsError: If P has fewer than two points
    """
    points = sorted(set(P))
    if len(points) < 2:
        error_message = f"Lines are determined by at least two points, got {len(points)}"
        raise TooFewPointsError(error_message)
    determined = DeterminedLines()
    for line in sorted({AffineLine.through(p, q) for p, q in combinations(points, 2)}):
        determined[line] = sum(1 for point in points if line.contains(point))
    return determined


@dataclass(frozen=True)
class IncidenceInstance:
    """A point set and a line set over one field, both deduplicated and sorted."""

    field: Field
    points: tuple[AffinePoint, ...]
    lines: tuple[AffineLine, ...]

    @classmethod
    def build(cls, field: Field, points: Iterable[AffinePoint], lines: Iterable[AffineLine]) -> IncidenceInstance:
        return cls(field, tuple(sorted(set(points))), tuple(sorted(set(lines))))

    @cached_property
    def points_on(self) -> dict[AffineLine, tuple[AffinePoint, ...]]:
        return {line: tuple(point for point in self.points if line.contains(point)) for line in self.lines}

    @cached_property
    def lines_through(self) -> dict[AffinePoint, tuple[AffineLine, ...]]:
        through: dict[AffinePoint, list[AffineLine]] = {point: [] for point in self.points}
        for line, points in self.points_on.items():
            for point in points:
                through[point].append(line)
        return {point: tuple(lines) for point, lines in through.items()}

    @cached_property
    def incidences(self) -> int:
        return sum(len(points) for points in self.points_on.values())

    def revalidate(self) -> bool:
        """Recount I(P, L) directly and compare it with the cached count."""
        return incidence_count(self.points, self.lines) == self.incidences

    def to_json(self) -> dict[str, Any]:
        return {
            "field": self.field.tag,
            "points": [point.to_json() for point in self.points],
            "lines": [line.to_json() for line in self.lines],
        }

    @classmethod
    def from_json(cls, data: dict[str, Any]) -> IncidenceInstance:
        field = parse_field(data["field"])
        return cls.build(
            field,
            (AffinePoint.of(field, x, y) for x, y in data["points"]),
            (AffineLine.of(field, a, b, c) for a, b, c in data["lines"]),
        )

    def write(self, path: PavedPath) -> None:
        JSONFile(path).write(json.dumps(self.to_json(), indent=2))

    @classmethod
    def read(cls, path: PavedPath) -> IncidenceInstance:
        return cls.from_json(JSONFile(path).parsed_cached())
