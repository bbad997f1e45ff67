"""Projective spaces PF^n, hyperplanes and projective transformations.

Points and hyperplanes are stored scaled so that their first nonzero coordinate is 1, which makes equality of
projective objects plain tuple equality. Transformations are invertible matrices modulo scalars, scaled the same
way in row-major order.
"""
from __future__ import annotations

import json
from collections import Counter
from dataclasses import dataclass
from functools import total_ordering
from itertools import combinations, product
from typing import TYPE_CHECKING, NamedTuple

from common.budget import check_budget
from common.literals import split_top_level, strict_fullmatch
from fields.polynomial import InfiniteFieldError
from growthlab.settings import GROUP_ENUMERATION_LIMIT
from projective.linalg import Matrix, SingularMatrixError, determinant, inverse, matmul, matvec, rank, solve, transpose
from typing_extensions import Self

if TYPE_CHECKING:
    from collections.abc import Iterable, Iterator, Sequence

    from fields.base import Field, FieldElement


class AtInfinityError(Exception):
    """Exception raised when a point at infinity is mapped back to affine space."""


class DimMismatchError(Exception):
    """Exception raised when projective objects of different dimensions are combined."""


class ZeroVectorError(Exception):
    """Exception raised when the zero vector is given as homogeneous coordinates."""


class NotAFrameError(Exception):
    """Exception raised when points given as a frame are not in general position."""


def canonical_vector(values: Sequence[FieldElement]) -> tuple[FieldElement, ...]:
    """Scale values so that the first nonzero entry is 1.

    Raises:
        ZeroVectorError: If every entry is zero
    """
    leading = next((value for value in values if not value.is_zero), None)
    if leading is None:
        error_message = "Homogeneous coordinates cannot all be zero"
        raise ZeroVectorError(error_message)
    scale = leading.inverse()
    return tuple(value * scale for value in values)


@total_ordering
@dataclass(frozen=True, eq=False)
class _Homogeneous:
    coordinates: tuple[FieldElement, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "coordinates", canonical_vector(self.coordinates))

    @classmethod
    def of(cls, field: Field, values: Iterable[FieldElement | int | str]) -> Self:
        return cls(tuple(field(value) for value in values))

    @classmethod
    def parse(cls, field: Field, text: str) -> Self:
        """Parse a literal such as [1:0:2]."""
        match = strict_fullmatch(r"\[(?P<coordinates>.*)\]", text)
        return cls.of(field, split_top_level(match.group("coordinates"), ":"))

    @property
    def field(self) -> Field:
        return self.coordinates[0].field

    @property
    def dim(self) -> int:
        return len(self.coordinates) - 1

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, type(self)):
            return NotImplemented
        return self.coordinates == other.coordinates

    def __hash__(self) -> int:
        return hash((type(self).__name__, self.coordinates))

    def __lt__(self, other: _Homogeneous) -> bool:
        return self.coordinates < other.coordinates

    def __str__(self) -> str:
        return f"[{':'.join(str(value) for value in self.coordinates)}]"

    def __repr__(self) -> str:
        return f"{type(self).__name__}{self}"


class ProjPoint(_Homogeneous):
    """Point of PF^n."""


class ProjHyperplane(_Homogeneous):
    """Hyperplane a_1 x_1 + ... + a_(n+1) x_(n+1) = 0 of PF^n."""

    def contains(self, point: ProjPoint) -> bool:
        _same_dim(self.dim, point.dim)
        total = self.field.zero()
        for a, x in zip(self.coordinates, point.coordinates, strict=True):
            total = total + a * x
        return total.is_zero


def _same_dim(first: int, second: int) -> None:
    if first != second:
        error_message = f"Dimensions {first} and {second} differ"
        raise DimMismatchError(error_message)


@dataclass(frozen=True)
class ProjMap:
    """Projective transformation [T] of PF^n given by an invertible (n+1) x (n+1) matrix."""

    matrix: Matrix

    def __post_init__(self) -> None:
        size = len(self.matrix)
        if any(len(row) != size for row in self.matrix):
            error_message = f"A projective map needs a square matrix, got {len(self.matrix)} rows"
            raise DimMismatchError(error_message)
        flat = canonical_vector([entry for row in self.matrix for entry in row])
        matrix = tuple(tuple(flat[i * size : (i + 1) * size]) for i in range(size))
        if determinant(matrix).is_zero:
            error_message = f"Matrix {json.dumps(_rows_json(matrix))} is singular"
            raise SingularMatrixError(error_message)
        object.__setattr__(self, "matrix", matrix)

    @classmethod
    def of(cls, field: Field, rows: Iterable[Iterable[FieldElement | int | str]]) -> ProjMap:
        return cls(tuple(tuple(field(entry) for entry in row) for row in rows))

    @classmethod
    def identity(cls, field: Field, n: int) -> ProjMap:
        return cls.of(field, [[1 if i == j else 0 for j in range(n + 1)] for i in range(n + 1)])

    @property
    def dim(self) -> int:
        return len(self.matrix) - 1

    @property
    def field(self) -> Field:
        return self.matrix[0][0].field

    def __call__(self, point: ProjPoint) -> ProjPoint:
        return apply(self, point)

    def __matmul__(self, other: ProjMap) -> ProjMap:
        _same_dim(self.dim, other.dim)
        return ProjMap(matmul(self.matrix, other.matrix))

    def inverse(self) -> ProjMap:
        return ProjMap(inverse(self.matrix))

    def image_of_hyperplane(self, hyperplane: ProjHyperplane) -> ProjHyperplane:
        """Return the hyperplane {T x : x in hyperplane}, with coefficients a T^-1."""
        _same_dim(self.dim, hyperplane.dim)
        return ProjHyperplane(matvec(transpose(inverse(self.matrix)), hyperplane.coordinates))

    def to_json(self) -> list[list[str]]:
        return _rows_json(self.matrix)

    def __str__(self) -> str:
        return json.dumps(self.to_json())


def _rows_json(matrix: Matrix) -> list[list[str]]:
    return [[str(entry) for entry in row] for row in matrix]


def embed_affine(field: Field, x: Iterable[FieldElement | int | str]) -> ProjPoint:
    """Identify x in F^n with [x : 1]."""
    return ProjPoint.of(field, [*x, 1])


def affine_coordinates(point: ProjPoint) -> tuple[FieldElement, ...]:
    """Inverse of embed_affine.

    Raises:
        AtInfinityError: If the last coordinate is zero
    """
    last = point.coordinates[-1]
    if last.is_zero:
        error_message = f"{point} lies on the hyperplane at infinity"
        raise AtInfinityError(error_message)
    return tuple(value / last for value in point.coordinates[:-1])


def apply(tau: ProjMap, point: ProjPoint) -> ProjPoint:
    """Return [T x].

    Raises:
        DimMismatchError: If tau and point live in different dimensions
    """
    _same_dim(tau.dim, point.dim)
    return ProjPoint(matvec(tau.matrix, point.coordinates))


def is_frame(points: Sequence[ProjPoint]) -> bool:
    """Return whether n + 2 points of PF^n have no n + 1 of them on a common hyperplane."""
    n = points[0].dim if points else 0
    if len(points) != n + 2:
        return False
    return all(rank([p.coordinates for p in subset]) == n + 1 for subset in combinations(points, n + 1))


def _frame_matrix(points: Sequence[ProjPoint]) -> Matrix:
    """Matrix sending e_i to lambda_i t_i and (1, ..., 1) to t_(n+2), where t_(n+2) = sum lambda_i t_i."""
    basis = transpose([p.coordinates for p in points[:-1]])
    weights = solve(basis, points[-1].coordinates)
    return tuple(tuple(entry * weight for entry, weight in zip(row, weights, strict=True)) for row in basis)


def frame_map(P: Sequence[ProjPoint], Q: Sequence[ProjPoint]) -> ProjMap:
    """Return the unique transformation sending the frame P to the frame Q point by point.

    Raises:
        DimMismatchError: If the points do not share a dimension
        NotAFrameError: If P or Q is not a frame
    """
    dims = {p.dim for p in [*P, *Q]}
    if len(dims) > 1:
        error_message = f"Frame points live in dimensions {sorted(dims)}"
        raise DimMismatchError(error_message)
    for frame in (P, Q):
        if not is_frame(frame):
            error_message = f"{[str(p) for p in frame]} is not a frame"
            raise NotAFrameError(error_message)
    tau = ProjMap(matmul(_frame_matrix(Q), inverse(_frame_matrix(P))))
    if [apply(tau, p) for p in P] != list(Q):
        error_message = f"Frame map {tau} does not send {[str(p) for p in P]} to {[str(q) for q in Q]}"
        raise NotAFrameError(error_message)
    return tau


def points_of_space(field: Field, n: int) -> Iterator[ProjPoint]:
    """Yield every point of PF^n over a finite field, ordered by the position of the leading 1.

    Raises:
        InfiniteFieldError: If the field is infinite
    """
    if field.order is None:
        error_message = f"{field.tag} has infinitely many points"
        raise InfiniteFieldError(error_message)
    check_budget(field.order ** (n + 1), f"points of PF^{n} over {field.tag}")
    elements = list(field.elements())
    zero, one = field.zero(), field.one()
    for leading in range(n + 1):
        for tail in product(elements, repeat=n - leading):
            yield ProjPoint((*([zero] * leading), one, *tail))


def projective_group(field: Field, n: int) -> Iterator[ProjMap]:
    """Yield every element of PGL_(n+1)(F) over a small finite field.

    Raises:
        InfiniteFieldError: If the field is infinite
        BudgetExceededError: If q^((n+1)^2) is over GROUP_ENUMERATION_LIMIT
    """
    size = n + 1
    if field.order is not None:
        check_budget(field.order ** (size * size), f"PGL_{size} over {field.tag}", GROUP_ENUMERATION_LIMIT)
    for flat in points_of_space(field, size * size - 1):
        matrix = tuple(tuple(flat.coordinates[i * size : (i + 1) * size]) for i in range(size))
        if not determinant(matrix).is_zero:
            yield ProjMap(matrix)


class ProjectiveIncidences(NamedTuple):
    total: int
    per_point: dict[ProjPoint, int]
    histogram: Counter[int]


def incidence_count_projective(
    points: Iterable[ProjPoint],
    hyperplanes: Iterable[ProjHyperplane],
) -> ProjectiveIncidences:
    """Count point-hyperplane incidences, with the number m(p) of hyperplanes through each point.

    Raises:
        DimMismatchError: If a point and a hyperplane live in different dimensions
    """
    planes = list(hyperplanes)
    per_point = {point: sum(1 for plane in planes if plane.contains(point)) for point in points}
    return ProjectiveIncidences(sum(per_point.values()), per_point, Counter(per_point.values()))


def join(p: ProjPoint, q: ProjPoint) -> ProjHyperplane:
    """Return the line of PF^2 through two distinct points, with coefficients p x q.

    Raises:
        DimMismatchError: If either point is not in PF^2
        ZeroVectorError: If p = q
    """
    if p.dim != 2 or q.dim != 2:
        error_message = f"Lines are joined in PF^2, got PF^{p.dim} and PF^{q.dim}"
        raise DimMismatchError(error_message)
    (x1, y1, z1), (x2, y2, z2) = p.coordinates, q.coordinates
    return ProjHyperplane((y1 * z2 - z1 * y2, z1 * x2 - x1 * z2, x1 * y2 - y1 * x2))
