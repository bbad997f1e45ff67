"""Closed balls B(x, r) = {y : |x - y| <= q^r} of F_q(t) and the balls B_A(a) around points of a set.

In an ultrametric two balls are disjoint or one contains the other, and every point of a ball is a center of it.
"""
from __future__ import annotations

from dataclasses import dataclass
from enum import StrEnum
from typing import TYPE_CHECKING, NamedTuple

from ffield.valuation import Valuation, dist
from setcore.energy import TooSmallError

if TYPE_CHECKING:
    from fields.base import FieldElement
    from setcore.finite_set import FiniteSet


class BallRelation(StrEnum):
    DISJOINT = "disjoint"
    SUBSET = "subset"
    SUPERSET = "superset"
    EQUAL = "equal"


@dataclass(frozen=True)
class Ball:
    center: FieldElement
    radius: int

    def __contains__(self, x: FieldElement) -> bool:
        return member(x, self)

    def to_json(self) -> dict[str, object]:
        return {"center": str(self.center), "radius": self.radius}

    def __str__(self) -> str:
        return f"B({self.center}, q^{self.radius})"


def member(x: FieldElement, ball: Ball) -> bool:
    distance = dist(x, ball.center)
    return distance.exponent is None or distance.exponent <= ball.radius


def ball_ops(first: Ball, second: Ball) -> BallRelation:
    """Classify two balls as disjoint, nested either way, or equal."""
    if not member(second.center, first) and not member(first.center, second):
        return BallRelation.DISJOINT
    if first.radius == second.radius:
        return BallRelation.EQUAL
    return BallRelation.SUBSET if first.radius < second.radius else BallRelation.SUPERSET


def contained(first: Ball, second: Ball) -> bool:
    """Return whether first is a subset of second."""
    return ball_ops(first, second) in (BallRelation.SUBSET, BallRelation.EQUAL)


def members_in(A: FiniteSet, ball: Ball) -> FiniteSet:
    """Return A intersected with the ball."""
    return A.with_elements(a for a in A if member(a, ball))


class NearestBall(NamedTuple):
    radius: Valuation
    ball: Ball


def nearest_and_ball(A: FiniteSet, a: FieldElement) -> NearestBall:
    """Return r_A(a), the least distance from a to another point of A, and B_A(a) = B(a, r_A(a)).

    Raises:
        TooSmallError: If |A| < 2
        NotInSetError: If a is not in A
    """
    if len(A) < 2:
        error_message = f"r_A(a) needs at least two points, got {len(A)}"
        raise TooSmallError(error_message)
    A.index(a)
    radius = min(dist(a, other) for other in A if other != a)
    return NearestBall(radius, Ball(a, radius.exponent))
