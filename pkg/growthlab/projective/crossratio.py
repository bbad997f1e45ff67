"""Cross ratios on the projective line and the point/plane embedding of PGL_2 into PF^3.

A point [x1 : x2] of PF^1 stands for x1 / x2, with [1 : 0] for infinity. The cross ratio of a, b, c, d is
(a - b)(c - d) / ((b - c)(a - d)), taken homogeneously so that infinity and coincidences need no special cases.
"""
from __future__ import annotations

from typing import TYPE_CHECKING

from projective.space import DimMismatchError, ProjHyperplane, ProjMap, ProjPoint

if TYPE_CHECKING:
    from fields.base import Field, FieldElement


class DegenerateTripleError(Exception):
    """Exception raised when the first three arguments of a cross ratio are not pairwise distinct."""


def line_point(field: Field, x: FieldElement | int | str | None) -> ProjPoint:
    """Point of PF^1 for x, with None standing for infinity."""
    if x is None:
        return ProjPoint.of(field, [1, 0])
    return ProjPoint.of(field, [x, 1])


def line_value(point: ProjPoint) -> FieldElement | None:
    """Inverse of line_point."""
    x1, x2 = point.coordinates
    return None if x2.is_zero else x1 / x2


def _bracket(u: ProjPoint, v: ProjPoint) -> FieldElement:
    """u1 v2 - u2 v1, zero exactly when u = v."""
    return u.coordinates[0] * v.coordinates[1] - u.coordinates[1] * v.coordinates[0]


def _check_triple(a: ProjPoint, b: ProjPoint, c: ProjPoint, *rest: ProjPoint) -> None:
    if any(point.dim != 1 for point in (a, b, c, *rest)):
        error_message = "Cross ratios live on the projective line"
        raise DimMismatchError(error_message)
    if a == b or b == c or a == c:
        error_message = f"{a}, {b}, {c} are not pairwise distinct"
        raise DegenerateTripleError(error_message)


def cross_ratio(a: ProjPoint, b: ProjPoint, c: ProjPoint, d: ProjPoint) -> ProjPoint:
    """Return [(a b)(c d) : (b c)(a d)] where (u v) = u1 v2 - u2 v1.

    Raises:
        DegenerateTripleError: If a, b, c are not pairwise distinct
        DimMismatchError: If a point is not in PF^1
    """
    _check_triple(a, b, c, d)
    return ProjPoint((_bracket(a, b) * _bracket(c, d), _bracket(b, c) * _bracket(a, d)))


def tau_abc(a: ProjPoint, b: ProjPoint, c: ProjPoint) -> ProjMap:
    """Transformation d -> cross_ratio(a, b, c, d), sending c to 0 and a to infinity.

    Raises:
        DegenerateTripleError: If a, b, c are not pairwise distinct
    """
    _check_triple(a, b, c)
    ab = _bracket(a, b)
    bc = _bracket(b, c)
    (a1, a2), (c1, c2) = a.coordinates, c.coordinates
    return ProjMap(((-ab * c2, ab * c1), (-bc * a2, bc * a1)))


def psi_embed(tau: ProjMap) -> ProjPoint:
    """Send [[p, q], [r, s]] to [p : q : r : s] in PF^3, off the quadric ps = qr."""
    if tau.dim != 1:
        error_message = f"psi is defined on maps of PF^1, got PF^{tau.dim}"
        raise DimMismatchError(error_message)
    (p, q), (r, s) = tau.matrix
    return ProjPoint((p, q, r, s))


def on_quadric(point: ProjPoint) -> bool:
    """Return whether [p : q : r : s] satisfies ps = qr."""
    p, q, r, s = point.coordinates
    return p * s == q * r


def plane_of_pair(a: ProjPoint, b: ProjPoint) -> ProjHyperplane:
    """Plane of the transformations sending a to b, with coefficients (b2 a1, b2 a2, -b1 a1, -b1 a2)."""
    (a1, a2), (b1, b2) = a.coordinates, b.coordinates
    return ProjHyperplane((b2 * a1, b2 * a2, -b1 * a1, -b1 * a2))
