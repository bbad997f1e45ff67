"""Foci of point sets and the search for single and paired foci.

A point f is a K-focus for P when P is supported over at most K lines through f. For p in P and a line set L,
P_pL is the set of q in P other than p with the line l_pq in L.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import TYPE_CHECKING, NamedTuple

from common.certificate import Certificate
from growthlab.settings import REGULARITY_FACTOR
from incidence.geometry import AffineLine, AffinePoint
from incidence.refine import NoIncidencesError, RichSide, rich_filter
from projective.space import ProjPoint, join

if TYPE_CHECKING:
    from collections.abc import Collection, Iterable


class FocusInSetError(Exception):
    """Exception raised when a focus is itself one of the points it should support."""


class NotInPError(Exception):
    """Exception raised when a point is expected to lie in the point set P."""


class RegularityViolatedError(Exception):
    """Exception raised when the numbers of lines through the points of P differ by more than the allowed factor."""


class FocusSupport(NamedTuple):
    holds: bool
    lines: tuple[AffineLine, ...]


def focus_check(P: Iterable[AffinePoint], focus: AffinePoint | ProjPoint, K: int) -> FocusSupport:
    """Group P by the line through the focus and report whether at most K lines are needed.

    The focus may be a point at infinity, in which case the supporting lines are parallel.

    Raises:
        FocusInSetError: If the focus is one of the points
    """
    apex = focus if isinstance(focus, ProjPoint) else focus.projective()
    lines: set[AffineLine] = set()
    for point in P:
        embedded = point.projective()
        if embedded == apex:
            error_message = f"Focus {apex} is in the point set"
            raise FocusInSetError(error_message)
        lines.add(AffineLine.from_projective(join(apex, embedded)))
    return FocusSupport(len(lines) <= K, tuple(sorted(lines)))


def points_through_focus(
    P: Collection[AffinePoint],
    L: Collection[AffineLine],
    p: AffinePoint,
) -> frozenset[AffinePoint]:
    """Return P_pL.

    Raises:
        NotInPError: If p is not in P
    """
    if p not in P:
        error_message = f"{p} is not in P"
        raise NotInPError(error_message)
    lines = {line for line in L if line.contains(p)}
    return frozenset(q for q in P if q != p and AffineLine.through(p, q) in lines)


def line_degrees(P: Iterable[AffinePoint], L: Collection[AffineLine]) -> dict[AffinePoint, int]:
    """Number of lines of L through each point of P."""
    return {point: sum(1 for line in L if line.contains(point)) for point in P}


def check_regularity(P: Iterable[AffinePoint], L: Collection[AffineLine]) -> dict[AffinePoint, int]:
    """Return the line degrees after checking 1 <= min and max <= REGULARITY_FACTOR * min.

    Raises:
        RegularityViolatedError: If some point is on no line, or the degrees are too far apart
    """
    degrees = line_degrees(P, L)
    if not degrees:
        error_message = "The point set is empty"
        raise RegularityViolatedError(error_message)
    low, high = min(degrees.values()), max(degrees.values())
    if low == 0 or high > REGULARITY_FACTOR * low:
        error_message = f"Line degrees range over [{low}, {high}], more than a factor of {REGULARITY_FACTOR}"
        raise RegularityViolatedError(error_message)
    return degrees


@dataclass
class FocusSearch:
    rich_points: tuple[AffinePoint, ...]
    neighbourhoods: dict[AffinePoint, frozenset[AffinePoint]]
    certificate: Certificate

    def best(self) -> AffinePoint:
        """Rich point with the largest P_pL, first in order on ties."""
        return max(self.rich_points, key=lambda point: len(self.neighbourhoods[point]))


def _nominal_K(P: Collection[AffinePoint], degrees: dict[AffinePoint, int]) -> Fraction:
    return Fraction(sum(degrees.values()), len(P))


def find_focus(P: Collection[AffinePoint], L: Collection[AffineLine]) -> FocusSearch:
    """Refine to the rich lines L_1 and then to the points P_1 rich in L_1, and measure P_pL on P_1.

    With K = I(P, L) / |P| the certificate records min |P_pL| next to K^2 |P| / |L| and the realized constant.

    Raises:
        RegularityViolatedError: If the line degrees of P are not within REGULARITY_FACTOR of each other
    """
    degrees = check_regularity(P, L)
    rich_lines = rich_filter(P, L, RichSide.LINES)
    rich_points = rich_filter(P, rich_lines.members, RichSide.POINTS)
    points = tuple(sorted(rich_points.members))
    neighbourhoods = {point: points_through_focus(P, L, point) for point in points}
    K = _nominal_K(P, degrees)
    smallest = min(len(neighbourhood) for neighbourhood in neighbourhoods.values())
    claimed = K * K * len(P) / len(L)

    certificate = Certificate("individual-foci", {"|P|": len(P), "|L|": len(L)})
    certificate.record("K", K)
    certificate.record("|P_1|", len(points))
    certificate.record("min |P_pL|", smallest)
    certificate.record("claimed", claimed)
    certificate.record("constant", smallest / claimed)
    certificate.add_bound(rich_lines.certificate.bound("half-incidences"))
    certificate.check("rich-subset", len(P) * min(degrees.values()), 4 * len(points) * max(degrees.values()))
    certificate.monitor("focus-size", claimed, smallest)
    return FocusSearch(points, neighbourhoods, certificate)


class PairedFoci(NamedTuple):
    p1: AffinePoint
    p2: AffinePoint
    intersection: frozenset[AffinePoint]
    certificate: Certificate


def find_paired_foci(P: Collection[AffinePoint], L: Collection[AffineLine]) -> PairedFoci:
    """Take the best p_1 from find_focus, then p_2 in P_(p_1 L) maximising |P_(p_1 L) intersect P_(p_2 L)|.

    Raises:
        RegularityViolatedError: If the line degrees of P are not within REGULARITY_FACTOR of each other
        NoIncidencesError: If no point shares a line of L with p_1
    """
    search = find_focus(P, L)
    p1 = search.best()
    first = search.neighbourhoods[p1]
    if not first:
        error_message = f"No point of P shares a line of L with {p1}"
        raise NoIncidencesError(error_message)
    candidates = sorted(first)
    overlaps = {p2: first & points_through_focus(P, L, p2) for p2 in candidates}
    p2 = max(candidates, key=lambda candidate: len(overlaps[candidate]))
    intersection = overlaps[p2]
    K = search.certificate.quantities["K"]
    claimed = len(P) * K**4 / len(L) ** 2

    certificate = Certificate("paired-foci", {"|P|": len(P), "|L|": len(L), "p1": str(p1), "p2": str(p2)})
    certificate.record("K", K)
    certificate.record("|P_p1L|", len(first))
    certificate.record("|P_p1L & P_p2L|", len(intersection))
    certificate.record("claimed", claimed)
    certificate.record("constant", len(intersection) / claimed)
    certificate.monitor("intersection-size", claimed, len(intersection))
    return PairedFoci(p1, p2, intersection, certificate)
