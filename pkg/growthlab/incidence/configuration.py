"""Sum-product configurations: finding four foci with a base line, and reducing them to partial sum-products."""
from __future__ import annotations

import logging
from dataclasses import dataclass, field
from enum import StrEnum
from fractions import Fraction
from itertools import combinations, islice, product
from typing import TYPE_CHECKING, Any, NamedTuple

from common.budget import check_budget
from common.certificate import Certificate
from growthlab.settings import HYPOTHESIS_CONSTANT
from incidence.foci import (
    RegularityViolatedError,
    check_regularity,
    find_focus,
    find_paired_foci,
    focus_check,
    points_through_focus,
)
from incidence.geometry import AffineLine, AffinePoint
from incidence.refine import NoIncidencesError
from projective.space import (
    AtInfinityError,
    NotAFrameError,
    ProjHyperplane,
    ProjPoint,
    affine_coordinates,
    frame_map,
    is_frame,
    points_of_space,
)
from setcore.finite_set import FiniteSet
from setcore.operations import SetOperation, partial_pairwise_set
from setcore.pair_graph import PairGraph

if TYPE_CHECKING:
    from collections.abc import Collection, Iterator

    from fields.base import Field


class Hypothesis(StrEnum):
    REGULARITY = "regularity"
    K_LOWER_BOUND = "K-lower-bound"
    RICHNESS_CAP = "richness-cap"
    J1_TOO_SMALL = "J1-too-small"
    EMPTY_SUBSET = "empty-subset"


class HypothesisFailedError(Exception):
    """Exception raised when an instance fails one of the hypotheses of the configuration search."""

    def __init__(self, which: Hypothesis, message: str) -> None:
        super().__init__(message)
        self.which = which


class MapDegenerateError(Exception):
    """Exception raised when a configuration cannot be sent to the standard position."""


def _fail(which: Hypothesis, message: str) -> HypothesisFailedError:
    logging.getLogger("Configuration").getChild("Hypothesis").info("%s: %s", which, message)
    return HypothesisFailedError(which, message)


@dataclass
class SPConfiguration:
    """Points, four foci p_1..p_4 and the base line through p_2, p_3 and p_4."""

    points: tuple[AffinePoint, ...]
    foci: tuple[ProjPoint, ProjPoint, ProjPoint, ProjPoint]
    base_line: ProjHyperplane
    K: int
    certificate: Certificate = field(default_factory=lambda: Certificate("sp-configuration"))

    def violations(self) -> list[str]:
        """Return a description of every configuration property that fails, empty for a valid configuration."""
        problems = []
        embedded = {point.projective() for point in self.points}
        for index, focus in enumerate(self.foci, start=1):
            if focus in embedded:
                problems.append(f"p{index} is one of the points")
            elif not focus_check(self.points, focus, self.K).holds:
                problems.append(f"p{index} is not a {self.K}-focus")
        if len(set(self.foci)) < len(self.foci):
            problems.append("the foci are not distinct")
        p1, *rest = self.foci
        if self.base_line.contains(p1):
            problems.append("the base line contains p1")
        problems.extend(f"the base line misses p{index}" for index, focus in enumerate(rest, start=2)
                        if not self.base_line.contains(focus))
        if any(self.base_line.contains(point) for point in embedded):
            problems.append("a point lies on the base line")
        return problems

    def to_json(self) -> dict[str, Any]:
        return {
            "points": [point.to_json() for point in self.points],
            "foci": [str(focus) for focus in self.foci],
            "baseLine": str(self.base_line),
            "K": self.K,
        }


def _check_hypotheses(P: Collection[AffinePoint], L: Collection[AffineLine], certificate: Certificate) -> Fraction:
    """Check regularity, K >= c |L|^(3/5) / |P|^(1/5) and the line richness cap, and return K = I(P, L) / |P|."""
    try:
        degrees = check_regularity(P, L)
    except RegularityViolatedError as error:
        raise _fail(Hypothesis.REGULARITY, str(error)) from error
    c = HYPOTHESIS_CONSTANT
    K = Fraction(sum(degrees.values()), len(P))
    certificate.record("K", K)
    if K**5 * len(P) < c**5 * len(L) ** 3:
        error_message = f"K = {K} is below {c} |L|^(3/5) / |P|^(1/5) with |P| = {len(P)} and |L| = {len(L)}"
        raise _fail(Hypothesis.K_LOWER_BOUND, error_message)
    richest = max(sum(1 for point in P if line.contains(point)) for line in L)
    cap = c * min(Fraction(len(P)) * K**8 / len(L) ** 4, Fraction(len(P)) * K**4 / len(L) ** 2)
    certificate.record("max mu", richest)
    certificate.record("richness cap", cap)
    if richest > cap:
        error_message = f"A line holds {richest} points, over the cap of {cap}"
        raise _fail(Hypothesis.RICHNESS_CAP, error_message)
    return K


def find_sp_configuration(P: Collection[AffinePoint], L: Collection[AffineLine]) -> SPConfiguration:
    """Search for a sum-product configuration inside P.

    Q is the paired-foci intersection for p_1, p_2. The lines through p_2 that support the rich part Q_1 of Q are
    pigeonholed into J_1, the candidates for the base line are the lines of J_1 missing p_1, and every pair p_3, p_4
    on a candidate is scanned for the largest Q_(p_3 L) intersect Q_(p_4 L) off the base line.

    Raises:
        HypothesisFailedError: If the instance fails a hypothesis, with which naming it
        BudgetExceededError: If the pair scan is over ENUMERATION_BUDGET
    """
    points = sorted(set(P))
    lines = sorted(set(L))
    certificate = Certificate("sp-configuration", {"|P|": len(points), "|L|": len(lines)})
    K = _check_hypotheses(points, lines, certificate)

    try:
        paired = find_paired_foci(points, lines)
    except NoIncidencesError as error:
        raise _fail(Hypothesis.EMPTY_SUBSET, str(error)) from error
    p1, p2, Q = paired.p1, paired.p2, sorted(paired.intersection)
    certificate.record("p1", str(p1))
    certificate.record("p2", str(p2))
    certificate.record("|Q|", len(Q))
    if not Q:
        raise _fail(Hypothesis.EMPTY_SUBSET, f"P_p1L and P_p2L are disjoint for p1 = {p1}, p2 = {p2}")

    Q1 = find_focus(Q, lines).rich_points
    J = sorted({AffineLine.through(p2, q) for q in Q1})
    threshold = Fraction(len(Q1), 2 * len(J))
    J1 = [line for line in J if sum(1 for q in Q1 if line.contains(q)) >= threshold]
    certificate.record("|Q_1|", len(Q1))
    certificate.record("|J|", len(J))
    certificate.record("|J_1|", len(J1))
    if len(J1) < 2:
        raise _fail(Hypothesis.J1_TOO_SMALL, f"Only {len(J1)} line through p2 carries {threshold} points of Q_1")

    neighbourhoods = {q: points_through_focus(Q, lines, q) for q in Q}
    candidates = [line for line in J1 if not line.contains(p1)]
    check_budget(sum(len(Q) ** 3 for _ in candidates), "base line pair scan")
    best: tuple[int, AffineLine, AffinePoint, AffinePoint, frozenset[AffinePoint]] | None = None
    for line in candidates:
        on_line = [q for q in Q if line.contains(q)]
        _cauchy_schwarz(certificate, line, [q for q in Q1 if line.contains(q)], neighbourhoods, len(Q))
        for p3, p4 in combinations(on_line, 2):
            subset = frozenset(q for q in neighbourhoods[p3] & neighbourhoods[p4] if not line.contains(q))
            if best is None or len(subset) > best[0]:
                best = (len(subset), line, p3, p4, subset)
    if best is None or not best[4]:
        raise _fail(Hypothesis.EMPTY_SUBSET, "No pair on a candidate base line shares a point off the base line")

    size, base_line, p3, p4, subset = best
    foci = (p1.projective(), p2.projective(), p3.projective(), p4.projective())
    members = tuple(sorted(subset))
    configuration_K = max(len(focus_check(members, focus, len(members)).lines) for focus in foci)
    claimed = len(points) * K**8 / len(lines) ** 4
    certificate.record("p3", str(p3))
    certificate.record("p4", str(p4))
    certificate.record("base line", str(base_line))
    certificate.record("configuration K", configuration_K)
    certificate.record("claimed", claimed)
    certificate.record("constant", size / claimed)
    certificate.monitor("subset-size", claimed, size)
    configuration = SPConfiguration(members, foci, base_line.projective(), configuration_K, certificate)
    certificate.check("configuration", len(configuration.violations()), 0)
    return configuration


def _cauchy_schwarz(
    certificate: Certificate,
    line: AffineLine,
    rich: list[AffinePoint],
    neighbourhoods: dict[AffinePoint, frozenset[AffinePoint]],
    size: int,
) -> None:
    """Check (sum |Q_pL|)^2 <= |Q| (sum |Q_pL| + sum over p_3 != p_4 of |Q_(p_3 L) intersect Q_(p_4 L)|)."""
    single = sum(len(neighbourhoods[p]) for p in rich)
    pairs = sum(len(neighbourhoods[p3] & neighbourhoods[p4]) for p3, p4 in combinations(rich, 2))
    certificate.check(f"cauchy-schwarz {line}", single * single, size * (single + 2 * pairs))


def _completing_points(field: Field) -> Iterator[ProjPoint]:
    """Affine points over the first four elements of the field, or the whole plane for fields with fewer."""
    values = list(islice(field.elements(), 4))
    if len(values) < 4:
        yield from points_of_space(field, 2)
        return
    one = field.one()
    for x, y in product(values, repeat=2):
        yield ProjPoint((x, y, one))


class Reduction(NamedTuple):
    A: FiniteSet
    B: FiniteSet
    G: PairGraph
    certificate: Certificate


def reduce_sp_configuration(configuration: SPConfiguration) -> Reduction:
    """Send p_1 to the origin and p_3, p_4 to [0:1:0], [1:0:0], then read off A, B' and G inside A x B'.

    The base line goes to the line at infinity, so p_2 goes to [u:v:0]. Points of G on one line through the image
    of p_2 share a - (u/v) b, and B' = (u/v) B turns these into the partial difference set.

    Raises:
        MapDegenerateError: If the configuration is invalid or no projective map sends it to standard position
    """
    problems = configuration.violations()
    if problems:
        error_message = f"Invalid configuration: {'; '.join(problems)}"
        raise MapDegenerateError(error_message)
    p1, p2, p3, p4 = configuration.foci
    field_ = p1.field
    zero, one = field_.zero(), field_.one()
    fourth = next((q for q in _completing_points(field_) if is_frame([p1, p3, p4, q])), None)
    if fourth is None:
        error_message = f"No point completes {p1}, {p3}, {p4} to a frame"
        raise MapDegenerateError(error_message)
    standard = [ProjPoint((zero, zero, one)), ProjPoint((zero, one, zero)), ProjPoint((one, zero, zero))]
    try:
        tau = frame_map([p1, p3, p4, fourth], [*standard, ProjPoint((one, one, one))])
        images = [affine_coordinates(tau(point.projective())) for point in configuration.points]
    except (NotAFrameError, AtInfinityError) as error:
        raise MapDegenerateError(str(error)) from error
    u, v, _ = tau(p2).coordinates
    scale = u / v
    pairs = [(a, scale * b) for a, b in images]
    A = FiniteSet(field_, (a for a, _ in pairs))
    B = FiniteSet(field_, (b for _, b in pairs))
    G = PairGraph.from_pairs(A, B, pairs)
    differences = partial_pairwise_set(G, SetOperation.DIFF)
    ratios = {ProjPoint((a, b)) for a, b in pairs}

    certificate = Certificate("sp-reduction", {"configuration": configuration.to_json()})
    certificate.record("tau", tau.to_json())
    certificate.record("fourth point", str(fourth))
    certificate.record("|A|", len(A))
    certificate.record("|B|", len(B))
    certificate.record("|A -G B|", len(differences))
    certificate.record("|A /G B|", len(ratios))
    certificate.check("graph-size", len(configuration.points), len(G))
    certificate.check("points-injective", len(G), len(configuration.points))
    certificate.check("|A|", len(A), configuration.K)
    certificate.check("|B|", len(B), configuration.K)
    certificate.check("difference-set", len(differences), configuration.K)
    certificate.check("ratio-set", len(ratios), configuration.K)
    return Reduction(A, B, G, certificate)
