"""Covering a set, or the partial difference set of a graph, by few translates.

Every greedy step takes the translate covering the most still uncovered elements and breaks ties by the smallest
center.
"""
from __future__ import annotations

from fractions import Fraction
from typing import TYPE_CHECKING

from calculus.bsg import check_density, high_degree_indices
from calculus.certificates import CoverCertificate, CoverDirection
from calculus.plunnecke import sets_instance
from common.certificate import Bound
from common.exact import check_epsilon, cover_constant
from growthlab.settings import DEFAULT_EPSILON
from setcore.finite_set import EmptyInputError
from setcore.operations import SetOperation, pairwise_set, partial_pairwise_set

if TYPE_CHECKING:
    from collections.abc import Iterable

    from fields.base import FieldElement
    from setcore.finite_set import FiniteSet
    from setcore.pair_graph import PairGraph


def _best_translate(
    candidates: Iterable[FieldElement],
    transland: FiniteSet,
    remaining: set[FieldElement],
) -> tuple[FieldElement | None, set[FieldElement]]:
    """Candidate center whose translate of transland meets remaining the most, smallest center on ties."""
    best: FieldElement | None = None
    best_hits: set[FieldElement] = set()
    for center in sorted(set(candidates)):
        hits = {center + shift for shift in transland} & remaining
        if len(hits) > len(best_hits):
            best, best_hits = center, hits
    return best, best_hits


def cover_ruzsa(A: FiniteSet, B: FiniteSet) -> CoverCertificate:
    """Cover all of A by translates x + (B - B).

    The candidate centers form a maximal X in A with pairwise disjoint x - B, taken in order, so A lies in
    X + (B - B) and |X| |B| <= |A - B|. Centers are then chosen from X greedily.

    Raises:
        EmptyInputError: If B is empty
    """
    if not B:
        error_message = "A Ruzsa cover needs a nonempty B"
        raise EmptyInputError(error_message)
    family: list[FieldElement] = []
    used: set[FieldElement] = set()
    for x in A:
        translate = {x - b for b in B}
        if not translate & used:
            family.append(x)
            used |= translate
    differences = pairwise_set(B, B, SetOperation.DIFF)
    remaining = set(A)
    centers: list[FieldElement] = []
    while remaining:
        center, hits = _best_translate(family, differences, remaining)
        if center is None:
            break
        centers.append(center)
        remaining -= hits

    a_minus_b = len(pairwise_set(A, B, SetOperation.DIFF)) if A else 0
    certificate = CoverCertificate(
        "ruzsa-cover",
        sets_instance(A=A, B=B),
        centers=A.with_elements(centers),
        covered_subset=A,
        transland=differences,
        direction=CoverDirection.DIFFERENCE,
    )
    certificate.record("|X|", len(family))
    certificate.record("|centers|", len(centers))
    certificate.record("|A-B|", a_minus_b)
    certificate.check("disjoint-family", len(family) * len(B), a_minus_b)
    certificate.check("center-count", len(centers) * len(B), a_minus_b)
    certificate.check("center-ceiling", len(centers), -(-a_minus_b // len(B)))
    certificate.verify_cover()
    return certificate


def cover_shen(A: FiniteSet, B: FiniteSet, epsilon: Fraction) -> CoverCertificate:
    """Cover at least (1 - epsilon) |A| elements of A by translates a - b + B.

    Each step meets at least |R| |B| / |A - B| of the remaining set R, which bounds the number of steps by
    |A - B| / (epsilon |B|).

    Raises:
        EpsilonRangeError: If epsilon is outside of (0, 1)
        EmptyInputError: If A or B is empty
    """
    epsilon = check_epsilon(epsilon)
    a_minus_b = len(pairwise_set(A, B, SetOperation.DIFF))
    remaining = set(A)
    centers: list[FieldElement] = []
    while len(remaining) > epsilon * len(A):
        center, hits = _best_translate((a - b for a in remaining for b in B), B, remaining)
        if center is None:
            break
        centers.append(center)
        remaining -= hits

    covered = A.with_elements(set(A) - remaining)
    certificate = CoverCertificate(
        "shen-cover",
        sets_instance(A=A, B=B) | {"epsilon": str(epsilon)},
        centers=A.with_elements(centers),
        covered_subset=covered,
        transland=B,
        direction=CoverDirection.PLUS,
    )
    certificate.record("|centers|", len(centers))
    certificate.record("coverage", Fraction(len(covered), len(A)))
    certificate.record("|A-B|", a_minus_b)
    certificate.check("coverage", len(A) - len(covered), epsilon * len(A))
    certificate.check("center-count", len(centers) * len(B) * epsilon, a_minus_b)
    certificate.verify_cover()
    return certificate


def _peel(
    start: list[FieldElement],
    B: FiniteSet,
    direction: CoverDirection,
    epsilon: Fraction,
) -> tuple[list[FieldElement], set[FieldElement]]:
    """Greedily cover start until at most sqrt(epsilon) |start| elements are left.

    Candidate centers are a - b for translates of B and a + b for translates of -B, over a remaining and b in B.
    """
    transland = B if direction is CoverDirection.PLUS else -B
    sign = -1 if direction is CoverDirection.PLUS else 1
    remaining = set(start)
    centers: list[FieldElement] = []
    while len(remaining) ** 2 > epsilon * len(start) ** 2:
        candidates = (a + sign * b for a in remaining for b in B)
        center, hits = _best_translate(candidates, transland, remaining)
        if center is None:
            break
        centers.append(center)
        remaining -= hits
    return centers, set(start) - remaining


def cover_variation1(
    G: PairGraph,
    epsilon: Fraction = DEFAULT_EPSILON,
) -> tuple[CoverCertificate, CoverCertificate]:
    """Cover at least (1 - 2 sqrt(epsilon)) |A| elements of A by translates of B, and again by translates of -B.

    The peel runs on the elements of degree at least (1 - sqrt(epsilon)) |B|. The number of centers is at most
    C(epsilon) |A -G B| / |B| with C(epsilon) = 1 / (sqrt(epsilon) (1 - sqrt(epsilon))^2) rounded up.

    Raises:
        EpsilonRangeError: If epsilon is outside of (0, 1/4)
        DensityTooLowError: If |G| < (1 - epsilon) |A| |B|
    """
    epsilon = check_epsilon(epsilon, Fraction(1, 4))
    check_density(G, epsilon)
    A, B = G.left, G.right
    start = [A[i] for i in high_degree_indices(G, epsilon)]
    partial_difference = partial_pairwise_set(G, SetOperation.DIFF)
    constant = cover_constant(epsilon)
    certificates: list[CoverCertificate] = []
    for direction in (CoverDirection.PLUS, CoverDirection.MINUS):
        centers, covered = _peel(start, B, direction, epsilon)
        certificate = CoverCertificate(
            "shen-variation-1",
            G.to_json() | {"epsilon": str(epsilon), "direction": str(direction)},
            centers=A.with_elements(centers),
            covered_subset=A.with_elements(covered),
            transland=B if direction is CoverDirection.PLUS else -B,
            direction=direction,
        )
        certificate.record("|A_1|", len(start))
        certificate.record("|centers|", len(centers))
        certificate.record("|A-G B|", len(partial_difference))
        certificate.record("C", constant)
        certificate.add_bound(Bound.sqrt_form("coverage", len(A) - len(covered), 4 * epsilon, len(A)))
        certificate.check("center-count", len(centers) * len(B), constant * len(partial_difference))
        certificate.verify_cover()
        certificates.append(certificate)
    return certificates[0], certificates[1]


def cover_variation2(G: PairGraph, epsilon: Fraction = DEFAULT_EPSILON) -> tuple[PairGraph, CoverCertificate]:
    """Find G' in G with |G'| >= (1 - epsilon) |G| whose partial difference set lies in few translates of -B.

    Each step picks a_* whose translate a_* - B contains the most differences a - b of remaining edges and moves
    those edges into G'. The step count is at most |A -G B| |A| / (epsilon^2 |G|).

    Raises:
        EpsilonRangeError: If epsilon is outside of (0, 1)
        EmptyInputError: If G has no edges
    """
    epsilon = check_epsilon(epsilon)
    if not G:
        error_message = "Shen variation 2 needs at least one edge"
        raise EmptyInputError(error_message)
    A, B = G.left, G.right
    residual = set(G.sorted_edges)
    kept: set[tuple[int, int]] = set()
    centers: list[FieldElement] = []
    while len(residual) > epsilon * len(G):
        best: tuple[int, set[tuple[int, int]]] | None = None
        for star in range(len(A)):
            translate = {A[star] - b for b in B}
            accounted = {(i, j) for i, j in residual if A[i] - B[j] in translate}
            if best is None or len(accounted) > len(best[1]):
                best = star, accounted
        if best is None or not best[1]:
            break
        centers.append(A[best[0]])
        kept |= best[1]
        residual -= best[1]

    refined = G.restricted(kept)
    partial = len(partial_pairwise_set(G, SetOperation.DIFF))
    certificate = CoverCertificate(
        "shen-variation-2",
        G.to_json() | {"epsilon": str(epsilon)},
        centers=A.with_elements(centers),
        covered_subset=partial_pairwise_set(refined, SetOperation.DIFF),
        transland=-B,
        direction=CoverDirection.MINUS,
    )
    certificate.record("|G'|", len(refined))
    certificate.record("|centers|", len(centers))
    certificate.record("|A-G B|", partial)
    certificate.check("edges-kept", len(G) - len(refined), epsilon * len(G))
    certificate.check("center-count", len(centers) * epsilon**2 * len(G), partial * len(A))
    certificate.verify_cover()
    return refined, certificate
