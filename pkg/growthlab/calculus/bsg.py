"""Balog-Szemerédi-Gowers type extraction on partial sumsets.

Joint degrees are read from a table computed once per graph. The sparse and sum-product variants share the
refinement step that pigeonholes a right vertex b and keeps the pairs of high joint degree.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import TYPE_CHECKING

from calculus.certificates import ExtractionCertificate
from common.certificate import Bound
from common.exact import check_epsilon, sqrt_bounds, within_sqrt
from growthlab.settings import DEFAULT_EPSILON
from setcore.energy import EnergyKind, energy
from setcore.finite_set import NotInSetError
from setcore.operations import SetOperation, pairwise_set, partial_pairwise_set

if TYPE_CHECKING:
    from fields.base import FieldElement
    from setcore.pair_graph import PairGraph


class NotInLeftSetError(Exception):
    """Exception raised when a joint degree is asked for an element outside of the left set."""


class DensityTooLowError(Exception):
    """Exception raised when a graph is below the density a dense procedure needs."""


class NoWitnessError(Exception):
    """Exception raised when no right vertex satisfies the pigeonhole condition of the refinement step."""


class ZeroInRightError(Exception):
    """Exception raised when the right set contains zero but ratios are needed."""


class JointDegrees:
    """Table of joint degrees |B_G(a_i) intersect B_G(a_j)| indexed by left indices."""

    def __init__(self, G: PairGraph) -> None:
        self.G = G

    @cached_property
    def table(self) -> tuple[tuple[int, ...], ...]:
        neighbours = [self.G.right_neighbours(i) for i in range(len(self.G.left))]
        return tuple(tuple(len(first & second) for second in neighbours) for first in neighbours)

    def __call__(self, i: int, j: int) -> int:
        return self.table[i][j]


def joint_degree(G: PairGraph, a1: FieldElement, a2: FieldElement) -> int:
    """Return |B_G(a1) intersect B_G(a2)|.

    Raises:
        NotInLeftSetError: If a1 or a2 is not in the left set of G
    """
    try:
        i, j = G.left.index(a1), G.left.index(a2)
    except NotInSetError as error:
        raise NotInLeftSetError(str(error)) from error
    return len(G.right_neighbours(i) & G.right_neighbours(j))


def high_degree_indices(G: PairGraph, epsilon: Fraction) -> list[int]:
    """Left indices whose degree is at least (1 - sqrt(epsilon)) |B|."""
    size = len(G.right)
    return [i for i in range(len(G.left)) if within_sqrt(size - G.degree(i), epsilon, size)]


def check_density(G: PairGraph, epsilon: Fraction) -> None:
    """Raise DensityTooLowError unless |G| >= (1 - epsilon) |A| |B|."""
    if len(G) < (1 - epsilon) * len(G.left) * len(G.right):
        error_message = f"|G| = {len(G)} is below (1 - {epsilon}) * {len(G.left)} * {len(G.right)}"
        raise DensityTooLowError(error_message)


def bsg_dense(G: PairGraph, epsilon: Fraction = DEFAULT_EPSILON) -> ExtractionCertificate:
    """Keep the left vertices of degree at least (1 - sqrt(epsilon)) |B|.

    The certificate checks |A'| >= (1 - sqrt(epsilon)) |A|, that every pair in A' has joint degree at least
    (1 - 2 sqrt(epsilon)) |B|, and |A' - A'| * K <= |A -G B|^2 with K the least joint degree over A'.

    Raises:
        EpsilonRangeError: If epsilon is outside of (0, 1/4)
        DensityTooLowError: If |G| < (1 - epsilon) |A| |B|
    """
    epsilon = check_epsilon(epsilon, Fraction(1, 4))
    check_density(G, epsilon)
    A, B = G.left, G.right
    kept = high_degree_indices(G, epsilon)
    subset = A.subset(kept)
    degrees = JointDegrees(G)
    least_joint = min((degrees(i, j) for i in kept for j in kept), default=len(B))
    differences = len(pairwise_set(subset, subset, SetOperation.DIFF)) if kept else 0
    partial = len(partial_pairwise_set(G, SetOperation.DIFF))

    certificate = ExtractionCertificate("bsg-dense", G.to_json() | {"epsilon": str(epsilon)}, subset=subset)
    certificate.record("|A'|", len(subset))
    certificate.record("K", least_joint)
    certificate.record("|A'-A'|", differences)
    certificate.record("|A-G B|", partial)
    certificate.add_bound(Bound.sqrt_form("subset-size", len(A) - len(subset), epsilon, len(A)))
    certificate.add_bound(Bound.sqrt_form("joint-degree", len(B) - least_joint, 4 * epsilon, len(B)))
    certificate.check("difference-set", differences * least_joint, partial**2)
    _, sqrt_high = sqrt_bounds(epsilon)
    certificate.check("claimed-difference-set", differences * (1 - 2 * sqrt_high) * len(B), partial**2)
    return certificate


@dataclass
class Refinement:
    """Outcome of the pigeonhole step shared by the sparse extractions.

    witness is the index of b, left is the index list of A' = A_G(b), pairs is the set H of index pairs of
    high joint degree and refined is the index list of the elements of A' with H-degree at least
    (1 - sqrt(epsilon)) |A'| inside A'.
    """

    witness: int
    left: list[int]
    pairs: frozenset[tuple[int, int]]
    bad_pairs: int
    refined: list[int]


def refine(G: PairGraph, epsilon: Fraction, degrees: JointDegrees) -> Refinement:
    """Pick the first b whose neighbourhood carries enough high joint degree pairs.

    Raises:
        NoWitnessError: If no b in B satisfies the pigeonhole condition
    """
    A, B = G.left, G.right
    edge_count = len(G)
    threshold_lhs = 2 * len(A) ** 2 * len(B)
    pairs = frozenset(
        (i, j)
        for i in range(len(A))
        for j in range(len(A))
        if degrees(i, j) * threshold_lhs >= epsilon * edge_count**2
    )
    target = Fraction(edge_count**2, 2 * len(B) ** 2)
    for b in range(len(B)):
        neighbourhood = sorted(G.left_neighbours(b))
        bad = sum(1 for i in neighbourhood for j in neighbourhood if (i, j) not in pairs)
        if len(neighbourhood) ** 2 - bad / epsilon >= target:
            inside = set(neighbourhood)
            refined = [
                i
                for i in neighbourhood
                if within_sqrt(
                    len(neighbourhood) - sum(1 for j in inside if (i, j) in pairs),
                    epsilon,
                    len(neighbourhood),
                )
            ]
            return Refinement(b, neighbourhood, pairs, bad, refined)
    error_message = f"No b in {B} satisfies the pigeonhole condition for epsilon = {epsilon}"
    raise NoWitnessError(error_message)


def least_path_weight(
    indices: list[int],
    pairs: frozenset[tuple[int, int]],
    degrees: JointDegrees,
    middle: range | list[int],
) -> int:
    """Least over (a1, a2) of the sum over a' with (a1, a') and (a', a2) in H of jd(a1, a') * jd(a', a2)."""
    least: int | None = None
    for i in indices:
        for j in indices:
            weight = sum(
                degrees(i, m) * degrees(m, j) for m in middle if (i, m) in pairs and (m, j) in pairs
            )
            least = weight if least is None else min(least, weight)
    return least or 0


def _record_refinement(
    certificate: ExtractionCertificate,
    G: PairGraph,
    refinement: Refinement,
    eps: Fraction,
) -> None:
    witness_size = len(refinement.left)
    edges, right = len(G), len(G.right)
    certificate.record("b", str(G.right[refinement.witness]))
    certificate.record("|H|", len(refinement.pairs))
    certificate.record("|A'|", witness_size)
    certificate.record("|A''|", len(refinement.refined))
    certificate.record("A''", G.left.subset(refinement.refined).to_json())
    certificate.check("witness-size", edges**2, 2 * witness_size**2 * right**2)
    certificate.check("subset-size", edges, 2 * witness_size * right)
    certificate.check("bad-pairs", refinement.bad_pairs, eps * witness_size**2)
    certificate.add_bound(
        Bound.sqrt_form("refined-size", witness_size - len(refinement.refined), eps, witness_size),
    )


def _claim_constant(epsilon: Fraction) -> Fraction:
    """Explicit constant 8 / ((1 - 2 sqrt(epsilon)) epsilon^2) of the difference set claims, or 0 if vacuous."""
    _, sqrt_high = sqrt_bounds(epsilon)
    if 2 * sqrt_high >= 1:
        return Fraction(0)
    return 8 / ((1 - 2 * sqrt_high) * epsilon**2)


def bsg_sparse(G: PairGraph, epsilon: Fraction = DEFAULT_EPSILON) -> ExtractionCertificate:
    """Refine G to A' = A_G(b) and the high H-degree part A'' of A'.

    Checks 2 |A'|^2 |B|^2 >= |G|^2 and |A'' - A''| * M <= |A -G B|^4 where M is the least number of weighted
    H-paths a1 - a' - a2 between elements of A''. The claimed bound against |A|^4 |B|^3 |A -G B|^4 / |G|^5 is
    recorded as a monitor with its explicit constant.

    Raises:
        EpsilonRangeError: If epsilon is outside of (0, 1)
        NoWitnessError: If G is empty
    """
    epsilon = check_epsilon(epsilon)
    if not G:
        error_message = "The sparse extraction needs at least one edge"
        raise NoWitnessError(error_message)
    A, B = G.left, G.right
    degrees = JointDegrees(G)
    refinement = refine(G, epsilon, degrees)
    witness_set = A.subset(refinement.left)
    refined = A.subset(refinement.refined)
    differences = len(pairwise_set(refined, refined, SetOperation.DIFF)) if refined else 0
    partial = len(partial_pairwise_set(G, SetOperation.DIFF))
    paths = least_path_weight(refinement.refined, refinement.pairs, degrees, range(len(A)))

    certificate = ExtractionCertificate("bsg-sparse", G.to_json() | {"epsilon": str(epsilon)}, subset=witness_set)
    _record_refinement(certificate, G, refinement, epsilon)
    certificate.record("M", paths)
    certificate.record("|A''-A''|", differences)
    certificate.record("|A-G B|", partial)
    certificate.check("difference-set", differences * paths, partial**4)
    constant = _claim_constant(epsilon)
    certificate.record("C", constant)
    certificate.monitor(
        "claimed-difference-set",
        differences * len(G) ** 5,
        constant * len(A) ** 4 * len(B) ** 3 * partial**4,
        suppressed=False,
    )
    return certificate


def bsg_sumproduct(G: PairGraph, epsilon: Fraction = DEFAULT_EPSILON) -> ExtractionCertificate:
    """Extract A' with small difference set, small ratio set and large multiplicative energy at once.

    A' is the refined set of the sparse extraction, which is the high degree set of both the additive and the
    multiplicative dense step on H. The exact checks are the additive and multiplicative path bounds and
    E_x(A') * |A' /H' A'| >= |H'|^2 over pairs of H' = H restricted to A' with nonzero second entry.

    Raises:
        ZeroInRightError: If 0 is in B
    """
    epsilon = check_epsilon(epsilon)
    A, B = G.left, G.right
    if any(b.is_zero for b in B):
        error_message = f"Ratios over G need 0 outside of {B}"
        raise ZeroInRightError(error_message)
    if not G:
        error_message = "The sum-product extraction needs at least one edge"
        raise NoWitnessError(error_message)
    degrees = JointDegrees(G)
    refinement = refine(G, epsilon, degrees)
    subset = A.subset(refinement.refined)
    nonzero = [i for i in refinement.refined if not A[i].is_zero]
    inside = set(refinement.refined)
    restricted = [(i, j) for i, j in refinement.pairs if i in inside and j in inside and not A[j].is_zero]

    differences = len(pairwise_set(subset, subset, SetOperation.DIFF)) if subset else 0
    ratios = len(pairwise_set(subset, subset, SetOperation.RATIO)) if nonzero else 0
    nonzero_ratios = len({A[i] / A[j] for i in nonzero for j in nonzero})
    ratios_over_h = len({A[i] / A[j] for i, j in restricted})
    product_energy = energy(subset, subset, EnergyKind.MULTIPLICATIVE) if subset else 0
    partial_difference = len(partial_pairwise_set(G, SetOperation.DIFF))
    partial_ratio = len(partial_pairwise_set(G, SetOperation.RATIO))
    additive_paths = least_path_weight(refinement.refined, refinement.pairs, degrees, range(len(A)))
    nonzero_middle = [m for m in range(len(A)) if not A[m].is_zero]
    multiplicative_paths = least_path_weight(nonzero, refinement.pairs, degrees, nonzero_middle)

    certificate = ExtractionCertificate("bsg-sumproduct", G.to_json() | {"epsilon": str(epsilon)}, subset=subset)
    _record_refinement(certificate, G, refinement, epsilon)
    certificate.record("|A'-A'|", differences)
    certificate.record("|A'/A'|", ratios)
    certificate.record("E_x(A')", product_energy)
    certificate.record("|A-G B|", partial_difference)
    certificate.record("|A/G B|", partial_ratio)
    certificate.record("|H'|", len(restricted))
    certificate.check("difference-set", differences * additive_paths, partial_difference**4)
    certificate.check("ratio-set", nonzero_ratios * multiplicative_paths, partial_ratio**4)
    certificate.check("energy", len(restricted) ** 2, product_energy * ratios_over_h)

    constant = _claim_constant(epsilon)
    certificate.record("C", constant)
    scale = len(A) ** 4 * len(B) ** 3
    edges = len(G)
    certificate.monitor(
        "claimed-difference-set", differences * edges**5, constant * scale * partial_difference**4, suppressed=False,
    )
    certificate.monitor(
        "claimed-ratio-set", ratios * edges**5, constant * scale * partial_ratio**4, suppressed=False,
    )
    certificate.monitor(
        "claimed-energy",
        edges**2 * len(subset) ** 4,
        2 / epsilon * product_energy * partial_ratio**2 * len(A) ** 2 * len(B),
        suppressed=False,
    )
    logging.getLogger("Calculus").getChild("BSG").debug("Sum-product extraction kept %s of %s", len(subset), len(A))
    return certificate
