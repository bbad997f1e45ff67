"""Additive and multiplicative energies.

Energies are computed as sums of squared multiplicities. The translate and intersection routes and the k-fold
enumeration are independent of that route so the tests can cross check them.
"""
from __future__ import annotations

from collections import Counter, defaultdict
from enum import StrEnum
from itertools import product
from typing import TYPE_CHECKING, NamedTuple

from common.budget import check_budget
from common.certificate import Certificate
from setcore.finite_set import FiniteSet
from setcore.operations import (
    InvalidCountError,
    SetOperation,
    TranslateMode,
    ZeroDilationError,
    combine,
    multiplicity,
    pairwise_set,
    partial_pairwise_set,
    translate_dilate,
)
from setcore.pair_graph import PairGraph

if TYPE_CHECKING:
    from fields.base import FieldElement


class TooSmallError(Exception):
    """Exception raised when a set has too few elements for an operation."""


class EnergyKind(StrEnum):
    ADDITIVE = "additive"
    MULTIPLICATIVE = "multiplicative"

    @property
    def operation(self) -> SetOperation:
        return SetOperation.SUM if self is EnergyKind.ADDITIVE else SetOperation.PROD


class KFoldEnergy(NamedTuple):
    total: int
    nontrivial: int


def energy(A: FiniteSet, B: FiniteSet, kind: EnergyKind) -> int:
    """Number of solutions of a + b = a' + b' (or ab = a'b') with a, a' in A and b, b' in B."""
    counts = Counter(combine(a, b, kind.operation) for a in A for b in B)
    return sum(count * count for count in counts.values())


def graph_energy(G: PairGraph, kind: EnergyKind) -> int:
    """Energy restricted to pairs that are both edges of G."""
    return sum(count * count for count in multiplicity(G, kind.operation).values())


def graph_energy_by_representations(G: PairGraph) -> int:
    """Additive energy of G as the sum over edges of the multiplicity of a + b."""
    counts = multiplicity(G, SetOperation.SUM)
    return sum(counts[a + b] for a, b in G.pairs())


def energy_by_translates(A: FiniteSet, B: FiniteSet) -> int:
    """E_+(A, B) as the sum over x in A + B of |A intersect (x - B)|^2."""
    negated = -B
    total = 0
    for x in pairwise_set(A, B, SetOperation.SUM):
        overlap = len(A & translate_dilate(negated, x, TranslateMode.TRANSLATE))
        total += overlap * overlap
    return total


def energy_by_intersections(A: FiniteSet, B: FiniteSet) -> int:
    """E_+(A, B) as the sum over pairs a, a' of |(B + a) intersect (B + a')|."""
    translates = [translate_dilate(B, a, TranslateMode.TRANSLATE).members for a in A]
    return sum(len(first & second) for first in translates for second in translates)


def kfold_energy(A: FiniteSet, k: int) -> KFoldEnergy:
    """Count solutions of a_1 + ... + a_k = b_1 + ... + b_k and the nontrivial ones among them.

    A solution is trivial when at least 2k - 1 of its 2k terms take a value that occurs at least twice among the 2k
    terms.

    Raises:
        InvalidCountError: If k < 2
        BudgetExceededError: If |A|^(2k) is over the enumeration budget
    """
    if k < 2:
        error_message = f"The k-fold energy needs k >= 2, got {k}"
        raise InvalidCountError(error_message)
    check_budget(len(A) ** (2 * k), f"{k}-fold energy of {len(A)} elements")
    by_sum: defaultdict[FieldElement, list[tuple[FieldElement, ...]]] = defaultdict(list)
    zero = A.field.zero()
    for terms in product(A.elements, repeat=k):
        total = zero
        for term in terms:
            total = total + term
        by_sum[total].append(terms)
    total_solutions = 0
    nontrivial = 0
    for tuples in by_sum.values():
        total_solutions += len(tuples) ** 2
        for left in tuples:
            for right in tuples:
                if not _is_trivial(left + right, k):
                    nontrivial += 1
    return KFoldEnergy(total_solutions, nontrivial)


def _is_trivial(terms: tuple[FieldElement, ...], k: int) -> bool:
    counts = Counter(terms)
    repeated = sum(1 for term in terms if counts[term] >= 2)
    return repeated >= 2 * k - 1


def ratio_of_differences(A: FiniteSet) -> FiniteSet:
    """Return R(A) = {(a - b) / (c - d) : a != b, c != d}.

    Raises:
        TooSmallError: If |A| < 2
    """
    if len(A) < 2:
        error_message = f"R(A) needs at least two elements, got {len(A)}"
        raise TooSmallError(error_message)
    differences = pairwise_set(A, A, SetOperation.DIFF).without_zero()
    return pairwise_set(differences, differences, SetOperation.RATIO)


def xi_energy(A: FiniteSet, xi: FieldElement) -> int:
    """Return E_+(A, xi A).

    Raises:
        ZeroDilationError: If xi is zero
    """
    if xi.is_zero:
        error_message = "xi_energy needs a nonzero dilation"
        raise ZeroDilationError(error_message)
    return energy(A, translate_dilate(A, xi, TranslateMode.DILATE), EnergyKind.ADDITIVE)


def energy_lower_bound(A: FiniteSet, kind: EnergyKind) -> tuple[int, int]:
    """Return (E(A) * |A op A|, |A|^4), the two sides of the Cauchy-Schwarz bound E(A) >= |A|^4 / |A op A|."""
    return energy(A, A, kind) * len(pairwise_set(A, A, kind.operation)), len(A) ** 4


def energy_identities_check(G: PairGraph) -> Certificate:
    """Compute E_+(A, B) and E_+(G) by independent routes and check that they agree.

    Also checks E_+(A, B) >= E_+(G) >= |G|^2 / |A +G B|.
    """
    A, B = G.left, G.right
    by_squares = energy(A, B, EnergyKind.ADDITIVE)
    by_translates = energy_by_translates(A, B)
    by_intersections = energy_by_intersections(A, B)
    restricted = graph_energy(G, EnergyKind.ADDITIVE)
    by_representations = graph_energy_by_representations(G)
    partial = len(partial_pairwise_set(G, SetOperation.SUM))

    certificate = Certificate("energy-identities", G.to_json())
    certificate.record("E(A,B)", by_squares)
    certificate.record("E(A,B) by translates", by_translates)
    certificate.record("E(A,B) by intersections", by_intersections)
    certificate.record("E(G)", restricted)
    certificate.record("E(G) by representations", by_representations)
    certificate.record("|A+G B|", partial)
    certificate.check("translates", abs(by_translates - by_squares), 0)
    certificate.check("intersections", abs(by_intersections - by_squares), 0)
    certificate.check("representations", abs(by_representations - restricted), 0)
    certificate.check("restriction", restricted, by_squares)
    certificate.check("cauchy-schwarz", len(G) ** 2, restricted * partial)
    return certificate


def sumset_lower_bound_check(A: FiniteSet, kind: EnergyKind) -> Certificate:
    """Check E(A) |A op A| >= |A|^4 for the additive or multiplicative energy."""
    lhs, rhs = energy_lower_bound(A, kind)
    certificate = Certificate("energy-cauchy-schwarz", {"field": A.field.tag, "A": A.to_json(), "kind": str(kind)})
    certificate.record("E(A)", energy(A, A, kind))
    certificate.record("|A op A|", len(pairwise_set(A, A, kind.operation)))
    certificate.check(f"{kind}-energy", rhs, lhs)
    return certificate
