"""Cross ratio energies and their bound through point-plane incidences in PF^3.

The three variable energy counts pairs of triples with X(infinity, a_1, a_2, a_3) = X(infinity, b_1, b_2, b_3),
the four variable energy pairs of quadruples with X(a_1, a_2, a_3, a_4) = X(b_1, b_2, b_3, b_4). A triple is
admissible unless all three entries agree, a quadruple when its first three entries are distinct. Values are points
of PF^1, so infinity is a value like any other.

A transformation tau with N(tau) points of A mapped into A becomes the point psi(tau) of PF^3 lying on the plane of
every pair (a, tau(a)). Grouping solutions by the unique tau sending one tuple to the other gives
E <= sum N(tau)^3 over affine tau and E <= sum N(tau)^4 over tau in PGL_2.
"""
from __future__ import annotations

from collections import Counter
from enum import StrEnum
from itertools import combinations, permutations, product
from math import comb
from typing import TYPE_CHECKING

from common.budget import check_budget
from common.certificate import Certificate
from expander.images import h_multiplicities
from growthlab.settings import BRIDGE_LIMIT, CROSSRATIO_ENERGY_LIMIT, ENERGY_ORACLE_LIMIT
from projective.crossratio import cross_ratio, line_point, on_quadric, plane_of_pair, psi_embed, tau_abc
from projective.space import ProjMap, ProjPoint

if TYPE_CHECKING:
    from collections.abc import Iterable

    from fields.base import FieldElement
    from projective.space import ProjHyperplane
    from setcore.finite_set import FiniteSet


class EnergyVariant(StrEnum):
    THREE = "three"
    FOUR = "four"

    @property
    def arity(self) -> int:
        return 3 if self is EnergyVariant.THREE else 4


def pinned_value(a1: FieldElement, a2: FieldElement, a3: FieldElement) -> ProjPoint:
    """Return X(infinity, a_1, a_2, a_3) = [a_2 - a_3 : a_1 - a_2].

    Raises:
        ZeroVectorError: If a_1 = a_2 = a_3
    """
    return ProjPoint((a2 - a3, a1 - a2))


def pinned_multiplicities(A: FiniteSet) -> Counter[ProjPoint]:
    """Number of admissible triples taking each value of X(infinity, ., ., .)."""
    return Counter(pinned_value(*triple) for triple in product(A, repeat=3) if len(set(triple)) > 1)


def multiplicities(A: FiniteSet, variant: EnergyVariant) -> Counter[ProjPoint]:
    if variant is EnergyVariant.THREE:
        return pinned_multiplicities(A)
    return h_multiplicities(A)


def crossratio_energy(A: FiniteSet, variant: EnergyVariant) -> int:
    """Return the energy as the sum of squared multiplicities.

    Raises:
        BudgetExceededError: If |A| is over CROSSRATIO_ENERGY_LIMIT
    """
    check_budget(len(A), f"{variant}-variable cross ratio energy", CROSSRATIO_ENERGY_LIMIT)
    return sum(count * count for count in multiplicities(A, variant).values())


def _admissible_values(A: FiniteSet, variant: EnergyVariant) -> list[ProjPoint]:
    if variant is EnergyVariant.THREE:
        return [pinned_value(*triple) for triple in product(A, repeat=3) if len(set(triple)) > 1]
    points = [line_point(A.field, a) for a in A]
    return [cross_ratio(a, b, c, d) for a, b, c in permutations(points, 3) for d in points]


def crossratio_energy_brute_force(A: FiniteSet, variant: EnergyVariant) -> int:
    """Count the solutions by comparing every pair of admissible tuples.

    Raises:
        BudgetExceededError: If |A|^6 or |A|^8 is over ENERGY_ORACLE_LIMIT
    """
    check_budget(len(A) ** (2 * variant.arity), f"{variant}-variable energy oracle", ENERGY_ORACLE_LIMIT)
    values = _admissible_values(A, variant)
    return sum(1 for left in values for right in values if left == right)


def crossratio_energy_check(A: FiniteSet, variant: EnergyVariant) -> Certificate:
    """Certify the energy and the Cauchy-Schwarz bound E |values| >= (number of admissible tuples)^2.

    The brute force count is added when it fits in ENERGY_ORACLE_LIMIT.

    Raises:
        BudgetExceededError: If |A| is over CROSSRATIO_ENERGY_LIMIT
    """
    counted = crossratio_energy(A, variant)
    counts = multiplicities(A, variant)
    tuples = sum(counts.values())

    certificate = Certificate(f"crossratio-energy-{variant}", {"field": A.field.tag, "A": A.to_json()})
    certificate.record("E", counted)
    certificate.record("admissible tuples", tuples)
    certificate.record("distinct values", len(counts))
    certificate.check("cauchy-schwarz", tuples * tuples, counted * len(counts))
    if len(A) ** (2 * variant.arity) <= ENERGY_ORACLE_LIMIT:
        brute = crossratio_energy_brute_force(A, variant)
        certificate.record("E brute force", brute)
        certificate.check("routes-upper", counted, brute)
        certificate.check("routes-lower", brute, counted)
    return certificate


def graph_size(A: FiniteSet, tau: ProjMap) -> int:
    """Return N(tau), the number of a in A with tau(a) in A."""
    points = {line_point(A.field, a) for a in A}
    return sum(1 for point in points if tau(point) in points)


def _pair_planes(A: FiniteSet) -> list[ProjHyperplane]:
    points = [line_point(A.field, a) for a in A]
    return [plane_of_pair(a, b) for a, b in product(points, repeat=2)]


def plane_count(A: FiniteSet, tau: ProjMap, planes: Iterable[ProjHyperplane] | None = None) -> int:
    """Return m(psi(tau)), the number of planes of pairs (a, b) in A x A through psi(tau)."""
    point = psi_embed(tau)
    return sum(1 for plane in (_pair_planes(A) if planes is None else planes) if plane.contains(point))


def affine_maps(A: FiniteSet) -> set[ProjMap]:
    """Maps x -> lambda x + mu sending two distinct points of A into A, the affine tau with N(tau) >= 2."""
    field = A.field
    zero, one = field.zero(), field.one()
    maps: set[ProjMap] = set()
    for a1, a2 in combinations(A, 2):
        for b1, b2 in permutations(A, 2):
            slope = (b1 - b2) / (a1 - a2)
            maps.add(ProjMap(((slope, b1 - slope * a1), (zero, one))))
    return maps


def projective_maps(A: FiniteSet) -> set[ProjMap]:
    """Maps sending three distinct points of A into A, the tau in PGL_2 with N(tau) >= 3."""
    points = [line_point(A.field, a) for a in A]
    check_budget(comb(len(points), 3) * len(points) ** 3, "frame maps of PF^1")
    targets = {triple: tau_abc(*triple).inverse() for triple in permutations(points, 3)}
    return {targets[image] @ tau_abc(*source) for source in combinations(points, 3) for image in targets}


def energy_incidence_bridge(A: FiniteSet) -> Certificate:
    """Build T, the points psi(T) and the planes of pairs, then certify N(tau) = m(psi(tau)) and both energy bounds.

    Raises:
        BudgetExceededError: If |A| is over BRIDGE_LIMIT
    """
    check_budget(len(A), "energy incidence bridge", BRIDGE_LIMIT)
    field = A.field
    planes = _pair_planes(A)
    infinity = line_point(field, None)
    pinned_plane = plane_of_pair(infinity, infinity)

    certificate = Certificate("energy-incidence-bridge", {"field": field.tag, "A": A.to_json()})
    for variant, maps, power in (
        (EnergyVariant.THREE, affine_maps(A), 3),
        (EnergyVariant.FOUR, projective_maps(A), 4),
    ):
        sizes = {tau: graph_size(A, tau) for tau in maps}
        incidences = {tau: plane_count(A, tau, planes) for tau in maps}
        mismatches = sum(1 for tau in maps if sizes[tau] != incidences[tau])
        on_quadric_count = sum(1 for tau in maps if on_quadric(psi_embed(tau)))
        counted = crossratio_energy(A, variant)
        total = sum(m**power for m in incidences.values())
        certificate.record(f"|T| {variant}", len(maps))
        certificate.record(f"E {variant}", counted)
        certificate.record(f"sum m^{power}", total)
        certificate.check(f"pointwise {variant}", mismatches, 0)
        certificate.check(f"off-quadric {variant}", on_quadric_count, 0)
        certificate.check(f"energy {variant}", counted, total)
        if variant is EnergyVariant.THREE:
            off_plane = sum(1 for tau in maps if not pinned_plane.contains(psi_embed(tau)))
            certificate.check("fixes-infinity", off_plane, 0)
    return certificate
