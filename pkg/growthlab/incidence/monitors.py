"""Exact incidence bounds and the monitors for the asymptotic sum-product and incidence estimates.

The trivial incidence bound, the pair uniqueness of lines and the counting identities of Beck's dichotomy are hard
checks. The Szemerédi-Trotter, partial sum-product and Rudnev estimates only hold up to constants, so they are
monitors with suppressed constants.
"""
from __future__ import annotations

import logging
from collections import Counter
from enum import StrEnum
from fractions import Fraction
from itertools import combinations
from math import comb
from typing import TYPE_CHECKING

from common.certificate import Bound, Certificate
from common.exact import ceil_sqrt
from fields.prime import PrimeField
from growthlab.settings import MONITOR_CONSTANT
from incidence.geometry import lines_determined
from projective.space import ProjPoint
from setcore.energy import EnergyKind, energy
from setcore.operations import SetOperation, pairwise_set, partial_pairwise_set

if TYPE_CHECKING:
    from collections.abc import Iterable

    from fields.base import Field
    from incidence.geometry import AffinePoint, IncidenceInstance
    from setcore.finite_set import FiniteSet
    from setcore.pair_graph import PairGraph


class PreconditionFailedError(Exception):
    """Exception raised when a monitored estimate is asked for outside of the range where it applies."""


class PartialSumProductVersion(StrEnum):
    V1 = "v1"
    V2 = "v2"


# Exponents of |G|, |A|, |B|, |A -G B| and |A /G B|.
PARTIAL_SUMPRODUCT_EXPONENTS = {
    PartialSumProductVersion.V1: (55, 36, 37, 28, 8),
    PartialSumProductVersion.V2: (67, 44, 45, 28, 16),
}


def _log_violation(certificate: Certificate, bound: Bound) -> None:
    if not bound.holds:
        logging.getLogger("Monitor").getChild("Violation").info(
            "%s %s on %s with ratio %.4f", certificate.lemma, bound.name, certificate.instance, bound.ratio,
        )


def trivial_incidence_check(instance: IncidenceInstance) -> Certificate:
    """Check I(P, L) <= |P| + |P|^(1/2) |L| and its mirror image exactly, and that two lines share at most one point."""
    P, L, incidences = len(instance.points), len(instance.lines), instance.incidences
    certificate = Certificate("trivial-incidence", {"field": instance.field.tag, "|P|": P, "|L|": L})
    certificate.record("I(P,L)", incidences)
    certificate.add_bound(Bound.sqrt_form("points-side", incidences - P, Fraction(P), L))
    certificate.add_bound(Bound.sqrt_form("lines-side", incidences - L, Fraction(L), P))
    shared = Counter(pair for lines in instance.lines_through.values() for pair in combinations(lines, 2))
    certificate.record("max common points", max(shared.values(), default=0))
    certificate.check("line-pairs", max(shared.values(), default=0), 1)
    return certificate


def szemeredi_trotter_monitor(instance: IncidenceInstance, constant: int = MONITOR_CONSTANT) -> Certificate:
    """Monitor I(P, L) <= C (|P|^(2/3) |L|^(2/3) + |P| + |L|).

    With d = I - C (|P| + |L|) the bound reads d^3 <= C^3 |P|^2 |L|^2, which is compared exactly.
    """
    P, L, incidences = len(instance.points), len(instance.lines), instance.incidences
    certificate = Certificate("szemeredi-trotter", {"field": instance.field.tag, "|P|": P, "|L|": L, "C": constant})
    certificate.record("I(P,L)", incidences)
    deficit = incidences - constant * (P + L)
    bound = certificate.monitor("incidences", max(deficit, 0) ** 3, constant**3 * (P * L) ** 2)
    _log_violation(certificate, bound)
    return certificate


def beck_report(points: Iterable[AffinePoint]) -> Certificate:
    """Report both sides of Beck's dichotomy with their realized constants.

    Either one line holds |P| / C points, or L(P) has at least |P|^2 / C' lines. Every pair of points determines
    exactly one line, which is checked as the sum of binomial(mu(l), 2) over L(P).

    Raises:
        TooFewPointsError: If there are fewer than two points
    """
    members = sorted(set(points))
    determined = lines_determined(members)
    size = len(members)
    richest = determined.richest
    certificate = Certificate("beck", {"|P|": size})
    certificate.record("max mu", richest)
    certificate.record("|L(P)|", len(determined))
    certificate.record("C", Fraction(size, richest))
    certificate.record("C'", Fraction(size * size, len(determined)))
    pairs = sum(comb(mu, 2) for mu in determined.values())
    certificate.check("pairs-upper", pairs, comb(size, 2))
    certificate.check("pairs-lower", comb(size, 2), pairs)
    certificate.check("line-count", len(determined), comb(size, 2))
    return certificate


def _prime_field(field: Field, name: str) -> PrimeField:
    if not isinstance(field, PrimeField):
        error_message = f"{name} applies over F_p, got {field.tag}"
        raise PreconditionFailedError(error_message)
    return field


def partial_sumproduct_check(G: PairGraph, version: PartialSumProductVersion) -> Certificate:
    """Monitor |G|^55 <= |A|^36 |B|^37 |A -G B|^28 |A /G B|^8 (v1) or the v2 form with exponents 67, 44, 45, 28, 16.

    Ratios a / 0 count as one more value of A /G B.

    Raises:
        PreconditionFailedError: If the field is not F_p, or |A| > ceil(sqrt(p)) for v1, or |G| > ceil(sqrt(p)) |B|
            for v2
    """
    field = _prime_field(G.left.field, f"Partial sum-products {version}")
    root = ceil_sqrt(field.p)
    A, B = G.left, G.right
    if version is PartialSumProductVersion.V1 and len(A) > root:
        error_message = f"|A| = {len(A)} is over ceil(sqrt({field.p})) = {root}"
        raise PreconditionFailedError(error_message)
    if version is PartialSumProductVersion.V2 and len(G) > root * len(B):
        error_message = f"|G| = {len(G)} is over ceil(sqrt({field.p})) |B| = {root * len(B)}"
        raise PreconditionFailedError(error_message)
    differences = len(partial_pairwise_set(G, SetOperation.DIFF))
    ratios = len({ProjPoint((a, b)) for a, b in G.pairs()})
    g, a, b, d, r = PARTIAL_SUMPRODUCT_EXPONENTS[version]

    certificate = Certificate(f"partial-sumproduct-{version}", {"field": field.tag, "G": G.to_json()})
    certificate.record("|G|", len(G))
    certificate.record("|A|", len(A))
    certificate.record("|B|", len(B))
    certificate.record("|A -G B|", differences)
    certificate.record("|A /G B|", ratios)
    rhs = len(A) ** a * len(B) ** b * differences**d * ratios**r
    bound = certificate.monitor("partial-sumproduct", len(G) ** g, rhs)
    _log_violation(certificate, bound)
    return certificate


def rudnev_check(A: FiniteSet) -> Certificate:
    """Monitor E_x(A)^4 <= |A - A|^7 |A|^4.

    Raises:
        PreconditionFailedError: If the field is not F_p or |A| > ceil(sqrt(p))
    """
    field = _prime_field(A.field, "Rudnev's estimate")
    root = ceil_sqrt(field.p)
    if len(A) > root:
        error_message = f"|A| = {len(A)} is over ceil(sqrt({field.p})) = {root}"
        raise PreconditionFailedError(error_message)
    multiplicative = energy(A, A, EnergyKind.MULTIPLICATIVE)
    differences = len(pairwise_set(A, A, SetOperation.DIFF))

    certificate = Certificate("rudnev", {"field": field.tag, "A": A.to_json()})
    certificate.record("E_x(A)", multiplicative)
    certificate.record("|A-A|", differences)
    bound = certificate.monitor("energy", multiplicative**4, differences**7 * len(A) ** 4)
    _log_violation(certificate, bound)
    return certificate
