"""Corollaries of the psi injection: a BSG extraction and two covering statements, composed step by step.

Each run keeps the certificates of the steps it composes. Their quantities and bounds are copied into the corollary
certificate under a prefix, so one certificate holds the whole chain.
"""
from __future__ import annotations

from enum import StrEnum
from fractions import Fraction
from typing import TYPE_CHECKING

from calculus.bsg import bsg_dense
from calculus.certificates import ExtractionCertificate
from calculus.covers import cover_variation1, cover_variation2
from common.budget import check_budget
from common.certificate import Certificate
from common.exact import check_epsilon
from expander.images import affine_image, f_image
from expander.psi import psi_injection_engine
from fields.prime import PrimeField
from growthlab.settings import COROLLARY_LIMIT, DEFAULT_EPSILON, ENERGY_COROLLARY_EPSILON
from incidence.monitors import PreconditionFailedError
from setcore.energy import ratio_of_differences, xi_energy
from setcore.operations import SetOperation, pairwise_set, partial_pairwise_set
from setcore.pair_graph import PairGraph

if TYPE_CHECKING:
    from fields.base import FieldElement
    from setcore.finite_set import FiniteSet


class DegenerateElementsError(Exception):
    """Exception raised when a set contains 0 or -1, which make A(A+1) degenerate."""


class Corollary(StrEnum):
    HORRIFIC = "horrific"
    ENERGY = "energy"
    ENERGY_PRIME = "energyprime"


def _check_elements(A: FiniteSet) -> None:
    check_budget(len(A), "corollary pipeline", COROLLARY_LIMIT)
    minus_one = -A.field.one()
    for element in A:
        if element.is_zero or element == minus_one:
            error_message = f"{A} contains {element}"
            raise DegenerateElementsError(error_message)


def corollary_pipeline(
    A: FiniteSet,
    which: Corollary,
    *,
    epsilon: Fraction | None = None,
    affine: tuple[FieldElement, FieldElement] | None = None,
) -> ExtractionCertificate:
    """Run one corollary on A as its proof composes the psi injection with the calculus lemmas.

    For the energy corollary, affine = (x, y) runs the injection on (A - y) / x and maps G back to A.

    Raises:
        DegenerateElementsError: If 0 or -1 is in A, or in (A - y) / x
        BudgetExceededError: If |A| is over COROLLARY_LIMIT
        ZeroDilationError: If x is zero
    """
    _check_elements(A)
    match which:
        case Corollary.HORRIFIC:
            return _horrific(A, DEFAULT_EPSILON if epsilon is None else epsilon)
        case Corollary.ENERGY:
            return _energy(A, ENERGY_COROLLARY_EPSILON if epsilon is None else epsilon, affine)
        case Corollary.ENERGY_PRIME:
            return _energy_prime(A, DEFAULT_EPSILON if epsilon is None else epsilon)


def _ratio_bound(certificate: Certificate, A: FiniteSet, shifted: int) -> int:
    """Check the multiplicative Ruzsa triangle |A/A| |A| <= |A(A+1)|^2 and return |A/A|."""
    ratios = len(pairwise_set(A, A, SetOperation.RATIO))
    certificate.record("|A/A|", ratios)
    certificate.check("ratio-triangle", ratios * len(A), shifted**2)
    return ratios


def _horrific(A: FiniteSet, epsilon: Fraction) -> ExtractionCertificate:
    engine = psi_injection_engine(A, A, epsilon)
    extraction = bsg_dense(engine.G, epsilon)
    subset = extraction.subset
    shifted = len(f_image(A))
    differences = extraction.quantities["|A'-A'|"]

    certificate = ExtractionCertificate(
        "corollary-horrific",
        {"field": A.field.tag, "A": A.to_json(), "epsilon": str(epsilon)},
        subset=subset,
    )
    certificate.record("|A|", len(A))
    certificate.record("|G|", len(engine.G))
    certificate.record("|A-G A|", engine.certificate.quantities["|A-G B|"])
    certificate.record("|A'|", len(subset))
    certificate.record("|A'-A'|", differences)
    certificate.record("|A(A+1)|", shifted)
    _ratio_bound(certificate, A, shifted)
    certificate.absorb("psi", engine.certificate)
    certificate.absorb("bsg", extraction)
    certificate.check("half-kept", len(A), 2 * len(subset))
    certificate.monitor("difference-set", differences * len(A) ** 7, shifted**8)
    return certificate


def _energy(
    A: FiniteSet,
    epsilon: Fraction,
    affine: tuple[FieldElement, FieldElement] | None,
) -> ExtractionCertificate:
    epsilon = check_epsilon(epsilon, Fraction(1, 16))
    x, y = affine or (A.field.one(), A.field.zero())
    rescaled = affine_image(A, x, y)
    _check_elements(rescaled)
    inner = epsilon * epsilon / 4
    engine = psi_injection_engine(rescaled, rescaled, inner)
    G = PairGraph.from_pairs(A, A, ((x * a + y, x * b + y) for a, b in engine.G.pairs()))
    plus, minus = cover_variation1(G, inner)
    shifted = len(f_image(rescaled))
    ratios = len(pairwise_set(rescaled, rescaled, SetOperation.RATIO))
    covered = plus.covered_subset

    certificate = ExtractionCertificate(
        "corollary-energy",
        {"field": A.field.tag, "A": A.to_json(), "epsilon": str(epsilon), "x": str(x), "y": str(y)},
        subset=covered,
    )
    certificate.record("|C(C+1)|", shifted)
    certificate.record("|C/C|", ratios)
    certificate.record("|G|", len(G))
    certificate.record("|A-G A|", len(partial_pairwise_set(G, SetOperation.DIFF)))
    certificate.record("|A-G A| rescaled", engine.certificate.quantities["|A-G B|"])
    certificate.record("translates of B", plus.quantities["|centers|"])
    certificate.record("translates of -B", minus.quantities["|centers|"])
    certificate.absorb("psi", engine.certificate)
    certificate.absorb("cover +B", plus)
    certificate.absorb("cover -B", minus)
    certificate.check(
        "partial-difference-preserved",
        certificate.quantities["|A-G A|"],
        certificate.quantities["|A-G A| rescaled"],
    )
    for name, cover in (("covered +B", plus), ("covered -B", minus)):
        certificate.check(name, (1 - epsilon) * len(A), len(cover.covered_subset))
    for name, cover in (("translates +B", plus), ("translates -B", minus)):
        certificate.monitor(name, cover.quantities["|centers|"] * len(A) ** 3, shifted**2 * ratios)
    return certificate


def _energy_prime(A: FiniteSet, epsilon: Fraction) -> ExtractionCertificate:
    epsilon = check_epsilon(epsilon, Fraction(1, 2))
    engine = psi_injection_engine(A, A, epsilon / 2)
    refined, cover = cover_variation2(engine.G, epsilon / 2)
    shifted = len(f_image(A))

    certificate = ExtractionCertificate(
        "corollary-energyprime",
        {"field": A.field.tag, "A": A.to_json(), "epsilon": str(epsilon)},
        subset=A,
    )
    certificate.record("|G'|", len(engine.G))
    certificate.record("|G|", len(refined))
    certificate.record("|A-G A|", len(cover.covered_subset))
    certificate.record("translates", cover.quantities["|centers|"])
    certificate.record("|A(A+1)|", shifted)
    ratios = _ratio_bound(certificate, A, shifted)
    certificate.absorb("psi", engine.certificate)
    certificate.absorb("cover", cover)
    certificate.check("graph-size", (1 - epsilon) * len(A) ** 2, len(refined))
    certificate.monitor("translates", cover.quantities["|centers|"] * len(A) ** 3, shifted**2 * ratios)
    return certificate


def ratio_split_check(A: FiniteSet) -> Certificate:
    """Split on whether R(A) covers F_p and count E_+(A, xi A) for the chosen xi.

    If R(A) misses a nonzero xi, only trivial solutions remain and E_+(A, xi A) = |A|^2. Otherwise xi = 1 and the
    energy is compared with |A|^4 + p |A|^2.

    Raises:
        PreconditionFailedError: If the field is not F_p
        TooSmallError: If |A| < 2
    """
    field = A.field
    if not isinstance(field, PrimeField):
        error_message = f"The ratio split is stated over F_p, got {field.tag}"
        raise PreconditionFailedError(error_message)
    ratios = ratio_of_differences(A)
    missing = next((x for x in field.elements() if not x.is_zero and x not in ratios), None)
    xi = missing if missing is not None else field.one()
    counted = xi_energy(A, xi)

    certificate = Certificate("ratio-split", {"field": field.tag, "A": A.to_json()})
    certificate.record("|R(A)|", len(ratios))
    certificate.record("R(A) = F_p^*", missing is None)
    certificate.record("xi", xi)
    certificate.record("E(A, xi A)", counted)
    if missing is not None:
        certificate.check("trivial-upper", counted, len(A) ** 2)
        certificate.check("trivial-lower", len(A) ** 2, counted)
    else:
        certificate.check("energy", counted, len(A) ** 4 + field.p * len(A) ** 2)
    return certificate
