"""The injection behind the partial difference bound |A -G B| << |A(B+1)| |B(A+1)| |A/B| / (|A| |B|).

X is the set of popular ratios x in A/B with |A cap xB| |A/B| >= epsilon |A| |B|, and G keeps the pairs whose
ratio is popular. Every difference xi of G gets the least representing edge (a_xi, b_xi), and
psi(xi, c, d) = (a_xi (1 + d), b_xi (1 + c)) is injective on S = {(xi, c, d) : c b_xi = d a_xi}.
"""
from __future__ import annotations

import logging
from collections import Counter, defaultdict
from fractions import Fraction
from typing import TYPE_CHECKING, NamedTuple

from common.certificate import Certificate
from common.exact import check_epsilon
from growthlab.settings import PSI_EPSILON
from setcore.operations import SetOperation, TranslateMode, pairwise_set, translate_dilate
from setcore.pair_graph import PairGraph

if TYPE_CHECKING:
    from fields.base import FieldElement
    from setcore.finite_set import FiniteSet


class ZeroElementError(Exception):
    """Exception raised when a set that has to avoid zero contains it."""


class PsiInjection(NamedTuple):
    G: PairGraph
    certificate: Certificate


def _ratio_classes(A: FiniteSet, B: FiniteSet) -> dict[FieldElement, list[tuple[int, int]]]:
    classes: dict[FieldElement, list[tuple[int, int]]] = defaultdict(list)
    for i, a in enumerate(A):
        for j, b in enumerate(B):
            classes[a / b].append((i, j))
    return classes


def psi_injection_engine(A: FiniteSet, B: FiniteSet, epsilon: Fraction = PSI_EPSILON) -> PsiInjection:
    """Build G from the popular ratios and verify that psi is injective on S by scanning all of S.

    Raises:
        ZeroElementError: If 0 is in A or B
        EpsilonRangeError: If epsilon is outside of (0, 1)
    """
    epsilon = check_epsilon(epsilon)
    for name, members in (("A", A), ("B", B)):
        if any(element.is_zero for element in members):
            error_message = f"{name} = {members} contains zero"
            raise ZeroElementError(error_message)

    classes = _ratio_classes(A, B)
    ratio_count = len(classes)
    threshold = epsilon * len(A) * len(B)
    popular = {x: edges for x, edges in classes.items() if len(edges) * ratio_count >= threshold}
    G = PairGraph(A, B, (edge for edges in popular.values() for edge in edges))

    representatives: dict[FieldElement, tuple[FieldElement, FieldElement]] = {}
    for a, b in G.pairs():
        representatives.setdefault(a - b, (a, b))

    images: Counter[tuple[FieldElement, FieldElement]] = Counter()
    for a_xi, b_xi in representatives.values():
        for i, j in classes[a_xi / b_xi]:
            c, d = A[i], B[j]
            images[a_xi * (1 + d), b_xi * (1 + c)] += 1
    s_size = sum(images.values())
    collisions = s_size - len(images)
    shifted_products = (
        len(pairwise_set(A, translate_dilate(B, B.field.one(), TranslateMode.TRANSLATE), SetOperation.PROD)),
        len(pairwise_set(B, translate_dilate(A, A.field.one(), TranslateMode.TRANSLATE), SetOperation.PROD)),
    )
    differences = len(representatives)

    certificate = Certificate(
        "psi-injection",
        {"field": A.field.tag, "A": A.to_json(), "B": B.to_json(), "epsilon": str(epsilon)},
    )
    certificate.record("|A/B|", ratio_count)
    certificate.record("|X|", len(popular))
    certificate.record("|G|", len(G))
    certificate.record("|A-G B|", differences)
    certificate.record("|S|", s_size)
    certificate.record("|A(B+1)|", shifted_products[0])
    certificate.record("|B(A+1)|", shifted_products[1])
    certificate.check("psi-injective", collisions, 0)
    certificate.check("graph-density", (1 - epsilon) * len(A) * len(B), len(G))
    certificate.check("S-lower", differences * threshold, s_size * ratio_count)
    certificate.check("S-upper", s_size, shifted_products[0] * shifted_products[1])
    certificate.check(
        "partial-difference",
        differences * threshold,
        shifted_products[0] * shifted_products[1] * ratio_count,
    )
    if collisions:
        logging.getLogger("Error").getChild("Hard Violation").error(
            "psi has %s collisions on %s", collisions, certificate.instance,
        )
    return PsiInjection(G, certificate)
