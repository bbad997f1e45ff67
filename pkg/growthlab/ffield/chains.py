"""A-chains: subsets C of A whose balls B_A(c) are nested, and what the chain lemma counts about them.

N(a) is the largest size of an A-chain ending at a. Balls that are equal form one class, and all of a class can sit
in a chain together, so N is a longest path over classes weighted by class size.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction
from math import log
from typing import TYPE_CHECKING

from calculus.certificates import ExtractionCertificate
from common.budget import check_budget
from common.certificate import Certificate
from ffield.balls import Ball, BallRelation, ball_ops, member, members_in, nearest_and_ball
from ffield.element import FunctionField
from ffield.separable import is_separable
from ffield.valuation import Valuation, dist, valuation
from growthlab.settings import AUDIT_LIMIT
from setcore.energy import TooSmallError
from setcore.operations import SetOperation, pairwise_set

if TYPE_CHECKING:
    from fields.base import FieldElement
    from setcore.finite_set import FiniteSet


class NotAChainError(Exception):
    """Exception raised when the balls B_A(c) of a claimed A-chain are not totally ordered by inclusion."""


@dataclass
class ChainPoset:
    """Balls B_A(a), their classes of equal balls in order of increasing radius, and N(a)."""

    A: FiniteSet
    balls: dict[FieldElement, Ball]
    classes: list[tuple[FieldElement, ...]]
    longest: dict[FieldElement, int]
    previous: dict[int, int | None]

    def chain_ending_at(self, index: int) -> tuple[FieldElement, ...]:
        members: list[FieldElement] = []
        current: int | None = index
        while current is not None:
            members = [*self.classes[current], *members]
            current = self.previous[current]
        return tuple(members)


def chain_poset(A: FiniteSet) -> ChainPoset:
    """Compute every B_A(a) and N(a) by dynamic programming over the classes of equal balls.

    Raises:
        TooSmallError: If |A| < 2
    """
    balls = {a: nearest_and_ball(A, a).ball for a in A}
    classes = _equal_ball_classes(A, balls)

    best: list[int] = []
    previous: dict[int, int | None] = {}
    for index, members in enumerate(classes):
        inner = [
            earlier
            for earlier in range(index)
            if ball_ops(balls[classes[earlier][0]], balls[members[0]]) is BallRelation.SUBSET
        ]
        link = max(inner, key=lambda earlier: best[earlier], default=None)
        best.append(len(members) + (best[link] if link is not None else 0))
        previous[index] = link
    longest = {a: best[index] for index, members in enumerate(classes) for a in members}
    return ChainPoset(A, balls, [tuple(members) for members in classes], longest, previous)


def _equal_ball_classes(points: FiniteSet, balls: dict[FieldElement, Ball]) -> list[list[FieldElement]]:
    """Group points with equal balls, smallest radius first."""
    classes: list[list[FieldElement]] = []
    for point in points:
        home = next(
            (members for members in classes if ball_ops(balls[members[0]], balls[point]) is BallRelation.EQUAL),
            None,
        )
        if home is None:
            classes.append([point])
        else:
            home.append(point)
    classes.sort(key=lambda members: balls[members[0]].radius)
    return classes


def _log_cubed(size: int) -> Fraction:
    return Fraction(log(size) ** 3).limit_denominator(10**6)


def max_chain(A: FiniteSet) -> ExtractionCertificate:
    """Return a longest A-chain, checked against N(a) <= |B_A(a) cap A| and monitored against the chain lemma.

    The lemma's size |A|^5 / (|A+A|^2 |AA|^2 log^3 |A|) is taken with constant 1.

    Raises:
        TooSmallError: If |A| < 2
    """
    poset = chain_poset(A)
    top = max(range(len(poset.classes)), key=lambda index: poset.longest[poset.classes[index][0]])
    chain = A.with_elements(poset.chain_ending_at(top))
    sums = len(pairwise_set(A, A, SetOperation.SUM))
    products = len(pairwise_set(A, A, SetOperation.PROD))
    overfull = [str(a) for a in A if poset.longest[a] > len(members_in(A, poset.balls[a]))]

    certificate = ExtractionCertificate("chains", {"field": A.field.tag, "A": A.to_json()}, subset=chain)
    certificate.record("|A|", len(A))
    certificate.record("|A+A|", sums)
    certificate.record("|AA|", products)
    certificate.record("|C|", len(chain))
    certificate.record("N", {str(a): poset.longest[a] for a in A})
    certificate.check("chain-in-ball", len(overfull), 0)
    certificate.check("nested", len(unnested_pairs(A, chain, poset.balls)), 0)
    certificate.monitor("chain-size", len(A) ** 5, len(chain) * sums**2 * products**2 * _log_cubed(len(A)))
    return certificate


def unnested_pairs(
    A: FiniteSet,
    C: FiniteSet,
    balls: dict[FieldElement, Ball] | None = None,
) -> list[tuple[FieldElement, FieldElement]]:
    """Pairs of C whose balls B_A are disjoint."""
    balls = balls or {c: nearest_and_ball(A, c).ball for c in C}
    return [
        (b, c)
        for i, b in enumerate(C)
        for c in C.elements[i + 1 :]
        if ball_ops(balls[b], balls[c]) is BallRelation.DISJOINT
    ]


def separable_from_chain(A: FiniteSet, C: FiniteSet) -> ExtractionCertificate:
    """Keep the smallest point of each class of equal balls in C, which leaves a strictly nested separable set.

    Raises:
        NotAChainError: If C is not a subset of A or its balls are not nested
        TooSmallError: If |A| < 2
    """
    if not C <= A:
        error_message = f"{C} is not a subset of {A}"
        raise NotAChainError(error_message)
    balls = {c: nearest_and_ball(A, c).ball for c in C}
    broken = unnested_pairs(A, C, balls)
    if broken:
        error_message = f"B_A({broken[0][0]}) and B_A({broken[0][1]}) are disjoint"
        raise NotAChainError(error_message)
    classes = _equal_ball_classes(C, balls)
    representatives = [min(members) for members in classes]
    subset = A.with_elements(representatives)
    q = A.field.q if isinstance(A.field, FunctionField) else len(C)
    strict_failures = sum(
        1
        for smaller, larger in zip(representatives, representatives[1:], strict=False)
        if ball_ops(balls[smaller], balls[larger]) is not BallRelation.SUBSET
    )
    separated = is_separable(subset) if subset else None

    instance = {"field": A.field.tag, "A": A.to_json(), "C": C.to_json()}
    certificate = ExtractionCertificate("strict", instance, subset=subset)
    certificate.record("|C|", len(C))
    certificate.record("classes", len(classes))
    certificate.record("largest class", max((len(members) for members in classes), default=0))
    certificate.check("class-size", certificate.quantities["largest class"], q)
    certificate.check("size", len(C), q * len(subset))
    certificate.check("strict-nesting", strict_failures, 0)
    certificate.check("separable", 0 if separated is None or separated.separable else 1, 0)
    return certificate


def _dyadic_class(longest: int) -> int:
    return longest.bit_length() - 1


def good_quadruple_audit(A: FiniteSet, j: int | None = None) -> Certificate:
    """Count the good quadruples (a, b, c, d) of the chain lemma for one dyadic class of N.

    The class is A_j = {a : 2^j <= N(a) < 2^(j+1)}.
    The default j is the class with the most points. Both majority claims of the proof are hard checks: for each c
    at least 3|A_j|/4 of a in A_j make (a, c) additively good, and the same for each nonzero d multiplicatively.
    Following the proof, d ranges over A without zero.

    Raises:
        BudgetExceededError: If |A| is over AUDIT_LIMIT
        TooSmallError: If |A| < 2
    """
    check_budget(len(A), "good quadruple audit", AUDIT_LIMIT)
    if len(A) < 2:
        error_message = f"The audit needs at least two points, got {len(A)}"
        raise TooSmallError(error_message)
    if any(a.is_zero for a in A):
        logging.getLogger("Audit").getChild("Zero In Set").info("0 is in %s, d ranges over A without 0", A)
    poset = chain_poset(A)
    classes = [_dyadic_class(poset.longest[a]) for a in A]
    if j is None:
        j = max(sorted(set(classes)), key=classes.count)
    A_j = [a for a, dyadic in zip(A, classes, strict=True) if dyadic == j]
    sums = pairwise_set(A, A, SetOperation.SUM)
    products = pairwise_set(A, A, SetOperation.PROD)

    certificate = Certificate("good-quadruples", {"field": A.field.tag, "A": A.to_json(), "j": j})
    certificate.record("|A_j|", len(A_j))
    certificate.record("|A+A|", len(sums))
    certificate.record("|AA|", len(products))
    if not A_j:
        certificate.record("Q", 0)
        return certificate

    additive_limit = Fraction(2 ** (j + 3) * len(sums), len(A_j))
    multiplicative_limit = Fraction(2 ** (j + 3) * len(products), len(A_j))
    nonzero = [d for d in A if not d.is_zero]
    additive = {
        (a, c)
        for a in A_j
        for c in A
        if sum(1 for u in sums if member(u - c, poset.balls[a])) <= additive_limit
    }
    multiplicative = {
        (a, d)
        for a in A_j
        for d in nonzero
        if sum(1 for u in products if _in_dilate(u, d, poset.balls[a])) <= multiplicative_limit
    }
    inside = {a: [b for b in A if member(b, poset.balls[a])] for a in A_j}
    Q = sum(
        len(inside[a])
        for a in A_j
        for c in A
        if (a, c) in additive
        for d in nonzero
        if (a, d) in multiplicative
    )
    additive_minority = sum(1 for c in A if 4 * sum(1 for a in A_j if (a, c) in additive) < 3 * len(A_j))
    multiplicative_minority = sum(
        1 for d in nonzero if 4 * sum(1 for a in A_j if (a, d) in multiplicative) < 3 * len(A_j)
    )
    lower = 2**j * len(A_j) * len(A) ** 2
    upper = Fraction(2 ** (2 * j) * len(sums) ** 2 * len(products) ** 2, len(A_j) ** 2)

    certificate.record("Q", Q)
    certificate.record("lower", lower)
    certificate.record("upper", upper)
    certificate.check("additive-majority", additive_minority, 0)
    certificate.check("multiplicative-majority", multiplicative_minority, 0)
    certificate.monitor("Q-lower", lower, Q)
    certificate.monitor("Q-upper", Q, upper)
    return certificate


def _in_dilate(u: FieldElement, d: FieldElement, ball: Ball) -> bool:
    """Return whether u lies in d B = B(d x, |d| r)."""
    return dist(u, d * ball.center) <= valuation(d) + Valuation(ball.radius)
