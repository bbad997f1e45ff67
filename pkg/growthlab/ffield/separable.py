"""Separable sets: A = {a_1, ..., a_n} with balls B_j such that A cap B_j = {a_1, ..., a_j} for every j.

A set is separable exactly when every internal node of its dendrogram has two children and one of them is a leaf.
The witness starts with the two leaves of the lowest merge and adds the leaf child of each node on the way up.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import permutations
from typing import TYPE_CHECKING

from common.budget import check_budget
from common.certificate import Certificate
from ffield.balls import Ball, members_in, nearest_and_ball
from ffield.dendrogram import Dendrogram, DendrogramNode
from ffield.valuation import dist
from growthlab.settings import SEPARABILITY_ORACLE_LIMIT
from setcore.energy import kfold_energy
from setcore.operations import iterated_sumset

if TYPE_CHECKING:
    from fields.base import FieldElement
    from setcore.finite_set import FiniteSet


class NotSeparableError(Exception):
    """Exception raised when a set that has to be separable is not."""


@dataclass(frozen=True)
class SeparabilityResult:
    separable: bool
    ordering: tuple[FieldElement, ...] = ()
    radii: tuple[int, ...] = ()
    balls: tuple[Ball, ...] = ()
    violation: DendrogramNode | None = None

    def failed_prefixes(self, A: FiniteSet) -> list[int]:
        """Sizes j whose ball B_j does not cut out exactly a_1, ..., a_j."""
        return [
            j
            for j, ball in enumerate(self.balls, start=1)
            if members_in(A, ball) != A.with_elements(self.ordering[:j])
        ]


def _is_caterpillar_node(node: DendrogramNode) -> bool:
    return len(node.children) == 2 and any(child.is_leaf for child in node.children)


def is_separable(A: FiniteSet) -> SeparabilityResult:
    """Decide separability from the dendrogram and return the witness or the first violating merge.

    Raises:
        EmptyInputError: If A is empty
    """
    tree = Dendrogram(A)
    violation = next((node for node in tree.nodes if not node.is_leaf and not _is_caterpillar_node(node)), None)
    if violation is not None:
        return SeparabilityResult(separable=False, violation=violation)
    if tree.root.is_leaf:
        return SeparabilityResult(True, (A[0],), (), (Ball(A[0], 0),))

    spine: list[DendrogramNode] = []
    node = tree.root
    while not node.is_leaf:
        spine.append(node)
        node = next((child for child in node.children if not child.is_leaf), node.children[0])
    spine.reverse()
    bottom = spine[0]
    indices = list(bottom.members)
    for parent in spine[1:]:
        leaf = next(child for child in parent.children if child.is_leaf and child.members[0] not in indices)
        indices.append(leaf.members[0])
    ordering = tuple(A[i] for i in indices)
    first = ordering[0]
    radii = tuple(node.radius for node in spine)
    balls = (Ball(first, nearest_and_ball(A, first).radius.exponent - 1), *(Ball(first, r) for r in radii))
    return SeparabilityResult(True, ordering, radii, balls)


def _diameter(points: tuple[FieldElement, ...]) -> int:
    return max(dist(points[0], other).exponent for other in points[1:])


def separable_by_orderings(A: FiniteSet) -> tuple[FieldElement, ...] | None:
    """Try every ordering and return the first whose prefixes are all cut out by balls.

    A prefix P is cut out by a ball exactly when B(p, diameter of P) meets A in P for any p in P.

    Raises:
        BudgetExceededError: If |A| is over SEPARABILITY_ORACLE_LIMIT
    """
    check_budget(len(A), "separability by orderings", SEPARABILITY_ORACLE_LIMIT)
    for ordering in permutations(A):
        if all(
            members_in(A, Ball(ordering[0], _diameter(ordering[:j]))) == A.with_elements(ordering[:j])
            for j in range(2, len(ordering) + 1)
        ):
            return ordering
    return None


def separable_growth_check(S: FiniteSet, k: int) -> Certificate:
    """Certify that the k-fold energy of a separable set has no nontrivial solutions, and |kS| E_k(S) >= |S|^(2k).

    Raises:
        NotSeparableError: If S is not separable
        InvalidCountError: If k < 2
        BudgetExceededError: If |S|^(2k) is over the enumeration budget
    """
    if not is_separable(S).separable:
        error_message = f"{S} is not separable"
        raise NotSeparableError(error_message)
    counted = kfold_energy(S, k)
    sumset = len(iterated_sumset(S, k))

    certificate = Certificate("separable-growth", {"field": S.field.tag, "S": S.to_json(), "k": k})
    certificate.record("E_k(S)", counted.total)
    certificate.record("nontrivial", counted.nontrivial)
    certificate.record("|kS|", sumset)
    certificate.check("nontrivial-solutions", counted.nontrivial, 0)
    certificate.check("sumset-size", len(S) ** (2 * k), sumset * counted.total)
    return certificate
