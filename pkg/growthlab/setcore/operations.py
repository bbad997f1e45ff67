"""Complete and partial sumsets, product sets, translates and multiplicities."""
from __future__ import annotations

from collections import Counter
from enum import StrEnum
from typing import TYPE_CHECKING

from fields.base import FieldElement, FieldMismatchError
from fields.prime import PrimeField
from growthlab.settings import SMALL_BITSET_PRIME
from setcore.bitset import sumset_residues
from setcore.finite_set import EmptyInputError, FiniteSet

if TYPE_CHECKING:
    from setcore.pair_graph import PairGraph


class ZeroDivisorEdgeError(Exception):
    """Exception raised when a partial ratio set has an edge whose right element is zero."""


class ZeroDilationError(Exception):
    """Exception raised when a set is dilated by zero."""


class InvalidCountError(Exception):
    """Exception raised when a repetition count is out of range."""


class SetOperation(StrEnum):
    SUM = "sum"
    DIFF = "diff"
    PROD = "prod"
    RATIO = "ratio"


class TranslateMode(StrEnum):
    TRANSLATE = "translate"
    DILATE = "dilate"


def combine(a: FieldElement, b: FieldElement, op: SetOperation) -> FieldElement:
    match op:
        case SetOperation.SUM:
            return a + b
        case SetOperation.DIFF:
            return a - b
        case SetOperation.PROD:
            return a * b
        case SetOperation.RATIO:
            return a / b


def _check_pair(A: FiniteSet, B: FiniteSet) -> None:
    if A.field != B.field:
        error_message = f"Cannot combine sets over {A.field.tag} and {B.field.tag}"
        raise FieldMismatchError(error_message)
    if not A or not B:
        error_message = "Pairwise sets need nonempty inputs"
        raise EmptyInputError(error_message)


def pairwise_set(A: FiniteSet, B: FiniteSet, op: SetOperation) -> FiniteSet:
    """Return A+B, A-B, AB or A/B. Zero is dropped from B for ratios.

    Raises:
        EmptyInputError: If A or B is empty, or B is {0} for a ratio
        FieldMismatchError: If A and B are over different fields
    """
    _check_pair(A, B)
    if op is SetOperation.RATIO:
        B = B.without_zero()
        if not B:
            error_message = "The ratio set A/B needs a nonzero element in B"
            raise EmptyInputError(error_message)
    field = A.field
    if isinstance(field, PrimeField) and field.p <= SMALL_BITSET_PRIME and op in (SetOperation.SUM, SetOperation.DIFF):
        shifts = [b.value if op is SetOperation.SUM else field.neg_values(b.value) for b in B]
        return FiniteSet(field, sumset_residues((a.value for a in A), shifts, field.p))
    return A.with_elements(combine(a, b, op) for a in A for b in B)


def partial_pairwise_set(G: PairGraph, op: SetOperation) -> FiniteSet:
    """Return the partial set {a op b : (a, b) in G}.

    Raises:
        ZeroDivisorEdgeError: If op is a ratio and an edge ends at zero
    """
    _check_ratio_edges(G, op)
    return G.left.with_elements(combine(a, b, op) for a, b in G.pairs())


def _check_ratio_edges(G: PairGraph, op: SetOperation) -> None:
    if op is SetOperation.RATIO and any(b.is_zero for _, b in G.pairs()):
        error_message = "A partial ratio set cannot use an edge ending at zero"
        raise ZeroDivisorEdgeError(error_message)


def iterated_sumset(A: FiniteSet, k: int) -> FiniteSet:
    """Return kA = A + ... + A with k summands."""
    if k < 1:
        error_message = f"Iterated sumsets need k >= 1, got {k}"
        raise InvalidCountError(error_message)
    result = A
    for _ in range(k - 1):
        result = pairwise_set(result, A, SetOperation.SUM)
    return result


def translate_dilate(A: FiniteSet, x: FieldElement, mode: TranslateMode) -> FiniteSet:
    """Return A + x or xA.

    Raises:
        ZeroDilationError: If x is zero in dilate mode
    """
    if mode is TranslateMode.TRANSLATE:
        return A.with_elements(a + x for a in A)
    if x.is_zero:
        error_message = f"Cannot dilate {A} by zero"
        raise ZeroDilationError(error_message)
    return A.with_elements(a * x for a in A)


def multiplicity(G: PairGraph, op: SetOperation) -> Counter[FieldElement]:
    """Number of edges of G representing each value of the partial set, summing to |G|."""
    _check_ratio_edges(G, op)
    return Counter(combine(a, b, op) for a, b in G.pairs())
