"""Ruzsa triangle, Petridis minimal-ratio subsets and the Plünnecke family of bounds.

Every inequality is checked after cross multiplication so no bound is ever rounded.
"""
from __future__ import annotations

import logging
from fractions import Fraction
from typing import TYPE_CHECKING

from calculus.certificates import ExtractionCertificate
from common.certificate import Certificate
from growthlab.settings import SUBSET_LIMIT
from setcore.bitset import to_mask
from setcore.operations import InvalidCountError, SetOperation, iterated_sumset, pairwise_set

if TYPE_CHECKING:
    from setcore.finite_set import FiniteSet

MAX_PLUNNECKE_K = 4


class SubsetBudgetExceededError(Exception):
    """Exception raised when an exhaustive subset scan is asked for too many elements."""


def sets_instance(**sets: FiniteSet) -> dict[str, object]:
    """JSON-ready description of named sets over one field."""
    first = next(iter(sets.values()))
    return {"field": first.field.tag} | {name: value.to_json() for name, value in sets.items()}


def ruzsa_triangle_check(A: FiniteSet, B: FiniteSet, C: FiniteSet) -> Certificate:
    """Check |A - B| * |C| <= |A - C| * |B - C|."""
    a_minus_b = len(pairwise_set(A, B, SetOperation.DIFF))
    a_minus_c = len(pairwise_set(A, C, SetOperation.DIFF))
    b_minus_c = len(pairwise_set(B, C, SetOperation.DIFF))
    certificate = Certificate("ruzsa-triangle", sets_instance(A=A, B=B, C=C))
    certificate.record("|A-B|", a_minus_b)
    certificate.record("|A-C|", a_minus_c)
    certificate.record("|B-C|", b_minus_c)
    certificate.check("triangle", a_minus_b * len(C), a_minus_c * b_minus_c)
    return certificate


def _lexicographic_indices(mask: int) -> tuple[int, ...]:
    return tuple(i for i in range(mask.bit_length()) if mask >> i & 1)


def petridis_min_ratio_subset(A: FiniteSet, B: FiniteSet) -> ExtractionCertificate:
    """Find the nonempty A' in A minimising K = |A' + B| / |A'| by scanning every subset.

    Ties go to the larger A', then to the lexicographically smallest index tuple.

    Raises:
        SubsetBudgetExceededError: If |A| is over SUBSET_LIMIT
        EmptyInputError: If A or B is empty
    """
    if len(A) > SUBSET_LIMIT:
        error_message = f"Petridis subset scan is limited to {SUBSET_LIMIT} elements, got {len(A)}"
        raise SubsetBudgetExceededError(error_message)
    sums = pairwise_set(A, B, SetOperation.SUM)
    translates = [to_mask(sums.index(a + b) for b in B) for a in A]

    # union[mask] is the bitmask of A' + B for the subset A' with index mask
    union = [0] * (1 << len(A))
    best_mask = 0
    best_size = 0
    best_count = 0
    for mask in range(1, 1 << len(A)):
        low_bit = mask & -mask
        union[mask] = union[mask ^ low_bit] | translates[low_bit.bit_length() - 1]
        size = union[mask].bit_count()
        count = mask.bit_count()
        if best_mask == 0:
            best_mask, best_size, best_count = mask, size, count
            continue
        difference = size * best_count - best_size * count
        if difference > 0:
            continue
        if difference < 0 or count > best_count or (
            count == best_count and _lexicographic_indices(mask) < _lexicographic_indices(best_mask)
        ):
            best_mask, best_size, best_count = mask, size, count

    subset = A.subset(_lexicographic_indices(best_mask))
    K = Fraction(best_size, best_count)
    certificate = ExtractionCertificate("petridis", sets_instance(A=A, B=B), subset=subset)
    certificate.record("K", K)
    certificate.record("|A'|", best_count)
    certificate.record("|A'+B|", best_size)
    certificate.record("|A+B|", len(sums))
    certificate.check("not-worse-than-A", best_size * len(A), len(sums) * best_count)
    logging.getLogger("Calculus").getChild("Petridis").debug("K = %s with |A'| = %s", K, best_count)
    return certificate


def _check_k(k: int) -> None:
    if not 1 <= k <= MAX_PLUNNECKE_K:
        error_message = f"k must lie in [1, {MAX_PLUNNECKE_K}], got {k}"
        raise InvalidCountError(error_message)


def _add_k_times(X: FiniteSet, B: FiniteSet, k: int) -> FiniteSet:
    """Return X + kB."""
    for _ in range(k):
        X = pairwise_set(X, B, SetOperation.SUM)
    return X


def plunnecke_check(A: FiniteSet, B: FiniteSet, k: int) -> ExtractionCertificate:
    """Check the Plünnecke bounds on the Petridis subset.

    Verifies |A' + kB| * |A|^k <= |A'| * |A + B|^k and |kB| * |A|^(k-1) <= |A + B|^k.

    Raises:
        InvalidCountError: If k is outside of [1, 4]
    """
    _check_k(k)
    petridis = petridis_min_ratio_subset(A, B)
    subset = petridis.subset
    sumset_size = len(pairwise_set(A, B, SetOperation.SUM))
    subset_sum = len(pairwise_set(subset, B, SetOperation.SUM))
    extended = len(_add_k_times(subset, B, k))
    iterated = len(iterated_sumset(B, k))

    certificate = ExtractionCertificate("plunnecke", sets_instance(A=A, B=B) | {"k": k}, subset=subset)
    certificate.record("K", petridis.quantities["K"])
    certificate.record("|A+B|", sumset_size)
    certificate.record("|A'+kB|", extended)
    certificate.record("|kB|", iterated)
    certificate.check("petridis-power", extended * len(subset) ** k, subset_sum**k * len(subset))
    certificate.check("subset-growth", extended * len(A) ** k, len(subset) * sumset_size**k)
    certificate.check("iterated-sumset", iterated * len(A) ** (k - 1), sumset_size**k)
    return certificate


def petridis_extension_check(A: FiniteSet, B: FiniteSet, C: FiniteSet) -> ExtractionCertificate:
    """Check |A' + B + C| * |A'| <= |A' + B| * |A' + C| for the Petridis subset A' of (A, B)."""
    subset = petridis_min_ratio_subset(A, B).subset
    with_b = pairwise_set(subset, B, SetOperation.SUM)
    with_c = pairwise_set(subset, C, SetOperation.SUM)
    with_both = pairwise_set(with_b, C, SetOperation.SUM)
    certificate = ExtractionCertificate("petridis-extension", sets_instance(A=A, B=B, C=C), subset=subset)
    certificate.record("|A'+B|", len(with_b))
    certificate.record("|A'+C|", len(with_c))
    certificate.record("|A'+B+C|", len(with_both))
    certificate.check("extension", len(with_both) * len(subset), len(with_b) * len(with_c))
    return certificate


def katz_shen_subset(A: FiniteSet, B: FiniteSet, k: int) -> ExtractionCertificate:
    """Peel Petridis subsets off A until their union has at least |A| / 2 elements.

    Piece i is the Petridis subset of the remainder R_i and satisfies
    |A_i + kB| * |R_i|^k <= |A_i| * |R_i + B|^k. The union A' then satisfies
    |A' + kB| * |A|^k <= 2^k * |A + B|^k * |A'|.

    Raises:
        InvalidCountError: If k is outside of [1, 4]
    """
    _check_k(k)
    sumset_size = len(pairwise_set(A, B, SetOperation.SUM))
    certificate = ExtractionCertificate("katz-shen", sets_instance(A=A, B=B) | {"k": k})
    remainder = A
    union = A.with_elements(())
    pieces: list[list[str]] = []
    while 2 * len(union) < len(A):
        piece = petridis_min_ratio_subset(remainder, B).subset
        piece_size = len(_add_k_times(piece, B, k))
        remainder_sum = len(pairwise_set(remainder, B, SetOperation.SUM))
        certificate.check(
            f"piece-{len(pieces) + 1}",
            piece_size * len(remainder) ** k,
            len(piece) * remainder_sum**k,
        )
        certificate.check(f"piece-{len(pieces) + 1}-disjoint", len(union & piece), 0)
        pieces.append(piece.to_json())
        union = union | piece
        remainder = remainder - piece

    extended = len(_add_k_times(union, B, k))
    certificate.subset = union
    certificate.record("pieces", pieces)
    certificate.record("|A'|", len(union))
    certificate.record("|A'+kB|", extended)
    certificate.check("half-size", len(A), 2 * len(union))
    certificate.check("union-growth", extended * len(A) ** k, 2**k * sumset_size**k * len(union))
    return certificate
