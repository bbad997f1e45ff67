"""Sum-product estimate in F_q(t), assembled from the chain, strict and separable growth lemmas."""
from __future__ import annotations

from typing import TYPE_CHECKING

from calculus.plunnecke import plunnecke_check
from common.certificate import Certificate
from ffield.chains import max_chain, separable_from_chain
from ffield.separable import separable_growth_check
from setcore.operations import SetOperation, iterated_sumset, pairwise_set

if TYPE_CHECKING:
    from setcore.finite_set import FiniteSet


def ff_sumproduct_certificate(A: FiniteSet) -> Certificate:
    """Run the proof chain on A and monitor |A|^6 <= |A+A|^3 |AA|^2.

    The separable set S found in A has |2S| <= |2A|, which is checked exactly, and the final inequality has its
    q dependent constant and the log factor suppressed.

    Raises:
        TooSmallError: If |A| < 2
        BudgetExceededError: If the sets are too large to enumerate
    """
    chain = max_chain(A)
    strict = separable_from_chain(A, chain.subset)
    S = strict.subset
    growth = separable_growth_check(S, 2)
    plunnecke = plunnecke_check(A, A, 2)
    sums = len(pairwise_set(A, A, SetOperation.SUM))
    products = len(pairwise_set(A, A, SetOperation.PROD))

    certificate = Certificate("ff-sumproduct", {"field": A.field.tag, "A": A.to_json()})
    for prefix, step in (("chains", chain), ("strict", strict), ("separable-growth", growth), ("plunnecke", plunnecke)):
        certificate.absorb(prefix, step)
    certificate.record("|A|", len(A))
    certificate.record("|A+A|", sums)
    certificate.record("|AA|", products)
    certificate.record("S", S.to_json())
    certificate.check("separable-inside", len(iterated_sumset(S, 2)), len(iterated_sumset(A, 2)))
    certificate.monitor("sum-product", len(A) ** 6, sums**3 * products**2)
    return certificate
