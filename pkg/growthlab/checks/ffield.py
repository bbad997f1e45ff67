"""Function field checks on sets of polynomials."""
from __future__ import annotations

from typing import TYPE_CHECKING

from typing_extensions import override

from common.abstract_check import AbstractCheck
from ffield.chains import good_quadruple_audit, max_chain, separable_from_chain
from ffield.element import FunctionField
from ffield.separable import separable_growth_check
from ffield.sumproduct import ff_sumproduct_certificate
from growthlab.settings import AUDIT_LIMIT, SUBSET_LIMIT
from setcore.finite_set import FiniteSet

if TYPE_CHECKING:
    from common.certificate import Certificate
    from harness.campaign import CampaignInstance
    from harness.generators import Sample


class FunctionFieldCheck(AbstractCheck):
    """Checks of sets of at least two elements of F_q(t)."""

    LIMIT = AUDIT_LIMIT

    @override
    def accepts(self, sample: Sample) -> bool:
        return (
            isinstance(sample, FiniteSet)
            and isinstance(sample.field, FunctionField)
            and 2 <= len(sample) <= self.LIMIT
        )


class SeparableGrowth(FunctionFieldCheck):
    LEMMA = "separable-growth"

    @override
    def certificates(self, instance: CampaignInstance) -> list[Certificate]:
        A = instance.sample
        S = separable_from_chain(A, max_chain(A).subset).subset
        return [separable_growth_check(S, k) for k in (2, 3)]


class Chains(FunctionFieldCheck):
    LEMMA = "chains"

    @override
    def certificates(self, instance: CampaignInstance) -> list[Certificate]:
        A = instance.sample
        chain = max_chain(A)
        return [chain, separable_from_chain(A, chain.subset), good_quadruple_audit(A)]


class FunctionFieldSumProduct(FunctionFieldCheck):
    LEMMA = "ff-sumproduct"
    LIMIT = SUBSET_LIMIT

    @override
    def certificates(self, instance: CampaignInstance) -> list[Certificate]:
        return [ff_sumproduct_certificate(instance.sample)]
