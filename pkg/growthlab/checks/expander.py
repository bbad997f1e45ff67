"""Expander checks: injectivity of psi and the cross ratio energies."""
from __future__ import annotations

from typing import TYPE_CHECKING

from typing_extensions import override

from common.abstract_check import AbstractCheck
from expander.energy import EnergyVariant, crossratio_energy_check
from expander.psi import psi_injection_engine
from growthlab.settings import CROSSRATIO_ENERGY_LIMIT
from setcore.finite_set import FiniteSet

if TYPE_CHECKING:
    from common.certificate import Certificate
    from harness.campaign import CampaignInstance
    from harness.generators import Sample


class PsiInjection(AbstractCheck):
    LEMMA = "psi-injection"

    @override
    def certificates(self, instance: CampaignInstance) -> list[Certificate]:
        A = instance.sample.without_zero()
        B = instance.companion(1).without_zero()
        if not A or not B:
            return []
        return [psi_injection_engine(A, B).certificate]


class CrossRatioEnergy(AbstractCheck):
    LEMMA = "crossratio-energy"

    @override
    def accepts(self, sample: Sample) -> bool:
        return isinstance(sample, FiniteSet) and 3 <= len(sample) <= CROSSRATIO_ENERGY_LIMIT

    @override
    def certificates(self, instance: CampaignInstance) -> list[Certificate]:
        return [crossratio_energy_check(instance.sample, variant) for variant in EnergyVariant]
