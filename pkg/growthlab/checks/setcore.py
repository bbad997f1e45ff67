"""Energy checks on a set and a companion set."""
from __future__ import annotations

from typing import TYPE_CHECKING

from typing_extensions import override

from checks.calculus import dense_graph
from common.abstract_check import AbstractCheck
from setcore.energy import EnergyKind, energy_identities_check, sumset_lower_bound_check

if TYPE_CHECKING:
    from common.certificate import Certificate
    from harness.campaign import CampaignInstance


class EnergyIdentities(AbstractCheck):
    LEMMA = "energy-identities"

    @override
    def certificates(self, instance: CampaignInstance) -> list[Certificate]:
        return [energy_identities_check(dense_graph(instance))]


class EnergyCauchySchwarz(AbstractCheck):
    LEMMA = "energy-cauchy-schwarz"

    @override
    def certificates(self, instance: CampaignInstance) -> list[Certificate]:
        return [sumset_lower_bound_check(instance.sample, kind) for kind in EnergyKind]
