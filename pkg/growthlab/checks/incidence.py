"""Incidence checks on generated configurations, and the sum-product monitors over F_p."""
from __future__ import annotations

from typing import TYPE_CHECKING

from typing_extensions import override

from checks.calculus import dense_graph
from common.abstract_check import AbstractCheck
from common.exact import ceil_sqrt
from fields.prime import PrimeField
from incidence.constructions import elekes_config
from incidence.geometry import IncidenceInstance
from incidence.monitors import (
    PartialSumProductVersion,
    beck_report,
    partial_sumproduct_check,
    rudnev_check,
    szemeredi_trotter_monitor,
    trivial_incidence_check,
)
from setcore.finite_set import FiniteSet

if TYPE_CHECKING:
    from common.certificate import Certificate
    from harness.campaign import CampaignInstance
    from harness.generators import Sample


class ConfigurationCheck(AbstractCheck):
    """Checks that run on point and line configurations instead of sets."""

    @override
    def accepts(self, sample: Sample) -> bool:
        return isinstance(sample, IncidenceInstance)


class SmallPrimeSetCheck(AbstractCheck):
    """Checks of estimates stated for sets A in F_p with |A| <= sqrt(p)."""

    @override
    def accepts(self, sample: Sample) -> bool:
        return (
            isinstance(sample, FiniteSet)
            and isinstance(sample.field, PrimeField)
            and len(sample) <= ceil_sqrt(sample.field.p)
        )


class TrivialIncidence(ConfigurationCheck):
    LEMMA = "trivial-incidence"

    @override
    def certificates(self, instance: CampaignInstance) -> list[Certificate]:
        return [trivial_incidence_check(instance.sample)]


class SzemerediTrotter(ConfigurationCheck):
    LEMMA = "szemeredi-trotter"
    HARD = False

    @override
    def certificates(self, instance: CampaignInstance) -> list[Certificate]:
        return [szemeredi_trotter_monitor(instance.sample)]


class Beck(ConfigurationCheck):
    LEMMA = "beck"

    @override
    def accepts(self, sample: Sample) -> bool:
        return super().accepts(sample) and len(sample.points) >= 2

    @override
    def certificates(self, instance: CampaignInstance) -> list[Certificate]:
        return [beck_report(instance.sample.points)]


class Elekes(AbstractCheck):
    LEMMA = "elekes"

    @override
    def certificates(self, instance: CampaignInstance) -> list[Certificate]:
        _, certificate = elekes_config(instance.sample)
        return [certificate]


class Rudnev(SmallPrimeSetCheck):
    LEMMA = "rudnev"
    HARD = False

    @override
    def certificates(self, instance: CampaignInstance) -> list[Certificate]:
        return [rudnev_check(instance.sample)]


class PartialSumProduct(SmallPrimeSetCheck):
    LEMMA = "partial-sumproduct"
    HARD = False

    @override
    def certificates(self, instance: CampaignInstance) -> list[Certificate]:
        G = dense_graph(instance)
        return [partial_sumproduct_check(G, version) for version in PartialSumProductVersion]
