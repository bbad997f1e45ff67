"""Sumset calculus checks: Ruzsa, Plünnecke and Petridis, and the dense BSG and cover extractions."""
from __future__ import annotations

from typing import TYPE_CHECKING

from typing_extensions import override

from calculus.bsg import bsg_dense
from calculus.covers import cover_ruzsa, cover_variation1, cover_variation2
from calculus.plunnecke import katz_shen_subset, petridis_extension_check, plunnecke_check, ruzsa_triangle_check
from common.abstract_check import AbstractCheck
from common.prng import SplitMix64
from growthlab.settings import SUBSET_LIMIT
from setcore.finite_set import FiniteSet
from setcore.pair_graph import PairGraph

if TYPE_CHECKING:
    from common.certificate import Certificate
    from harness.campaign import CampaignInstance
    from harness.generators import Sample

# Seed label of the graph of missing edges, kept apart from the companion set labels
GRAPH_LABEL = 16


def dense_graph(instance: CampaignInstance) -> PairGraph:
    """A x B for a companion B with floor(|A| |B| / 16) seeded edges removed, so |G| >= (15/16) |A| |B|."""
    A = instance.sample
    if not isinstance(A, FiniteSet):
        error_message = f"Dense graphs are built on sets, got {type(A).__name__}"
        raise TypeError(error_message)
    B = instance.companion(1)
    pairs = [(i, j) for i in range(len(A)) for j in range(len(B))]
    missing = SplitMix64(instance.seed).fork(GRAPH_LABEL).sample(range(len(pairs)), len(pairs) // 16)
    removed = set(missing)
    return PairGraph(A, B, (pair for index, pair in enumerate(pairs) if index not in removed))


class SubsetEnumerationCheck(AbstractCheck):
    """Checks that enumerate subsets of the instance set."""

    @override
    def accepts(self, sample: Sample) -> bool:
        return isinstance(sample, FiniteSet) and len(sample) <= SUBSET_LIMIT


class RuzsaTriangle(AbstractCheck):
    LEMMA = "ruzsa-triangle"

    @override
    def certificates(self, instance: CampaignInstance) -> list[Certificate]:
        return [ruzsa_triangle_check(instance.sample, instance.companion(1), instance.companion(2))]


class Plunnecke(SubsetEnumerationCheck):
    LEMMA = "plunnecke"

    @override
    def certificates(self, instance: CampaignInstance) -> list[Certificate]:
        B = instance.companion(1)
        return [plunnecke_check(instance.sample, B, k) for k in (1, 2, 3)]


class PetridisExtension(SubsetEnumerationCheck):
    LEMMA = "petridis-extension"

    @override
    def certificates(self, instance: CampaignInstance) -> list[Certificate]:
        return [petridis_extension_check(instance.sample, instance.companion(1), instance.companion(2))]


class KatzShen(SubsetEnumerationCheck):
    LEMMA = "katz-shen"

    @override
    def certificates(self, instance: CampaignInstance) -> list[Certificate]:
        return [katz_shen_subset(instance.sample, instance.companion(1), 2)]


class RuzsaCover(AbstractCheck):
    LEMMA = "ruzsa-cover"

    @override
    def certificates(self, instance: CampaignInstance) -> list[Certificate]:
        return [cover_ruzsa(instance.sample, instance.companion(1))]


class BSGDense(AbstractCheck):
    LEMMA = "bsg-dense"

    @override
    def certificates(self, instance: CampaignInstance) -> list[Certificate]:
        return [bsg_dense(dense_graph(instance))]


class ShenVariation1(AbstractCheck):
    LEMMA = "shen-variation-1"

    @override
    def certificates(self, instance: CampaignInstance) -> list[Certificate]:
        return list(cover_variation1(dense_graph(instance)))


class ShenVariation2(AbstractCheck):
    LEMMA = "shen-variation-2"

    @override
    def certificates(self, instance: CampaignInstance) -> list[Certificate]:
        _, certificate = cover_variation2(dense_graph(instance))
        return [certificate]
