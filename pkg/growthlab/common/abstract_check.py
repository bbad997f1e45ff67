"""Contains AbstractCheck."""
from __future__ import annotations

from abc import ABC, abstractmethod
from typing import TYPE_CHECKING, ClassVar

from setcore.finite_set import FiniteSet

if TYPE_CHECKING:
    from common.certificate import Certificate
    from harness.campaign import Campaign, CampaignInstance
    from harness.generators import Sample


class AbstractCheck(ABC):
    """Abstract class that must be inherited and implemented by check plugins for them to be found by a campaign."""

    LEMMA: ClassVar[str]
    """Identifier used in campaign files and reports."""

    HARD: ClassVar[bool] = True
    """False when the check only monitors a claim whose constants are suppressed."""

    def accepts(self, sample: Sample) -> bool:
        """Check if the check can run on a generated sample.

        Args:
            sample: The set or incidence instance of one campaign instance.

        Returns:
            True if certificates can be produced for the sample. Samples that are not accepted are skipped.
        """
        return isinstance(sample, FiniteSet)

    @abstractmethod
    def certificates(self, instance: CampaignInstance) -> list[Certificate]:
        """Produce the certificates of the check for one campaign instance.

        Args:
            instance: An instance whose sample was accepted.
        """

    def campaign_certificates(self, campaign: Campaign) -> list[tuple[str, Certificate]]:
        """Certificates that belong to the whole campaign instead of one instance, with their instance ids.

        Returns:
            A list of (instance id, certificate) pairs
        """
        del campaign
        return []
