"""Re-verification of stored certificates."""
from __future__ import annotations

import logging
from typing import TYPE_CHECKING

from json_file import JSONFile
from typing_extensions import override

from common.abstract_check import AbstractCheck
from common.certificate import Certificate, replay

if TYPE_CHECKING:
    from harness.campaign import Campaign, CampaignInstance
    from harness.generators import Sample


def replay_certificate(name: str, fixture: JSONFile) -> Certificate:
    """Replay one stored certificate, counting a file that does not decode as one mismatch."""
    certificate = Certificate("certificate-replay", {"fixture": name})
    try:
        mismatches = replay(fixture.parsed_cached())
    except (KeyError, ValueError, TypeError) as e:
        mismatches = [f"unreadable: {e}"]
    if mismatches:
        logging.getLogger("Error").getChild("Replay").info("%s: %s", name, ", ".join(mismatches))
    certificate.record("mismatches", mismatches)
    certificate.check("mismatches", len(mismatches), 0)
    return certificate


class CertificateReplay(AbstractCheck):
    LEMMA = "certificate-replay"

    @override
    def accepts(self, sample: Sample) -> bool:
        return False

    @override
    def certificates(self, instance: CampaignInstance) -> list[Certificate]:
        return []

    @override
    def campaign_certificates(self, campaign: Campaign) -> list[tuple[str, Certificate]]:
        return [
            (f"fixture:{path.stem}", replay_certificate(path.stem, JSONFile(path)))
            for path in sorted(campaign.fixtures.glob("*.json"))
        ]
