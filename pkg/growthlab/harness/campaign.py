"""Seeded campaigns that run check plugins over generated instances."""
from __future__ import annotations

import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from itertools import repeat
from typing import TYPE_CHECKING, Any, NamedTuple

from paved_path import PavedPath

from common.constants import FIXTURES_DIR, REPORTS_DIR
from common.get_check import get_check
from common.literals import LiteralSyntaxError
from common.prng import SplitMix64
from fields.parsing import parse_field
from fields.prime import InvalidModulusError, PrimeField
from harness.generators import Family, Sample, SpecInvalidError, family_of, generate, random_set
from harness.report import BOUND_HEADER, CampaignIOError, Report, certificate_rows, summarize_bounds

if TYPE_CHECKING:
    from collections.abc import Callable

    from fields.base import Field
    from setcore.finite_set import FiniteSet


def parse_sizes(text: str) -> tuple[int, ...]:
    """Parse a size range, either low..high or a comma separated list.

    Raises:
        SpecInvalidError: If the text is not a range of positive sizes
    """
    try:
        if ".." in text:
            low, high = (int(part) for part in text.split("..", 1))
            sizes = tuple(range(low, high + 1))
        else:
            sizes = tuple(int(part) for part in text.split(",") if part.strip())
    except ValueError:
        error_message = f"Sizes must look like 4..12 or 4,8,16, got {text!r}"
        raise SpecInvalidError(error_message) from None
    if not sizes or min(sizes) < 1:
        error_message = f"Sizes must be a non empty range of positive integers, got {text!r}"
        raise SpecInvalidError(error_message)
    return sizes


def _positive(text: str) -> int:
    value = int(text, 0)
    if value < 1:
        error_message = f"Expected a positive integer, got {text!r}"
        raise ValueError(error_message)
    return value


def _checks(text: str) -> tuple[str, ...]:
    return tuple(lemma.strip() for lemma in text.split(",") if lemma.strip())


_PARSERS: dict[str, Callable[[str], Any]] = {
    "seed": lambda text: int(text, 0),
    "field": parse_field,
    "family": family_of,
    "sizes": parse_sizes,
    "instances": _positive,
    "checks": _checks,
    "workers": _positive,
}
_PATH_KEYS = ("output", "fixtures")


class InstanceSpec(NamedTuple):
    instance_id: str
    size: int
    seed: int


@dataclass(frozen=True)
class Campaign:
    """Everything needed to reproduce a run: the same campaign always writes the same report."""

    seed: int = 0
    field: Field = PrimeField(101)
    family: Family = Family.RANDOM
    sizes: tuple[int, ...] = (8,)
    instances: int = 1
    checks: tuple[str, ...] = ()
    output: PavedPath = REPORTS_DIR
    fixtures: PavedPath = FIXTURES_DIR
    workers: int = 1
    name: str = "campaign"

    @classmethod
    def parse(cls, text: str, base: PavedPath | None = None, name: str = "campaign") -> Campaign:
        """Parse key=value lines, ignoring blank lines and # comments.

        Args:
            text: Contents of a campaign file.
            base: Directory relative output and fixtures paths are resolved against.
            name: Stem of the report files.

        Raises:
            SpecInvalidError: If a line is not key=value, the key is unknown or the value cannot be parsed
        """
        values: dict[str, Any] = {"name": name}
        for number, raw_line in enumerate(text.splitlines(), start=1):
            line = raw_line.split("#", 1)[0].strip()
            if not line:
                continue
            key, separator, value = (part.strip() for part in line.partition("="))
            if not separator or (key not in _PARSERS and key not in _PATH_KEYS):
                error_message = f"Line {number} of the campaign is not a known key=value pair: {raw_line!r}"
                raise SpecInvalidError(error_message)
            if key in _PATH_KEYS:
                values[key] = PavedPath(base, value) if base is not None else PavedPath(value)
                continue
            try:
                values[key] = _PARSERS[key](value)
            except (ValueError, LiteralSyntaxError, InvalidModulusError) as error:
                error_message = f"Line {number} of the campaign has an invalid {key}: {error}"
                raise SpecInvalidError(error_message) from error
        return cls(**values)

    @classmethod
    def read(cls, path: PavedPath) -> Campaign:
        """Read a campaign file, resolving its paths against the folder it is in.

        Raises:
            CampaignIOError: If the file cannot be read
        """
        try:
            text = path.read_text()
        except OSError as error:
            error_message = f"Could not read the campaign {path}: {error}"
            raise CampaignIOError(error_message) from error
        return cls.parse(text, PavedPath(path.parent), path.stem)

    def instance_specs(self) -> list[InstanceSpec]:
        rng = SplitMix64(self.seed)
        return [
            InstanceSpec(f"{size}-{index}", size, rng.next_u64())
            for size in self.sizes
            for index in range(self.instances)
        ]


@dataclass(frozen=True)
class CampaignInstance:
    instance_id: str
    family: Family
    field: Field
    size: int
    seed: int
    sample: Sample

    def companion(self, label: int) -> FiniteSet:
        """Random set of the same size for checks that need more than one set, seeded from this instance."""
        return random_set(self.field, self.size, SplitMix64(self.seed).fork(label).next_u64())

    def to_json(self) -> dict[str, Any]:
        return {
            "id": self.instance_id,
            "family": str(self.family),
            "field": self.field.tag,
            "size": self.size,
            "seed": self.seed,
        }


class InstanceResult(NamedTuple):
    rows: list[dict[str, Any]]
    errors: list[str]


def evaluate_instance(campaign: Campaign, spec: InstanceSpec) -> InstanceResult:
    """Run every check of the campaign on one instance.

    A check that raises is logged and recorded as an error so the remaining checks still run.
    """
    sample = generate(campaign.family, campaign.field, spec.size, spec.seed)
    instance = CampaignInstance(spec.instance_id, campaign.family, campaign.field, spec.size, spec.seed, sample)
    result = InstanceResult([], [])
    for lemma in campaign.checks:
        check = get_check(lemma)
        if not check.accepts(sample):
            logging.getLogger("Campaign").getChild("Skip").debug("%s does not apply to %s", lemma, spec.instance_id)
            continue
        try:
            certificates = check.certificates(instance)
        # A failing check must not stop the rest of the campaign
        except Exception as e:  # noqa: BLE001
            logging.getLogger("Error").getChild("Check Failure").info("%s %s: %s", spec.instance_id, lemma, e)
            result.errors.append(f"{spec.instance_id} {lemma}: {type(e).__name__}: {e}")
            continue
        for certificate in certificates:
            result.rows.extend(certificate_rows(spec.instance_id, certificate))
    return result


def run_campaign(campaign: Campaign, *, write: bool = True) -> Report:
    """Run a campaign and write its CSV rows and JSON summary.

    Instances are evaluated in worker processes when the campaign asks for more than one worker. Rows are always
    assembled in instance order so reports do not depend on scheduling.

    Raises:
        UnknownCheckError: If the campaign names a lemma id no check provides
        CampaignIOError: If the report cannot be written
    """
    checks = {lemma: get_check(lemma) for lemma in campaign.checks}
    report = Report(BOUND_HEADER, summarize_bounds)
    specs = campaign.instance_specs() if checks else []
    logging.getLogger("Campaign").getChild("Start").info(
        "%s: %d instances of %s over %s, checks %s",
        campaign.name,
        len(specs),
        campaign.family,
        campaign.field.tag,
        ", ".join(checks) or "none",
    )

    if campaign.workers > 1 and len(specs) > 1:
        with ProcessPoolExecutor(max_workers=campaign.workers) as executor:
            results = list(executor.map(evaluate_instance, repeat(campaign), specs))
    else:
        results = [evaluate_instance(campaign, spec) for spec in specs]
    for result in results:
        report.rows.extend(result.rows)
        report.errors.extend(result.errors)

    for check in checks.values():
        for instance_id, certificate in check.campaign_certificates(campaign):
            report.rows.extend(certificate_rows(instance_id, certificate))

    summary = report.summary
    logging.getLogger("Campaign").getChild("Done").info(
        "%s: %d rows, %d violations, %d monitor violations, %d errors",
        campaign.name,
        summary["rows"],
        summary["violations"],
        summary["monitorViolations"],
        len(summary["errors"]),
    )
    if write:
        report.write(campaign.output, campaign.name)
    return report
