"""Campaign and growth reports: rows written as CSV and a summary written as JSON.

The summary of a report is always computed from its rows, so a CSV file is enough to rebuild it.
"""
from __future__ import annotations

import csv
import io
import json
import logging
from collections import defaultdict
from dataclasses import dataclass, field
from statistics import median
from typing import TYPE_CHECKING, Any

from json_file import JSONFile
from paved_path import PavedPath

if TYPE_CHECKING:
    from collections.abc import Callable, Iterable

    from common.certificate import Certificate

BOUND_HEADER = ("instanceId", "lemma", "bound", "hard", "lhs", "rhs", "ratio", "holds", "constantsSuppressed")


class CampaignIOError(Exception):
    """Exception raised when a campaign file, fixture or report cannot be read or written."""


def certificate_rows(instance_id: str, certificate: Certificate) -> list[dict[str, Any]]:
    """One row per bound of the certificate, logging every bound that fails."""
    rows: list[dict[str, Any]] = []
    for bound in certificate.bounds:
        if not bound.holds:
            logger = logging.getLogger("Error").getChild("Hard Violation") if bound.hard else logging.getLogger(
                "Monitor",
            ).getChild("Violation")
            logger.info("%s %s %s with ratio %.4f", instance_id, certificate.lemma, bound.name, bound.ratio)
        rows.append(
            {
                "instanceId": instance_id,
                "lemma": certificate.lemma,
                "bound": bound.name,
                "hard": bound.hard,
                "lhs": bound.lhs,
                "rhs": bound.rhs,
                "ratio": bound.ratio,
                "holds": bound.holds,
                "constantsSuppressed": bound.constants_suppressed,
            },
        )
    return rows


def is_true(value: object) -> bool:
    """Read a flag from a row, whether it was built in memory or read back from CSV."""
    return value is True or value == "True"


def _median(values: list[float]) -> float | None:
    finite = [value for value in values if value != float("inf")]
    return median(finite) if finite else None


def summarize_bounds(rows: Iterable[dict[str, Any]], errors: Iterable[str] = ()) -> dict[str, Any]:
    """Violation counts and ratio medians, overall and per lemma."""
    rows = list(rows)
    lemmas: defaultdict[str, dict[str, Any]] = defaultdict(
        lambda: {"rows": 0, "violations": 0, "monitorViolations": 0, "ratios": defaultdict(list)},
    )
    for row in rows:
        entry = lemmas[row["lemma"]]
        entry["rows"] += 1
        holds = int(row["lhs"]) <= int(row["rhs"])
        if not holds:
            entry["violations" if is_true(row["hard"]) else "monitorViolations"] += 1
        entry["ratios"][row["bound"]].append(float(row["ratio"]))
    for entry in lemmas.values():
        entry["ratioMedians"] = {name: _median(ratios) for name, ratios in sorted(entry.pop("ratios").items())}
    return {
        "rows": len(rows),
        "violations": sum(entry["violations"] for entry in lemmas.values()),
        "monitorViolations": sum(entry["monitorViolations"] for entry in lemmas.values()),
        "errors": list(errors),
        "lemmas": dict(sorted(lemmas.items())),
    }


def _cell(value: object) -> object:
    if isinstance(value, float):
        return f"{value:.6f}"
    if value is None:
        return ""
    return value


@dataclass
class Report:
    header: tuple[str, ...]
    summarize: Callable[[list[dict[str, Any]], list[str]], dict[str, Any]]
    rows: list[dict[str, Any]] = field(default_factory=list)
    errors: list[str] = field(default_factory=list)

    @property
    def summary(self) -> dict[str, Any]:
        return self.summarize(self.rows, self.errors)

    @property
    def exit_code(self) -> int:
        """2 when a check raised, 1 when a hard bound failed and 0 otherwise."""
        if self.errors:
            return 2
        return 1 if self.summary.get("violations") else 0

    def csv_text(self) -> str:
        buffer = io.StringIO()
        writer = csv.DictWriter(buffer, fieldnames=self.header, lineterminator="\n")
        writer.writeheader()
        for row in self.rows:
            writer.writerow({key: _cell(row.get(key)) for key in self.header})
        return buffer.getvalue()

    def write(self, directory: PavedPath, stem: str) -> tuple[PavedPath, JSONFile]:
        """Write stem.csv and stem.json into the directory.

        Raises:
            CampaignIOError: If a file cannot be written
        """
        csv_file = PavedPath(directory, f"{stem}.csv")
        json_file = JSONFile(directory, f"{stem}.json")
        try:
            directory.mkdir(parents=True, exist_ok=True)
            csv_file.write(self.csv_text())
            json_file.write(json.dumps(self.summary, indent=2, sort_keys=True))
        except OSError as error:
            error_message = f"Could not write the report to {directory}: {error}"
            raise CampaignIOError(error_message) from error
        logging.getLogger("Campaign").getChild("Report").info("%s, %s", csv_file, json_file)
        return csv_file, json_file
