"""Growth scans: exact image, sumset and product set sizes of one family across a range of sizes."""
from __future__ import annotations

import logging
from statistics import median
from typing import TYPE_CHECKING, Any

from common.budget import check_budget
from common.prng import SplitMix64
from expander.images import growth_report
from growthlab.settings import ELEKES_EXPONENT, F_EXPONENT_GAIN
from harness.generators import SpecInvalidError, generate
from harness.report import Report, is_true
from setcore.finite_set import FiniteSet

if TYPE_CHECKING:
    from collections.abc import Iterable

    from fields.base import Field
    from harness.generators import Family

GROWTH_HEADER = (
    "family",
    "field",
    "|A|",
    "seed",
    "sumSize",
    "prodSize",
    "fSize",
    "gSize",
    "hSize",
    "expF",
    "expG",
    "expH",
    "elekesLhs",
    "elekesRhs",
    "elekesHolds",
)


def _elekes_sides(row: dict[str, Any]) -> tuple[int, int]:
    """|A|^a <= max(|A+A|, |AA|)^b where a / b is the Elekes exponent."""
    larger = max(int(row["sumSize"]), int(row["prodSize"]))
    return int(row["|A|"]) ** ELEKES_EXPONENT.numerator, larger**ELEKES_EXPONENT.denominator


def growth_row(A: FiniteSet, family: str, seed: int) -> dict[str, Any]:
    row = growth_report(A, family, seed).to_row()
    lhs, rhs = _elekes_sides(row)
    row |= {"elekesLhs": lhs, "elekesRhs": rhs, "elekesHolds": lhs <= rhs}
    if lhs > rhs:
        logging.getLogger("Monitor").getChild("Violation").info(
            "Elekes exponent on %s of size %d with seed %d: %d > %d", family, len(A), seed, lhs, rhs,
        )
    return row


def _statistics(values: Iterable[object]) -> dict[str, float | None]:
    present = [float(value) for value in values if value is not None and value != ""]
    if not present:
        return {"median": None, "min": None}
    return {"median": median(present), "min": min(present)}


def summarize_growth(rows: list[dict[str, Any]], errors: list[str]) -> dict[str, Any]:
    """Exponent statistics of a scan. Every entry is a monitor, so a scan never has violations."""
    exponents = {name: _statistics(row[name] for row in rows) for name in ("expF", "expG", "expH")}
    f_target = 1 + float(F_EXPONENT_GAIN)
    f_values = [float(row["expF"]) for row in rows if row["expF"] not in (None, "")]
    f_median = exponents["expF"]["median"]
    return {
        "rows": len(rows),
        "violations": 0,
        "errors": list(errors),
        "exponents": exponents,
        "elekesViolations": sum(1 for row in rows if not is_true(row["elekesHolds"])),
        "fExponentBelowOne": sum(1 for value in f_values if value <= 1),
        "fMedianAboveTarget": f_median is not None and f_median > f_target,
    }


def growth_scan(family: Family, field: Field, sizes: Iterable[int], seed: int) -> Report:
    """Measure f(A), g(A), h(A), A + A and AA for one seeded set of each size.

    Raises:
        BudgetExceededError: If a size would need more than the enumeration budget
        SpecInvalidError: If the family does not produce sets
    """
    sizes = list(sizes)
    for size in sizes:
        check_budget(size**4, f"Growth scan of size {size}")
    rng = SplitMix64(seed)
    report = Report(GROWTH_HEADER, summarize_growth)
    for size in sizes:
        instance_seed = rng.next_u64()
        A = generate(family, field, size, instance_seed)
        if not isinstance(A, FiniteSet):
            error_message = f"Growth scans need a family of sets, {family} builds incidence instances"
            raise SpecInvalidError(error_message)
        report.rows.append(growth_row(A, str(family), instance_seed))
    logging.getLogger("Growth").getChild("Done").info(
        "%s over %s: %d sizes, %d Elekes monitor violations",
        family,
        field.tag,
        len(sizes),
        report.summary["elekesViolations"],
    )
    return report
