"""Certificates that carry an extracted subset or a cover."""
from __future__ import annotations

from dataclasses import dataclass
from enum import StrEnum
from typing import TYPE_CHECKING, Any

from common.certificate import Certificate
from typing_extensions import override

if TYPE_CHECKING:
    from setcore.finite_set import FiniteSet


class CoverDirection(StrEnum):
    PLUS = "+B"
    MINUS = "-B"
    DIFFERENCE = "B-B"


@dataclass
class ExtractionCertificate(Certificate):
    """Certificate for a procedure that returns a subset A' of its input."""

    subset: FiniteSet | None = None

    @override
    def to_json(self) -> dict[str, Any]:
        data = super().to_json()
        data["subset"] = self.subset.to_json() if self.subset is not None else None
        return data


@dataclass
class CoverCertificate(Certificate):
    """Certificate that covered_subset lies in the union of center + transland over all centers.

    transland already carries the sign of the direction, so a cover by translates of -B stores -B.
    """

    centers: FiniteSet | None = None
    covered_subset: FiniteSet | None = None
    transland: FiniteSet | None = None
    direction: CoverDirection = CoverDirection.PLUS

    def uncovered(self) -> list[str]:
        """Elements of covered_subset outside every translate, formatted."""
        if self.centers is None or self.covered_subset is None or self.transland is None:
            return []
        union = {center + shift for center in self.centers for shift in self.transland}
        return [str(element) for element in self.covered_subset if element not in union]

    def verify_cover(self) -> None:
        """Add the set inclusion check as a hard bound on the number of uncovered elements."""
        missed = self.uncovered()
        if missed:
            self.record("uncovered", missed)
        self.check("cover-inclusion", len(missed), 0)

    @override
    def to_json(self) -> dict[str, Any]:
        data = super().to_json()
        data["direction"] = str(self.direction)
        for key, value in (
            ("centers", self.centers),
            ("coveredSubset", self.covered_subset),
            ("transland", self.transland),
        ):
            data[key] = value.to_json() if value is not None else None
        return data
