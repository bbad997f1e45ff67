"""Certificates produced by every check.

A certificate stores the instance, the exact quantities measured on it and a list of bounds. Every bound is an integer
inequality lhs <= rhs after cross multiplication, so re-evaluating a certificate never needs rounding.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from math import lcm
from typing import TYPE_CHECKING, Any

from json_file import JSONFile

if TYPE_CHECKING:
    from paved_path import PavedPath


@dataclass
class Bound:
    """A single inequality lhs <= rhs.

    Hard bounds are exact invariants and decide whether a certificate holds. Soft bounds are monitors that are
    reported but never fail a run.
    """

    name: str
    lhs: int | Fraction
    rhs: int | Fraction
    hard: bool = True
    constants_suppressed: bool = False

    def __post_init__(self) -> None:
        """Clear denominators so both sides are integers."""
        lhs = Fraction(self.lhs)
        rhs = Fraction(self.rhs)
        scale = lcm(lhs.denominator, rhs.denominator)
        self.lhs = int(lhs * scale)
        self.rhs = int(rhs * scale)

    @classmethod
    def sqrt_form(cls, name: str, deficit: int, factor: Fraction, scale: int, *, hard: bool = True) -> Bound:
        """Bound for deficit <= sqrt(factor) * scale, compared after squaring.

        Args:
            name: Name of the bound.
            deficit: Left hand side, any integer.
            factor: Nonnegative rational under the square root.
            scale: Nonnegative integer multiplying the square root.
            hard: Whether the bound is an invariant.
        """
        if deficit <= 0:
            return cls(name, deficit, 0, hard=hard)
        return cls(name, deficit * deficit * factor.denominator, factor.numerator * scale * scale, hard=hard)

    @property
    def holds(self) -> bool:
        return self.lhs <= self.rhs

    @property
    def ratio(self) -> float:
        """Return lhs / rhs, with 0/0 read as 1."""
        if self.rhs == 0:
            return 1.0 if self.lhs == 0 else float("inf")
        return int(self.lhs) / int(self.rhs)

    def to_json(self) -> dict[str, Any]:
        return {
            "name": self.name,
            "lhs": str(self.lhs),
            "rhs": str(self.rhs),
            "hard": self.hard,
            "constantsSuppressed": self.constants_suppressed,
            "holds": self.holds,
        }

    @classmethod
    def from_json(cls, data: dict[str, Any]) -> Bound:
        return cls(
            data["name"],
            int(data["lhs"]),
            int(data["rhs"]),
            hard=data["hard"],
            constants_suppressed=data.get("constantsSuppressed", False),
        )


def _json_value(value: object) -> object:
    """Convert a recorded quantity to something json can store."""
    if isinstance(value, Fraction):
        return str(value)
    if isinstance(value, bool | int | float | str) or value is None:
        return value
    if isinstance(value, dict):
        return {str(key): _json_value(item) for key, item in value.items()}
    if isinstance(value, list | tuple | set | frozenset):
        return [_json_value(item) for item in value]
    return str(value)


@dataclass
class Certificate:
    """Self verifying record of one check on one instance."""

    lemma: str
    instance: dict[str, Any] = field(default_factory=dict)
    quantities: dict[str, Any] = field(default_factory=dict)
    bounds: list[Bound] = field(default_factory=list)

    def record(self, name: str, value: object) -> None:
        self.quantities[name] = value

    def add_bound(self, bound: Bound) -> Bound:
        self.bounds.append(bound)
        return bound

    def check(self, name: str, lhs: int | Fraction, rhs: int | Fraction) -> Bound:
        """Add a hard bound lhs <= rhs."""
        return self.add_bound(Bound(name, lhs, rhs))

    def monitor(self, name: str, lhs: int | Fraction, rhs: int | Fraction, *, suppressed: bool = True) -> Bound:
        """Add a monitor bound lhs <= rhs that is reported but never fails the certificate."""
        return self.add_bound(Bound(name, lhs, rhs, hard=False, constants_suppressed=suppressed))

    def absorb(self, prefix: str, other: Certificate) -> None:
        """Copy the quantities and bounds of a step certificate, prefixing their names."""
        for name, value in other.quantities.items():
            self.record(f"{prefix} {name}", value)
        for bound in other.bounds:
            self.add_bound(
                Bound(
                    f"{prefix} {bound.name}",
                    bound.lhs,
                    bound.rhs,
                    hard=bound.hard,
                    constants_suppressed=bound.constants_suppressed,
                ),
            )

    @property
    def holds(self) -> bool:
        return all(bound.holds for bound in self.bounds if bound.hard)

    @property
    def constants_suppressed(self) -> bool:
        return any(bound.constants_suppressed for bound in self.bounds)

    def bound(self, name: str) -> Bound:
        """Return the bound with the given name.

        Raises:
            KeyError: If no bound has that name
        """
        for bound in self.bounds:
            if bound.name == name:
                return bound
        error_message = f"No bound named {name} in {self.lemma}"
        raise KeyError(error_message)

    def to_json(self) -> dict[str, Any]:
        return {
            "lemma": self.lemma,
            "instance": _json_value(self.instance),
            "quantities": _json_value(self.quantities),
            "bounds": [bound.to_json() for bound in self.bounds],
            "holds": self.holds,
        }

    @classmethod
    def from_json(cls, data: dict[str, Any]) -> Certificate:
        return cls(
            data["lemma"],
            data.get("instance", {}),
            data.get("quantities", {}),
            [Bound.from_json(bound) for bound in data.get("bounds", [])],
        )

    def write(self, path: PavedPath) -> None:
        """Write the certificate as JSON."""
        JSONFile(path).write(json.dumps(self.to_json(), indent=2))


def replay(data: dict[str, Any]) -> list[str]:
    """Re-verify a stored certificate.

    Args:
        data: A certificate as written by Certificate.to_json.

    Returns:
        The names of every stored flag that disagrees with the recomputed value, empty when the certificate replays.
    """
    certificate = Certificate.from_json(data)
    mismatches = [
        stored["name"]
        for stored, bound in zip(data.get("bounds", []), certificate.bounds, strict=True)
        if stored.get("holds") != bound.holds
    ]
    if data.get("holds") != certificate.holds:
        mismatches.append("holds")
    if not certificate.holds:
        mismatches.append("hard bound violated")
    return mismatches
