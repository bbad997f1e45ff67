from __future__ import annotations

from fractions import Fraction
from typing import TYPE_CHECKING
from unittest import TestCase

from common.certificate import replay
from common.prng import SplitMix64
from fields.prime import PrimeField
from fields.rational import RationalField
from ffield.element import FunctionField
from setcore.finite_set import FiniteSet

if TYPE_CHECKING:
    from collections.abc import Iterable

    from common.certificate import Certificate
    from fields.base import Field


class CertificateTestBase(TestCase):
    """Base class with set builders and certificate assertions."""

    Q = RationalField()
    F2T = FunctionField(PrimeField(2))

    def rationals(self, *values: int | str | Fraction) -> FiniteSet:
        return FiniteSet(self.Q, values)

    def residues(self, p: int, *values: int) -> FiniteSet:
        return FiniteSet(PrimeField(p), values)

    def function_set(self, field: FunctionField, *literals: str) -> FiniteSet:
        return FiniteSet(field, literals)

    def t_powers(self, count: int, field: FunctionField | None = None) -> FiniteSet:
        """{1, t, ..., t^(count-1)}."""
        field = field or self.F2T
        return FiniteSet(field, [field.t_power(j) for j in range(count)])

    def random_set(self, rng: SplitMix64, field: Field, size: int, universe: int) -> FiniteSet:
        """Random set of residues or integers drawn from [0, universe)."""
        return FiniteSet(field, rng.sample(range(universe), size))

    def assert_set_equal(self, actual: FiniteSet, expected: Iterable[int | str | Fraction]) -> None:
        self.assertEqual(actual, FiniteSet(actual.field, expected))

    def assert_certificate_holds(self, certificate: Certificate) -> None:
        """Check every hard bound holds and the certificate replays from its JSON form."""
        failing = [bound.name for bound in certificate.bounds if bound.hard and not bound.holds]
        self.assertEqual(failing, [], f"{certificate.lemma} failed on {certificate.instance}")
        self.assertEqual(replay(certificate.to_json()), [])
