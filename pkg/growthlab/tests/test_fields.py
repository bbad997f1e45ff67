from __future__ import annotations

from fractions import Fraction
from itertools import islice

from common.literals import LiteralSyntaxError
from fields.base import FieldDivisionByZeroError, FieldMismatchError, FieldOperation, field_ops
from fields.extension import ExtField, ReducibleModulusError, irreducible_poly
from fields.parsing import parse_field
from fields.polynomial import Polynomial
from fields.prime import GeneratorRangeError, InvalidModulusError, PrimeField, find_generator, prime_factors
from fields.rational import RationalField
from ffield.element import FunctionField, parse_ff_literal

from .certificate_test_base import CertificateTestBase


class TestFieldOps(CertificateTestBase):
    def test_prime_field_addition(self):
        f5 = PrimeField(5)
        self.assertEqual(field_ops(f5(3), f5(4), FieldOperation.ADD), f5(2))

    def test_prime_field_division(self):
        f5 = PrimeField(5)
        self.assertEqual(field_ops(f5(2), f5(3), FieldOperation.DIV), f5(4))

    def test_rational_addition(self):
        self.assertEqual(field_ops(self.Q("1/2"), self.Q("1/3"), FieldOperation.ADD), self.Q("5/6"))

    def test_division_by_zero(self):
        f5 = PrimeField(5)
        with self.assertRaises(FieldDivisionByZeroError):
            field_ops(f5(1), f5(0), FieldOperation.DIV)
        with self.assertRaises(FieldDivisionByZeroError):
            self.Q(1) / 0

    def test_field_mismatch(self):
        with self.assertRaises(FieldMismatchError):
            field_ops(PrimeField(5)(1), PrimeField(7)(1), FieldOperation.ADD)

    def test_composite_modulus_rejected(self):
        with self.assertRaises(InvalidModulusError):
            PrimeField(91)

    def test_large_prime_accepted(self):
        p = 2**61 - 1
        f = PrimeField(p)
        self.assertEqual(f(p - 1) * f(p - 1), f(1))

    def test_inverse_exhaustive(self):
        fields = [PrimeField(p) for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31)]
        fields += [ExtField.of(2, 2), ExtField.of(2, 3), ExtField.of(2, 4), ExtField.of(3, 2), ExtField.of(3, 3)]
        for field in fields:
            one = field.one()
            for x in field.elements():
                if not x.is_zero:
                    self.assertEqual(x * field_ops(one, x, FieldOperation.DIV), one, f"{x} in {field.tag}")

    def test_canonical_idempotent(self):
        f9 = ExtField.of(3, 2)
        for x in f9.elements():
            self.assertEqual(f9.canonical(x.value), x.value)
        for x in islice(self.Q.elements(), 50):
            self.assertEqual(self.Q.canonical(x.value), x.value)
        self.assertEqual(PrimeField(7).canonical(-1), 6)

    def test_rational_enumeration_order(self):
        first = [x.value for x in islice(self.Q.elements(), 7)]
        self.assertEqual(first, [0, 1, -1, 2, -2, Fraction(1, 2), Fraction(-1, 2)])


class TestGenerators(CertificateTestBase):
    def test_small_generators(self):
        self.assertEqual(find_generator(PrimeField(5)), PrimeField(5)(2))
        self.assertEqual(find_generator(PrimeField(7)), PrimeField(7)(3))

    def test_p_two_rejected(self):
        with self.assertRaises(GeneratorRangeError):
            find_generator(PrimeField(2))

    def test_generator_has_full_order(self):
        for p in (3, 11, 101, 1009, 7919):
            g = find_generator(PrimeField(p))
            for prime in prime_factors(p - 1):
                self.assertNotEqual(g ** ((p - 1) // prime), PrimeField(p).one())


class TestIrreducible(CertificateTestBase):
    def test_degree_one(self):
        self.assertEqual(irreducible_poly(2, 1).coefficients, (0, 1))

    def test_f4_modulus(self):
        self.assertEqual(irreducible_poly(2, 2).coefficients, (1, 1, 1))

    def test_f9_modulus(self):
        self.assertEqual(irreducible_poly(3, 2).coefficients, (1, 0, 1))

    def test_reducible_modulus_rejected(self):
        with self.assertRaises(ReducibleModulusError):
            ExtField.of(2, 2, Polynomial.of(PrimeField(2), [1, 0, 1]))

    def test_extension_arithmetic(self):
        f4 = ExtField.of(2, 2)
        x = f4("x")
        self.assertEqual(x * x, f4("x+1"))
        self.assertEqual(x**3, f4.one())
        self.assertEqual(f4.order, 4)


class TestLiterals(CertificateTestBase):
    def test_field_literals(self):
        self.assertEqual(parse_field("Fp(101)"), PrimeField(101))
        self.assertEqual(parse_field("Fp:101"), PrimeField(101))
        self.assertEqual(parse_field("Q"), RationalField())
        self.assertEqual(parse_field("Fq(2,2;x^2+x+1)"), ExtField.of(2, 2))
        self.assertEqual(parse_field("Fq:3:2"), ExtField.of(3, 2))
        self.assertEqual(parse_field("Fq(t;2)"), FunctionField(PrimeField(2)))
        self.assertEqual(parse_field("Fqt:3:2"), FunctionField(ExtField.of(3, 2)))

    def test_tags_round_trip(self):
        for field in (PrimeField(7), RationalField(), ExtField.of(2, 3), FunctionField(PrimeField(3))):
            self.assertEqual(parse_field(field.tag), field)

    def test_unknown_literal(self):
        with self.assertRaises(LiteralSyntaxError):
            parse_field("R")

    def test_rational_function_literal(self):
        x = parse_ff_literal("(t^2+1)/(t+1) @ Fq(2)")
        # t^2 + 1 = (t + 1)^2 in characteristic 2
        self.assertEqual(x, self.F2T("t+1"))
        self.assertEqual(str(self.F2T("1/t")), "(1)/(t)")

    def test_function_field_arithmetic(self):
        t = self.F2T.t_power(1)
        self.assertEqual(t * (1 / t), self.F2T.one())
        self.assertEqual(t + t, self.F2T.zero())
        self.assertEqual((t + 1) * (t + 1), self.F2T("t^2+1"))

    def test_element_literals(self):
        self.assertEqual(PrimeField(5)("1/2"), PrimeField(5)(3))
        self.assertEqual(self.Q("-3/6"), self.Q(Fraction(-1, 2)))
        f9 = ExtField.of(3, 2)
        self.assertEqual(str(f9("2x+1")), "2x+1")
