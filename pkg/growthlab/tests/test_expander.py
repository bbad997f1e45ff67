from __future__ import annotations

from fractions import Fraction

from common.budget import BudgetExceededError
from common.exact import EpsilonRangeError
from common.prng import SplitMix64
from expander.corollaries import Corollary, DegenerateElementsError, corollary_pipeline, ratio_split_check
from expander.energy import (
    EnergyVariant,
    crossratio_energy,
    crossratio_energy_brute_force,
    crossratio_energy_check,
    energy_incidence_bridge,
    graph_size,
    pinned_multiplicities,
    pinned_value,
    plane_count,
)
from expander.images import (
    affine_image,
    f_image,
    g_image,
    g_image_by_cross_ratio,
    growth_report,
    h_image,
    h_multiplicities,
)
from expander.psi import ZeroElementError, psi_injection_engine
from fields.prime import PrimeField
from incidence.monitors import PreconditionFailedError
from projective.crossratio import cross_ratio, line_point
from projective.space import ProjMap
from setcore.energy import TooSmallError
from setcore.finite_set import FiniteSet
from setcore.operations import ZeroDilationError

from .certificate_test_base import CertificateTestBase

F7 = PrimeField(7)
F101 = PrimeField(101)


class TestImages(CertificateTestBase):
    def test_f_image_mod_seven(self):
        self.assert_set_equal(f_image(self.residues(7, 1, 2)), [2, 3, 4, 6])

    def test_f_image_of_zero(self):
        self.assert_set_equal(f_image(self.rationals(0)), [0])

    def test_f_image_of_progression(self):
        self.assert_set_equal(f_image(self.rationals(1, 2, 4)), [2, 3, 5, 4, 6, 10, 8, 12, 20])

    def test_f_image_is_at_least_a(self):
        rng = SplitMix64(5)
        for _ in range(30):
            A = self.random_set(rng, F101, rng.between(1, 12), 101)
            self.assertGreaterEqual(len(f_image(A)), len(A))

    def test_g_image_of_pair(self):
        self.assert_set_equal(g_image(self.rationals(0, 1)), [0, 1])

    def test_g_image_of_progression(self):
        image = g_image(self.rationals(0, 1, 2))
        for value in (2, Fraction(1, 2), -1):
            self.assertIn(self.Q(value), image)

    def test_g_image_is_affine_invariant(self):
        A = self.rationals(0, 1, 3, 7)
        self.assertEqual(g_image(affine_image(A, self.Q(3), self.Q(-5))), g_image(A))

    def test_affine_image_zero_dilation(self):
        with self.assertRaises(ZeroDilationError):
            affine_image(self.rationals(1, 2), self.Q(0), self.Q(1))

    def test_g_image_routes_agree(self):
        rng = SplitMix64(8)
        for field, universe in ((self.Q, 40), (F7, 7), (F101, 101)):
            for _ in range(10):
                A = self.random_set(rng, field, rng.between(2, min(7, universe)), universe)
                self.assertEqual(g_image_by_cross_ratio(A), g_image(A))

    def test_g_image_too_small(self):
        with self.assertRaises(TooSmallError):
            g_image(self.rationals(4))

    def test_h_image_of_three_points(self):
        A = self.rationals(0, 1, 2)
        self.assert_set_equal(h_image(A), [0, -1])
        self.assertEqual(sorted(h_multiplicities(A).values()), [6, 6, 6])
        self.assertEqual(h_multiplicities(A)[line_point(self.Q, None)], 6)

    def test_h_image_is_affine_invariant(self):
        image = h_image(self.rationals(0, 1, 2, 3))
        self.assertIn(self.Q(Fraction(1, 3)), image)
        self.assertEqual(h_image(self.rationals(5, 7, 9, 11)), image)

    def test_h_image_of_progressions_grows(self):
        sizes = [len(h_image(self.rationals(*range(n)))) for n in range(4, 9)]
        self.assertEqual(sizes, sorted(sizes))
        self.assertLess(sizes[0], sizes[-1])

    def test_h_image_too_small(self):
        with self.assertRaises(TooSmallError):
            h_image(self.rationals(0, 1))


class TestGrowthReport(CertificateTestBase):
    def test_geometric_progression(self):
        report = growth_report(self.rationals(1, 2, 4), "gp", seed=3)
        row = report.to_row()
        self.assertEqual(
            (row["|A|"], row["fSize"], row["gSize"], row["hSize"], row["sumSize"], row["prodSize"]),
            (3, 9, 8, 2, 6, 5),
        )
        self.assertEqual(row["family"], "gp")
        self.assertEqual(row["field"], "Q")
        self.assertEqual(row["seed"], 3)
        self.assertAlmostEqual(row["expF"], 2.0)
        self.assertAlmostEqual(report.g_constant, 9 / 8)

    def test_singleton(self):
        report = growth_report(self.rationals(1), "ap")
        self.assertIsNone(report.g_size)
        self.assertIsNone(report.h_size)
        self.assertEqual(report.exponents, (None, None, None))


class TestPsiInjection(CertificateTestBase):
    def test_singleton(self):
        A = self.rationals(1)
        engine = psi_injection_engine(A, A)
        self.assertEqual(len(engine.G), 1)
        self.assertEqual(engine.certificate.quantities["|S|"], 1)
        self.assert_certificate_holds(engine.certificate)

    def test_geometric_progression(self):
        A = self.rationals(1, 2, 4)
        engine = psi_injection_engine(A, A)
        self.assertEqual(len(engine.G), 9)
        self.assertEqual(engine.certificate.quantities["|A/B|"], 5)
        self.assertEqual(engine.certificate.quantities["|A-G B|"], 7)
        self.assertEqual(engine.certificate.bound("psi-injective").lhs, 0)
        self.assert_certificate_holds(engine.certificate)

    def test_unpopular_ratios_are_dropped(self):
        A = self.rationals(1, 2, 4, 8)
        engine = psi_injection_engine(A, A, Fraction(1, 2))
        self.assertEqual(len(engine.G), 14)
        self.assertNotIn((self.Q(1), self.Q(8)), set(engine.G.pairs()))
        self.assertNotIn((self.Q(8), self.Q(1)), set(engine.G.pairs()))
        self.assert_certificate_holds(engine.certificate)

    def test_zero_element(self):
        with self.assertRaises(ZeroElementError):
            psi_injection_engine(self.rationals(0, 1), self.rationals(1))

    def test_random_sets_mod_101(self):
        rng = SplitMix64(11)
        for _ in range(20):
            A = FiniteSet(F101, rng.sample(range(1, 101), rng.between(1, 10)))
            B = FiniteSet(F101, rng.sample(range(1, 101), rng.between(1, 10)))
            self.assert_certificate_holds(psi_injection_engine(A, B).certificate)


class TestCorollaries(CertificateTestBase):
    def test_horrific(self):
        A = self.rationals(1, 2, 4)
        certificate = corollary_pipeline(A, Corollary.HORRIFIC)
        self.assertGreaterEqual(2 * len(certificate.subset), len(A))
        self.assertEqual(certificate.quantities["|A(A+1)|"], 9)
        self.assert_certificate_holds(certificate)

    def test_horrific_singleton(self):
        certificate = corollary_pipeline(self.rationals(1), Corollary.HORRIFIC)
        for name in ("|A'|", "|A'-A'|", "|A(A+1)|", "|A/A|", "|G|"):
            self.assertEqual(certificate.quantities[name], 1)
        self.assert_certificate_holds(certificate)

    def test_energy(self):
        certificate = corollary_pipeline(self.residues(101, 1, 2, 4, 8, 16), Corollary.ENERGY)
        self.assertEqual(certificate.lemma, "corollary-energy")
        self.assert_certificate_holds(certificate)

    def test_energy_with_affine_image(self):
        A = self.rationals(3, 5, 9)
        certificate = corollary_pipeline(A, Corollary.ENERGY, affine=(self.Q(2), self.Q(1)))
        self.assertEqual(certificate.instance["x"], "2")
        self.assertEqual(certificate.quantities["|C(C+1)|"], 9)
        self.assert_certificate_holds(certificate)

    def test_energy_epsilon_range(self):
        with self.assertRaises(EpsilonRangeError):
            corollary_pipeline(self.rationals(1, 2), Corollary.ENERGY, epsilon=Fraction(1, 8))

    def test_energy_prime_on_geometric_progression(self):
        A = self.rationals(*(2**k for k in range(8)))
        certificate = corollary_pipeline(A, Corollary.ENERGY_PRIME)
        self.assertEqual(certificate.quantities["|A/A|"], 15)
        self.assertGreater(certificate.quantities["|A(A+1)|"], len(A))
        self.assert_certificate_holds(certificate)

    def test_random_sets(self):
        rng = SplitMix64(17)
        for round_number in range(9):
            A = FiniteSet(F101, rng.sample(range(1, 100), rng.between(2, 8)))
            self.assert_certificate_holds(corollary_pipeline(A, list(Corollary)[round_number % 3]))

    def test_degenerate_elements(self):
        for A in (self.rationals(0, 1), self.rationals(-1, 2), self.residues(7, 6)):
            with self.assertRaises(DegenerateElementsError):
                corollary_pipeline(A, Corollary.HORRIFIC)

    def test_degenerate_affine_image(self):
        with self.assertRaises(DegenerateElementsError):
            corollary_pipeline(self.rationals(1, 2), Corollary.ENERGY, affine=(self.Q(1), self.Q(1)))

    def test_size_limit(self):
        with self.assertRaises(BudgetExceededError):
            corollary_pipeline(self.rationals(*range(1, 66)), Corollary.HORRIFIC)


class TestRatioSplit(CertificateTestBase):
    def test_missing_ratio(self):
        certificate = ratio_split_check(self.residues(7, 0, 1))
        self.assertEqual(certificate.quantities["xi"], F7(2))
        self.assertEqual(certificate.quantities["E(A, xi A)"], 4)
        self.assert_certificate_holds(certificate)

    def test_full_ratio_set(self):
        certificate = ratio_split_check(self.residues(5, 0, 1, 2, 3))
        self.assertTrue(certificate.quantities["R(A) = F_p^*"])
        self.assert_certificate_holds(certificate)

    def test_rationals(self):
        with self.assertRaises(PreconditionFailedError):
            ratio_split_check(self.rationals(0, 1))


class TestCrossRatioEnergy(CertificateTestBase):
    def test_three_variable_pair(self):
        A = self.rationals(0, 1)
        self.assertEqual(sorted(pinned_multiplicities(A).values()), [2, 2, 2])
        self.assertEqual(crossratio_energy(A, EnergyVariant.THREE), 12)
        self.assertEqual(crossratio_energy_brute_force(A, EnergyVariant.THREE), 12)

    def test_four_variable_three_points(self):
        A = self.rationals(0, 1, 2)
        self.assertEqual(crossratio_energy(A, EnergyVariant.FOUR), 108)
        self.assertEqual(crossratio_energy_brute_force(A, EnergyVariant.FOUR), 108)

    def test_pinned_value_is_cross_ratio(self):
        A = self.rationals(0, 1, 3)
        infinity = line_point(self.Q, None)
        for a1 in A:
            for a2 in A:
                if a1 == a2:
                    continue
                for a3 in A:
                    points = (line_point(self.Q, a) for a in (a1, a2, a3))
                    self.assertEqual(pinned_value(a1, a2, a3), cross_ratio(infinity, *points))

    def test_routes_agree(self):
        rng = SplitMix64(23)
        for field, universe in ((self.Q, 20), (F7, 7), (F101, 101)):
            A = self.random_set(rng, field, 4, universe)
            for variant in EnergyVariant:
                certificate = crossratio_energy_check(A, variant)
                self.assertIn("E brute force", certificate.quantities)
                self.assert_certificate_holds(certificate)

    def test_cauchy_schwarz_without_oracle(self):
        certificate = crossratio_energy_check(self.rationals(*range(12)), EnergyVariant.THREE)
        self.assertNotIn("E brute force", certificate.quantities)
        self.assert_certificate_holds(certificate)

    def test_budget(self):
        with self.assertRaises(BudgetExceededError):
            crossratio_energy(self.rationals(*range(31)), EnergyVariant.THREE)


class TestEnergyIncidenceBridge(CertificateTestBase):
    def test_identity(self):
        A = self.rationals(0, 1, 2, 5)
        identity = ProjMap.identity(self.Q, 1)
        self.assertEqual(graph_size(A, identity), 4)
        self.assertEqual(plane_count(A, identity), 4)

    def test_translation(self):
        A = self.rationals(0, 1, 2)
        shift = ProjMap.of(self.Q, [[1, 1], [0, 1]])
        self.assertEqual(graph_size(A, shift), 2)
        self.assertEqual(plane_count(A, shift), 2)

    def test_pair(self):
        certificate = energy_incidence_bridge(self.rationals(0, 1))
        self.assertEqual(certificate.quantities["|T| three"], 2)
        self.assertEqual(certificate.quantities["sum m^3"], 16)
        self.assertEqual(certificate.quantities["E three"], 12)
        self.assertEqual(certificate.quantities["|T| four"], 0)
        self.assert_certificate_holds(certificate)

    def test_three_points(self):
        certificate = energy_incidence_bridge(self.rationals(0, 1, 2))
        self.assertEqual(certificate.quantities["|T| four"], 6)
        self.assertEqual(certificate.quantities["E four"], 108)
        self.assertEqual(certificate.quantities["sum m^4"], 486)
        self.assert_certificate_holds(certificate)

    def test_mod_seven(self):
        self.assert_certificate_holds(energy_incidence_bridge(self.residues(7, 1, 2, 4)))

    def test_budget(self):
        with self.assertRaises(BudgetExceededError):
            energy_incidence_bridge(self.rationals(*range(13)))
