from __future__ import annotations

from collections import Counter
from fractions import Fraction

from common.budget import BudgetExceededError
from common.prng import SplitMix64
from fields.prime import PrimeField
from setcore.energy import (
    EnergyKind,
    TooSmallError,
    energy,
    energy_by_intersections,
    energy_by_translates,
    energy_identities_check,
    graph_energy,
    graph_energy_by_representations,
    kfold_energy,
    ratio_of_differences,
    sumset_lower_bound_check,
    xi_energy,
)
from setcore.finite_set import EmptyInputError, FiniteSet
from setcore.operations import (
    SetOperation,
    TranslateMode,
    ZeroDilationError,
    ZeroDivisorEdgeError,
    iterated_sumset,
    multiplicity,
    pairwise_set,
    partial_pairwise_set,
    translate_dilate,
)
from setcore.pair_graph import EdgeIndexError, PairGraph

from .certificate_test_base import CertificateTestBase


class TestPairwiseSets(CertificateTestBase):
    def test_sumset_of_progression(self):
        A = self.rationals(1, 2, 3)
        self.assert_set_equal(pairwise_set(A, A, SetOperation.SUM), [2, 3, 4, 5, 6])

    def test_product_set_mod_five(self):
        A = self.residues(5, 0, 1, 2)
        self.assert_set_equal(pairwise_set(A, A, SetOperation.PROD), [0, 1, 2, 4])

    def test_ratio_set(self):
        A = self.rationals(1, 2)
        self.assert_set_equal(pairwise_set(A, A, SetOperation.RATIO), ["1/2", 1, 2])

    def test_ratio_drops_zero(self):
        A = self.rationals(0, 1)
        self.assert_set_equal(pairwise_set(A, A, SetOperation.RATIO), [0, 1])

    def test_empty_input(self):
        with self.assertRaises(EmptyInputError):
            pairwise_set(self.rationals(), self.rationals(1), SetOperation.SUM)

    def test_bitset_agrees_with_direct_route(self):
        rng = SplitMix64(11)
        f101 = PrimeField(101)
        for _ in range(20):
            A = self.random_set(rng, f101, 12, 101)
            B = self.random_set(rng, f101, 9, 101)
            for op in (SetOperation.SUM, SetOperation.DIFF):
                direct = FiniteSet(f101, [a + b if op is SetOperation.SUM else a - b for a in A for b in B])
                self.assertEqual(pairwise_set(A, B, op), direct)

    def test_set_literal(self):
        A = FiniteSet.parse("Fp(101){1,2,3}")
        self.assertEqual(A, self.residues(101, 1, 2, 3))
        self.assertEqual(str(A), "Fp(101){1,2,3}")
        self.assertEqual(FiniteSet.parse(str(self.t_powers(3))), self.t_powers(3))


class TestPartialSets(CertificateTestBase):
    def test_complete_graph_matches_pairwise_set(self):
        A = self.rationals(0, 1, 5)
        B = self.rationals(2, 3)
        G = PairGraph.complete(A, B)
        for op in SetOperation:
            self.assertEqual(partial_pairwise_set(G, op), pairwise_set(A, B, op))

    def test_singleton_graph(self):
        A = self.rationals(1, 2)
        G = PairGraph(A, A, [(0, 0)])
        self.assert_set_equal(partial_pairwise_set(G, SetOperation.SUM), [2])

    def test_two_edge_differences(self):
        A = self.rationals(0, 1)
        G = PairGraph(A, A, [(0, 1), (1, 0)])
        self.assert_set_equal(partial_pairwise_set(G, SetOperation.DIFF), [-1, 1])

    def test_ratio_edge_at_zero(self):
        A = self.rationals(0, 1)
        G = PairGraph(A, A, [(1, 0)])
        with self.assertRaises(ZeroDivisorEdgeError):
            partial_pairwise_set(G, SetOperation.RATIO)

    def test_edge_out_of_range(self):
        A = self.rationals(0, 1)
        with self.assertRaises(EdgeIndexError):
            PairGraph(A, A, [(2, 0)])

    def test_graph_json(self):
        A = self.rationals(0, "1/2")
        G = PairGraph(A, A, [(0, 1), (1, 1)])
        self.assertEqual(PairGraph.from_json(G.to_json(), self.Q), G)


class TestIteratedSumsets(CertificateTestBase):
    def test_interval(self):
        self.assert_set_equal(iterated_sumset(self.rationals(0, 1), 3), [0, 1, 2, 3])

    def test_t_powers_in_characteristic_two(self):
        self.assert_set_equal(iterated_sumset(self.t_powers(3), 2), ["0", "1+t", "1+t^2", "t+t^2"])

    def test_zero(self):
        for k in (1, 2, 5):
            self.assert_set_equal(iterated_sumset(self.rationals(0), k), [0])


class TestTranslateDilate(CertificateTestBase):
    def test_translate(self):
        self.assert_set_equal(translate_dilate(self.rationals(1, 2), self.Q(3), TranslateMode.TRANSLATE), [4, 5])

    def test_dilate(self):
        f5 = PrimeField(5)
        self.assert_set_equal(translate_dilate(self.residues(5, 1, 2), f5(2), TranslateMode.DILATE), [2, 4])

    def test_zero_dilation(self):
        with self.assertRaises(ZeroDilationError):
            translate_dilate(self.rationals(1, 2), self.Q(0), TranslateMode.DILATE)


class TestMultiplicity(CertificateTestBase):
    def test_complete_sum(self):
        A = self.rationals(0, 1)
        counts = multiplicity(PairGraph.complete(A, A), SetOperation.SUM)
        self.assertEqual(counts, Counter({self.Q(0): 1, self.Q(1): 2, self.Q(2): 1}))

    def test_singleton(self):
        A = self.rationals(3)
        self.assertEqual(multiplicity(PairGraph.complete(A, A), SetOperation.PROD), Counter({self.Q(9): 1}))

    def test_products_of_powers_of_two(self):
        A = self.rationals(1, 2, 4)
        counts = multiplicity(PairGraph.complete(A, A), SetOperation.PROD)
        self.assertEqual({int(x.value): c for x, c in counts.items()}, {1: 1, 2: 2, 4: 3, 8: 2, 16: 1})
        self.assertEqual(sum(counts.values()), 9)


class TestEnergy(CertificateTestBase):
    def test_two_point_energy(self):
        A = self.rationals(0, 1)
        self.assertEqual(energy(A, A, EnergyKind.ADDITIVE), 6)

    def test_multiplicative_energy(self):
        A = self.rationals(1, 2, 4)
        self.assertEqual(energy(A, A, EnergyKind.MULTIPLICATIVE), 19)

    def test_singletons(self):
        self.assertEqual(energy(self.rationals(5), self.rationals(7), EnergyKind.ADDITIVE), 1)

    def test_graph_energy(self):
        A = self.rationals(0, 1, 2)
        self.assertEqual(graph_energy(PairGraph.complete(A, A), EnergyKind.ADDITIVE), energy(A, A, EnergyKind.ADDITIVE))
        self.assertEqual(graph_energy(PairGraph(A, A, [(1, 2)]), EnergyKind.ADDITIVE), 1)
        self.assertEqual(graph_energy(PairGraph(A, A, [(0, 0), (1, 1), (2, 2)]), EnergyKind.ADDITIVE), 3)

    def test_energy_identities(self):
        rng = SplitMix64(2024)
        fields = [PrimeField(7), PrimeField(101), self.Q]
        for round_number in range(30):
            field = fields[round_number % 3]
            universe = 7 if field == PrimeField(7) else 40
            A = self.random_set(rng, field, rng.between(1, 7), universe)
            B = self.random_set(rng, field, rng.between(1, 7), universe)
            expected = energy(A, B, EnergyKind.ADDITIVE)
            self.assertEqual(energy_by_translates(A, B), expected)
            self.assertEqual(energy_by_intersections(A, B), expected)
            self.assertEqual(energy(A, -B, EnergyKind.ADDITIVE), expected)
            edges = [(i, j) for i in range(len(A)) for j in range(len(B)) if rng.chance(2, 3)]
            G = PairGraph(A, B, edges)
            self.assertEqual(graph_energy(G, EnergyKind.ADDITIVE), graph_energy_by_representations(G))
            if G:
                # energy(A, B) >= E(G) >= |G|^2 / |A +G B|
                partial_size = len(partial_pairwise_set(G, SetOperation.SUM))
                self.assertGreaterEqual(expected, graph_energy(G, EnergyKind.ADDITIVE))
                self.assertGreaterEqual(graph_energy(G, EnergyKind.ADDITIVE) * partial_size, len(G) ** 2)
            self.assertLessEqual(len(A) * len(B), expected)
            self.assertLessEqual(expected, len(A) ** 2 * len(B))
            sumset = pairwise_set(A, B, SetOperation.SUM)
            self.assertLessEqual(max(len(A), len(B)), len(sumset))
            self.assertLessEqual(len(sumset), len(A) * len(B))

    def test_multiplicative_energy_lower_bound(self):
        rng = SplitMix64(5)
        for _ in range(20):
            A = self.random_set(rng, PrimeField(101), rng.between(1, 10), 101)
            products = pairwise_set(A, A, SetOperation.PROD)
            self.assertGreaterEqual(energy(A, A, EnergyKind.MULTIPLICATIVE) * len(products), len(A) ** 4)

    def test_identity_certificates(self):
        rng = SplitMix64(77)
        for field in (PrimeField(7), PrimeField(101), self.Q):
            universe = 7 if field == PrimeField(7) else 30
            A = self.random_set(rng, field, rng.between(2, 6), universe)
            B = self.random_set(rng, field, rng.between(2, 6), universe)
            G = PairGraph(A, B, [(i, j) for i in range(len(A)) for j in range(len(B)) if (i + j) % 3])
            certificate = energy_identities_check(G)
            self.assert_certificate_holds(certificate)
            self.assertEqual(certificate.quantities["E(A,B)"], energy(A, B, EnergyKind.ADDITIVE))

    def test_cauchy_schwarz_certificate(self):
        certificate = sumset_lower_bound_check(self.rationals(1, 2, 3), EnergyKind.ADDITIVE)
        self.assertEqual(certificate.quantities["E(A)"], 19)
        bound = certificate.bound("additive-energy")
        self.assertEqual((bound.lhs, bound.rhs), (81, 95))
        powers = self.residues(101, 1, 2, 4, 8)
        self.assert_certificate_holds(sumset_lower_bound_check(powers, EnergyKind.MULTIPLICATIVE))


class TestKFoldEnergy(CertificateTestBase):
    def test_t_powers(self):
        self.assertEqual(kfold_energy(self.t_powers(3), 2), (21, 0))

    def test_singleton(self):
        self.assertEqual(kfold_energy(self.rationals(4), 2), (1, 0))

    def test_sidon_set(self):
        self.assertEqual(kfold_energy(self.rationals(0, 1, 3), 2), (15, 0))

    def test_progression_has_nontrivial_solutions(self):
        # 0 + 2 = 1 + 1 is not a rearrangement
        total, nontrivial = kfold_energy(self.rationals(0, 1, 2), 2)
        self.assertEqual(total, 19)
        self.assertGreater(nontrivial, 0)

    def test_budget(self):
        with self.assertRaises(BudgetExceededError):
            kfold_energy(self.rationals(*range(30)), 3)


class TestRatioOfDifferences(CertificateTestBase):
    def test_two_points(self):
        self.assert_set_equal(ratio_of_differences(self.rationals(0, 1)), [1, -1])

    def test_two_points_mod_five(self):
        self.assert_set_equal(ratio_of_differences(self.residues(5, 0, 1)), [1, 4])

    def test_three_points(self):
        magnitudes = ((1, 1), (2, 1), (3, 1), (1, 2), (1, 3), (2, 3), (3, 2))
        expected = [Fraction(sign * n, d) for n, d in magnitudes for sign in (1, -1)]
        self.assert_set_equal(ratio_of_differences(self.rationals(0, 1, 3)), expected)

    def test_too_small(self):
        with self.assertRaises(TooSmallError):
            ratio_of_differences(self.rationals(1))


class TestXiEnergy(CertificateTestBase):
    def test_unit_dilation(self):
        self.assertEqual(xi_energy(self.rationals(0, 1), self.Q(1)), 6)

    def test_singleton(self):
        self.assertEqual(xi_energy(self.rationals(3), self.Q(7)), 1)

    def test_dilation_by_two(self):
        self.assertEqual(xi_energy(self.rationals(0, 1), self.Q(2)), 4)

    def test_zero(self):
        with self.assertRaises(ZeroDilationError):
            xi_energy(self.rationals(0, 1), self.Q(0))
