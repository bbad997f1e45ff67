from __future__ import annotations

from fractions import Fraction

from calculus.bsg import (
    DensityTooLowError,
    NotInLeftSetError,
    ZeroInRightError,
    bsg_dense,
    bsg_sparse,
    bsg_sumproduct,
    joint_degree,
)
from calculus.covers import cover_ruzsa, cover_shen, cover_variation1, cover_variation2
from calculus.plunnecke import (
    SubsetBudgetExceededError,
    katz_shen_subset,
    petridis_extension_check,
    petridis_min_ratio_subset,
    plunnecke_check,
    ruzsa_triangle_check,
)
from common.exact import EpsilonRangeError
from common.prng import SplitMix64
from fields.prime import PrimeField
from setcore.operations import InvalidCountError
from setcore.pair_graph import PairGraph

from .certificate_test_base import CertificateTestBase


class TestRuzsaTriangle(CertificateTestBase):
    def test_small_sets(self):
        certificate = ruzsa_triangle_check(self.rationals(0, 1), self.rationals(0, 2), self.rationals(0, 1))
        bound = certificate.bound("triangle")
        self.assertEqual((bound.lhs, bound.rhs), (8, 12))
        self.assert_certificate_holds(certificate)

    def test_singletons(self):
        A = self.rationals(3)
        bound = ruzsa_triangle_check(A, A, A).bound("triangle")
        self.assertEqual((bound.lhs, bound.rhs), (1, 1))

    def test_progression(self):
        A = self.rationals(*range(5))
        bound = ruzsa_triangle_check(A, A, A).bound("triangle")
        self.assertEqual((bound.lhs, bound.rhs), (45, 81))

    def test_random_triples(self):
        rng = SplitMix64(3)
        fields = [(PrimeField(7), 7), (PrimeField(101), 101), (self.Q, 30)]
        for round_number in range(150):
            field, universe = fields[round_number % 3]
            A, B, C = (self.random_set(rng, field, rng.between(1, 7), universe) for _ in range(3))
            self.assert_certificate_holds(ruzsa_triangle_check(A, B, C))


class TestPetridis(CertificateTestBase):
    def test_minimal_subset(self):
        certificate = petridis_min_ratio_subset(self.rationals(0, 1, 2, 10), self.rationals(0, 1))
        self.assertEqual(certificate.subset, self.rationals(0, 1, 2))
        self.assertEqual(certificate.quantities["K"], Fraction(4, 3))
        self.assert_certificate_holds(certificate)

    def test_singleton(self):
        certificate = petridis_min_ratio_subset(self.rationals(0), self.rationals(0))
        self.assertEqual(certificate.subset, self.rationals(0))
        self.assertEqual(certificate.quantities["K"], 1)

    def test_progression_keeps_everything(self):
        A = self.rationals(*range(5))
        certificate = petridis_min_ratio_subset(A, A)
        self.assertEqual(certificate.subset, A)
        self.assertEqual(certificate.quantities["K"], Fraction(9, 5))

    def test_subset_budget(self):
        with self.assertRaises(SubsetBudgetExceededError):
            petridis_min_ratio_subset(self.rationals(*range(21)), self.rationals(0))

    def test_extension_on_random_sets(self):
        rng = SplitMix64(17)
        f101 = PrimeField(101)
        A = self.random_set(rng, f101, 8, 101)
        B = self.random_set(rng, f101, 4, 101)
        for _ in range(40):
            C = self.random_set(rng, f101, rng.between(1, 4), 101)
            self.assert_certificate_holds(petridis_extension_check(A, B, C))


class TestPlunnecke(CertificateTestBase):
    def test_two_point_set(self):
        A = self.rationals(0, 1)
        certificate = plunnecke_check(A, A, 2)
        self.assertEqual(certificate.quantities["|kB|"], 3)
        bound = certificate.bound("iterated-sumset")
        # |2B| <= |A + B|^2 / |A| = 9 / 2
        self.assertEqual((bound.lhs, bound.rhs), (6, 9))
        self.assert_certificate_holds(certificate)

    def test_k_one(self):
        A = self.rationals(0, 1, 5)
        self.assert_certificate_holds(plunnecke_check(A, self.rationals(0, 2), 1))

    def test_sidon_set(self):
        A = self.rationals(0, 1, 3)
        certificate = plunnecke_check(A, A, 2)
        self.assertEqual(certificate.quantities["|kB|"], 6)
        bound = certificate.bound("iterated-sumset")
        self.assertEqual((bound.lhs, bound.rhs), (18, 36))

    def test_k_out_of_range(self):
        A = self.rationals(0, 1)
        with self.assertRaises(InvalidCountError):
            plunnecke_check(A, A, 5)
        with self.assertRaises(InvalidCountError):
            katz_shen_subset(A, A, 0)

    def test_random_sets(self):
        rng = SplitMix64(8)
        f101 = PrimeField(101)
        for round_number in range(12):
            A = self.random_set(rng, f101, rng.between(2, 8), 101)
            B = self.random_set(rng, f101, rng.between(1, 4), 101)
            k = round_number % 3 + 1
            self.assert_certificate_holds(plunnecke_check(A, B, k))
            self.assert_certificate_holds(katz_shen_subset(A, B, k))


class TestKatzShen(CertificateTestBase):
    def test_two_point_set(self):
        A = self.rationals(0, 1)
        certificate = katz_shen_subset(A, A, 2)
        self.assertEqual(len(certificate.quantities["pieces"]), 1)
        self.assertGreaterEqual(2 * len(certificate.subset), len(A))

    def test_interval(self):
        A = self.rationals(0, 1, 2, 3)
        certificate = katz_shen_subset(A, self.rationals(0, 1), 2)
        self.assertGreaterEqual(len(certificate.subset), 2)
        self.assert_certificate_holds(certificate)

    def test_pieces_are_disjoint(self):
        A = self.rationals(0, 1, 2, 10, 20, 21, 40, 80)
        certificate = katz_shen_subset(A, self.rationals(0, 1), 1)
        pieces = [set(piece) for piece in certificate.quantities["pieces"]]
        for first in range(len(pieces)):
            for second in range(first + 1, len(pieces)):
                self.assertFalse(pieces[first] & pieces[second])
        self.assert_certificate_holds(certificate)


class TestJointDegree(CertificateTestBase):
    def test_complete_graph(self):
        A = self.rationals(0, 1, 2)
        B = self.rationals(5, 6)
        G = PairGraph.complete(A, B)
        self.assertEqual(joint_degree(G, self.Q(0), self.Q(2)), 2)

    def test_edgeless_graph(self):
        A = self.rationals(0, 1)
        self.assertEqual(joint_degree(PairGraph(A, A, []), self.Q(0), self.Q(1)), 0)

    def test_shared_neighbour(self):
        A = self.rationals(0, 1)
        G = PairGraph(A, A, [(0, 0), (1, 0), (1, 1)])
        self.assertEqual(joint_degree(G, self.Q(0), self.Q(1)), 1)

    def test_not_in_left_set(self):
        A = self.rationals(0, 1)
        with self.assertRaises(NotInLeftSetError):
            joint_degree(PairGraph.complete(A, A), self.Q(0), self.Q(5))


class TestBSG(CertificateTestBase):
    def dense_graph(self, rng: SplitMix64, size: int, missing: int) -> PairGraph:
        A = self.random_set(rng, PrimeField(101), size, 101)
        B = self.random_set(rng, PrimeField(101), size, 101)
        edges = [(i, j) for i in range(size) for j in range(size)]
        dropped = set(rng.sample(range(len(edges)), missing))
        return PairGraph(A, B, [edge for number, edge in enumerate(edges) if number not in dropped])

    def test_dense_complete_graph(self):
        A = self.rationals(0, 1, 2, 3)
        certificate = bsg_dense(PairGraph.complete(A, A), Fraction(1, 16))
        self.assertEqual(certificate.subset, A)
        self.assertEqual(certificate.quantities["K"], 4)
        self.assert_certificate_holds(certificate)

    def test_dense_one_missing_edge(self):
        A = self.rationals(0, 1, 2, 3)
        G = PairGraph(A, A, [(i, j) for i in range(4) for j in range(4) if (i, j) != (0, 0)])
        certificate = bsg_dense(G, Fraction(1, 16))
        self.assertGreaterEqual(len(certificate.subset), 3)
        self.assert_certificate_holds(certificate)

    def test_dense_below_threshold(self):
        A = self.rationals(0, 1, 2, 3)
        G = PairGraph(A, A, [(i, j) for i in range(4) for j in range(4) if i + j > 0 and (i, j) != (1, 1)])
        with self.assertRaises(DensityTooLowError):
            bsg_dense(G, Fraction(1, 16))

    def test_dense_epsilon_range(self):
        A = self.rationals(0, 1)
        with self.assertRaises(EpsilonRangeError):
            bsg_dense(PairGraph.complete(A, A), Fraction(1, 4))

    def test_dense_random_graphs(self):
        rng = SplitMix64(21)
        for _ in range(10):
            G = self.dense_graph(rng, 6, rng.between(0, 7))
            self.assert_certificate_holds(bsg_dense(G, Fraction(1, 5)))

    def test_sparse_complete_graph(self):
        A = self.rationals(0, 1, 2, 3)
        certificate = bsg_sparse(PairGraph.complete(A, A), Fraction(1, 16))
        self.assertEqual(certificate.subset, A)
        self.assert_certificate_holds(certificate)

    def test_sparse_perfect_matching(self):
        A = self.rationals(0, 1, 2, 3)
        certificate = bsg_sparse(PairGraph(A, A, [(i, i) for i in range(4)]), Fraction(1, 16))
        self.assertEqual(len(certificate.subset), 1)
        self.assert_certificate_holds(certificate)

    def test_sparse_single_edge(self):
        A = self.rationals(0, 1, 2)
        certificate = bsg_sparse(PairGraph(A, self.rationals(0, 1), [(1, 1)]), Fraction(1, 16))
        self.assertEqual(certificate.subset, self.rationals(1))
        self.assertEqual(certificate.quantities["|A''-A''|"], 1)

    def test_sparse_random_graphs(self):
        rng = SplitMix64(22)
        for _ in range(10):
            G = self.dense_graph(rng, 6, rng.between(0, 30))
            if G:
                self.assert_certificate_holds(bsg_sparse(G, Fraction(1, 8)))

    def test_sumproduct_geometric_progression(self):
        A = self.rationals(1, 2, 4)
        certificate = bsg_sumproduct(PairGraph.complete(A, A))
        self.assertEqual(certificate.subset, A)
        self.assertEqual(certificate.quantities["|A'/A'|"], 5)
        self.assertEqual(certificate.quantities["E_x(A')"], 19)
        self.assert_certificate_holds(certificate)

    def test_sumproduct_progression(self):
        A = self.rationals(1, 2, 3)
        certificate = bsg_sumproduct(PairGraph.complete(A, A))
        self.assertEqual(certificate.quantities["|A'-A'|"], 5)
        self.assert_certificate_holds(certificate)

    def test_sumproduct_singletons(self):
        A = self.rationals(3)
        certificate = bsg_sumproduct(PairGraph.complete(A, A))
        for name in ("|A'-A'|", "|A'/A'|", "E_x(A')", "|A-G B|", "|A/G B|"):
            self.assertEqual(certificate.quantities[name], 1)

    def test_sumproduct_zero_in_right(self):
        A = self.rationals(0, 1)
        with self.assertRaises(ZeroInRightError):
            bsg_sumproduct(PairGraph.complete(A, A))


class TestCovers(CertificateTestBase):
    def test_ruzsa_interval(self):
        certificate = cover_ruzsa(self.rationals(0, 1, 2, 3), self.rationals(0, 1))
        self.assertEqual(len(certificate.centers), 2)
        self.assertEqual(certificate.bound("center-ceiling").rhs, 3)
        self.assert_certificate_holds(certificate)

    def test_ruzsa_subset_of_b(self):
        certificate = cover_ruzsa(self.rationals(0, 1), self.rationals(0, 1, 2))
        self.assertEqual(certificate.centers, self.rationals(0))

    def test_ruzsa_singleton(self):
        certificate = cover_ruzsa(self.rationals(5), self.rationals(0, 1))
        self.assertEqual(len(certificate.centers), 1)

    def test_shen_equal_sets(self):
        A = self.rationals(0, 1, 2)
        certificate = cover_shen(A, A, Fraction(1, 4))
        self.assertEqual(certificate.centers, self.rationals(0))
        self.assertEqual(certificate.covered_subset, A)

    def test_shen_interval(self):
        certificate = cover_shen(self.rationals(*range(8)), self.rationals(0, 1), Fraction(1, 4))
        self.assertLessEqual(len(certificate.centers), 4)
        self.assertGreaterEqual(len(certificate.covered_subset), 6)
        self.assert_certificate_holds(certificate)

    def test_shen_vacuous_target(self):
        certificate = cover_shen(self.rationals(*range(8)), self.rationals(0, 1), Fraction(99, 100))
        self.assertLessEqual(len(certificate.centers), 1)

    def test_variation1_complete_graph(self):
        A = self.rationals(0, 1)
        plus, minus = cover_variation1(PairGraph.complete(A, A))
        self.assertEqual(len(plus.centers), 1)
        self.assertEqual(len(minus.centers), 1)
        self.assert_certificate_holds(plus)
        self.assert_certificate_holds(minus)

    def test_variation1_interval(self):
        A = self.rationals(*range(6))
        plus, minus = cover_variation1(PairGraph.complete(A, self.rationals(0, 1, 2)), Fraction(1, 16))
        self.assertEqual(plus.centers, self.rationals(0, 3))
        self.assertEqual(minus.centers, self.rationals(2, 5))
        self.assertGreaterEqual(len(plus.covered_subset), 3)
        self.assert_certificate_holds(plus)
        self.assert_certificate_holds(minus)

    def test_variation1_density(self):
        A = self.rationals(0, 1)
        with self.assertRaises(DensityTooLowError):
            cover_variation1(PairGraph(A, A, [(0, 0)]))

    def test_variation2_singletons(self):
        A = self.rationals(0)
        refined, certificate = cover_variation2(PairGraph.complete(A, A))
        self.assertEqual(len(certificate.centers), 1)
        self.assertEqual(len(refined), 1)

    def test_variation2_two_points(self):
        A = self.rationals(0, 1)
        refined, certificate = cover_variation2(PairGraph.complete(A, A), Fraction(1, 2))
        self.assertLessEqual(len(certificate.centers), 2)
        self.assertGreaterEqual(len(refined), 2)
        self.assert_certificate_holds(certificate)

    def test_variation2_single_edge(self):
        A = self.rationals(0, 1)
        G = PairGraph(A, A, [(0, 1)])
        refined, certificate = cover_variation2(G)
        self.assertEqual(refined, G)
        self.assertEqual(len(certificate.centers), 1)

    def test_random_covers(self):
        rng = SplitMix64(31)
        f101 = PrimeField(101)
        for _ in range(10):
            A = self.random_set(rng, f101, rng.between(1, 10), 101)
            B = self.random_set(rng, f101, rng.between(1, 5), 101)
            self.assert_certificate_holds(cover_ruzsa(A, B))
            self.assert_certificate_holds(cover_shen(A, B, Fraction(1, 5)))
            edges = [(i, j) for i in range(len(A)) for j in range(len(B)) if rng.chance(1, 2)]
            if edges:
                self.assert_certificate_holds(cover_variation2(PairGraph(A, B, edges), Fraction(1, 3))[1])
            for certificate in cover_variation1(PairGraph.complete(A, B), Fraction(1, 9)):
                self.assert_certificate_holds(certificate)
