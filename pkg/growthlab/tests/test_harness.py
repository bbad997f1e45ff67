from __future__ import annotations

import io
import json
from contextlib import redirect_stdout
from dataclasses import replace
from tempfile import TemporaryDirectory

from paved_path import PavedPath

from common.budget import BudgetExceededError
from common.constants import FIXTURES_DIR
from common.get_check import UnknownCheckError, get_check, known_lemmas
from fields.prime import PrimeField
from growthlab.cli import main
from harness.campaign import Campaign, parse_sizes, run_campaign
from harness.generators import Family, SpecInvalidError, family_of, generate, polynomial_from_code
from harness.growth import growth_scan
from harness.report import BOUND_HEADER
from incidence.geometry import IncidenceInstance
from setcore.operations import SetOperation, pairwise_set

from .certificate_test_base import CertificateTestBase

F101 = PrimeField(101)


class TemporaryFolderTestBase(CertificateTestBase):
    def setUp(self) -> None:
        folder = TemporaryDirectory()
        self.addCleanup(folder.cleanup)
        self.folder = PavedPath(folder.name)


class TestGenerate(CertificateTestBase):
    def test_t_powers(self):
        self.assertEqual(generate(Family.T_POWERS, self.F2T, 5, 0), self.t_powers(5))

    def test_progression(self):
        A = generate(Family.AP, F101, 8, 11)
        self.assertEqual(len(A), 8)
        self.assertEqual(len(pairwise_set(A, A, SetOperation.SUM)), 15)

    def test_same_seed_same_instance(self):
        for family in (Family.AP, Family.GP, Family.RANDOM):
            self.assertEqual(generate(family, self.Q, 6, 42), generate(family, self.Q, 6, 42))

    def test_random_polynomials(self):
        A = generate(Family.RANDOM, self.F2T, 6, 3)
        self.assertEqual(len(A), 6)
        self.assertEqual(A.field, self.F2T)

    def test_extremal_grid(self):
        instance = generate(Family.EXTREMAL_GRID, self.Q, 8, 0)
        self.assertIsInstance(instance, IncidenceInstance)
        self.assertEqual((len(instance.points), len(instance.lines), instance.incidences), (16, 8, 16))

    def test_polynomial_codes(self):
        self.assertEqual(polynomial_from_code(self.F2T, 5), self.F2T("t^2+1"))
        self.assertEqual(polynomial_from_code(self.F2T, 0), self.F2T.zero())

    def test_invalid_specs(self):
        with self.assertRaises(SpecInvalidError):
            generate(Family.AP, F101, 0, 0)
        with self.assertRaises(SpecInvalidError):
            generate(Family.T_POWERS, F101, 4, 0)
        with self.assertRaises(SpecInvalidError):
            generate(Family.EXTREMAL_GRID, self.Q, 7, 0)
        with self.assertRaises(SpecInvalidError):
            generate(Family.RANDOM, PrimeField(5), 6, 0)
        with self.assertRaises(SpecInvalidError):
            family_of("primes")


class TestCampaignFile(CertificateTestBase):
    TEXT = """
        # Ruzsa and Plünnecke over F_101
        seed = 7
        field = Fp:101
        family = ap
        sizes = 4..6
        instances = 2
        checks = ruzsa-triangle, plunnecke

        output = reports
    """

    def test_parse(self):
        campaign = Campaign.parse(self.TEXT, PavedPath("/campaigns"))
        self.assertEqual(campaign.seed, 7)
        self.assertEqual(campaign.field, F101)
        self.assertEqual(campaign.family, Family.AP)
        self.assertEqual(campaign.sizes, (4, 5, 6))
        self.assertEqual(campaign.checks, ("ruzsa-triangle", "plunnecke"))
        self.assertEqual(campaign.output, PavedPath("/campaigns/reports"))

    def test_instance_ids(self):
        specs = Campaign.parse(self.TEXT).instance_specs()
        self.assertEqual([spec.instance_id for spec in specs], ["4-0", "4-1", "5-0", "5-1", "6-0", "6-1"])
        self.assertEqual(len({spec.seed for spec in specs}), 6)
        self.assertEqual(specs, Campaign.parse(self.TEXT).instance_specs())

    def test_sizes(self):
        self.assertEqual(parse_sizes("4..7"), (4, 5, 6, 7))
        self.assertEqual(parse_sizes("4,8,16"), (4, 8, 16))
        for text in ("4..x", "", "0..3"):
            with self.assertRaises(SpecInvalidError):
                parse_sizes(text)

    def test_invalid_lines(self):
        for text in ("colour = red", "seed 7", "field = Fp:100", "instances = 0"):
            with self.assertRaises(SpecInvalidError):
                Campaign.parse(text)


class TestChecks(CertificateTestBase):
    def test_registry(self):
        lemmas = known_lemmas()
        for lemma in ("ruzsa-triangle", "bsg-dense", "trivial-incidence", "psi-injection", "ff-sumproduct"):
            self.assertIn(lemma, lemmas)
        self.assertEqual(get_check("szemeredi-trotter").LEMMA, "szemeredi-trotter")
        self.assertFalse(get_check("szemeredi-trotter").HARD)

    def test_unknown_check(self):
        with self.assertRaises(UnknownCheckError):
            get_check("no-such-lemma")
        with self.assertRaises(UnknownCheckError):
            run_campaign(Campaign(checks=("no-such-lemma",)), write=False)


class TestRunCampaign(TemporaryFolderTestBase):
    def campaign(self, output: PavedPath) -> Campaign:
        return Campaign(
            seed=3,
            sizes=(4, 5),
            instances=3,
            checks=("ruzsa-triangle", "energy-identities"),
            output=output,
        )

    def test_report(self):
        report = run_campaign(self.campaign(self.folder))
        self.assertEqual(report.exit_code, 0)
        # One triangle row and five energy rows per instance
        self.assertEqual(len(report.rows), 36)
        self.assertEqual(report.summary["violations"], 0)
        csv_text = PavedPath(self.folder, "campaign.csv").read_text()
        self.assertEqual(csv_text.splitlines()[0], ",".join(BOUND_HEADER))
        summary = json.loads(PavedPath(self.folder, "campaign.json").read_text())
        self.assertEqual(summary["rows"], 36)
        self.assertEqual(summary["lemmas"]["ruzsa-triangle"]["rows"], 6)

    def test_reports_are_reproducible(self):
        first = PavedPath(self.folder, "first")
        second = PavedPath(self.folder, "second")
        run_campaign(self.campaign(first))
        run_campaign(self.campaign(second))
        self.assertEqual(
            PavedPath(first, "campaign.csv").read_text(),
            PavedPath(second, "campaign.csv").read_text(),
        )

    def test_workers_keep_instance_order(self):
        serial = run_campaign(self.campaign(self.folder), write=False)
        parallel = run_campaign(replace(self.campaign(self.folder), workers=2), write=False)
        self.assertEqual(serial.csv_text(), parallel.csv_text())

    def test_empty_check_list(self):
        report = run_campaign(Campaign(output=self.folder), write=False)
        self.assertEqual(report.rows, [])
        self.assertEqual(report.exit_code, 0)

    def test_corrupted_fixture_fails_the_run(self):
        report = run_campaign(Campaign(checks=("certificate-replay",), fixtures=FIXTURES_DIR), write=False)
        self.assertEqual(
            [row["instanceId"] for row in report.rows],
            ["fixture:corrupted_certificate", "fixture:valid_certificate"],
        )
        self.assertEqual(report.summary["violations"], 1)
        self.assertEqual(report.exit_code, 1)

    def test_valid_fixture_replays(self):
        fixtures = PavedPath(self.folder, "fixtures")
        fixtures.mkdir()
        PavedPath(fixtures, "valid_certificate.json").write_text(
            PavedPath(FIXTURES_DIR, "valid_certificate.json").read_text(),
        )
        report = run_campaign(Campaign(checks=("certificate-replay",), fixtures=fixtures), write=False)
        self.assertEqual(len(report.rows), 1)
        self.assertEqual(report.exit_code, 0)


class TestGrowthScan(CertificateTestBase):
    def test_progression_sumset(self):
        report = growth_scan(Family.AP, self.Q, range(4, 9), 7)
        for row in report.rows:
            self.assertEqual(row["sumSize"], 2 * row["|A|"] - 1)
        self.assertEqual(report.exit_code, 0)

    def test_geometric_product_set(self):
        report = growth_scan(Family.GP, self.Q, range(4, 9), 7)
        for row in report.rows:
            self.assertEqual(row["prodSize"], 2 * row["|A|"] - 1)

    def test_summary(self):
        summary = growth_scan(Family.RANDOM, F101, (6, 7), 1).summary
        self.assertEqual(summary["rows"], 2)
        self.assertEqual(summary["violations"], 0)
        self.assertIsNotNone(summary["exponents"]["expF"]["median"])

    def test_budget(self):
        with self.assertRaises(BudgetExceededError):
            growth_scan(Family.RANDOM, self.Q, (200,), 0)

    def test_configurations_are_rejected(self):
        with self.assertRaises(SpecInvalidError):
            growth_scan(Family.EXTREMAL_GRID, self.Q, (8,), 0)


class TestCommandLine(TemporaryFolderTestBase):
    def run_main(self, *argv: str) -> tuple[int, str]:
        output = io.StringIO()
        with redirect_stdout(output):
            status = main(["--quiet", *argv])
        return status, output.getvalue()

    def test_extremal_grid(self):
        status, output = self.run_main("construct", "extremal-grid", "--n", "8")
        self.assertEqual(status, 0)
        data = json.loads(output)
        self.assertEqual(len(data["instance"]["points"]), 16)
        self.assertTrue(data["certificate"]["holds"])

    def test_separable(self):
        status, output = self.run_main("ff", "separable", "--set", "Fqt:2{1,t,t^2}")
        self.assertEqual(status, 0)
        self.assertTrue(json.loads(output)["separable"])

    def test_set_file(self):
        path = PavedPath(self.folder, "set.txt")
        path.write_text("Fqt:2{1,t,t^2,t^3}\n")
        status, output = self.run_main("ff", "dendrogram", "--set", str(path))
        self.assertEqual(status, 0)
        self.assertIn("root", json.loads(output))

    def test_verify(self):
        path = PavedPath(self.folder, "small.cfg")
        path.write_text("seed = 1\nsizes = 4\nchecks = ruzsa-triangle\noutput = out\n")
        status, output = self.run_main("verify", "--campaign", str(path))
        self.assertEqual(status, 0)
        self.assertEqual(json.loads(output)["rows"], 1)
        self.assertTrue(PavedPath(self.folder, "out", "small.csv").exists())

    def test_errors_exit_with_two(self):
        self.assertEqual(self.run_main("growth", "--family", "primes", "--sizes", "4")[0], 2)
        self.assertEqual(self.run_main("construct", "extremal-grid", "--n", "7")[0], 2)


class TestCheckPlugins(CertificateTestBase):
    def assert_clean_run(self, campaign: Campaign) -> None:
        report = run_campaign(campaign, write=False)
        self.assertEqual(report.errors, [])
        self.assertEqual(report.summary["violations"], 0)
        self.assertGreater(len(report.rows), 0)

    def test_set_checks_over_a_prime_field(self):
        checks = (
            "energy-cauchy-schwarz",
            "plunnecke",
            "petridis-extension",
            "katz-shen",
            "ruzsa-cover",
            "bsg-dense",
            "shen-variation-1",
            "shen-variation-2",
            "psi-injection",
            "crossratio-energy",
            "rudnev",
            "partial-sumproduct",
            "elekes",
        )
        self.assert_clean_run(Campaign(seed=5, sizes=(4, 5), checks=checks))

    def test_configuration_checks(self):
        checks = ("trivial-incidence", "szemeredi-trotter", "beck")
        self.assert_clean_run(Campaign(seed=5, field=self.Q, family=Family.ELEKES, sizes=(2, 3), checks=checks))

    def test_function_field_checks(self):
        checks = ("chains", "separable-growth", "ff-sumproduct")
        self.assert_clean_run(Campaign(seed=5, field=self.F2T, sizes=(4, 5), checks=checks))

    def test_configurations_skip_set_checks(self):
        campaign = Campaign(field=self.Q, family=Family.EXTREMAL_GRID, sizes=(8,), checks=("ruzsa-triangle",))
        self.assertEqual(run_campaign(campaign, write=False).rows, [])
