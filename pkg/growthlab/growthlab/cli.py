"""Command line interface.

    growthlab verify --campaign c.cfg
    growthlab growth --family ap --field Fp:101 --sizes 4..32 --seed 7
    growthlab construct extremal-grid --n 27
    growthlab ff separable --set file
"""
from __future__ import annotations

import argparse
import json
import logging
import sys
from dataclasses import replace
from typing import TYPE_CHECKING, Any

from json_file import JSONFile
from paved_path import PavedPath

from common.constants import REPORTS_DIR
from fields.parsing import parse_field
from ffield.chains import max_chain, separable_from_chain
from ffield.dendrogram import Dendrogram
from ffield.separable import is_separable
from ffield.sumproduct import ff_sumproduct_certificate
from harness.campaign import Campaign, parse_sizes, run_campaign
from harness.generators import family_of
from harness.growth import growth_scan
from incidence.constructions import bourgain_garaev_set, elekes_config, extremal_grid
from incidence.monitors import trivial_incidence_check
from setcore.finite_set import FiniteSet

if TYPE_CHECKING:
    from collections.abc import Sequence


def read_set(value: str) -> FiniteSet:
    """Parse a set literal, or the set literal stored in a file when value is a path."""
    path = PavedPath(value)
    return FiniteSet.parse(path.read_text().strip() if path.is_file() else value)


def _emit(data: dict[str, Any], output: str | None) -> None:
    text = json.dumps(data, indent=2)
    if output:
        JSONFile(output).write(text)
        logging.getLogger("CLI").getChild("Output").info(output)
    sys.stdout.write(text + "\n")


def _verify(args: argparse.Namespace) -> int:
    campaign = Campaign.read(PavedPath(args.campaign))
    if args.workers:
        campaign = replace(campaign, workers=args.workers)
    if args.output:
        campaign = replace(campaign, output=PavedPath(args.output))
    report = run_campaign(campaign)
    _emit(report.summary, None)
    return report.exit_code


def _growth(args: argparse.Namespace) -> int:
    family = family_of(args.family)
    report = growth_scan(family, parse_field(args.field), parse_sizes(args.sizes), args.seed)
    report.write(PavedPath(args.output), f"growth-{family}-{args.seed}")
    _emit(report.summary, None)
    return report.exit_code


def _construct(args: argparse.Namespace) -> int:
    if args.construction == "extremal-grid":
        instance = extremal_grid(parse_field(args.field), args.n)
        data = {"instance": instance.to_json(), "certificate": trivial_incidence_check(instance).to_json()}
    elif args.construction == "bg-set":
        data = bourgain_garaev_set(args.p, args.n).to_json()
    else:
        instance, certificate = elekes_config(read_set(args.set))
        data = {"instance": instance.to_json(), "certificate": certificate.to_json()}
    _emit(data, args.output)
    return 0


def _separable_json(A: FiniteSet) -> dict[str, Any]:
    result = is_separable(A)
    data: dict[str, Any] = {
        "field": A.field.tag,
        "A": A.to_json(),
        "separable": result.separable,
        "ordering": [str(element) for element in result.ordering],
        "radii": list(result.radii),
    }
    if result.violation is not None:
        data["violation"] = Dendrogram(A).node_json(result.violation)
    return data


def _ff(args: argparse.Namespace) -> int:
    A = read_set(args.set)
    if args.action == "separable":
        data = _separable_json(A)
    elif args.action == "chain":
        chain = max_chain(A)
        data = {"chain": chain.to_json(), "strict": separable_from_chain(A, chain.subset).to_json()}
    elif args.action == "sumproduct":
        data = ff_sumproduct_certificate(A).to_json()
    else:
        data = Dendrogram(A).to_json()
    _emit(data, args.output)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="growthlab", description="Exact sum-product and incidence workbench.")
    parser.add_argument("--quiet", action="store_true", help="Only log warnings and errors.")
    commands = parser.add_subparsers(dest="command", required=True)

    verify = commands.add_parser("verify", help="Run a campaign file and write its report.")
    verify.add_argument("--campaign", required=True, help="Path of a key=value campaign file.")
    verify.add_argument("--workers", type=int, help="Worker processes, overriding the campaign.")
    verify.add_argument("--output", help="Report folder, overriding the campaign.")
    verify.set_defaults(handler=_verify)

    growth = commands.add_parser("growth", help="Scan image and sumset sizes of a family.")
    growth.add_argument("--family", required=True)
    growth.add_argument("--field", default="Fp:101")
    growth.add_argument("--sizes", required=True, help="4..32 or 4,8,16")
    growth.add_argument("--seed", type=int, default=0)
    growth.add_argument("--output", default=str(REPORTS_DIR))
    growth.set_defaults(handler=_growth)

    construct = commands.add_parser("construct", help="Build one of the extremal constructions.")
    construct.add_argument("construction", choices=("extremal-grid", "bg-set", "elekes"))
    construct.add_argument("--n", type=int, default=8, help="N of the grid or of the Bourgain-Garaev set.")
    construct.add_argument("--p", type=int, default=101, help="Prime of the Bourgain-Garaev set.")
    construct.add_argument("--field", default="Q", help="Field of the extremal grid.")
    construct.add_argument("--set", default="Q{1,2,3}", help="Set literal or file for the Elekes configuration.")
    construct.add_argument("--output", help="Also write the JSON to this file.")
    construct.set_defaults(handler=_construct)

    ff = commands.add_parser("ff", help="Ultrametric tools for sets in F_q(t).")
    ff.add_argument("action", choices=("separable", "chain", "sumproduct", "dendrogram"))
    ff.add_argument("--set", required=True, help="Set literal such as Fqt:2{1,t,t^2}, or a file holding one.")
    ff.add_argument("--output", help="Also write the JSON to this file.")
    ff.set_defaults(handler=_ff)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.WARNING if args.quiet else logging.INFO)
    try:
        return args.handler(args)
    # Every failure becomes exit status 2 instead of a traceback
    except Exception as e:  # noqa: BLE001
        logging.getLogger("Error").getChild(type(e).__name__).error(e)
        return 2
