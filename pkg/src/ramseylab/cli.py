"""CLI argument parsing."""

from __future__ import annotations

import argparse
import sys
from pathlib import Path
from typing import NoReturn, Sequence

from .partition import EntropyKind
from .ramsey import KINDS
from .structcat import SIGNATURES

EXIT_USAGE = 64


class _Parser(argparse.ArgumentParser):
    """Usage errors exit 64 instead of argparse's 2, which is taken by validation errors."""

    def error(self, message: str) -> NoReturn:
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def parse_args(argv: Sequence[str] | None) -> argparse.Namespace:
    parser = _Parser(prog="ramseylab", description="Ramsey degrees and Ramsey entropy of finite categories.")
    common = _common_parser()
    sub = parser.add_subparsers(dest="command", metavar="COMMAND", parser_class=_Parser)
    sub.required = True
    _add_validate_cat(sub, common)
    _add_structures(sub, common)
    _add_hom(sub, common)
    _add_subobj(sub, common)
    _add_arrow(sub, common)
    _add_witness(sub, common)
    _add_degree(sub, common)
    _add_essential(sub, common)
    _add_entropy(sub, common)
    _add_suite(sub, common)
    _add_functor(sub, common)
    _add_cache(sub, common)
    return parser.parse_args(argv)


def _common_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    output = common.add_mutually_exclusive_group()
    output.add_argument(
        "--json", dest="output", action="store_const", const="json", help="Write the report as JSON to stdout"
    )
    output.add_argument(
        "--tsv", dest="output", action="store_const", const="tsv", help="Write the result table as TSV to stdout"
    )
    common.set_defaults(output="console")
    common.add_argument(
        "--threads",
        type=int,
        default=1,
        help="Worker threads for independent sub-queries; never changes a report (default: %(default)s)",
    )
    common.add_argument("--budget-bell", type=int, default=None, help="Most partitions to enumerate (default: 10^6)")
    common.add_argument("--budget-hom", type=int, default=None, help="Largest hom-set to materialize (default: 5000)")
    common.add_argument(
        "--cache-dir",
        type=Path,
        default=None,
        help="Directory of the result cache (default: $RAMSEYLAB_CACHE, otherwise no cache)",
    )
    common.add_argument("--no-color", action="store_true", help="Disable ANSI colors")
    return common


def _add_target_args(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--cat", type=Path, default=None, help="Category JSON file")
    parser.add_argument(
        "--class", dest="kind", choices=tuple(SIGNATURES), default=None, help="Structure class for object literals"
    )
    parser.add_argument(
        "--n-max",
        type=int,
        default=4,
        help="Largest structure size in a class universe (default: %(default)s)",
    )


def _add_entropy_args(parser: argparse.ArgumentParser) -> None:
    parser.add_argument(
        "--H",
        dest="h",
        type=EntropyKind,
        default=EntropyKind.BOLTZMANN,
        metavar="shannon|boltzmann",
        help="Entropy function (default: boltzmann)",
    )
    parser.add_argument(
        "--mode",
        default="graded",
        metavar="literal|graded[:K]",
        help="Essential-partition quantifier (default: %(default)s)",
    )


def _add_arrow_params(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("-k", type=int, default=2, help="Number of colors (default: %(default)s)")
    parser.add_argument("-t", type=int, default=1, help="Colors allowed on the copy of B (default: %(default)s)")
    parser.add_argument(
        "--kind",
        dest="arrow_kind",
        choices=KINDS,
        default="structural",
        help="Color subobjects or raw embeddings (default: %(default)s)",
    )


def _add_validate_cat(sub, common: argparse.ArgumentParser) -> None:
    parser = sub.add_parser("validate-cat", parents=[common], help="Check the category laws of a JSON file")
    parser.add_argument("path", type=Path, help="Category JSON file")


def _add_structures(sub, common: argparse.ArgumentParser) -> None:
    parser = sub.add_parser("structures", parents=[common], help="List a class universe up to isomorphism")
    parser.add_argument("--class", dest="kind", choices=tuple(SIGNATURES), required=True, help="Structure class")
    parser.add_argument("--n-max", type=int, default=4, help="Largest structure size (default: %(default)s)")


def _add_hom(sub, common: argparse.ArgumentParser) -> None:
    parser = sub.add_parser("hom", parents=[common], help="List hom(A, B)")
    _add_target_args(parser)
    parser.add_argument("--A", dest="a", required=True)
    parser.add_argument("--B", dest="b", required=True)


def _add_subobj(sub, common: argparse.ArgumentParser) -> None:
    parser = sub.add_parser("subobj", parents=[common], help="List (B choose A)")
    _add_target_args(parser)
    parser.add_argument("--A", dest="a", required=True)
    parser.add_argument("--B", dest="b", required=True)


def _add_arrow(sub, common: argparse.ArgumentParser) -> None:
    parser = sub.add_parser("arrow", parents=[common], help="Decide C -> (B)^A_{k,t}")
    _add_target_args(parser)
    parser.add_argument("--C", dest="c", required=True)
    parser.add_argument("--B", dest="b", required=True)
    parser.add_argument("--A", dest="a", required=True)
    _add_arrow_params(parser)


def _add_witness(sub, common: argparse.ArgumentParser) -> None:
    parser = sub.add_parser("witness", parents=[common], help="Search for a C with C -> (B)^A_{k,t}")
    _add_target_args(parser)
    parser.add_argument("--B", dest="b", required=True)
    parser.add_argument("--A", dest="a", required=True)
    _add_arrow_params(parser)


def _add_degree(sub, common: argparse.ArgumentParser) -> None:
    parser = sub.add_parser("degree", parents=[common], help="Small Ramsey degree of an object")
    _add_target_args(parser)
    parser.add_argument("--object", dest="obj", required=True)
    parser.add_argument(
        "--kind",
        dest="arrow_kind",
        choices=KINDS,
        default="structural",
        help="Structural or embedding degree (default: %(default)s)",
    )
    parser.add_argument("--exact", action="store_true", help="Exhaustive degree on a finite category")
    parser.add_argument("--oracle", action="store_true", help="Closed-form degree of a structure class")
    parser.add_argument("--k-max", type=int, default=2, help="Most colors tried for class bounds (default: %(default)s)")


def _add_essential(sub, common: argparse.ArgumentParser) -> None:
    parser = sub.add_parser("essential", parents=[common], help="Essential partitions of (B choose A)")
    _add_target_args(parser)
    parser.add_argument("--A", dest="a", required=True)
    parser.add_argument("--B", dest="b", required=True)
    parser.add_argument("--lambda", dest="lam", default=None, help="Partition literal to check, e.g. [[0,1],[2]]")
    parser.add_argument("--C", dest="c_range", action="append", default=None, help="Candidate C (repeatable)")
    _add_entropy_args(parser)


def _add_entropy(sub, common: argparse.ArgumentParser) -> None:
    parser = sub.add_parser("entropy", parents=[common], help="φ and Ramsey entropy of an object")
    _add_target_args(parser)
    parser.add_argument("--object", dest="obj", required=True)
    _add_entropy_args(parser)
    parser.add_argument(
        "--scope",
        choices=("finite", "oracle", "product-oracle"),
        default=None,
        help="finite for --cat, oracle for --class (default: inferred)",
    )
    parser.add_argument("--bound", type=int, default=6, help="Truncation of oracle up-sets (default: %(default)s)")
    parser.add_argument(
        "--product-with", default=None, metavar="CLASS:OBJECT", help="Second factor for the product-oracle scope"
    )


def _add_suite(sub, common: argparse.ArgumentParser) -> None:
    parser = sub.add_parser("suite", parents=[common], help="Run the validator suites")
    parser.add_argument("--corpus", type=Path, default=None, help="Directory of category JSON files (default: built-in)")
    _add_entropy_args(parser)
    parser.add_argument(
        "--only",
        action="append",
        choices=("axioms", "degree", "basic", "entropy", "functor"),
        default=None,
        help="Run only the named part (repeatable)",
    )
    parser.add_argument("--verbose", action="store_true", help="List passing checks too")


def _add_functor(sub, common: argparse.ArgumentParser) -> None:
    parser = sub.add_parser("functor", parents=[common], help="Validate a functor and compare entropies along it")
    parser.add_argument("path", type=Path, nargs="?", default=None, help="Functor JSON file")
    parser.add_argument("--builtin", choices=("identity", "collapse", "order-forgetting"), default=None)
    parser.add_argument("--non-strict", action="store_true", help="Run outside the theorem hypotheses and label it")
    parser.add_argument("--n-max", type=int, default=3, help="Universe size for order-forgetting (default: %(default)s)")
    _add_entropy_args(parser)


def _add_cache(sub, common: argparse.ArgumentParser) -> None:
    parser = sub.add_parser("cache", parents=[common], help="Inspect or prune the result cache")
    parser.add_argument("action", choices=("stats", "gc", "clear"))
    parser.add_argument("--max-mb", type=float, default=None, help="Size bound for gc")
    parser.add_argument("--max-age-days", type=float, default=None, help="Age bound for gc")
