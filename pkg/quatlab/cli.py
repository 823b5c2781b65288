#!/usr/bin/python3
import argparse
import csv
import logging
import sys
import time
from dataclasses import replace
from typing import Any, Callable, Dict, Optional, Sequence, Tuple

import numpy as np

from quatlab.canon import canonical_form, differing_invariants, invariants, table1_suite
from quatlab.config import LabConfig, Tolerances
from quatlab.errors import InputError, MathError
from quatlab.identities import identity_suite
from quatlab.ideal_lab import bidegree_table, jacobian_rank, msg_steps, problem83_report, table2_generators
from quatlab.jsonable import dump_json, getKey
from quatlab.manifest import RunManifest
from quatlab.qmatrix import QMatrix, from_json_matrix, require_size
from quatlab.spectral import eigenvalues
from quatlab.triangular import algebra_closure, quasi_triangularizable
from quatlab.utils import load_json_file
from quatlab.w2 import w2_membership

logger = logging.getLogger(__name__)

Outcome = Tuple[Any, int]

JACOBIAN_DEFAULT = "f1,f2,f3,f6"


class _Parser(argparse.ArgumentParser):
    """ Reports usage errors as InputError so they share the structured error output. """
    def error(self, message: str) -> None:
        raise InputError("%s: %s" % (self.prog, message))


def _common_flags() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed"
                        , help = "Seed for numpy.random.default_rng; the same seed reproduces every byte of output (default 0)"
                        , type = int
                        , default = 0
                        , metavar = "N"
                        )
    common.add_argument("--format"
                        , help = "Output format; csv is available for tables only"
                        , choices = ["json", "csv"]
                        , default = "json"
                        )
    common.add_argument("--mode"
                        , help = "exact keeps rational input exact, float converts all input to floats"
                        , choices = ["exact", "float"]
                        , default = "exact"
                        )
    common.add_argument("--tolerance"
                        , help = "Relative tolerance for comparing float invariants (default %g)" % Tolerances().invariant_rel
                        , type = float
                        , metavar = "F"
                        )
    common.add_argument("--manifest"
                        , help = "Write a run manifest (command, seed, config, versions, result digest) to FILE"
                        , metavar = "FILE"
                        )
    common.add_argument("--compression"
                        , help = "Compression of input files; by default guessed from the suffix"
                        , choices = ["gz", "xz", "bz2"]
                        )
    common.add_argument("--verbose"
                        , help = "Log progress on stderr"
                        , action = "store_true"
                        )
    common.add_argument("--debug"
                        , help = "Log debugging details on stderr"
                        , action = "store_true"
                        )
    return common


def get_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="quatlab", description="""Quaternionic matrix classification, trace identities, simultaneous
triangularization and the ideal of trace polynomials vanishing on triangularizable pairs.

Matrices are JSON files: either a list of rows or {"rows": n, "cols": n, "entries": [...]}, with each
entry a scalar or [a, b, c, d] for a + bi + cj + dk. Scalars given as integers or "p/q" strings are
exact.

Exit codes: 0 success, 1 the predicate asked about is false, 2 invalid input.
""", formatter_class=argparse.RawDescriptionHelpFormatter)
    common = _common_flags()
    sub = parser.add_subparsers(dest="command", metavar="COMMAND", parser_class=_Parser)
    sub.required = True

    p = sub.add_parser("canon", parents=[common], help="Sp(2) canonical form and invariants p1..p6 of a 2x2 matrix")
    p.add_argument("matrix", help="JSON matrix file")

    p = sub.add_parser("equiv", parents=[common], help="Decide unitary similarity of two 2x2 matrices")
    p.add_argument("a", help="JSON matrix file")
    p.add_argument("b", help="JSON matrix file")

    p = sub.add_parser("eig", parents=[common], help="Standard eigenvalues of an n x n matrix")
    p.add_argument("matrix", help="JSON matrix file")

    p = sub.add_parser("w2", parents=[common], help="Decide simultaneous triangularizability of a 2x2 pair")
    p.add_argument("a", help="JSON matrix file")
    p.add_argument("b", help="JSON matrix file")

    p = sub.add_parser("qt", parents=[common], help="Decide quasi-triangularizability of the algebra generated by matrices")
    p.add_argument("generators", help="JSON file holding a list of matrices")
    p.add_argument("--max-dim"
                   , help = "Largest algebra dimension decided (default %d)" % LabConfig().qt_max_dimension
                   , type = int
                   , metavar = "D"
                   )

    p = sub.add_parser("identities", parents=[common], help="Randomized sweep over the trace identities")
    p.add_argument("--samples"
                   , help = "Number of random trials (default 100)"
                   , type = int
                   , metavar = "N"
                   )

    p = sub.add_parser("dims", parents=[common], help="Table of d(k,l), the ideal dimension per bidegree")
    p.add_argument("--max-total"
                   , help = "Largest total degree k + l (default %d, at most %d)" % (LabConfig().max_total, LabConfig.HARD_TOTAL_CAP)
                   , type = int
                   , metavar = "M"
                   )
    p.add_argument("--samples"
                   , help = "Minimum number of sample pairs (default: twice the largest monomial count plus a margin)"
                   , type = int
                   , metavar = "N"
                   )

    p = sub.add_parser("msg", parents=[common], help="Minimal generating set of the ideal up to a total degree")
    p.add_argument("--m"
                   , help = "Largest total degree (default %d)" % LabConfig().msg_max
                   , type = int
                   , metavar = "M"
                   )
    p.add_argument("--samples"
                   , help = "Minimum number of sample pairs"
                   , type = int
                   , metavar = "N"
                   )

    p = sub.add_parser("jacobian", parents=[common], help="Rank of the Jacobian of listed generators at a point")
    p.add_argument("--point"
                   , help = "JSON file {\"A\": matrix, \"B\": matrix} with 2x2 matrices"
                   , required = True
                   , metavar = "FILE"
                   )
    p.add_argument("--generators"
                   , help = "Comma separated generator names f1..f17 (default %s)" % JACOBIAN_DEFAULT
                   , default = JACOBIAN_DEFAULT
                   )

    sub.add_parser("table1", parents=[common], help="Check that each of p1..p6 is needed to separate classes")
    sub.add_parser("problem83", parents=[common], help="Evaluate the listed generators at a pair outside W2")
    return parser


# ---------------------------- input ----------------------------

def _read_matrix(loc: str, args: argparse.Namespace) -> QMatrix:
    A = from_json_matrix(load_json_file(loc, args.compression))
    return A.to_float() if args.mode == "float" else A


def _read_pair(loc: str, args: argparse.Namespace) -> Tuple[QMatrix, QMatrix]:
    data = load_json_file(loc, args.compression)
    A, B = from_json_matrix(getKey(data, "A")), from_json_matrix(getKey(data, "B"))
    if args.mode == "float":
        A, B = A.to_float(), B.to_float()
    return A, B


def build_config(args: argparse.Namespace) -> LabConfig:
    config = LabConfig()
    if args.seed < 0:
        raise InputError("--seed must be nonnegative, got %d" % args.seed)
    changes = {"seed": args.seed}  # type: Dict[str, Any]
    if args.tolerance is not None:
        if args.tolerance <= 0:
            raise InputError("--tolerance must be positive, got %g" % args.tolerance)
        changes["tolerances"] = replace(config.tolerances, invariant_rel=args.tolerance)
    if getattr(args, "samples", None) is not None:
        changes["samples"] = args.samples
    if getattr(args, "max_total", None) is not None:
        changes["max_total"] = args.max_total
    if getattr(args, "m", None) is not None:
        changes["msg_max"] = args.m
    if getattr(args, "max_dim", None) is not None:
        changes["qt_max_dimension"] = args.max_dim
    return replace(config, **changes)


# ---------------------------- commands ----------------------------

def cmd_canon(args: argparse.Namespace, config: LabConfig) -> Outcome:
    A = _read_matrix(args.matrix, args)
    require_size(A, 2)
    c, U = canonical_form(A)
    result = c.to_json()
    result["p"] = invariants(A).to_json()
    result["unitary"] = U.to_json()
    return result, 0


def cmd_equiv(args: argparse.Namespace, config: LabConfig) -> Outcome:
    A, B = _read_matrix(args.a, args), _read_matrix(args.b, args)
    require_size(A, 2)
    require_size(B, 2)
    differing = differing_invariants(A, B, config.tolerances)
    return {"equivalent": not differing, "differing_invariants": differing}, 0 if not differing else 1


def cmd_eig(args: argparse.Namespace, config: LabConfig) -> Outcome:
    A = _read_matrix(args.matrix, args)
    return {"eigenvalues": eigenvalues(A, config.eig_max_n).to_json()}, 0


def cmd_w2(args: argparse.Namespace, config: LabConfig) -> Outcome:
    A, B = _read_matrix(args.a, args), _read_matrix(args.b, args)
    verdict = w2_membership(A, B, config.tolerances)
    return verdict.to_json(), 0 if verdict.member else 1


def cmd_qt(args: argparse.Namespace, config: LabConfig) -> Outcome:
    data = load_json_file(args.generators, args.compression)
    if isinstance(data, dict):
        data = getKey(data, "generators")
    if not isinstance(data, list) or not data:
        raise InputError("expected a nonempty list of matrices in %s" % args.generators)
    gens = [from_json_matrix(m) for m in data]
    basis = algebra_closure(gens)
    result = quasi_triangularizable(basis, config.qt_max_dimension)
    return result.to_json(), 0 if result.quasi_triangularizable else 1


def cmd_identities(args: argparse.Namespace, config: LabConfig) -> Outcome:
    rng = np.random.default_rng(config.seed)
    report = identity_suite(rng, trials=args.samples or 100, tol=config.tolerances)
    return report.to_json(), 0 if report.ok() else 1


def cmd_dims(args: argparse.Namespace, config: LabConfig) -> Outcome:
    table = bidegree_table(config)
    if args.format == "csv":
        return [list(table.CSV_COLUMNS)] + table.to_csv_rows(), 0
    return table.to_json(), 0


def cmd_msg(args: argparse.Namespace, config: LabConfig) -> Outcome:
    result = msg_steps(config)
    if args.format == "csv":
        return [["k", "l", "new"]] + [[k, l, c] for (k, l), c in sorted(result.counts.items()) if c], 0
    return result.to_json(), 0


def cmd_jacobian(args: argparse.Namespace, config: LabConfig) -> Outcome:
    A, B = _read_pair(args.point, args)
    require_size(A, 2)
    require_size(B, 2)
    if not (A.is_exact and B.is_exact):
        raise InputError("the Jacobian rank is computed exactly and needs rational points")
    gens = table2_generators()
    names = [n.strip() for n in args.generators.split(",") if n.strip()]
    try:
        fs = [gens[n].poly for n in names]
    except KeyError as e:
        raise InputError("unknown generator %s; names are f1..f%d" % (e, len(gens)))
    return {"generators": names, "rank": jacobian_rank(fs, A, B)}, 0


def cmd_table1(args: argparse.Namespace, config: LabConfig) -> Outcome:
    ok, rows = table1_suite()
    return {"ok": ok, "rows": rows}, 0 if ok else 1


def cmd_problem83(args: argparse.Namespace, config: LabConfig) -> Outcome:
    return problem83_report(), 0


COMMANDS = {
    "canon": cmd_canon,
    "equiv": cmd_equiv,
    "eig": cmd_eig,
    "w2": cmd_w2,
    "qt": cmd_qt,
    "identities": cmd_identities,
    "dims": cmd_dims,
    "msg": cmd_msg,
    "jacobian": cmd_jacobian,
    "table1": cmd_table1,
    "problem83": cmd_problem83,
}  # type: Dict[str, Callable[[argparse.Namespace, LabConfig], Outcome]]

TABLE_COMMANDS = ("dims", "msg")


# ---------------------------- output ----------------------------

def _emit(result: Any, fmt: str) -> None:
    if fmt == "csv":
        writer = csv.writer(sys.stdout, lineterminator="\n")
        writer.writerows(result)
    else:
        print(dump_json(result))


def _setup_logging(args: argparse.Namespace) -> None:
    level = logging.DEBUG if args.debug else logging.INFO if args.verbose else logging.WARNING
    logging.basicConfig(stream=sys.stderr, level=level, format="%(levelname)s %(name)s: %(message)s")


def run_main(argv: Optional[Sequence[str]] = None) -> int:
    """ Entry point of the `quatlab` command; returns the exit code. """
    try:
        args = get_parser().parse_args(argv)
        _setup_logging(args)
        if args.format == "csv" and args.command not in TABLE_COMMANDS:
            raise InputError("--format csv is available for %s only" % ", ".join(TABLE_COMMANDS))
        config = build_config(args)
        start = time.perf_counter()
        result, code = COMMANDS[args.command](args, config)
        elapsed = time.perf_counter() - start
    except (InputError, MathError) as e:
        logger.debug("input rejected", exc_info=True)
        print(dump_json({"error": type(e).__name__, "message": e.get_msg()}))
        return 2
    except OSError as e:
        print(dump_json({"error": type(e).__name__, "message": str(e)}))
        return 2

    _emit(result, args.format)
    if args.manifest:
        manifest = RunManifest.for_result(args.command, config.seed, config.to_json(), result, elapsed)
        manifest.write(args.manifest)
        logger.info("manifest written to %s", args.manifest)
    return code


def main() -> None:
    sys.exit(run_main())


if __name__ == '__main__':
    main()
