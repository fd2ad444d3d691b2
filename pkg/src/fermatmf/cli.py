"""Batch command line: verify catalogs, enumerate, query equivalence, sample.

Every run prints one report, as text or as JSON with a versioned ``schema``
field.  Reports are deterministic for fixed arguments and seed: checks are
emitted in a canonical order and JSON keys are sorted.  Exit status is 0
when no check failed (an inconclusive answer does not fail the run), 1 when
a verification failed, and 2 for usage errors.
"""

from __future__ import annotations

import argparse
import json
import sys

from .field import omega_field, rationals, sextic_field
from .poly import ParseError, parse_scalar
from .matrix import MatrixError, determinant, format_matrix, parse_matrix, pfaffian
from .families import CurvePoint, FamilyError, FamilyId, GammaBlock, build_six_gen
from .equiv import EquivError, enumerate_classes, linear_reduction, scalar_equivalence
from .moduli6 import (
    ModuliError,
    gamma2_solve,
    group_action,
    linear_system_nullity,
    sample_moduli_point,
)


class _UsageError(Exception):
    """Bad arguments: reported on stderr with exit status 2."""


_FIELDS = {"omega": omega_field, "sextic": sextic_field, "rationals": rationals}
_CATALOG_ORDER = ("rank2_3gen", "nonorientable_4gen", "nonorientable_5gen")


class Report:
    """An ordered list of check records with summary counts.

    A record always carries subject, check and outcome; handlers attach
    whatever extra values the query produced (counts, witnesses, gamma
    entries) as strings or lists of strings.
    """

    def __init__(self, command):
        self.command = command
        self.checks = []

    def add(self, subject, check, outcome, **extra):
        record = {"subject": subject, "check": check, "outcome": outcome}
        for key, value in extra.items():
            if value is not None:
                record[key] = value
        self.checks.append(record)

    def _count(self, outcome):
        return sum(1 for c in self.checks if c["outcome"] == outcome)

    def exit_status(self):
        return 1 if self._count("fail") else 0

    def render(self, fmt):
        if fmt == "json":
            payload = {
                "schema": 1,
                "command": self.command,
                "checks": self.checks,
                "summary": {
                    "total": len(self.checks),
                    "failed": self._count("fail"),
                    "inconclusive": self._count("inconclusive"),
                },
                "exit": self.exit_status(),
            }
            return json.dumps(payload, indent=2, sort_keys=True)
        lines = ["command: %s" % self.command]
        for record in self.checks:
            lines.append("%s  %s  %s" % (record["outcome"], record["check"],
                                         record["subject"]))
            for key in sorted(record):
                if key in ("outcome", "check", "subject"):
                    continue
                value = record[key]
                if isinstance(value, (list, tuple)):
                    lines.append("  %s:" % key)
                    lines.extend("    %s" % item for item in value)
                else:
                    lines.append("  %s: %s" % (key, value))
        lines.append("summary: %d checks, %d failed, %d inconclusive"
                     % (len(self.checks), self._count("fail"),
                        self._count("inconclusive")))
        return "\n".join(lines)


# -- argument helpers ------------------------------------------------------------

def _field_of(args):
    return _FIELDS[args.field]()


def _parse_values(field, text, count, what):
    parts = [p.strip() for p in text.split(",")]
    if len(parts) != count:
        raise _UsageError("%s needs %d comma-separated values" % (what, count))
    try:
        return tuple(parse_scalar(field, p) for p in parts)
    except ParseError as err:
        raise _UsageError("%s: %s" % (what, err))


def _parse_point(field, text):
    if text is None:
        raise _UsageError("--lambda A,B is required")
    a, b = _parse_values(field, text, 2, "--lambda")
    try:
        return CurvePoint.affine(field, a, b)
    except FamilyError as err:
        raise _UsageError(str(err))


def _parse_family(field, text):
    try:
        return FamilyId.parse(field, text)
    except (FamilyError, ParseError) as err:
        raise _UsageError(str(err))


def _read_matrix(field, source):
    if source == "-":
        text = sys.stdin.read()
    else:
        try:
            with open(source, "r", encoding="utf-8") as handle:
                text = handle.read()
        except OSError as err:
            raise _UsageError(str(err))
    try:
        return parse_matrix(field, text)
    except (MatrixError, ParseError) as err:
        raise _UsageError(str(err))


def _one_line(mat):
    return format_matrix(mat).replace("\n", " ")


def _built_matrix(fid):
    built = fid.build()
    return built if not hasattr(built, "phi") else built.phi


# -- subcommand handlers ---------------------------------------------------------

def _cmd_verify(args):
    field = _field_of(args)
    report = Report("verify")
    if args.family:
        ids = [_parse_family(field, args.family)]
    elif args.all:
        ids = []
        for catalog in _CATALOG_ORDER:
            ids.extend(enumerate_classes(catalog, field).representatives)
    else:
        raise _UsageError("verify needs --all or --family ID")
    for fid in ids:
        try:
            fid.build()
        except FamilyError as err:
            report.add(str(fid), "factorization", "fail", detail=str(err))
        else:
            report.add(str(fid), "factorization", "pass")
    return report


def _cmd_enumerate(args):
    field = _field_of(args)
    report = Report("enumerate")
    try:
        classes = enumerate_classes(args.catalog, field)
    except EquivError as err:
        raise _UsageError(str(err))
    report.add(args.catalog, "enumerate", "pass", count=classes.count,
               representatives=[str(fid) for fid in classes.representatives])
    return report


def _cmd_equiv(args):
    field = _field_of(args)
    report = Report("equiv")
    left = _parse_family(field, args.left)
    right = _parse_family(field, args.right)
    try:
        lmat = _built_matrix(left)
        rmat = _built_matrix(right)
    except FamilyError as err:
        raise _UsageError(str(err))
    if args.reduced:
        lmat = linear_reduction(lmat)
        rmat = linear_reduction(rmat)
    try:
        verdict = scalar_equivalence(lmat, rmat)
    except (EquivError, MatrixError) as err:
        raise _UsageError(str(err))
    data = verdict.to_json(pair=(str(left), str(right)))
    report.add("%s vs %s" % (left, right), "scalar_equivalence",
               verdict.outcome, method=data["method"],
               witness=data.get("witness"),
               reduced=bool(args.reduced))
    return report


def _cmd_moduli_solve(args):
    field = _field_of(args)
    report = Report("moduli solve")
    lam = _parse_point(field, args.lam)
    free = _parse_values(field, args.free, 3, "--free")
    try:
        gamma = gamma2_solve(lam, free)
        rank, nullity = linear_system_nullity(lam)
    except ModuliError as err:
        raise _UsageError(str(err))
    report.add(str(lam), "gamma2_solve", "pass",
               gamma=[str(gamma.a(i)) for i in range(1, 16)],
               rank=rank, nullity=nullity)
    return report


def _cmd_moduli_sample(args):
    field = _field_of(args)
    report = Report("moduli sample")
    lam = _parse_point(field, args.lam)
    try:
        point = sample_moduli_point(lam, args.seed, args.budget)
    except ModuliError as err:
        raise _UsageError(str(err))
    if point is None:
        report.add(str(lam), "sample", "inconclusive", seed=args.seed,
                   detail="no certified point within budget %d" % args.budget)
    else:
        data = point.to_json()
        report.add(str(lam), "sample", "pass", seed=args.seed,
                   gamma=data["gamma"], certified=data["certified"])
    return report


def _cmd_moduli_act(args):
    field = _field_of(args)
    report = Report("moduli act")
    lam = _parse_point(field, args.lam)
    if args.matrix is None:
        mat = build_six_gen(lam, GammaBlock.zero(field))
    else:
        mat = _read_matrix(field, args.matrix)
    k = None
    if args.k is not None:
        try:
            k = parse_scalar(field, args.k)
        except ParseError as err:
            raise _UsageError("--k: %s" % err)
    coeffs = None
    if args.coeffs is not None:
        coeffs = _parse_values(field, args.coeffs, 4, "--coeffs")
    try:
        moved = group_action(args.kind, lam, mat, k=k, coeffs=coeffs)
    except ModuliError as err:
        raise _UsageError(str(err))
    report.add(str(lam), "action_%s" % args.kind, "pass",
               matrix=_one_line(moved))
    return report


def _cmd_pfaffian(args):
    field = _field_of(args)
    report = Report("pfaffian")
    mat = _read_matrix(field, args.matrix)
    try:
        value = pfaffian(mat)
    except MatrixError as err:
        raise _UsageError(str(err))
    report.add("input matrix", "pfaffian", "pass", value=str(value))
    return report


def _cmd_det(args):
    field = _field_of(args)
    report = Report("det")
    mat = _read_matrix(field, args.matrix)
    try:
        value = determinant(mat)
    except MatrixError as err:
        raise _UsageError(str(err))
    report.add("input matrix", "det", "pass", value=str(value))
    return report


# -- parser ----------------------------------------------------------------------

def _build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "json"), default="text")
    common.add_argument("--field", choices=sorted(_FIELDS), default="omega")
    common.add_argument("--seed", type=int, default=1)
    common.add_argument("--budget", type=int, default=100)

    parser = argparse.ArgumentParser(
        prog="fermatmf",
        description="exact matrix-factorization toolkit for the Fermat cubic")
    parser.set_defaults(handler=None, format="text")
    sub = parser.add_subparsers(dest="command")

    p = sub.add_parser("verify", parents=[common],
                       help="re-check factorization identities")
    p.add_argument("--all", action="store_true")
    p.add_argument("--family", metavar="ID")
    p.set_defaults(handler=_cmd_verify)

    p = sub.add_parser("enumerate", parents=[common],
                       help="list canonical class representatives")
    p.add_argument("--catalog", required=True)
    p.set_defaults(handler=_cmd_enumerate)

    p = sub.add_parser("equiv", parents=[common],
                       help="decide constant equivalence of two families")
    p.add_argument("--left", required=True, metavar="ID")
    p.add_argument("--right", required=True, metavar="ID")
    p.add_argument("--reduced", action="store_true",
                   help="compare degree-1 reductions instead")
    p.set_defaults(handler=_cmd_equiv)

    moduli = sub.add_parser("moduli", help="the 6x6 pencil layer")
    msub = moduli.add_subparsers(dest="action")

    p = msub.add_parser("solve", parents=[common],
                        help="solve the linear system in the Gamma2 entries")
    p.add_argument("--lambda", dest="lam", metavar="A,B")
    p.add_argument("--free", default="1,0,0", metavar="V,V,V")
    p.set_defaults(handler=_cmd_moduli_solve)

    p = msub.add_parser("sample", parents=[common],
                        help="search for a certified moduli point")
    p.add_argument("--lambda", dest="lam", metavar="A,B")
    p.set_defaults(handler=_cmd_moduli_sample)

    p = msub.add_parser("act", parents=[common],
                        help="apply a group action to a pencil")
    p.add_argument("--lambda", dest="lam", metavar="A,B")
    p.add_argument("--kind", required=True, choices=("Uk", "S2", "H"))
    p.add_argument("--k", metavar="VALUE")
    p.add_argument("--coeffs", metavar="K1,K2,K3,K4")
    p.add_argument("--matrix", metavar="PATH",
                   help="pencil to act on ('-' for stdin); "
                        "defaults to the zero-Gamma pencil")
    p.set_defaults(handler=_cmd_moduli_act)

    for name, handler in (("pfaffian", _cmd_pfaffian), ("det", _cmd_det)):
        p = sub.add_parser(name, parents=[common],
                           help="evaluate on a matrix read from file or stdin")
        p.add_argument("--matrix", default="-", metavar="PATH")
        p.set_defaults(handler=handler)

    return parser


def main(argv=None):
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 2
    if args.handler is None:
        parser.print_usage(sys.stderr)
        return 2
    try:
        report = args.handler(args)
    except _UsageError as err:
        print("error: %s" % err, file=sys.stderr)
        return 2
    print(report.render(args.format))
    return report.exit_status()


def entry():
    sys.exit(main())
