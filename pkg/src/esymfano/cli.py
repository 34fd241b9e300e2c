"""Command-line front end.

Subcommands: classify, equations, isolated, brute, xcheck, invariants,
reciprocals.  Matrix documents come from a file argument or stdin; reports
go to stdout (flat deterministic text, or JSON with --json), diagnostics to
stderr.  Exit status: 0 success, 1 mathematical negative, 2 input error.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import fano, invariants
from .fields import QQ, FieldError, field_from_descriptor
from .poly import LinearForm, default_names, format_monomial, format_polynomial

EXIT_OK = 0
EXIT_NEGATIVE = 1
EXIT_INPUT = 2


class InputError(ValueError):
    pass


# -- matrix documents -------------------------------------------------------


def parse_matrix_document(text: str):
    """First non-comment line is the field descriptor ('Q' or 'F<p>');
    each following line is one whitespace-separated matrix row."""
    lines = []
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if line:
            lines.append(line)
    if not lines:
        raise InputError("empty matrix document")
    try:
        field = field_from_descriptor(lines[0])
    except FieldError as e:
        raise InputError(str(e)) from None
    rows = []
    width = None
    for line in lines[1:]:
        try:
            row = tuple(field.parse(tok) for tok in line.split())
        except FieldError as e:
            raise InputError(str(e)) from None
        if width is None:
            width = len(row)
        elif len(row) != width:
            raise InputError("ragged matrix document")
        rows.append(row)
    if not rows:
        raise InputError("matrix document has no rows")
    return field, tuple(rows)


def fmt_matrix(rows, field):
    return [[field.fmt(x) for x in row] for row in rows]


# -- report rendering -------------------------------------------------------


def emit(report: dict, as_json: bool):
    if as_json:
        print(json.dumps(report))
    else:
        for line in _flatten(report, ""):
            print(line)


def _flatten(value, prefix):
    if isinstance(value, dict):
        for k, v in value.items():
            yield from _flatten(v, f"{prefix}{k}." if not _is_leaf(v) else f"{prefix}{k}")
    elif isinstance(value, list) and not _is_leaf(value):
        for i, v in enumerate(value):
            yield from _flatten(v, f"{prefix}[{i}]." if not _is_leaf(v) else f"{prefix}[{i}]")
    else:
        yield f"{prefix}: {_leaf_str(value)}"


def _is_leaf(v):
    if isinstance(v, dict):
        return False
    if isinstance(v, list):
        return all(not isinstance(x, (dict, list)) for x in v)
    return True


def _leaf_str(v):
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, list):
        return "[" + ", ".join(_leaf_str(x) for x in v) + "]"
    if v is None:
        return "null"
    return str(v)


def _read_document(path):
    if path in (None, "-"):
        return sys.stdin.read()
    with open(path) as fh:
        return fh.read()


# -- subcommands ------------------------------------------------------------


def cmd_classify(args):
    field, rows = parse_matrix_document(_read_document(args.matrix))
    try:
        T = fano.PlaneMatrix(field, rows)
    except ValueError as e:
        raise InputError(str(e)) from None
    verdict = fano.classify(T)
    direct = fano.is_member_direct(T)
    report = {
        "command": "classify",
        "field": repr(field),
        "d": T.d,
        "m": T.m,
        "matrix": fmt_matrix(T.rows, field),
        "member": verdict.member,
        "direct_member": direct,
    }
    if verdict.member != direct:
        report["internal_error"] = "structural and direct verdicts disagree"
        emit(report, args.json)
        return EXIT_NEGATIVE
    cert = verdict.certificate
    if isinstance(cert, fano.ZeroPair):
        report["certificate"] = {
            "kind": "zero_pair",
            "columns": [cert.i + 1, cert.j + 1],
        }
    elif isinstance(cert, fano.PartitionCertificate):
        report["certificate"] = {
            "kind": "partition",
            "classes": [[j + 1 for j in cls] for cls in cert.classes],
            "num_classes": cert.num_classes,
            "scalars": [field.fmt(c) for c in cert.scalars],
            "spans_full_span_space": verdict.spans_full_span_space,
        }
    else:
        names = default_names(T.d, "s")
        report["witness_monomial"] = format_monomial(verdict.witness, names)
    emit(report, args.json)
    return EXIT_OK if verdict.member else EXIT_NEGATIVE


def cmd_equations(args):
    d, m = args.d, args.m
    if not 1 <= d < m:
        raise InputError(f"need 1 <= d < m, got d={d}, m={m}")
    if args.avoid:
        try:
            avoided = tuple(sorted(int(t) - 1 for t in args.avoid.split(",")))
        except ValueError:
            raise InputError(f"bad --avoid list {args.avoid!r}") from None
        if len(avoided) != m - d or any(not 0 <= j < m for j in avoided):
            raise InputError("--avoid must list m-d distinct column indices in 1..m")
        if len(set(avoided)) != len(avoided):
            raise InputError("--avoid indices must be distinct")
    else:
        avoided = tuple(range(d, m))
    pivots = tuple(j for j in range(m) if j not in avoided)
    chart = fano.Chart(avoided, pivots)
    equations = fano.fano_chart_equations(d, m, chart)
    a_names = [f"a{i+1}_{k+1}" for i in range(d) for k in range(m - d)]
    s_names = default_names(d, "s")
    report = {
        "command": "equations",
        "d": d,
        "m": m,
        "avoided_columns": [j + 1 for j in avoided],
        "identity_columns": [j + 1 for j in pivots],
        "unknowns": a_names,
        "equation_count": len(equations),
        "equations": [
            {
                "monomial": format_monomial(s_mono, s_names),
                "coefficient": format_polynomial(eq, a_names),
            }
            for s_mono, eq in equations
        ],
    }
    emit(report, args.json)
    return EXIT_OK


def cmd_isolated(args):
    if args.d < 1:
        raise InputError("d must be positive")
    points = fano.enumerate_isolated(args.d)
    report = {
        "command": "isolated",
        "d": args.d,
        "m": 2 * args.d,
        "count": len(points),
        "points": [
            {
                "matching": [[a + 1, b + 1] for a, b in match],
                "matrix": fmt_matrix(T.rows, QQ),
            }
            for match, T in points
        ],
    }
    emit(report, args.json)
    return EXIT_OK


def _prime_field(args):
    try:
        return field_from_descriptor(f"F{args.prime}")
    except FieldError as e:
        raise InputError(str(e)) from None


def cmd_brute(args):
    field = _prime_field(args)
    try:
        members = fano.brute_force_members(args.d, args.m, field, args.budget)
        total = fano.gaussian_binomial(args.m, args.d, field.characteristic)
    except fano.BudgetExceeded as e:
        raise InputError(str(e)) from None
    report = {
        "command": "brute",
        "d": args.d,
        "m": args.m,
        "p": field.characteristic,
        "total": total,
        "members": len(members),
        "member_matrices": [fmt_matrix(T.rows, field) for T in members],
    }
    emit(report, args.json)
    return EXIT_OK


def cmd_xcheck(args):
    field = _prime_field(args)
    try:
        result = fano.cross_check(args.d, args.m, field, args.budget)
    except fano.BudgetExceeded as e:
        raise InputError(str(e)) from None
    report = {
        "command": "xcheck",
        "d": result["d"],
        "m": result["m"],
        "p": result["p"],
        "total": result["total"],
        "members": result["members"],
        "mismatches": result["mismatches"],
        "certificate_histogram": result["certificate_histogram"],
        "class_count_histogram": {
            str(k): v for k, v in sorted(result["class_count_histogram"].items())
        },
    }
    emit(report, args.json)
    return EXIT_OK if result["mismatches"] == 0 else EXIT_NEGATIVE


def _load_scenario(path):
    if path == "z2-example":
        return None
    try:
        with open(path) as fh:
            return json.load(fh)
    except (OSError, json.JSONDecodeError) as e:
        raise InputError(f"bad scenario file {path}: {e}") from None


def cmd_invariants(args):
    scenario = _load_scenario(args.scenario)
    if scenario is None:
        result = invariants.z2_counterexample_report()
        report = {"command": "invariants", "scenario": "z2-example", **result}
        emit(report, args.json)
        ok = (
            result["xy_invariant"]
            and result["single_image_membership_hits"] == 0
            and result["polarization_identity"]
            and result["algebra_membership"]
        )
        return EXIT_OK if ok else EXIT_NEGATIVE
    try:
        field = field_from_descriptor(scenario.get("field", "Q"))
        gens = [
            [[field.parse(str(x)) for x in row] for row in g]
            for g in scenario["generators"]
        ]
        seeds = [
            LinearForm(field, [field.parse(str(x)) for x in coeffs])
            for coeffs in scenario["seeds"]
        ]
        degree = args.degree if args.degree is not None else int(scenario.get("degree", 4))
    except (KeyError, ValueError, FieldError) as e:
        raise InputError(f"bad scenario: {e}") from None
    try:
        group = invariants.close_group(gens, field)
        result = invariants.generation_check(group, seeds, degree)
    except (FieldError, invariants.ClosureBudgetExceeded, ValueError) as e:
        raise InputError(str(e)) from None
    report = {"command": "invariants", "scenario": args.scenario, **result}
    emit(report, args.json)
    return EXIT_OK if result["generated"] else EXIT_NEGATIVE


def cmd_reciprocals(args):
    field, rows = parse_matrix_document(_read_document(args.matrix))
    forms = [LinearForm(field, row) for row in rows]
    try:
        basis = fano.reciprocal_relation_space(forms)
        n_classes = fano.proportionality_class_count(forms)
    except ValueError as e:
        raise InputError(str(e)) from None
    report = {
        "command": "reciprocals",
        "field": repr(field),
        "num_forms": len(forms),
        "num_classes": n_classes,
        "relation_space_dim": len(basis),
        "basis": [[field.fmt(x) for x in vec] for vec in basis],
    }
    emit(report, args.json)
    return EXIT_OK


# -- entry point ------------------------------------------------------------


def build_parser():
    parser = argparse.ArgumentParser(
        prog="esymfano",
        description="Planes on the almost-top elementary symmetric hypersurface, "
        "and symmetric-pullback polynomial invariants.",
    )
    parser.add_argument("--json", action="store_true", help="emit the report as JSON")
    sub = parser.add_subparsers(dest="subcommand", required=True)

    p = sub.add_parser("classify", help="decide membership of a plane, with certificate")
    p.add_argument("matrix", nargs="?", help="matrix document path (default stdin)")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("equations", help="chart defining equations of the Fano scheme")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--avoid", help="comma-separated avoided columns (1-based)")
    p.set_defaults(func=cmd_equations)

    p = sub.add_parser("isolated", help="enumerate the isolated points for m = 2d")
    p.add_argument("--d", type=int, required=True)
    p.set_defaults(func=cmd_isolated)

    p = sub.add_parser("brute", help="exhaustive member enumeration over F_p")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--prime", type=int, required=True)
    p.add_argument("--budget", type=int, default=10**6)
    p.set_defaults(func=cmd_brute)

    p = sub.add_parser("xcheck", help="exhaustively compare classify vs direct expansion")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--prime", type=int, required=True)
    p.add_argument("--budget", type=int, default=10**6)
    p.set_defaults(func=cmd_xcheck)

    p = sub.add_parser("invariants", help="generation check or the built-in z2-example")
    p.add_argument("scenario", help="scenario JSON path, or 'z2-example'")
    p.add_argument("--degree", type=int, help="override the scenario degree bound")
    p.set_defaults(func=cmd_invariants)

    p = sub.add_parser("reciprocals", help="relation space of reciprocals of linear forms")
    p.add_argument("matrix", nargs="?", help="form document path (default stdin)")
    p.set_defaults(func=cmd_reciprocals)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except InputError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
