"""Command line front end.

Each subcommand reads exact inputs (JSON files or flags), runs the
exact-arithmetic machinery and writes a deterministic JSON report to
stdout: sorted keys, two-space indent, no floats.  Progress chatter
from the brute-force oracle goes to stderr, so redirecting stdout
always captures the same bytes for the same invocation.

Exit codes: 0 success, 1 for unreadable or malformed input, 2 for a
violated mathematical precondition (not an involution, scalar matrix,
mismatched groups, a group too large to enumerate), 3 for internal
errors.
"""

import argparse
import json
import sys
from fractions import Fraction

from . import census, oracle, verify
from .errors import InputError, InternalError, PreconditionError, SoinvError
from .fields import GroundField
from .forms import FormContext, classify_membership, parse_scalar
from .involutions import (
    Type1Data,
    Type2Data,
    Type3Data,
    Type4Data,
    classify_involution,
    normalize_inner,
)
from .isomorphy import DEFAULT_GROUP_CAP, isomorphic


class _Parser(argparse.ArgumentParser):
    """argparse variant that routes usage errors through our exit codes."""

    def error(self, message):
        raise InputError(message)


# -- output -----------------------------------------------------------------


def _render(value):
    """Recursively turn exact values into JSON-safe ones.

    Fractions become ints when integral and "num/den" strings
    otherwise; tuples become lists (so quadratic extension elements
    come out as [base, omega] pairs); everything exotic falls back to
    str.  Floats never appear because nothing upstream produces them.
    """
    if isinstance(value, Fraction):
        if value.denominator == 1:
            return int(value)
        return f"{value.numerator}/{value.denominator}"
    if isinstance(value, bool) or value is None or isinstance(value, (int, str)):
        return value
    if isinstance(value, (tuple, list)):
        return [_render(v) for v in value]
    if isinstance(value, dict):
        return {str(k): _render(v) for k, v in value.items()}
    return str(value)


def _write_text(text, out_path):
    if out_path:
        try:
            with open(out_path, "w", encoding="utf-8") as handle:
                handle.write(text)
        except OSError as err:
            raise InputError(f"cannot write {out_path}: {err}") from None
    else:
        sys.stdout.write(text)


def _emit(payload, out_path):
    _write_text(json.dumps(payload, indent=2, sort_keys=True) + "\n", out_path)


def _emit_table(header, rows, out_path):
    lines = ["\t".join(header)]
    lines.extend("\t".join(cells) for cells in rows)
    _write_text("\n".join(lines) + "\n", out_path)


def _cell(value):
    """One TSV cell: tuples joined with commas, empty tuples left blank."""
    rendered = _render(value)
    if isinstance(rendered, list):
        return ",".join(str(v) for v in rendered)
    return str(rendered)


# -- input ------------------------------------------------------------------


def _load_json(path):
    try:
        with open(path, encoding="utf-8") as handle:
            return json.load(handle)
    except OSError as err:
        raise InputError(f"cannot read {path}: {err}") from None
    except json.JSONDecodeError as err:
        raise InputError(f"{path} is not valid JSON: {err}") from None


def _involution_source(path, args):
    """Load one involution input file and merge the command line flags.

    The file holds either a bare matrix [[...], ...] or an object with
    a "matrix" key and optional "field", "form" and "alpha" keys.
    Flags win over file keys, so a bare matrix can be steered entirely
    from the command line.  Only loading and shape checks happen here;
    entry parsing waits until every referenced file has been read.
    """
    payload = _load_json(path)
    if isinstance(payload, list):
        payload = {"matrix": payload}
    if not isinstance(payload, dict):
        raise InputError(f"{path}: expected a matrix or an object holding one")
    if "matrix" not in payload:
        raise InputError(f'{path}: no "matrix" key')
    field_text = args.field if args.field is not None else payload.get("field")
    if field_text is None:
        raise InputError(f"{path}: no field given (file key or --field)")
    form = args.form if args.form is not None else payload.get("form", "standard")
    alpha_text = args.alpha if args.alpha is not None else payload.get("alpha")
    return field_text, form, alpha_text, payload["matrix"], path


def _parse_matrix(field, matrix, path):
    if not isinstance(matrix, list) or not matrix:
        raise InputError(f"{path}: the matrix must be a nonempty list of rows")
    n = len(matrix)
    rows = []
    for row in matrix:
        if not isinstance(row, list) or len(row) != n:
            raise InputError(f"{path}: the matrix must be square")
        for entry in row:
            if isinstance(entry, float):
                raise InputError(
                    f"{path}: entry {entry!r} is a float; write exact "
                    'entries as integers or strings like "3/2"'
                )
        rows.append(tuple(parse_scalar(field, entry) for entry in row))
    return tuple(rows)


def _build_involution(field_text, form, alpha_text, matrix, path):
    field = GroundField.parse(field_text)
    coeff = _parse_matrix(field, matrix, path)
    ctx = FormContext.build(field, len(coeff), form)
    alpha = None
    if alpha_text is not None:
        alpha = parse_scalar(field, alpha_text)
    return ctx, coeff, alpha


# -- subcommands ------------------------------------------------------------


def _decomposition_payload(data):
    if isinstance(data, Type1Data):
        return {
            "kind": "type1",
            "s": data.s,
            "t": data.t,
            "negated": data.negated,
            "x": _render(data.x),
            "x1": _render(data.x1),
            "x2": _render(data.x2),
            "ext_alpha": _render(data.ext_alpha),
        }
    if isinstance(data, Type2Data):
        return {
            "kind": "type2",
            "alpha": _render(data.alpha),
            "x": _render(data.x),
            "x1": _render(data.x1),
            "x2": _render(data.x2),
        }
    if isinstance(data, Type3Data):
        return {
            "kind": "type3",
            "case": data.case,
            "x": _render(data.x),
            "block": _render(data.block),
            "i_value": _render(data.i_value),
            "ext_alpha": _render(data.ext_alpha),
        }
    if isinstance(data, Type4Data):
        return {
            "kind": "type4",
            "case": data.case,
            "alpha": _render(data.alpha),
            "u": _render(data.u),
            "u1": _render(data.u1),
        }
    raise InternalError(f"unknown decomposition payload {type(data).__name__}")


def _cmd_classify(args):
    source = _involution_source(args.input, args)
    ctx, coeff, alpha = _build_involution(*source)
    inv, data = classify_involution(coeff, ctx, alpha=alpha)
    member = classify_membership(inv.coeff, inv.ctx)
    report = {
        "command": "classify",
        "field": str(inv.ctx.field),
        "n": inv.n,
        "form_diagonal": _render(inv.ctx.diag),
        "type": inv.inv_type,
        "epsilon": inv.epsilon,
        "alpha": _render(inv.alpha),
        "alpha_class": _render(inv.alpha_class),
        "similitude_scale": _render(inv.scale),
        "coefficient": _render(inv.coeff),
        "membership": {
            "category": member.category,
            "factor": _render(member.factor),
        },
        "decomposition": _decomposition_payload(data),
    }
    _emit(report, args.out)
    return 0


def _cmd_isomorphic(args):
    # every referenced file is read and shape-checked before any
    # arithmetic starts, so a bad second file cannot waste a long run
    sources = [_involution_source(path, args) for path in (args.left, args.right)]
    invs = []
    for source in sources:
        ctx, coeff, alpha = _build_involution(*source)
        invs.append(normalize_inner(coeff, ctx, alpha=alpha))
    cap = args.max_elements if args.max_elements is not None else DEFAULT_GROUP_CAP
    verdict = isomorphic(invs[0], invs[1], group=args.group, max_group_elements=cap)
    report = {
        "command": "isomorphic",
        "field": str(invs[0].ctx.field),
        "n": invs[0].n,
        "group": args.group,
        "types": [invs[0].inv_type, invs[1].inv_type],
        "isomorphic": verdict.isomorphic,
        "route": verdict.route,
        "invariants": _render(verdict.invariants),
        "witness": _render(verdict.witness),
    }
    _emit(report, args.out)
    return 0


def _cmd_census(args):
    field = GroundField.parse(args.field)
    bounds = census.class_bounds(args.n, field)
    tau1 = census.tau1(field)
    tau2 = [(m, census.tau2(m, field)) for m in range(1, args.n + 1)]
    if args.format == "tsv":
        rows = [("tau1", str(tau1))]
        rows.extend((f"tau2[{m}]", str(v)) for m, v in tau2)
        rows.extend(
            (f"type{i} classes <=", str(getattr(bounds, f"c{i}")))
            for i in (1, 2, 3, 4)
        )
        _emit_table(("quantity", "value"), rows, args.out)
        return 0
    report = {
        "command": "census",
        "field": str(field),
        "n": args.n,
        "tau1": tau1,
        "tau2": [[m, v] for m, v in tau2],
        "bounds": {
            "type1": bounds.c1,
            "type2": bounds.c2,
            "type3": bounds.c3,
            "type4": bounds.c4,
        },
    }
    _emit(report, args.out)
    return 0


def _cmd_representatives(args):
    if args.q is not None:
        q = args.q
    elif args.field is not None:
        field = GroundField.parse(args.field)
        if field.kind != "Fp":
            raise PreconditionError(
                "representative families live over finite fields; "
                "pass --field Fp:<p> or --q <prime power>"
            )
        q = field.p
    else:
        raise InputError("representatives need --field Fp:<p> or --q")
    reps = census.fq_type1_representatives(args.n, q, args.variant)
    report = {
        "command": "representatives",
        "n": reps.n,
        "q": reps.q,
        "variant": reps.variant,
        "count": reps.count,
        "form_diagonal": _render(reps.form_diag),
        "matrices": _render(reps.matrices),
        "duplicates": _render(reps.duplicates),
        "verified_by": reps.verified_by,
        "notes": _render(reps.notes),
    }
    _emit(report, args.out)
    return 0


def _cmd_qp_table(args):
    if args.p == 2:
        cells = sorted(
            census.q2_invariant_cells(),
            key=lambda c: (c.det_class, -c.hasse),
        )
        if args.format == "tsv":
            rows = [
                (_cell(c.det_class), str(c.hasse), _cell(c.tail)) for c in cells
            ]
            _emit_table(("det_class", "hasse", "tail"), rows, args.out)
            return 0
        report = {
            "command": "qp-table",
            "p": 2,
            "class_bound": census.q2_class_bound(),
            "rows": [
                {
                    "det_class": _render(c.det_class),
                    "hasse": c.hasse,
                    "tail": _render(c.tail),
                }
                for c in cells
            ],
        }
        _emit(report, args.out)
        return 0
    table = sorted(
        census.qp_type1_invariant_table(args.p),
        key=lambda r: (r.det_class, -r.c1, -r.c2),
    )
    if args.format == "tsv":
        rows = [
            (
                _cell(r.det_class),
                str(r.c1),
                str(r.c2),
                _cell(r.x1_tail),
                _cell(r.x2_tail),
                r.realizable,
            )
            for r in table
        ]
        _emit_table(
            ("det_class", "c1", "c2", "x1_tail", "x2_tail", "realizable"),
            rows,
            args.out,
        )
        return 0
    report = {
        "command": "qp-table",
        "p": args.p,
        "rows": [
            {
                "det_class": _render(r.det_class),
                "c1": r.c1,
                "c2": r.c2,
                "x1_tail": _render(r.x1_tail),
                "x2_tail": _render(r.x2_tail),
                "realizable": r.realizable,
            }
            for r in table
        ],
    }
    _emit(report, args.out)
    return 0


def _oracle_form(form, n, p):
    if form == "standard":
        return (1,) * n
    if form.startswith("diag:"):
        try:
            entries = [int(piece) for piece in form[len("diag:"):].split(",")]
        except ValueError:
            raise InputError(f"bad diagonal in form string {form!r}") from None
        if len(entries) != n:
            raise InputError(
                f"form lists {len(entries)} diagonal entries for n={n}"
            )
        mdiag = tuple(e % p for e in entries)
        if any(e == 0 for e in mdiag):
            raise PreconditionError(
                f"form {form!r} is degenerate mod {p}"
            )
        return mdiag
    raise InputError(f"cannot parse form string {form!r}")


def _cmd_oracle(args):
    mdiag = _oracle_form(args.form, args.n, args.p)

    def progress(message):
        print(message, file=sys.stderr, flush=True)

    report = {
        "command": "oracle",
        "n": args.n,
        "p": args.p,
        "form_diagonal": list(mdiag),
    }
    if args.type is None:
        if args.count_classes:
            raise InputError("--count-classes needs --type")
        report["group_order"] = oracle.group_order(
            args.n, args.p, mdiag,
            max_elements=args.max_elements, progress=progress,
        )
    elif args.count_classes:
        report["type"] = args.type
        report["class_count"] = oracle.count_classes_bruteforce(
            args.n, args.p, mdiag, args.type, progress=progress
        )
    else:
        delta, candidates = oracle.involution_candidates(
            args.n, args.p, mdiag, args.type, progress=progress
        )
        report["type"] = args.type
        report["delta"] = delta
        report["candidate_count"] = len(candidates)
    _emit(report, args.out)
    return 0


def _cmd_verify_paper(args):
    code = verify.run_report(sys.stdout)
    if args.out:
        results = verify.all_checks()
        manifest = verify.load_known_discrepancies()
        summary = verify.summarize(results, manifest)
        report = {
            "command": "verify-paper",
            "exit_code": summary.exit_code,
            "counts": summary.counts(),
            "checks": [
                {
                    "check": r.check_id,
                    "description": r.description,
                    "status": summary.statuses[r.check_id],
                    "computed": r.computed,
                    "printed": r.printed,
                }
                for r in results
            ],
        }
        _emit(report, args.out)
    return code


# -- wiring -----------------------------------------------------------------


def _add_out(parser):
    parser.add_argument(
        "--out", metavar="PATH", help="write the report here instead of stdout"
    )


def _add_involution_flags(parser):
    parser.add_argument(
        "--field",
        metavar="FIELD",
        help="ground field: Q, R, closed, Fp:<p> or Qp:<p> "
        "(overrides the file key)",
    )
    parser.add_argument(
        "--form",
        metavar="FORM",
        help='bilinear form: "standard" or "diag:<csv>" (overrides the file key)',
    )
    parser.add_argument(
        "--alpha",
        metavar="SCALAR",
        help="square of the similitude scale, when the coefficient matrix "
        "is given pre-scaled (overrides the file key)",
    )


def _build_parser():
    parser = _Parser(
        prog="soinv",
        description="classify and compare inner involutions of orthogonal groups",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    classify = sub.add_parser(
        "classify",
        help="type and canonical decomposition of one involution",
        description="Read a coefficient matrix from a JSON file, check that "
        "it induces an involution, and report its type, invariants and "
        "canonical decomposition.",
    )
    classify.add_argument("input", help="JSON file holding the matrix")
    _add_involution_flags(classify)
    _add_out(classify)

    iso = sub.add_parser(
        "isomorphic",
        help="decide whether two involutions are isomorphic",
        description="Read two coefficient matrices over the same group and "
        "decide isomorphy, by congruence invariants where the field theory "
        "settles it and by exhaustive search over small finite groups "
        "otherwise.",
    )
    iso.add_argument("left", help="JSON file for the first involution")
    iso.add_argument("right", help="JSON file for the second involution")
    _add_involution_flags(iso)
    iso.add_argument(
        "--group",
        choices=("O", "SO"),
        default="O",
        help="where the conjugating element may come from (default O)",
    )
    iso.add_argument(
        "--max-elements",
        type=int,
        metavar="N",
        help="cap on exhaustive group enumeration "
        f"(default {DEFAULT_GROUP_CAP})",
    )
    _add_out(iso)

    cen = sub.add_parser(
        "census",
        help="square-class counts and per-type class bounds",
        description="Report the square-class counts tau_1 and tau_2(m) and "
        "the four per-type upper bounds on isomorphy classes for one field "
        "and dimension.",
    )
    cen.add_argument("--field", required=True, metavar="FIELD")
    cen.add_argument("--n", type=int, required=True)
    cen.add_argument("--format", choices=("json", "tsv"), default="json")
    _add_out(cen)

    reps = sub.add_parser(
        "representatives",
        help="explicit type 1 class representatives over a finite field",
        description="Emit the standard or delta-twisted family of type 1 "
        "representatives over F_q, with the verification route and any "
        "duplicate pairs the published count hides.",
    )
    reps.add_argument("--field", metavar="FIELD", help="Fp:<p> form of --q")
    reps.add_argument(
        "--q", type=int, metavar="Q",
        help="odd prime power; non-prime q gives counts only",
    )
    reps.add_argument("--n", type=int, required=True)
    reps.add_argument(
        "--variant", choices=("standard", "delta_twisted"), default="standard"
    )
    _add_out(reps)

    qp = sub.add_parser(
        "qp-table",
        help="type 1 congruence-invariant table over Q_p",
        description="Tabulate the (det class, Hasse symbol) invariants of "
        "type 1 eigenspace pairs over Q_p, with witness diagonals and "
        "realizability flags; p=2 gets its own single-diagonal table.",
    )
    qp.add_argument("--p", type=int, required=True)
    qp.add_argument("--format", choices=("json", "tsv"), default="json")
    _add_out(qp)

    orc = sub.add_parser(
        "oracle",
        help="brute-force checks over small finite orthogonal groups",
        description="Exhaustively enumerate a small finite orthogonal group: "
        "its order, the involution coefficients of one type, or the number "
        "of conjugacy classes they fall into.  Progress goes to stderr.",
    )
    orc.add_argument("--n", type=int, required=True)
    orc.add_argument("--p", type=int, required=True)
    orc.add_argument(
        "--form", default="standard", metavar="FORM",
        help='"standard" or "diag:<csv>" (default standard)',
    )
    orc.add_argument("--type", type=int, choices=(1, 2, 3, 4))
    orc.add_argument(
        "--count-classes", action="store_true",
        help="partition the candidates into conjugacy classes "
        "(type 1 counts include the two scalar classes)",
    )
    orc.add_argument(
        "--max-elements", type=int, metavar="N",
        help="abort group enumeration beyond this many elements",
    )
    _add_out(orc)

    ver = sub.add_parser(
        "verify-paper",
        help="recompute every concrete claim of the published worked examples",
        description="Run the full battery of checks against the published "
        "worked examples and tables, reporting each as pass, known "
        "discrepancy, or failure.  Exits 0 when every check not listed in "
        "the discrepancy manifest passes.",
    )
    _add_out(ver)

    return parser


_HANDLERS = {
    "classify": _cmd_classify,
    "isomorphic": _cmd_isomorphic,
    "census": _cmd_census,
    "representatives": _cmd_representatives,
    "qp-table": _cmd_qp_table,
    "oracle": _cmd_oracle,
    "verify-paper": _cmd_verify_paper,
}


def main(argv=None):
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
        return _HANDLERS[args.command](args)
    except SoinvError as err:
        print(f"soinv: {err}", file=sys.stderr)
        return getattr(err, "exit_code", 3)
    except Exception as err:  # pragma: no cover - last-resort guard
        print(f"soinv: internal error: {err!r}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
