"""Command-line front end.

Exit status is 0 on success, including a computed negative answer such as
"the ∂∂̄-lemma fails". Domain errors exit with 1 and usage or parse errors
with 2. Results go to stdout and diagnostics to stderr.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path
from typing import List, Optional

from . import fixtures, serialize
from .constructions import ses_to_les
from .double_complex import THEORIES, check_ddbar, cohomology, validate
from .dsl import evaluate, parse_expr
from .errors import ExprSyntaxError, FormatError, HodgeError, NotFoundError
from .hodge import ddbar_text
from .linalg import rank

EXIT_OK, EXIT_DOMAIN, EXIT_USAGE = 0, 1, 2


def fixture_dir() -> Path:
    return Path(os.environ.get("HODGE_FIXTURES", "fixtures"))


def resolve(path: str) -> Path:
    """``path`` as given, or else relative to the fixture directory."""
    p = Path(path)
    if p.exists() or p.is_absolute():
        return p
    alt = fixture_dir() / p
    if alt.exists():
        return alt
    alt = fixture_dir() / p.name
    return alt if alt.exists() else p


def _dump(obj) -> str:
    return json.dumps(obj, sort_keys=True, ensure_ascii=False, separators=(", ", ": "))


def _table_json(table):
    if table.theory == "de-rham-total":
        return [[k, h] for k, h in sorted(table.dims.items())]
    return [[p, q, h] for (p, q), h in sorted(table.dims.items())]


def _table_text(table, k) -> str:
    if table.theory == "de-rham-total":
        degs = sorted({p + q for p, q in k.support})
        body = "  ".join(f"b{n}={table[n]}" for n in range(degs[0], degs[-1] + 1)) if degs else "(empty)"
        return f"{table.theory}\n  {body}"
    if not k.support:
        return f"{table.theory}\n  (empty)"
    ps = sorted({p for p, _ in k.support})
    qs = sorted({q for _, q in k.support})
    prange = range(ps[0], ps[-1] + 1)
    w = max(3, max(len(str(table[p, q])) for p in prange for q in qs) + 1)
    lines = [table.theory, "  q\\p" + "".join(str(p).rjust(w) for p in prange)]
    for q in range(qs[-1], qs[0] - 1, -1):
        lines.append(f"  {q:>3}" + "".join(str(table[p, q]).rjust(w) for p in prange))
    return "\n".join(lines)


def cmd_eval(args, out):
    h = evaluate(parse_expr(args.expr))
    if args.json:
        out.write(_dump(h.to_json()) + "\n")
        return EXIT_OK
    if not args.quiet:
        out.write(h.render() + "\n")
    out.write(f"ddbar: {ddbar_text(h.ddbar)}\n")
    if h.ddbar is True:
        out.write("betti: " + " ".join(map(str, h.betti())) + "\n")
    if args.quiet:
        out.write(str(h) + "\n")
    return EXIT_OK


def cmd_cohomology(args, out):
    k = serialize.load(resolve(args.path))
    theories = THEORIES if args.theory == "all" else (args.theory,)
    tables = [cohomology(k, t) for t in theories]
    if args.json:
        out.write(_dump({t.theory: _table_json(t) for t in tables}) + "\n")
    else:
        out.write("\n\n".join(_table_text(t, k) for t in tables) + "\n")
    return EXIT_OK


def cmd_check_ddbar(args, out):
    d = check_ddbar(serialize.load(resolve(args.path)))
    if args.json:
        out.write(_dump({"ddbar": d.holds, "witness": list(d.witness) if d.witness else None,
                         "failed": list(d.failed)}) + "\n")
    else:
        out.write(str(d) + "\n")
    return EXIT_OK


def cmd_validate(args, out):
    report = validate(serialize.load(resolve(args.path), validate=False))
    if args.json:
        out.write(_dump({"ok": report.ok, "violations": [
            {"bidegree": list(v.bidegree), "axiom": v.axiom, "detail": v.detail}
            for v in report.violations]}) + "\n")
    elif report.ok or not args.quiet:
        out.write(str(report) + "\n")
    return EXIT_OK if report.ok else EXIT_DOMAIN


def cmd_les(args, out):
    f, g = serialize.load_ses(resolve(args.path))
    les = ses_to_les(f, g, args.p, args.direction)
    if args.json:
        out.write(_dump({
            "direction": les.direction, "fixed": les.fixed,
            "terms": [{"space": t.space, "degree": t.degree, "dim": t.dim} for t in les.terms],
            "maps": [{"shape": [m.rows, m.cols],
                      "entries": [[str(x) for x in row] for row in m.tolist()]} for m in les.maps],
            "exact": les.is_exact()}) + "\n")
        return EXIT_OK
    out.write(" -> ".join(f"{t}[{t.dim}]" for t in les.terms) + "\n")
    if not args.quiet:
        for q, m in les.connecting_maps():
            out.write(f"delta^{q}: rank {rank(m)} of shape {m.rows}x{m.cols}\n")
    out.write("exact: true\n")
    return EXIT_OK


def cmd_fixtures(args, out):
    if args.action == "list":
        names = {"complexes": fixtures.complex_names(), "leaves": fixtures.leaf_names(),
                 "files": sorted(p.name for p in fixture_dir().glob("*.json"))
                 if fixture_dir().is_dir() else []}
        if args.json:
            out.write(_dump(names) + "\n")
        else:
            for key, vals in names.items():
                out.write(f"{key}: {', '.join(vals) if vals else '(none)'}\n")
        return EXIT_OK
    if not args.name:
        raise _Usage("fixtures emit needs a NAME")
    k = fixtures.builtin_complex(args.name)
    if args.out:
        serialize.save(k, args.out)
        if not args.quiet:
            sys.stderr.write(f"wrote {args.out}\n")
    else:
        out.write(serialize.dumps(k))
    return EXIT_OK


class _Usage(Exception):
    pass


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", default=argparse.SUPPRESS,
                        help="machine-readable output")
    common.add_argument("--quiet", action="store_true", default=argparse.SUPPRESS,
                        help="minimal output")
    parser = argparse.ArgumentParser(
        prog="dolbeault", parents=[common],
        description="Dolbeault, Bott-Chern and Hodge-diamond computations.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("eval", parents=[common], help="evaluate a construction expression")
    p.add_argument("expr")
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("cohomology", parents=[common], help="cohomology tables of a complex file")
    p.add_argument("path")
    p.add_argument("--theory", choices=("all",) + THEORIES, default="all")
    p.set_defaults(func=cmd_cohomology)

    p = sub.add_parser("check-ddbar", parents=[common], help="decide the ddbar-lemma")
    p.add_argument("path")
    p.set_defaults(func=cmd_check_ddbar)

    p = sub.add_parser("validate", parents=[common], help="check the double-complex axioms")
    p.add_argument("path")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("les", parents=[common], help="long exact sequence of a short exact sequence")
    p.add_argument("path", help="JSON array of two morphisms A->B, B->C")
    p.add_argument("--p", type=int, default=0, help="fixed degree (p for rows, q for columns)")
    p.add_argument("--direction", choices=("row", "column"), default="row")
    p.set_defaults(func=cmd_les)

    p = sub.add_parser("fixtures", parents=[common], help="list or emit built-in fixtures")
    p.add_argument("action", choices=("list", "emit"))
    p.add_argument("name", nargs="?")
    p.add_argument("--out", help="write to a file instead of stdout")
    p.set_defaults(func=cmd_fixtures)
    return parser


def main(argv: Optional[List[str]] = None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    args.json = getattr(args, "json", False)
    args.quiet = getattr(args, "quiet", False)
    try:
        return args.func(args, out)
    except (ExprSyntaxError, FormatError, _Usage, OSError) as e:
        err.write(f"error: {e}\n")
        return EXIT_USAGE
    except NotFoundError as e:
        err.write(f"error: {e}\n")
        return EXIT_USAGE
    except HodgeError as e:
        err.write(f"error: {e}\n")
        return EXIT_DOMAIN


if __name__ == "__main__":
    sys.exit(main())
