"""Command line front end: ``hecke-central {table,lvalue,classset,check}``."""

import argparse
import csv
import io
import json
import sys
from concurrent.futures import ProcessPoolExecutor

from . import __version__
from .analytic import DEFAULT_PREC, PrecisionError
from .central import (InvariantError, OracleDisagreement, central_value, class_set_for,
                      nonvanishing_certificate)
from .quadfield import CLASS_NUMBER_ONE, QuadForm, canonical_ideal_above, split_prime_norms

EXIT_OK, EXIT_USAGE, EXIT_INVARIANT, EXIT_ORACLE = 0, 1, 2, 3
SCHEMA = 1
# "paper-tables" is kept as an alias of "published-tables" for existing scripts
SUITES = ("published-tables", "paper-tables", "properties", "nonvanishing")


class UsageError(Exception):
    pass


class Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


def build_parser():
    p = Parser(prog="hecke-central", description="Central values of Hecke L-functions "
               "of imaginary quadratic fields via theta quotients and quaternion ideal classes.")
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="cmd", required=True, parser_class=Parser)

    def common(sp, single=False):
        sp.add_argument("--n", type=int, required=True, help="base field discriminant N")
        if single:
            sp.add_argument("--d", type=int, required=True, help="split prime |D|")
        else:
            sp.add_argument("--dmax", type=int, help="all split |D| up to this bound")
            sp.add_argument("--dlist", type=str, help="comma separated |D| values")
        sp.add_argument("--prec", type=int, default=DEFAULT_PREC, help="working precision in digits")
        sp.add_argument("--conjugate-d", action="store_true", help="use the other prime above |D|")
        sp.add_argument("--format", choices=("text", "csv", "json"), default="text")
        sp.add_argument("--out", help="write output to this file instead of stdout")
        sp.add_argument("--figures", metavar="DIR", help="also render figures into DIR")

    t = sub.add_parser("table", help="n-table with ideal class labels")
    common(t)
    t.add_argument("--jobs", type=int, default=1, help="worker processes")
    t.add_argument("--no-oracle", action="store_true", help="skip the oracle evaluation")

    lv = sub.add_parser("lvalue", help="single central value with oracle comparison")
    common(lv, single=True)
    lv.add_argument("--verify-oracle", action="store_true",
                    help="require agreement to 10^(-prec/2) (always on; kept for scripts)")

    cs = sub.add_parser("classset", help="left ideal classes of the standard maximal order")
    cs.add_argument("--n", type=int, required=True)
    cs.add_argument("--format", choices=("text", "json"), default="text")
    cs.add_argument("--out")

    ck = sub.add_parser("check", help="run the reproduction or property suites")
    ck.add_argument("--suite", choices=SUITES, required=True, metavar="{published-tables,properties,nonvanishing}")
    ck.add_argument("--prec", type=int, default=DEFAULT_PREC)
    ck.add_argument("--quick", action="store_true", help="trimmed property suite")
    ck.add_argument("--dmax", type=int, default=500, help="bound for the nonvanishing suite")
    ck.add_argument("--out")
    return p


def validate(args):
    if args.n not in CLASS_NUMBER_ONE:
        raise UsageError(f"--n must be one of {list(CLASS_NUMBER_ONE)}")
    if getattr(args, "prec", 64) < 32:
        raise UsageError("--prec must be at least 32")
    if getattr(args, "d", None) is not None:
        Ds = [args.d]
    elif getattr(args, "dlist", None):
        Ds = [int(x) for x in args.dlist.split(",") if x.strip()]
    elif getattr(args, "dmax", None):
        Ds = split_prime_norms(args.n, args.dmax)
    else:
        return []
    for D in Ds:
        try:
            canonical_ideal_above(args.n, D)
        except ValueError as exc:
            raise UsageError(str(exc))
    return sorted(set(Ds))


def _one(job):
    N, D, P, conj, oracle = job
    return central_value(N, D, P, conjugate=conj, oracle=oracle)


def compute_reports(N, Ds, P, conj, oracle, jobs):
    work = [(N, D, P, conj, oracle) for D in Ds]
    if jobs > 1 and len(work) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as ex:
            return list(ex.map(_one, work))
    return [_one(w) for w in work]


def config_dict(args, Ds):
    return {"N": args.n, "D": Ds, "prec": args.prec,
            "conjugate_d": bool(getattr(args, "conjugate_d", False))}


def render(reports, args, Ds):
    rows = [row for rep in reports for row in rep.rows]
    if args.format == "json":
        doc = {"schema": SCHEMA, "config": config_dict(args, Ds),
               "rows": [r.as_dict() for r in rows]}
        if len(reports) == 1:
            doc["summary"] = reports[0].summary()
        else:
            doc["summary"] = {str(rep.D): rep.summary() for rep in reports}
        return json.dumps(doc, indent=1) + "\n"
    if args.format == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["D", "form", "reduced_form", "n", "class", "residual"])
        for r in rows:
            w.writerow([r.D, str(r.form), str(r.reduced), r.n, r.class_label, f"{r.residual:.3e}"])
        return buf.getvalue()
    out = [f"N = {args.n}  precision = {args.prec}"]
    out.append(f"{'D':>5}  {'form':<16} {'n':>5}  {'class':<6} {'type':>4}  residual")
    for r in rows:
        out.append(f"{r.D:>5}  {str(r.reduced):<16} {r.n:>5}  {r.class_label:<6} {r.type_index:>4}  {r.residual:.1e}")
    for rep in reports:
        s = rep.summary()
        out.append(f"|D|={rep.D} b={rep.b}: sum n = {rep.total}, parity {rep.parity}, "
                   f"L = {s['L_formula']['re']} + {s['L_formula']['im']} i, "
                   f"oracle diff {s['oracle_diff']}, nonvanishing {rep.nonvanishing}")
    return "\n".join(out) + "\n"


def emit(text, path):
    if path:
        with open(path, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def cmd_table(args):
    Ds = validate(args)
    if not Ds:
        raise UsageError("give --dmax or --dlist")
    reports = compute_reports(args.n, Ds, args.prec, args.conjugate_d, not args.no_oracle, args.jobs)
    emit(render(reports, args, Ds), args.out)
    if args.figures:
        from .plotting import render_report_figures
        for p in render_report_figures(reports, args.figures, f"table_n{-args.n}"):
            print(f"figure: {p}", file=sys.stderr)
    return EXIT_OK


def cmd_lvalue(args):
    Ds = validate(args)
    rep = central_value(args.n, Ds[0], args.prec, conjugate=args.conjugate_d)
    if args.format == "text":
        s = rep.summary()
        text = (f"N = {rep.N}  |D| = {rep.D}  b = {rep.b}  precision = {args.prec}\n"
                f"L_formula   = {rep.L_formula}\n"
                f"L_oracle    = {rep.L_oracle}\n"
                f"|difference| = {s['oracle_diff']}\n"
                f"w_psi       = {rep.w_psi}  (xi2 = {rep.xi2})\n"
                f"sum n       = {rep.total}  parity = {rep.parity}\n"
                f"nonvanishing = {str(rep.nonvanishing).lower()}\n")
    else:
        text = render([rep], args, Ds)
    emit(text, args.out)
    if args.figures:
        from .plotting import render_report_figures
        for p in render_report_figures([rep], args.figures, f"lvalue_n{-args.n}_d{rep.D}"):
            print(f"figure: {p}", file=sys.stderr)
    return EXIT_OK


def cmd_classset(args):
    validate(args)
    cs = class_set_for(args.n)
    from .quatalg import embedding_count, lattice_norm
    data = {"schema": SCHEMA, "N": args.n, "h": cs.h, "t": cs.t, "mass": str(cs.mass()),
            "types": [[cs.labels[i] for i in g] for g in cs.types],
            "classes": [{"label": cs.labels[i], "norm": str(lattice_norm(I)),
                         "right_order_units": cs.units[i],
                         "embeddings": str(embedding_count(cs.right_orders[i])),
                         "basis": I.dump()} for i, I in enumerate(cs.ideals)]}
    if args.format == "json":
        text = json.dumps(data, indent=1) + "\n"
    else:
        lines = [f"N = {args.n}: h = {cs.h}, t = {cs.t}, mass = {data['mass']}",
                 "types: " + " ".join("{" + ",".join(g) + "}" for g in data["types"])]
        for c in data["classes"]:
            lines.append(f"{c['label']:>4}  norm {c['norm']:>4}  units {c['right_order_units']}  "
                         f"embeddings {c['embeddings']}  basis {c['basis']}")
        text = "\n".join(lines) + "\n"
    emit(text, args.out)
    return EXIT_OK


def cmd_check(args):
    lines = []
    ok = True
    summary = {"schema": SCHEMA, "suite": args.suite, "results": []}
    if args.suite in ("published-tables", "paper-tables"):
        from .golden import compare
        for N in (-7, -11, -163):
            P = max(args.prec, 80) if N == -163 and args.prec == DEFAULT_PREC else args.prec
            try:
                c = compare(N, P)
                good, detail = c.ok, f"{len(c.rows)} rows, signs {c.signs}" + \
                    (f", problems {c.problems}" if c.problems else "")
            except (PrecisionError, InvariantError) as exc:
                good, detail = False, f"{type(exc).__name__}: {exc}"
            ok &= good
            lines.append(f"{'PASS' if good else 'FAIL'}  table N={N}  {detail}")
            summary["results"].append({"name": f"table N={N}", "ok": good, "detail": detail})
    elif args.suite == "properties":
        from .checks import property_suite
        for r in property_suite(args.prec, quick=args.quick):
            ok &= r.ok
            lines.append(r.line())
            summary["results"].append({"name": r.name, "ok": r.ok, "detail": r.detail})
    else:
        for D, parity, good in nonvanishing_certificate(-7, args.dmax, args.prec):
            ok &= good
            lines.append(f"{'PASS' if good else 'FAIL'}  N=-7 |D|={D} parity {parity}")
            summary["results"].append({"name": f"|D|={D}", "ok": good, "detail": f"parity {parity}"})
    summary["ok"] = ok
    text = "\n".join(lines) + "\n" + json.dumps({"ok": ok, "failed": [r["name"] for r in summary["results"] if not r["ok"]]}) + "\n"
    emit(text, args.out)
    return EXIT_OK if ok else EXIT_INVARIANT


COMMANDS = {"table": cmd_table, "lvalue": cmd_lvalue, "classset": cmd_classset, "check": cmd_check}


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return COMMANDS[args.cmd](args)
    except UsageError as exc:
        print(f"hecke-central: usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OracleDisagreement as exc:
        print(json.dumps({"error": "oracle disagreement", "detail": str(exc)}), file=sys.stderr)
        return EXIT_ORACLE
    except (InvariantError, PrecisionError, RuntimeError) as exc:
        print(json.dumps({"error": type(exc).__name__, "detail": str(exc)}), file=sys.stderr)
        return EXIT_INVARIANT


if __name__ == "__main__":
    sys.exit(main())
