"""Command-line interface: ``cfspectra <command> ...``.

Exit codes: 0 success or confirmed, 1 refuted, 2 usage or parse error,
3 search budget exceeded, 4 indeterminate (comparison or verdict).
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from fractions import Fraction
from typing import Optional, Sequence

from . import __version__
from .bounds import evaluate
from .cf_engine import CFExpansion, approx_qualities, convergents, expand, value_of
from .errors import BudgetExceededError, CFSpectraError, IndeterminateComparison
from .exact_core import BASE_BITS, MAX_BITS, QuadSurd, bound_cmp, interval_text, surd_decimal
from .parsing import parse_cf, parse_surd
from .spectra import (
    alpha_k,
    beta_family,
    dirichlet_D_k,
    dirichlet_constant,
    lagrange_constant,
    lagrange_L,
    lagrange_value,
    markoff_enumerate,
)
from .verify import (
    REFUTED,
    CONFIRMED,
    VerifyReport,
    check_prop1,
    check_prop_b,
    check_szekeres,
    check_theorem1_part1,
    check_theorem1_part2,
    check_theorem2,
    combine,
    lemma5_check,
    lemma_instance,
    lemma_oracle,
    prop_a_count,
)

PRECISION_ENV = "CFSPECTRA_PRECISION"
DEFAULTS = {"format": "human", "digits": 30, "precision": BASE_BITS}

EXIT_OK, EXIT_REFUTED, EXIT_USAGE, EXIT_BUDGET, EXIT_INDETERMINATE = 0, 1, 2, 3, 4


class UsageError(Exception):
    pass


# ---------------------------------------------------------------------------
# input helpers


def read_number(text: str):
    """A CF literal (starts with ``[``) or a surd expression."""
    text = text.strip()
    if text.startswith("["):
        return value_of(parse_cf(text))
    x = parse_surd(text)
    return x.to_fraction() if x.is_rational else x


def read_cf(text: str) -> CFExpansion:
    text = text.strip()
    if text.startswith("["):
        return parse_cf(text)
    return expand(parse_surd(text))


def parse_range(text: str) -> range:
    """``5..20`` (inclusive) or a single integer."""
    try:
        if ".." in text:
            lo, hi = text.split("..", 1)
            return range(int(lo), int(hi) + 1)
        v = int(text)
        return range(v, v + 1)
    except ValueError:
        raise UsageError(f"bad range {text!r}, expected e.g. 5..20") from None


def _need(args, *names):
    for n in names:
        if getattr(args, n, None) is None:
            raise UsageError(f"--{n} is required for {args.command} {getattr(args, 'statement', '')}".rstrip())


# ---------------------------------------------------------------------------
# rendering


def _exact_entry(name: str, x, digits: int) -> dict:
    if isinstance(x, Fraction):
        x = QuadSurd.rational(x)
    return {"name": name, "exact": str(x), "decimal": surd_decimal(x, digits)}


def _render_entries(entries: list[dict], fmt: str) -> str:
    if fmt == "json":
        return json.dumps(entries, indent=2)
    if fmt == "csv":
        buf = io.StringIO()
        cols = list(entries[0]) if entries else []
        w = csv.DictWriter(buf, cols, lineterminator="\n")
        w.writeheader()
        w.writerows(entries)
        return buf.getvalue().rstrip("\n")
    lines = []
    for e in entries:
        head = e.get("name", "")
        rest = "  ".join(f"{k}={v}" for k, v in e.items() if k != "name")
        lines.append(f"{head}: {rest}" if head else rest)
    return "\n".join(lines)


def _report_rows_csv(report: VerifyReport, digits: int) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["statement", "n", "q", "value", "decimal", "bound", "ordering", "certified",
                "limit_ordering", "tag"])
    for stmt, r in report.iter_rows():
        w.writerow([stmt, r.n, r.q, str(r.value), r.decimal(digits), r.bound, r.ordering,
                    int(r.certified), r.limit_ordering, r.tag])
    return buf.getvalue().rstrip("\n")


def _report_human(report: VerifyReport, digits: int, indent: str = "") -> list[str]:
    v = report.verdict
    params = ", ".join(f"{k}={val}" for k, val in report.params.items())
    out = [f"{indent}{report.statement} ({params}): {v.status.upper()}  {v.reason}"]
    if v.witness is not None:
        w = v.witness
        out.append(f"{indent}  witness n={w.n} q={w.q} value={w.value} {w.ordering} {w.bound}")
    for key, val in report.details.items():
        if key in ("table",):
            for rec in val:
                out.append(f"{indent}  {rec}")
        else:
            out.append(f"{indent}  {key}: {val}")
    for r in report.rows:
        mark = " cert" if r.certified else ""
        lim = f"  [vs limit {r.limit_ordering}]" if r.limit_ordering else ""
        tag = f"  {r.tag}" if r.tag else ""
        out.append(f"{indent}  n={r.n:<4} q={r.q:<12} {r.decimal(digits)} {r.ordering}{mark}{lim}{tag}")
    for p in report.parts:
        out.extend(_report_human(p, digits, indent + "  "))
    return out


def render_report(report: VerifyReport, fmt: str, digits: int) -> str:
    if fmt == "json":
        return report.to_json(indent=2)
    if fmt == "csv":
        return _report_rows_csv(report, digits)
    return "\n".join(_report_human(report, digits))


# ---------------------------------------------------------------------------
# commands


def cmd_expand(args) -> tuple[str, int]:
    x = read_number(args.expr)
    cf = expand(x, max_terms=args.max_terms)
    if args.format == "json":
        out = {"input": args.expr, "cf": str(cf), "preperiod": list(cf.preperiod),
               "period": list(cf.period)}
        if args.terms is not None:
            out["terms"] = cf.terms(args.terms)
        return json.dumps(out, indent=2), EXIT_OK
    text = str(cf)
    if args.terms is not None:
        text += "\n" + ", ".join(str(a) for a in cf.terms(args.terms))
    return text, EXIT_OK


def cmd_constants(args) -> tuple[str, int]:
    k, d = args.index, args.digits
    if args.kind == "Dk":
        entries = [_exact_entry(f"D_{k}", dirichlet_D_k(k), d)]
    elif args.kind == "Lj":
        L = lagrange_L(k).exact
        entries = [_exact_entry(f"L_{k}", L, d)]
        entries[0]["enclosure"] = interval_text(L.enclose(args.precision), args.digits)
    elif args.kind == "alphak":
        entries = [_exact_entry(f"alpha_{k}", alpha_k(k), d)]
    else:
        fam = beta_family(k)
        if k % 2:
            entries = [_exact_entry(f"beta_{k}", fam.beta_k, d)]
        else:
            entries = [_exact_entry(f"beta_{k}^(1)", fam.beta_k_1, d)]
            if fam.beta_k_2 is not None:
                entries.append(_exact_entry(f"beta_{k}^(2)", fam.beta_k_2, d))
    return _render_entries(entries, args.format), EXIT_OK


def cmd_spectrum(args) -> tuple[str, int]:
    cf = read_cf(args.alpha)
    entries = [
        {"name": "alpha", "exact": str(cf), "decimal": surd_decimal(QuadSurd.coerce(value_of(cf)), args.digits)},
        _exact_entry("dirichlet", dirichlet_constant(cf), args.digits),
        _exact_entry("lagrange", lagrange_constant(cf), args.digits),
    ]
    return _render_entries(entries, args.format), EXIT_OK


def cmd_markoff(args) -> tuple[str, int]:
    entries = []
    for t in markoff_enumerate(args.count):
        L = lagrange_value(t.c)
        entries.append({"name": f"({t.a}, {t.b}, {t.c})", "L": str(L),
                        "decimal": surd_decimal(L, args.digits)})
    return _render_entries(entries, args.format), EXIT_OK


def cmd_bounds(args) -> tuple[str, int]:
    entries = []
    for xs in args.x:
        x = read_number(xs)
        if not isinstance(x, Fraction):
            raise UsageError("bound arguments must be rational")
        b = evaluate(args.family, args.index, x)
        entries.append({
            "name": b.label,
            "kind": b.kind,
            "exact": b.expression(),
            "decimal": b.decimal(args.digits),
            "enclosure": interval_text(b.enclosure(args.precision), args.digits),
        })
    return _render_entries(entries, args.format), EXIT_OK


def _verify_report(args) -> VerifyReport:
    s = args.statement
    if s == "szekeres":
        _need(args, "alpha", "N")
        return check_szekeres(read_cf(args.alpha), args.N)
    if s == "theorem1":
        _need(args, "alpha", "N")
        cf = read_cf(args.alpha)
        parts = [check_theorem1_part1(cf, args.N), check_theorem1_part2(cf, args.N)]
        return combine("theorem1", {"alpha": str(cf), "N": args.N}, parts)
    if s == "theorem2":
        _need(args, "k", "N")
        panel = [read_cf(p) for p in args.panel] if args.panel else None
        return check_theorem2(args.k, args.N, panel)
    if s == "prop1":
        _need(args, "k", "N")
        return check_prop1(args.k, args.N)
    if s == "propA":
        _need(args, "alpha", "m", "Q")
        return prop_a_count(read_cf(args.alpha), parse_range(args.m)[0], args.Q)
    if s == "propB":
        _need(args, "m")
        panel = [read_cf(p) for p in args.panel] if args.panel else None
        return check_prop_b(panel, parse_range(args.m)[0], args.N or 60)
    if s == "lemma5":
        _need(args, "k", "m")
        return lemma5_check(args.k, parse_range(args.m))
    which = int(s[-1])
    _need(args, "alpha", "n")
    inst = lemma_instance(which, read_cf(args.alpha), args.n, args.B)
    return lemma_oracle(which, inst)


def cmd_verify(args) -> tuple[str, int]:
    report = _verify_report(args)
    code = {CONFIRMED: EXIT_OK, REFUTED: EXIT_REFUTED}.get(report.verdict.status, EXIT_INDETERMINATE)
    return render_report(report, args.format, args.digits), code


TABLE_HEADER = ["n", "q_n", "quality", "bound", "ord"]


def cmd_table(args) -> tuple[str, int]:
    cf = read_cf(args.alpha)
    rows = []
    if args.N > 0:
        qs = approx_qualities(cf, args.N - 1)
        conv = convergents(cf, args.N)
        for n, (qn, qn1, v) in enumerate(qs):
            try:
                b = evaluate(args.bound, args.k, qn1)
            except CFSpectraError:
                rows.append([n, conv[n].q, surd_decimal(v, args.digits), "", ""])
                continue
            c = bound_cmp(v, b, max_bits=max(args.precision, MAX_BITS))
            rows.append([n, conv[n].q, surd_decimal(v, args.digits), b.decimal(args.digits), c.order.symbol])
    if args.format == "json":
        return json.dumps([dict(zip(TABLE_HEADER, r)) for r in rows], indent=2), EXIT_OK
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(TABLE_HEADER)
    w.writerows(rows)
    return buf.getvalue().rstrip("\n"), EXIT_OK


COMMANDS = {
    "expand": cmd_expand,
    "constants": cmd_constants,
    "spectrum": cmd_spectrum,
    "markoff": cmd_markoff,
    "bounds": cmd_bounds,
    "verify": cmd_verify,
    "table": cmd_table,
}

STATEMENTS = ["szekeres", "theorem1", "theorem2", "prop1", "propA", "propB",
              "lemma1", "lemma2", "lemma3", "lemma4", "lemma5"]


# ---------------------------------------------------------------------------
# parser and configuration


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=["human", "json", "csv"], default=None)
    common.add_argument("--digits", type=int, default=None, help="significant digits in decimals")
    common.add_argument("--precision", type=int, default=None,
                        help=f"enclosure bits (>= 64); default from ${PRECISION_ENV}")
    common.add_argument("--config", help="JSON file with default format/digits/precision")
    common.add_argument("--output", "-o", help="write to this file instead of stdout")

    p = argparse.ArgumentParser(prog="cfspectra", description="Exact continued-fraction spectra toolkit.")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    e = sub.add_parser("expand", parents=[common], help="continued fraction of a surd")
    e.add_argument("expr")
    e.add_argument("--terms", type=int, help="also list the first N partial quotients")
    e.add_argument("--max-terms", type=int, default=10_000, dest="max_terms")

    c = sub.add_parser("constants", parents=[common], help="spectrum constants")
    c.add_argument("kind", choices=["Dk", "Lj", "alphak", "betak"])
    c.add_argument("index", type=int)

    s = sub.add_parser("spectrum", parents=[common], help="Dirichlet and Lagrange constants")
    s.add_argument("alpha")

    m = sub.add_parser("markoff", parents=[common], help="Markoff triples and L values")
    m.add_argument("--count", type=int, default=10)

    b = sub.add_parser("bounds", parents=[common], help="evaluate a bound family")
    b.add_argument("family", choices=["f0", "fk", "gk", "gm"])
    b.add_argument("x", nargs="+")
    b.add_argument("--index", "-k", type=int, default=0)

    v = sub.add_parser("verify", parents=[common], help="run a verification sweep")
    v.add_argument("statement", choices=STATEMENTS)
    v.add_argument("--alpha")
    v.add_argument("--N", type=int)
    v.add_argument("--k", type=int)
    v.add_argument("--m", help="integer or inclusive range like 5..20")
    v.add_argument("--Q", type=int)
    v.add_argument("--n", type=int, help="lemma depth")
    v.add_argument("--B", type=int, default=3, help="lemma quotient bound")
    v.add_argument("--panel", action="append", help="panel member (repeatable)")

    t = sub.add_parser("table", parents=[common], help="CSV of q_{n+1}||q_n alpha|| against a bound")
    t.add_argument("--alpha", required=True)
    t.add_argument("--N", type=int, required=True)
    t.add_argument("--bound", choices=["f0", "fk", "gk", "gm"], default="f0")
    t.add_argument("--k", type=int, default=0)
    return p


def resolve_settings(args, environ=os.environ) -> None:
    """Fill format/digits/precision: flags, then config file, then env, then defaults."""
    cfg = {}
    if args.config:
        try:
            with open(args.config, encoding="utf-8") as fh:
                cfg = json.load(fh)
        except (OSError, json.JSONDecodeError) as exc:
            raise UsageError(f"cannot read config {args.config}: {exc}") from None
        if not isinstance(cfg, dict):
            raise UsageError("config file must hold a JSON object")
    env = {}
    if environ.get(PRECISION_ENV):
        try:
            env["precision"] = int(environ[PRECISION_ENV])
        except ValueError:
            raise UsageError(f"${PRECISION_ENV} must be an integer") from None
    for key in DEFAULTS:
        if getattr(args, key) is None:
            setattr(args, key, cfg.get(key, env.get(key, DEFAULTS[key])))
    if args.precision < 64:
        raise UsageError("precision must be >= 64 bits")
    if args.digits < 1:
        raise UsageError("digits must be >= 1")
    if args.format not in ("human", "json", "csv"):
        raise UsageError(f"unknown format {args.format!r}")


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        resolve_settings(args)
        text, code = COMMANDS[args.command](args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except BudgetExceededError as exc:
        print(f"budget exceeded: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except IndeterminateComparison as exc:
        print(f"indeterminate: {exc}", file=sys.stderr)
        return EXIT_INDETERMINATE
    except (CFSpectraError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    else:
        print(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
