"""Command-line interface.

Subcommands: moment, constants, verify, series, psi, lvalue, family.

Text forms: a GF(q^2) element is written "a+b*x" where x is the class of the
generator of GF(q^2)/GF(q) and a, b are canonical GF(q) representatives; its
JSON form is [a, b].  Polynomials are written in T, e.g. "T^2+(2+1*x)*T+3",
and serialize as a list of coefficients from the constant term up.

Exit codes: 0 success, 1 verification failure, 2 usage error.
JSON floats are written with Python's round-trip repr.  The cache directory
defaults to ~/.cache/ffcubic and can be moved with FFCUBIC_CACHE.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import sys
from pathlib import Path

from . import __version__

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise UsageError(message)


def _field(text):
    """Shared --q validator: odd prime power congruent to 2 mod 3."""
    from .ffield import make_field

    try:
        return make_field(int(text))
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _even_genus(text):
    g = int(text)
    if g < 0 or g % 2:
        raise argparse.ArgumentTypeError(f"genus must be even and non-negative, got {g}")
    return g


def _genus_list(text):
    return [_even_genus(t) for t in text.split(",") if t]


def _positive(text):
    n = int(text)
    if n < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {n}")
    return n


def dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"


def _emit(args, obj, text=None):
    """Print ``text`` (or the JSON) and write the JSON to --out if given."""
    sys.stdout.write(text if text is not None else dumps(obj))
    if getattr(args, "out", None):
        Path(args.out).write_text(dumps(obj))


def _cache(args):
    if getattr(args, "no_cache", False):
        return None
    from .cache import Cache

    return Cache()


def _csv_text(header, rows):
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    return buf.getvalue()


# ---------------------------------------------------------------- commands
def cmd_moment(args):
    from .moments import compute_moment, scaling_table
    from .series import euler_constants

    ctx, cache = args.q, _cache(args)
    constants = euler_constants(ctx, args.cutoff)
    if args.scaling:
        rows = scaling_table(ctx, args.scaling, jobs=args.jobs, constants=constants, cache=cache, force=args.force)
        cols = list(rows[0])
        text = _csv_text(cols, [[repr(r[c]) if isinstance(r[c], float) else r[c] for c in cols] for r in rows])
        if args.csv:
            Path(args.csv).write_text(text)
        _emit(args, {"q": ctx.q, "rows": rows}, text)
        return EXIT_OK
    if args.g is None:
        raise UsageError("moment needs --g or --scaling")
    report = compute_moment(
        ctx,
        args.g,
        jobs=args.jobs,
        condition=args.family_condition,
        force=args.force,
        cache=cache,
        constants=constants,
        timing=args.timing,
    )
    _emit(args, report.to_json())
    return EXIT_OK


def cmd_constants(args):
    from .series import euler_constants

    ec = euler_constants(args.q, args.cutoff)
    obj = {"q": ec.q, "D": ec.D, "P": ec.P, "Z": ec.Z, "c_q": ec.c_q, "tail_bound": ec.tail_bound}
    if args.increments:
        obj["P_increments"] = ec.P_increments
        obj["Z_increments"] = ec.Z_increments
    obj["certified"] = ec.certified
    _emit(args, obj)
    return EXIT_OK


def cmd_verify(args):
    from .verify import SUITES, run_suite

    if args.suite != "all" and args.suite not in SUITES:
        raise UsageError(f"unknown suite {args.suite!r}; choose from all, {', '.join(SUITES)}")
    results = []
    for r in run_suite(args.q, args.suite):
        line = r.line()
        if args.timing:
            line += f" ({r.seconds:.2f}s)"
        print(line, flush=True)
        results.append(r)
    ok = all(r.ok for r in results)
    if args.out:
        obj = {"q": args.q.q, "suite": args.suite, "ok": ok, "checks": [{"name": r.name, "ok": r.ok, "detail": r.detail} for r in results]}
        Path(args.out).write_text(json.dumps(obj, sort_keys=True, indent=2, default=str) + "\n")
    return EXIT_OK if ok else EXIT_FAIL


def cmd_series(args):
    from .series import a3_from_definition, a3_from_rearrangement

    if args.check != "a3":
        raise UsageError(f"unknown series check {args.check!r}")
    lhs = a3_from_definition(args.q, args.umax, args.vmax, include_unit=True)
    rhs = a3_from_rearrangement(args.q, args.umax, args.vmax)
    mm = lhs.first_mismatch(rhs)
    obj = {"q": args.q.q, "umax": args.umax, "vmax": args.vmax, "match": mm is None, "first_mismatch": mm}
    if mm is None:
        obj["coefficients"] = lhs.to_json()
        print(f"a3 grid u<={args.umax}, v<={args.vmax}: all coefficients agree")
    else:
        a, b = mm
        print(f"first mismatch at (a,b)=({a},{b}): definition {lhs[mm]!r} vs rearrangement {rhs[mm]!r}")
    if args.out:
        Path(args.out).write_text(dumps(obj))
    return EXIT_OK if mm is None else EXIT_FAIL


def _parse_poly(ctx, text, over):
    from .polyring import Poly

    try:
        if text.lstrip().startswith("["):
            return Poly.from_json(ctx, json.loads(text), over=over)
        return Poly.parse(ctx, text, over=over)
    except (ValueError, TypeError, KeyError) as exc:
        raise UsageError(f"cannot parse polynomial {text!r}: {exc}") from None


def cmd_psi(args):
    from .gauss import psi_coeffs

    f = _parse_poly(args.q, args.f, args.field)
    if f.is_zero():
        raise UsageError("f must be nonzero")
    method = "multiplicative" if args.multiplicative else "direct"
    if method == "multiplicative" and f.over != "q2":
        raise UsageError("--multiplicative needs --field q2")
    series = psi_coeffs(f, args.maxdeg, coprime_only=args.coprime, method=method)
    rows = [(d, json.dumps(c.to_json(), sort_keys=True), repr(abs(c.embed()))) for d, c in series.to_rows()]
    text = _csv_text(["degree", "coefficient", "abs"], rows)
    obj = {
        "q": args.q.q,
        "f": str(f),
        "field": f.over,
        "coprime_only": args.coprime,
        "method": method,
        "rows": [{"degree": d, "coefficient": c.to_json(), "abs": abs(c.embed())} for d, c in series.to_rows()],
    }
    _emit(args, obj, text)
    return EXIT_OK


def _load_character(ctx, args):
    from .characters import CubicCharacter

    if args.character:
        src = args.character
        path = Path(src)
        text = path.read_text() if path.exists() else src
        try:
            obj = json.loads(text)
        except json.JSONDecodeError as exc:
            raise UsageError(f"character is not valid JSON: {exc}") from None
        if isinstance(obj, dict) and "q" in obj and obj["q"] != ctx.q:
            raise UsageError(f"character was built for q={obj['q']}, not q={ctx.q}")
        F = _parse_poly(ctx, json.dumps(obj["F"] if isinstance(obj, dict) else obj), "q2")
    elif args.F:
        F = _parse_poly(ctx, args.F, "q2")
    else:
        raise UsageError("lvalue needs --character JSON or --F polynomial")
    if F.is_zero() or F.lc != 1:
        raise UsageError("F must be monic")
    ch = CubicCharacter(F)
    if not ch.is_squarefree or not ch.primitive:
        raise UsageError(f"F={F} does not define a primitive character of the family")
    return ch


def cmd_lvalue(args):
    from .lfunc import functional_equation_check, l_coeffs, l_eval

    ch = _load_character(args.q, args)
    L = l_coeffs(ch)
    value, bound = l_eval(L)
    try:
        fe = functional_equation_check(ch, L).to_json()
    except ArithmeticError as exc:
        fe = {"error": str(exc)}
    obj = {
        "character": ch.to_json(),
        "coeffs": [c.to_json() for c in L.poly],
        "central_value": value.real,
        "central_value_imag": value.imag,
        "error_bound": bound,
        "fe": fe,
    }
    _emit(args, obj)
    return EXIT_OK


def cmd_family(args):
    from .characters import enumerate_family, family_surplus
    from .moments import cross_validate

    ctx = args.q
    obj = {"q": ctx.q, "g": args.g, "family_condition": args.family_condition}
    chars = list(enumerate_family(ctx, args.g, args.family_condition))
    obj["size"] = len(chars)
    if args.list:
        obj["F"] = [str(ch.F) for ch in chars]
    if args.family_condition == "prime-only":
        obj["surplus"] = [str(F) for F in family_surplus(ctx, args.g)]
    status = EXIT_OK
    if args.cross_validate:
        cv = cross_validate(ctx, args.g, args.family_condition)
        obj["cross_validation"] = cv.to_json()
        status = EXIT_OK if cv.ok else EXIT_FAIL
    _emit(args, obj)
    return status


# ------------------------------------------------------------------ parser
def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--q", type=_field, default="5", help="odd prime power q = 2 mod 3 (default 5)")
    common.add_argument("--out", help="also write the result as JSON to this path")
    common.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")

    p = _Parser(prog="ffcubic", description="Cubic characters over GF(q)[T] in the non-Kummer setting.")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", parser_class=_Parser)
    sub.required = True

    m = sub.add_parser("moment", parents=[common], help="first moment of L(1/2, chi) over the genus-g family")
    m.add_argument("--g", type=_even_genus, help="even genus")
    m.add_argument("--jobs", type=_positive, default=1, help="worker threads")
    m.add_argument("--force", action="store_true", help="run beyond the default cost ceiling")
    m.add_argument("--family-condition", choices=["gcd", "prime-only"], default="gcd")
    m.add_argument("--cutoff", type=int, default=30, help="Euler product degree cutoff for the main term")
    m.add_argument("--scaling", type=_genus_list, help="comma-separated genera; prints the scaling table as CSV")
    m.add_argument("--csv", help="write the scaling table CSV to this path")
    m.add_argument("--no-cache", action="store_true", help="do not read or write the persistent cache")
    m.add_argument("--timing", action="store_true", help="add wall times, jobs and backend to the report")
    m.set_defaults(func=cmd_moment)

    c = sub.add_parser("constants", parents=[common], help="Euler constants P, Z and c_q")
    c.add_argument("--cutoff", type=int, default=30, help="largest prime degree D in the products")
    c.add_argument("--increments", action="store_true", help="include per-degree increments")
    c.set_defaults(func=cmd_constants)

    v = sub.add_parser("verify", parents=[common], help="run verification suites")
    v.add_argument("--suite", default="all", help="all, gauss, characters, lfunc, family, series or moments")
    v.add_argument("--timing", action="store_true")
    v.set_defaults(func=cmd_verify)

    s = sub.add_parser("series", parents=[common], help="compare double series coefficient grids")
    s.add_argument("--check", default="a3", help="series identity to check (a3)")
    s.add_argument("--umax", type=int, default=3)
    s.add_argument("--vmax", type=int, default=3)
    s.set_defaults(func=cmd_series)

    g = sub.add_parser("psi", parents=[common], help="Gauss-sum generating series coefficients as CSV")
    g.add_argument("--f", required=True, help='polynomial, e.g. "T+1" or JSON coefficient list')
    g.add_argument("--field", choices=["q", "q2"], default="q2", help="base ring of f and of the sum")
    g.add_argument("--maxdeg", type=int, default=3)
    g.add_argument("--coprime", action="store_true", help="sum only over F coprime to f")
    g.add_argument("--multiplicative", action="store_true", help="assemble G(f, F) from prime powers")
    g.set_defaults(func=cmd_psi)

    lv = sub.add_parser("lvalue", parents=[common], help="L-polynomial, central value and functional equation")
    lv.add_argument("--character", help="character JSON (inline or a file path), as written by family/lvalue")
    lv.add_argument("--F", help='monic F over GF(q^2), e.g. "T+(1*x)"')
    lv.set_defaults(func=cmd_lvalue)

    f = sub.add_parser("family", parents=[common], help="enumerate the genus-g family")
    f.add_argument("--g", type=_even_genus, required=True)
    f.add_argument("--family-condition", choices=["gcd", "prime-only"], default="gcd")
    f.add_argument("--list", action="store_true", help="list every F")
    f.add_argument("--cross-validate", action="store_true", help="compare with the conductor-side enumeration")
    f.set_defaults(func=cmd_family)
    return p


def main(argv=None) -> int:
    from .moments import BudgetError

    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s %(message)s")
        return args.func(args)
    except UsageError as exc:
        print(f"ffcubic: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except BudgetError as exc:
        print(f"ffcubic: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except SystemExit as exc:  # --help and --version
        return int(exc.code or 0)


if __name__ == "__main__":
    sys.exit(main())
