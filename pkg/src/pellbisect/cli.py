"""Command-line front end.

Subcommands: context, xi, spectrum, solve, decompose, rational, bisect,
triples, table, figure, oracle.  Output is deterministic JSON, CSV or text;
exit codes are 0 for success, 1 for usage errors, 2 for domain errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from . import bisector, oracle, rationalpell, solver
from .pellcore import factorize, make_context, primes_upto
from .quadfield import (
    NotSquareFreeError,
    render,
    render_rat,
    render_signed_power,
)
from .spectrum import XiEntry, spectrum, xi

DEFAULT_D_LIST = (2, 5, 10, 13, 17, 26, 29, 34)
DEFAULT_P_MAX = 97


@dataclass(frozen=True)
class TableSpec:
    d_list: tuple[int, ...] = DEFAULT_D_LIST
    p_max: int = DEFAULT_P_MAX
    format: str = "text"


class _Parser(argparse.ArgumentParser):
    def error(self, message: str) -> None:  # exit 1 on usage errors
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def _rat(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a rational literal: {text!r}")


def _int_range(text: str) -> range:
    try:
        lo, hi = text.split("..")
        return range(int(lo), int(hi) + 1)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected LO..HI, got {text!r}")


def _dump(doc) -> str:
    return json.dumps(doc, indent=2) + "\n"


def _emit(text: str, out: str | None) -> None:
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _xi_doc(entry: XiEntry, ascii_mode: bool) -> dict:
    return {
        "p": entry.p,
        "l": entry.l,
        "x": entry.x,
        "y": entry.y,
        "norm": str(entry.norm_sign * entry.p**entry.l),
        "elem": render(entry.elem, ascii_mode),
    }


def run_context(d: int) -> dict:
    ctx = make_context(d)
    return {
        "d": ctx.d,
        "disc": ctx.disc,
        "eta": {"a": render_rat(ctx.eta.a), "b": render_rat(ctx.eta.b)},
        "norm_eta": ctx.norm_eta,
        "eps": {"f1": ctx.f1, "g1": ctx.g1},
        "h": ctx.h,
        "neg_pell_integral": ctx.neg_pell_integral,
        "neg_pell_rational": ctx.neg_pell_rational,
    }


def run_table(spec: TableSpec, ascii_mode: bool = False) -> str:
    """Render the reference table: one column per d, rows h, eta, N(eta) and
    xi_p, N(xi_p) for every prime p <= p_max; byte-identical across runs."""
    columns = []
    for d in spec.d_list:
        ctx = make_context(d)
        spc = spectrum(ctx, spec.p_max)
        columns.append((d, ctx, {e.p: e for e in spc.entries}))
    primes = primes_upto(spec.p_max)

    def xi_cell(col, p: int) -> tuple[str, str]:
        entry = col[2].get(p)
        if entry is None:
            return "", ""
        return (
            render(entry.elem, ascii_mode),
            render_signed_power(entry.norm_sign, p, entry.l, ascii_mode),
        )

    rows: list[tuple[str, list[str]]] = [
        ("d", [str(d) for d, _, _ in columns]),
        ("h", [str(ctx.h) for _, ctx, _ in columns]),
        ("eta", [render(ctx.eta, ascii_mode) for _, ctx, _ in columns]),
        ("N(eta)", [str(ctx.norm_eta) for _, ctx, _ in columns]),
    ]
    for p in primes:
        cells = [xi_cell(col, p) for col in columns]
        rows.append((f"xi_{p}", [c[0] for c in cells]))
        rows.append((f"N(xi_{p})", [c[1] for c in cells]))

    if spec.format == "csv":
        return "".join(f"{label},{','.join(cells)}\n" for label, cells in rows)
    if spec.format == "json":
        doc = []
        for i, (d, ctx, entries) in enumerate(columns):
            doc.append(
                {
                    "d": d,
                    "h": ctx.h,
                    "eta": render(ctx.eta, ascii_mode),
                    "norm_eta": ctx.norm_eta,
                    "xi": [_xi_doc(entries[p], ascii_mode) for p in primes if p in entries],
                }
            )
        return _dump({"p_max": spec.p_max, "columns": doc})
    widths = [
        max(len(label) for label, _ in rows)
        if i == 0
        else max(len(r[1][i - 1]) for r in rows)
        for i in range(len(columns) + 1)
    ]
    lines = []
    for label, cells in rows:
        parts = [label.ljust(widths[0])]
        parts += [cell.ljust(widths[i + 1]) for i, cell in enumerate(cells)]
        lines.append("  ".join(parts).rstrip())
    return "\n".join(lines) + "\n"


_FIGURE_COLORS = ("#1f77b4", "#2ca02c", "#d62728", "#9467bd")


def render_figure(a: Fraction, b: Fraction) -> str:
    """SVG with the two lines and both bisectors through the origin on a
    fixed 512x512 viewport; raises NoRationalBisector when c is irrational."""
    c_plus, c_minus = bisector.bisect(a, b)
    slopes = [("a", a), ("b", b), ("c+", c_plus), ("c-", c_minus)]
    half = 238.0
    parts = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        '<svg xmlns="http://www.w3.org/2000/svg" width="512" height="512" '
        'viewBox="0 0 512 512">',
        '<rect x="0" y="0" width="512" height="512" fill="#ffffff"/>',
        '<line x1="18" y1="256" x2="494" y2="256" stroke="#cccccc" stroke-width="1"/>',
        '<line x1="256" y1="18" x2="256" y2="494" stroke="#cccccc" stroke-width="1"/>',
    ]
    for i, (_, slope) in enumerate(slopes):
        s = float(slope)
        if abs(s) <= 1:
            dx, dy = half, half * s
        else:
            dx, dy = half / abs(s), half * (1 if s > 0 else -1)
        x1, y1 = 256 - dx, 256 + dy
        x2, y2 = 256 + dx, 256 - dy
        parts.append(
            f'<line x1="{x1:.2f}" y1="{y1:.2f}" x2="{x2:.2f}" y2="{y2:.2f}" '
            f'stroke="{_FIGURE_COLORS[i]}" stroke-width="2"/>'
        )
    for i, (name, slope) in enumerate(slopes):
        parts.append(
            f'<text x="20" y="{24 + 18 * i}" font-family="monospace" font-size="14" '
            f'fill="{_FIGURE_COLORS[i]}">{name} = {render_rat(Fraction(slope))}</text>'
        )
    parts.append("</svg>")
    return "\n".join(parts) + "\n"


def _build_parser() -> _Parser:
    parser = _Parser(prog="pellbisect", description=__doc__)
    parser.add_argument("--format", choices=("json", "csv", "text"), default="json")
    parser.add_argument("--ascii", action="store_true", help="ASCII-only output")
    parser.add_argument("--out", metavar="PATH", help="write output to a file")
    # the same flags are accepted after the subcommand; SUPPRESS keeps the
    # subparser from clobbering values given before it
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "csv", "text"), default=argparse.SUPPRESS)
    common.add_argument("--ascii", action="store_true", default=argparse.SUPPRESS)
    common.add_argument("--out", metavar="PATH", default=argparse.SUPPRESS)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add_parser(name: str, **kwargs):
        return sub.add_parser(name, parents=[common], **kwargs)

    p = add_parser("context", help="per-d invariants as JSON")
    p.add_argument("--d", type=int, required=True)

    p = add_parser("xi", help="fundamental prime-power element")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--p", type=int, required=True)

    p = add_parser("spectrum", help="all spectrum entries up to a bound")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--pmax", type=int, default=DEFAULT_P_MAX)

    p = add_parser("solve", help="strictly primitive solutions of |x^2-dy^2| = z")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--z", type=int, required=True)
    p.add_argument("--strict", action="store_true")
    p.add_argument("--n-range", type=_int_range, default=range(-2, 3))

    p = add_parser("decompose", help="factor a solution into canonical form")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--x", type=int, required=True)
    p.add_argument("--y", type=int, required=True)

    p = add_parser("rational", help="rational points on x^2-dy^2 = +-1")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--sign", type=int, choices=(-1, 1), default=-1)
    p.add_argument("--max-terms", type=int, default=2)
    p.add_argument("--n-range", type=_int_range, default=range(-2, 3))
    p.add_argument("--pmax", type=int, default=31)

    p = add_parser("bisect", help="bisector slopes of two rational slopes")
    p.add_argument("--a", type=_rat, required=True)
    p.add_argument("--b", type=_rat, required=True)

    p = add_parser("triples", help="enumerate bisector triples")
    p.add_argument("--mode", choices=("case1", "case2", "integral"), required=True)
    p.add_argument("--range", type=int, default=3, dest="box")
    p.add_argument("--d", type=int)

    p = add_parser("table", help="reference table of units and xi elements")
    p.add_argument("--d-list", type=lambda s: tuple(int(v) for v in s.split(",")),
                   default=DEFAULT_D_LIST)
    p.add_argument("--pmax", type=int, default=DEFAULT_P_MAX)

    p = add_parser("figure", help="SVG of the two lines and their bisectors")
    p.add_argument("--a", type=_rat, required=True)
    p.add_argument("--b", type=_rat, required=True)

    p = add_parser("oracle", help="brute-force reference sweeps")
    osub = p.add_subparsers(dest="oracle_command", required=True)
    q = osub.add_parser("solutions")
    q.add_argument("--d", type=int, required=True)
    q.add_argument("--z", type=int, required=True)
    q.add_argument("--ymax", type=int, default=1000)
    q = osub.add_parser("xi")
    q.add_argument("--d", type=int, required=True)
    q.add_argument("--p", type=int, required=True)
    q.add_argument("--lmax", type=int, default=6)
    q.add_argument("--ymax", type=int, default=1000)
    q = osub.add_parser("rational")
    q.add_argument("--d", type=int, required=True)
    q.add_argument("--r", type=int, choices=(0, 1), required=True)
    q.add_argument("--zmax", type=int, default=20)
    q.add_argument("--ymax", type=int, default=1000)
    q = osub.add_parser("tangent")
    q.add_argument("--a", type=_rat, required=True)
    q.add_argument("--b", type=_rat, required=True)
    q.add_argument("--c", type=_rat, required=True)
    return parser


def _spectrum_covering(ctx, z: int):
    return spectrum(ctx, max(max(factorize(z)), 2))


def _cmd_solve(args) -> str:
    if args.z <= 1:
        raise ValueError("z must be an integer > 1")
    ctx = make_context(args.d)
    spec = _spectrum_covering(ctx, args.z)
    verdict = solver.strict_exists(ctx, spec, args.z)
    if not verdict.exists:
        return _dump(
            {
                "d": args.d,
                "z": args.z,
                "exists": False,
                "case_tags": {str(p): t for p, t in sorted(verdict.case_tags.items())},
                "solutions": [],
            }
        )
    solutions = []
    for x, y in solver.generate_strict(ctx, spec, args.z, args.n_range):
        rep = solver.decompose_strict(ctx, spec, x, y)
        solutions.append(
            {"x": x, "y": y, "norm": x * x - args.d * y * y, "representation": rep.to_json()}
        )
    return _dump(
        {
            "d": args.d,
            "z": args.z,
            "exists": True,
            "case_tags": {str(p): t for p, t in sorted(verdict.case_tags.items())},
            "solutions": solutions,
        }
    )


def _cmd_decompose(args) -> str:
    ctx = make_context(args.d)
    x, y = args.x, args.y
    z = abs(x * x - args.d * y * y)
    if z <= 1:
        raise ValueError("|x^2 - d y^2| must exceed 1")
    spec = _spectrum_covering(ctx, z)
    if z > 1 and gcd(x, args.d * y) == 1:
        rep = solver.decompose_strict(ctx, spec, x, y)
        kind = "strict"
    else:
        rep = solver.decompose_square(ctx, spec, x, y)
        kind = "square"
    return _dump({"d": args.d, "x": x, "y": y, "kind": kind, "representation": rep.to_json()})


def _rational_candidates(ctx, spec, max_terms: int, n_range) -> list[solver.Representation]:
    """Small deterministic family of representations with square moduli."""
    usable = []
    for entry in spec.entries:
        if entry.p == 2 and ctx.d % 8 == 1:
            continue  # the half-coordinate convention needs no CLI enumeration
        usable.append((entry.p, 1 if entry.l % 2 == 0 else 2))
    subsets: list[list[tuple[int, int]]] = [[]]
    for p, e in usable:
        subsets += [s + [(p, e)] for s in subsets if len(s) < max_terms]
    out = []
    for subset in subsets:
        for conj_mask in range(2 ** len(subset)):
            terms = tuple(
                solver.XiPower(p=p, exp=e, conj=bool(conj_mask >> i & 1))
                for i, (p, e) in enumerate(subset)
            )
            for n in n_range:
                for sign in (1, -1):
                    out.append(solver.Representation(d=ctx.d, sign=sign, n=n, terms=terms))
    return out


def _cmd_rational(args) -> str:
    ctx = make_context(args.d)
    spec = spectrum(ctx, args.pmax)
    want_r = 1 if args.sign == -1 else 0
    seen = {}
    for rep in _rational_candidates(ctx, spec, args.max_terms, args.n_range):
        pt = rationalpell.generate_rational(ctx, spec, rep)
        if pt.r != want_r:
            continue
        key = (pt.x, pt.y)
        if key not in seen:
            seen[key] = (pt, rep)
    points = sorted(
        seen.values(), key=lambda pr: (pr[0].x.denominator, abs(pr[0].x), pr[0].y)
    )
    return _dump(
        [
            {
                "x": render_rat(pt.x),
                "y": render_rat(pt.y),
                "r": pt.r,
                "rep": rep.to_json(),
            }
            for pt, rep in points
        ]
    )


def _cmd_bisect(args) -> str:
    cls = bisector.classify_pair(args.a, args.b)
    c_plus, c_minus = bisector.bisect(args.a, args.b)
    return _dump(
        {
            "a": render_rat(args.a),
            "b": render_rat(args.b),
            "c_plus": render_rat(c_plus),
            "c_minus": render_rat(c_minus),
            "case": "I" if cls.d == 1 else "II",
            "d": cls.d,
        }
    )


def _triple_doc(t: bisector.BisectorTriple, source: dict) -> dict:
    return {
        "a": render_rat(t.a),
        "b": render_rat(t.b),
        "c": render_rat(t.c),
        "source": source,
    }


def _cmd_triples(args) -> str:
    docs = []
    if args.mode == "case1":
        for l in range(1, args.box + 1):
            for m in range(l + 1, args.box + 1):
                for n in range(1, args.box + 1):
                    if l * m == n * n:
                        continue
                    for t in bisector.case1_generate(l, m, n):
                        docs.append(_triple_doc(t, {"l": l, "m": m, "n": n}))
    elif args.mode == "case2":
        if args.d is None:
            raise ValueError("--d is required for case2")
        ctx = make_context(args.d)
        spec = spectrum(ctx, 31)
        if ctx.neg_pell_integral:
            alphas = [ctx.eta ** (2 * k + 1) for k in range(args.box)]
        else:
            seeds = [e for e in spec.entries if e.norm_sign == -1 and e.l % 2 == 0]
            if not seeds:
                raise bisector.NoRationalBisector(
                    f"x^2-{args.d}y^2 = -1 has no rational solutions to pair up"
                )
            seed = seeds[0]
            alpha0 = seed.elem / seed.p ** (seed.l // 2)
            alphas = [alpha0 * ctx.eta**k for k in range(args.box + 1)]
        for i, alpha in enumerate(alphas):
            for beta in alphas[i + 1 :]:
                for t in bisector.case2_generate(ctx, alpha, beta):
                    docs.append(
                        _triple_doc(t, {"alpha": render(alpha), "beta": render(beta)})
                    )
    else:
        if args.d is None:
            raise ValueError("--d is required for integral mode")
        ctx = make_context(args.d)
        for m in range(1, args.box + 1):
            for n in range(1, args.box + 1):
                t = bisector.integral_generate(ctx, m, n)
                docs.append(_triple_doc(t, {"family": "d", "m": m, "n": n}))
        if args.d == 2:
            for n in range(1, args.box + 1):
                t = bisector.integral_generate2(n)
                docs.append(_triple_doc(t, {"family": "2", "n": n}))
    return _dump(docs)


def _cmd_oracle(args) -> str:
    if args.oracle_command == "tangent":
        verdict = oracle.tangent_bisector_check(args.a, args.b, args.c)
        return _dump({"bisects": verdict})
    box = oracle.SearchBox(y_bound=args.ymax, denominator_bound=getattr(args, "zmax", 1))
    if args.oracle_command == "solutions":
        hits = oracle.brute_solutions(args.d, args.z, box)
        return _dump(
            [{"x": h.x, "y": h.y, "sign": h.sign, "strict": h.strict} for h in hits]
        )
    if args.oracle_command == "xi":
        hit = oracle.brute_xi(args.d, args.p, args.lmax, box)
        if hit is None:
            return _dump({"d": args.d, "p": args.p, "found": False})
        l, x, y, sign = hit
        return _dump({"d": args.d, "p": args.p, "found": True, "l": l, "x": x, "y": y, "sign": sign})
    pts = oracle.brute_rational_pell(args.d, args.r, box)
    return _dump([{"x": render_rat(x), "y": render_rat(y)} for x, y in pts])


def _merge_dash_values(argv: list[str]) -> list[str]:
    """Join option values that start with '-' (ranges like -2..2, rationals
    like -7/9) onto their flag so argparse does not read them as options."""
    merged = []
    skip = False
    for i, tok in enumerate(argv):
        if skip:
            skip = False
            continue
        if tok in ("--n-range", "--a", "--b", "--c") and i + 1 < len(argv) and argv[i + 1].startswith("-"):
            merged.append(f"{tok}={argv[i + 1]}")
            skip = True
        else:
            merged.append(tok)
    return merged


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(_merge_dash_values(list(sys.argv[1:] if argv is None else argv)))
    try:
        if args.command == "context":
            out = _dump(run_context(args.d))
        elif args.command == "xi":
            ctx = make_context(args.d)
            entry = xi(ctx, args.p)
            if entry is None:
                out = _dump({"d": args.d, "p": args.p, "in_s": False})
            else:
                out = _dump({"d": args.d, "in_s": True, **_xi_doc(entry, args.ascii)})
        elif args.command == "spectrum":
            ctx = make_context(args.d)
            spc = spectrum(ctx, args.pmax)
            out = _dump([_xi_doc(e, args.ascii) for e in spc.entries])
        elif args.command == "solve":
            out = _cmd_solve(args)
        elif args.command == "decompose":
            out = _cmd_decompose(args)
        elif args.command == "rational":
            out = _cmd_rational(args)
        elif args.command == "bisect":
            out = _cmd_bisect(args)
        elif args.command == "triples":
            out = _cmd_triples(args)
        elif args.command == "table":
            out = run_table(
                TableSpec(d_list=args.d_list, p_max=args.pmax, format=args.format),
                ascii_mode=args.ascii,
            )
        elif args.command == "figure":
            out = render_figure(args.a, args.b)
        else:
            out = _cmd_oracle(args)
    except (NotSquareFreeError, bisector.NoRationalBisector, bisector.TrivialPairError,
            ValueError) as exc:
        sys.stdout.write(_dump({"error": type(exc).__name__, "message": str(exc)}))
        return 2
    _emit(out, args.out)
    return 0


if __name__ == "__main__":
    sys.exit(main())
