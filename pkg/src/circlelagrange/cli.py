"""Command-line entry point.

Exit status: 0 on success, 1 when ``verify`` finds a failing criterion,
2 on a usage error.
"""

from __future__ import annotations

import argparse
import json
import sys

import mpmath

from . import acceptance
from .cohn import lagrange_of_christoffel, sqrt_text
from .markoff import enumerate_markoff, spectrum_below_2, tree_levels
from .oracle import admissible_periodic, estimate_by_cylinders, estimate_by_height, value_certified
from .romik import DigitWord, NotPrimitive, NotPythagorean, PythTriple, berggren_path, berggren_triples
from .romik import cylinder_bounds, expand_rational
from .sweep import KERNELS
from .words import NotCoprime, as_christoffel, christoffel, jmath, minimal_period, standard_factorization


class UsageError(Exception):
    """Bad flag value; ``flag`` names the offending option."""

    def __init__(self, flag: str, message: str):
        super().__init__(f"{flag}: {message}")
        self.flag = flag


def _emit(obj, out):
    out.write(json.dumps(obj, indent=2, sort_keys=True, ensure_ascii=True) + "\n")


def _ints(flag: str, text: str, n: int | None = None) -> list[int]:
    try:
        vals = [int(v) for v in text.replace(" ", "").split(",") if v != ""]
    except ValueError:
        raise UsageError(flag, f"expected comma-separated integers, got {text!r}") from None
    if n is not None and len(vals) != n:
        raise UsageError(flag, f"expected {n} integers, got {len(vals)}")
    return vals


def _digit_word(flag: str, text: str) -> DigitWord:
    try:
        return DigitWord.parse(text)
    except ValueError as exc:
        raise UsageError(flag, str(exc)) from None


def _positive(flag: str, v: int, lo: int = 1) -> int:
    if v < lo:
        raise UsageError(flag, f"must be at least {lo}")
    return v


def render(x, places: int = 9) -> str:
    """``sqrt(N)/D = decimal`` when the square is rational, else the tower form."""
    sq = x * x
    dec = mpmath.nstr(value_certified(x, places + 5), places + 1, strip_zeros=False)
    if sq.disc == 0 and sq.base.irr == 0 and x > 0:
        return f"{sqrt_text(sq.base.rat)} = {dec}"
    return f"{x} = {dec}"


# ---------------------------------------------------------------------------
# subcommands


def cmd_expand(args, out):
    vals = _ints("--triple", args.triple, 3)
    try:
        t = PythTriple(*vals)
    except (NotPythagorean, NotPrimitive, ValueError) as exc:
        raise UsageError("--triple", str(exc)) from None
    expansions = expand_rational(t)
    path, root = berggren_path(t)
    if args.json:
        _emit({"triple": t.to_json(), "path": "".join(map(str, path)), "root": root.to_json(),
               "expansions": [e.to_json() for e in expansions]}, out)
    else:
        out.write(f"triple {t}\n")
        for e in expansions:
            out.write(f"  {e}\n")


def cmd_berggren(args, out):
    h = _positive("--max-height", args.max_height)
    triples = list(berggren_triples(h))
    if args.json:
        _emit([t.to_json() for t in triples], out)
    else:
        for t in triples:
            out.write(f"{t.a} {t.b} {t.c}\n")
        out.write(f"# {len(triples)} triples with c <= {h}\n")


def cmd_cylinder(args, out):
    digits = _ints("--digits", args.digits)
    if any(d not in (1, 2, 3) for d in digits):
        raise UsageError("--digits", "digits must be 1, 2 or 3")
    lo, hi = cylinder_bounds(digits)
    if args.json:
        _emit({"digits": "".join(map(str, digits)), "boundary": [lo.to_json(), hi.to_json()]}, out)
    else:
        out.write(f"cylinder [{','.join(map(str, digits))}]\n")
        out.write(f"  from {lo}  (x = {lo.a}/{lo.c})\n")
        out.write(f"  to   {hi}  (x = {hi.a}/{hi.c})\n")


def _slope(text: str) -> tuple[int, int]:
    try:
        t, s = (int(v) for v in text.split("/"))
    except ValueError:
        raise UsageError("--slope", f"expected t/s, got {text!r}") from None
    return t, s


def cmd_christoffel(args, out):
    t, s = _slope(args.slope)
    try:
        cw = christoffel(t, s, "upper" if args.upper else "lower")
    except NotCoprime as exc:
        raise UsageError("--slope", str(exc)) from None
    lower = cw if not args.upper else christoffel(t, s)
    obj = {"slope": f"{t}/{s}", "kind": "upper" if args.upper else "lower", "word": cw.word,
           "jmath": jmath(cw.word)}
    if args.factorize:
        if lower.is_trivial:
            raise UsageError("--factorize", "trivial words have no standard factorization")
        u, v = standard_factorization(lower)
        obj["factorization"] = [u.word, v.word]
    if args.period:
        obj["minimal_period"] = "".join(map(str, minimal_period(lower).period))
    if args.json:
        _emit(obj, out)
    else:
        out.write(f"{obj['kind']} Christoffel word of slope {t}/{s}: {cw.word}\n")
        out.write(f"  jmath: {obj['jmath']}\n")
        if "factorization" in obj:
            out.write(f"  standard factorization: ({obj['factorization'][0]}, {obj['factorization'][1]})\n")
        if "minimal_period" in obj:
            out.write(f"  minimal period: {obj['minimal_period']}\n")


def cmd_lagrange(args, out):
    try:
        w = as_christoffel(args.word)
    except ValueError as exc:
        raise UsageError("--word", str(exc)) from None
    e = lagrange_of_christoffel(w)
    if args.json:
        _emit(e.to_json(args.precision), out)
    else:
        out.write(f"word {e.word} ({e.parity}), {e.kind} = {e.markoff_number}, q = {e.q}\n")
        out.write(f"  L^2 = {e.L_squared}\n  L = {e.L_text()} = {e.L_decimal(args.precision)}...\n")
        out.write(f"  minimal period {e.period_text()}\n")


def cmd_markoff_tree(args, out):
    depth = _positive("--depth", args.depth, 0)
    levels = tree_levels(enumerate_markoff(depth))
    if args.json:
        _emit([[{"triple": n.triple.to_json(), "u": n.u, "v": n.v} for n in lv] for lv in levels], out)
    else:
        for k, lv in enumerate(levels):
            out.write(f"level {k}: " + " ".join(str(n.triple) for n in lv) + "\n")


def cmd_spectrum(args, out):
    n = _positive("--count", args.count)
    rows = spectrum_below_2(n)
    if args.json:
        _emit([dict(e.to_json(args.precision), rank=str(i)) for i, e in enumerate(rows, 1)], out)
        return
    header = ("rank", "L", "L^2", "m", "kind", "word", "period")
    table = [(str(i), e.L_decimal(args.precision), str(e.L_squared), str(e.markoff_number), e.kind,
              e.word, e.period_text()) for i, e in enumerate(rows, 1)]
    widths = [max(len(r[c]) for r in table + [header]) for c in range(len(header))]
    for r in [header] + table:
        out.write("  ".join(v.ljust(w) for v, w in zip(r, widths)).rstrip() + "\n")


def cmd_estimate(args, out):
    p = _digit_word("--period", args.period)
    if p.period is None:
        raise UsageError("--period", "needs a repeating part")
    if args.max_height is not None:
        kernel = KERNELS.get(args.kernel) if args.kernel else None
        if args.kernel and kernel is None:
            raise UsageError("--kernel", f"kernel {args.kernel!r} is not available")
        rep = estimate_by_height(p, _positive("--max-height", args.max_height), threads=args.threads,
                                 kernel=kernel)
    else:
        rep = estimate_by_cylinders(p, _positive("--kmax", args.kmax))
    digits = max(args.precision, 12)
    if args.json:
        _emit(rep.to_json(digits), out)
        return
    out.write(f"point {p}, method {rep.method}, bound {rep.k_or_height}\n")
    out.write(f"  estimate {mpmath.nstr(rep.estimate, digits)}\n")
    if rep.target is not None:
        out.write(f"  exact L(T) {render(rep.target, digits)}\n  |error| {mpmath.nstr(rep.error, 3)}\n")


def cmd_admissible(args, out):
    p = _digit_word("--period", args.period)
    if p.head or p.period is None:
        raise UsageError("--period", "give a purely periodic digit sequence")
    res = admissible_periodic(p.period)
    if args.json:
        _emit(res.to_json(), out)
        return
    out.write(f"{res.status}\n")
    if res.witness:
        out.write("  witness: " + ", ".join(f"{k}={res.witness[k]}" for k in sorted(res.witness)) + "\n")
    if res.L is not None:
        out.write(f"  L = {render(res.L, args.precision)}\n")


def cmd_verify(args, out):
    results = []
    for c in acceptance.CRITERIA:
        r = acceptance.run_criterion(c, args.threads)
        results.append(r)
        if not args.json:
            out.write(r.line() + "\n")
            out.flush()
    ok = all(r.passed for r in results)
    if args.json:
        _emit({"passed": ok, "criteria": [r.to_json() for r in results]}, out)
    else:
        out.write(f"{sum(r.passed for r in results)}/{len(results)} criteria passed\n")
    return 0 if ok else 1


# ---------------------------------------------------------------------------
# parser


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable output")
    common.add_argument("--threads", type=int, default=1, help="worker threads for tree sweeps")
    common.add_argument("--precision", type=int, default=9, help="decimal places in rendered values")

    parser = argparse.ArgumentParser(prog="circlelagrange",
                                     description="Lagrange spectrum of the unit circle below 2.")
    sub = parser.add_subparsers(dest="command", required=True, metavar="command")

    p = sub.add_parser("expand", parents=[common], help="digit expansions of a rational point")
    p.add_argument("--triple", required=True, help="a,b,c")
    p.set_defaults(func=cmd_expand)

    p = sub.add_parser("berggren", parents=[common], help="primitive triples up to a height")
    p.add_argument("--max-height", type=int, required=True)
    p.set_defaults(func=cmd_berggren)

    p = sub.add_parser("cylinder", parents=[common], help="boundary triples of a cylinder set")
    p.add_argument("--digits", required=True, help="d1,d2,...")
    p.set_defaults(func=cmd_cylinder)

    p = sub.add_parser("christoffel", parents=[common], help="Christoffel word of a slope")
    p.add_argument("--slope", required=True, help="t/s")
    p.add_argument("--upper", action="store_true")
    p.add_argument("--factorize", action="store_true")
    p.add_argument("--period", action="store_true")
    p.set_defaults(func=cmd_christoffel)

    p = sub.add_parser("lagrange", parents=[common], help="exact Lagrange value of a Christoffel word")
    p.add_argument("--word", required=True)
    p.set_defaults(func=cmd_lagrange)

    p = sub.add_parser("markoff-tree", parents=[common], help="the Markoff tree to a depth")
    p.add_argument("--depth", type=int, required=True)
    p.set_defaults(func=cmd_markoff_tree)

    p = sub.add_parser("spectrum", parents=[common], help="smallest Lagrange values below 2")
    p.add_argument("--count", type=int, required=True)
    p.set_defaults(func=cmd_spectrum)

    p = sub.add_parser("estimate", parents=[common], help="numerical Lagrange estimate of a periodic point")
    p.add_argument("--period", required=True, help='digits, e.g. "3122" or "1,(31)"')
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--max-height", type=int)
    g.add_argument("--kmax", type=int)
    p.add_argument("--kernel", choices=sorted(KERNELS), help="height sweep kernel")
    p.set_defaults(func=cmd_estimate)

    p = sub.add_parser("admissible", parents=[common], help="classify a periodic digit sequence")
    p.add_argument("--period", required=True)
    p.set_defaults(func=cmd_admissible)

    p = sub.add_parser("verify", parents=[common], help="run the acceptance suite")
    p.set_defaults(func=cmd_verify)
    return parser


def run(argv=None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    if args.threads < 1:
        err.write("error: --threads: must be at least 1\n")
        return 2
    if args.precision < 1:
        err.write("error: --precision: must be at least 1\n")
        return 2
    try:
        return args.func(args, out) or 0
    except UsageError as exc:
        err.write(f"error: {exc}\n")
        return 2


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
