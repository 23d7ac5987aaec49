"""Command-line front end.

Exit codes: 0 all checks pass, 1 a check failed, 2 usage or parse error,
3 capacity or size-guard error.
"""

import argparse
import json
import re
import sys
from decimal import Decimal, localcontext
from fractions import Fraction

from antisym.embedding import (
    DEFAULT_N_MAX, CapacityError, block_offset, epsilon, f, format_ternary, gap,
    separated)
from antisym.encoder import encode, vector_distance
from antisym.hamel import HamelVector, LabelError, n_of
from antisym.kernels import BACKEND
from antisym.verify import (
    SizeGuardError, branch_coverage, code_prefix, containment_campaign,
    exhaustive_lemma_check, z_contains, z_set)

EXIT_OK, EXIT_CHECK, EXIT_USAGE, EXIT_CAPACITY = 0, 1, 2, 3

SELFTEST_UNIVERSES = ((("", "1"), 5), (("",), 2))


class ExpressionError(ValueError):
    def __init__(self, text, position, reason):
        super().__init__(f"{reason} at position {position} in {text!r}")
        self.position = position


_TERM = re.compile(
    r"\s*(?P<coef>[+-]?\s*\d+(?:\s*/\s*\d+)?)\s*\*\s*y\s*\(\s*(?P<bits>[^)\s]*)\s*\)\s*")
_ZERO = re.compile(r"\s*[+-]?0\s*\Z")


def parse_expression(text: str) -> HamelVector:
    """Parse ``R*y(BITS) + R*y(BITS) + ...`` (or ``0``) into a vector."""
    if _ZERO.match(text):
        return HamelVector()
    terms = []
    pos = 0
    while True:
        m = _TERM.match(text, pos)
        if not m:
            raise ExpressionError(text, pos, "expected a term R*y(BITS)")
        bits = m.group("bits")
        if set(bits) - {"0", "1"}:
            raise ExpressionError(text, m.start("bits"), f"label {bits!r} is not a bit string")
        if bits.endswith("0"):
            raise LabelError(bits, "non-canonical label (trailing '0')")
        num, _, den = m.group("coef").replace(" ", "").partition("/")
        if den and int(den) == 0:
            raise ExpressionError(text, m.start("coef"), "zero denominator")
        terms.append((bits, Fraction(int(num), int(den) if den else 1)))
        pos = m.end()
        if pos == len(text):
            return HamelVector(terms)
        if text[pos] != "+":
            raise ExpressionError(text, pos, "expected '+' between terms")
        pos += 1


def _ternary(q):
    return format_ternary(q)


def _approx(q, digits=30):
    q = Fraction(q)
    with localcontext() as ctx:
        ctx.prec = digits
        return str(Decimal(q.numerator) / Decimal(q.denominator))


def _emit(args, payload, text_lines):
    if args.json:
        print(json.dumps(payload, indent=2))
    else:
        for line in text_lines:
            print(line)


def cmd_encode(args):
    x = parse_expression(args.expr)
    code = encode(x).to_json()
    if args.json:
        print(json.dumps({"x": str(x), "n_x": n_of(x), "codepoint": code}, indent=2))
    else:
        print(json.dumps(code))
    return EXIT_OK


def cmd_eval(args):
    x = parse_expression(args.expr)
    val = f(x, args.n_max)
    payload = {"x": str(x), "n_x": n_of(x), "f": str(val), "f_factored": _ternary(val)}
    lines = [_ternary(val)]
    if args.approx:
        payload["approx_inexact"] = _approx(val)
        lines.append(f"~ {payload['approx_inexact']} (inexact preview)")
    _emit(args, payload, lines)
    return EXIT_OK


def cmd_gap(args):
    x, s = parse_expression(args.x), parse_expression(args.s)
    g = gap(x, s, args.n_max)
    eps = epsilon(x, args.n_max)
    inside = z_contains(x, s)
    ok = inside or g >= eps
    payload = {"x": str(x), "s": str(s), "gap": str(g), "gap_factored": _ternary(g),
               "epsilon_exponent": block_offset(n_of(x) + 1),
               "gap_at_least_epsilon": g >= eps, "s_in_z": inside, "pass": ok}
    lines = [f"gap = {_ternary(g)}",
             f"epsilon = 3^-{payload['epsilon_exponent']}",
             f"gap >= epsilon: {'yes' if g >= eps else 'no'}",
             f"s in Z_x: {'yes' if inside else 'no'}",
             f"check: {'pass' if ok else 'FAIL'}"]
    if args.approx:
        payload["approx_inexact"] = _approx(g)
        lines.insert(1, f"~ {payload['approx_inexact']} (inexact preview)")
    _emit(args, payload, lines)
    return EXIT_OK if ok else EXIT_CHECK


def cmd_zx(args):
    x = parse_expression(args.expr)
    n = n_of(x)
    k = n + 1
    eps_exp = block_offset(k)
    rows = []
    for s in sorted(z_set(x), key=str):
        minus, plus = x - s, x + s
        pm, pp = code_prefix(minus, k), code_prefix(plus, k)
        try:
            g = gap(x, s, args.n_max)
            g_text = _ternary(g)
        except CapacityError:
            g = g_text = None
        rows.append({"s": str(s), "distance": str(vector_distance(minus, plus)),
                     "gap": None if g is None else str(g), "gap_factored": g_text,
                     "gap_at_least_epsilon": separated(pm, pp, k)})
    payload = {"x": str(x), "n_x": n, "size": len(rows), "expected_size": n ** len(x),
               "epsilon_exponent": eps_exp, "elements": rows}
    lines = [f"Z_x for x = {x}: {len(rows)} elements (n_x = {n}, epsilon = 3^-{eps_exp})"]
    for r in rows:
        g = r["gap_factored"] if r["gap_factored"] is not None else "(beyond n_max)"
        lines.append(f"  s = {r['s']}  d = {r['distance']}  gap = {g}"
                     f"  gap>=eps: {'yes' if r['gap_at_least_epsilon'] else 'no'}")
    _emit(args, payload, lines)
    return EXIT_OK if len(rows) == n ** len(x) else EXIT_CHECK


def _report_lines(rep):
    j = rep.to_json()
    lines = [f"{j['campaign']}: {'PASS' if j['pass'] else 'FAIL'}"
             f" ({j['pairs_checked']} pairs, {len(j['violations'])} violations,"
             f" {j['elapsed_ms']:.0f} ms)"]
    hist = j["branch_histogram"]
    if any(hist.values()):
        lines.append("  branches: " + ", ".join(f"{k}={v}" for k, v in hist.items()))
    for v in j["violations"][:10]:
        lines.append(f"  violation: {json.dumps(v)}")
    return lines


def cmd_scan(args):
    x = parse_expression(args.expr)
    rep = containment_campaign(x, args.samples, seed=args.seed,
                               max_index=args.max_index, n_max=args.n_max)
    lines = _report_lines(rep)
    lines.append(f"  exceptional shifts (all inside Z_x): {', '.join(rep.extra['exceptional']) or 'none'}")
    _emit(args, rep.to_json(), lines)
    return EXIT_OK if rep.passed else EXIT_CHECK


def cmd_selftest(args):
    reports = [exhaustive_lemma_check(u, m) for u, m in SELFTEST_UNIVERSES]
    ok = all(r.passed for r in reports)
    payload = {"backend": BACKEND, "pass": ok, "reports": [r.to_json() for r in reports]}
    lines = [line for r in reports for line in _report_lines(r)]
    lines.append(f"selftest: {'PASS' if ok else 'FAIL'} (kernels: {BACKEND})")
    _emit(args, payload, lines)
    return EXIT_OK if ok else EXIT_CHECK


def cmd_cases(args):
    rep = branch_coverage(seed=args.seed, pairs=args.samples, max_index=args.max_index)
    _emit(args, rep.to_json(), _report_lines(rep))
    return EXIT_OK if rep.passed else EXIT_CHECK


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--samples", type=int, default=10000)
    common.add_argument("--n-max", type=int, default=DEFAULT_N_MAX)
    common.add_argument("--max-index", type=int, default=8)
    common.add_argument("--json", action="store_true")
    common.add_argument("--approx", action="store_true",
                        help="add an inexact decimal preview")
    parser = argparse.ArgumentParser(
        prog="antisym", parents=[common],
        description="Exact evaluation and checking of the uniformly antisymmetric map.")
    sub = parser.add_subparsers(dest="verb", required=True)

    def add(name, func, helptext, *positionals):
        p = sub.add_parser(name, parents=[common], help=helptext)
        for pos in positionals:
            p.add_argument(pos)
        p.set_defaults(func=func)

    add("encode", cmd_encode, "print the code point g(x) as JSON", "expr")
    add("eval", cmd_eval, "print f(x) exactly", "expr")
    add("gap", cmd_gap, "print |f(x+s) - f(x-s)| against epsilon(x)", "x", "s")
    add("zx", cmd_zx, "list the exceptional set Z_x", "expr")
    add("scan", cmd_scan, "run the containment campaign around x", "expr")
    add("selftest", cmd_selftest, "exhaustive check on a small built-in universe")
    add("cases", cmd_cases, "proof-branch coverage report")
    return parser


def main(argv=None) -> int:
    if hasattr(sys, "set_int_max_str_digits"):
        sys.set_int_max_str_digits(0)
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ExpressionError, LabelError) as exc:
        print(json.dumps({"error": "parse", "message": str(exc)}), file=sys.stderr)
        return EXIT_USAGE
    except (CapacityError, SizeGuardError) as exc:
        print(json.dumps({"error": "capacity", "message": str(exc)}), file=sys.stderr)
        return EXIT_CAPACITY


if __name__ == "__main__":
    sys.exit(main())
