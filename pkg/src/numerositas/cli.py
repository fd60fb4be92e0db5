"""Command-line front end.

Exit codes: 0 success, 1 parse error, 2 unsupported or domain error,
3 complexity bound exceeded, 4 verification mismatch.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import labels
from .errors import ComplexityExceeded, NumerositasError, ParseError
from .euclid import ALPHA, BETA, standard_part
from .euclid import parse_value
from .measure import mu, parse_plurinterval
from .numerosity import count_form, has_real_part, num, verify
from .ordinal import evaluate, to_theta_base
from .setlang import parse_ordinal, parse_set

EXIT_OK, EXIT_PARSE, EXIT_DOMAIN, EXIT_COMPLEXITY, EXIT_MISMATCH = 0, 1, 2, 3, 4


def _num(args):
    e = parse_set(args.expr)
    value = num(e)
    threshold = None if has_real_part(e) else count_form(e).threshold
    text = f"{value}\nthreshold {threshold if threshold is not None else 'axiomatic'}"
    return text, {"value": str(value), "threshold": threshold}, EXIT_OK


def _count(args):
    e = parse_set(args.expr)
    c = labels.count_brute(e, args.level)
    return str(c), {"value": c, "level": args.level}, EXIT_OK


def _verify(args):
    report = verify(parse_set(args.expr), args.max_level)
    code = EXIT_OK if report.passed else EXIT_MISMATCH
    return report.text(), report.as_json(), code


def _ord(args):
    t = evaluate(parse_ordinal(args.expr))
    lines, data = [t.render()], {"value": t.render()}
    if args.theta_base is not None:
        digits = to_theta_base(t, args.theta_base)
        lines.append(digits.render())
        data["theta_base"] = digits.render()
    return "\n".join(lines), data, EXIT_OK


def _measure(args):
    try:
        target = parse_set(args.expr)
    except ParseError as set_error:
        try:
            target = parse_plurinterval(args.expr)
        except ParseError:
            raise set_error from None
    unit = ALPHA if args.unit == "alpha" else BETA
    value = mu(target, unit)
    return str(value), {"measure": str(value), "unit": args.unit}, EXIT_OK


def _st(args):
    value = standard_part(parse_value(args.expr))
    return str(value), {"value": str(value)}, EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "json"), default="text")
    parser = argparse.ArgumentParser(
        prog="numerositas", description="Exact numerosities, ordinals and counting measures."
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("num", parents=[common], help="numerosity of a set expression")
    p.set_defaults(run=_num)
    p = sub.add_parser("count", parents=[common], help="brute-force count at one level")
    p.add_argument("--level", type=int, required=True)
    p.set_defaults(run=_count)
    p = sub.add_parser("verify", parents=[common], help="check the closed form against brute force")
    p.add_argument("--max-level", type=int, required=True)
    p.set_defaults(run=_verify)
    p = sub.add_parser("ord", parents=[common], help="evaluate an ordinal expression")
    p.add_argument("--theta-base", type=int, default=None)
    p.set_defaults(run=_ord)
    p = sub.add_parser("measure", parents=[common], help="counting measure of a set or plurinterval")
    p.add_argument("--unit", choices=("alpha", "beta"), default="beta")
    p.set_defaults(run=_measure)
    p = sub.add_parser("st", parents=[common], help="standard part of a value expression")
    p.set_defaults(run=_st)
    for name in ("num", "count", "verify", "ord", "measure", "st"):
        sub.choices[name].add_argument("expr")
    return parser


def run(argv=None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    args = build_parser().parse_args(argv)
    try:
        text, data, code = args.run(args)
    except ParseError as exc:
        print(f"parse error: {exc}", file=err)
        return EXIT_PARSE
    except ComplexityExceeded as exc:
        print(f"complexity exceeded: {exc}", file=err)
        return EXIT_COMPLEXITY
    except (NumerositasError, ValueError) as exc:
        print(f"error: {exc}", file=err)
        return EXIT_DOMAIN
    except RecursionError:
        print("error: expression nested too deeply", file=err)
        return EXIT_DOMAIN
    if args.format == "json":
        print(json.dumps(data, sort_keys=True), file=out)
    else:
        print(text, file=out)
    return code


def main(argv=None) -> int:
    return run(argv)


if __name__ == "__main__":
    sys.exit(main())
