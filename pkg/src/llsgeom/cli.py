"""Command-line front end.

Exit codes: 0 success, 1 failed verification, 2 invalid input,
3 unsupported input (non-convergent tails, square discriminants, ...).
"""
from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import __version__
from .cf import INF, CfPeriodic, eval_finite, eval_periodic, expand_quadratic, expand_rational
from .cf import format_cf, format_periodic
from .errors import ConsistencyError, InvalidInput, Unsupported
from .exactnum import format_scalar, is_rational, parse_scalar, to_decimal
from .forms import discriminant, lls_of_form, reduce
from .geometry import is_f_broken_line, lls, reconstruct, signature
from .io import dumps, line_to_json, load_json, read_form, read_line, read_scene, sail_to_json
from .perron import classical_perron, verify_identity

EXIT_OK, EXIT_FAIL, EXIT_INVALID, EXIT_UNSUPPORTED = 0, 1, 2, 3


def _fmt(x) -> str:
    """Exact text, plus a decimal rendering when it is not an integer."""
    if x is INF:
        return "inf"
    s = format_scalar(x)
    if is_rational(x) and x.denominator == 1:
        return s
    return f"{s}  (≈ {to_decimal(x)})"


def _scalar(text: str):
    """One scalar: text syntax, or a quadratic number as a JSON object."""
    if text.strip().startswith("{"):
        return parse_scalar(load_json(text))
    return parse_scalar(text)


def _scalars(text: str) -> list:
    text = text.strip().strip("()[]")
    if not text:
        raise InvalidInput("empty scalar list")
    return [parse_scalar(t.strip()) for t in text.replace(";", ",").replace(":", ",").split(",")]


def cmd_lls(args, out):
    seq = lls(read_line(load_json(args.line)))
    print("(" + ", ".join(format_scalar(a) for a in seq) + ")", file=out)
    return EXIT_OK


def cmd_signature(args, out):
    s = signature(read_line(load_json(args.line)))
    print(f"{s:+d}", file=out)
    return EXIT_OK


def cmd_reconstruct(args, out):
    b = reconstruct(_scalars(args.lls))
    print(dumps(line_to_json(b)), file=out)
    return EXIT_OK


def cmd_cf(args, out):
    if args.action == "expand":
        x = _scalar(args.value)
        if is_rational(x):
            print(format_cf(expand_rational(x, args.parity)), file=out)
        else:
            print(format_periodic(expand_quadratic(x)), file=out)
        return EXIT_OK
    pre = _scalars(args.value) if args.value.strip("()[] ") else []
    if args.period:
        v = eval_periodic(CfPeriodic(tuple(pre), tuple(_scalars(args.period))))
    else:
        v = eval_finite(pre)
    print(_fmt(v), file=out)
    return EXIT_OK


def cmd_reduce(args, out):
    f = read_form(load_json(args.form))
    red = reduce(f)
    s = lls_of_form(f)
    U = red.witness
    print(f"form:      {f}", file=out)
    print(f"alpha:     {_fmt(red.alpha)}", file=out)
    print(f"beta:      {_fmt(red.beta)}", file=out)
    print(f"scale:     {format_scalar(red.scale)}", file=out)
    print(f"U:         [[{U[0][0]}, {U[0][1]}], [{U[1][0]}, {U[1][1]}]]", file=out)
    for name, side in (("right", s.right), ("left", s.left)):
        text = format_periodic(side) if isinstance(side, CfPeriodic) else (
            "(" + ", ".join(format_scalar(a) for a in side) + ")")
        print(f"{name}:{' ' * (10 - len(name))}{text}", file=out)
    return EXIT_OK


def cmd_verify(args, out):
    f = read_form(load_json(args.form))
    b = read_line(load_json(args.line))
    ok_line = is_f_broken_line(b, f)
    if not ok_line:
        print("warning: endpoints do not lie on distinct kernel lines of f", file=out)
    ks = [args.vertex] if args.vertex is not None else None
    rep = verify_identity(f, b, strict=False, vertices=ks)
    print(f"discriminant: {format_scalar(discriminant(f))}", file=out)
    print(f"{'k':>3}  {'vertex':<16} {'f(A_k)':<20} {'identity':<28} status", file=out)
    for c in rep.checks:
        v = b[c.k]
        where = f"({format_scalar(v.x)}, {format_scalar(v.y)})"
        print(f"{c.k:>3}  {where:<16} {_fmt(c.lhs):<20} {_fmt(c.rhs):<28} "
              f"{'ok' if c.ok else 'FAIL'}", file=out)
    passed = rep.passed and ok_line
    print("PASS" if passed else "FAIL", file=out)
    return EXIT_OK if passed else EXIT_FAIL


def cmd_spectrum(args, out):
    f = read_form(load_json(args.form))
    r = classical_perron(f, args.window)
    print(f"form:            {f}", file=out)
    print(f"discriminant:    {format_scalar(discriminant(f))}", file=out)
    print(f"m(f):            {_fmt(r.markov_minimum)}", file=out)
    print(f"sqrt(D)/m(f):    {_fmt(r.normalized)}", file=out)
    print(f"witness:         ({format_scalar(r.witness.x)}, {format_scalar(r.witness.y)})", file=out)
    print(f"term index:      {r.term.index}", file=out)
    print(f"term denominator:{' '}{_fmt(r.term.denominator)}", file=out)
    return EXIT_OK


def cmd_sail(args, out):
    from .sail import oracle_mismatches, sail_bruteforce, sails_of_form

    f = read_form(load_json(args.form))
    sails = sails_of_form(f, args.depth, radius=args.radius)
    status = EXIT_OK
    doc = {"form": {k: format_scalar(getattr(f, k)) for k in "ABC"}, "sails": []}
    for s in sails:
        entry = sail_to_json(s)
        if args.oracle:
            radius = args.radius or 50
            bad = oracle_mismatches(s, sail_bruteforce(s.angle, radius), radius)
            entry["oracle"] = {"radius": radius, "agrees": not bad, "mismatches": bad}
            if bad:
                status = EXIT_FAIL
        doc["sails"].append(entry)
    print(dumps(doc), file=out)
    return status


def cmd_markov(args, out):
    from .sail import markov_minimum_bruteforce, markov_minimum_sails

    f = read_form(load_json(args.form))
    m_bf, w = markov_minimum_bruteforce(f, args.radius)
    print(f"brute force (radius {args.radius}): {_fmt(m_bf)} at "
          f"({format_scalar(w.x)}, {format_scalar(w.y)})", file=out)
    if not f.is_integral():
        return EXIT_OK
    rep = markov_minimum_sails(f, args.depth)
    cp = classical_perron(f)
    print(f"sail vertices:            {_fmt(rep.markov_minimum)} at "
          f"({format_scalar(rep.witness.x)}, {format_scalar(rep.witness.y)})", file=out)
    print(f"classical identity:       {_fmt(cp.markov_minimum)}", file=out)
    print(f"sqrt(D)/m(f):             {_fmt(rep.normalized)}", file=out)
    agree = m_bf == rep.markov_minimum == cp.markov_minimum
    print("agree" if agree else "DISAGREE", file=out)
    return EXIT_OK if agree else EXIT_FAIL


def cmd_render(args, out):
    from .render import render_scene

    svg = render_scene(read_scene(load_json(args.scene)))
    Path(args.out).write_bytes(svg.encode("utf-8"))
    print(f"wrote {args.out}", file=out)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="llsgeom", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True)
    src = "JSON file or inline JSON"

    s = sub.add_parser("lls", help="LLS sequence of a broken line")
    s.add_argument("--line", required=True, help=src)
    s.set_defaults(func=cmd_lls)

    s = sub.add_parser("signature", help="sign of det(OA_0, OA_n)")
    s.add_argument("--line", required=True, help=src)
    s.set_defaults(func=cmd_signature)

    s = sub.add_parser("reconstruct", help="broken line from an LLS sequence")
    s.add_argument("--lls", required=True, help='comma separated scalars, e.g. "1,-1,1"')
    s.set_defaults(func=cmd_reconstruct)

    s = sub.add_parser("cf", help="continued fractions")
    s.add_argument("action", choices=("expand", "eval"))
    s.add_argument("value", help="scalar to expand, or comma separated elements to evaluate")
    s.add_argument("--parity", default="any", choices=("any", "even_length", "odd_length"))
    s.add_argument("--period", help="repeating elements appended to VALUE (eval only)")
    s.set_defaults(func=cmd_cf)

    s = sub.add_parser("reduce", help="reduced form and two-sided LLS sequence")
    s.add_argument("--form", required=True, help=src)
    s.set_defaults(func=cmd_reduce)

    s = sub.add_parser("verify", help="check the identity at interior vertices")
    s.add_argument("--form", required=True, help=src)
    s.add_argument("--line", required=True, help=src)
    s.add_argument("--vertex", type=int, help="check only this vertex")
    s.set_defaults(func=cmd_verify)

    s = sub.add_parser("spectrum", help="Markov minimum via the classical identity")
    s.add_argument("--form", required=True, help=src)
    s.add_argument("--window", type=int, default=0)
    s.set_defaults(func=cmd_spectrum)

    s = sub.add_parser("sail", help="the four sails of a form")
    s.add_argument("--form", required=True, help=src)
    s.add_argument("--depth", type=int, default=4)
    s.add_argument("--radius", type=int, help="extend sails past this box")
    s.add_argument("--oracle", action="store_true", help="compare with the brute-force hull")
    s.set_defaults(func=cmd_sail)

    s = sub.add_parser("markov", help="Markov minimum by every available method")
    s.add_argument("--form", required=True, help=src)
    s.add_argument("--radius", type=int, default=1000)
    s.add_argument("--depth", type=int, default=8)
    s.set_defaults(func=cmd_markov)

    s = sub.add_parser("render", help="draw a scene as SVG")
    s.add_argument("--scene", required=True, help=src)
    s.add_argument("--out", required=True, help="output .svg path")
    s.set_defaults(func=cmd_render)
    return p


def run(argv=None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args, out)
    except Unsupported as exc:
        print(f"unsupported: {exc}", file=err)
        return EXIT_UNSUPPORTED
    except (InvalidInput, ZeroDivisionError) as exc:
        print(f"invalid input: {exc}", file=err)
        return EXIT_INVALID
    except ConsistencyError as exc:
        print(f"verification failed: {exc}", file=err)
        return EXIT_FAIL
    except OSError as exc:
        print(f"error: {exc}", file=err)
        return EXIT_INVALID


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
