"""Command-line front end: ``fptkit <subcommand> ...`` or ``python3 -m fptkit``.

Every subcommand prints a short human-readable report, or a JSON document
with ``--json``.  Exit status is 0 on success, 1 on domain errors (bad
polynomials, violated preconditions, exhausted search bounds) and 2 on
usage errors.
"""

from __future__ import annotations

import argparse
import json
import sys

from .derivation import DEFAULT_POWER_BOUND, delta_m, hasse_derive, lucas_binom, pm_power_root
from .errors import FptError, NotDClosed
from .fields import check_prime, parse_poly, parse_ratfunc
from .ideals import (
    PolyIdeal,
    _VAR,
    descend_generators,
    intersect_ideals,
    is_pm_rational,
    parse_generators,
    vanishing_ideal,
)
from .places import parse_place
from .reports import run_exm0, run_exm1
from .units import SUnitGroup, csp_witness_search, frobenius_filtration, verify_injective


def _emit(args, payload, lines):
    if args.json:
        print(json.dumps(payload, indent=2, sort_keys=True))
    else:
        print("\n".join(lines))


def _split_list(text, sep):
    return [s.strip() for s in text.split(sep) if s.strip()]


def _cmd_derive(args):
    r = parse_ratfunc(args.expr, args.p)
    d = hasse_derive(args.i, r)
    payload = {"p": args.p, "i": args.i, "input": str(r), "result": str(d)}
    _emit(args, payload, [f"D^({args.i})({r}) = {d}"])


def _cmd_delta(args):
    r = parse_ratfunc(args.expr, args.p)
    d = delta_m(r, args.m, args.bound)
    root = pm_power_root(d, args.m)
    payload = {"p": args.p, "m": args.m, "input": str(r), "result": str(d), "root": str(root)}
    _emit(args, payload, [f"Delta_{args.m}({r}) = {d}", f"p^m-th root: {root}"])


def _cmd_lucas(args):
    if args.i < 0 or args.j < 0:
        raise ValueError("binomial arguments must be nonnegative")
    check_prime(args.p)
    v = lucas_binom(args.i, args.j, args.p)
    _emit(args, {"i": args.i, "j": args.j, "p": args.p, "value": v}, [f"C({args.i}, {args.j}) mod {args.p} = {v}"])


def _cmd_pm_root(args):
    r = parse_ratfunc(args.expr, args.p)
    root = pm_power_root(r, args.m)
    payload = {"p": args.p, "m": args.m, "input": str(r), "root": None if root is None else str(root)}
    text = f"({root})^{args.p ** args.m} = {r}" if root is not None else f"{r} is not a {args.p}^{args.m}-th power"
    _emit(args, payload, [text])


def _read_sections(paths):
    """Ideal texts from files; within a file, lines of ``---`` separate ideals."""
    sections = []
    for path in paths:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
        block = []
        for line in text.splitlines():
            if line.strip() == "---":
                sections.append("\n".join(block))
                block = []
            else:
                block.append(line)
        sections.append("\n".join(block))
    return [s for s in sections if any(ln.split("#", 1)[0].strip() for ln in s.splitlines())]


def _load_ideals(args):
    sections = _read_sections(args.files)
    if not sections:
        raise ValueError("no generators found")
    nvars = args.nvars
    if nvars is None:
        nvars = max((int(k) + 1 for s in sections for k in _VAR.findall(s)), default=1)
    return [PolyIdeal(parse_generators(s, args.p, nvars), nvars=nvars, p=args.p) for s in sections]


def _basis_lines(title, polys):
    return [title] + [f"  {g}" for g in polys]


def _certificate_payload(cert):
    return {
        "rational": cert.rational,
        "m": cert.m,
        "tested": list(cert.tested),
        "witnesses": [{"i": i, "generator": str(g), "remainder": str(r)} for i, g, r in cert.witnesses],
    }


def _cmd_ideal_rational(args):
    out, lines = [], []
    for k, ideal in enumerate(_load_ideals(args)):
        cert = is_pm_rational(ideal, args.m, reduced_tests=args.reduced_tests, bound=args.bound)
        entry = _certificate_payload(cert)
        entry["basis"] = [str(g) for g in ideal.basis]
        out.append(entry)
        lines += _basis_lines(f"ideal {k}: reduced basis", ideal.basis)
        lines.append(f"  p^m-rational (m={args.m}): {'yes' if cert else 'no'}")
        for i, g, r in cert.witnesses:
            lines.append(f"  witness: D^({i})({g}) has normal form {r}")
    _emit(args, {"p": args.p, "m": args.m, "ideals": out}, lines)


def _cmd_ideal_descend(args):
    out, lines = [], []
    for k, ideal in enumerate(_load_ideals(args)):
        gens = descend_generators(ideal, args.m, args.bound)
        out.append({"basis": [str(g) for g in ideal.basis], "descended": [str(g) for g in gens]})
        lines += _basis_lines(f"ideal {k}: generators with p^m-th power coefficients", gens)
    _emit(args, {"p": args.p, "m": args.m, "ideals": out}, lines)


def _cmd_ideal_intersect(args):
    ideals = _load_ideals(args)
    result = ideals[0]
    for J in ideals[1:]:
        result = intersect_ideals(result, J)
    payload = {"p": args.p, "inputs": len(ideals), "basis": [str(g) for g in result.basis]}
    lines = _basis_lines(f"intersection of {len(ideals)} ideal(s):", result.basis)
    if args.m is not None:
        cert = is_pm_rational(result, args.m, bound=args.bound)
        payload["m"] = args.m
        payload["rational"] = cert.rational
        lines.append(f"p^m-rational (m={args.m}): {'yes' if cert else 'no'}")
    _emit(args, payload, lines)


def _parse_points(text, p):
    points = []
    for chunk in _split_list(text, ";"):
        if not (chunk.startswith("[") and chunk.endswith("]")):
            raise ValueError(f"point {chunk!r} must look like [a:b:...]")
        points.append([parse_ratfunc(c, p) for c in chunk[1:-1].split(":")])
    if not points:
        raise ValueError("no points given")
    return points


def _cmd_vanishing(args):
    points = _parse_points(args.points, args.p)
    ideal = vanishing_ideal(points, p=args.p)
    payload = {
        "p": args.p,
        "points": [[str(c) for c in pt] for pt in points],
        "basis": [str(g) for g in ideal.basis],
    }
    lines = _basis_lines("vanishing ideal:", ideal.basis)
    if args.m is not None:
        cert = is_pm_rational(ideal, args.m, bound=args.bound)
        payload["m"] = args.m
        payload["rational"] = cert.rational
        lines.append(f"p^m-rational (m={args.m}): {'yes' if cert else 'no'}")
        if cert:
            gens = descend_generators(ideal, args.m, args.bound)
            payload["descended"] = [str(g) for g in gens]
            lines += _basis_lines("descended generators:", gens)
    _emit(args, payload, lines)


def _parse_places(text, p):
    return [parse_place(s, p) for s in _split_list(text, ",")]


def _cmd_csp_search(args):
    group = SUnitGroup(_parse_places(args.T, args.p), p=args.p, implicit_infinity=True)
    S, cert = csp_witness_search(group, args.m, args.deg_bound)
    ok = verify_injective(group, args.m, S)
    payload = cert.to_dict()
    payload.update({"T": [str(v) for v in group.places], "S": [str(v) for v in S], "verified": ok})
    lines = [
        f"T = {{{', '.join(map(str, group.places))}}}, m = {args.m}",
        f"quotient O_T^*/(O_T^*)^m: shape {list(cert.quotient_shape)}, size {cert.quotient_size}",
        f"generators: {', '.join(cert.generators)}",
    ]
    for step in cert.places:
        lines.append(f"  + {step.place}: images mod {step.modulus} = {step.image_matrix[0]}, kernel left {step.kernel_after}")
    lines.append(f"S = {{{', '.join(map(str, S))}}}; brute-force injectivity: {'verified' if ok else 'FAILED'}")
    _emit(args, payload, lines)
    return 0 if ok else 1


def _cmd_filtration(args):
    gens = [parse_ratfunc(g, args.p) for g in _split_list(args.gens, ",")]
    T = None
    if args.T:
        T = SUnitGroup(_parse_places(args.T, args.p), p=args.p, implicit_infinity=True)
    report = frobenius_filtration(gens, T, args.n_max, p=args.p)
    lines = [f"H = <{', '.join(map(str, gens))}> inside the S-units of {{{', '.join(map(str, report.places))}}}"]
    for lv in report.levels:
        lines.append(f"  U_{lv.n} = <{', '.join(map(str, lv.basis))}>")
    lines.append(f"intersection of all U_n: {report.intersection} (torsion: {report.torsion})")
    _emit(args, report.to_dict(), lines)


def _cmd_exm0(args):
    a, b = parse_poly(args.a, args.p), parse_poly(args.b, args.p)
    alpha = parse_ratfunc(args.alpha, args.p)
    report = run_exm0(args.p, a, b, alpha, args.n_max)
    if args.json:
        print(report.to_json())
    else:
        print(report.format_table())


def _cmd_exm1(args):
    places = None if args.places is None else _parse_places(args.places, args.p)
    report = run_exm1(args.p, args.n_max, places)
    if args.json:
        print(report.to_json())
    else:
        print(report.format_table())


def build_parser():
    parser = argparse.ArgumentParser(prog="fptkit", description="Exact computations over F_p(t).")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="print JSON instead of text")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, fn, help_text):
        sp = sub.add_parser(name, parents=[common], help=help_text)
        sp.set_defaults(func=fn)
        return sp

    sp = add("derive", _cmd_derive, "iterative derivation D^(i) of a rational function")
    sp.add_argument("-p", type=int, required=True)
    sp.add_argument("-i", type=int, required=True)
    sp.add_argument("expr")

    sp = add("delta", _cmd_delta, "the projection Delta_m onto p^m-th powers")
    sp.add_argument("-p", type=int, required=True)
    sp.add_argument("-m", type=int, required=True)
    sp.add_argument("--bound", type=int, default=DEFAULT_POWER_BOUND)
    sp.add_argument("expr")

    sp = add("lucas", _cmd_lucas, "binomial coefficient modulo p")
    sp.add_argument("i", type=int)
    sp.add_argument("j", type=int)
    sp.add_argument("p", type=int)

    sp = add("pm-root", _cmd_pm_root, "p^m-th root of a rational function, if any")
    sp.add_argument("-p", type=int, required=True)
    sp.add_argument("-m", type=int, required=True)
    sp.add_argument("expr")

    for name, fn, help_text, m_required in (
        ("ideal-rational", _cmd_ideal_rational, "test closure under D^(i), 1 <= i < p^m", True),
        ("ideal-descend", _cmd_ideal_descend, "generators with p^m-th power coefficients", True),
        ("ideal-intersect", _cmd_ideal_intersect, "intersect ideals (files or --- separated sections)", False),
    ):
        sp = add(name, fn, help_text)
        sp.add_argument("-p", type=int, required=True)
        sp.add_argument("-m", type=int, required=m_required)
        sp.add_argument("--nvars", type=int)
        sp.add_argument("--bound", type=int, default=DEFAULT_POWER_BOUND)
        if name == "ideal-rational":
            sp.add_argument("--reduced-tests", action="store_true", help="test only D^(p^s), s < m")
        sp.add_argument("files", nargs="+", metavar="FILE")

    sp = add("vanishing", _cmd_vanishing, "homogeneous ideal of projective points, e.g. '[t^2:1];[0:1]'")
    sp.add_argument("-p", type=int, required=True)
    sp.add_argument("-m", type=int)
    sp.add_argument("--bound", type=int, default=DEFAULT_POWER_BOUND)
    sp.add_argument("points")

    sp = add("csp-search", _cmd_csp_search, "places S witnessing injectivity modulo m-th powers")
    sp.add_argument("-p", type=int, required=True)
    sp.add_argument("-m", type=int, required=True)
    sp.add_argument("--T", required=True, help="comma-separated places, e.g. 't,t+1,inf'")
    sp.add_argument("--deg-bound", type=int, required=True)

    sp = add("filtration", _cmd_filtration, "Frobenius filtration of a subgroup of S-units")
    sp.add_argument("-p", type=int, required=True)
    sp.add_argument("--gens", required=True, help="comma-separated generators, e.g. 't,t+1'")
    sp.add_argument("--n-max", type=int, default=4)
    sp.add_argument("--T", help="ambient places (default: the support of the generators)")

    sp = add("exm0", _cmd_exm0, "convergence report for x_n = (P^n + a)/(P^(2n) + b) + alpha")
    sp.add_argument("-p", type=int, required=True)
    sp.add_argument("--a", default="t")
    sp.add_argument("--b", default="1")
    sp.add_argument("--alpha", default="1")
    sp.add_argument("--n-max", type=int, default=6)

    sp = add("exm1", _cmd_exm1, "convergence report for y_n = t^(p^(n!))")
    sp.add_argument("-p", type=int, required=True)
    sp.add_argument("--n-max", type=int, default=3)
    sp.add_argument("--places", help="comma-separated places where t is a unit")
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        status = args.func(args)
    except (FptError, ValueError, ZeroDivisionError, OSError) as exc:
        if isinstance(exc, NotDClosed) and args.json:
            print(json.dumps({"error": str(exc), "certificate": _certificate_payload(exc.certificate)},
                             indent=2, sort_keys=True))
        print(f"fptkit {args.command}: error: {exc}", file=sys.stderr)
        return 1
    return status or 0


if __name__ == "__main__":
    sys.exit(main())
