"""Command-line front end: `arithgroup <command> ...`.

Exit codes: 0 success (all checks pass), 1 a verification check failed,
2 malformed input.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from pathlib import Path

from .exact import InputError, Matrix, parse_int_matrix
from .report import Check, Report

EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2


def _emit(args, doc, text_lines):
    if args.json:
        print(json.dumps(doc, indent=2, sort_keys=False))
    else:
        for line in text_lines:
            print(line)


def _emit_report(args, report: Report):
    _emit(args, report.to_json(), report.lines())
    return EXIT_OK if report.passed else EXIT_FAIL


def _read_doc(args, inline):
    if args.input:
        text = Path(args.input).read_text()
    elif inline is not None:
        text = inline
    else:
        text = sys.stdin.read()
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"malformed JSON: {exc}") from exc


def _square_matrix(text) -> Matrix:
    values = text.split(",")
    n = math.isqrt(len(values))
    if n * n != len(values):
        raise InputError(f"{len(values)} entries do not form a square matrix")
    return parse_int_matrix(text, n)


# -- commands ------------------------------------------------------------------

def cmd_reduce_form(args):
    from .forms import QuadraticForm, siegel_reduce

    phi = QuadraticForm.from_json(_read_doc(args, args.form))
    cert = siegel_reduce(phi)
    doc = cert.to_json()
    _emit(args, doc, [
        f"gamma   = {cert.gamma.to_json()}",
        f"reduced = {doc['reduced']['a']}",
        f"t       = {doc['t']}",
        f"u       = {doc['u']}",
    ])
    return EXIT_OK if cert.check(phi) else EXIT_FAIL


def cmd_reduce_point(args):
    from .modular import HPoint, decompose_ST, reduce_to_D

    z = HPoint.parse(args.re, args.im)
    gamma, w = reduce_to_D(z)
    word = decompose_ST(gamma)
    doc = {"gamma": str(gamma), "word": " ".join(word), "point": z.to_json(), "reduced": w.to_json()}
    _emit(args, doc, [f"gamma   = {gamma}", f"word    = {doc['word'] or '(empty)'}", f"reduced = {w}"])
    return EXIT_OK if w.in_D() else EXIT_FAIL


def cmd_sl2(args):
    from .modular import (
        HPoint,
        SL2Element,
        decompose_ST,
        evaluate_word,
        in_congruence_subgroup,
        lemma9_check,
        moebius,
    )

    g = SL2Element.parse(args.matrix)
    if args.action == "decompose":
        word = decompose_ST(g)
        sign = "+" if evaluate_word(word) == g else "-"
        doc = {"matrix": str(g), "word": " ".join(word), "sign": sign}
        _emit(args, doc, [f"{doc['word'] or '(empty)'}  (= {sign}gamma)"])
    elif args.action == "moebius":
        if args.re is None or args.im is None:
            raise InputError("moebius needs --re and --im")
        w = moebius(g, HPoint.parse(args.re, args.im))
        _emit(args, w.to_json(), [str(w)])
    elif args.action == "congruence":
        ok = in_congruence_subgroup(g, args.mod)
        _emit(args, {"matrix": str(g), "a": args.mod, "member": ok}, [str(ok).lower()])
    elif args.action == "lemma9":
        cert = lemma9_check(args.mod, g)
        doc = {"p": cert.p, "order": "infinite" if cert.torsion_free else cert.order, "valuation": cert.valuation}
        _emit(args, doc, [f"order {doc['order']}, p-adic valuation of gamma - 1: {cert.valuation}"])
        return EXIT_OK if cert.torsion_free else EXIT_FAIL
    return EXIT_OK


def cmd_free(args):
    from .modular import free_word_check

    gens = [_square_matrix(t) for t in args.generators]
    ok = free_word_check(gens, args.max_len)
    report = Report("free")
    report.add(Check("no_relation_up_to_length", ok, {"max_len": args.max_len, "generators": len(gens)}))
    return _emit_report(args, report)


def cmd_roots(args):
    from .roots import root_system, weight_lattice_index

    rs = root_system(args.type)
    doc = {
        "type": args.type,
        "rank": rs.rank,
        "roots": len(rs),
        "positive_roots": len(rs.positive),
        "cartan": rs.cartan.to_json(),
        "weight_lattice_index": weight_lattice_index(rs),
    }
    _emit(args, doc, [json.dumps(doc)])
    return EXIT_OK


def cmd_e7(args):
    from .e7.verify import verify

    report = verify(flip=args.flip, command="e7 verify" + (f" --flip {args.flip}" if args.flip else ""))
    return _emit_report(args, report)


def cmd_present(args):
    from .presentations import abelian_order, abelianization, named_presentation, standard_assignment, verify_relations

    pres = named_presentation(args.group)
    report = Report(f"present check --group {args.group}")
    report.add(verify_relations(pres, standard_assignment(args.group)))
    factors = abelianization(pres)
    order = abelian_order(factors)
    report.add(Check("abelianization", True, {
        "invariant_factors": ",".join(map(str, factors)) or "trivial",
        "order": "infinite" if order is None else order,
    }))
    return _emit_report(args, report)


def cmd_minkowski(args):
    from .minkowski import minkowski_bound

    table = minkowski_bound(args.n)
    doc = table.to_json()
    _emit(args, doc, [json.dumps(doc)])
    return EXIT_OK


def cmd_order(args):
    from .modular import INFINITE, element_order

    M = _square_matrix(args.matrix)
    k = element_order(M)
    doc = {"order": "infinite" if k == INFINITE else k}
    _emit(args, doc, [str(doc["order"])])
    return EXIT_OK


def cmd_plot(args):
    from .plotting import render_domain, translates

    try:
        lo, hi = (float(x) for x in args.range.split(","))
    except ValueError:
        raise InputError(f"bad range {args.range!r}, expected lo,hi") from None
    svg = render_domain(args.depth, (lo, hi))
    if args.out:
        Path(args.out).write_text(svg)
        doc = {"out": args.out, "depth": args.depth, "arcs": len(translates(args.depth)), "bytes": len(svg)}
        _emit(args, doc, [f"wrote {args.out} ({doc['arcs']} arcs)"])
    else:
        sys.stdout.write(svg)
    return EXIT_OK


# -- parser --------------------------------------------------------------------

def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable output")

    p = argparse.ArgumentParser(prog="arithgroup", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    red = sub.add_parser("reduce", help="Siegel reduction of forms, reduction of points to D")
    rsub = red.add_subparsers(dest="what", required=True)
    f = rsub.add_parser("form", parents=[common], help="reduce a positive-definite form")
    f.add_argument("form", nargs="?", help='inline JSON {"n": 2, "a": [["5","4"],["4","4"]]}')
    f.add_argument("--input", help="read the form document from a file")
    f.set_defaults(func=cmd_reduce_form)
    pt = rsub.add_parser("point", parents=[common], help="reduce z = re + i*im into D")
    pt.add_argument("re", help='real part, "p/q"')
    pt.add_argument("im", help='imaginary part, "r*sqrt(s)"')
    pt.set_defaults(func=cmd_reduce_point)

    s = sub.add_parser("sl2", parents=[common], help="SL2(Z) element operations")
    s.add_argument("action", choices=["decompose", "moebius", "congruence", "lemma9"])
    s.add_argument("matrix", help='"a,b,c,d"')
    s.add_argument("--re")
    s.add_argument("--im")
    s.add_argument("--mod", type=int, default=3, help="level a for congruence, prime p for lemma9")
    s.set_defaults(func=cmd_sl2)

    fr = sub.add_parser("free", parents=[common], help="search for relations among generators")
    fr.add_argument("generators", nargs="+", help='matrices "a,b,c,d"')
    fr.add_argument("--max-len", type=int, default=8)
    fr.set_defaults(func=cmd_free)

    r = sub.add_parser("roots", parents=[common], help="root system data")
    r.add_argument("--type", required=True, help="A<n>, D<n>, E6, E7 or E8")
    r.set_defaults(func=cmd_roots)

    e = sub.add_parser("e7", help="the E7 construction")
    esub = e.add_subparsers(dest="what", required=True)
    v = esub.add_parser("verify", parents=[common], help="run the full certificate suite")
    v.add_argument("--flip", help="negate X_alpha for this root, e.g. e1-e2 (negative control)")
    v.set_defaults(func=cmd_e7)

    pr = sub.add_parser("present", help="group presentations")
    psub = pr.add_subparsers(dest="what", required=True)
    c = psub.add_parser("check", parents=[common], help="verify relators and compute the abelianization")
    c.add_argument("--group", required=True, help="sl2a, sl2b or steinberg:<N>")
    c.set_defaults(func=cmd_present)

    m = sub.add_parser("minkowski", parents=[common], help="Minkowski bound m(N)")
    m.add_argument("--n", type=int, required=True)
    m.set_defaults(func=cmd_minkowski)

    o = sub.add_parser("order", parents=[common], help="order of an element of GL_N(Z)")
    o.add_argument("matrix", help="row-major entries, comma separated")
    o.set_defaults(func=cmd_order)

    pl = sub.add_parser("plot", parents=[common], help="SVG of D and the translates of D_0")
    pl.add_argument("--depth", type=int, default=2)
    pl.add_argument("--range", default="-1.5,1.5", help="x range, lo,hi")
    pl.add_argument("--out", help="write the SVG here instead of stdout")
    pl.set_defaults(func=cmd_plot)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (InputError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
