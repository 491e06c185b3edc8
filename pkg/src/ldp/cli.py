"""Command-line front end.

Every subcommand prints JSON on stdout.  Exit codes: 0 on success, 1 when a
verification check fails, 2 on usage or notation errors.  Rational numbers
are serialized as "p/q" strings, never as decimals.
"""

import argparse
import itertools
import json
import sys
from fractions import Fraction

from . import discrepancy, feasibility, graphs, pencil, picard, verify
from .poly import poly_to_json
from .fields import QQ, PrimeField
from .graphs import DynkinSyntaxError


def _frac(x):
    return str(Fraction(x))


def _emit(data):
    json.dump(data, sys.stdout, indent=1)
    sys.stdout.write("\n")


def _type_json(t):
    return {
        "notation": graphs.format_dynkin(t),
        "components": [
            dict(graphs.graph_to_json(g), notation=graphs.format_graph(g))
            for g in t.sorted_components()
        ],
    }


def cmd_parse(args):
    _emit(_type_json(graphs.parse_dynkin(args.notation)))


def cmd_det(args):
    t = graphs.parse_dynkin(args.notation)
    comps = [
        {"notation": graphs.format_graph(g), "determinant": graphs.graph_determinant(g)}
        for g in t.sorted_components()
    ]
    total = 1
    for c in comps:
        total *= c["determinant"]
    _emit({"notation": graphs.format_dynkin(t), "components": comps, "determinant": total})


def cmd_report(args):
    t = graphs.parse_dynkin(args.notation)
    rep = feasibility.feasibility_report(t)
    data = feasibility.report_to_json(rep)
    data["discrepancies"] = [
        {
            "component": graphs.format_graph(g),
            "e": [_frac(x) for x in discrepancy.discrepancies(g)],
        }
        for g in t.sorted_components()
    ]
    try:
        comp, vertex, e0 = discrepancy.select_hunt_divisor(t)
        data["hunt"] = {
            "component": graphs.format_graph(comp),
            "vertex": vertex,
            "coefficient": _frac(e0),
        }
    except discrepancy.AllDuValError:
        data["hunt"] = None
    _emit(data)


def cmd_lct(args):
    t = graphs.parse_dynkin(args.notation)
    comps = t.sorted_components()
    if len(comps) != 1:
        raise DynkinSyntaxError("lct expects a single connected graph", 0)
    g = comps[0]
    a = tuple(int(x) for x in args.incidence.split(","))
    value = discrepancy.lct_min_resolution(g, a)
    cls = discrepancy.classify_incidence(g, a)
    _emit(
        {
            "notation": graphs.format_graph(g),
            "incidence": list(a),
            "lct_upper_bound": _frac(value),
            "exact_on_minimal_resolution": cls.verdict == discrepancy.LOG_RESOLUTION,
            "case": cls.case,
            "verdicts": list(cls.verdicts),
            "pairing": _frac(cls.pairing),
        }
    )


def cmd_lemma42(args):
    t = graphs.parse_dynkin(args.notation)
    comps = t.sorted_components()
    if len(comps) != 1:
        raise DynkinSyntaxError("the incidence sweep expects a single connected graph", 0)
    g = comps[0]
    n = len(g.vertices)
    rows = []
    agree = True

    def vectors(total_max):
        for total in range(1, total_max + 1):
            for cuts in itertools.combinations(range(total + n - 1), n - 1):
                prev = -1
                vec = []
                for c in cuts + (total + n - 1,):
                    vec.append(c - prev - 1)
                    prev = c
                yield tuple(vec)

    for a in vectors(args.max_a):
        data = discrepancy.pair_coefficients(g, a)
        row = {"incidence": list(a), "pairing": _frac(data.pairing)}
        if data.pairing <= 2:
            try:
                cls = discrepancy.classify_incidence(g, a)
                row["case"] = cls.case
                row["verdicts"] = list(cls.verdicts)
            except discrepancy.UnsupportedConfigurationError:
                row["verdicts"] = ["Unsupported"]
        support = [i for i, x in enumerate(a) if x]
        for v in support:
            try:
                fd = discrepancy.closed_form_f(g, a, v)
            except discrepancy.UnsupportedConfigurationError:
                continue
            agree = agree and fd == data.f[v]
        rows.append(row)
    _emit(
        {
            "notation": graphs.format_graph(g),
            "max_a": args.max_a,
            "closed_form_matches_solver": agree,
            "rows": rows,
        }
    )


def cmd_hunt(args):
    t = graphs.parse_dynkin(args.notation)
    comp, vertex, e0 = discrepancy.select_hunt_divisor(t)
    _emit(
        {
            "component": graphs.format_graph(comp),
            "vertex": vertex,
            "coefficient": _frac(e0),
        }
    )


def _parse_range(text):
    lo, _, hi = text.partition("..")
    return (int(lo), int(hi)) if hi else (int(lo), int(lo))


def cmd_table1(args):
    n_range = _parse_range(args.n)
    m_range = _parse_range(args.m)
    l_values = None if args.l == "all" else {int(x) for x in args.l.split(",")}
    seen = set()
    out = []
    for inst, t in graphs.table1_enumerate(n_range, m_range, l_values):
        key = t.canonical_key()
        if key in seen:
            continue
        seen.add(key)
        out.append(
            {
                "family": inst.family,
                "params": dict(inst.params),
                "type": graphs.format_dynkin(t),
            }
        )
    _emit({"count": len(out), "instances": out})


def cmd_pencil(args):
    p = args.char
    field = QQ if p == 0 else PrimeField(p)
    locus = pencil.pencil_singular_locus(field)
    double = pencil.quadratic_factor_double_root(field)
    data = {
        "characteristic": p,
        "singular_locus": poly_to_json(locus),
        "quadratic_factor_has_double_root": double,
        "members": [],
    }
    if p:
        f = PrimeField(p)
        # rational roots of the quadratic factor t^2 + 11st - s^2 at s = 1
        for t0 in range(p):
            if (t0 * t0 + 11 * t0 - 1) % p == 0:
                rep = pencil.classify_singular_member(f, (1, t0))
                data["members"].append(
                    {"parameter": [1, t0], "kind": rep.kind}
                )
    _emit(data)


def cmd_crossratio(args):
    quads = pencil.cross_ratio_minimal_polynomials()
    _emit(
        {
            "quadratics": [list(q) for q in quads],
            "discriminants": [pencil.quadratic_discriminant(q) for q in quads],
            "discriminant_cores": [
                pencil.squarefree_core(pencil.quadratic_discriminant(q)) for q in quads
            ],
        }
    )


def cmd_weighted_model(args):
    out = {"surface": poly_to_json(pencil.weighted_surface_equation())}
    for i in (2, 3):
        rep = pencil.weighted_member_check(i)
        out[f"member_{i}"] = {
            "equation": poly_to_json(pencil.weighted_member(i)),
            "degree_ok": rep.degree_ok,
            "cusp_support_ok": rep.cusp_support_ok,
            "smooth": rep.smooth,
        }
    _emit(out)


def cmd_verify_paper(args):
    outcomes = verify.run_checks()
    failed = [o for o in outcomes if o.status == verify.FAIL]
    if args.json:
        _emit(
            [
                {
                    "check_id": o.check_id,
                    "group": o.group,
                    "expected": o.expected,
                    "actual": o.actual,
                    "status": o.status,
                }
                for o in outcomes
            ]
        )
    else:
        for o in outcomes:
            print(f"{o.status:4s}  {o.check_id}")
            if o.status == verify.FAIL:
                print(f"      expected: {json.dumps(o.expected)}")
                print(f"      actual:   {json.dumps(o.actual)}")
        print(f"{len(outcomes) - len(failed)}/{len(outcomes)} checks passed")
    return 1 if failed else 0


def build_parser():
    parser = argparse.ArgumentParser(
        prog="ldp",
        description="Exact computations on resolution dual graphs, blowup "
        "lattices, and the associated cubic pencil.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("parse", help="parse bracket notation into components")
    p.add_argument("notation")
    p.set_defaults(fn=cmd_parse)

    p = sub.add_parser("det", help="intersection-matrix determinants")
    p.add_argument("notation")
    p.set_defaults(fn=cmd_det)

    p = sub.add_parser("report", help="full feasibility report for a configuration")
    p.add_argument("notation")
    p.set_defaults(fn=cmd_report)

    p = sub.add_parser("lct", help="log canonical threshold bound for a curve incidence")
    p.add_argument("notation")
    p.add_argument("--incidence", required=True, help="comma-separated multiplicities")
    p.set_defaults(fn=cmd_lct)

    p = sub.add_parser(
        "lemma42", help="sweep incidence vectors: classifications and closed-form check"
    )
    p.add_argument("notation")
    p.add_argument("--max-a", type=int, default=4)
    p.set_defaults(fn=cmd_lemma42)

    p = sub.add_parser("hunt", help="largest-discrepancy extraction target")
    p.add_argument("notation")
    p.set_defaults(fn=cmd_hunt)

    p = sub.add_parser("table1", help="enumerate the tabulated configurations")
    p.add_argument("--n", default="0..2")
    p.add_argument("--m", default="1..2")
    p.add_argument("--l", default="all")
    p.set_defaults(fn=cmd_table1)

    p = sub.add_parser("pencil", help="singular members of the cubic pencil")
    p.add_argument("--char", type=int, default=0, help="0 for the rationals")
    p.set_defaults(fn=cmd_pencil)

    p = sub.add_parser("crossratio", help="cross-ratio minimal polynomials")
    p.set_defaults(fn=cmd_crossratio)

    p = sub.add_parser("weighted-model", help="weighted-hypersurface member checks")
    p.set_defaults(fn=cmd_weighted_model)

    p = sub.add_parser("verify-paper", help="recompute and compare every pinned value")
    p.add_argument("--json", action="store_true")
    p.set_defaults(fn=cmd_verify_paper)

    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        code = args.fn(args)
    except DynkinSyntaxError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (
        ValueError,
        discrepancy.UnsupportedConfigurationError,
        pencil.BadCharacteristicError,
    ) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    return code or 0


if __name__ == "__main__":
    sys.exit(main())
