"""Command-line surface.

Exit codes: 0 success, 1 verification counterexample, 2 parse error,
3 precondition violation, 4 enumeration size limit.
"""

from __future__ import annotations

import argparse
import sys

from .errors import (
    ConditionKRequired,
    InvalidPath,
    NotAMaximalTail,
    NotSaturatedHereditary,
    ParseError,
    SizeLimitExceeded,
    UnknownVertex,
    VerificationFailure,
)
from .gcg import emit_gcg, parse_graph
from .generators import ea_graph, random_condition_k_graph, random_graph, running_example
from .graph_core import (
    DEFAULT_ENUMERATION_LIMIT,
    OMEGA,
    Graph,
    classify_vertices,
    condition_K,
    condition_L,
    has_csp,
    is_downward_directed,
)
from .ideals import (
    AdmissiblePair,
    admissible_pair,
    admissible_pairs,
    classify_ideal,
    classify_via_quotient,
    quotient_graph,
    saturated_hereditary_sets,
)
from .render import (
    emit_dot,
    emit_json,
    graph_payload,
    pair_payload,
    quotient_payload,
)
from .tails import (
    BoundaryPath,
    clusters,
    finite_return_vertices,
    maximal_tails,
    mt_report,
    realize_as_tail,
    tail_of_boundary,
)
from .topology import (
    ClusterPoint,
    check_kuratowski,
    graph_closure,
    h_map,
    ideal_closure,
    prim_points,
    prim_space,
    prim_spec_density_check,
    separation_report,
    spec_points,
    spec_space,
    verify_homeomorphism,
)

EXIT_OK = 0
EXIT_COUNTEREXAMPLE = 1
EXIT_PARSE = 2
EXIT_PRECONDITION = 3
EXIT_SIZE = 4


def _load(path: str) -> Graph:
    if path == "-":
        return parse_graph(sys.stdin.read())
    with open(path, "r", encoding="utf-8") as fh:
        return parse_graph(fh.read())


def _fmt_set(g: Graph, members) -> str:
    return "{" + ", ".join(g.sorted_set(members)) + "}"


def _fmt_pair(g: Graph, pair: AdmissiblePair) -> str:
    return f"(H={_fmt_set(g, pair.h)}, S={_fmt_set(g, pair.s)})"


def _fmt_path(path: BoundaryPath) -> str:
    def hops(bundles):
        return "".join(f" -{b.label or ''}-> {b.dst}" for b in bundles)

    text = path.base + hops(path.prefix)
    if path.cycle:
        text += " (" + path.cycle[0].src + hops(path.cycle) + " repeating)"
    return text


def _point_names(g: Graph, pts) -> dict:
    names = {}
    counter = 0
    for p in pts:
        if isinstance(p, ClusterPoint):
            counter += 1
            names[p] = f"T{counter}"
        else:
            names[p] = f"FR:{p.vertex}"
    return names


def _parse_points(g: Graph, pts, spec: str) -> frozenset:
    names = _point_names(g, pts)
    by_name = {v: k for k, v in names.items()}
    chosen = []
    if spec:
        for token in spec.split(","):
            token = token.strip()
            if token not in by_name:
                known = ", ".join(names[p] for p in pts)
                raise UnknownVertex(f"unknown point {token!r}; points are: {known}")
            chosen.append(by_name[token])
    return frozenset(chosen)


def _comma_set(text: str) -> frozenset:
    return frozenset(t.strip() for t in text.split(",") if t.strip())


# -- subcommands ----------------------------------------------------------------


def cmd_check(args) -> int:
    g = _load(args.path)
    kinds = classify_vertices(g)
    k = condition_K(g)
    l = condition_L(g)
    dd = is_downward_directed(g, g.vertices)
    _, csp = has_csp(g, g.vertices)
    if args.json:
        payload = {
            "schema": "ck-spectra/check/1",
            "vertices": len(g.vertices),
            "sinks": list(g.sorted_set(kinds.sinks)),
            "infinite_emitters": list(g.sorted_set(kinds.infinite_emitters)),
            "regular": list(g.sorted_set(kinds.regular)),
            "condition_k": k.holds,
            "condition_k_witness": k.witness,
            "condition_l": l.holds,
            "condition_l_witness": list(l.witness) if l.witness else None,
            "downward_directed": dd.holds,
            "downward_directed_witness": list(dd.witness) if dd.witness else None,
            "csp_witness": list(g.sorted_set(csp)),
        }
        sys.stdout.write(emit_json(payload))
        return EXIT_OK
    print(f"vertices: {len(g.vertices)}")
    print(f"sinks: {_fmt_set(g, kinds.sinks)}")
    print(f"infinite emitters: {_fmt_set(g, kinds.infinite_emitters)}")
    print(f"regular: {_fmt_set(g, kinds.regular)}")
    if k:
        print("condition K: yes")
    else:
        print(f"condition K: no (vertex {k.witness} has exactly one simple cycle)")
    if l:
        print("condition L: yes")
    else:
        print(f"condition L: no (exitless cycle through {', '.join(l.witness)})")
    if dd:
        print("downward directed: yes")
    else:
        u, v = dd.witness
        print(f"downward directed: no (no common vertex below {u} and {v})")
    print(f"csp witness: {_fmt_set(g, csp)}")
    return EXIT_OK


def cmd_tails(args) -> int:
    g = _load(args.path)
    tails = maximal_tails(g, args.limit)
    clus = clusters(g, args.limit)
    fr = finite_return_vertices(g)
    if args.json:
        payload = {
            "schema": "ck-spectra/tails/1",
            "maximal_tails": [list(g.sorted_set(t)) for t in tails],
            "clusters": [list(g.sorted_set(c)) for c in clus],
            "clusters_equal_tails": tails == clus,
            "finite_return_vertices": list(g.sorted_set(fr)),
        }
        sys.stdout.write(emit_json(payload))
        return EXIT_OK
    print(f"maximal tails ({len(tails)}):")
    for i, t in enumerate(tails, 1):
        rep = mt_report(g, t)
        flags = " ".join(
            f"{name}={'yes' if ok else 'no'}"
            for name, ok in [("mt1", rep.mt1), ("mt2", rep.mt2), ("mt3", rep.mt3), ("mt4", rep.mt4)]
        )
        print(f"  T{i} = {_fmt_set(g, t)}  [{flags}]")
        print(f"       realized by: {_fmt_path(realize_as_tail(g, t))}")
    print(f"clusters match maximal tails: {'yes' if tails == clus else 'no'}")
    print(f"finite-return vertices: {_fmt_set(g, fr)}")
    return EXIT_OK


def cmd_ideals(args) -> int:
    g = _load(args.path)
    sh = saturated_hereditary_sets(g, args.limit)
    pairs = admissible_pairs(g, args.limit)
    rows = []
    for pair in pairs:
        direct = classify_ideal(g, pair)
        quotient = classify_via_quotient(g, pair)
        rows.append((pair, direct, quotient))
    if args.json:
        payload = {
            "schema": "ck-spectra/ideals/1",
            "saturated_hereditary_sets": [list(g.sorted_set(h)) for h in sh],
            "pairs": [
                {
                    **pair_payload(g, pair),
                    "class": direct.kind.value,
                    "v0": direct.v0,
                    "quotient_route_agrees": direct == quotient,
                }
                for pair, direct, quotient in rows
            ],
        }
        sys.stdout.write(emit_json(payload))
        return EXIT_OK
    print(f"saturated hereditary sets: {len(sh)}")
    print(f"admissible pairs: {len(pairs)}")
    for pair, direct, quotient in rows:
        agree = "agree" if direct == quotient else "DISAGREE"
        print(f"  {_fmt_pair(g, pair)} -> {direct.describe()} [{agree}]")
    prime = sum(1 for _, d, _q in rows if d.is_prime)
    print(f"prime ideals: {prime}")
    return EXIT_OK


def cmd_quotient(args) -> int:
    g = _load(args.path)
    pair = admissible_pair(g, _comma_set(args.H), _comma_set(args.S))
    q = quotient_graph(g, pair)
    if args.json:
        sys.stdout.write(emit_json(quotient_payload(q)))
    elif args.dot:
        sys.stdout.write(emit_dot(q))
    else:
        sys.stdout.write(emit_gcg(q.graph))
        for v in sorted(q.primed):
            print(f"# sink copy: {q.primed[v]} = {v}'")
    return EXIT_OK


def _space_listing(g: Graph, pts, which: str, json_mode: bool) -> int:
    names = _point_names(g, pts)
    sep = separation_report(
        spec_space(g) if which == "spec" else prim_space(g)
    )
    closure_of = {p: graph_closure(g, frozenset((p,)), ambient=pts) for p in pts}
    ideal_of = {p: h_map(g, p) for p in pts}
    if json_mode:
        payload = {
            "schema": f"ck-spectra/{which}/1",
            "points": [
                {
                    "name": names[p],
                    "kind": "cluster" if isinstance(p, ClusterPoint) else "finite-return",
                    "vertices": list(g.sorted_set(p.members))
                    if isinstance(p, ClusterPoint)
                    else [p.vertex],
                    "ideal": pair_payload(g, ideal_of[p]),
                    "closure": sorted(names[q] for q in closure_of[p]),
                }
                for p in pts
            ],
            "specialization": [
                [names[p], names[q]] for p, q in sep.specialization if p != q
            ],
            "non_closed_singletons": [names[p] for p in sep.non_closed_singletons],
            "t0": sep.t0,
            "t1": sep.t1,
            "hausdorff": sep.hausdorff,
        }
        sys.stdout.write(emit_json(payload))
        return EXIT_OK
    print(f"points ({len(pts)}):")
    for p in pts:
        print(f"  {names[p]} = {p.label(g)}")
        print(f"       ideal: {_fmt_pair(g, ideal_of[p])}")
        print(f"       closure: {{{', '.join(sorted(names[q] for q in closure_of[p]))}}}")
    arrows = [(p, q) for p, q in sep.specialization if p != q]
    print("specialization (p -> q means q lies in the closure of {p}):")
    for p, q in arrows:
        print(f"  {names[p]} -> {names[q]}")
    print(f"non-closed singletons: {', '.join(names[p] for p in sep.non_closed_singletons) or '(none)'}")
    print(f"T0: {'yes' if sep.t0 else 'no'}")
    print(f"T1: {'yes' if sep.t1 else 'no'}")
    print(f"Hausdorff: {'yes' if sep.hausdorff else 'no'}")
    return EXIT_OK


def cmd_spec(args) -> int:
    g = _load(args.path)
    return _space_listing(g, tuple(spec_points(g, args.limit)), "spec", args.json)


def cmd_prim(args) -> int:
    g = _load(args.path)
    return _space_listing(g, tuple(prim_points(g, args.limit)), "prim", args.json)


def cmd_closure(args) -> int:
    g = _load(args.path)
    pts = tuple(spec_points(g, args.limit)) if args.space == "spec" else tuple(
        prim_points(g, args.limit)
    )
    names = _point_names(g, pts)
    xs = _parse_points(g, pts, args.points)
    left = graph_closure(g, xs, ambient=pts)
    right = ideal_closure(g, pts, xs)
    if args.json:
        payload = {
            "schema": "ck-spectra/closure/1",
            "space": args.space,
            "input": sorted(names[p] for p in xs),
            "graph_side": sorted(names[p] for p in left),
            "ideal_side": sorted(names[p] for p in right),
            "agree": left == right,
        }
        sys.stdout.write(emit_json(payload))
        return EXIT_OK if left == right else EXIT_COUNTEREXAMPLE
    print(f"input points: {', '.join(sorted(names[p] for p in xs)) or '(none)'}")
    print(f"graph-side closure ({len(left)}): {', '.join(sorted(names[p] for p in left)) or '(none)'}")
    print(f"ideal-side closure ({len(right)}): {', '.join(sorted(names[p] for p in right)) or '(none)'}")
    print(f"agreement: {'yes' if left == right else 'NO'}")
    return EXIT_OK if left == right else EXIT_COUNTEREXAMPLE


def cmd_verify(args) -> int:
    g = _load(args.path)
    hom = verify_homeomorphism(g, args.exhaustive_limit, limit=args.limit, seed=args.seed)
    print(
        f"homeomorphism: ok (points={hom.points}, prime pairs={hom.prime_pairs}, "
        f"spec subsets={hom.spec_subsets_checked}, prim subsets={hom.prim_subsets_checked})"
    )
    for which, build in (("spec", spec_space), ("prim", prim_space)):
        for side in ("graph", "ideal"):
            rep = check_kuratowski(build(g, side, args.limit), args.exhaustive_limit, seed=args.seed)
            if not rep.ok:
                raise VerificationFailure(
                    f"kuratowski axioms fail for {which}/{side}: {rep.failures[0]}",
                    rep.failures,
                )
            print(
                f"kuratowski {which}/{side}: ok (subsets={rep.subsets_checked}, "
                f"union pairs={rep.union_pairs_checked})"
            )
    dens = prim_spec_density_check(g, args.limit)
    print(f"primitive = prime points: ok ({dens.prim_point_count} points)")

    tails = maximal_tails(g, args.limit)
    if tails != clusters(g, args.limit):
        raise VerificationFailure("maximal tails differ from clusters", tails)
    print(f"tails equal clusters: ok ({len(tails)})")

    disagreements = []
    for pair in admissible_pairs(g, args.limit):
        if classify_ideal(g, pair) != classify_via_quotient(g, pair):
            disagreements.append(pair)
    if disagreements:
        raise VerificationFailure(
            "classification routes disagree", disagreements[0]
        )
    print("classification agreement: ok")

    for t in tails:
        path = realize_as_tail(g, t)
        if tail_of_boundary(g, path) != t:
            raise VerificationFailure("realization does not round-trip", t)
    print("tail realization round-trip: ok")

    bad = [
        pair
        for pair in admissible_pairs(g, args.limit)
        if not condition_L(quotient_graph(g, pair).graph)
    ]
    if condition_K(g) and bad:
        raise VerificationFailure("a quotient of a Condition-(K) graph violates (L)", bad[0])
    print("quotients satisfy condition L: ok")
    print("all checks passed")
    return EXIT_OK


def cmd_gen(args) -> int:
    if args.kind == "fixture":
        g = running_example().graph
    elif args.kind == "ea":
        mult = OMEGA if args.mult == "inf" else int(args.mult)
        g = ea_graph(_comma_set(args.set), mult)
    else:
        if args.allow_non_k:
            g = random_graph(args.seed, args.n, args.density, args.omega_prob)
        else:
            g = random_condition_k_graph(args.seed, args.n, args.density, args.omega_prob)
    sys.stdout.write(emit_gcg(g))
    return EXIT_OK


def cmd_export(args) -> int:
    g = _load(args.path)
    if args.dot:
        sys.stdout.write(emit_dot(g))
    else:
        sys.stdout.write(emit_json(graph_payload(g)))
    return EXIT_OK


# -- argument plumbing -----------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ck-spectra",
        description="Ideal lattices and prime/primitive spectra of graph algebras under Condition (K).",
    )
    from . import __version__

    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, fn, help_text, with_path=True):
        p = sub.add_parser(name, help=help_text)
        if with_path:
            p.add_argument("path", help="input .gcg file, or - for stdin")
        p.add_argument(
            "--limit",
            type=int,
            default=DEFAULT_ENUMERATION_LIMIT,
            help="vertex cap for exhaustive enumerations",
        )
        p.set_defaults(func=fn)
        return p

    p = add("check", cmd_check, "structural predicates and vertex classes")
    p.add_argument("--json", action="store_true")

    p = add("tails", cmd_tails, "maximal tails, clusters and finite-return vertices")
    p.add_argument("--json", action="store_true")

    p = add("ideals", cmd_ideals, "admissible pairs with their classification")
    p.add_argument("--json", action="store_true")

    p = add("quotient", cmd_quotient, "quotient graph of an admissible pair")
    p.add_argument("--H", default="", help="comma-separated saturated hereditary set")
    p.add_argument("--S", default="", help="comma-separated kept breaking vertices")
    p.add_argument("--json", action="store_true")
    p.add_argument("--dot", action="store_true")

    p = add("spec", cmd_spec, "prime spectrum with its topology")
    p.add_argument("--json", action="store_true")

    p = add("prim", cmd_prim, "primitive ideal space with its topology")
    p.add_argument("--json", action="store_true")

    p = add("closure", cmd_closure, "closure of a point set along both routes")
    p.add_argument("--points", default="", help="comma-separated point names (T1, FR:v, ...)")
    p.add_argument("--space", choices=("spec", "prim"), default="spec")
    p.add_argument("--json", action="store_true")

    p = add("verify", cmd_verify, "run the full property suite on one graph")
    p.add_argument("--exhaustive-limit", type=int, default=12)
    p.add_argument("--seed", type=int, default=0)

    p = sub.add_parser("gen", help="emit a generated graph as .gcg")
    gen_sub = p.add_subparsers(dest="kind", required=True)
    pf = gen_sub.add_parser("fixture", help="the seven-vertex reference example")
    pf.set_defaults(func=cmd_gen, kind="fixture")
    pe = gen_sub.add_parser("ea", help="subset graph on a ground set")
    pe.add_argument("--set", required=True, help="comma-separated ground elements")
    pe.add_argument("--mult", default="1", help="bundle multiplicity (count or inf)")
    pe.set_defaults(func=cmd_gen, kind="ea")
    pr = gen_sub.add_parser("random", help="seeded random Condition-(K) graph")
    pr.add_argument("--seed", type=int, required=True)
    pr.add_argument("--n", type=int, required=True)
    pr.add_argument("--density", type=float, default=0.3)
    pr.add_argument("--omega-prob", type=float, default=0.25)
    pr.add_argument("--allow-non-k", action="store_true", help="skip the repair pass")
    pr.set_defaults(func=cmd_gen, kind="random")

    p = add("export", cmd_export, "emit a parsed graph as JSON or DOT")
    p.add_argument("--json", action="store_true")
    p.add_argument("--dot", action="store_true")

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ParseError as err:
        print(f"parse error: {err}", file=sys.stderr)
        return EXIT_PARSE
    except SizeLimitExceeded as err:
        print(f"size limit: {err}", file=sys.stderr)
        return EXIT_SIZE
    except VerificationFailure as err:
        print(f"verification counterexample: {err}", file=sys.stderr)
        return EXIT_COUNTEREXAMPLE
    except (
        ConditionKRequired,
        UnknownVertex,
        NotSaturatedHereditary,
        NotAMaximalTail,
        InvalidPath,
    ) as err:
        print(f"precondition violation: {err}", file=sys.stderr)
        return EXIT_PRECONDITION
    except OSError as err:
        print(f"i/o error: {err}", file=sys.stderr)
        return EXIT_PRECONDITION


if __name__ == "__main__":
    sys.exit(main())
