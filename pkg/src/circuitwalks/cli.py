"""Command line interface.

Exit codes: 0 success / walk found; 10 no walk within the depth bound;
11 node cap exceeded; 2 unreadable input; 1 failed check or bad parameters.
Every command accepts --quiet (suppress informational output) and --seed
(fix the RNG for anything sampled; the built-in commands are deterministic).
"""

from __future__ import annotations

import argparse
import sys

from .circuits import enumerate_circuits, enumerate_lifted_circuits
from .constructions import (
    ConstructionError,
    Feasible,
    PromiseViolated,
    SearchSpaceTooLarge,
    SubsetSumInstance,
    ThreeDMInstance,
    brute_force_essr,
    build_p_ell,
    build_reduction,
    classify_reduction_circuits,
    compute_gap_C,
    lift_instance,
    reduce_three_dm,
    reduction_witness_walk,
    three_dm_has_perfect_matching,
)
from .formats import InstanceFile, ParseError, read_instance, read_walk, write_instance, write_walk
from .polytope import h_to_v
from .ratgeo import format_rational
from .render import lp_document, svg_document
from .search import (
    Found,
    NodeCapExceeded,
    NotFoundWithinDepth,
    SearchConfig,
    approx_monotone_walk,
    is_valid_monotone_walk,
    shortest_monotone_walk,
)

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_PARSE = 2
EXIT_NOT_FOUND = 10
EXIT_NODE_CAP = 11


def _say(args, message: str) -> None:
    if not args.quiet:
        print(message)


def _emit(args, text: str, path: str | None) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        with open(path, "w") as fh:
            fh.write(text)
        _say(args, f"wrote {path}")


def _read_file(path: str) -> str:
    with open(path) as fh:
        return fh.read()


# -- small text format for exact-sum instances ---------------------------------


def write_essr(inst: SubsetSumInstance) -> str:
    return (
        "essr 1\n"
        f"n {inst.n}\n"
        f"a {' '.join(str(w) for w in inst.a)}\n"
        f"S {inst.S}\n"
        f"k {inst.k}\n"
    )


def read_essr(text: str) -> SubsetSumInstance:
    lines = text.splitlines()
    if len(lines) < 5 or lines[0].strip() != "essr 1":
        raise ParseError(1, "not an 'essr 1' file")
    fields = {}
    for no, line in enumerate(lines[1:5], start=2):
        parts = line.split()
        if len(parts) < 2:
            raise ParseError(no, f"expected '<key> <numbers>', got {line!r}")
        fields[parts[0]] = parts[1:]
    try:
        n = int(fields["n"][0])
        a = tuple(int(x) for x in fields["a"])
        S = int(fields["S"][0])
        k = int(fields["k"][0])
    except (KeyError, ValueError) as exc:
        raise ParseError(2, f"bad essr fields: {exc}") from None
    if len(a) != n:
        raise ParseError(3, f"'a' lists {len(a)} weights, header says {n}")
    return SubsetSumInstance(a=a, S=S, k=k)


def read_three_dm(text: str) -> ThreeDMInstance:
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if not lines or lines[0].strip() != "3dm 1":
        raise ParseError(1, "not a '3dm 1' file")
    if len(lines) < 2 or lines[1].split()[:1] != ["n"]:
        raise ParseError(2, "expected 'n <elements>'")
    n = int(lines[1].split()[1])
    triples = []
    for no, line in enumerate(lines[2:], start=3):
        parts = line.split()
        if len(parts) != 3:
            raise ParseError(no, f"expected 'i j h', got {line!r}")
        try:
            triples.append((int(parts[0]), int(parts[1]), int(parts[2])))
        except ValueError:
            raise ParseError(no, f"non-integer triple {line!r}") from None
    return ThreeDMInstance(n_elements=n, triples=tuple(triples))


# -- generation commands ---------------------------------------------------------


def cmd_gen_pell(args) -> int:
    art = build_p_ell(args.ell)
    inst = InstanceFile(
        polygon=art.h,
        cost=art.c0,
        start=art.u,
        target=art.t,
        meta=(("kind", "family"), ("ell", str(args.ell))),
    )
    _emit(args, write_instance(inst), args.output)
    return EXIT_OK


def _essr_from_args(args) -> SubsetSumInstance:
    if args.essr is not None:
        return read_essr(_read_file(args.essr))
    if args.a is None or args.S is None or args.k is None:
        raise ValueError("give --a, --S and --k, or --essr FILE")
    weights = tuple(int(x) for x in args.a.split(","))
    return SubsetSumInstance(a=weights, S=args.S, k=args.k)


def cmd_gen_reduction(args) -> int:
    inst = _essr_from_args(args)
    if args.auto_C:
        C = compute_gap_C(args.eps_inv, inst.n, inst.k)
        _say(args, f"auto gap constant: C = {C}")
    elif args.C is not None:
        C = args.C
    else:
        raise ValueError("give --C or --auto-C")
    red = build_reduction(inst, C)
    meta = [
        ("kind", "reduction"),
        ("a", ",".join(str(w) for w in inst.a)),
        ("S", str(inst.S)),
        ("k", str(inst.k)),
        ("C", str(C)),
        ("epsilon", format_rational(red.epsilon)),
    ]
    try:
        outcome = brute_force_essr(inst, r_bound=inst.S)
    except SearchSpaceTooLarge:
        outcome = None
    if isinstance(outcome, PromiseViolated):
        print(
            f"warning: promise violated by multiplicities {outcome.r}; "
            "the distance gap is not guaranteed",
            file=sys.stderr,
        )
        meta.append(("promise", f"violated {','.join(str(m) for m in outcome.r)}"))
    out = InstanceFile(
        polygon=red.h, cost=red.c, start=red.s, target=red.t, meta=tuple(meta)
    )
    _emit(args, write_instance(out), args.output)
    return EXIT_OK


def cmd_gen_3dm(args) -> int:
    inst = read_three_dm(_read_file(args.input))
    essr = reduce_three_dm(inst)
    _emit(args, write_essr(essr), args.output)
    return EXIT_OK


# -- solving commands -------------------------------------------------------------


def cmd_solve(args) -> int:
    inst = read_instance(_read_file(args.instance))
    cfg = SearchConfig(max_depth=args.max_depth, node_cap=args.node_cap)
    result = shortest_monotone_walk(inst.polygon, inst.start, inst.cost, cfg)
    if isinstance(result, Found):
        walk = result.walk
        _say(args, f"found a monotone walk of length {walk.length}")
        if args.output:
            _emit(args, write_walk(walk), args.output)
        return EXIT_OK
    if isinstance(result, NodeCapExceeded):
        _say(args, f"gave up after discovering {result.discovered} states")
        return EXIT_NODE_CAP
    _say(args, f"no monotone walk of at most {result.depth} steps reaches the optimum")
    return EXIT_NOT_FOUND


def cmd_approx(args) -> int:
    inst = read_instance(_read_file(args.instance))
    walk = approx_monotone_walk(
        inst.polygon, inst.start, inst.cost, args.depth, node_cap=args.node_cap
    )
    _say(args, f"walk of length {walk.length} reaches the optimum")
    if args.output:
        _emit(args, write_walk(walk), args.output)
    return EXIT_OK


# -- verification -----------------------------------------------------------------


class _Report:
    def __init__(self, quiet: bool):
        self.quiet = quiet
        self.failures = 0

    def check(self, ok: bool, label: str) -> bool:
        if not ok:
            self.failures += 1
            print(f"[FAIL] {label}")
        elif not self.quiet:
            print(f"[ok]   {label}")
        return ok

    def info(self, label: str) -> None:
        if not self.quiet:
            print(f"[info] {label}")

    @property
    def exit_code(self) -> int:
        return EXIT_OK if self.failures == 0 else EXIT_FAIL


def _verify_certificate(args, rep: _Report) -> None:
    inst = read_instance(_read_file(args.instance))
    walk = read_walk(_read_file(args.certificate))
    rep.check(walk.start == inst.start, "walk starts at the instance start point")
    result = is_valid_monotone_walk(inst.polygon, inst.cost, walk)
    rep.check(
        bool(result),
        "walk is a valid monotone circuit walk"
        + ("" if result else f" ({result.reason}, step {result.step})"),
    )
    if inst.target is not None:
        rep.check(walk.end == inst.target, "walk ends at the instance target")
    rep.info(f"walk length {walk.length}")


def _verify_pell(args, rep: _Report) -> None:
    ell = args.ell
    art = build_p_ell(ell)
    rep.check(art.h.m == 2 * ell + 1, f"level {ell}: polygon has {2 * ell + 1} rows")
    bound = (8 * ell + 1) ** ell
    rep.check(
        max(abs(e) for row in art.h.rows for e in row) <= bound,
        f"level {ell}: row entries bounded by (8*ell+1)**ell = {bound}",
    )
    ring = art.v.vertices
    pos = {v: i for i, v in enumerate(ring)}
    gap = abs(pos[art.u] - pos[art.w])
    rep.check(gap in (1, len(ring) - 1), "outer vertices u and w are adjacent")
    rep.check(
        all(v.x > 0 and -1 < v.y < 1 for v in ring if v not in (art.u, art.w)),
        "all other vertices lie strictly inside the unit strip",
    )
    if ell > 5:
        rep.info(f"skipping distance search at level {ell} (desk scale is <= 5)")
        return
    for name, start in (("u", art.u), ("w", art.w)):
        found = shortest_monotone_walk(art.h, start, art.c0, SearchConfig(ell))
        rep.check(
            isinstance(found, Found) and found.walk.length == ell,
            f"level {ell}: shortest monotone walk from {name} has exactly {ell} steps",
        )
        below = shortest_monotone_walk(art.h, start, art.c0, SearchConfig(ell - 1))
        rep.check(
            isinstance(below, NotFoundWithinDepth),
            f"level {ell}: no walk from {name} with {ell - 1} steps",
        )


def _verify_reduction(args, rep: _Report) -> None:
    inst = SubsetSumInstance(
        a=tuple(int(x) for x in args.a.split(",")), S=args.S, k=args.k
    )
    red = build_reduction(inst, args.C)
    ck = red.ck
    rep.check(
        len(red.v.vertices) == inst.n + 2 * ck + 4,
        f"vertex census is n + 2Ck + 4 = {inst.n + 2 * ck + 4}",
    )
    groups = classify_reduction_circuits(red)
    rep.check(
        {name: len(g) for name, g in groups.items()}
        == {"frame": 2, "element": inst.n, "corner": 2 * ck},
        "circuit classes: 2 frame, n element, 2Ck corner directions",
    )
    rep.check(0 < red.epsilon < red.corner.box / 2, "epsilon sits inside (0, box/2)")
    try:
        outcome = brute_force_essr(inst, r_bound=inst.S)
    except SearchSpaceTooLarge:
        rep.info("instance too large to brute force; skipping the distance check")
        return
    if isinstance(outcome, PromiseViolated):
        rep.check(False, f"promise violated by {outcome.r}")
        return
    if isinstance(outcome, Feasible):
        walk = reduction_witness_walk(red, outcome.r)
        rep.check(
            bool(is_valid_monotone_walk(red.h, red.c, walk)),
            "witness walk is a valid monotone circuit walk",
        )
        rep.check(walk.length == 2 * inst.k, "witness walk has 2k steps")
        rep.check(walk.end == red.t, "witness walk ends at t")
        if 2 * inst.k <= 4:
            found = shortest_monotone_walk(red.h, red.s, red.c, SearchConfig(2 * inst.k))
            rep.check(
                isinstance(found, Found) and found.walk.length <= 2 * inst.k,
                "search confirms distance at most 2k",
            )
    else:
        if ck <= 4:
            result = shortest_monotone_walk(red.h, red.s, red.c, SearchConfig(ck))
            rep.check(
                isinstance(result, NotFoundWithinDepth),
                f"completed search proves distance exceeds Ck = {ck}",
            )
        else:
            rep.info(f"Ck = {ck} beyond desk scale; skipping the exhaustive search")


def _verify_lift(args, rep: _Report) -> None:
    ell, d = args.ell, args.d
    art = build_p_ell(min(ell, 3))
    if ell > 3:
        rep.info("lift suite caps the family level at 3 for runtime")
    lp, s_d, c_d = lift_instance(art.h, art.u, art.c0, d)
    rep.check(lp.dim == d, f"lifted polytope lives in dimension {d}")
    true_facets = art.h.m + (d - 2) + 1 if d > 2 else art.h.m
    rep.check(lp.facet_count == true_facets, f"product has {true_facets} facets")
    rep.info(
        "the naive facet count m + d - 2 undercounts the product by one "
        "(the simplex sum row is a facet too)"
    )
    n_circ = len(enumerate_lifted_circuits(lp))
    expected = len(enumerate_circuits(art.h)) + (d - 2) + (d - 2) * (d - 3) // 2
    rep.check(n_circ == expected, f"lift has {expected} circuit classes")
    base = shortest_monotone_walk(art.h, art.u, art.c0, SearchConfig(art.ell))
    lifted = shortest_monotone_walk(lp, s_d, c_d, SearchConfig(art.ell))
    rep.check(
        isinstance(base, Found)
        and isinstance(lifted, Found)
        and base.walk.length == lifted.walk.length,
        "lifted walk distance equals the planar distance",
    )
    if isinstance(base, Found) and isinstance(lifted, Found):
        rep.check(
            all(
                circ.kind == "base" and circ.g == g
                for circ, g in zip(lifted.walk.steps, base.walk.steps)
            ),
            "lifted shortest walk projects step-for-step onto the planar one",
        )


def _verify_3dm(args, rep: _Report) -> None:
    n = 2
    universe = [(i, j, h) for i in range(n) for j in range(n) for h in range(n)]
    import itertools

    agree = 0
    total = 0
    for size in range(n, 6):
        for chosen in itertools.combinations(universe, size):
            inst = ThreeDMInstance(n_elements=n, triples=chosen)
            essr = reduce_three_dm(inst)
            outcome = brute_force_essr(essr, r_bound=n)
            if isinstance(outcome, PromiseViolated):
                rep.check(False, f"promise violated for triples {chosen}")
                return
            matching = three_dm_has_perfect_matching(inst)
            total += 1
            if matching == isinstance(outcome, Feasible):
                agree += 1
    rep.check(
        agree == total,
        f"matching existence agrees with exact-sum feasibility on {total} instances",
    )


def cmd_verify(args) -> int:
    rep = _Report(args.quiet)
    if args.certificate is not None:
        if args.instance is None:
            raise ValueError("--certificate needs an instance file")
        _verify_certificate(args, rep)
        return rep.exit_code
    if args.suite is None:
        raise ValueError("give an instance with --certificate, or --suite")
    suites = {
        "pell": _verify_pell,
        "reduction": _verify_reduction,
        "lift": _verify_lift,
        "3dm": _verify_3dm,
    }
    names = list(suites) if args.suite == "all" else [args.suite]
    for name in names:
        rep.info(f"suite: {name}")
        suites[name](args, rep)
    if not args.quiet or rep.failures:
        print(f"{'FAILED' if rep.failures else 'passed'}: {rep.failures} failures")
    return rep.exit_code


# -- export -------------------------------------------------------------------------


def cmd_render_svg(args) -> int:
    inst = read_instance(_read_file(args.instance))
    walk = read_walk(_read_file(args.certificate)) if args.certificate else None
    _emit(args, svg_document(inst, walk), args.output)
    return EXIT_OK


def cmd_export_lp(args) -> int:
    inst = read_instance(_read_file(args.instance))
    _emit(args, lp_document(inst), args.output)
    return EXIT_OK


# -- parser -------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="circuitwalks",
        description="exact monotone circuit walks on polygons: generate, search, verify",
    )
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--quiet", action="store_true", help="suppress chatter")
    common.add_argument("--seed", type=int, default=None, help="RNG seed for sampling")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen-pell", parents=[common], help="emit a family polygon instance")
    p.add_argument("--ell", type=int, required=True, help="recursion level (>= 1)")
    p.add_argument("-o", "--output", default=None)
    p.set_defaults(func=cmd_gen_pell)

    p = sub.add_parser(
        "gen-reduction", parents=[common], help="emit a separation polygon instance"
    )
    p.add_argument("--a", default=None, help="comma-separated weights, e.g. 2,3")
    p.add_argument("--S", type=int, default=None, help="target sum")
    p.add_argument("--k", type=int, default=None, help="cardinality")
    p.add_argument("--essr", default=None, help="read the exact-sum instance from a file")
    p.add_argument("--C", type=int, default=None, help="gap constant")
    p.add_argument("--auto-C", action="store_true", help="derive C from --eps-inv")
    p.add_argument("--eps-inv", type=int, default=2, help="inverse exponent for --auto-C")
    p.add_argument("-o", "--output", default=None)
    p.set_defaults(func=cmd_gen_reduction)

    p = sub.add_parser(
        "gen-3dm", parents=[common], help="reduce a matching instance to exact-sum"
    )
    p.add_argument("input", help="'3dm 1' file: n line, then one 'i j h' triple per line")
    p.add_argument("-o", "--output", default=None)
    p.set_defaults(func=cmd_gen_3dm)

    p = sub.add_parser("solve", parents=[common], help="exact shortest monotone walk")
    p.add_argument("instance")
    p.add_argument("--max-depth", type=int, required=True)
    p.add_argument("--node-cap", type=int, default=10_000_000)
    p.add_argument("-o", "--output", default=None, help="write the walk certificate here")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("approx", parents=[common], help="bounded search plus edge-walk fallback")
    p.add_argument("instance")
    p.add_argument("--depth", type=int, required=True, help="exhaustive search depth")
    p.add_argument("--node-cap", type=int, default=10_000_000)
    p.add_argument("-o", "--output", default=None)
    p.set_defaults(func=cmd_approx)

    p = sub.add_parser("verify", parents=[common], help="check certificates or run suites")
    p.add_argument("instance", nargs="?", default=None)
    p.add_argument("--certificate", default=None, help="walk file to validate")
    p.add_argument(
        "--suite", choices=["pell", "reduction", "lift", "3dm", "all"], default=None
    )
    p.add_argument("--ell", type=int, default=3)
    p.add_argument("--a", default="2,3")
    p.add_argument("--S", type=int, default=5)
    p.add_argument("--k", type=int, default=2)
    p.add_argument("--C", type=int, default=2)
    p.add_argument("--d", type=int, default=3)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("render-svg", parents=[common], help="draw an instance (and walk)")
    p.add_argument("instance")
    p.add_argument("--certificate", default=None)
    p.add_argument("-o", "--output", default=None)
    p.set_defaults(func=cmd_render_svg)

    p = sub.add_parser("export-lp", parents=[common], help="CPLEX LP text of an instance")
    p.add_argument("instance")
    p.add_argument("-o", "--output", default=None)
    p.set_defaults(func=cmd_export_lp)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except (ValueError, OSError, RuntimeError, ConstructionError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
