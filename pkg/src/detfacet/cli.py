"""Command-line front end: ``detfacet analyze | generate | verify``.

Exit codes: 0 success, 1 input error, 2 formula/oracle or Groebner/closedness
mismatch (analyze) or a failed identity check (verify).
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from typing import Optional

from .complexes import (
    DEFAULT_MAX_NODES,
    ComplexError,
    GraphUndefinedError,
    PureComplex,
    clique_decomposition,
    complex_graph,
    construct_from_graph,
    degree_bound_check,
    find_closed_labeling,
    is_closed,
    load_complex,
    load_graph,
    relabel,
    save_complex,
    validate,
    clique_intersection_bound,
)
from .groebner import Budget, BudgetExceeded, Ideal, groebner_basis, is_groebner_basis
from .invariants import (
    hilbert_series_closed,
    minor_algebra_dimension,
    monomial_hilbert_data,
    tpoly_str,
)
from .minors import (
    LocalizationSpec,
    facet_ideal_generators,
    facet_minor,
    three_term_minor_residual,
    localize_generators,
)
from .polyring import MatrixShape, PolyRing
from .primality import primality_verdict

SCHEMA = 1


def _skipped(reason: str) -> str:
    return f"skipped: {reason}"


def _hilbert_json(data) -> dict:
    out = data.to_json()
    out["numerator_text"] = tpoly_str(data.numerator)
    return out


def analyze_report(cx: PureComplex, gb: bool = False, oracle: bool = False,
                   max_nodes: int = DEFAULT_MAX_NODES, seed: int = 0, budget: Budget = None) -> dict:
    """Build the analysis report for ``cx``; pure and deterministic.

    The returned dict carries a ``mismatches`` list; a nonempty list means the
    process should exit with status 2.
    """
    budget = budget or Budget()
    m, n = cx.m, cx.n
    report: dict = {"schema": SCHEMA, "seed": seed, "input": cx.to_json()}
    mismatches = []

    dec = clique_decomposition(cx)
    report["cliques"] = [list(W) for W in dec.cliques]
    report["clique_sizes"] = list(dec.sizes)

    search = find_closed_labeling(cx, max_nodes)
    report["closed_labeling"] = {
        "status": search.status(),
        "labeling": list(search.labeling.perm) if search.found else _skipped(search.status()),
        "relabeled_facets": (
            [list(F) for F in relabel(cx, search.labeling).facets] if search.found else _skipped(search.status())
        ),
        "identity_closed": is_closed(cx),
    }

    try:
        G = complex_graph(cx, dec)
        report["complex_graph"] = G.to_json()
        report["degree_bound"] = degree_bound_check(cx, dec)
    except GraphUndefinedError as exc:
        report["complex_graph"] = {"undefined": str(exc), "witness": exc.witness.to_json()}
        report["degree_bound"] = _skipped("clique graph undefined")

    holds, witness = clique_intersection_bound(cx, dec)
    report["intersection_bound"] = {
        "holds": holds,
        "witness": witness.to_json() if witness else _skipped("condition holds"),
    }

    # closed forms only apply to closed complexes
    inv: dict = {}
    formula = None
    if search.found:
        formula = hilbert_series_closed(dec, m, n)
        inv["formula"] = _hilbert_json(formula)
        inv["formula"]["minor_algebra_dimension"] = minor_algebra_dimension(dec, m)
        inv["formula"]["cohen_macaulay"] = "true by theorem for closed complexes; not computed"
    elif search.exhausted:
        inv["formula"] = _skipped("complex is not closed")
    else:
        inv["formula"] = _skipped("closedness unknown within labeling budget")

    work = relabel(cx, search.labeling) if search.found else cx
    ring = PolyRing.generic(m, n)
    reduced = None
    if gb or oracle:
        try:
            reduced = groebner_basis(Ideal(ring, facet_ideal_generators(work, ring)), budget)
        except BudgetExceeded as exc:
            reduced = str(exc)

    if not oracle:
        inv["oracle"] = _skipped("pass --oracle")
    elif isinstance(reduced, str):
        inv["oracle"] = _skipped(f"Groebner budget exceeded ({reduced})")
    else:
        data = monomial_hilbert_data([g.lm for g in reduced.elements], ring.nvars)
        inv["oracle"] = _hilbert_json(data)
        if formula is not None and data != formula:
            mismatches.append("closed-form Hilbert data differs from the initial-ideal oracle")
            inv["MISMATCH"] = True
    report["invariants"] = inv

    if not gb:
        report["groebner"] = _skipped("pass --gb")
    else:
        gbr: dict = {}
        try:
            gens = facet_ideal_generators(cx, ring)
            as_given = is_groebner_basis(gens, budget)
            gbr["input_generators_form_basis"] = as_given
            identity_closed = report["closed_labeling"]["identity_closed"]
            gbr["agrees_with_closedness"] = as_given == identity_closed
            if as_given != identity_closed:
                mismatches.append("Groebner criterion disagrees with closedness of the input labeling")
                gbr["MISMATCH"] = True
        except BudgetExceeded as exc:
            gbr["input_generators_form_basis"] = _skipped(f"budget exceeded ({exc})")
        if isinstance(reduced, str):
            gbr["reduced_basis"] = _skipped(f"budget exceeded ({reduced})")
        else:
            gbr["reduced_basis_of"] = "relabeled complex" if search.found else "input complex"
            gbr["reduced_basis"] = reduced.lines()
            gbr["pairs_processed"] = reduced.pairs_processed
        report["groebner"] = gbr

    verdict = primality_verdict(cx, max_nodes, search).to_json()
    if verdict["witness"] is None:
        verdict["witness"] = _skipped("no theorem applies")
    report["primality"] = verdict
    report["budgets"] = {
        "labeling_nodes_used": search.nodes,
        "labeling_nodes_max": max_nodes,
        "groebner_max_pairs": budget.max_pairs,
        "groebner_max_vars": budget.max_vars,
    }
    report["mismatches"] = mismatches
    return report


def render_report(report: dict) -> str:
    return json.dumps(report, indent=2) + "\n"


def cmd_analyze(args) -> int:
    try:
        cx = load_complex(args.file)
    except (OSError, ComplexError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    report = analyze_report(cx, gb=args.gb, oracle=args.oracle, max_nodes=args.budget, seed=args.seed)
    sys.stdout.write(render_report(report))
    if report["mismatches"]:
        for msg in report["mismatches"]:
            print(f"MISMATCH: {msg}", file=sys.stderr)
        return 2
    return 0


def cmd_generate(args) -> int:
    try:
        G = load_graph(args.graph)
        if args.m < G.vertices:
            raise ComplexError(
                f"the closed construction needs m >= |V(G)|, got m={args.m} and |V(G)|={G.vertices}"
            )
        cx = construct_from_graph(G, args.m)
    except (OSError, ComplexError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    save_complex(cx, args.out)
    print(f"wrote {cx} (n={cx.n}, m={cx.m}) to {args.out}")
    return 0


# -- randomized identity checks ----------------------------------------------


def pluecker_instance(rng: random.Random) -> tuple:
    m = rng.randint(2, 5)
    n = rng.randint(m + 1, 8)
    c = tuple(sorted(rng.sample(range(1, m + 1), m - 1)))
    d = tuple(sorted(rng.sample(range(1, n + 1), m - 2)))
    e = tuple(sorted(rng.sample([x for x in range(1, n + 1) if x not in d], 3)))
    return m, n, c, d, e


def check_pluecker(rng: random.Random) -> Optional[dict]:
    m, n, c, d, e = pluecker_instance(rng)
    res = three_term_minor_residual(c, d, e, PolyRing.generic(m, n))
    if res:
        return {"m": m, "n": n, "rows": list(c), "d": list(d), "e": list(e), "residual": str(res)}
    return None


def localization_instance(rng: random.Random) -> tuple:
    """Two m=2 cliques sharing one vertex, randomly labeled, within 13 variables."""
    m = 2
    a = rng.randint(2, 5)
    b = rng.randint(2, 7 - a)
    n = a + b - 1
    perm = list(range(1, n + 1))
    rng.shuffle(perm)
    first = range(1, a + 1)
    second = range(a, n + 1)  # vertex a is shared
    facets = set()
    for W in (first, second):
        for i, u in enumerate(W):
            for v in list(W)[i + 1:]:
                facets.add(tuple(sorted((perm[u - 1], perm[v - 1]))))
    cx = validate(n, m, facets)
    pivot = LocalizationSpec(rng.randint(1, m), perm[a - 1])
    return cx, pivot


def check_localization(rng: random.Random) -> Optional[dict]:
    from .minors import verify_localization

    cx, pivot = localization_instance(rng)
    gens = [facet_minor(F, cx.m) for F in cx.facets]
    loc = localize_generators(gens, pivot)
    if not verify_localization(gens, pivot, loc, MatrixShape(cx.m, cx.n), max_vars=13):
        return {"complex": cx.to_json(), "pivot": [pivot.pivot_row, pivot.pivot_col]}
    return None


CHECKS = {"pluecker": check_pluecker, "localization": check_localization}


def run_verify(identity: str, trials: int, seed: int) -> tuple:
    """Returns (passed count, first counterexample or None)."""
    rng = random.Random(seed)
    check = CHECKS[identity]
    for k in range(trials):
        bad = check(rng)
        if bad is not None:
            bad["trial"] = k
            return k, bad
    return trials, None


def cmd_verify(args) -> int:
    if args.trials < 0:
        print("error: --trials must be non-negative", file=sys.stderr)
        return 1
    print(f"identity={args.identity} trials={args.trials} seed={args.seed}")
    if args.trials == 0:
        print("warning: zero trials requested; passing vacuously", file=sys.stderr)
    passed, bad = run_verify(args.identity, args.trials, args.seed)
    if bad is not None:
        print(f"FAIL after {passed} passing trials; first counterexample:")
        print(json.dumps(bad, indent=2))
        return 2
    print(f"PASS {passed}/{args.trials}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="detfacet", description="Determinantal facet ideal toolkit")
    sub = p.add_subparsers(dest="command", required=True)

    a = sub.add_parser("analyze", help="analyze a complex file and print a JSON report")
    a.add_argument("file")
    a.add_argument("--gb", action="store_true", help="run the Groebner basis checks")
    a.add_argument("--oracle", action="store_true", help="compute Hilbert data from the initial ideal")
    a.add_argument("--budget", type=int, default=DEFAULT_MAX_NODES, help="labeling-search node budget")
    a.add_argument("--seed", type=int, default=0)
    a.set_defaults(func=cmd_analyze)

    g = sub.add_parser("generate", help="build a closed complex realizing a graph")
    g.add_argument("--graph", required=True)
    g.add_argument("--m", type=int, required=True)
    g.add_argument("--out", required=True)
    g.set_defaults(func=cmd_generate)

    v = sub.add_parser("verify", help="randomized checks of the determinantal identities")
    v.add_argument("--identity", choices=sorted(CHECKS), required=True)
    v.add_argument("--trials", type=int, default=20)
    v.add_argument("--seed", type=int, default=0)
    v.set_defaults(func=cmd_verify)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
