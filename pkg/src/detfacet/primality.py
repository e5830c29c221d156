"""Primality verdicts for determinantal facet ideals, backed by known theorems.

The engine only reports what a theorem licenses; everything else is Unknown.
Cascade, evaluated in this order:

1. ``clique-intersection-bound``: closed, and some t cliques
   (2 <= t <= min(m, r)) share more than m - t vertices  ->  not prime.
2. ``closed-forest``: cliques pairwise share at most one vertex, no three
   share one, the complex is closed and the clique graph is a forest  ->  prime.
3. ``clique-cycle``: same intersection conditions, m >= 3, and the clique
   graph is a cycle  ->  prime.
4. ``nested-simplex-intersections``: every clique is an (m-1)-simplex and
   some clique ordering has nested intersections  ->  prime.
5. otherwise Unknown.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from .complexes import (
    DEFAULT_MAX_NODES,
    PureComplex,
    clique_decomposition,
    complex_graph,
    find_closed_labeling,
    nested_ordering,
    pairwise_violation,
    relabel,
    clique_intersection_bound,
)
from .groebner import Ideal, groebner_basis, reduce
from .minors import diagonal_monomial, facet_ideal_generators, facet_minor
from .polyring import PolyRing, coprime

PRIME = "PrimeByTheorem"
NOT_PRIME = "NotPrimeByTheorem"
UNKNOWN = "Unknown"

NESTED_MAX_CLIQUES = 8


@dataclass(frozen=True)
class PrimalityVerdict:
    status: str
    citations: tuple = ()
    witness: Optional[dict] = None
    checked: tuple = ()
    flags: tuple = field(default=())

    def __post_init__(self):
        if self.status in (PRIME, NOT_PRIME) and not self.citations:
            raise ValueError(f"{self.status} verdict needs a citation")
        if self.status not in (PRIME, NOT_PRIME, UNKNOWN):
            raise ValueError(f"unknown status {self.status!r}")

    def to_json(self) -> dict:
        out = {"status": self.status, "citations": list(self.citations), "witness": self.witness}
        out["checked"] = list(self.checked)
        out["flags"] = list(self.flags)
        return out


def primality_verdict(cx: PureComplex, max_nodes: int = DEFAULT_MAX_NODES, search=None) -> PrimalityVerdict:
    dec = clique_decomposition(cx)
    search = search or find_closed_labeling(cx, max_nodes)
    closed = search.found
    flags = []
    if not search.exhausted:
        flags.append(f"closed-labeling search stopped after {search.nodes} nodes; closedness unknown")
    checked = []

    holds, witness = clique_intersection_bound(cx, dec)
    checked.append("clique-intersection-bound")
    if closed and not holds:
        return PrimalityVerdict(NOT_PRIME, ("clique-intersection-bound",), witness.to_json(), tuple(checked), tuple(flags))

    violation = pairwise_violation(dec)
    checked.append("pairwise-intersections")
    if violation is None:
        G = complex_graph(cx, dec)
        checked.append("closed-forest")
        if closed and G.is_forest():
            comps = len(G.components())
            if comps > 1:
                flags.append(
                    f"applied per connected component ({comps} components); components use disjoint "
                    "variables, an engine-level extension of the tree case"
                )
            return PrimalityVerdict(
                PRIME, ("closed-forest",), {"graph": "forest", "components": comps}, tuple(checked), tuple(flags)
            )
        checked.append("clique-cycle")
        if cx.m >= 3 and G.is_cycle():
            return PrimalityVerdict(PRIME, ("clique-cycle",), {"graph": "cycle", "length": G.vertices},
                                    tuple(checked), tuple(flags))

    if all(len(W) == cx.m for W in dec.cliques) and dec.r <= NESTED_MAX_CLIQUES:
        checked.append("nested-simplex-intersections")
        order = nested_ordering(cx, dec, NESTED_MAX_CLIQUES)
        if order is not None:
            return PrimalityVerdict(PRIME, ("nested-simplex-intersections",), {"ordering": list(order)},
                                    tuple(checked), tuple(flags))

    return PrimalityVerdict(UNKNOWN, (), None, tuple(checked), tuple(flags))


def regular_sequence_check(cx: PureComplex, max_nodes: int = DEFAULT_MAX_NODES) -> Optional[bool]:
    """Whether the facet minors form a regular sequence by the simplex-clique theorem.

    True iff every clique is an (m-1)-simplex and a closed labeling exists;
    None when the labeling search runs out of budget.
    """
    dec = clique_decomposition(cx)
    if any(len(W) != cx.m for W in dec.cliques):
        return False
    search = find_closed_labeling(cx, max_nodes)
    if not search.exhausted:
        return None
    if not search.found:
        return False
    lab = relabel(cx, search.labeling)
    ring = PolyRing.generic(cx.m, cx.n)
    diag = [diagonal_monomial(facet_minor(F, cx.m), ring) for F in lab.facets]
    assert all(coprime(a, b) for i, a in enumerate(diag) for b in diag[i + 1:])
    return True


@dataclass(frozen=True)
class ColumnWitness:
    vertex: int
    contained: bool

    def to_json(self) -> dict:
        return {"vertex": self.vertex, "contained": self.contained}


def column_ideal_witness(cx: PureComplex, max_vars: int = 24, **budget) -> Optional[ColumnWitness]:
    """For a vertex a in at least m cliques, test J <= (J', x_1a, ..., x_ma).

    J' is generated by the facets avoiding a.  Containment is checked by
    Groebner membership of every facet minor.
    """
    dec = clique_decomposition(cx)
    m = cx.m
    hits = [v for v in cx.vertices if sum(v in W for W in dec.cliques) >= m]
    if not hits or dec.r < 2:
        return None
    a = hits[0]
    if m * cx.n > max_vars:
        raise ValueError(f"{m * cx.n} variables exceeds the cap of {max_vars}")
    ring = PolyRing.generic(m, cx.n)
    gens = facet_ideal_generators(cx, ring)
    avoid = [g for F, g in zip(cx.facets, gens) if a not in F]
    target = Ideal(ring, avoid + [ring.x(i, a) for i in range(1, m + 1)])
    basis = groebner_basis(target, **budget).elements
    contained = all(not reduce(g, basis) for g in gens)
    return ColumnWitness(a, contained)
