"""Pure simplicial complexes, their cliques, and closed labelings."""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Iterator, Optional, Sequence

from .minors import diagonal_monomial, facet_minor
from .polyring import PolyRing, coprime

DEFAULT_MAX_NODES = 10**7


class ComplexError(ValueError):
    pass


class GraphUndefinedError(ValueError):
    """Some cliques overlap too much for the clique graph to be defined."""

    def __init__(self, message: str, witness: tuple):
        super().__init__(message)
        self.witness = witness


@dataclass(frozen=True)
class PureComplex:
    n: int
    m: int
    facets: tuple  # sorted tuple of sorted m-tuples

    @property
    def facet_set(self) -> frozenset:
        return frozenset(self.facets)

    @property
    def vertices(self) -> tuple:
        return tuple(sorted({v for F in self.facets for v in F}))

    def to_json(self) -> dict:
        return {"m": self.m, "n": self.n, "facets": [list(F) for F in self.facets]}

    def __str__(self):
        return "{" + ", ".join("{" + ",".join(map(str, F)) + "}" for F in self.facets) + "}"


def validate(n: int, m: int, facets: Iterable[Iterable[int]]) -> PureComplex:
    if not isinstance(n, int) or not isinstance(m, int) or m < 1 or n < 1:
        raise ComplexError(f"n and m must be positive integers, got n={n!r}, m={m!r}")
    if m > n:
        raise ComplexError(f"facet size m={m} exceeds vertex count n={n}")
    seen = set()
    out = []
    for raw in facets:
        raw = list(raw)
        if any(not isinstance(v, int) or isinstance(v, bool) for v in raw):
            raise ComplexError(f"facet {raw} has a non-integer vertex")
        F = tuple(sorted(raw))
        if len(set(F)) != len(F):
            raise ComplexError(f"facet {raw} repeats a vertex")
        if len(F) != m:
            raise ComplexError(f"facet {raw} has {len(F)} vertices, expected m={m}")
        if F[0] < 1 or F[-1] > n:
            bad = F[0] if F[0] < 1 else F[-1]
            raise ComplexError(f"facet {raw}: vertex {bad} outside [1, {n}]")
        if F in seen:
            raise ComplexError(f"duplicate facet {raw}")
        seen.add(F)
        out.append(F)
    if not out:
        raise ComplexError("a complex needs at least one facet")
    return PureComplex(n, m, tuple(sorted(out)))


def complex_from_json(data) -> PureComplex:
    if not isinstance(data, dict):
        raise ComplexError("complex JSON must be an object with keys m, n, facets")
    missing = [k for k in ("m", "n", "facets") if k not in data]
    if missing:
        raise ComplexError(f"complex JSON is missing field(s): {', '.join(missing)}")
    if not isinstance(data["facets"], list) or not all(isinstance(F, list) for F in data["facets"]):
        raise ComplexError("field 'facets' must be a list of integer lists")
    return validate(data["n"], data["m"], data["facets"])


def load_complex(path) -> PureComplex:
    text = Path(path).read_text()
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ComplexError(f"{path}: line {exc.lineno} column {exc.colno}: {exc.msg}") from None
    return complex_from_json(data)


def save_complex(cx: PureComplex, path):
    Path(path).write_text(json.dumps(cx.to_json()) + "\n")


# -- skeleta and cliques -------------------------------------------------------


def skeleton(W: Iterable[int], m: int) -> list:
    W = sorted(W)
    if len(W) < m:
        raise ComplexError(f"vertex set of size {len(W)} has no {m}-subsets")
    return list(itertools.combinations(W, m))


def _skeleton_in(W, m, facets: frozenset) -> bool:
    return all(S in facets for S in itertools.combinations(sorted(W), m))


@dataclass(frozen=True)
class CliqueDecomposition:
    cliques: tuple  # sorted vertex tuples, lexicographic

    @property
    def r(self) -> int:
        return len(self.cliques)

    @property
    def sizes(self) -> tuple:
        return tuple(len(c) for c in self.cliques)


def clique_decomposition(cx: PureComplex) -> CliqueDecomposition:
    """All inclusion-maximal W with every m-subset of W a facet.

    Each facet seeds a Bron-Kerbosch style enumeration (no pivoting; the
    clique property is hereditary but not pairwise), then seeds are merged.
    """
    m, facets = cx.m, cx.facet_set
    verts = cx.vertices
    found = set()

    def extends(R, u):
        return all(tuple(sorted(S + (u,))) in facets for S in itertools.combinations(R, m - 1))

    def bk(R, P, X):
        if not P and not X:
            found.add(tuple(sorted(R)))
            return
        for u in list(P):
            R2 = R + (u,)
            bk(R2, [w for w in P if w != u and extends(R2, w)], [w for w in X if extends(R2, w)])
            P.remove(u)
            X.append(u)

    for F in cx.facets:
        bk(F, [u for u in verts if u not in F and extends(F, u)], [])
    maximal = [W for W in found if not any(set(W) < set(V) for V in found)]
    return CliqueDecomposition(tuple(sorted(maximal)))


# -- labelings -------------------------------------------------------------


@dataclass(frozen=True)
class Labeling:
    perm: tuple  # perm[v - 1] is the new label of vertex v

    def __post_init__(self):
        if sorted(self.perm) != list(range(1, len(self.perm) + 1)):
            raise ComplexError(f"labeling {self.perm} is not a bijection of [1, {len(self.perm)}]")

    @classmethod
    def identity(cls, n: int) -> "Labeling":
        return cls(tuple(range(1, n + 1)))

    def __call__(self, v: int) -> int:
        return self.perm[v - 1]


def relabel(cx: PureComplex, labeling: Labeling) -> PureComplex:
    if len(labeling.perm) != cx.n:
        raise ComplexError(f"labeling has {len(labeling.perm)} entries for n={cx.n}")
    return PureComplex(cx.n, cx.m, tuple(sorted(tuple(sorted(labeling(v) for v in F)) for F in cx.facets)))


def _share_position(F, G) -> bool:
    return any(a == b for a, b in zip(F, G))


def _pairs_across_cliques(cx: PureComplex, dec: CliqueDecomposition):
    """Facet pairs (F, G) with no clique containing both."""
    owners = {F: {i for i, W in enumerate(dec.cliques) if set(F) <= set(W)} for F in cx.facets}
    for i, j in itertools.combinations(range(dec.r), 2):
        for F in itertools.combinations(dec.cliques[i], cx.m):
            for G in itertools.combinations(dec.cliques[j], cx.m):
                if not owners[F] & owners[G]:
                    yield F, G


MODES = ("definition", "clique-positions", "initial-coprimality")


def is_closed(cx: PureComplex, labeling: Labeling = None, mode: str = "definition") -> bool:
    """Closedness of ``cx`` under ``labeling`` (identity when omitted).

    ``definition``: facets sharing a label in the same position span a full
    skeleton.  ``clique-positions``: facets lying in no common clique never
    share a position.  ``initial-coprimality``: the same facet pairs have
    coprime lex-leading monomials.
    """
    if labeling is not None:
        cx = relabel(cx, labeling)
    if mode == "definition":
        facets = cx.facet_set
        for F, G in itertools.combinations(cx.facets, 2):
            if _share_position(F, G) and not _skeleton_in(set(F) | set(G), cx.m, facets):
                return False
        return True
    dec = clique_decomposition(cx)
    if mode == "clique-positions":
        return not any(_share_position(F, G) for F, G in _pairs_across_cliques(cx, dec))
    if mode == "initial-coprimality":
        ring = PolyRing.generic(cx.m, cx.n)
        diag = {F: diagonal_monomial(facet_minor(F, cx.m), ring) for F in cx.facets}
        return all(coprime(diag[F], diag[G]) for F, G in _pairs_across_cliques(cx, dec))
    raise ValueError(f"unknown closedness mode {mode!r}; expected one of {MODES}")


@dataclass(frozen=True)
class LabelingSearch:
    labeling: Optional[Labeling]
    exhausted: bool  # True: the search space was fully explored (or a labeling found)
    nodes: int

    @property
    def found(self) -> bool:
        return self.labeling is not None

    def status(self) -> str:
        if self.labeling is not None:
            return "found"
        return "none, exhaustive" if self.exhausted else "none within budget"


class _OutOfNodes(Exception):
    pass


def find_closed_labeling(cx: PureComplex, max_nodes: int = DEFAULT_MAX_NODES) -> LabelingSearch:
    """Depth-first search for a closed labeling.

    Labels are handed out in increasing order, so when a vertex is labeled its
    position in every facet is already fixed: one more than the number of that
    facet's vertices labeled before it.  A vertex may not land in the same
    position of two facets whose union does not span a full skeleton.  The
    outcome below a given set of labeled vertices depends on nothing else, so
    dead sets are memoised.  Candidate vertices are tried in increasing order,
    which makes the first labeling found the lexicographically least.
    """
    verts = tuple(range(1, cx.n + 1))  # unused vertices too, so a closed identity is found first
    facets = cx.facets
    fset = cx.facet_set
    pos_of = {v: k for k, v in enumerate(verts)}
    facets_of = {v: [] for v in verts}
    for f, F in enumerate(facets):
        for v in F:
            facets_of[v].append(f)
    clash = {v: [] for v in verts}
    for (f, F), (g, G) in itertools.combinations(enumerate(facets), 2):
        common = set(F) & set(G)
        if common and not _skeleton_in(set(F) | set(G), cx.m, fset):
            for v in common:
                clash[v].append((f, g))

    count = [0] * len(facets)
    order: list = []
    full = (1 << len(verts)) - 1
    dead = set()
    nodes = 0

    def dfs(mask: int) -> bool:
        nonlocal nodes
        if mask == full:
            return True
        if mask in dead:
            return False
        for v in verts:
            bit = 1 << pos_of[v]
            if mask & bit:
                continue
            if any(count[f] == count[g] for f, g in clash[v]):
                continue
            nodes += 1
            if nodes > max_nodes:
                raise _OutOfNodes
            for f in facets_of[v]:
                count[f] += 1
            order.append(v)
            if dfs(mask | bit):
                return True
            order.pop()
            for f in facets_of[v]:
                count[f] -= 1
        dead.add(mask)
        return False

    try:
        ok = dfs(0)
    except _OutOfNodes:
        return LabelingSearch(None, False, nodes)
    if not ok:
        return LabelingSearch(None, True, nodes)
    perm = [0] * cx.n
    for label, v in enumerate(order, start=1):
        perm[v - 1] = label
    return LabelingSearch(Labeling(tuple(perm)), True, nodes)


# -- intersection conditions -----------------------------------------------


@dataclass(frozen=True)
class IntersectionWitness:
    t: int
    cliques: tuple  # 1-based clique indices
    intersection: tuple

    def to_json(self) -> dict:
        return {"t": self.t, "cliques": list(self.cliques), "intersection": list(self.intersection)}


def _intersection(sets) -> set:
    it = iter(sets)
    out = set(next(it))
    for s in it:
        out &= set(s)
    return out


def clique_intersection_bound(cx: PureComplex, dec: CliqueDecomposition = None):
    """Every t cliques (2 <= t <= min(m, r)) meet in at most m - t vertices.

    Returns ``(holds, witness)``; the witness is the first violating clique
    subset in lexicographic order, or None.
    """
    dec = dec or clique_decomposition(cx)
    m = cx.m
    for t in range(2, min(m, dec.r) + 1):
        for idx in itertools.combinations(range(dec.r), t):
            common = _intersection(dec.cliques[i] for i in idx)
            if len(common) > m - t:
                return False, IntersectionWitness(t, tuple(i + 1 for i in idx), tuple(sorted(common)))
    return True, None


def pairwise_violation(dec: CliqueDecomposition) -> Optional[IntersectionWitness]:
    for i, j in itertools.combinations(range(dec.r), 2):
        common = set(dec.cliques[i]) & set(dec.cliques[j])
        if len(common) > 1:
            return IntersectionWitness(2, (i + 1, j + 1), tuple(sorted(common)))
    for idx in itertools.combinations(range(dec.r), 3):
        common = _intersection(dec.cliques[i] for i in idx)
        if common:
            return IntersectionWitness(3, tuple(i + 1 for i in idx), tuple(sorted(common)))
    return None


def pairwise_conditions(cx: PureComplex, dec: CliqueDecomposition = None) -> bool:
    """Cliques pairwise share at most one vertex and no three share a vertex."""
    return pairwise_violation(dec or clique_decomposition(cx)) is None


# -- graphs ----------------------------------------------------------------


@dataclass(frozen=True)
class Graph:
    vertices: int
    edges: frozenset = field(default_factory=frozenset)  # of sorted (u, v), 1-based

    def __post_init__(self):
        norm = set()
        for e in self.edges:
            u, v = e
            if u == v:
                raise ComplexError(f"loop at vertex {u}")
            if not (1 <= u <= self.vertices and 1 <= v <= self.vertices):
                raise ComplexError(f"edge {e} outside [1, {self.vertices}]")
            norm.add((min(u, v), max(u, v)))
        object.__setattr__(self, "edges", frozenset(norm))

    def neighbours(self, v: int) -> list:
        return sorted({b for a, b in self.edges if a == v} | {a for a, b in self.edges if b == v})

    def degree(self, v: int) -> int:
        return len(self.neighbours(v))

    def components(self) -> list:
        parent = list(range(self.vertices + 1))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for u, v in self.edges:
            parent[find(u)] = find(v)
        groups: dict = {}
        for v in range(1, self.vertices + 1):
            groups.setdefault(find(v), []).append(v)
        return sorted(groups.values())

    def is_forest(self) -> bool:
        return len(self.edges) == self.vertices - len(self.components())

    def is_cycle(self) -> bool:
        return (
            self.vertices >= 3
            and len(self.components()) == 1
            and all(self.degree(v) == 2 for v in range(1, self.vertices + 1))
        )

    def to_json(self) -> dict:
        return {"vertices": self.vertices, "edges": [list(e) for e in sorted(self.edges)]}


def graph_from_json(data) -> Graph:
    if not isinstance(data, dict) or "vertices" not in data or "edges" not in data:
        raise ComplexError("graph JSON must be an object with keys vertices, edges")
    v = data["vertices"]
    if not isinstance(v, int) or v < 1:
        raise ComplexError(f"field 'vertices' must be a positive integer, got {v!r}")
    edges = []
    for e in data["edges"]:
        if not (isinstance(e, list) and len(e) == 2 and all(isinstance(x, int) for x in e)):
            raise ComplexError(f"edge {e!r} must be a pair of integers")
        edges.append(tuple(e))
    if len(set(tuple(sorted(e)) for e in edges)) != len(edges):
        raise ComplexError("duplicate edge in graph")
    return Graph(v, frozenset(edges))


def load_graph(path) -> Graph:
    try:
        data = json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise ComplexError(f"{path}: line {exc.lineno} column {exc.colno}: {exc.msg}") from None
    return graph_from_json(data)


def complex_graph(cx: PureComplex, dec: CliqueDecomposition = None) -> Graph:
    """The graph on the cliques, joined when their vertex sets meet."""
    dec = dec or clique_decomposition(cx)
    bad = pairwise_violation(dec)
    if bad is not None:
        which = "pairwise-intersection" if bad.t == 2 else "triple-intersection"
        raise GraphUndefinedError(
            f"{which} condition fails: cliques {bad.cliques} share {list(bad.intersection)}", bad
        )
    edges = {
        (i + 1, j + 1)
        for i, j in itertools.combinations(range(dec.r), 2)
        if set(dec.cliques[i]) & set(dec.cliques[j])
    }
    return Graph(dec.r, frozenset(edges))


def degree_bound_check(cx: PureComplex, dec: CliqueDecomposition = None) -> bool:
    """Every clique-vertex has degree <= min(|V(clique)|, 2(m - 1)).

    False certifies that the complex has no closed labeling.
    """
    dec = dec or clique_decomposition(cx)
    G = complex_graph(cx, dec)
    return all(G.degree(i + 1) <= min(len(W), 2 * (cx.m - 1)) for i, W in enumerate(dec.cliques))


def construct_simplices(G: Graph, m: int) -> list:
    """Vertex sets of the simplices realising ``G``, in input vertex order."""
    k = G.vertices
    if m < k:
        raise ComplexError(f"need m >= |V(G)| to realise the graph with closed simplices (m={m}, |V(G)|={k})")
    simplices: list = []
    nxt = 1
    for v in range(1, k + 1):
        shared = {}
        for w in range(1, v):
            shared[w] = nxt
            simplices[w - 1].append(nxt)
            nxt += 1
        nbrs = [w for w in G.neighbours(v) if w < v]
        mine = [shared[w] for w in nbrs]
        fresh = list(range(nxt, nxt + v - len(nbrs)))
        nxt += len(fresh)
        simplices.append(mine + fresh)
    for S in simplices:
        S.extend(range(nxt, nxt + m - k))
        nxt += m - k
    return [tuple(sorted(S)) for S in simplices]


def construct_from_graph(G: Graph, m: int) -> PureComplex:
    """A complex, closed under its own labels, whose cliques are (m-1)-simplices
    and whose clique graph is ``G``."""
    simplices = construct_simplices(G, m)
    n = max(max(S) for S in simplices)
    return validate(n, m, simplices)


# -- ordering-dependent conditions -----------------------------------------


def nested_ordering(cx: PureComplex, dec: CliqueDecomposition = None, max_r: int = 8) -> Optional[tuple]:
    """A clique ordering satisfying the nested intersection conditions, or None.

    For the ordering D_1..D_r the s-fold intersection of the last s cliques
    must have at most m - s vertices and contain every other s-fold
    intersection.  Returned as 1-based clique indices, D_1 first.
    """
    dec = dec or clique_decomposition(cx)
    m, r = cx.m, dec.r
    if any(len(W) != m for W in dec.cliques):
        raise ComplexError("nested intersection condition needs every clique to be an (m-1)-simplex")
    if r > max_r:
        raise ComplexError(f"{r} cliques exceed the ordering search cap of {max_r}")
    if r == 1:
        return (1,)
    sets = [set(W) for W in dec.cliques]
    union_s = {}
    for s in range(2, r + 1):
        u = set()
        for idx in itertools.combinations(range(r), s):
            u |= _intersection(sets[i] for i in idx)
        union_s[s] = u

    def dfs(chosen: list, nested: set) -> Optional[list]:
        if len(chosen) == r:
            return chosen
        s = len(chosen) + 1
        for i in range(r):
            if i in chosen:
                continue
            cur = nested & sets[i] if chosen else set(sets[i])
            if s >= 2 and (len(cur) > m - s or not union_s[s] <= cur):
                continue
            out = dfs(chosen + [i], cur)
            if out:
                return out
        return None

    found = dfs([], set())
    if found is None:
        return None
    return tuple(i + 1 for i in reversed(found))


def nested_intersection_condition(cx: PureComplex, dec: CliqueDecomposition = None) -> bool:
    return nested_ordering(cx, dec) is not None


def cycle_order(G: Graph) -> list:
    order = [1]
    prev = None
    while True:
        nxt = [w for w in G.neighbours(order[-1]) if w != prev]
        w = nxt[0]
        if w == 1:
            return order
        prev = order[-1]
        order.append(w)


def cycle_labeling(cx: PureComplex, dec: CliqueDecomposition = None) -> Optional[Labeling]:
    """Consecutive-interval labeling for a cycle of cliques, if it is closed.

    Cliques C_1..C_r are walked around the cycle; C_1 gets 1..a_1, each
    middle clique the interval starting at its predecessor's last label, and
    C_r the label a_1 - 1 plus the interval after a_{r-1}.
    """
    dec = dec or clique_decomposition(cx)
    G = complex_graph(cx, dec)
    if not G.is_cycle():
        raise ComplexError("clique graph is not a cycle")
    cyc = [dec.cliques[i - 1] for i in cycle_order(G)]
    r = len(cyc)
    shared = [(set(cyc[i]) & set(cyc[(i + 1) % r])).pop() for i in range(r)]  # C_i meets C_{i+1}
    label = {}
    nxt = 1
    first = cyc[0]
    for v in first:
        if v not in (shared[0], shared[-1]):
            label[v] = nxt
            nxt += 1
    label[shared[-1]] = nxt
    label[shared[0]] = nxt + 1
    nxt += 2
    for i in range(1, r):
        C = cyc[i]
        for v in C:
            if v not in label and v != shared[i]:
                label[v] = nxt
                nxt += 1
        if i < r - 1:
            label[shared[i]] = nxt
            nxt += 1
    for v in range(1, cx.n + 1):
        if v not in label:
            label[v] = nxt
            nxt += 1
    lab = Labeling(tuple(label[v] for v in range(1, cx.n + 1)))
    return lab if is_closed(cx, lab) else None


# -- enumeration -----------------------------------------------------------


def iter_complexes(n: int, m: int, max_facets: int, min_facets: int = 1) -> Iterator[PureComplex]:
    """Every pure complex on [n] with m-vertex facets and a bounded facet count."""
    pool = list(itertools.combinations(range(1, n + 1), m))
    for k in range(min_facets, min(max_facets, len(pool)) + 1):
        for facets in itertools.combinations(pool, k):
            yield PureComplex(n, m, facets)


def simplex_complex(G: Graph, m: int, perm: Sequence[int] = None) -> PureComplex:
    """Complex with one (m-1)-simplex per graph vertex, adjacent simplices
    sharing exactly one vertex; ``perm`` optionally scrambles the labels."""
    simplices: list = [[] for _ in range(G.vertices)]
    nxt = 1
    for u, v in sorted(G.edges):
        simplices[u - 1].append(nxt)
        simplices[v - 1].append(nxt)
        nxt += 1
    for S in simplices:
        if len(S) > m:
            raise ComplexError(f"a simplex with {len(S)} neighbours cannot have only {m} vertices")
        while len(S) < m:
            S.append(nxt)
            nxt += 1
    n = nxt - 1
    cx = validate(n, m, simplices)
    if perm is not None:
        cx = relabel(cx, Labeling(tuple(perm)))
    return cx
