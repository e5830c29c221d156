"""Height, Hilbert series and multiplicity: closed forms and monomial oracles.

Univariate integer polynomials in t are plain lists of coefficients,
constant term first.
"""

from __future__ import annotations

import itertools
from collections import Counter
from dataclasses import dataclass
from math import comb
from typing import Iterable, Sequence

from .complexes import CliqueDecomposition

# -- integer polynomials in t ------------------------------------------------


def trim(p: Sequence[int]) -> list:
    p = list(p)
    while p and p[-1] == 0:
        p.pop()
    return p


def tpoly_add(a, b) -> list:
    out = [0] * max(len(a), len(b))
    for i, c in enumerate(a):
        out[i] += c
    for i, c in enumerate(b):
        out[i] += c
    return trim(out)


def tpoly_mul(a, b) -> list:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return trim(out)


def tpoly_shift(a, k: int) -> list:
    return trim([0] * k + list(a)) if a else []


def tpoly_eval1(a) -> int:
    return sum(a)


def divide_one_minus_t(p: Sequence[int]) -> list:
    """Exact quotient p / (1 - t); raises if p(1) != 0."""
    if sum(p) != 0:
        raise ArithmeticError("polynomial is not divisible by 1 - t")
    q = []
    acc = 0
    for c in list(p)[:-1]:
        acc += c
        q.append(acc)
    return trim(q)


def tpoly_str(p: Sequence[int], var: str = "t") -> str:
    parts = []
    for k, c in enumerate(p):
        if not c:
            continue
        mono = "" if k == 0 else (var if k == 1 else f"{var}^{k}")
        mag = abs(c)
        body = str(mag) if not mono else (mono if mag == 1 else f"{mag}{mono}")
        parts.append(("-" if c < 0 else "+", body))
    if not parts:
        return "0"
    head = ("-" if parts[0][0] == "-" else "") + parts[0][1]
    return head + "".join(f" {s} {b}" for s, b in parts[1:])


# -- data ----------------------------------------------------------------------


@dataclass(frozen=True)
class HilbertData:
    numerator: tuple
    denominator_exponent: int  # Krull dimension of the quotient
    height: int
    multiplicity: int

    def to_json(self) -> dict:
        return {
            "numerator": list(self.numerator),
            "dim": self.denominator_exponent,
            "height": self.height,
            "multiplicity": self.multiplicity,
        }


# -- monomial oracles ----------------------------------------------------------


def _supports(gens: Iterable[tuple]) -> list:
    return [frozenset(k for k, e in enumerate(g) if e) for g in gens]


def _minimalize(gens: Iterable[tuple]) -> list:
    gens = sorted(set(gens), key=lambda g: (sum(g), g))
    out = []
    for g in gens:
        if not any(all(a <= b for a, b in zip(h, g)) for h in out):
            out.append(g)
    return out


def min_vertex_cover(edges: Sequence[frozenset]) -> int:
    """Smallest vertex set meeting every hyperedge (exact branch and bound)."""
    edges = [e for e in edges]
    if any(not e for e in edges):
        raise ValueError("an empty support cannot be covered (unit ideal)")
    best = [sum(1 for _ in edges)]

    def search(es: list, used: int):
        if used >= best[0]:
            return
        if not es:
            best[0] = used
            return
        # lower bound: greedily packed disjoint edges each need their own vertex
        taken, bound = set(), 0
        for e in es:
            if not (e & taken):
                taken |= e
                bound += 1
        if used + bound >= best[0]:
            return
        e = min(es, key=len)
        for v in sorted(e):
            search([f for f in es if v not in f], used + 1)

    search(edges, 0)
    return best[0]


def monomial_height(gens: Iterable[tuple]) -> int:
    return min_vertex_cover(list(set(_supports(_minimalize(gens)))))


def monomial_dimension(gens: Iterable[tuple], num_vars: int) -> int:
    """Krull dimension of S/(gens) for monomials given as exponent tuples."""
    gens = list(gens)
    if not gens:
        return num_vars
    return num_vars - monomial_height(gens)


def monomial_hilbert_numerator(gens: Iterable[tuple], num_vars: int = None) -> list:
    """K-polynomial Q(t) with HS(S/I) = Q(t) / (1 - t)^num_vars.

    Recursion on the most frequent variable x:
    Q(I) = Q(I + (x)) + t * Q(I : x), and Q(I + (x)) = (1 - t) Q(I without x).
    """
    gens = _minimalize(gens)
    return _knum(tuple(gens))


def _knum(gens: tuple) -> list:
    if not gens:
        return [1]
    if len(gens) == 1:
        d = sum(gens[0])
        return [1] if d == 0 else tpoly_add([1], tpoly_shift([-1], d))
    supports = _supports(gens)
    if all(not (a & b) for a, b in itertools.combinations(supports, 2)):
        out = [1]
        for g in gens:
            out = tpoly_mul(out, tpoly_add([1], tpoly_shift([-1], sum(g))))
        return out
    freq = Counter(k for s in supports for k in s)
    x = min(freq, key=lambda k: (-freq[k], k))
    without = tuple(g for g in gens if not g[x])
    quotient = []
    for g in gens:
        h = list(g)
        if h[x]:
            h[x] -= 1
        quotient.append(tuple(h))
    left = tpoly_mul([1, -1], _knum(tuple(_minimalize(without))))
    right = tpoly_shift(_knum(tuple(_minimalize(quotient))), 1)
    return tpoly_add(left, right)


def reduce_series(numerator: Sequence[int], num_vars: int) -> HilbertData:
    """Cancel (1 - t) factors from Q(t) / (1 - t)^num_vars."""
    p = trim(numerator)
    if not p:
        raise ValueError("zero K-polynomial: the quotient ring is zero")
    k = 0
    while sum(p) == 0:
        p = divide_one_minus_t(p)
        k += 1
    if k > num_vars:
        raise ArithmeticError("more (1 - t) factors than variables")
    data = HilbertData(tuple(p), num_vars - k, k, sum(p))
    assert data.multiplicity != 0 and data.height + data.denominator_exponent == num_vars
    return data


def monomial_hilbert_data(gens: Iterable[tuple], num_vars: int) -> HilbertData:
    return reduce_series(monomial_hilbert_numerator(gens), num_vars)


# -- closed forms --------------------------------------------------------------


def height_formula(dec: CliqueDecomposition, m: int) -> int:
    return sum(dec.sizes) - (m - 1) * dec.r


def clique_hilbert_factor(m: int, n: int) -> list:
    """h-polynomial of the maximal minors of an m x n generic matrix.

    det( sum_k C(m-i, k) C(n-j, k) t^k )_{1 <= i, j <= m-1}, divided by
    t^C(m-1, 2).
    """
    if not (1 <= m <= n):
        raise ValueError(f"need 1 <= m <= n, got m={m}, n={n}")
    size = m - 1
    if size == 0:
        return [1]
    entry = [
        [trim([comb(m - i, k) * comb(n - j, k) for k in range(0, min(m - i, n - j) + 1)]) for j in range(1, m)]
        for i in range(1, m)
    ]
    det: list = []
    for perm in itertools.permutations(range(size)):
        inv = sum(1 for a, b in itertools.combinations(perm, 2) if a > b)
        prod = [1]
        for i, j in enumerate(perm):
            prod = tpoly_mul(prod, entry[i][j])
        det = tpoly_add(det, [-c for c in prod] if inv % 2 else prod)
    shift = comb(m - 1, 2)
    if any(det[:shift]):
        raise ArithmeticError(f"determinant {det} is not divisible by t^{shift} (m={m}, n={n})")
    return trim(det[shift:])


def hilbert_series_closed(dec: CliqueDecomposition, m: int, n: int) -> HilbertData:
    """Closed-form Hilbert data of S/J for a closed complex with cliques ``dec``."""
    num = [1]
    for size in dec.sizes:
        num = tpoly_mul(num, clique_hilbert_factor(m, size))
    height = height_formula(dec, m)
    return HilbertData(tuple(num), m * n - height, height, tpoly_eval1(num))


def multiplicity_formula(dec: CliqueDecomposition, m: int) -> int:
    out = 1
    for size in dec.sizes:
        out *= comb(size, m - 1)
    return out


def minor_algebra_dimension(dec: CliqueDecomposition, m: int) -> int:
    """Krull dimension of the algebra generated by the facet minors."""
    return dec.r + sum(m * (size - m) for size in dec.sizes)
