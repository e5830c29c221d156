"""Minors of the generic matrix and the operations built from them."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

from .polyring import MatrixShape, Monomial, PolyRing, Polynomial

LEIBNIZ_MAX = 4


@dataclass(frozen=True)
class MinorSpec:
    rows: tuple
    cols: tuple

    def __post_init__(self):
        object.__setattr__(self, "rows", tuple(self.rows))
        object.__setattr__(self, "cols", tuple(self.cols))
        if len(self.rows) != len(self.cols) or not self.rows:
            raise ValueError(f"minor needs matching nonempty rows/cols, got {self.rows}|{self.cols}")
        for seq in (self.rows, self.cols):
            if any(a >= b for a, b in zip(seq, seq[1:])):
                raise ValueError(f"indices must be strictly increasing: {seq}")
            if seq[0] < 1:
                raise ValueError(f"indices are 1-based: {seq}")

    @classmethod
    def maximal(cls, cols: Sequence[int], m: int = None) -> "MinorSpec":
        cols = tuple(cols)
        return cls(tuple(range(1, (m or len(cols)) + 1)), cols)

    @property
    def size(self) -> int:
        return len(self.rows)

    def is_maximal(self, m: int) -> bool:
        return self.rows == tuple(range(1, m + 1))

    def check_shape(self, shape: MatrixShape):
        if self.rows[-1] > shape.m or self.cols[-1] > shape.n:
            raise ValueError(f"minor {self} does not fit a {shape.m}x{shape.n} matrix")

    def __str__(self):
        return f"[{' '.join(map(str, self.rows))} | {' '.join(map(str, self.cols))}]"

    def text(self, m: int) -> str:
        """``[a1 ... am]`` for maximal minors of an m-row matrix, else ``[r | c]``."""
        if self.is_maximal(m):
            return "[" + " ".join(map(str, self.cols)) + "]"
        return str(self)


@dataclass(frozen=True)
class LocalizationSpec:
    pivot_row: int
    pivot_col: int


def parse_minor(text: str, m: int = None) -> MinorSpec:
    body = text.strip()
    if not (body.startswith("[") and body.endswith("]")):
        raise ValueError(f"minor text must be bracketed: {text!r}")
    body = body[1:-1]
    if "|" in body:
        r, c = body.split("|")
        return MinorSpec(tuple(map(int, r.split())), tuple(map(int, c.split())))
    cols = tuple(map(int, body.split()))
    if m is not None and len(cols) != m:
        raise ValueError(f"maximal minor {text!r} needs {m} columns")
    return MinorSpec.maximal(cols)


def _perm_sign(p: Sequence[int]) -> int:
    sign = 1
    p = list(p)
    for i in range(len(p)):
        while p[i] != i:
            j = p[i]
            p[i], p[j] = p[j], p[i]
            sign = -sign
    return sign


@lru_cache(maxsize=None)
def _signed_perms(k: int) -> tuple:
    return tuple((_perm_sign(p), p) for p in itertools.permutations(range(k)))


def determinant(rows: Sequence[int], cols: Sequence[int], ring: PolyRing) -> Polynomial:
    """det of the submatrix on ``rows`` x ``cols`` taken in the given order.

    Column order is not required to be increasing; swapping two columns
    negates the result.
    """
    rows, cols = tuple(rows), tuple(cols)
    if len(rows) != len(cols):
        raise ValueError("square submatrix required")
    if len(set(cols)) != len(cols) or len(set(rows)) != len(rows):
        return ring.zero()
    if not rows:
        return ring.one()
    idx = [[ring.index(r, c) for c in cols] for r in rows]
    if len(rows) <= LEIBNIZ_MAX:
        return _leibniz(idx, ring)
    memo: dict = {}
    return _laplace(idx, 0, tuple(range(len(cols))), ring, memo)


def _leibniz(idx, ring: PolyRing) -> Polynomial:
    zero = [0] * ring.nvars
    acc = {}
    for sign, p in _signed_perms(len(idx)):
        e = list(zero)
        for r, c in enumerate(p):
            e[idx[r][c]] += 1
        e = tuple(e)
        acc[e] = acc.get(e, 0) + sign
    return Polynomial.from_dict(ring, acc)


def _laplace(idx, row: int, cols: tuple, ring: PolyRing, memo: dict) -> Polynomial:
    """Expand along ``row`` over the surviving column positions ``cols``."""
    key = (row, cols)
    if key in memo:
        return memo[key]
    if len(cols) <= LEIBNIZ_MAX:
        sub = [[idx[r][c] for c in cols] for r in range(row, len(idx))]
        out = _leibniz(sub, ring)
    else:
        acc = ring.zero()
        for pos, c in enumerate(cols):
            rest = cols[:pos] + cols[pos + 1:]
            minor = _laplace(idx, row + 1, rest, ring, memo)
            e = [0] * ring.nvars
            e[idx[row][c]] = 1
            acc = acc + minor.mul_term(Fraction(-1 if pos % 2 else 1), tuple(e))
        out = acc
    memo[key] = out
    return out


def expand_minor(spec: MinorSpec, ring: PolyRing) -> Polynomial:
    spec.check_shape(ring.shape)
    return determinant(spec.rows, spec.cols, ring)


def diagonal_monomial(spec: MinorSpec, ring: PolyRing) -> Monomial:
    """Lex-leading monomial of a minor: the product of its main diagonal."""
    spec.check_shape(ring.shape)
    e = [0] * ring.nvars
    for r, c in zip(spec.rows, spec.cols):
        e[ring.index(r, c)] += 1
    return tuple(e)


def facet_minor(facet: Sequence[int], m: int) -> MinorSpec:
    return MinorSpec.maximal(sorted(facet), m)


def facet_ideal_generators(complex_, ring: PolyRing = None) -> list:
    """Maximal minors of the facets, in lexicographic facet order."""
    ring = ring or PolyRing.generic(complex_.m, complex_.n)
    if ring.m != complex_.m or ring.n < complex_.n:
        raise ValueError(f"{ring!r} cannot hold the minors of an m={complex_.m}, n={complex_.n} complex")
    return [expand_minor(facet_minor(F, complex_.m), ring) for F in complex_.facets]


def three_term_minor_residual(c: Sequence[int], d: Sequence[int], e: Sequence[int], ring: PolyRing) -> Polynomial:
    """Signed three-term combination of products of minors; always zero.

    ``c`` are m-1 rows, ``d`` are m-2 columns and ``e`` three columns, all
    increasing, and ``d`` and ``e`` are disjoint.  With ``i < j < k`` the
    positions of e1, e2, e3 in the merged sorted column list, the result is

        (-1)^k [c | d e3][d e1 e2] + (-1)^j [c | d e2][d e1 e3] + (-1)^i [c | d e1][d e2 e3]

    where in ``[c | d e]`` the single e column is appended after the d block
    and the maximal minors use sorted columns.
    """
    m = ring.m
    c, d, e = tuple(c), tuple(d), tuple(e)
    if m > ring.n - 1:
        raise ValueError(f"need m <= n - 1, got m={m}, n={ring.n}")
    if len(c) != m - 1 or len(d) != m - 2 or len(e) != 3:
        raise ValueError(f"need {m - 1} rows, {m - 2} d-columns and 3 e-columns")
    if any(a >= b for a, b in zip(c, c[1:])) or any(a >= b for a, b in zip(d, d[1:])):
        raise ValueError("rows and d-columns must be strictly increasing")
    if any(a >= b for a, b in zip(e, e[1:])):
        raise ValueError("e-columns must be strictly increasing")
    merged = sorted(d + e)
    if len(set(merged)) != m + 1:
        raise ValueError("d and e columns must be disjoint")
    pos = [merged.index(x) + 1 for x in e]
    out = ring.zero()
    for which, p in enumerate(pos):
        others = tuple(sorted(d + tuple(x for t, x in enumerate(e) if t != which)))
        small = determinant(c, d + (e[which],), ring)
        big = determinant(tuple(range(1, m + 1)), others, ring)
        sign = -1 if p % 2 else 1
        out = out + (small * big) * sign
    return out


def localize_generators(gens: Sequence[MinorSpec], pivot: LocalizationSpec) -> list:
    """Generators of the ideal that agrees with (gens) after inverting x_ij.

    Minors avoiding the pivot column pass through; the others lose the pivot
    row and column.  Duplicates are dropped, first occurrence wins.
    """
    i, j = pivot.pivot_row, pivot.pivot_col
    out, seen = [], set()
    for g in gens:
        if i not in g.rows:
            raise ValueError(f"minor {g} does not involve pivot row {i}")
        if j in g.cols:
            if g.size == 1:
                raise ValueError(f"minor {g} is the pivot itself and becomes a unit")
            h = MinorSpec(
                tuple(r for r in g.rows if r != i),
                tuple(c for c in g.cols if c != j),
            )
        else:
            h = g
        if h not in seen:
            seen.add(h)
            out.append(h)
    return out


def localization_map(ring: PolyRing, pivot: LocalizationSpec, aux: str = "z", inverse: bool = False) -> dict:
    """x_kl -> x_kl +/- x_kj * z * x_il for k != i, l != j (z stands for 1/x_ij)."""
    i, j = pivot.pivot_row, pivot.pivot_col
    z = ring.aux_var(aux)
    images = {}
    for k in range(1, ring.m + 1):
        for l in range(1, ring.n + 1):
            if k == i or l == j:
                continue
            shift = ring.x(k, j) * z * ring.x(i, l)
            images[ring.index(k, l)] = ring.x(k, l) - shift if inverse else ring.x(k, l) + shift
    return images


def verify_localization(gens: Sequence[MinorSpec], pivot: LocalizationSpec, localized: Sequence[MinorSpec],
                        shape: MatrixShape, max_vars: int = 15, **budget) -> bool:
    """Check that I and J agree after inverting the pivot, by Groebner membership.

    Works in Q[z, X] with z * x_ij = 1 standing in for the localisation.
    """
    from .groebner import Ideal, groebner_basis, reduce

    if shape.m * shape.n + 1 > max_vars:
        raise ValueError(f"{shape.m * shape.n + 1} variables exceeds the cap of {max_vars}")
    base = PolyRing(shape)
    ring = base.extend("z")
    unit = ring.aux_var("z") * ring.x(pivot.pivot_row, pivot.pivot_col) - 1
    I = [expand_minor(g, base).embed(ring) for g in gens]
    J = [expand_minor(g, base).embed(ring) for g in localized]

    forward = localization_map(ring, pivot)
    backward = localization_map(ring, pivot, inverse=True)

    gb_j = groebner_basis(Ideal(ring, J + [unit]), **budget).elements
    if any(reduce(f.substitute(forward), gb_j) for f in I):
        return False
    gb_i = groebner_basis(Ideal(ring, I + [unit]), **budget).elements
    return not any(reduce(g.substitute(backward), gb_i) for g in J)
