"""Exact sparse polynomials in the entries of a generic m x n matrix.

A ring is the polynomial ring Q[x_ij : 1 <= i <= m, 1 <= j <= n], optionally
extended by named auxiliary variables (used for elimination).  Monomials are
dense exponent tuples laid out as ``aux + x_11, x_12, ..., x_1n, x_21, ...,
x_mn``.  With that layout, tuple comparison is exactly the lexicographic order
x_11 > x_12 > ... > x_mn, and auxiliary variables sit strictly above every
x_ij, which is the block elimination order.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, NamedTuple, Union

Coefficient = Union[int, Fraction]
Monomial = tuple  # dense exponent tuple, see module docstring


class RingMismatchError(ValueError):
    pass


@dataclass(frozen=True)
class MatrixShape:
    m: int
    n: int

    def __post_init__(self):
        if self.m < 1:
            raise ValueError(f"row count must be positive, got m={self.m}")
        if self.n < self.m:
            raise ValueError(f"need n >= m, got m={self.m}, n={self.n}")


@dataclass(frozen=True)
class RowMajorLex:
    """x_11 > x_12 > ... > x_1n > x_21 > ... > x_mn."""


@dataclass(frozen=True)
class BlockElimination:
    """Auxiliary variables first (lex among themselves), then RowMajorLex."""

    aux: tuple


MonomialOrder = Union[RowMajorLex, BlockElimination]


class Term(NamedTuple):
    coefficient: Fraction
    monomial: Monomial


class PolyRing:
    __slots__ = ("shape", "aux", "nvars", "_zero_exp")

    def __init__(self, shape: MatrixShape, aux: Iterable[str] = ()):
        aux = tuple(aux)
        if len(set(aux)) != len(aux):
            raise ValueError(f"duplicate auxiliary variable in {aux}")
        for name in aux:
            if not re.fullmatch(r"[a-wyzA-Z_]\w*", name):
                raise ValueError(f"bad auxiliary variable name {name!r}")
        self.shape = shape
        self.aux = aux
        self.nvars = len(aux) + shape.m * shape.n
        self._zero_exp = (0,) * self.nvars

    @classmethod
    def generic(cls, m: int, n: int, aux: Iterable[str] = ()) -> "PolyRing":
        return cls(MatrixShape(m, n), aux)

    @property
    def m(self) -> int:
        return self.shape.m

    @property
    def n(self) -> int:
        return self.shape.n

    @property
    def order(self) -> MonomialOrder:
        return BlockElimination(self.aux) if self.aux else RowMajorLex()

    def __eq__(self, other):
        return isinstance(other, PolyRing) and self.shape == other.shape and self.aux == other.aux

    def __hash__(self):
        return hash((self.shape, self.aux))

    def __repr__(self):
        extra = f", aux={self.aux}" if self.aux else ""
        return f"PolyRing(m={self.m}, n={self.n}{extra})"

    # -- variables ---------------------------------------------------------

    def index(self, i: int, j: int) -> int:
        if not (1 <= i <= self.m and 1 <= j <= self.n):
            raise IndexError(f"x[{i},{j}] outside a {self.m}x{self.n} matrix")
        return len(self.aux) + (i - 1) * self.n + (j - 1)

    def variable_name(self, k: int) -> str:
        naux = len(self.aux)
        if k < naux:
            return self.aux[k]
        i, j = divmod(k - naux, self.n)
        return f"x[{i + 1},{j + 1}]"

    def monomial(self, exponents: Mapping = None) -> Monomial:
        """Build a monomial from ``{(i, j): e}`` and/or ``{aux_name: e}``."""
        exp = list(self._zero_exp)
        for key, e in (exponents or {}).items():
            if e < 0:
                raise ValueError("negative exponent")
            if isinstance(key, str):
                exp[self.aux.index(key)] += e
            else:
                exp[self.index(*key)] += e
        return tuple(exp)

    def exponents(self, mono: Monomial) -> dict:
        """Sparse view of a monomial: ``{(i, j) or aux_name: e}`` with e >= 1."""
        out = {}
        naux = len(self.aux)
        for k, e in enumerate(mono):
            if e:
                if k < naux:
                    out[self.aux[k]] = e
                else:
                    i, j = divmod(k - naux, self.n)
                    out[(i + 1, j + 1)] = e
        return out

    def x(self, i: int, j: int) -> "Polynomial":
        exp = list(self._zero_exp)
        exp[self.index(i, j)] = 1
        return Polynomial(self, ((Fraction(1), tuple(exp)),))

    def aux_var(self, name: str) -> "Polynomial":
        exp = list(self._zero_exp)
        exp[self.aux.index(name)] = 1
        return Polynomial(self, ((Fraction(1), tuple(exp)),))

    def zero(self) -> "Polynomial":
        return Polynomial(self, ())

    def one(self) -> "Polynomial":
        return self.constant(1)

    def constant(self, c: Coefficient) -> "Polynomial":
        c = Fraction(c)
        return Polynomial(self, ((c, self._zero_exp),) if c else ())

    def from_terms(self, terms: Iterable) -> "Polynomial":
        """Canonicalise ``(coefficient, monomial)`` pairs, summing repeats."""
        acc: dict = {}
        for c, e in terms:
            if len(e) != self.nvars:
                raise RingMismatchError("monomial length does not match ring")
            acc[e] = acc.get(e, 0) + c
        return Polynomial.from_dict(self, acc)

    # -- ring extension ----------------------------------------------------

    def extend(self, *names: str) -> "PolyRing":
        """New ring with ``names`` prepended as the greatest variables."""
        return PolyRing(self.shape, names + self.aux)

    def base(self) -> "PolyRing":
        return PolyRing(self.shape)


class Polynomial:
    """Immutable polynomial; ``terms`` is strictly descending in the ring order."""

    __slots__ = ("ring", "terms")

    def __init__(self, ring: PolyRing, terms: tuple):
        self.ring = ring
        self.terms = terms

    @classmethod
    def from_dict(cls, ring: PolyRing, d: Mapping) -> "Polynomial":
        items = [(Fraction(c), e) for e, c in d.items() if c]
        items.sort(key=lambda t: t[1], reverse=True)
        return cls(ring, tuple(items))

    def to_dict(self) -> dict:
        return {e: c for c, e in self.terms}

    # -- basic queries -----------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self.ring == other.ring and self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            return self == self.ring.constant(other)
        return NotImplemented

    def __hash__(self):
        return hash((self.ring, self.terms))

    def leading_term(self) -> Term:
        if not self.terms:
            raise ValueError("the zero polynomial has no leading term")
        return Term(*self.terms[0])

    @property
    def lm(self) -> Monomial:
        return self.leading_term().monomial

    @property
    def lc(self) -> Fraction:
        return self.leading_term().coefficient

    def degree(self) -> int:
        return max((sum(e) for _, e in self.terms), default=-1)

    def variables_used(self) -> set:
        used = set()
        for _, e in self.terms:
            used.update(k for k, v in enumerate(e) if v)
        return used

    # -- arithmetic --------------------------------------------------------

    def _check(self, other: "Polynomial"):
        if self.ring != other.ring:
            raise RingMismatchError(f"{self.ring!r} vs {other.ring!r}")

    def _coerce(self, other) -> "Polynomial":
        if isinstance(other, Polynomial):
            self._check(other)
            return other
        if isinstance(other, (int, Fraction)):
            return self.ring.constant(other)
        raise TypeError(f"cannot combine Polynomial with {type(other).__name__}")

    def __add__(self, other):
        other = self._coerce(other)
        acc = self.to_dict()
        for c, e in other.terms:
            v = acc.get(e, 0) + c
            if v:
                acc[e] = v
            else:
                acc.pop(e, None)
        return Polynomial.from_dict(self.ring, acc)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial(self.ring, tuple((-c, e) for c, e in self.terms))

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            if not other:
                return self.ring.zero()
            return Polynomial(self.ring, tuple((c * other, e) for c, e in self.terms))
        other = self._coerce(other)
        acc: dict = {}
        for c1, e1 in self.terms:
            for c2, e2 in other.terms:
                e = tuple(a + b for a, b in zip(e1, e2))
                acc[e] = acc.get(e, 0) + c1 * c2
        return Polynomial.from_dict(self.ring, acc)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power")
        out = self.ring.one()
        for _ in range(k):
            out = out * self
        return out

    def mul_term(self, c: Coefficient, mono: Monomial) -> "Polynomial":
        """Multiply by ``c * mono``; order is preserved, so no re-sort."""
        if not c:
            return self.ring.zero()
        return Polynomial(
            self.ring,
            tuple((c * a, tuple(x + y for x, y in zip(e, mono))) for a, e in self.terms),
        )

    def monic(self) -> "Polynomial":
        if not self.terms:
            return self
        lc = self.terms[0][0]
        if lc == 1:
            return self
        return Polynomial(self.ring, tuple((c / lc, e) for c, e in self.terms))

    def substitute(self, images: Mapping[int, "Polynomial"]) -> "Polynomial":
        """Ring map sending variable index k to ``images[k]`` (others fixed)."""
        result = self.ring.zero()
        cache: dict = {}
        for c, e in self.terms:
            fixed = [0] * len(e)
            prod = None
            for k, d in enumerate(e):
                if not d:
                    continue
                if k in images:
                    key = (k, d)
                    if key not in cache:
                        cache[key] = images[k] ** d
                    prod = cache[key] if prod is None else prod * cache[key]
                else:
                    fixed[k] = d
            term = Polynomial(self.ring, ((c, tuple(fixed)),))
            result = result + (term if prod is None else term * prod)
        return result

    # -- moving between rings ----------------------------------------------

    def embed(self, ring: PolyRing) -> "Polynomial":
        """Image in an extension ring whose aux tuple ends with ours."""
        k = len(ring.aux) - len(self.ring.aux)
        if ring.shape != self.ring.shape or k < 0 or ring.aux[k:] != self.ring.aux:
            raise RingMismatchError(f"cannot embed {self.ring!r} into {ring!r}")
        pad = (0,) * k
        return Polynomial(ring, tuple((c, pad + e) for c, e in self.terms))

    def contract(self, ring: PolyRing) -> "Polynomial":
        """Inverse of :meth:`embed`; the dropped variables must not occur."""
        k = len(self.ring.aux) - len(ring.aux)
        if ring.shape != self.ring.shape or k < 0 or self.ring.aux[k:] != ring.aux:
            raise RingMismatchError(f"cannot contract {self.ring!r} to {ring!r}")
        out = []
        for c, e in self.terms:
            if any(e[:k]):
                raise ValueError("polynomial involves a variable being dropped")
            out.append((c, e[k:]))
        return Polynomial(ring, tuple(out))

    # -- text ----------------------------------------------------------------

    def __str__(self):
        return render(self)

    def __repr__(self):
        return f"Polynomial({render(self)!r})"


# -- module level operations -------------------------------------------------


def _order_key(mono: Monomial, order: MonomialOrder, naux: int) -> tuple:
    if isinstance(order, RowMajorLex):
        return mono[naux:] + mono[:naux]
    if isinstance(order, BlockElimination):
        if len(order.aux) != naux:
            raise RingMismatchError("elimination order does not match the ring's aux block")
        return mono
    raise TypeError(f"unknown monomial order {order!r}")


def compare_monomials(a: Monomial, b: Monomial, order: MonomialOrder = RowMajorLex(), naux: int = 0) -> int:
    """-1, 0 or 1 as ``a`` is smaller than, equal to, or greater than ``b``."""
    if len(a) != len(b):
        raise RingMismatchError("monomials from different rings")
    ka, kb = _order_key(a, order, naux), _order_key(b, order, naux)
    return (ka > kb) - (ka < kb)


def add(f: Polynomial, g: Polynomial) -> Polynomial:
    f._check(g)
    return f + g


def multiply(f: Polynomial, g: Polynomial) -> Polynomial:
    f._check(g)
    return f * g


def leading_term(f: Polynomial) -> Term:
    return f.leading_term()


def monomial_divides(a: Monomial, b: Monomial) -> bool:
    return all(x <= y for x, y in zip(a, b))


def monomial_lcm(a: Monomial, b: Monomial) -> Monomial:
    return tuple(x if x > y else y for x, y in zip(a, b))


def monomial_quotient(a: Monomial, b: Monomial) -> Monomial:
    return tuple(x - y for x, y in zip(a, b))


def coprime(a: Monomial, b: Monomial) -> bool:
    return not any(x and y for x, y in zip(a, b))


# -- canonical text ----------------------------------------------------------


def _fmt_coeff(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def render_monomial(ring: PolyRing, mono: Monomial) -> str:
    parts = []
    for k, e in enumerate(mono):
        if e:
            name = ring.variable_name(k)
            parts.append(name if e == 1 else f"{name}^{e}")
    return "*".join(parts) or "1"


def render(f: Polynomial) -> str:
    """e.g. ``x[1,1]*x[2,2] - x[1,2]*x[2,1]``; ``0`` for the zero polynomial."""
    if not f.terms:
        return "0"
    out = []
    for idx, (c, e) in enumerate(f.terms):
        sign = "-" if c < 0 else "+"
        a = abs(c)
        mono = render_monomial(f.ring, e)
        if not any(e):
            body = _fmt_coeff(a)
        elif a == 1:
            body = mono
        else:
            body = f"{_fmt_coeff(a)}*{mono}"
        if idx == 0:
            out.append(body if sign == "+" else f"-{body}")
        else:
            out.append(f" {sign} {body}")
    return "".join(out)


_TERM_SPLIT = re.compile(r"\s*([+-])\s*")
_FACTOR = re.compile(r"^(?:x\[(\d+),(\d+)\]|([A-Za-z_]\w*))(?:\^(\d+))?$")


def parse_polynomial(text: str, ring: PolyRing) -> Polynomial:
    """Inverse of :func:`render` (also accepts non-canonical term order)."""
    s = text.strip()
    if not s:
        raise ValueError("empty polynomial text")
    if s[0] not in "+-":
        s = "+" + s
    pieces = _TERM_SPLIT.split(s)[1:]
    if len(pieces) % 2:
        raise ValueError(f"cannot parse {text!r}")
    terms = []
    for sign, body in zip(pieces[::2], pieces[1::2]):
        if not body:
            raise ValueError(f"dangling sign in {text!r}")
        coeff = Fraction(1)
        exp = list(ring.monomial())
        for factor in body.split("*"):
            factor = factor.strip()
            if re.fullmatch(r"\d+(?:/\d+)?", factor):
                coeff *= Fraction(factor)
                continue
            mt = _FACTOR.match(factor)
            if not mt:
                raise ValueError(f"bad factor {factor!r} in {text!r}")
            e = int(mt.group(4) or 1)
            if mt.group(3):
                if mt.group(3) not in ring.aux:
                    raise ValueError(f"unknown variable {mt.group(3)!r}")
                exp[ring.aux.index(mt.group(3))] += e
            else:
                exp[ring.index(int(mt.group(1)), int(mt.group(2)))] += e
        terms.append((coeff if sign == "+" else -coeff, tuple(exp)))
    return ring.from_terms(terms)
