"""Buchberger's algorithm and the ideal operations built on it.

All computations use the order carried by the ring: plain row-major lex, or
block elimination when the ring has auxiliary variables.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from .polyring import (
    PolyRing,
    Polynomial,
    coprime,
    monomial_divides,
    monomial_lcm,
    monomial_quotient,
)

DEFAULT_MAX_PAIRS = 20_000
DEFAULT_MAX_VARS = 24
DEFAULT_MAX_GENERATORS = 40


class BudgetExceeded(RuntimeError):
    """Raised when a computation would exceed its configured work budget."""


@dataclass(frozen=True)
class Ideal:
    ring: PolyRing
    generators: tuple

    def __init__(self, ring: PolyRing, generators: Sequence[Polynomial] = ()):
        gens = []
        for g in generators:
            if g.ring != ring:
                raise ValueError(f"generator lives in {g.ring!r}, expected {ring!r}")
            if g:
                gens.append(g)
        object.__setattr__(self, "ring", ring)
        object.__setattr__(self, "generators", tuple(gens))


@dataclass(frozen=True)
class GroebnerBasis:
    ring: PolyRing
    elements: tuple
    pairs_processed: int = field(default=0, compare=False)

    def __iter__(self):
        return iter(self.elements)

    def __len__(self):
        return len(self.elements)

    def lines(self) -> list:
        return [str(g) for g in self.elements]


@dataclass
class Budget:
    max_pairs: int = DEFAULT_MAX_PAIRS
    max_vars: int = DEFAULT_MAX_VARS
    max_generators: int = DEFAULT_MAX_GENERATORS

    def check_input(self, ideal: Ideal):
        if ideal.ring.nvars > self.max_vars:
            raise BudgetExceeded(f"{ideal.ring.nvars} variables > cap {self.max_vars}")
        if len(ideal.generators) > self.max_generators:
            raise BudgetExceeded(f"{len(ideal.generators)} generators > cap {self.max_generators}")


def _budget(budget: Budget = None, **kw) -> Budget:
    if budget is not None:
        return budget
    return Budget(**kw)


def _reduce_dict(p: dict, basis: Sequence[Polynomial]) -> dict:
    """Full normal form of the polynomial held in ``p`` (consumed)."""
    r = {}
    heads = [(g.terms[0][1], g.terms[0][0], g.terms[1:]) for g in basis]
    while p:
        lm = max(p)
        c = p.pop(lm)
        for hm, hc, tail in heads:
            if monomial_divides(hm, lm):
                q = monomial_quotient(lm, hm)
                factor = c / hc
                for a, e in tail:
                    key = tuple(x + y for x, y in zip(e, q))
                    v = p.get(key, 0) - factor * a
                    if v:
                        p[key] = v
                    else:
                        p.pop(key, None)
                break
        else:
            r[lm] = c
    return r


def reduce(f: Polynomial, basis: Sequence[Polynomial]) -> Polynomial:
    """Normal form of ``f``: greatest reducible term first, first eligible divisor.

    The remainder has no term divisible by a leading monomial of ``basis``.
    """
    for g in basis:
        if not g:
            raise ValueError("basis contains the zero polynomial")
        if g.ring != f.ring:
            raise ValueError("basis and polynomial live in different rings")
    if not f:
        return f
    return Polynomial.from_dict(f.ring, _reduce_dict(f.to_dict(), basis))


def reduce_with_quotients(f: Polynomial, basis: Sequence[Polynomial]):
    """Like :func:`reduce` but also return cofactors q with f = sum q_i b_i + r."""
    ring = f.ring
    quots = [dict() for _ in basis]
    p = f.to_dict()
    r = {}
    while p:
        lm = max(p)
        c = p.pop(lm)
        for idx, g in enumerate(basis):
            hc, hm = g.terms[0]
            if monomial_divides(hm, lm):
                q = monomial_quotient(lm, hm)
                factor = c / hc
                quots[idx][q] = quots[idx].get(q, 0) + factor
                for a, e in g.terms[1:]:
                    key = tuple(x + y for x, y in zip(e, q))
                    v = p.get(key, 0) - factor * a
                    if v:
                        p[key] = v
                    else:
                        p.pop(key, None)
                break
        else:
            r[lm] = c
    return [Polynomial.from_dict(ring, q) for q in quots], Polynomial.from_dict(ring, r)


def s_polynomial(f: Polynomial, g: Polynomial) -> Polynomial:
    if not f or not g:
        raise ValueError("S-polynomial of the zero polynomial")
    (cf, mf), (cg, mg) = f.terms[0], g.terms[0]
    lcm = monomial_lcm(mf, mg)
    return f.mul_term(1 / cf, monomial_quotient(lcm, mf)) - g.mul_term(1 / cg, monomial_quotient(lcm, mg))


def _pair_key(basis, i, j):
    lcm = monomial_lcm(basis[i].terms[0][1], basis[j].terms[0][1])
    return (sum(lcm), lcm, i, j)


def buchberger(ideal: Ideal, budget: Budget = None, **kw) -> GroebnerBasis:
    """Reduced Groebner basis via the normal selection strategy.

    Pairs with coprime leading monomials are skipped (Buchberger's first
    criterion).  Raises :class:`BudgetExceeded` past ``max_pairs`` reductions.
    """
    budget = _budget(budget, **kw)
    budget.check_input(ideal)
    ring = ideal.ring
    G = [g.monic() for g in ideal.generators]
    if any(not any(e) for g in G for _, e in g.terms[:1]):
        return GroebnerBasis(ring, (ring.one(),), 0)
    pairs = {(i, j): _pair_key(G, i, j) for j in range(len(G)) for i in range(j)}
    processed = 0
    while pairs:
        (i, j) = min(pairs, key=pairs.__getitem__)
        del pairs[(i, j)]
        if coprime(G[i].terms[0][1], G[j].terms[0][1]):
            continue
        processed += 1
        if processed > budget.max_pairs:
            raise BudgetExceeded(f"more than {budget.max_pairs} S-pair reductions")
        h = Polynomial.from_dict(ring, _reduce_dict(s_polynomial(G[i], G[j]).to_dict(), G))
        if not h:
            continue
        h = h.monic()
        if not any(h.terms[0][1]):
            return GroebnerBasis(ring, (ring.one(),), processed)
        G.append(h)
        k = len(G) - 1
        for t in range(k):
            pairs[(t, k)] = _pair_key(G, t, k)
    return GroebnerBasis(ring, tuple(_interreduce(G)), processed)


def _interreduce(G: Sequence[Polynomial]) -> list:
    # minimal basis: drop elements whose leading monomial is divisible by another's
    keep = []
    for idx, g in enumerate(G):
        lm = g.terms[0][1]
        redundant = False
        for jdx, h in enumerate(G):
            if jdx == idx:
                continue
            hm = h.terms[0][1]
            if monomial_divides(hm, lm) and (hm != lm or jdx < idx):
                redundant = True
                break
        if not redundant:
            keep.append(g)
    out = []
    for idx, g in enumerate(keep):
        others = keep[:idx] + keep[idx + 1:]
        head = Polynomial(g.ring, g.terms[:1])
        tail = Polynomial(g.ring, g.terms[1:])
        out.append((head + reduce(tail, others)).monic())
    out.sort(key=lambda g: g.terms[0][1], reverse=True)
    return out


def groebner_basis(ideal: Ideal, budget: Budget = None, **kw) -> GroebnerBasis:
    return buchberger(ideal, budget, **kw)


def is_groebner_basis(gens: Sequence[Polynomial], budget: Budget = None, **kw) -> bool:
    """Buchberger's criterion on ``gens`` as given, without completing."""
    budget = _budget(budget, **kw)
    gens = [g for g in gens if g]
    if not gens:
        return True
    budget.check_input(Ideal(gens[0].ring, gens))
    processed = 0
    for j in range(len(gens)):
        for i in range(j):
            if coprime(gens[i].terms[0][1], gens[j].terms[0][1]):
                continue
            processed += 1
            if processed > budget.max_pairs:
                raise BudgetExceeded(f"more than {budget.max_pairs} S-pair reductions")
            if _reduce_dict(s_polynomial(gens[i], gens[j]).to_dict(), gens):
                return False
    return True


def ideal_membership(f: Polynomial, ideal: Ideal, budget: Budget = None, **kw) -> bool:
    if not f:
        return True
    gb = buchberger(ideal, budget, **kw)
    if not gb.elements:
        return False
    return not reduce(f, gb.elements)


def eliminate(ideal: Ideal, aux: Sequence[str] = None, budget: Budget = None, **kw) -> Ideal:
    """Intersection of ``ideal`` with the subring free of the leading aux variables.

    ``aux`` defaults to every auxiliary variable of the ring; when given it
    must be a leading block of ``ideal.ring.aux``.
    """
    ring = ideal.ring
    aux = tuple(ring.aux if aux is None else aux)
    if ring.aux[: len(aux)] != aux:
        raise ValueError(f"{aux} is not a leading block of {ring.aux}")
    target = PolyRing(ring.shape, ring.aux[len(aux):])
    gb = buchberger(ideal, budget, **kw)
    k = len(aux)
    kept = [g.contract(target) for g in gb.elements if not any(any(e[:k]) for _, e in g.terms)]
    return Ideal(target, kept)


def _fresh(ring: PolyRing, stem: str) -> str:
    name, k = stem, 0
    while name in ring.aux:
        k += 1
        name = f"{stem}{k}"
    return name


def saturate_by(ideal: Ideal, f: Polynomial, budget: Budget = None, **kw) -> Ideal:
    """I : f^inf, computed as (I + (z f - 1)) intersected with the original ring."""
    if f.ring != ideal.ring:
        raise ValueError("f and ideal live in different rings")
    ring = ideal.ring
    z = _fresh(ring, "z")
    ext = ring.extend(z)
    gens = [g.embed(ext) for g in ideal.generators]
    gens.append(ext.aux_var(z) * f.embed(ext) - 1)
    return eliminate(Ideal(ext, gens), (z,), budget, **kw)


def intersect(a: Ideal, b: Ideal, budget: Budget = None, **kw) -> Ideal:
    """a cap b = (t a + (1 - t) b) cap ring."""
    ring = a.ring
    t = _fresh(ring, "t")
    ext = ring.extend(t)
    tv = ext.aux_var(t)
    gens = [tv * g.embed(ext) for g in a.generators]
    gens += [(1 - tv) * g.embed(ext) for g in b.generators]
    return eliminate(Ideal(ext, gens), (t,), budget, **kw)


def exact_divide(g: Polynomial, f: Polynomial) -> Polynomial:
    (q,), r = reduce_with_quotients(g, [f])
    if r:
        raise ArithmeticError(f"{f} does not divide {g}")
    return q


def colon(ideal: Ideal, f: Polynomial, budget: Budget = None, **kw) -> Ideal:
    """I : f = (I cap (f)) / f."""
    if not f:
        raise ValueError("colon by the zero polynomial")
    inter = intersect(ideal, Ideal(ideal.ring, [f]), budget, **kw)
    return Ideal(ideal.ring, [exact_divide(g, f) for g in inter.generators])


def same_ideal(a: Ideal, b: Ideal, budget: Budget = None, **kw) -> bool:
    ga = buchberger(a, budget, **kw).elements
    gb = buchberger(b, budget, **kw).elements
    return ga == gb


def is_regular_element(f: Polynomial, ideal: Ideal, budget: Budget = None, **kw) -> bool:
    """True iff f is a nonzerodivisor on S/I, i.e. I : f == I."""
    if not f:
        raise ValueError("the zero polynomial is never regular")
    return same_ideal(colon(ideal, f, budget, **kw), ideal, budget, **kw)
