import itertools
from math import comb

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from detfacet.complexes import clique_decomposition, find_closed_labeling, iter_complexes, relabel, validate
from detfacet.groebner import Ideal, buchberger
from detfacet.invariants import (
    HilbertData,
    clique_hilbert_factor,
    divide_one_minus_t,
    height_formula,
    hilbert_series_closed,
    min_vertex_cover,
    minor_algebra_dimension,
    monomial_dimension,
    monomial_height,
    monomial_hilbert_data,
    monomial_hilbert_numerator,
    multiplicity_formula,
    reduce_series,
    tpoly_mul,
    tpoly_str,
)
from detfacet.minors import diagonal_monomial, facet_ideal_generators, facet_minor
from detfacet.polyring import PolyRing

INTRO = validate(7, 3, [(1, 2, 3), (1, 2, 4), (1, 3, 4), (2, 3, 4), (3, 4, 5), (5, 6, 7)])


def diagonals(cx, ring=None):
    ring = ring or PolyRing.generic(cx.m, cx.n)
    return [diagonal_monomial(facet_minor(F, cx.m), ring) for F in cx.facets]


def initial_ideal(cx):
    ring = PolyRing.generic(cx.m, cx.n)
    return [g.lm for g in buchberger(Ideal(ring, facet_ideal_generators(cx, ring)))], ring.nvars


def test_tpoly_helpers():
    assert divide_one_minus_t([1, 0, -3, 2]) == [1, 1, -2]
    with pytest.raises(ArithmeticError):
        divide_one_minus_t([1, 1])
    assert tpoly_str([1, -3, 0, 2]) == "1 - 3t + 2t^3"
    assert tpoly_str([]) == "0"


def test_monomial_dimension_examples():
    two = validate(4, 3, [(1, 2, 3), (2, 3, 4)])
    assert monomial_dimension(diagonals(two), 12) == 10
    assert monomial_dimension([], 9) == 9
    gens, nv = initial_ideal(validate(6, 3, [(1, 2, 3), (2, 3, 6), (3, 4, 5)]))
    assert nv - monomial_dimension(gens, nv) == 3


def test_min_vertex_cover_brute_force():
    for k in range(1, 6):
        for edges in itertools.combinations(itertools.combinations(range(5), 2), k):
            edges = [frozenset(e) for e in edges]
            best = min(
                len(S) for r in range(6) for S in itertools.combinations(range(5), r)
                if all(e & set(S) for e in edges)
            )
            assert min_vertex_cover(edges) == best


def test_numerator_examples():
    R = PolyRing.generic(2, 3)
    d = lambda *cols: diagonal_monomial(facet_minor(cols, 2), R)
    assert monomial_hilbert_numerator([d(1, 2)]) == [1, 0, -1]
    assert monomial_hilbert_numerator([d(1, 2), d(1, 3), d(2, 3)]) == [1, 0, -3, 2]
    assert monomial_hilbert_numerator([]) == [1]


def test_reduce_series_examples():
    assert reduce_series([1, 0, -3, 2], 6) == HilbertData((1, 2), 4, 2, 3)
    assert reduce_series([1, 0, -1], 4) == HilbertData((1, 1), 3, 1, 2)
    assert reduce_series([1], 5) == HilbertData((1,), 5, 0, 1)
    with pytest.raises(ValueError):
        reduce_series([], 3)


def brute_hilbert(gens, nvars, upto):
    """Count standard monomials degree by degree."""
    out = []
    for deg in range(upto):
        cnt = 0
        for e in itertools.combinations_with_replacement(range(nvars), deg):
            v = [0] * nvars
            for k in e:
                v[k] += 1
            if not any(all(a <= b for a, b in zip(g, v)) for g in gens):
                cnt += 1
        out.append(cnt)
    return out


def series_coeffs(numerator, d, upto):
    # expand Q(t) / (1 - t)^d
    out = []
    for k in range(upto):
        out.append(sum(c * comb(k - i + d - 1, d - 1) for i, c in enumerate(numerator) if i <= k) if d else
                   (numerator[k] if k < len(numerator) else 0))
    return out


@settings(max_examples=40, deadline=None)
@given(st.lists(st.lists(st.integers(0, 2), min_size=4, max_size=4).map(tuple), min_size=0, max_size=4))
def test_numerator_matches_standard_monomial_count(gens):
    gens = [g for g in gens if any(g)]
    data = monomial_hilbert_data(gens, 4)
    assert series_coeffs(list(data.numerator), data.denominator_exponent, 6) == brute_hilbert(gens, 4, 6)
    assert data.height == monomial_height(gens) if gens else data.height == 0


def test_height_formula_examples():
    dec = clique_decomposition(INTRO)
    assert height_formula(dec, 3) == 4
    gens, nv = initial_ideal(INTRO)
    assert nv - monomial_dimension(gens, nv) == 4
    assert height_formula(clique_decomposition(validate(4, 3, [(1, 2, 3), (2, 3, 4)])), 3) == 2
    full = validate(5, 2, list(itertools.combinations(range(1, 6), 2)))
    assert height_formula(clique_decomposition(full), 2) == 5 - 2 + 1


def test_clique_factor_examples():
    assert clique_hilbert_factor(2, 3) == [1, 2]
    assert clique_hilbert_factor(2, 2) == [1, 1]
    assert clique_hilbert_factor(3, 3) == [1, 1, 1]


@pytest.mark.parametrize("m", [2, 3, 4, 5])
def test_clique_factor_division_is_exact(m):
    for n in range(m, 9):
        q = clique_hilbert_factor(m, n)
        assert sum(q) == comb(n, m - 1)


@pytest.mark.parametrize("m,n", [(2, 3), (2, 4), (2, 5), (3, 4), (3, 5), (4, 5), (3, 6)])
def test_clique_factor_matches_oracle(m, n):
    full = validate(n, m, list(itertools.combinations(range(1, n + 1), m)))
    gens, nv = initial_ideal(full)
    data = monomial_hilbert_data(gens, nv)
    assert list(data.numerator) == clique_hilbert_factor(m, n)
    assert data.height == n - m + 1


def test_closed_series_examples():
    two = validate(4, 3, [(1, 2, 3), (2, 3, 4)])
    data = hilbert_series_closed(clique_decomposition(two), 3, 4)
    assert list(data.numerator) == tpoly_mul([1, 1, 1], [1, 1, 1]) and data.denominator_exponent == 10
    assert monomial_hilbert_data(diagonals(two), 12) == data
    single = validate(3, 2, [(1, 2), (1, 3), (2, 3)])
    assert hilbert_series_closed(clique_decomposition(single), 2, 3) == HilbertData((1, 2), 4, 2, 3)
    facet = validate(2, 2, [(1, 2)])
    assert hilbert_series_closed(clique_decomposition(facet), 2, 2) == HilbertData((1, 1), 3, 1, 2)


def test_multiplicity_examples():
    assert multiplicity_formula(clique_decomposition(INTRO), 3) == 54
    assert hilbert_series_closed(clique_decomposition(INTRO), 3, 7).multiplicity == 54
    assert multiplicity_formula(clique_decomposition(validate(3, 2, [(1, 2), (1, 3), (2, 3)])), 2) == 3
    assert multiplicity_formula(clique_decomposition(validate(4, 4, [(1, 2, 3, 4)])), 4) == 4


def test_minor_algebra_dimension_examples():
    assert minor_algebra_dimension(clique_decomposition(INTRO), 3) == 6
    full = validate(5, 2, list(itertools.combinations(range(1, 6), 2)))
    assert minor_algebra_dimension(clique_decomposition(full), 2) == 2 * 3 + 1
    assert minor_algebra_dimension(clique_decomposition(validate(6, 3, [(1, 2, 3), (4, 5, 6)])), 3) == 2


@pytest.mark.slow
@pytest.mark.parametrize("m", [2, 3])
def test_formula_matches_oracle_on_closed_family(m):
    n = 6
    checked = 0
    for cx in iter_complexes(n, m, 4):
        dec = clique_decomposition(cx)
        if dec.r > 4:
            continue
        s = find_closed_labeling(cx)
        if not s.found:
            continue
        lab = relabel(cx, s.labeling)
        ring = PolyRing.generic(m, n)
        oracle = monomial_hilbert_data(diagonals(lab, ring), ring.nvars)
        assert oracle == hilbert_series_closed(dec, m, n), cx
        assert oracle.height == height_formula(dec, m)
        assert oracle.multiplicity == multiplicity_formula(dec, m)
        checked += 1
    assert checked > 100
