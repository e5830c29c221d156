import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from detfacet.minors import MinorSpec, expand_minor
from detfacet.polyring import (
    BlockElimination,
    MatrixShape,
    PolyRing,
    RingMismatchError,
    RowMajorLex,
    add,
    compare_monomials,
    leading_term,
    multiply,
    parse_polynomial,
    render,
)

from conftest import polynomials

R = PolyRing.generic(2, 3)
R5 = PolyRing.generic(3, 5)


def mono(ring, *pairs):
    return ring.monomial({p: 1 for p in pairs})


def test_shape_requires_n_at_least_m():
    MatrixShape(2, 2)
    with pytest.raises(ValueError):
        MatrixShape(3, 2)
    with pytest.raises(ValueError):
        MatrixShape(0, 4)


def test_compare_examples():
    a = mono(R5, (1, 1), (2, 2), (3, 3))
    b = mono(R5, (1, 2), (2, 3), (3, 4))
    assert compare_monomials(a, b) == 1
    assert compare_monomials(a, a) == 0
    assert compare_monomials(mono(R5, (1, 1)), mono(R5, (2, 1))) == 1
    assert compare_monomials(mono(R5, (1, 5)), mono(R5, (2, 1))) == 1


def test_compare_rejects_other_ring():
    with pytest.raises(RingMismatchError):
        compare_monomials(mono(R, (1, 1)), mono(R5, (1, 1)))


def test_block_elimination_puts_aux_first():
    ring = R.extend("z")
    z = ring.monomial({"z": 1})
    big = ring.monomial({(1, 1): 5})
    assert compare_monomials(z, big, BlockElimination(("z",)), 1) == 1
    assert compare_monomials(z, big, RowMajorLex(), 1) == -1


def test_add_examples():
    f = R.x(1, 1) * R.x(2, 2) - R.x(1, 2) * R.x(2, 1)
    assert add(f, R.zero()) == f
    assert not add(f, -f)
    assert add(f, R.x(1, 2) * R.x(2, 1)) == R.x(1, 1) * R.x(2, 2)


def test_multiply_examples():
    a, b = R.x(1, 1), R.x(1, 2)
    assert multiply(a + b, a - b) == a * a - b * b
    minor = expand_minor(MinorSpec.maximal((1, 2)), R)
    assert multiply(minor, R.one()) == minor
    expected = parse_polynomial(
        "x[1,1]^2*x[2,2]^2 - 2*x[1,1]*x[1,2]*x[2,1]*x[2,2] + x[1,2]^2*x[2,1]^2", R
    )
    assert minor * minor == expected


def test_leading_terms_of_minors():
    t = leading_term(expand_minor(MinorSpec.maximal((1, 2, 3)), R5))
    assert t.coefficient == 1 and t.monomial == mono(R5, (1, 1), (2, 2), (3, 3))
    t = leading_term(expand_minor(MinorSpec.maximal((3, 4, 5)), R5))
    assert t.coefficient == 1 and t.monomial == mono(R5, (1, 3), (2, 4), (3, 5))
    assert leading_term(R5.x(1, 1)).monomial == mono(R5, (1, 1))
    with pytest.raises(ValueError):
        leading_term(R5.zero())


def test_render_format():
    f = expand_minor(MinorSpec.maximal((1, 2)), R)
    assert render(f) == "x[1,1]*x[2,2] - x[1,2]*x[2,1]"
    assert str(R.zero()) == "0"
    g = R.x(1, 3) * Fraction(-3, 2) + 7
    assert str(g) == "-3/2*x[1,3] + 7"


def test_mixed_rings_rejected():
    with pytest.raises(RingMismatchError):
        R.x(1, 1) + R5.x(1, 1)


def test_terms_strictly_descending():
    rng = random.Random(3)
    for _ in range(50):
        f = R5.from_terms(
            (Fraction(rng.randint(-3, 3)), tuple(rng.randint(0, 2) for _ in range(R5.nvars))) for _ in range(6)
        )
        mons = [e for _, e in f.terms]
        assert all(compare_monomials(a, b) == 1 for a, b in zip(mons, mons[1:]))
        assert all(c != 0 for c, _ in f.terms)


monos = st.lists(st.integers(0, 3), min_size=R.nvars, max_size=R.nvars).map(tuple)


@given(monos, monos, monos)
def test_order_is_a_monomial_order(a, b, c):
    assert compare_monomials(a, b) == -compare_monomials(b, a)
    if compare_monomials(a, b) <= 0 and compare_monomials(b, c) <= 0:
        assert compare_monomials(a, c) <= 0
    one = (0,) * R.nvars
    assert compare_monomials(one, a) <= 0
    shift = lambda m: tuple(x + y for x, y in zip(m, c))
    assert compare_monomials(shift(a), shift(b)) == compare_monomials(a, b)


@settings(max_examples=60)
@given(polynomials(R), polynomials(R), polynomials(R))
def test_ring_axioms(f, g, h):
    assert (f + g) + h == f + (g + h)
    assert (f * g) * h == f * (g * h)
    assert f * (g + h) == f * g + f * h
    assert f + g == g + f and f * g == g * f
    assert f - f == R.zero()


@settings(max_examples=60)
@given(polynomials(R), polynomials(R))
def test_leading_term_multiplicative(f, g):
    if not f or not g:
        return
    tf, tg, tp = f.leading_term(), g.leading_term(), (f * g).leading_term()
    assert tp.coefficient == tf.coefficient * tg.coefficient
    assert tp.monomial == tuple(x + y for x, y in zip(tf.monomial, tg.monomial))


@settings(max_examples=80)
@given(polynomials(R.extend("z"), max_terms=6))
def test_render_parse_roundtrip(f):
    back = parse_polynomial(render(f), f.ring)
    assert back.terms == f.terms


def test_parse_rejects_garbage():
    for bad in ["", "x[9,9]", "x[1,1]**2", "y + 1", "3 +"]:
        with pytest.raises((ValueError, IndexError)):
            parse_polynomial(bad, R)


def test_substitute_and_embed():
    ring = R.extend("z")
    f = R.x(1, 1) * R.x(2, 2)
    g = f.embed(ring)
    assert g.contract(R) == f
    img = g.substitute({ring.index(1, 1): ring.x(1, 1) + ring.aux_var("z")})
    assert str(img) == "z*x[2,2] + x[1,1]*x[2,2]"
    with pytest.raises(ValueError):
        img.contract(R)
