import random
from fractions import Fraction

import pytest
from hypothesis import strategies as st

from detfacet.polyring import PolyRing, Polynomial


def random_poly(rng: random.Random, ring: PolyRing, terms: int = 4, max_exp: int = 2) -> Polynomial:
    out = []
    for _ in range(terms):
        e = tuple(rng.randint(0, max_exp) if rng.random() < 0.4 else 0 for _ in range(ring.nvars))
        out.append((Fraction(rng.randint(-5, 5), rng.randint(1, 3)), e))
    return ring.from_terms(out)


@st.composite
def polynomials(draw, ring: PolyRing, max_terms: int = 4):
    k = draw(st.integers(0, max_terms))
    terms = []
    for _ in range(k):
        e = tuple(draw(st.lists(st.integers(0, 2), min_size=ring.nvars, max_size=ring.nvars)))
        c = Fraction(draw(st.integers(-4, 4)), draw(st.integers(1, 3)))
        terms.append((c, e))
    return ring.from_terms(terms)


@pytest.fixture
def ring23():
    return PolyRing.generic(2, 3)


@pytest.fixture
def ring35():
    return PolyRing.generic(3, 5)
