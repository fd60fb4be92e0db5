"""Random generators shared by the test modules."""

from __future__ import annotations

import random
from fractions import Fraction

from hypothesis import strategies as st

from numerositas.errors import Unsupported
from numerositas.euclid import ALPHA, Value
from numerositas.numerosity import count_form
from numerositas.setlang import (
    Diff,
    FFin,
    Finite,
    Integers,
    Intersect,
    IntProg,
    Naturals,
    Naturals0,
    NatProg,
    PFin,
    Powers,
    Product,
    QInterval,
    Rationals,
    RInterval,
    Union,
    NatAdd,
    NatMul,
    Nat,
    Omega,
    OrdAdd,
    OrdMul,
    OrdPow,
    Theta,
)

# steps whose primes are 2 and 3, so closed forms hold from level 3 on
STEPS = (1, 2, 3, 4, 6)
DENOMS = (1, 2, 4)


def small_rational(rng: random.Random, span: int = 3) -> Fraction:
    return Fraction(rng.randint(-span * 4, span * 4), rng.choice(DENOMS))


def random_interval(rng: random.Random, cls=QInterval):
    p = small_rational(rng)
    q = p + Fraction(rng.randint(0, 8), rng.choice(DENOMS))
    if p == q:
        return cls(p, q, True, True)
    return cls(p, q, rng.random() < 0.5, rng.random() < 0.5)


def random_number_atom(rng: random.Random, allow_q: bool = True):
    roll = rng.randrange(10 if allow_q else 9)
    if roll == 0:
        return Naturals()
    if roll == 1:
        return Naturals0()
    if roll == 2:
        return Integers()
    if roll == 3:
        return NatProg(rng.randint(0, 10), rng.choice(STEPS))
    if roll == 4:
        return IntProg(rng.randint(-5, 5), rng.choice(STEPS))
    if roll == 5:
        return Powers(rng.randint(1, 3))
    if roll == 6:
        return random_interval(rng)
    if roll in (7, 8):
        return Finite(tuple(small_rational(rng) for _ in range(rng.randint(0, 5))))
    return Rationals()


def random_small_set(rng: random.Random):
    """A number set with at most a handful of elements at every level."""
    if rng.random() < 0.5:
        return Finite(tuple(Fraction(rng.randint(0, 4)) for _ in range(rng.randint(0, 3))))
    p = Fraction(rng.randint(0, 4), rng.choice(DENOMS))
    return QInterval(p, p, True, True)


def random_number_set(rng: random.Random, depth: int = 2):
    if depth <= 0 or rng.random() < 0.3:
        return random_number_atom(rng)
    cls = rng.choice((Union, Intersect, Diff))
    return cls(random_number_set(rng, depth - 1), random_number_set(rng, depth - 1))


def random_composite(rng: random.Random, depth: int = 2):
    """A supported set expression of any sort."""
    while True:
        roll = rng.random()
        if roll < 0.55:
            e = random_number_set(rng, depth)
        elif roll < 0.7:
            e = Product(random_number_atom(rng, allow_q=False), random_small_set(rng))
        elif roll < 0.8:
            e = PFin(random_small_set(rng))
        elif roll < 0.88:
            e = FFin(random_small_set(rng), random_small_set(rng))
        else:
            a = Product(random_small_set(rng), random_small_set(rng))
            b = Product(random_small_set(rng), random_small_set(rng))
            e = rng.choice((Union, Intersect, Diff))(a, b)
        try:
            count_form(e)
        except Unsupported:
            continue
        return e


def random_plurinterval_pieces(rng: random.Random, k: int | None = None):
    return [random_interval(rng, RInterval) for _ in range(rng.randint(0, 4) if k is None else k)]


# ---------------------------------------------------------------------------
# hypothesis strategies

seeds = st.integers(min_value=0, max_value=2**32 - 1)
composites = seeds.map(lambda s: random_composite(random.Random(s)))

rationals = st.fractions(min_value=-50, max_value=50, max_denominator=12)
exponents = st.sampled_from([Fraction(0), Fraction(1, 2), Fraction(1), Fraction(3, 2), Fraction(2), Fraction(1, 3), Fraction(3)])


@st.composite
def puiseux(draw, max_terms: int = 4, beta: bool = False):
    """A value that is a sum of monomials c * a^p (* b^q)."""
    v = Value()
    for _ in range(draw(st.integers(0, max_terms))):
        c = draw(st.fractions(min_value=-20, max_value=20, max_denominator=6))
        b = draw(st.integers(0, 2)) if beta else 0
        v = v + Value.monomial(c, draw(exponents), b)
    return v


@st.composite
def alpha_polys(draw, max_terms: int = 4):
    """Pure a-polynomials with integer or half-integer exponents."""
    v = Value()
    for _ in range(draw(st.integers(0, max_terms))):
        c = draw(st.fractions(min_value=-30, max_value=30, max_denominator=4))
        e = draw(st.sampled_from([Fraction(0), Fraction(1, 2), Fraction(1), Fraction(3, 2), Fraction(2), Fraction(3)]))
        v = v + Value.monomial(c, e)
    return v


def _set_tree(children):
    binary = st.sampled_from([Union, Intersect, Diff, Product, FFin])
    return st.one_of(
        st.builds(lambda c, a, b: c(a, b), binary, children, children),
        st.builds(PFin, children),
    )


set_atoms = st.one_of(
    st.sampled_from([Naturals(), Naturals0(), Integers(), Rationals()]),
    st.builds(Finite, st.lists(rationals, max_size=4).map(tuple)),
    st.builds(NatProg, st.integers(0, 40), st.integers(1, 30)),
    st.builds(IntProg, st.integers(-40, 40), st.integers(1, 30)),
    st.builds(Powers, st.integers(1, 6)),
    st.builds(
        lambda p, d, lc, rc, cls: cls(p, p + d, lc, rc) if d else cls(p, p, True, True),
        rationals,
        st.fractions(min_value=0, max_value=10, max_denominator=8),
        st.booleans(),
        st.booleans(),
        st.sampled_from([QInterval, RInterval]),
    ),
)
set_exprs = st.recursive(set_atoms, _set_tree, max_leaves=8)

ord_atoms = st.one_of(
    st.just(Omega()),
    st.builds(Nat, st.integers(0, 20)),
    st.builds(Theta, st.integers(0, 3)),
)
ord_exprs = st.recursive(
    ord_atoms,
    lambda c: st.builds(lambda k, a, b: k(a, b), st.sampled_from([OrdAdd, OrdMul, OrdPow, NatAdd, NatMul]), c, c),
    max_leaves=6,
)


def random_alpha_value(rng: random.Random, terms: int = 3) -> Value:
    v = Value()
    for _ in range(rng.randint(1, terms)):
        c = Fraction(rng.randint(-40, 40), rng.choice((1, 2, 3, 1000)))
        e = rng.choice((Fraction(0), Fraction(1, 2), Fraction(1), Fraction(3, 2), Fraction(2), Fraction(1, 3), Fraction(5, 2)))
        v = v + Value.monomial(c, e)
    return v


__all__ = ["ALPHA"]
