"""End-to-end acceptance checks, one test per criterion.

Each test prints a single ``criterion N: PASS`` or ``criterion N: FAIL`` line
to the terminal, even when pytest captures output.
"""

import contextlib
import itertools
import random
from fractions import Fraction as F

import pytest

from numerositas import labels
from numerositas.euclid import (
    ALPHA,
    Comparison,
    admissible,
    certified_level,
    compare as value_compare,
    divide,
    evaluate_at_level,
    power,
    standard_part,
)
from numerositas.measure import PlurInterval, Piece, lebesgue_measure, mu, pj_measure
from numerositas.numerosity import count_form, num, verify
from numerositas.ordinal import (
    OMEGA,
    ONE,
    compare as ordinal_compare,
    embed,
    from_theta_base,
    is_irreducible,
    nat_add,
    nat_mul,
    ord_add,
    random_below,
    random_ordinal,
    theta,
    to_theta_base,
)
from numerositas.euclid import BETA
from numerositas.setlang import (
    Diff,
    FFin,
    Finite,
    Integers,
    IntProg,
    Naturals,
    Naturals0,
    NatProg,
    PFin,
    Powers,
    Product,
    QInterval,
    Rationals,
)

from _gen import random_composite, random_plurinterval_pieces

a = ALPHA


@pytest.fixture
def criterion(capsys):
    @contextlib.contextmanager
    def run(number, title):
        ok = False
        try:
            yield
            ok = True
        finally:
            with capsys.disabled():
                print(f"\ncriterion {number}: {'PASS' if ok else 'FAIL'} - {title}")

    return run


def test_criterion_1_closed_form_table(criterion):
    with criterion(1, "closed-form numerosity table"):
        assert num(Naturals()) == a
        assert num(Naturals0()) == a + 1
        for k in range(1, 21):
            assert num(NatProg(k, k)) == a.scale(F(1, k))
        for k in range(1, 6):
            assert num(Powers(k)) == power(a, F(1, k))
        assert num(Integers()) == 2 * a + 1
        assert num(Diff(Integers(), Naturals0())) == a
        assert num(Diff(Integers(), Diff(Integers(), Naturals()))) == a
        assert num(Rationals()) == 2 * a**2 + 1
        for n in range(0, 11):
            assert num(QInterval(F(n), F(n + 1), True, False)) == a
        assert num(PFin(Naturals())) == power(2, a)


def _base_generators():
    yield from (Naturals(), Naturals0(), Integers(), Rationals())
    for d in (1, 2, 3, 4, 6):
        yield NatProg(d, d)
        yield NatProg(5, d)
        yield IntProg(1, d)
        yield IntProg(0, d)
    for k in (1, 2, 3):
        yield Powers(k)
    yield QInterval(F(0), F(1, 2), True, False)
    yield QInterval(F(-1), F(3, 2), False, True)
    yield Finite((F(1), F(2), F(5, 2)))
    yield Product(Naturals0(), Naturals())
    yield PFin(Finite((F(1), F(2), F(3))))
    yield PFin(Naturals())
    yield FFin(Finite((F(1), F(2))), Finite((F(0), F(1), F(2))))
    yield FFin(Naturals(), Finite((F(0), F(1))))


def _oracle_check(e):
    top = 2 if "Q" in str(e) else 3
    rep = verify(e, top)
    assert rep.passed, rep.text()
    return rep.checked


def test_criterion_2_oracle_equivalence(criterion):
    with criterion(2, "brute counts equal closed forms (base generators + 500 composites)"):
        checks = sum(_oracle_check(e) for e in _base_generators())
        rng = random.Random(20240)
        for _ in range(500):
            checks += _oracle_check(random_composite(rng))
        assert checks > 500


def test_criterion_3_finite_parts_at_level_two(criterion):
    with criterion(3, "all 16 finite subsets of {1,2,3,4} at level 2"):
        n2 = labels.level_value(2)
        assert n2 == 4
        cut = labels.elements(PFin(Naturals()), 2)
        subsets = {frozenset(c) for r in range(5) for c in itertools.combinations(range(1, 5), r)}
        assert cut == subsets
        assert len(cut) == 16 == 2**n2 == count_form(PFin(Naturals())).at_level(2)


def test_criterion_4_lagrange_ratio(criterion):
    with criterion(4, "st(num(Z)/num(mZ)) = m for m <= 20"):
        for m in range(1, 21):
            assert standard_part(divide(num(Integers()), num(IntProg(0, m)))) == m


def test_criterion_5_ordinal_laws(criterion):
    with criterion(5, "natural operation laws on 1000 triples; 1+w != w+1"):
        rng = random.Random(5)
        for _ in range(1000):
            x, y, z = (random_ordinal(rng, depth=3) for _ in range(3))
            assert nat_add(x, y) == nat_add(y, x)
            assert nat_mul(x, y) == nat_mul(y, x)
            assert nat_add(nat_add(x, y), z) == nat_add(x, nat_add(y, z))
            assert nat_mul(nat_mul(x, y), z) == nat_mul(x, nat_mul(y, z))
            assert nat_mul(x, nat_add(y, z)) == nat_add(nat_mul(x, y), nat_mul(x, z))
        assert ord_add(ONE, OMEGA) == OMEGA
        assert ord_add(OMEGA, ONE) != OMEGA


def test_criterion_6_embedding_isomorphism(criterion):
    with criterion(6, "embedding respects natural sum, product and order on 1000 pairs"):
        rng = random.Random(6)
        to_cmp = {-1: Comparison.LESS, 0: Comparison.EQUAL, 1: Comparison.GREATER}
        for _ in range(1000):
            x = random_ordinal(rng, depth=1, max_terms=4, max_coeff=9)
            y = random_ordinal(rng, depth=1, max_terms=4, max_coeff=9)
            assert embed(nat_add(x, y)) == embed(x) + embed(y)
            assert embed(nat_mul(x, y)) == embed(x) * embed(y)
            assert value_compare(embed(x), embed(y)) is to_cmp[ordinal_compare(x, y)]


def test_criterion_7_theta_and_base_theta(criterion):
    with criterion(7, "theta_j irreducible; base-theta round trip on 500 ordinals per j"):
        rng = random.Random(7)
        for j in (0, 1, 2):
            assert is_irreducible(theta(j))
            bound = theta(j + 1)
            for _ in range(500):
                t = random_below(bound, rng)
                assert t < bound
                assert from_theta_base(to_theta_base(t, j)) == t


def _plurinterval(rng):
    return PlurInterval(Piece(i.p, i.q, i.left_closed, i.right_closed) for i in random_plurinterval_pieces(rng))


def test_criterion_8_measures(criterion):
    with criterion(8, "counting measures equal length; additivity suites"):
        rng = random.Random(8)
        for _ in range(100):
            b = rng.randint(2, 100)
            p = rng.randint(1, b - 1)
            assert mu(PlurInterval([Piece(F(0), F(p, b), True, False)]), BETA) == F(p, b)
        for _ in range(200):
            P = _plurinterval(rng)
            assert pj_measure(P) == lebesgue_measure(P) == P.length()
        for _ in range(200):
            A, B = _plurinterval(rng), _plurinterval(rng)
            union, meet = A.union(B), A.intersection(B)
            assert lebesgue_measure(union) == lebesgue_measure(A) + lebesgue_measure(B) - lebesgue_measure(meet)
            cut = F(rng.randint(-12, 12), rng.choice((1, 2, 4)))
            left = A.intersection(PlurInterval([Piece(F(-100), cut, True, False)]))
            right = A.difference(left)
            assert lebesgue_measure(A) >= lebesgue_measure(left) + lebesgue_measure(right)


def test_criterion_9_eventual_comparison(criterion):
    from _gen import random_alpha_value

    with criterion(9, "compare agrees with evaluation on 200 pairs past the certified level"):
        rng = random.Random(9)
        checks = 0
        for _ in range(200):
            x, y = random_alpha_value(rng), random_alpha_value(rng)
            c = value_compare(x, y)
            assert c is not Comparison.UNKNOWN
            for m in range(certified_level(x - y), 7):
                if not (admissible(x, m) and admissible(y, m)):
                    continue
                ex, ey = evaluate_at_level(x, m), evaluate_at_level(y, m)
                got = Comparison.LESS if ex < ey else Comparison.GREATER if ex > ey else Comparison.EQUAL
                assert got is c
                checks += 1
        assert checks >= 200
        root, tenth = power(a, F(1, 2)), a.scale(F(1, 1000))
        assert value_compare(root, tenth) is Comparison.LESS
        assert certified_level(root - tenth) == 4
        assert evaluate_at_level(root, 3) > evaluate_at_level(tenth, 3)
        assert evaluate_at_level(root, 4) < evaluate_at_level(tenth, 4)
