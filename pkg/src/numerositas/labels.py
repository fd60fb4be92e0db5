"""Finite levels and brute-force counting.

Level ``m`` has size parameter ``n_m = m!^(m!)``.  At that level a number set
is cut down to the grid ``{a/n : |a| <= n^2}``, which meets the integers in
``{-n..n}`` and the naturals in ``{0..n}``.  Pairs, finite subsets and finite
partial functions are cut down componentwise.
"""

from __future__ import annotations

import itertools
import math
import os
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import gmpy2

from .errors import ComplexityExceeded, Unsupported
from .setlang import (
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
    SetExpr,
    Union,
)

DEFAULT_MAX_OPS = 10**8
_CAP = 10**30  # size estimates saturate here
_LISTABLE = 10**6  # below this, both sides of an intersection are listed
#: levels whose n_m needs more bits than this are never enumerated
MAX_LEVEL_BITS = 1 << 23


def _check_level(m: int) -> None:
    if m < 1:
        raise ValueError("levels start at 1")
    if level_bits(m) > MAX_LEVEL_BITS:
        raise ComplexityExceeded(f"level {m} is too large to enumerate")


@lru_cache(maxsize=None)
def level_value(m: int) -> int:
    """n_m = m!^(m!); practical up to about m = 8."""
    if m < 1:
        raise ValueError("levels start at 1")
    f = math.factorial(m)
    return f**f


def level_bits(m: int) -> int:
    """A lower bound for log2(n_m), cheap for any m."""
    f = math.factorial(m)
    return f * (f.bit_length() - 1)


def divides_level(d: int, m: int) -> bool:
    """d | n_m, decided without forming n_m."""
    d = abs(d)
    f = math.factorial(m)
    for _ in range(f):
        if d == 1:
            return True
        g = math.gcd(d, f)
        if g == 1:
            return False
        d //= g
    return d == 1


def level_at_least(m: int, x) -> bool:
    """n_m >= x."""
    if m <= 7:
        return level_value(m) >= x
    x = Fraction(x)
    return x <= 0 or level_bits(m) >= math.ceil(x).bit_length()


def grid_contains(m: int, q) -> bool:
    q = Fraction(q)
    return divides_level(q.denominator, m) and level_at_least(m, abs(q))


def max_ops() -> int:
    env = os.environ.get("NUMEROSITAS_MAX_OPS")
    return int(env) if env else DEFAULT_MAX_OPS


class Budget:
    def __init__(self, limit: int | None = None):
        self.limit = max_ops() if limit is None else limit
        self.used = 0

    def charge(self, k: int) -> None:
        self.used += k
        if self.used > self.limit:
            raise ComplexityExceeded(f"brute-force enumeration exceeds {self.limit} operations")


@dataclass(frozen=True)
class PartialFunction:
    """A finite partial function, stored as its graph."""

    graph: frozenset

    def __repr__(self) -> str:
        pairs = sorted(self.graph, key=lambda p: element_key(p[0]))
        return "{" + ", ".join(f"{x!s}->{y!s}" for x, y in pairs) + "}"


def _is_number(x) -> bool:
    return isinstance(x, (int, Fraction)) and not isinstance(x, bool)


def element_key(x):
    """A total order on brute-force elements of every sort."""
    if _is_number(x):
        return (0, Fraction(x))
    if isinstance(x, tuple):
        return (1, tuple(element_key(y) for y in x))
    if isinstance(x, PartialFunction):
        return (3, tuple(sorted((element_key(a), element_key(b)) for a, b in x.graph)))
    return (2, tuple(sorted(element_key(y) for y in x)))


def _integral(x) -> bool:
    return isinstance(x, int) or x.denominator == 1


def _as_num(x):
    return int(x) if _integral(x) else x


# ---------------------------------------------------------------------------
# membership


def member(e: SetExpr, x, m: int) -> bool:
    """x belongs to the level-m cut of e."""
    t = type(e)
    if t is Union:
        return member(e.left, x, m) or member(e.right, x, m)
    if t is Intersect:
        return member(e.left, x, m) and member(e.right, x, m)
    if t is Diff:
        return member(e.left, x, m) and not member(e.right, x, m)
    if t is Product:
        return isinstance(x, tuple) and len(x) == 2 and member(e.left, x[0], m) and member(e.right, x[1], m)
    if t is PFin:
        return isinstance(x, frozenset) and all(member(e.inner, y, m) for y in x)
    if t is FFin:
        if not isinstance(x, PartialFunction):
            return False
        a = anchor(e.target)
        dom = [p[0] for p in x.graph]
        return (
            len(set(dom)) == len(dom)
            and all(member(e.domain, u, m) for u in dom)
            and all(v != a and member(e.target, v, m) for _, v in x.graph)
        )
    if t is RInterval:
        raise Unsupported("real intervals have no finite levels")
    if not _is_number(x) or not grid_contains(m, x):
        return False
    if t is Rationals:
        return True
    if t is QInterval:
        lo = e.p < x or (e.left_closed and e.p == x)
        hi = x < e.q or (e.right_closed and x == e.q)
        return lo and hi
    if t is Finite:
        return Fraction(x) in e.elements
    if not _integral(x):
        return False
    x = int(x)
    if t is Integers:
        return True
    if t is Naturals:
        return x >= 1
    if t is Naturals0:
        return x >= 0
    if t is NatProg:
        return x >= e.a and (x - e.a) % e.d == 0
    if t is IntProg:
        return (x - e.a) % e.d == 0
    if t is Powers:
        return x >= 1 and bool(gmpy2.iroot(x, e.k)[1])
    raise TypeError(f"not a set expression: {e!r}")


# ---------------------------------------------------------------------------
# enumeration


def estimate(e: SetExpr, m: int) -> int:
    """An upper bound for the size of the level-m cut (saturating)."""
    n = level_value(m) if m <= 7 else _CAP
    t = type(e)
    if t is Naturals:
        r = n
    elif t is Naturals0:
        r = n + 1
    elif t is Integers:
        r = 2 * n + 1
    elif t is Rationals:
        r = 2 * n * n + 1
    elif t is NatProg:
        r = n // e.d + 1
    elif t is IntProg:
        r = 2 * n // e.d + 1
    elif t is Powers:
        r = int(gmpy2.iroot(n, e.k)[0])
    elif t is QInterval:
        r = min(math.floor((e.q - e.p) * n) + 1, 2 * n * n + 1)
    elif t is Finite:
        r = len(e.elements)
    elif t is Union:
        r = estimate(e.left, m) + estimate(e.right, m)
    elif t is Intersect:
        r = min(estimate(e.left, m), estimate(e.right, m))
    elif t is Diff:
        r = estimate(e.left, m)
    elif t is Product:
        r = estimate(e.left, m) * estimate(e.right, m)
    elif t is PFin:
        k = estimate(e.inner, m)
        r = 2**k if k < 100 else _CAP
    elif t is FFin:
        k, b = estimate(e.domain, m), estimate(e.target, m) + 1
        r = b**k if k * b.bit_length() < 100 else _CAP
    elif t is RInterval:
        raise Unsupported("real intervals have no finite levels")
    else:
        raise TypeError(f"not a set expression: {e!r}")
    return min(r, _CAP)


def _rescale(x, f):
    """Apply f to every number inside a brute-force element."""
    if isinstance(x, tuple):
        return tuple(_rescale(y, f) for y in x)
    if isinstance(x, frozenset):
        return frozenset(_rescale(y, f) for y in x)
    if isinstance(x, PartialFunction):
        return PartialFunction(frozenset((_rescale(u, f), _rescale(v, f)) for u, v in x.graph))
    return f(x)


def _to_real(x, n: int):
    return _rescale(x, lambda a: _as_num(Fraction(a, n)))


def _to_scaled(x, n: int):
    return _rescale(x, lambda q: int(q * n))


def _member_scaled(e: SetExpr, x, n: int, m: int) -> bool:
    """member() for an element whose numbers are stored as numerators over n."""
    if not isinstance(x, int):
        return member(e, _to_real(x, n), m)
    t = type(e)
    if t is Union:
        return _member_scaled(e.left, x, n, m) or _member_scaled(e.right, x, n, m)
    if t is Intersect:
        return _member_scaled(e.left, x, n, m) and _member_scaled(e.right, x, n, m)
    if t is Diff:
        return _member_scaled(e.left, x, n, m) and not _member_scaled(e.right, x, n, m)
    if t is Rationals:
        return abs(x) <= n * n
    if t is QInterval:
        lo, hi = e.p * n, e.q * n
        return (lo < x or (e.left_closed and lo == x)) and (x < hi or (e.right_closed and x == hi))
    if t is Finite or x % n:
        return member(e, _to_real(x, n), m)
    k = x // n
    if t is Integers:
        return True
    if t is Naturals:
        return k >= 1
    if t is Naturals0:
        return k >= 0
    if t is NatProg:
        return k >= e.a and (k - e.a) % e.d == 0
    if t is IntProg:
        return (k - e.a) % e.d == 0
    if t is Powers:
        return k >= 1 and bool(gmpy2.iroot(k, e.k)[1])
    return False


def _enum(e: SetExpr, m: int, budget: Budget) -> set:
    """The level-m cut of e, every number a/n stored as its numerator a."""
    t = type(e)
    if t is RInterval:
        raise Unsupported("real intervals have no finite levels")
    if t in (Naturals, Naturals0, Integers, NatProg, IntProg, Powers, Rationals, QInterval, Finite):
        budget.charge(estimate(e, m))
    if t is Finite:
        return {int(x * level_value(m)) for x in e.elements if grid_contains(m, x)}
    n = level_value(m)
    top = n * n
    if t is Naturals:
        return set(range(n, top + 1, n))
    if t is Naturals0:
        return set(range(0, top + 1, n))
    if t is Integers:
        return set(range(-top, top + 1, n))
    if t is NatProg:
        return set(range(e.a * n, top + 1, e.d * n))
    if t is IntProg:
        start = -n + (e.a + n) % e.d
        return set(range(start * n, top + 1, e.d * n))
    if t is Powers:
        root = int(gmpy2.iroot(n, e.k)[0])
        return {j**e.k * n for j in range(1, root + 1)}
    if t is Rationals:
        return set(range(-top, top + 1))
    if t is QInterval:
        lo, hi = e.p * n, e.q * n
        a0 = math.ceil(lo) + (1 if lo.denominator == 1 and not e.left_closed else 0)
        a1 = math.floor(hi) - (1 if hi.denominator == 1 and not e.right_closed else 0)
        return set(range(max(a0, -top), min(a1, top) + 1))
    if t is Union:
        return _enum(e.left, m, budget) | _enum(e.right, m, budget)
    if t is Intersect:
        small, other = (e.left, e.right)
        if estimate(e.right, m) < estimate(e.left, m):
            small, other = other, small
        items = _enum(small, m, budget)
        if estimate(other, m) <= _LISTABLE:
            return items & _enum(other, m, budget)
        budget.charge(len(items))
        return {x for x in items if _member_scaled(other, x, n, m)}
    if t is Diff:
        items = _enum(e.left, m, budget)
        if estimate(e.right, m) <= _LISTABLE:
            return items - _enum(e.right, m, budget)
        budget.charge(len(items))
        return {x for x in items if not _member_scaled(e.right, x, n, m)}
    if t is Product:
        budget.charge(estimate(e, m))
        left, right = _enum(e.left, m, budget), _enum(e.right, m, budget)
        return set(itertools.product(left, right))
    if t is PFin:
        budget.charge(estimate(e, m))
        items = sorted(_enum(e.inner, m, budget), key=element_key)
        return {
            frozenset(c)
            for r in range(len(items) + 1)
            for c in itertools.combinations(items, r)
        }
    if t is FFin:
        budget.charge(estimate(e, m))
        dom = sorted(_enum(e.domain, m, budget), key=element_key)
        a = anchor(e.target)
        a = None if a is None else _to_scaled(a, n)
        values = [None] + sorted((v for v in _enum(e.target, m, budget) if v != a), key=element_key)
        out = set()
        for choice in itertools.product(values, repeat=len(dom)):
            out.add(PartialFunction(frozenset((x, y) for x, y in zip(dom, choice) if y is not None)))
        return out
    raise TypeError(f"not a set expression: {e!r}")


_ANCHOR_SEARCH = 6


@lru_cache(maxsize=256)
def anchor(e: SetExpr):
    """The least element of e at the first level where e is nonempty.

    Partial functions counted by ``FFin(X, E)`` take values in E minus this
    element, which keeps their number equal to |E|^|X| at every level.
    Returns None when no such level is found within the search bound.
    """
    for m in range(1, _ANCHOR_SEARCH + 1):
        if estimate(e, m) > max_ops():
            return None
        items = _enum(e, m, Budget())
        if items:
            return _to_real(min(items, key=element_key), level_value(m))
    return None


def elements(e: SetExpr, m: int, budget: Budget | None = None) -> set:
    """The level-m cut of e as a set of exact values, pairs, sets and functions."""
    _check_level(m)
    n = level_value(m)
    return {_to_real(x, n) for x in _enum(e, m, budget or Budget())}


def count_brute(e: SetExpr, m: int, budget: Budget | None = None) -> int:
    """|e cut at level m|, by explicit enumeration."""
    _check_level(m)
    return len(_enum(e, m, budget or Budget()))
