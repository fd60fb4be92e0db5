"""Exact values of the counting field.

A :class:`Value` is a finite sum of terms ``c * a^p * b^q * F1^E1 * ...``
where ``a`` is the numerosity of the positive integers, ``b`` the numerosity
of the unit real interval, ``p`` a nonnegative rational, ``q`` a nonnegative
integer and each ``Fi^Ei`` a formal power whose base and exponent are
themselves values (the exponential tier, e.g. ``2^(a)``).  Terms are kept in
a canonical order so equality is structural.

Order questions are answered by eventual dominance along the level chain.
Pure ``a`` values are always decidable.  The only fact used about ``b`` is
``b > (2*a^2 + 1)^2``; everything else involving ``b`` may come back as
:attr:`Comparison.UNKNOWN`.  No floating point is used anywhere here.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Union

import gmpy2

from . import labels
from ._scan import Cursor
from .errors import (
    BetaNotEvaluable,
    ComplexityExceeded,
    DivisionByZero,
    ExponentNotIntegralAtLevel,
    NumerositasError,
    ParseError,
)

Scalar = Union[int, Fraction]

#: default bound on the bit size of a single exact power during evaluation
MAX_EVAL_BITS = 1 << 24
#: largest integer power to which a sum of several terms is expanded
MAX_EXPANDED_POWER = 64
#: largest integer whose perfect-power structure is searched
MAX_ROOT_SEARCH_BITS = 1 << 12


class Comparison(enum.Enum):
    LESS = "Less"
    EQUAL = "Equal"
    GREATER = "Greater"
    UNKNOWN = "Unknown"


class Classification(enum.Enum):
    INFINITESIMAL = "Infinitesimal"
    FINITE = "Finite"
    INFINITE = "Infinite"
    UNKNOWN = "Unknown"


class Special(enum.Enum):
    """Non-rational outcomes of a standard part or a measure."""

    PLUS_INFINITY = "+inf"
    MINUS_INFINITY = "-inf"
    UNKNOWN = "unknown"

    def __str__(self) -> str:
        return self.value


@dataclass(frozen=True)
class Factor:
    base: Value
    exponent: Value

    @cached_property
    def key(self):
        return (self.base.sort_key, self.exponent.sort_key)


@dataclass(frozen=True)
class Monomial:
    a: Fraction = Fraction(0)
    b: int = 0
    factors: tuple[Factor, ...] = ()

    @cached_property
    def key(self):
        return (tuple(f.key for f in self.factors), self.b, self.a)


def _frac(x) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


@dataclass(frozen=True)
class Value:
    terms: tuple[tuple[Monomial, Fraction], ...] = ()

    # -- construction -------------------------------------------------
    @staticmethod
    def from_dict(d: dict) -> Value:
        items = [(m, c) for m, c in d.items() if c != 0]
        items.sort(key=lambda t: t[0].key, reverse=True)
        return Value(tuple(items))

    @staticmethod
    def const(x: Scalar) -> Value:
        x = _frac(x)
        return Value(((Monomial(), x),)) if x else ZERO

    @staticmethod
    def monomial(coeff: Scalar = 1, a: Scalar = 0, b: int = 0) -> Value:
        return Value.from_dict({Monomial(_frac(a), int(b)): _frac(coeff)})

    @cached_property
    def sort_key(self):
        return tuple((m.key, c) for m, c in self.terms)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Value.const(other)
        if not isinstance(other, Value):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        if self.is_constant():
            return hash(self.constant())
        return hash(self.terms)

    # -- inspection ---------------------------------------------------
    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return all(m == _UNIT for m, _ in self.terms)

    def constant(self) -> Fraction:
        if not self.is_constant():
            raise ValueError(f"{self} is not a constant")
        return self.terms[0][1] if self.terms else Fraction(0)

    def constant_term(self) -> Fraction:
        for m, c in self.terms:
            if m == _UNIT:
                return c
        return Fraction(0)

    def is_puiseux(self) -> bool:
        return all(not m.factors for m, _ in self.terms)

    @cached_property
    def beta_free(self) -> bool:
        for m, _ in self.terms:
            if m.b:
                return False
            for f in m.factors:
                if not (f.base.beta_free and f.exponent.beta_free):
                    return False
        return True

    def is_pure_alpha(self) -> bool:
        return self.is_puiseux() and self.beta_free

    def coefficient(self, mono: Monomial) -> Fraction:
        for m, c in self.terms:
            if m == mono:
                return c
        return Fraction(0)

    # -- ring operations ----------------------------------------------
    def __add__(self, other):
        other = _coerce(other)
        if isinstance(other, Quotient):
            return Quotient.of(self) + other
        d = dict(self.terms)
        for m, c in other.terms:
            d[m] = d.get(m, 0) + c
        return Value.from_dict(d)

    __radd__ = __add__

    def __neg__(self):
        return Value(tuple((m, -c) for m, c in self.terms))

    def __sub__(self, other):
        return self + (-_coerce(other))

    def __rsub__(self, other):
        return _coerce(other) + (-self)

    def __mul__(self, other):
        other = _coerce(other)
        if isinstance(other, Quotient):
            return Quotient.of(self) * other
        d: dict = {}
        for m1, c1 in self.terms:
            for m2, c2 in other.terms:
                k, m = _mono_mul(m1, m2)
                d[m] = d.get(m, 0) + c1 * c2 * k
        return Value.from_dict(d)

    __rmul__ = __mul__

    def scale(self, k: Scalar) -> Value:
        k = _frac(k)
        if not k:
            return ZERO
        return Value(tuple((m, c * k) for m, c in self.terms))

    def __truediv__(self, other):
        return divide(self, other)

    def __rtruediv__(self, other):
        return divide(_coerce(other), self)

    def __pow__(self, exponent):
        return power(self, exponent)

    # -- text ---------------------------------------------------------
    def render(self, alpha: str = "a", beta: str = "b") -> str:
        if not self.terms:
            return "0"
        out = []
        for i, (m, c) in enumerate(self.terms):
            body = _render_mono(m, alpha, beta)
            mag = abs(c)
            if not body:
                piece = str(mag)
            elif mag == 1:
                piece = body
            elif mag.denominator == 1:
                piece = f"{mag}*{body}"
            else:
                piece = f"({mag})*{body}"
            if i == 0:
                out.append("-" + piece if c < 0 else piece)
            else:
                out.append((" - " if c < 0 else " + ") + piece)
        return "".join(out)

    def __str__(self) -> str:
        return self.render()

    def __repr__(self) -> str:
        return f"Value({self.render()!r})"


_UNIT = Monomial()
ZERO = Value()
ONE = Value(((_UNIT, Fraction(1)),))
ALPHA = Value(((Monomial(Fraction(1)), Fraction(1)),))
BETA = Value(((Monomial(Fraction(0), 1), Fraction(1)),))


def _coerce(x):
    if isinstance(x, (Value, Quotient)):
        return x
    if isinstance(x, (int, Fraction)):
        return Value.const(x)
    raise TypeError(f"cannot use {type(x).__name__} as a value")


def _render_mono(m: Monomial, alpha: str, beta: str) -> str:
    parts = []

    def unit_power(sym, e):
        if e == 1:
            return sym
        if e.denominator == 1 if isinstance(e, Fraction) else True:
            return f"{sym}^{e}"
        return f"{sym}^({e})"

    if m.a:
        parts.append(unit_power(alpha, m.a))
    if m.b:
        parts.append(unit_power(beta, Fraction(m.b)))
    for f in m.factors:
        base = f.base
        if base.is_constant():
            bs = str(base.constant())
        elif len(base.terms) == 1 and base.terms[0][1] == 1 and not base.terms[0][0].factors:
            bs = base.render(alpha, beta)
            if "^" in bs or "*" in bs:
                bs = f"({bs})"
        else:
            bs = f"({base.render(alpha, beta)})"
        parts.append(f"{bs}^({f.exponent.render(alpha, beta)})")
    return "*".join(parts)


# ---------------------------------------------------------------------------
# formal powers


def _mono_mul(m1: Monomial, m2: Monomial) -> tuple[Fraction, Monomial]:
    if not m1.factors and not m2.factors:
        return Fraction(1), Monomial(m1.a + m2.a, m1.b + m2.b)
    parts: dict = {}
    for f in m1.factors + m2.factors:
        parts[f.base] = parts[f.base] + f.exponent if f.base in parts else f.exponent
    k, factors = _normalize_factors(parts)
    return k, Monomial(m1.a + m2.a, m1.b + m2.b, factors)


def _normalize_factors(parts: dict) -> tuple[Fraction, tuple[Factor, ...]]:
    coef = Fraction(1)
    out = []
    for base, exp in parts.items():
        if exp.is_zero():
            continue
        if base.is_constant():
            c = base.constant()
            if exp.is_constant():
                e = exp.constant()
                if e.denominator != 1:
                    raise NumerositasError(f"{c}^({e}) is not rational")
                coef *= c ** int(e)
                continue
            k = math.floor(exp.constant_term())
            if k:
                coef *= c**k
                exp = exp - k
        out.append(Factor(base, exp))
    out.sort(key=lambda f: f.key)
    return coef, tuple(out)


def _perfect_root(c: int) -> tuple[int, int]:
    """Return (r, k) with c == r**k and k maximal."""
    if c.bit_length() > MAX_ROOT_SEARCH_BITS:
        raise ComplexityExceeded(f"perfect-power search on a {c.bit_length()}-bit integer")
    for k in range(c.bit_length(), 1, -1):
        r, exact = gmpy2.iroot(c, k)
        if exact:
            return int(r), k
    return c, 1


def _constant_parts(c: Fraction, exp: Value, parts: dict) -> None:
    if c <= 0:
        raise NumerositasError(f"formal power of nonpositive base {c}")
    for n, sgn in ((c.numerator, 1), (c.denominator, -1)):
        if n == 1:
            continue
        r, k = _perfect_root(n)
        key = Value.const(r)
        e = exp.scale(k * sgn)
        parts[key] = parts[key] + e if key in parts else e


def _rational_root(c: Fraction, k: Fraction):
    """c**k as a Fraction, or None when irrational."""
    p, q = k.numerator, k.denominator
    if c < 0:
        return None
    num, ok1 = gmpy2.iroot(c.numerator, q)
    den, ok2 = gmpy2.iroot(c.denominator, q)
    if not (ok1 and ok2):
        return None
    if max(int(num).bit_length(), int(den).bit_length()) * abs(p) > MAX_EVAL_BITS:
        raise ComplexityExceeded(f"the root power {k} exceeds {MAX_EVAL_BITS} bits")
    return Fraction(int(num), int(den)) ** p


def power(base, exponent) -> Value:
    """``base ** exponent`` inside the value field.

    Constant integer exponents expand; constant fractional exponents are
    allowed on single terms with an exact rational coefficient root; any
    other exponent produces formal powers.
    """
    base, e = _coerce(base), _coerce(exponent)
    if isinstance(base, Quotient) or isinstance(e, Quotient):
        if isinstance(base, Quotient) and isinstance(e, Value) and e.is_constant():
            k = e.constant()
            if k.denominator == 1 and k >= 0:
                return base ** int(k)
        raise NumerositasError("powers of quotients are outside the value field")
    if e.is_constant():
        k = e.constant()
        if k.denominator == 1:
            if k < 0:
                raise NumerositasError("negative powers are quotients, not values")
            return _int_pow(base, int(k))
        if base.is_zero():
            return ZERO if k > 0 else ONE
        if len(base.terms) != 1:
            raise NumerositasError("fractional power of a sum is not representable")
        (m, c), = base.terms
        root = _rational_root(c, k)
        b = m.b * k
        if root is None or b.denominator != 1:
            raise NumerositasError(f"({base})^({k}) is not representable")
        parts = {f.base: f.exponent.scale(k) for f in m.factors}
        coef, factors = _normalize_factors(parts)
        return Value.from_dict({Monomial(m.a * k, int(b), factors): root * coef})
    if base.is_zero():
        return ZERO
    if base == ONE:
        return ONE
    parts: dict = {}

    def add(key, exp):
        parts[key] = parts[key] + exp if key in parts else exp

    if len(base.terms) == 1:
        (m, c), = base.terms
        if c != 1:
            _constant_parts(c, e, parts)
        if m.a:
            add(ALPHA, e.scale(m.a))
        if m.b:
            add(BETA, e.scale(m.b))
        for f in m.factors:
            add(f.base, f.exponent * e)
    else:
        lead = base.terms[0][1]
        if lead != 1:
            _constant_parts(lead, e, parts)
            base = base.scale(1 / lead)
        add(base, e)
    coef, factors = _normalize_factors(parts)
    return Value.from_dict({Monomial(Fraction(0), 0, factors): coef})


def _int_pow(base: Value, k: int) -> Value:
    if len(base.terms) > 1 and k > MAX_EXPANDED_POWER:
        raise ComplexityExceeded(f"expanding a sum to the power {k}")
    if k > 1 and base.terms:
        bits = max(max(c.numerator.bit_length(), c.denominator.bit_length()) for _, c in base.terms)
        if bits * k > MAX_EVAL_BITS:
            raise ComplexityExceeded(f"coefficients of the power {k} exceed {MAX_EVAL_BITS} bits")
    result = ONE
    while k:
        if k & 1:
            result = result * base
        k >>= 1
        if k:
            base = base * base
    return result


# ---------------------------------------------------------------------------
# division


@dataclass(frozen=True, eq=False)
class Quotient:
    """A ratio of values that does not reduce to a single value."""

    numerator: Value
    denominator: Value

    @staticmethod
    def of(v) -> Quotient:
        v = _coerce(v)
        return v if isinstance(v, Quotient) else Quotient(v, ONE)

    def __eq__(self, other):
        if isinstance(other, (Value, int, Fraction)):
            other = Quotient.of(other)
        if not isinstance(other, Quotient):
            return NotImplemented
        return self.numerator * other.denominator == other.numerator * self.denominator

    __hash__ = None

    def __add__(self, other):
        o = Quotient.of(other)
        return divide(
            self.numerator * o.denominator + o.numerator * self.denominator,
            self.denominator * o.denominator,
        )

    __radd__ = __add__

    def __neg__(self):
        return Quotient(-self.numerator, self.denominator)

    def __sub__(self, other):
        return self + (-Quotient.of(other))

    def __rsub__(self, other):
        return Quotient.of(other) + (-self)

    def __mul__(self, other):
        o = Quotient.of(other)
        return divide(self.numerator * o.numerator, self.denominator * o.denominator)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = Quotient.of(other)
        return divide(self.numerator * o.denominator, self.denominator * o.numerator)

    def __rtruediv__(self, other):
        return Quotient.of(other) / self

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            raise NumerositasError("quotients only take nonnegative integer powers")
        return divide(_int_pow(self.numerator, k), _int_pow(self.denominator, k))

    def render(self, alpha: str = "a", beta: str = "b") -> str:
        return f"({self.numerator.render(alpha, beta)})/({self.denominator.render(alpha, beta)})"

    def __str__(self) -> str:
        return self.render()

    def __repr__(self) -> str:
        return f"Quotient({self.render()!r})"


def _mono_div(m: Monomial, d: Monomial):
    """m / d as (coef, monomial), or None when exponents would go negative."""
    a, b = m.a - d.a, m.b - d.b
    if a < 0 or b < 0:
        return None
    if not d.factors:
        return Fraction(1), Monomial(a, b, m.factors)
    parts = {f.base: f.exponent for f in m.factors}
    for f in d.factors:
        parts[f.base] = parts[f.base] - f.exponent if f.base in parts else -f.exponent
    k, factors = _normalize_factors(parts)
    return k, Monomial(a, b, factors)


def _exact_div(v: Value, w: Value):
    """v / w when w divides v exactly, else None."""
    if len(w.terms) == 1:
        (dm, dc), = w.terms
        d: dict = {}
        for m, c in v.terms:
            r = _mono_div(m, dm)
            if r is None:
                return None
            k, q = r
            d[q] = d.get(q, 0) + c * k / dc
        return Value.from_dict(d)
    if not w.is_puiseux():
        return None
    # long division group by group, lexicographic in (b, a)
    groups: dict = {}
    for m, c in v.terms:
        groups.setdefault(m.factors, {})[Monomial(m.a, m.b)] = c
    lead_m, lead_c = w.terms[0]
    out: dict = {}
    for factors, poly in groups.items():
        rem = Value.from_dict(poly)
        while not rem.is_zero():
            m, c = rem.terms[0]
            r = _mono_div(m, lead_m)
            if r is None:
                return None
            q = Value.from_dict({r[1]: c / lead_c})
            rem = rem - q * w
            key = Monomial(r[1].a, r[1].b, factors)
            out[key] = out.get(key, 0) + c / lead_c
    return Value.from_dict(out)


def divide(v, w):
    """Exact division: a :class:`Value` when w divides v, else a :class:`Quotient`."""
    v, w = _coerce(v), _coerce(w)
    if isinstance(v, Quotient) or isinstance(w, Quotient):
        return Quotient.of(v) / Quotient.of(w)
    if w.is_zero():
        raise DivisionByZero("division by zero")
    q = _exact_div(v, w)
    if q is not None:
        return q
    lead = w.terms[0][1]
    return Quotient(v.scale(1 / lead), w.scale(1 / lead))


# ---------------------------------------------------------------------------
# order

#: the lower bound b > (2a^2 + 1)^2
_BETA_FLOOR = Value.from_dict({Monomial(Fraction(4)): Fraction(4), Monomial(Fraction(2)): Fraction(4), _UNIT: Fraction(1)})


def _sign_pure(p: Value) -> int:
    return 0 if p.is_zero() else (1 if p.terms[0][1] > 0 else -1)


def _sign_puiseux(p: Value):
    if p.is_zero():
        return 0
    if p.beta_free:
        return _sign_pure(p)
    by_b: dict = {}
    for m, c in p.terms:
        by_b.setdefault(m.b, {})[Monomial(m.a)] = c
    top = max(by_b)
    lead = Value.from_dict(by_b.pop(top))
    s = _sign_pure(lead)
    against = ZERO
    for poly in by_b.values():
        pb = Value.from_dict(poly)
        if _sign_pure(pb) == -s:
            against = against + pb.scale(-s)
    if against.is_zero():
        return s
    # s*lead*b^top > s*lead*floor*b^(top-1) >= against*b^(top-1) >= |rest|
    if _sign_pure(lead.scale(s) * _BETA_FLOOR - against) >= 0:
        return s
    return None


def _factor_positive(f: Factor) -> bool:
    if f.base.is_constant():
        return f.base.constant() > 0
    return sign(f.base) == 1


def _grows_past_polynomials(base: Value, delta: Value) -> bool:
    if not (base.beta_free and delta.beta_free) or delta.is_constant():
        return False
    if base.is_constant():
        if base.constant() <= 1:
            return False
    elif sign(base) != 1:
        return False
    return _is_positive_infinite(delta)


def _dominates(g: tuple, h: tuple) -> bool:
    """True when the factor product g over h outgrows every polynomial in a."""
    eg = {f.base: f.exponent for f in g}
    eh = {f.base: f.exponent for f in h}
    grows = False
    for base in set(eg) | set(eh):
        delta = eg.get(base, ZERO) - eh.get(base, ZERO)
        if delta.is_zero():
            continue
        if not _grows_past_polynomials(base, delta):
            return False
        grows = True
    return grows


def sign(v: Value):
    """+1, -1, 0, or None when the sign is not decidable."""
    v = _coerce(v)
    if v.is_zero():
        return 0
    groups: dict = {}
    for m, c in v.terms:
        groups.setdefault(m.factors, {})[Monomial(m.a, m.b)] = c
    for factors in groups:
        if not all(_factor_positive(f) for f in factors):
            return None
    polys = {k: Value.from_dict(p) for k, p in groups.items()}
    signs = {k: _sign_puiseux(p) for k, p in polys.items()}
    known = set(signs.values())
    if len(polys) == 1 or (None not in known and len(known) == 1):
        return next(iter(signs.values()))
    for g in polys:
        if signs[g] is None or not polys[g].beta_free:
            continue
        if all(h == g or (polys[h].beta_free and _dominates(g, h)) for h in polys):
            return signs[g]
    if len(polys) == 2 and None not in known:
        (g1, p1), (g2, p2) = polys.items()
        if len(g1) == len(g2) == 1 and g1[0].exponent == g2[0].exponent and sign(g1[0].exponent) == 1:
            order = compare(g1[0].base, g2[0].base)
            if signs[g1] == -signs[g2] and order in (Comparison.GREATER, Comparison.LESS):
                big, small = (p1, p2) if order is Comparison.GREATER else (p2, p1)
                s = _sign_puiseux(big + small)
                if s is not None and (s == 0 or s == _sign_puiseux(big)):
                    return _sign_puiseux(big)
    return None


def _small_exponent(*values: Value) -> Fraction:
    den = 1
    for v in values:
        for m, _ in v.terms:
            den = math.lcm(den, m.a.denominator)
    return Fraction(1, 2 * den)


def _is_positive_infinite(v: Value) -> bool:
    if sign(v) != 1 or v.is_constant():
        return False
    return sign(v - Value.monomial(1, _small_exponent(v))) == 1


def compare(v, w) -> Comparison:
    """Eventual comparison of two values."""
    s = sign(_coerce(v) - _coerce(w))
    if s is None:
        return Comparison.UNKNOWN
    return (Comparison.LESS, Comparison.EQUAL, Comparison.GREATER)[s + 1]


def classify(x) -> Classification:
    x = _coerce(x)
    if isinstance(x, Quotient):
        st = standard_part(x)
        if st is Special.UNKNOWN:
            return Classification.UNKNOWN
        if isinstance(st, Special):
            return Classification.INFINITE
        if st != 0:
            return Classification.FINITE
        return Classification.INFINITESIMAL
    if x.is_zero():
        return Classification.INFINITESIMAL
    if x.is_constant():
        return Classification.FINITE
    s = sign(x)
    if s is not None and _is_positive_infinite(x.scale(s)):
        return Classification.INFINITE
    return Classification.UNKNOWN


def standard_part(x):
    """Rational standard part, or a :class:`Special` marker."""
    x = _coerce(x)
    if isinstance(x, Value):
        if x.is_constant():
            return x.constant()
        if classify(x) is Classification.INFINITE:
            return Special.PLUS_INFINITY if sign(x) == 1 else Special.MINUS_INFINITY
        return Special.UNKNOWN
    p, q = x.numerator, x.denominator
    sq = sign(q)
    if sq is None:
        return Special.UNKNOWN
    top, cq = q.terms[0]
    r = p.coefficient(top) / cq
    rest = p - q.scale(r)
    if rest.is_zero():
        return r
    tiny = Value.monomial(1, _small_exponent(p, q))
    srest = sign(rest)
    if srest is not None and sign(q.scale(sq) - rest.scale(srest) * tiny) == 1:
        return r
    sp = sign(p)
    if sp is not None and sign(p.scale(sp) - q.scale(sq) * tiny) == 1:
        return Special.PLUS_INFINITY if sp * sq > 0 else Special.MINUS_INFINITY
    return Special.UNKNOWN


# ---------------------------------------------------------------------------
# evaluation along the level chain


def _alpha_power(m: int, e: Fraction) -> int:
    if e.denominator == 1:
        return labels.level_value(m) ** int(e)
    f = math.factorial(m)
    if f % e.denominator:
        raise ExponentNotIntegralAtLevel(f"a^({e}) is not integral at level {m}")
    return f ** (f * e.numerator // e.denominator)


def evaluate_at_level(v, m: int, max_bits: int = MAX_EVAL_BITS):
    """Substitute a := m!^(m!) and return the exact int (or Fraction)."""
    v = _coerce(v)
    if isinstance(v, Quotient):
        raise NumerositasError("evaluate the numerator and denominator separately")
    if m < 1:
        raise ValueError("levels start at 1")
    log_n = labels.level_bits(m)
    total = Fraction(0)
    for mono, c in v.terms:
        if mono.b:
            raise BetaNotEvaluable("b has no finite-level model")
        if log_n * mono.a > max_bits:
            raise ComplexityExceeded(f"a^{mono.a} at level {m} exceeds {max_bits} bits")
        term = c * _alpha_power(m, mono.a)
        for f in mono.factors:
            base = _frac(evaluate_at_level(f.base, m, max_bits))
            exp = _frac(evaluate_at_level(f.exponent, m, max_bits))
            if exp.denominator != 1:
                raise ExponentNotIntegralAtLevel(f"exponent {f.exponent} is not integral at level {m}")
            size = max(base.numerator.bit_length(), base.denominator.bit_length())
            if abs(exp) * size > max_bits:
                raise ComplexityExceeded(f"{f.base}^({f.exponent}) at level {m} exceeds {max_bits} bits")
            term *= base ** int(exp)
        total += term
    return int(total) if total.denominator == 1 else total


def admissible(v: Value, m: int) -> bool:
    """True when every a-exponent of v is integral at level m."""
    f = math.factorial(m)
    stack = [v]
    while stack:
        for mono, _ in stack.pop().terms:
            if f % mono.a.denominator:
                return False
            for fac in mono.factors:
                stack.extend((fac.base, fac.exponent))
    return True


def certified_level(v: Value) -> int:
    """Least level from which the sign of a pure-a value is stable.

    Uses |lead| * n^gap > sum|rest| where gap is the distance between the two
    largest exponents.
    """
    if not v.is_pure_alpha():
        raise NumerositasError("certified levels are defined for pure a values")
    if len(v.terms) <= 1:
        return 1
    (m0, c0), (m1, _) = v.terms[0], v.terms[1]
    gap = m0.a - m1.a
    ratio = sum(abs(c) for _, c in v.terms[1:]) / abs(c0)
    p, q = gap.numerator, gap.denominator
    bound = ratio**q
    for m in range(1, 64):
        if m <= 7:
            if labels.level_value(m) ** p > bound:
                return m
        elif p * labels.level_bits(m) > q * (ratio.numerator.bit_length() + 1):
            return m
    raise NumerositasError("sign stabilizes beyond level 63")


# ---------------------------------------------------------------------------
# text


def parse_value(text: str):
    """Parse the canonical text form (``2*a^2 + 1``, ``(3/4)*b``, ``2^(a)``)."""
    cur = Cursor(text)
    try:
        v = _expr(cur)
    except RecursionError:
        raise ParseError("expression nested too deeply", 1, ("a shallower expression",)) from None
    cur.finish()
    return v


_ATOM_START = {"integer", "'a'", "'b'", "'('", "'-'"}


def _expr(cur: Cursor):
    v = _term(cur)
    while cur.at("+", "-"):
        op = cur.advance().text
        w = _term(cur)
        v = v + w if op == "+" else v - w
    return v


def _term(cur: Cursor):
    v = _unary(cur)
    while cur.at("*", "/"):
        op = cur.advance().text
        w = _unary(cur)
        v = v * w if op == "*" else divide(v, w)
    return v


def _unary(cur: Cursor):
    if cur.at("-"):
        cur.advance()
        return -_unary(cur)
    return _power(cur)


def _power(cur: Cursor):
    base = _atom(cur)
    if cur.at("^"):
        cur.advance()
        return power(base, _unary(cur))
    return base


def _atom(cur: Cursor):
    t = cur.tok
    if t.kind == "int":
        cur.advance()
        return Value.const(int(t.text))
    if cur.at("a", "alpha"):
        cur.advance()
        return ALPHA
    if cur.at("b", "beta"):
        cur.advance()
        return BETA
    if cur.at("("):
        cur.advance()
        v = _expr(cur)
        cur.expect(")")
        return v
    cur.fail(_ATOM_START)
