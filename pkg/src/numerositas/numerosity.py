"""Closed-form counting and numerosities of definable sets.

``count_form(E)`` returns a :class:`CountForm`: a value ``c`` in the symbol
``n`` plus a threshold level ``m0`` such that the level-``m`` cut of ``E``
has exactly ``c(n_m)`` elements for every ``m >= m0``.  Replacing ``n`` by
``a`` gives ``num(E)``.

Unions and differences go through inclusion-exclusion, so they need the
intersection of the two sides in closed form.  ``meet`` computes it for
progressions (by the Chinese remainder theorem), rational intervals,
powers, finite sets and the structured constructors; anything else is
reported as :class:`Unsupported` rather than guessed.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

from . import labels
from .errors import ComplexityExceeded, EmptyTarget, Unsupported
from .euclid import ALPHA, ONE, ZERO, Value, evaluate_at_level, power
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

#: thresholds are searched up to this level
MAX_LEVEL = 20
#: bounded intersections are listed explicitly up to this many candidates
MAX_LISTED = 10**5


@dataclass(frozen=True)
class CountForm:
    threshold: int
    form: Value

    def at_level(self, m: int):
        return evaluate_at_level(self.form, m)

    def render(self) -> str:
        return self.form.render(alpha="n")

    def __str__(self) -> str:
        return f"{self.render()} (m >= {self.threshold})"


# ---------------------------------------------------------------------------
# thresholds


def _least_level(pred, what: str) -> int:
    for m in range(1, MAX_LEVEL + 1):
        if pred(m):
            return m
    raise Unsupported(f"{what} needs a level beyond {MAX_LEVEL}")


def _level_divisible(d: int) -> int:
    return _least_level(lambda m: labels.divides_level(d, m), f"divisibility by {d}")


def _level_reaching(x) -> int:
    return _least_level(lambda m: labels.level_at_least(m, x), f"reaching {x}")


def _level_holding(x: Fraction) -> int:
    return max(_level_divisible(x.denominator), _level_reaching(abs(x)))


# ---------------------------------------------------------------------------
# semantic intersection


def _empty() -> Finite:
    return Finite(())


def _is_empty(e) -> bool:
    return isinstance(e, Finite) and not e.elements


_NUMBER_KINDS = (Naturals, Naturals0, Integers, Rationals, NatProg, IntProg, Powers, QInterval, Finite, RInterval)


def _kind(e) -> str:
    if isinstance(e, _NUMBER_KINDS):
        return "number"
    return type(e).__name__


def contains(e: SetExpr, x) -> bool:
    """Level-independent membership of a number in e."""
    x = Fraction(x)
    return labels.member(e, x, _level_holding(x))


@dataclass(frozen=True)
class _Prog:
    """{x integer : x = r mod d, x >= lo} with lo None for unbounded."""

    r: int
    d: int
    lo: int | None


def _as_prog(e):
    t = type(e)
    if t is Naturals:
        return _Prog(0, 1, 1)
    if t is Naturals0:
        return _Prog(0, 1, 0)
    if t is Integers:
        return _Prog(0, 1, None)
    if t is NatProg:
        return _Prog(e.a % e.d, e.d, e.a)
    if t is IntProg:
        return _Prog(e.a % e.d, e.d, None)
    return None


def _from_prog(p: _Prog) -> SetExpr:
    if p.lo is None:
        return Integers() if p.d == 1 else IntProg(p.r, p.d)
    first = p.lo + (p.r - p.lo) % p.d
    return NatProg(first, p.d)


def _crt(r1: int, d1: int, r2: int, d2: int):
    g = math.gcd(d1, d2)
    if (r2 - r1) % g:
        return None
    lcm = d1 // g * d2
    k = ((r2 - r1) // g * pow(d1 // g, -1, d2 // g)) % (d2 // g) if d2 // g > 1 else 0
    return (r1 + d1 * k) % lcm, lcm


def _meet_prog(p: _Prog, q: _Prog):
    c = _crt(p.r, p.d, q.r, q.d)
    if c is None:
        return _empty()
    lo = p.lo if q.lo is None else q.lo if p.lo is None else max(p.lo, q.lo)
    return _from_prog(_Prog(c[0], c[1], lo))


def _interval_filter(e: SetExpr, iv: QInterval):
    """e inside a bounded interval, listed as a finite set."""
    lo, hi = math.ceil(iv.p), math.floor(iv.q)
    if hi - lo + 1 > MAX_LISTED:
        return None
    return Finite(tuple(x for x in range(lo, hi + 1) if contains(iv, x) and contains(e, x)))


def _meet_intervals(a: QInterval, b: QInterval):
    if a.p > b.p or (a.p == b.p and not a.left_closed):
        p, lc = a.p, a.left_closed
    else:
        p, lc = b.p, b.left_closed
    if a.q < b.q or (a.q == b.q and not a.right_closed):
        q, rc = a.q, a.right_closed
    else:
        q, rc = b.q, b.right_closed
    if p < q or (p == q and lc and rc):
        return QInterval(p, q, lc, rc)
    return _empty()


def _meet_powers(pw: Powers, other):
    if isinstance(other, Powers):
        return Powers(math.lcm(pw.k, other.k))
    if isinstance(other, QInterval):
        if other.q < 1:
            return _empty()
        top = math.floor(other.q)
        items = []
        j = 1
        while j**pw.k <= top:
            if len(items) > MAX_LISTED:
                return None
            if contains(other, j**pw.k):
                items.append(j**pw.k)
            j += 1
        return Finite(tuple(items))
    p = _as_prog(other)
    if p is None:
        return None
    if p.d == 1:
        if p.lo is None or p.lo <= 1:
            return pw
        small = tuple(j**pw.k for j in range(1, p.lo) if j**pw.k < p.lo)
        return Diff(pw, Finite(small))
    if all(pow(j, pw.k, p.d) != p.r for j in range(p.d)):
        return _empty()
    return None


def _meet_number(a, b):
    if isinstance(a, Rationals):
        return b
    if isinstance(b, Rationals):
        return a
    if isinstance(a, Powers):
        return _meet_powers(a, b)
    if isinstance(b, Powers):
        return _meet_powers(b, a)
    if isinstance(a, QInterval) and isinstance(b, QInterval):
        return _meet_intervals(a, b)
    pa, pb = _as_prog(a), _as_prog(b)
    if pa is not None and pb is not None:
        return _meet_prog(pa, pb)
    if isinstance(a, QInterval) and pb is not None:
        return _interval_filter(b, a)
    if isinstance(b, QInterval) and pa is not None:
        return _interval_filter(a, b)
    return None


def meet(a: SetExpr, b: SetExpr):
    """A supported expression for a ∩ b, or None when none is known."""
    if a == b:
        return a
    if _is_empty(a) or _is_empty(b):
        return _empty()
    if isinstance(a, RInterval) or isinstance(b, RInterval):
        return None
    for x, y in ((a, b), (b, a)):
        if isinstance(x, Union):
            l, r = meet(x.left, y), meet(x.right, y)
            return None if l is None or r is None else Union(l, r)
        if isinstance(x, Intersect):
            inner = meet(x.left, x.right)
            return None if inner is None else meet(inner, y)
        if isinstance(x, Diff):
            inner = meet(x.left, y)
            return None if inner is None else Diff(inner, x.right)
    for x, y in ((a, b), (b, a)):
        if isinstance(x, Finite):
            return Finite(tuple(v for v in x.elements if contains(y, v)))
    if _kind(a) != _kind(b):
        return _empty()
    if isinstance(a, Product):
        l, r = meet(a.left, b.left), meet(a.right, b.right)
        return None if l is None or r is None else Product(l, r)
    if isinstance(a, PFin):
        inner = meet(a.inner, b.inner)
        return None if inner is None else PFin(inner)
    if isinstance(a, FFin):
        return None
    return _meet_number(a, b)


def _meet_or_fail(a, b) -> SetExpr:
    c = meet(a, b)
    if c is None:
        raise Unsupported(f"no closed form for the intersection of {a} and {b}")
    return c


# ---------------------------------------------------------------------------
# closed forms

_N = ALPHA


def count_form(e: SetExpr) -> CountForm:
    """Eventual closed form of the level counts of e."""
    try:
        return _form(e)
    except RecursionError:
        raise Unsupported("expression too deeply nested") from None


@lru_cache(maxsize=4096)
def _form(e: SetExpr) -> CountForm:
    t = type(e)
    if t is Naturals:
        return CountForm(1, _N)
    if t is Naturals0:
        return CountForm(1, _N + 1)
    if t is Integers:
        return CountForm(1, _N.scale(2) + 1)
    if t is Rationals:
        return CountForm(1, (_N * _N).scale(2) + 1)
    if t is Finite:
        m0 = max((_level_holding(x) for x in e.elements), default=1)
        return CountForm(m0, Value.const(len(e.elements)))
    if t is NatProg:
        m0 = max(_level_divisible(e.d), _level_reaching(e.a))
        return CountForm(m0, _N.scale(Fraction(1, e.d)) + (1 - (-(-e.a // e.d))))
    if t is IntProg:
        return CountForm(_level_divisible(e.d), _N.scale(Fraction(2, e.d)) + (1 if e.a % e.d == 0 else 0))
    if t is Powers:
        m0 = _least_level(lambda m: math.factorial(m) % e.k == 0, f"{e.k}-th roots")
        return CountForm(m0, _N ** Fraction(1, e.k))
    if t is QInterval:
        m0 = max(_level_holding(e.p), _level_holding(e.q))
        c = 1 - (0 if e.left_closed else 1) - (0 if e.right_closed else 1)
        return CountForm(m0, _N.scale(e.q - e.p) + c)
    if t is RInterval:
        raise Unsupported("real intervals have no finite levels; use num for their numerosity")
    if t is Product:
        a, b = _form(e.left), _form(e.right)
        return CountForm(max(a.threshold, b.threshold), a.form * b.form)
    if t is PFin:
        a = _form(e.inner)
        return CountForm(a.threshold, power(2, a.form))
    if t is FFin:
        x, y = _form(e.domain), _form(e.target)
        if y.form.is_zero():
            raise EmptyTarget(f"finite functions into the empty set {e.target}")
        start = _least_level(
            lambda m: m >= y.threshold and y.at_level(m) > 0, f"a nonempty cut of {e.target}"
        )
        return CountForm(max(x.threshold, start), power(y.form, x.form))
    if t is Intersect:
        return _form(_meet_or_fail(e.left, e.right))
    if t in (Union, Diff):
        a, b = _form(e.left), _form(e.right)
        c = _form(_meet_or_fail(e.left, e.right))
        m0 = max(a.threshold, b.threshold, c.threshold)
        if t is Union:
            return CountForm(m0, a.form + b.form - c.form)
        return CountForm(m0, a.form - c.form)
    raise TypeError(f"not a set expression: {e!r}")


def has_real_part(e: SetExpr) -> bool:
    if isinstance(e, RInterval):
        return True
    return any(has_real_part(c) for c in _children(e))


def _children(e):
    if isinstance(e, (Union, Intersect, Diff, Product)):
        return (e.left, e.right)
    if isinstance(e, PFin):
        return (e.inner,)
    if isinstance(e, FFin):
        return (e.domain, e.target)
    return ()


def num(e: SetExpr) -> Value:
    """The numerosity of e as a value in a (and b for real intervals)."""
    if has_real_part(e):
        from .measure import num_plurinterval, plurinterval_of

        return num_plurinterval(plurinterval_of(e))
    return count_form(e).form


# ---------------------------------------------------------------------------
# verification against brute force


@dataclass(frozen=True)
class Check:
    m: int
    n_m: str
    brute: int | None
    closed: int | None
    match: bool | None  # None when skipped

    def status(self) -> str:
        if self.match is None:
            return "skipped"
        return "yes" if self.match else "NO"


@dataclass(frozen=True)
class Report:
    expr: str
    threshold: int
    form: str
    checks: tuple[Check, ...] = field(default=())

    @property
    def passed(self) -> bool:
        return all(c.match is not False for c in self.checks)

    @property
    def checked(self) -> int:
        return sum(c.match is not None for c in self.checks)

    def text(self) -> str:
        lines = ["m\tn_m\tbrute\tclosed\tmatch"]
        for c in self.checks:
            cells = (c.m, c.n_m, _cell(c.brute), _cell(c.closed), c.status())
            lines.append("\t".join(str(x) for x in cells))
        lines.append("PASS" if self.passed else "FAIL")
        return "\n".join(lines)

    def as_json(self) -> dict:
        return {
            "expr": self.expr,
            "threshold": self.threshold,
            "form": self.form,
            "passed": self.passed,
            "report": [
                {"m": c.m, "n_m": c.n_m, "brute": c.brute, "closed": c.closed,
                 "match": c.match, "status": c.status()}
                for c in self.checks
            ],
        }


def _cell(x) -> str:
    return "skipped" if x is None else str(x)


def _level_text(m: int) -> str:
    if m <= 6:
        return str(labels.level_value(m))
    f = math.factorial(m)
    return f"{f}^{f}"


def verify(e: SetExpr, m_max: int, budget_limit: int | None = None) -> Report:
    """Compare brute counts and the closed form at levels m0..m_max."""
    cf = count_form(e)
    checks = []
    for m in range(cf.threshold, m_max + 1):
        try:
            brute = labels.count_brute(e, m, labels.Budget(budget_limit))
            closed = cf.at_level(m)
        except ComplexityExceeded:
            checks.append(Check(m, _level_text(m), None, None, None))
            continue
        checks.append(Check(m, _level_text(m), brute, closed, brute == closed))
    return Report(str(e), cf.threshold, cf.render(), tuple(checks))


def report_json(report: Report) -> str:
    return json.dumps(report.as_json(), sort_keys=True)
