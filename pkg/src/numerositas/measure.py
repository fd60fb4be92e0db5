"""Plurintervals, their numerosities and counting measures.

A plurinterval is a finite union of intervals with rational endpoints.  Its
numerosity is linear in ``b``: each ``[p,q)`` contributes ``(q-p)*b``, a
closed right end adds 1 and an open left end subtracts 1.  This follows
from exact translation invariance and additivity alone, so no finite model
of ``b`` is needed.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Union as TUnion

from ._scan import Cursor
from .errors import NumerositasError, ParseError, Unsupported
from .euclid import ALPHA, BETA, ZERO, Classification, Special, Value, classify, divide, sign, standard_part
from .setlang import Diff, Finite, Intersect, QInterval, RInterval, SetExpr, Union

MeasureValue = TUnion[Fraction, Special]


@dataclass(frozen=True)
class Piece:
    p: Fraction
    q: Fraction
    left_closed: bool = True
    right_closed: bool = False

    def __post_init__(self):
        object.__setattr__(self, "p", Fraction(self.p))
        object.__setattr__(self, "q", Fraction(self.q))
        if not (self.p < self.q or (self.p == self.q and self.left_closed and self.right_closed)):
            raise NumerositasError(f"empty piece from {self.p} to {self.q}")

    def contains(self, x: Fraction) -> bool:
        lo = self.p < x or (self.left_closed and x == self.p)
        hi = x < self.q or (self.right_closed and x == self.q)
        return lo and hi

    def render(self) -> str:
        lb = "[" if self.left_closed else "("
        rb = "]" if self.right_closed else ")"
        return f"{lb}{self.p},{self.q}{rb}"


def _connected(a: Piece, b: Piece) -> bool:
    """a starts no later than b; do they form one interval?"""
    return b.p < a.q or (b.p == a.q and (a.right_closed or b.left_closed))


def _normalize(pieces) -> tuple[Piece, ...]:
    items = sorted(pieces, key=lambda s: (s.p, not s.left_closed))
    out: list[Piece] = []
    for s in items:
        if out and _connected(out[-1], s):
            a = out[-1]
            if s.q > a.q:
                q, rc = s.q, s.right_closed
            elif s.q < a.q:
                q, rc = a.q, a.right_closed
            else:
                q, rc = a.q, a.right_closed or s.right_closed
            lc = a.left_closed or (s.p == a.p and s.left_closed)
            out[-1] = Piece(a.p, q, lc, rc)
        else:
            out.append(s)
    return tuple(out)


class PlurInterval:
    """A normalized finite union of rational intervals."""

    __slots__ = ("pieces",)

    def __init__(self, pieces=()):
        self.pieces = _normalize(pieces)

    def __eq__(self, other):
        return isinstance(other, PlurInterval) and self.pieces == other.pieces

    def __hash__(self):
        return hash(self.pieces)

    def contains(self, x) -> bool:
        x = Fraction(x)
        return any(s.contains(x) for s in self.pieces)

    def _combine(self, other: PlurInterval, op) -> PlurInterval:
        cuts = sorted({e for s in self.pieces + other.pieces for e in (s.p, s.q)})
        out = []
        for i, x in enumerate(cuts):
            if op(self.contains(x), other.contains(x)):
                out.append(Piece(x, x, True, True))
            if i + 1 < len(cuts):
                mid = (x + cuts[i + 1]) / 2
                if op(self.contains(mid), other.contains(mid)):
                    out.append(Piece(x, cuts[i + 1], False, False))
        return PlurInterval(out)

    def union(self, other: PlurInterval) -> PlurInterval:
        return PlurInterval(self.pieces + other.pieces)

    def intersection(self, other: PlurInterval) -> PlurInterval:
        return self._combine(other, lambda a, b: a and b)

    def difference(self, other: PlurInterval) -> PlurInterval:
        return self._combine(other, lambda a, b: a and not b)

    def translate(self, r) -> PlurInterval:
        r = Fraction(r)
        return PlurInterval(Piece(s.p + r, s.q + r, s.left_closed, s.right_closed) for s in self.pieces)

    def length(self) -> Fraction:
        return sum((s.q - s.p for s in self.pieces), Fraction(0))

    def render(self) -> str:
        return " u ".join(s.render() for s in self.pieces) if self.pieces else "empty"

    __str__ = render

    def __repr__(self) -> str:
        return f"PlurInterval({self.render()!r})"


def parse_plurinterval(text: str) -> PlurInterval:
    """Parse ``[0,1) u [2,5/2]``; ``empty`` is the empty union."""
    cur = Cursor(text)
    if cur.at("empty"):
        cur.advance()
        cur.finish()
        return PlurInterval()
    pieces = [_piece(cur)]
    while cur.at("u"):
        cur.advance()
        pieces.append(_piece(cur))
    cur.finish()
    return PlurInterval(pieces)


def _piece(cur: Cursor) -> Piece:
    start = cur.tok.pos
    if not cur.at("[", "("):
        cur.fail({"'['", "'('"})
    lc = cur.advance().text == "["
    p = cur.rational()
    cur.expect(",")
    q = cur.rational()
    if not cur.at("]", ")"):
        cur.fail({"']'", "')'"})
    rc = cur.advance().text == "]"
    try:
        return Piece(p, q, lc, rc)
    except NumerositasError as exc:
        raise ParseError(str(exc), start, ("a nonempty interval",)) from None


def plurinterval_of(e: SetExpr) -> PlurInterval:
    """The plurinterval denoted by a set built from real intervals and points."""
    if isinstance(e, RInterval):
        return PlurInterval([Piece(e.p, e.q, e.left_closed, e.right_closed)])
    if isinstance(e, Finite):
        return PlurInterval(Piece(x, x, True, True) for x in e.elements)
    if isinstance(e, (Union, Intersect, Diff)):
        a, b = plurinterval_of(e.left), plurinterval_of(e.right)
        if isinstance(e, Union):
            return a.union(b)
        return a.intersection(b) if isinstance(e, Intersect) else a.difference(b)
    raise Unsupported(f"{e} mixes real intervals with sets that are not plurintervals")


def num_plurinterval(P: PlurInterval) -> Value:
    total, correction = Fraction(0), 0
    for s in P.pieces:
        total += s.q - s.p
        correction += (1 if s.right_closed else 0) - (0 if s.left_closed else 1)
    return BETA.scale(total) + correction


def mu(E, gamma: Value) -> MeasureValue:
    """Standard part of num(E) / gamma, for a positive infinite unit gamma."""
    if sign(gamma) != 1 or classify(gamma) is not Classification.INFINITE:
        raise NumerositasError(f"the unit {gamma} is not positive and infinite")
    if isinstance(E, PlurInterval):
        value = num_plurinterval(E)
    else:
        from .numerosity import num

        value = num(E)
    return standard_part(divide(value, gamma))


def pj_measure(P: PlurInterval) -> MeasureValue:
    """Standard part of num(P restricted to the rationals) / a."""
    from .numerosity import count_form

    value = ZERO
    for s in P.pieces:
        value = value + count_form(QInterval(s.p, s.q, s.left_closed, s.right_closed)).form
    return standard_part(divide(value, ALPHA))


def lebesgue_measure(P: PlurInterval) -> MeasureValue:
    return standard_part(divide(num_plurinterval(P), BETA))


def render_measure(x: MeasureValue) -> str:
    return str(x)
