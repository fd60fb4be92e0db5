"""Expression languages for definable sets and for ordinals.

Set text examples: ``N``, ``mult(3)``, ``qint[0,1/2)``, ``union(Z, {1/2})``,
``ffin(N, natprog(0,2))``.  Ordinal text uses ``w`` for omega, ``theta(j)``,
infix ``+ * ^`` for the standard operations and ``<+> <*>`` for the natural
ones.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from ._scan import Cursor
from .errors import IllFormed, ParseError


# ---------------------------------------------------------------------------
# set expressions


class SetExpr:
    __slots__ = ()

    def render(self) -> str:
        return render(self)

    def __str__(self) -> str:
        return render(self)


def _rat(x) -> Fraction:
    if isinstance(x, bool) or not isinstance(x, (int, Fraction)):
        raise IllFormed(f"expected an exact rational, got {x!r}")
    return Fraction(x)


def _nat(x, least: int, what: str) -> None:
    if isinstance(x, bool) or not isinstance(x, int) or x < least:
        raise IllFormed(f"{what} must be an integer >= {least}, got {x!r}")


@dataclass(frozen=True)
class Finite(SetExpr):
    elements: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "elements", tuple(sorted({_rat(x) for x in self.elements})))


@dataclass(frozen=True)
class Naturals(SetExpr):
    """{1, 2, 3, ...}"""


@dataclass(frozen=True)
class Naturals0(SetExpr):
    """{0, 1, 2, ...}"""


@dataclass(frozen=True)
class Integers(SetExpr):
    pass


@dataclass(frozen=True)
class Rationals(SetExpr):
    pass


@dataclass(frozen=True)
class NatProg(SetExpr):
    """{a + k*d : k >= 0}"""

    a: int
    d: int

    def __post_init__(self):
        _nat(self.a, 0, "natprog start")
        _nat(self.d, 1, "natprog step")


@dataclass(frozen=True)
class IntProg(SetExpr):
    """{a + k*d : k integer}"""

    a: int
    d: int

    def __post_init__(self):
        if isinstance(self.a, bool) or not isinstance(self.a, int):
            raise IllFormed(f"intprog offset must be an integer, got {self.a!r}")
        _nat(self.d, 1, "intprog step")


@dataclass(frozen=True)
class Powers(SetExpr):
    """{j^k : j >= 1}"""

    k: int

    def __post_init__(self):
        _nat(self.k, 1, "power")


def _check_interval(p, q, lc, rc):
    if not (p < q or (p == q and lc and rc)):
        raise IllFormed(f"empty or reversed interval from {p} to {q}")


@dataclass(frozen=True)
class QInterval(SetExpr):
    """Rational points of an interval."""

    p: Fraction
    q: Fraction
    left_closed: bool = True
    right_closed: bool = False

    def __post_init__(self):
        object.__setattr__(self, "p", _rat(self.p))
        object.__setattr__(self, "q", _rat(self.q))
        _check_interval(self.p, self.q, self.left_closed, self.right_closed)


@dataclass(frozen=True)
class RInterval(SetExpr):
    """A real interval."""

    p: Fraction
    q: Fraction
    left_closed: bool = True
    right_closed: bool = False

    def __post_init__(self):
        object.__setattr__(self, "p", _rat(self.p))
        object.__setattr__(self, "q", _rat(self.q))
        _check_interval(self.p, self.q, self.left_closed, self.right_closed)


@dataclass(frozen=True)
class Union(SetExpr):
    left: SetExpr
    right: SetExpr


@dataclass(frozen=True)
class Intersect(SetExpr):
    left: SetExpr
    right: SetExpr


@dataclass(frozen=True)
class Diff(SetExpr):
    left: SetExpr
    right: SetExpr


@dataclass(frozen=True)
class Product(SetExpr):
    left: SetExpr
    right: SetExpr


@dataclass(frozen=True)
class PFin(SetExpr):
    """Finite subsets."""

    inner: SetExpr


@dataclass(frozen=True)
class FFin(SetExpr):
    """Finite partial functions from domain into target."""

    domain: SetExpr
    target: SetExpr


# ---------------------------------------------------------------------------
# ordinal expressions


class OrdExpr:
    __slots__ = ()

    def render(self) -> str:
        return render(self)

    def __str__(self) -> str:
        return render(self)


@dataclass(frozen=True)
class Omega(OrdExpr):
    pass


@dataclass(frozen=True)
class Nat(OrdExpr):
    k: int

    def __post_init__(self):
        _nat(self.k, 0, "natural")


@dataclass(frozen=True)
class Theta(OrdExpr):
    j: int

    def __post_init__(self):
        _nat(self.j, 0, "theta index")


@dataclass(frozen=True)
class OrdAdd(OrdExpr):
    left: OrdExpr
    right: OrdExpr


@dataclass(frozen=True)
class OrdMul(OrdExpr):
    left: OrdExpr
    right: OrdExpr


@dataclass(frozen=True)
class OrdPow(OrdExpr):
    left: OrdExpr
    right: OrdExpr


@dataclass(frozen=True)
class NatAdd(OrdExpr):
    left: OrdExpr
    right: OrdExpr


@dataclass(frozen=True)
class NatMul(OrdExpr):
    left: OrdExpr
    right: OrdExpr


# ---------------------------------------------------------------------------
# rendering

_ATOMS = {Naturals: "N", Naturals0: "N0", Integers: "Z", Rationals: "Q"}
_BINARY = {Union: "union", Intersect: "inter", Diff: "diff", Product: "prod", FFin: "ffin"}

# (symbol, precedence, right associative)
_ORD_OPS = {
    OrdAdd: (" + ", 1, False),
    NatAdd: (" <+> ", 1, False),
    OrdMul: ("*", 2, False),
    NatMul: (" <*> ", 2, False),
    OrdPow: ("^", 3, True),
}


def render(e) -> str:
    """Canonical text for a set or ordinal expression."""
    if isinstance(e, OrdExpr):
        return _render_ord(e)
    t = type(e)
    if t in _ATOMS:
        return _ATOMS[t]
    if t is Finite:
        return "{" + ", ".join(str(x) for x in e.elements) + "}"
    if t is NatProg:
        return f"mult({e.d})" if e.a == e.d else f"natprog({e.a},{e.d})"
    if t is IntProg:
        return f"intprog({e.a},{e.d})"
    if t is Powers:
        return f"powers({e.k})"
    if t in (QInterval, RInterval):
        name = "qint" if t is QInterval else "rint"
        lb = "[" if e.left_closed else "("
        rb = "]" if e.right_closed else ")"
        return f"{name}{lb}{e.p},{e.q}{rb}"
    if t is PFin:
        return f"pfin({render(e.inner)})"
    if t is FFin:
        return f"ffin({render(e.domain)}, {render(e.target)})"
    if t in _BINARY:
        return f"{_BINARY[t]}({render(e.left)}, {render(e.right)})"
    raise TypeError(f"not an expression: {e!r}")


def _ord_prec(e) -> int:
    return _ORD_OPS[type(e)][1] if type(e) in _ORD_OPS else 4


def _render_ord(e) -> str:
    t = type(e)
    if t is Omega:
        return "w"
    if t is Nat:
        return str(e.k)
    if t is Theta:
        return f"theta({e.j})"
    sym, prec, right_assoc = _ORD_OPS[t]
    left, right = _render_ord(e.left), _render_ord(e.right)
    lp, rp = _ord_prec(e.left), _ord_prec(e.right)
    if lp < prec or (right_assoc and lp == prec):
        left = f"({left})"
    if rp < prec or (not right_assoc and rp == prec):
        right = f"({right})"
    return f"{left}{sym}{right}"


# ---------------------------------------------------------------------------
# parsing

_SET_START = frozenset(
    {"N", "N0", "Z", "Q", "'{'", "mult", "natprog", "intprog", "powers", "qint", "rint",
     "union", "inter", "diff", "prod", "pfin", "ffin"}
)


def _too_deep() -> ParseError:
    return ParseError("expression nested too deeply", 1, ("a shallower expression",))


def parse_set(text: str) -> SetExpr:
    cur = Cursor(text)
    try:
        e = _set(cur)
    except RecursionError:
        raise _too_deep() from None
    cur.finish()
    return e


def _build(cls, pos, *args):
    try:
        return cls(*args)
    except IllFormed as exc:
        raise ParseError(str(exc), pos, ("a well-formed set",)) from None


def _set(cur: Cursor) -> SetExpr:
    t = cur.tok
    if t.kind == "name" and t.text in ("N", "N0", "Z", "Q"):
        cur.advance()
        return {"N": Naturals, "N0": Naturals0, "Z": Integers, "Q": Rationals}[t.text]()
    if cur.at("{"):
        cur.advance()
        items = []
        if not cur.at("}"):
            items.append(cur.rational())
            while cur.at(","):
                cur.advance()
                items.append(cur.rational())
        cur.expect("}")
        return Finite(tuple(items))
    if t.kind != "name" or t.text not in _SET_START:
        cur.fail(_SET_START)
    cur.advance()
    name = t.text
    if name in ("qint", "rint"):
        if not cur.at("[", "(", ")", "]"):
            cur.fail({"'['", "'('"})
        lc = cur.advance().text == "["
        p = cur.rational()
        cur.expect(",")
        q = cur.rational()
        if not cur.at("[", "(", ")", "]"):
            cur.fail({"']'", "')'"})
        rc = cur.advance().text == "]"
        return _build(QInterval if name == "qint" else RInterval, t.pos, p, q, lc, rc)
    cur.expect("(")
    if name == "mult":
        d = cur.integer()
        e = _build(NatProg, t.pos, d, d)
    elif name in ("natprog", "intprog"):
        a = cur.integer()
        cur.expect(",")
        d = cur.integer()
        e = _build(NatProg if name == "natprog" else IntProg, t.pos, a, d)
    elif name == "powers":
        e = _build(Powers, t.pos, cur.integer())
    elif name == "pfin":
        e = PFin(_set(cur))
    else:
        left = _set(cur)
        cur.expect(",")
        right = _set(cur)
        e = {"union": Union, "inter": Intersect, "diff": Diff, "prod": Product, "ffin": FFin}[name](left, right)
    cur.expect(")")
    return e


_ORD_START = frozenset({"'w'", "natural", "theta", "'('"})


def parse_ordinal(text: str) -> OrdExpr:
    cur = Cursor(text)
    try:
        e = _ord_sum(cur)
    except RecursionError:
        raise _too_deep() from None
    cur.finish()
    return e


def _ord_sum(cur: Cursor) -> OrdExpr:
    e = _ord_prod(cur)
    while cur.at("+", "<+>"):
        op = cur.advance().text
        e = (OrdAdd if op == "+" else NatAdd)(e, _ord_prod(cur))
    return e


def _ord_prod(cur: Cursor) -> OrdExpr:
    e = _ord_pow(cur)
    while cur.at("*", "<*>"):
        op = cur.advance().text
        e = (OrdMul if op == "*" else NatMul)(e, _ord_pow(cur))
    return e


def _ord_pow(cur: Cursor) -> OrdExpr:
    e = _ord_atom(cur)
    if cur.at("^"):
        cur.advance()
        return OrdPow(e, _ord_pow(cur))
    return e


def _ord_atom(cur: Cursor) -> OrdExpr:
    t = cur.tok
    if t.kind == "int":
        cur.advance()
        return Nat(int(t.text))
    if cur.at("w"):
        cur.advance()
        return Omega()
    if cur.at("theta"):
        cur.advance()
        cur.expect("(")
        j = cur.integer(signed=False)
        cur.expect(")")
        return Theta(j)
    if cur.at("("):
        cur.advance()
        e = _ord_sum(cur)
        cur.expect(")")
        return e
    cur.fail(_ORD_START)
