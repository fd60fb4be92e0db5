"""Ordinals below epsilon_0 in hereditary Cantor normal form.

Both the standard (non-commutative) operations and the natural sum and
product are provided, together with the irreducible ordinals
``theta_j = w^(w^j)``, base-theta digit expansions and the embedding of
ordinals below ``w^w`` as polynomials in ``a + 1``.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from functools import lru_cache, total_ordering

from .errors import ArgumentNotBelowThetaJPlus1, ComplexityExceeded, ExponentNotFinite
from .euclid import ALPHA, ZERO as VALUE_ZERO, Value
from .setlang import NatAdd, NatMul, Nat, Omega, OrdAdd, OrdExpr, OrdMul, OrdPow, Theta

#: largest finite exponent accepted for powers of multi-term ordinals
MAX_FINITE_POWER = 4096
#: bound on the size of a finite power k^n
MAX_COEFFICIENT_BITS = 1 << 24


@total_ordering
@dataclass(frozen=True)
class Ordinal:
    """Sum of ``w^e * c`` terms with strictly decreasing exponents."""

    terms: tuple = ()

    def __lt__(self, other: Ordinal) -> bool:
        return compare(self, other) < 0

    def is_finite(self) -> bool:
        return all(e == ZERO for e, _ in self.terms)

    def __int__(self) -> int:
        if not self.is_finite():
            raise ValueError(f"{self} is infinite")
        return self.terms[0][1] if self.terms else 0

    @property
    def lead(self):
        return self.terms[0][0]

    def render(self) -> str:
        return " + ".join(_term(e, c) for e, c in self.terms) if self.terms else "0"

    def compact(self) -> str:
        return "+".join(_term(e, c) for e, c in self.terms) if self.terms else "0"

    def __str__(self) -> str:
        return self.render()

    def __repr__(self) -> str:
        return f"Ordinal({self.render()!r})"


def _term(e: Ordinal, c: int) -> str:
    if e == ZERO:
        return str(c)
    if e == ONE:
        head = "w"
    elif e.is_finite():
        head = f"w^{int(e)}"
    else:
        inner = e.compact()
        head = f"w^({inner})" if any(ch in inner for ch in "+*^") else f"w^{inner}"
    return head if c == 1 else f"{head}*{c}"


ZERO = Ordinal()
ONE = Ordinal(((ZERO, 1),))
OMEGA = Ordinal(((ONE, 1),))


def nat(k: int) -> Ordinal:
    if k < 0:
        raise ValueError("ordinals are nonnegative")
    return Ordinal(((ZERO, k),)) if k else ZERO


def omega_pow(e: Ordinal, c: int = 1) -> Ordinal:
    return Ordinal(((e, c),))


def compare(a: Ordinal, b: Ordinal) -> int:
    """-1, 0 or 1."""
    for (e1, c1), (e2, c2) in zip(a.terms, b.terms):
        s = compare(e1, e2)
        if s:
            return s
        if c1 != c2:
            return -1 if c1 < c2 else 1
    return (len(a.terms) > len(b.terms)) - (len(a.terms) < len(b.terms))


def _from_dict(d: dict) -> Ordinal:
    return Ordinal(tuple(sorted(((e, c) for e, c in d.items() if c), key=lambda t: t[0], reverse=True)))


# ---------------------------------------------------------------------------
# natural operations


def nat_add(a: Ordinal, b: Ordinal) -> Ordinal:
    d = dict(a.terms)
    for e, c in b.terms:
        d[e] = d.get(e, 0) + c
    return _from_dict(d)


def nat_mul(a: Ordinal, b: Ordinal) -> Ordinal:
    d: dict = {}
    for e1, c1 in a.terms:
        for e2, c2 in b.terms:
            e = nat_add(e1, e2)
            d[e] = d.get(e, 0) + c1 * c2
    return _from_dict(d)


# ---------------------------------------------------------------------------
# standard operations


def ord_add(a: Ordinal, b: Ordinal) -> Ordinal:
    if not b.terms:
        return a
    e, c = b.terms[0]
    head = []
    for e1, c1 in a.terms:
        s = compare(e1, e)
        if s > 0:
            head.append((e1, c1))
        elif s == 0:
            c += c1
            break
        else:
            break
    return Ordinal(tuple(head) + ((e, c),) + b.terms[1:])


def ord_mul(a: Ordinal, b: Ordinal) -> Ordinal:
    if not a.terms or not b.terms:
        return ZERO
    e1, c1 = a.terms[0]
    # a * w^f = w^(e1 + f) for f > 0; these exponents strictly decrease
    # and stay above e1, so the parts concatenate without absorption
    out = []
    for f, d in b.terms:
        if f == ZERO:
            out.append((e1, c1 * d))
            out.extend(a.terms[1:])
        else:
            out.append((ord_add(e1, f), d))
    return Ordinal(tuple(out))


def _split_finite(b: Ordinal) -> tuple[Ordinal, int]:
    """b = limit part + finite part."""
    if b.terms and b.terms[-1][0] == ZERO:
        return Ordinal(b.terms[:-1]), b.terms[-1][1]
    return b, 0


def _power_finite(a: Ordinal, n: int) -> Ordinal:
    if len(a.terms) > 1 and n > MAX_FINITE_POWER:
        raise ComplexityExceeded(f"power {n} of a multi-term ordinal is too large")
    result, base = ONE, a
    while n:
        if n & 1:
            result = ord_mul(result, base)
        n >>= 1
        if n:
            base = ord_mul(base, base)
    return result


def ord_pow(a: Ordinal, b: Ordinal) -> Ordinal:
    if not b.terms:
        return ONE
    if not a.terms:
        return ZERO
    if a == ONE:
        return ONE
    limit, n = _split_finite(b)
    if a.is_finite():
        k = int(a)
        if n * k.bit_length() > MAX_COEFFICIENT_BITS:
            raise ComplexityExceeded(f"{k}^{n} exceeds {MAX_COEFFICIENT_BITS} bits")
        if not limit.terms:
            return nat(k**n)
        # k^(w*x) = w^x, where w*x = limit
        x = Ordinal(tuple((e if not e.is_finite() else nat(int(e) - 1), c) for e, c in limit.terms))
        return ord_mul(omega_pow(x), nat(k**n))
    head = omega_pow(ord_mul(a.lead, limit)) if limit.terms else ONE
    return ord_mul(head, _power_finite(a, n))


def sup(items) -> Ordinal:
    return max(items, default=ZERO)


def minimum(items) -> Ordinal:
    items = list(items)
    if not items:
        raise ValueError("the minimum of an empty family is undefined")
    return min(items)


def sup_min(items) -> tuple[Ordinal, Ordinal | None]:
    items = list(items)
    return sup(items), (min(items) if items else None)


# ---------------------------------------------------------------------------
# irreducible ordinals and base-theta digits


def theta(j: int) -> Ordinal:
    """theta_j = w^(w^j)."""
    return omega_pow(omega_pow(nat(j)))


def is_irreducible(t: Ordinal) -> bool:
    """t is 1 or w^(w^d) for some d."""
    if t == ONE:
        return True
    if len(t.terms) != 1 or t.terms[0][1] != 1:
        return False
    e = t.lead
    return len(e.terms) == 1 and e.terms[0][1] == 1


def irreducible_counterexample(t: Ordinal, rng: random.Random, samples: int = 200):
    """Search for s, u, g < t with s*u + g >= t; None if none is found."""
    if t == ZERO:
        raise ValueError("irreducibility is defined for positive ordinals")
    for _ in range(samples):
        s, u, g = (random_below(t, rng) for _ in range(3))
        if ord_add(ord_mul(s, u), g) >= t:
            return s, u, g
    # the largest predecessors are the likeliest witnesses
    for s in _near_top(t):
        for u in _near_top(t):
            for g in _near_top(t):
                if ord_add(ord_mul(s, u), g) >= t:
                    return s, u, g
    return None


def _near_top(t: Ordinal) -> list[Ordinal]:
    """A few ordinals just below t: CNF prefixes with one coefficient lowered."""
    out = [ZERO, ONE]
    for i, (e, c) in enumerate(t.terms):
        prefix = t.terms[:i]
        out.append(Ordinal(prefix + (((e, c - 1),) if c > 1 else ())))
        if e != ZERO:
            # w^e * (c - 1) + w^e' * 5 with e' just below e
            for e2 in _near_top(e) if len(e.terms) < 4 else ():
                tail = ((e2, 5),) if e2 < e else ()
                out.append(Ordinal(prefix + (((e, c - 1),) if c > 1 else ()) + tail))
    return [x for x in set(out) if x < t]


class ThetaDigits:
    """``sum over k of theta_j^k * b_k`` with powers k decreasing."""

    def __init__(self, j: int, digits):
        self.j = j
        self.digits = tuple(digits)

    def __eq__(self, other):
        return isinstance(other, ThetaDigits) and (self.j, self.digits) == (other.j, other.digits)

    def __hash__(self):
        return hash((self.j, self.digits))

    def render(self) -> str:
        if not self.digits:
            return "0"
        return " + ".join(f"T{self.j}^{k}*({b.compact()})" for k, b in self.digits)

    def __str__(self) -> str:
        return self.render()

    def __repr__(self) -> str:
        return f"ThetaDigits({self.render()!r})"


def to_theta_base(t: Ordinal, j: int) -> ThetaDigits:
    if not t < theta(j + 1):
        raise ArgumentNotBelowThetaJPlus1(f"{t} is not below theta_{j + 1}")
    groups: dict = {}
    for e, c in t.terms:
        # e < w^(j+1), so e = w^j * k + r with r < w^j
        k, r = 0, e
        if j == 0:
            k, r = int(e), ZERO
        elif e.terms and e.lead == nat(j):
            k, r = e.terms[0][1], Ordinal(e.terms[1:])
        groups.setdefault(k, []).append((r, c))
    return ThetaDigits(j, ((k, Ordinal(tuple(groups[k]))) for k in sorted(groups, reverse=True)))


def from_theta_base(f: ThetaDigits) -> Ordinal:
    th = theta(f.j)
    out = ZERO
    for k, b in f.digits:
        out = ord_add(out, ord_mul(ord_pow(th, nat(k)), b))
    return out


# ---------------------------------------------------------------------------
# embedding into the value field


@lru_cache(maxsize=256)
def _omega_image(k: int) -> Value:
    return (ALPHA + 1) ** k


def embed(t: Ordinal) -> Value:
    """Substitute w := a + 1; defined below w^w."""
    out = VALUE_ZERO
    for e, c in t.terms:
        if not e.is_finite():
            raise ExponentNotFinite(f"exponent {e} is infinite")
        out = out + _omega_image(int(e)).scale(c)
    return out


# ---------------------------------------------------------------------------
# expressions and random generation


def evaluate(x: OrdExpr) -> Ordinal:
    t = type(x)
    if t is Omega:
        return OMEGA
    if t is Nat:
        return nat(x.k)
    if t is Theta:
        return theta(x.j)
    ops = {OrdAdd: ord_add, OrdMul: ord_mul, OrdPow: ord_pow, NatAdd: nat_add, NatMul: nat_mul}
    return ops[t](evaluate(x.left), evaluate(x.right))


def random_ordinal(rng: random.Random, depth: int = 2, max_terms: int = 3, max_coeff: int = 5) -> Ordinal:
    """A random ordinal below epsilon_0 with bounded nesting depth."""
    if depth <= 0:
        return nat(rng.randrange(max_coeff + 1))
    exps = {random_ordinal(rng, depth - 1, max_terms, max_coeff) for _ in range(rng.randrange(max_terms + 1))}
    return Ordinal(tuple((e, rng.randint(1, max_coeff)) for e in sorted(exps, reverse=True)))


def random_below(bound: Ordinal, rng: random.Random, depth: int = 3) -> Ordinal:
    """A random ordinal strictly below a positive bound."""
    if bound == ZERO:
        raise ValueError("nothing lies below 0")
    e1, c1 = bound.terms[0]
    if e1 == ZERO:
        return nat(rng.randrange(c1))
    roll = rng.random()
    if depth <= 0 or roll < 0.15:
        return nat(rng.randrange(6))
    if roll < 0.6:
        e = random_below(e1, rng, depth - 1)
        head = omega_pow(e, rng.randint(1, 5))
        return ord_add(head, random_below(omega_pow(e), rng, depth - 1))
    if roll < 0.8 and c1 > 1:
        return ord_add(omega_pow(e1, rng.randint(1, c1 - 1)), random_below(omega_pow(e1), rng, depth - 1))
    rest = Ordinal(bound.terms[1:])
    if rest.terms:
        return ord_add(omega_pow(e1, c1), random_below(rest, rng, depth - 1))
    if c1 > 1:
        return ord_add(omega_pow(e1, c1 - 1), random_below(omega_pow(e1), rng, depth - 1))
    return random_below(bound, rng, depth - 1)
