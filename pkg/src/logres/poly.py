"""Polynomials in the local ring at the origin.

Monomials are exponent tuples.  The monomial order is local and weighted:
a monomial of lower weighted degree is *greater*; ties are broken by the exact
reverse of weighted degree-reverse-lexicographic order, so the whole local
order is the inverse of a global weighted degrevlex order.  The constant
monomial is the largest.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from operator import add, sub
from typing import Dict, Iterable, Optional, Sequence, Tuple

from .coeffield import RatFunc, render_scalar
from .errors import InvariantViolation

Monomial = Tuple[int, ...]


@dataclass(frozen=True)
class Ring:
    """Variables, weights, optional parameter name and distinguished variable."""

    names: Tuple[str, ...]
    weights: Tuple[int, ...] = ()
    param: Optional[str] = None
    distinguished: int = 0
    _keycache: dict = field(default_factory=dict, compare=False, hash=False, repr=False)

    def __post_init__(self):
        names = tuple(self.names)
        object.__setattr__(self, "names", names)
        if len(set(names)) != len(names):
            raise ValueError(f"duplicate variable names in {names}")
        if not names:
            raise ValueError("at least one variable is required")
        weights = tuple(self.weights) if self.weights else (1,) * len(names)
        if len(weights) != len(names):
            raise ValueError(f"expected {len(names)} weights, got {len(weights)}")
        if any(int(w) != w or w < 1 for w in weights):
            raise ValueError("weights must be positive integers")
        object.__setattr__(self, "weights", tuple(int(w) for w in weights))
        if self.param is not None and self.param in names:
            raise ValueError(f"parameter {self.param!r} clashes with a variable")
        if not 0 <= self.distinguished < len(names):
            raise ValueError("distinguished variable index out of range")

    @property
    def n(self) -> int:
        return len(self.names)

    @property
    def parametric(self) -> bool:
        return self.param is not None

    # -- scalars --------------------------------------------------------------
    def coerce(self, c):
        if self.param is not None:
            return c if isinstance(c, RatFunc) else RatFunc._coerce(c)
        if isinstance(c, RatFunc):
            if c.is_constant():
                return c.constant_value()
            raise TypeError("parametric coefficient in a ring without parameter")
        return Fraction(c)

    def param_element(self):
        if self.param is None:
            raise ValueError("ring has no parameter")
        return RatFunc.param()

    # -- monomials ------------------------------------------------------------
    def wdeg(self, m: Monomial) -> int:
        return sum(w * e for w, e in zip(self.weights, m))

    def key(self, m: Monomial):
        """Sort key: a larger key is a larger monomial in the local order."""
        k = self._keycache.get(m)
        if k is None:
            k = (-self.wdeg(m),) + tuple(reversed(m))
            self._keycache[m] = k
        return k

    def one_monomial(self) -> Monomial:
        return (0,) * self.n

    def unit_monomial(self, i: int) -> Monomial:
        return tuple(1 if j == i else 0 for j in range(self.n))

    # -- constructors ---------------------------------------------------------
    def zero(self) -> "Polynomial":
        return Polynomial(self, {})

    def one(self) -> "Polynomial":
        return self.const(1)

    def const(self, c) -> "Polynomial":
        c = self.coerce(c)
        return Polynomial(self, {self.one_monomial(): c} if c else {})

    def var(self, i) -> "Polynomial":
        if isinstance(i, str):
            i = self.names.index(i)
        return Polynomial(self, {self.unit_monomial(i): self.coerce(1)})

    def monomial(self, m: Monomial, c=1) -> "Polynomial":
        c = self.coerce(c)
        return Polynomial(self, {tuple(m): c} if c else {})

    def from_terms(self, terms) -> "Polynomial":
        out = {}
        for m, c in dict(terms).items():
            c = self.coerce(c)
            if c:
                out[tuple(m)] = c
        return Polynomial(self, out)

    def restricted(self) -> "Ring":
        """Ring of the hyperplane section {x_distinguished = 0}."""
        d = self.distinguished
        names = self.names[:d] + self.names[d + 1:]
        weights = self.weights[:d] + self.weights[d + 1:]
        return Ring(names, weights, self.param, 0)

    def with_distinguished(self, i: int) -> "Ring":
        return Ring(self.names, self.weights, self.param, i)

    def without_param(self) -> "Ring":
        return Ring(self.names, self.weights, None, self.distinguished)

    def parse(self, text: str) -> "Polynomial":
        from .parser import parse_polynomial

        return parse_polynomial(text, self)


# ---------------------------------------------------------------------------
# monomial helpers

def mono_mul(a: Monomial, b: Monomial) -> Monomial:
    return tuple(map(add, a, b))


def mono_div(a: Monomial, b: Monomial) -> Monomial:
    return tuple(map(sub, a, b))


def divides(a: Monomial, b: Monomial) -> bool:
    return all(x <= y for x, y in zip(a, b))


def mono_lcm(a: Monomial, b: Monomial) -> Monomial:
    return tuple(max(x, y) for x, y in zip(a, b))


def coprime(a: Monomial, b: Monomial) -> bool:
    return all(not (x and y) for x, y in zip(a, b))


def weighted_degree(m: Monomial, weights: Sequence[int]) -> int:
    return sum(w * e for w, e in zip(weights, m))


def compare(m1: Monomial, m2: Monomial, ring: Ring) -> int:
    """Three-way comparison in the local order: 1 if m1 is greater, 0 if equal, -1 if less."""
    if len(m1) != len(m2):
        raise ValueError("monomials of different arity")
    k1, k2 = ring.key(tuple(m1)), ring.key(tuple(m2))
    return (k1 > k2) - (k1 < k2)


def monomials_up_to(weights: Sequence[int], bound: int):
    """All exponent tuples of weighted degree <= bound."""
    n = len(weights)
    out = []

    def rec(i, prefix, remaining):
        if i == n:
            out.append(tuple(prefix))
            return
        w = weights[i]
        for e in range(remaining // w + 1):
            prefix.append(e)
            rec(i + 1, prefix, remaining - e * w)
            prefix.pop()

    if bound >= 0:
        rec(0, [], bound)
    return out


def render_monomial(m: Monomial, names: Sequence[str]) -> str:
    parts = []
    for name, e in zip(names, m):
        if e == 1:
            parts.append(name)
        elif e > 1:
            parts.append(f"{name}^{e}")
    return "*".join(parts) if parts else "1"


# ---------------------------------------------------------------------------

class Polynomial:
    """Finite map from monomials to nonzero coefficients over a :class:`Ring`."""

    __slots__ = ("ring", "terms", "_lm")

    def __init__(self, ring: Ring, terms: Dict[Monomial, object]):
        self.ring = ring
        self.terms = terms
        self._lm = None

    # -- basic protocol -------------------------------------------------------
    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self.terms == other.terms
        if isinstance(other, (int, Fraction, RatFunc)):
            return self == self.ring.const(other)
        return NotImplemented

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def copy(self) -> "Polynomial":
        return Polynomial(self.ring, dict(self.terms))

    def _wrap(self, other) -> "Polynomial":
        if isinstance(other, Polynomial):
            if other.ring.names != self.ring.names:
                raise ValueError("polynomials over different variable sets")
            return other
        return self.ring.const(other)

    # -- order data -----------------------------------------------------------
    def lm(self) -> Monomial:
        if self._lm is None:
            if not self.terms:
                raise ValueError("zero polynomial has no leading monomial")
            self._lm = max(self.terms, key=self.ring.key)
        return self._lm

    def lc(self):
        return self.terms[self.lm()]

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda mc: self.ring.key(mc[0]), reverse=True)

    def max_wdeg(self) -> int:
        return max(self.ring.wdeg(m) for m in self.terms)

    def min_wdeg(self) -> int:
        return min(self.ring.wdeg(m) for m in self.terms)

    def ecart(self) -> int:
        return self.max_wdeg() - self.ring.wdeg(self.lm())

    def constant_term(self):
        return self.terms.get(self.ring.one_monomial(), self.ring.coerce(0))

    def is_unit(self) -> bool:
        return self.ring.one_monomial() in self.terms

    def is_constant(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and self.ring.one_monomial() in self.terms)

    # -- arithmetic -----------------------------------------------------------
    def __neg__(self):
        return Polynomial(self.ring, {m: -c for m, c in self.terms.items()})

    def __add__(self, other):
        other = self._wrap(other)
        if not other.terms:
            return self
        out = dict(self.terms)
        for m, c in other.terms.items():
            v = out.get(m)
            if v is None:
                out[m] = c
            else:
                v = v + c
                if v:
                    out[m] = v
                else:
                    del out[m]
        return Polynomial(self.ring, out)

    __radd__ = __add__

    def __sub__(self, other):
        other = self._wrap(other)
        if not other.terms:
            return self
        out = dict(self.terms)
        for m, c in other.terms.items():
            v = out.get(m)
            if v is None:
                out[m] = -c
            else:
                v = v - c
                if v:
                    out[m] = v
                else:
                    del out[m]
        return Polynomial(self.ring, out)

    def __rsub__(self, other):
        return self._wrap(other) - self

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, RatFunc)):
            return self.scale(other)
        other = self._wrap(other)
        if not self.terms or not other.terms:
            return self.ring.zero()
        a, b = self.terms, other.terms
        if len(a) < len(b):
            a, b = b, a
        out: dict = {}
        for m2, c2 in b.items():
            for m1, c1 in a.items():
                m = tuple(map(add, m1, m2))
                v = out.get(m)
                out[m] = c1 * c2 if v is None else v + c1 * c2
        return Polynomial(self.ring, {m: c for m, c in out.items() if c})

    def __rmul__(self, other):
        return self.__mul__(other)

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power of a polynomial")
        out = self.ring.one()
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def scale(self, c) -> "Polynomial":
        c = self.ring.coerce(c)
        if not c:
            return self.ring.zero()
        return Polynomial(self.ring, {m: v * c for m, v in self.terms.items()})

    def mul_term(self, mono: Monomial, c) -> "Polynomial":
        """Multiply by the single term ``c * x^mono``."""
        if not c:
            return self.ring.zero()
        return Polynomial(
            self.ring, {tuple(map(add, m, mono)): v * c for m, v in self.terms.items()}
        )

    def monic(self) -> "Polynomial":
        if not self.terms:
            return self
        return self.scale(1 / self.lc())

    # -- calculus and substitutions ------------------------------------------
    def diff(self, i: int) -> "Polynomial":
        out = {}
        for m, c in self.terms.items():
            e = m[i]
            if e:
                mm = m[:i] + (e - 1,) + m[i + 1:]
                out[mm] = c * e
        return Polynomial(self.ring, out)

    def restrict(self, ring: Optional[Ring] = None) -> "Polynomial":
        """Substitute x_distinguished = 0; result lives in the restricted ring."""
        d = self.ring.distinguished
        target = ring or self.ring.restricted()
        return Polynomial(
            target, {m[:d] + m[d + 1:]: c for m, c in self.terms.items() if m[d] == 0}
        )

    def subs_param(self, value, ring: Optional[Ring] = None) -> "Polynomial":
        """Specialize the parameter; result lives over Q."""
        target = ring or self.ring.without_param()
        out = {}
        for m, c in self.terms.items():
            v = c.substitute(value) if isinstance(c, RatFunc) else Fraction(c)
            if v:
                out[m] = v
        return Polynomial(target, out)

    def to_ring(self, ring: Ring) -> "Polynomial":
        return Polynomial(ring, {m: ring.coerce(c) for m, c in self.terms.items()})

    def truncate(self, bound: int) -> "Polynomial":
        """Drop the terms of weighted degree >= bound."""
        wdeg = self.ring.wdeg
        return Polynomial(self.ring, {m: c for m, c in self.terms.items() if wdeg(m) < bound})

    # -- display --------------------------------------------------------------
    def render(self) -> str:
        if not self.terms:
            return "0"
        names = self.ring.names
        param = self.ring.param or "t"
        out = ""
        for m, c in self.sorted_terms():
            mono = render_monomial(m, names)
            coeff, negative = _coeff_text(c, param)
            if mono == "1":
                body = coeff if coeff else "1"
            elif not coeff:
                body = mono
            else:
                body = f"{coeff}*{mono}"
            if not out:
                out = ("-" if negative else "") + body
            else:
                out += ("-" if negative else "+") + body
        return out

    def __str__(self):
        return self.render()

    def __repr__(self):
        return f"Polynomial({self.render()!r})"


def _coeff_text(c, param: str):
    """Return (text, negative) with ``text`` empty for a unit coefficient."""
    if isinstance(c, RatFunc):
        if c.is_constant():
            c = c.constant_value()
        else:
            if c.is_polynomial() and len([a for a in c.num if a]) == 1:
                lead = c.num[-1]
                if lead < 0:
                    return (-c).render(param), True
                return c.render(param), False
            if c.is_polynomial():
                return f"({c.render(param)})", False
            num_terms = [a for a in c.num if a]
            if len(num_terms) == 1 and num_terms[0] < 0:
                return (-c).render(param), True
            return c.render(param), False
    c = Fraction(c)
    negative = c < 0
    c = abs(c)
    if c == 1:
        return "", negative
    return render_scalar(c), negative


def partial_derivative(p: Polynomial, i) -> Polynomial:
    if isinstance(i, str):
        i = p.ring.names.index(i)
    return p.diff(i)


def restrict_hyperplane(p: Polynomial) -> Polynomial:
    return p.restrict()


def gradient(p: Polynomial):
    return [p.diff(i) for i in range(p.ring.n)]


def poly_arith(p: Polynomial, q: Polynomial, op: str) -> Polynomial:
    if p.ring.names != q.ring.names or p.ring.weights != q.ring.weights:
        raise ValueError("polynomials over different rings")
    if op == "add":
        return p + q
    if op == "sub":
        return p - q
    if op == "mul":
        return p * q
    raise ValueError(f"unknown operation {op!r}")


# ---------------------------------------------------------------------------

class LocalFraction:
    """numerator / denominator with a unit denominator; an element of the local ring.

    No gcd is taken; equality is decided by cross-multiplication.
    """

    __slots__ = ("num", "den")

    def __init__(self, num: Polynomial, den: Optional[Polynomial] = None):
        if den is None:
            den = num.ring.one()
        if not den.is_unit():
            raise InvariantViolation(f"denominator {den} is not a unit of the local ring")
        self.num = num
        self.den = den

    @property
    def ring(self) -> Ring:
        return self.num.ring

    @classmethod
    def of(cls, x, ring: Optional[Ring] = None) -> "LocalFraction":
        if isinstance(x, LocalFraction):
            return x
        if isinstance(x, Polynomial):
            return cls(x)
        return cls(ring.const(x))

    def __bool__(self):
        return bool(self.num)

    def is_zero(self) -> bool:
        return not self.num

    def __eq__(self, other):
        if isinstance(other, (Polynomial, int, Fraction, RatFunc)):
            other = LocalFraction.of(other, self.ring)
        if not isinstance(other, LocalFraction):
            return NotImplemented
        if self.den == other.den:
            return self.num == other.num
        return not (self.num * other.den - other.num * self.den)

    __hash__ = None

    def __neg__(self):
        return LocalFraction(-self.num, self.den)

    def __add__(self, other):
        other = LocalFraction.of(other, self.ring)
        if not other.num:
            return self
        if not self.num:
            return other
        if self.den == other.den:
            return LocalFraction(self.num + other.num, self.den)
        return LocalFraction(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __sub__(self, other):
        return self + (-LocalFraction.of(other, self.ring))

    def __rsub__(self, other):
        return LocalFraction.of(other, self.ring) - self

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, RatFunc)):
            return LocalFraction(self.num.scale(other), self.den)
        if isinstance(other, Polynomial):
            return LocalFraction(self.num * other, self.den)
        if not isinstance(other, LocalFraction):
            return NotImplemented
        return LocalFraction(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        """Division by a unit (polynomial or local fraction) or a nonzero scalar."""
        if isinstance(other, (int, Fraction, RatFunc)):
            return LocalFraction(self.num.scale(1 / self.ring.coerce(other)), self.den)
        other = LocalFraction.of(other, self.ring)
        return LocalFraction(self.num * other.den, self.den * other.num)

    def diff(self, i: int) -> "LocalFraction":
        """Quotient rule: (u p' - p u') / u^2."""
        dn = self.num.diff(i)
        dd = self.den.diff(i)
        if not dd:
            return LocalFraction(dn, self.den)
        return LocalFraction(dn * self.den - self.num * dd, self.den * self.den)

    def normalized(self) -> "LocalFraction":
        """Scale numerator and denominator so the denominator's constant term is 1."""
        c = self.den.constant_term()
        if c == 1:
            return self
        inv = 1 / c
        return LocalFraction(self.num.scale(inv), self.den.scale(inv))

    def series(self, bound: int) -> Polynomial:
        """Taylor expansion truncated below weighted degree ``bound``."""
        den = self.den
        c0 = den.constant_term()
        ring = self.ring
        rest = (den - ring.const(c0)).scale(-1 / c0).truncate(bound)
        inv = ring.const(1 / c0)
        acc = inv
        power = inv
        if rest:
            mindeg = rest.min_wdeg()
            for _ in range(bound // mindeg + 1):
                power = (power * rest).truncate(bound)
                if not power:
                    break
                acc = acc + power
        return (self.num * acc).truncate(bound)

    def subs_param(self, value) -> "LocalFraction":
        den = self.den.subs_param(value)
        if not den.is_unit():
            from .errors import SpecializationError

            raise SpecializationError(f"denominator {self.den} is not a unit at t = {value}")
        return LocalFraction(self.num.subs_param(value), den)

    def render(self) -> str:
        if self.den == self.den.ring.one():
            return self.num.render()
        num = self.num.render()
        if len(self.num) > 1:
            num = f"({num})"
        return f"{num}/({self.den.render()})"

    def __str__(self):
        return self.render()

    def __repr__(self):
        return f"LocalFraction({self.render()!r})"


def fraction_arith(a: LocalFraction, b: LocalFraction, op: str) -> LocalFraction:
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    raise ValueError(f"unknown operation {op!r}")


def common_denominator(fracs: Iterable[LocalFraction]):
    """Rewrite fractions over one shared denominator; returns (numerators, denominator)."""
    fracs = list(fracs)
    ring = fracs[0].ring
    den = ring.one()
    seen = []
    for fr in fracs:
        if not fr.num:
            continue
        if fr.den == den or any(fr.den == s for s in seen):
            continue
        seen.append(fr.den)
        den = den * fr.den
    nums = []
    for fr in fracs:
        if not fr.num:
            nums.append(ring.zero())
        elif fr.den == den:
            nums.append(fr.num)
        else:
            # den is a product containing fr.den as a factor
            q = _exact_quotient(den, fr.den)
            nums.append(fr.num * q)
    return nums, den


def _exact_quotient(a: Polynomial, b: Polynomial) -> Polynomial:
    """a / b for polynomials where b divides a exactly (multivariate long division)."""
    ring = a.ring
    if b.is_constant():
        return a.scale(1 / b.constant_term())
    # divide using a global order (largest weighted degree first) to guarantee termination
    key = lambda m: (ring.wdeg(m), m)
    lb = max(b.terms, key=key)
    cb = b.terms[lb]
    q = ring.zero()
    r = a
    while r:
        lr = max(r.terms, key=key)
        if not divides(lb, lr):
            raise InvariantViolation("inexact polynomial quotient")
        t = mono_div(lr, lb)
        c = r.terms[lr] / cb
        q = q + ring.monomial(t, c)
        r = r - b.mul_term(t, c)
    return q
