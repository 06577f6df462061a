"""Exact scalars: rationals, and rational functions in a single parameter ``t``.

Rationals are plain :class:`fractions.Fraction`.  Rational functions are
:class:`RatFunc` values, kept reduced (gcd-free, monic denominator) after every
operation.  A computation either works over Q (all coefficients ``Fraction``)
or over Q(t) (all coefficients ``RatFunc``); :func:`arith` refuses to mix them.

While a :func:`collect_poles` block is active, every non-constant polynomial in
``t`` that is inverted is recorded.  The recorded set is the locus of parameter
values at which a generic computation may not specialize.
"""
from __future__ import annotations

import contextlib
import contextvars
from fractions import Fraction
from typing import Iterator, Tuple, Union

from .errors import MalformedScalarError, SpecializationError

UPoly = Tuple[Fraction, ...]  # coefficients, lowest degree first, no trailing zeros

_ZERO: UPoly = ()
_ONE: UPoly = (Fraction(1),)

_poles: contextvars.ContextVar = contextvars.ContextVar("logres_poles", default=None)


# ---------------------------------------------------------------------------
# univariate polynomials over Q

def _trim(c):
    c = list(c)
    while c and not c[-1]:
        c.pop()
    return tuple(c)


def _padd(a: UPoly, b: UPoly) -> UPoly:
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, c in enumerate(b):
        out[i] += c
    return _trim(out)


def _pneg(a: UPoly) -> UPoly:
    return tuple(-c for c in a)


def _psub(a: UPoly, b: UPoly) -> UPoly:
    return _padd(a, _pneg(b))


def _pmul(a: UPoly, b: UPoly) -> UPoly:
    if not a or not b:
        return _ZERO
    if len(a) == 1:
        return tuple(a[0] * c for c in b)
    if len(b) == 1:
        return tuple(c * b[0] for c in a)
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return _trim(out)


def _pscale(a: UPoly, c) -> UPoly:
    if not c:
        return _ZERO
    return tuple(x * c for x in a)


def _pdivmod(a: UPoly, b: UPoly):
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    if len(a) < len(b):
        return _ZERO, a
    a = list(a)
    lb = b[-1]
    db = len(b) - 1
    q = [Fraction(0)] * (len(a) - db)
    for k in range(len(a) - 1, db - 1, -1):
        c = a[k]
        if c:
            c = c / lb
            q[k - db] = c
            for j in range(db + 1):
                a[k - db + j] -= c * b[j]
    return _trim(q), _trim(a[:db])


def _pmonic(a: UPoly) -> UPoly:
    if not a or a[-1] == 1:
        return a
    lc = a[-1]
    return tuple(c / lc for c in a)


def _pgcd(a: UPoly, b: UPoly) -> UPoly:
    while b:
        a, b = b, _pdivmod(a, b)[1]
    return _pmonic(a)


def _peval(a: UPoly, x) -> Fraction:
    acc = Fraction(0)
    for c in reversed(a):
        acc = acc * x + c
    return acc


def _render_upoly(a: UPoly, name: str) -> str:
    if not a:
        return "0"
    parts = []
    for k in range(len(a) - 1, -1, -1):
        c = a[k]
        if not c:
            continue
        sign = "-" if c < 0 else "+"
        c = abs(c)
        if k == 0:
            body = str(c)
        else:
            mono = name if k == 1 else f"{name}^{k}"
            body = mono if c == 1 else f"{c}*{mono}"
        parts.append((sign, body))
    first_sign, first = parts[0]
    out = ("-" if first_sign == "-" else "") + first
    for sign, body in parts[1:]:
        out += sign + body
    return out


def _record_pole(den: UPoly) -> None:
    sink = _poles.get()
    if sink is not None and len(den) > 1:
        sink.add(_pmonic(den))


@contextlib.contextmanager
def collect_poles() -> Iterator[set]:
    """Record every non-constant t-polynomial inverted inside the block."""
    sink: set = set()
    token = _poles.set(sink)
    try:
        yield sink
    finally:
        _poles.reset(token)


def squarefree_part(p: UPoly) -> UPoly:
    """Monic squarefree part p / gcd(p, p')."""
    dp = tuple(Fraction(k) * c for k, c in enumerate(p))[1:]
    g = _pgcd(p, dp)
    return _pmonic(_pdivmod(p, g)[0])


def render_pole(p: UPoly, name: str = "t") -> str:
    return _render_upoly(p, name)


# ---------------------------------------------------------------------------

class RatFunc:
    """Element of Q(t), stored as numerator/denominator coefficient tuples."""

    __slots__ = ("num", "den")

    def __init__(self, num=_ZERO, den=_ONE, *, reduced=False):
        if isinstance(num, (int, Fraction)):
            num = (Fraction(num),) if num else _ZERO
        if isinstance(den, (int, Fraction)):
            den = (Fraction(den),) if den else _ZERO
        num = _trim(Fraction(c) for c in num)
        den = _trim(Fraction(c) for c in den)
        if not den:
            raise MalformedScalarError("rational function with zero denominator")
        if not reduced:
            num, den = _reduce(num, den)
        self.num = num
        self.den = den

    @classmethod
    def _make(cls, num: UPoly, den: UPoly) -> "RatFunc":
        obj = object.__new__(cls)
        obj.num = num
        obj.den = den
        return obj

    @classmethod
    def param(cls) -> "RatFunc":
        return cls._make((Fraction(0), Fraction(1)), _ONE)

    # -- predicates ---------------------------------------------------------
    def __bool__(self):
        return bool(self.num)

    def is_constant(self) -> bool:
        return len(self.num) <= 1 and len(self.den) == 1

    def is_polynomial(self) -> bool:
        return len(self.den) == 1

    def constant_value(self) -> Fraction:
        if not self.is_constant():
            raise ValueError("not a constant")
        return self.num[0] if self.num else Fraction(0)

    def __eq__(self, other):
        if isinstance(other, RatFunc):
            return self.num == other.num and self.den == other.den
        if isinstance(other, (int, Fraction)):
            return self.is_constant() and self.constant_value() == other
        return NotImplemented

    def __hash__(self):
        if self.is_constant():
            return hash(self.constant_value())
        return hash((self.num, self.den))

    # -- arithmetic ---------------------------------------------------------
    @staticmethod
    def _coerce(x) -> "RatFunc":
        if isinstance(x, RatFunc):
            return x
        if isinstance(x, (int, Fraction)):
            return RatFunc._make((Fraction(x),) if x else _ZERO, _ONE)
        raise TypeError(f"cannot use {type(x).__name__} as an element of Q(t)")

    def __neg__(self):
        return RatFunc._make(_pneg(self.num), self.den)

    def __pos__(self):
        return self

    def __add__(self, other):
        try:
            o = self._coerce(other)
        except TypeError:
            return NotImplemented
        if not o.num:
            return self
        if not self.num:
            return o
        if self.den == o.den:
            num = _padd(self.num, o.num)
            if len(self.den) == 1:
                return RatFunc._make(num, self.den)
            return RatFunc._make(*_reduce(num, self.den))
        num = _padd(_pmul(self.num, o.den), _pmul(o.num, self.den))
        return RatFunc._make(*_reduce(num, _pmul(self.den, o.den)))

    __radd__ = __add__

    def __sub__(self, other):
        try:
            o = self._coerce(other)
        except TypeError:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            if not other:
                return RatFunc._make(_ZERO, _ONE)
            return RatFunc._make(_pscale(self.num, Fraction(other)), self.den)
        if not isinstance(other, RatFunc):
            return NotImplemented
        if not self.num or not other.num:
            return RatFunc._make(_ZERO, _ONE)
        if len(self.den) == 1 and len(other.den) == 1:
            return RatFunc._make(_pmul(self.num, other.num), _ONE)
        g1 = _pgcd(self.num, other.den) if len(other.den) > 1 else _ONE
        g2 = _pgcd(other.num, self.den) if len(self.den) > 1 else _ONE
        n1 = _pdivmod(self.num, g1)[0] if g1 != _ONE else self.num
        d2 = _pdivmod(other.den, g1)[0] if g1 != _ONE else other.den
        n2 = _pdivmod(other.num, g2)[0] if g2 != _ONE else other.num
        d1 = _pdivmod(self.den, g2)[0] if g2 != _ONE else self.den
        return RatFunc._normalize_den(_pmul(n1, n2), _pmul(d1, d2))

    __rmul__ = __mul__

    def inverse(self) -> "RatFunc":
        if not self.num:
            raise ZeroDivisionError("division by zero in Q(t)")
        _record_pole(self.num)
        return RatFunc._normalize_den(self.den, self.num)

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            if not other:
                raise ZeroDivisionError("division by zero in Q(t)")
            return RatFunc._make(_pscale(self.num, 1 / Fraction(other)), self.den)
        if not isinstance(other, RatFunc):
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        return self._coerce(other) * self.inverse()

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        out = RatFunc._make(_ONE, _ONE)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    @staticmethod
    def _normalize_den(num: UPoly, den: UPoly) -> "RatFunc":
        lc = den[-1]
        if lc != 1:
            num = _pscale(num, 1 / lc)
            den = _pscale(den, 1 / lc)
        return RatFunc._make(num, den)

    # -- evaluation / display -------------------------------------------------
    def substitute(self, value) -> Fraction:
        value = Fraction(value)
        d = _peval(self.den, value)
        if not d:
            raise SpecializationError(
                f"denominator {_render_upoly(self.den, 't')} vanishes at t = {value}"
            )
        return _peval(self.num, value) / d

    def render(self, name: str = "t") -> str:
        if len(self.den) == 1:
            return _render_upoly(self.num, name)
        num = _render_upoly(self.num, name)
        if len([c for c in self.num if c]) > 1:
            num = f"({num})"
        return f"{num}/({_render_upoly(self.den, name)})"

    def __str__(self):
        return self.render()

    def __repr__(self):
        return f"RatFunc({self.render()!r})"


def _reduce(num: UPoly, den: UPoly):
    if not num:
        return _ZERO, _ONE
    if len(den) > 1:
        g = _pgcd(num, den)
        if g != _ONE:
            num = _pdivmod(num, g)[0]
            den = _pdivmod(den, g)[0]
    lc = den[-1]
    if lc != 1:
        num = _pscale(num, 1 / lc)
        den = _pscale(den, 1 / lc)
    return num, den


FieldElement = Union[Fraction, RatFunc]


def rational(numerator: int, denominator: int = 1) -> Fraction:
    if denominator == 0:
        raise MalformedScalarError("rational with zero denominator")
    return Fraction(numerator, denominator)


def normalize(e):
    """Return the canonical form of a scalar."""
    if isinstance(e, RatFunc):
        return RatFunc(e.num, e.den)
    if isinstance(e, Fraction):
        return Fraction(e.numerator, e.denominator)
    if isinstance(e, int):
        return Fraction(e)
    raise TypeError(f"not a field element: {e!r}")


_OPS = {
    "add": lambda a, b: a + b,
    "sub": lambda a, b: a - b,
    "mul": lambda a, b: a * b,
    "div": lambda a, b: a / b,
}


def arith(a, b, op: str):
    """Field arithmetic with a strict same-field check."""
    if isinstance(a, RatFunc) != isinstance(b, RatFunc):
        raise TypeError("cannot combine an element of Q with an element of Q(t)")
    try:
        fn = _OPS[op]
    except KeyError:
        raise ValueError(f"unknown operation {op!r}") from None
    return fn(a, b)


def substitute_parameter(e, value) -> Fraction:
    """Evaluate a rational function at ``t = value``."""
    if isinstance(e, RatFunc):
        return e.substitute(value)
    if isinstance(e, (int, Fraction)):
        return Fraction(e)
    raise TypeError(f"not a field element: {e!r}")


def render_scalar(c, param: str = "t") -> str:
    if isinstance(c, RatFunc):
        return c.render(param)
    return str(Fraction(c))


def parse_scalar(text: str, param: str = "t"):
    """Parse ``"p/q"`` (or a Q(t) expression when ``param`` occurs in it)."""
    text = text.strip()
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        pass
    from .parser import parse_constant

    return parse_constant(text, param)
