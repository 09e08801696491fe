"""Exact scalars in Q(q^(1/m), t).

A :class:`QtScalar` is a quotient of two sparse Laurent polynomials in the
variables ``v = q^(1/m)`` and ``t``.  Values are kept in a canonical form so
that equality and hashing are structural:

* the denominator is a genuine polynomial, not divisible by ``v`` or ``t``,
  with leading coefficient 1 under lex order on ``(v, t)`` exponents;
* numerator and denominator are coprime;
* ``m`` is the smallest denominator that expresses every q-power.

Polynomial gcds are delegated to sympy's sparse polynomial rings; every other
operation is done here on plain dicts.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm
from numbers import Rational

from sympy import QQ
from sympy.polys.rings import ring

__all__ = [
    "QtScalar",
    "ScalarDivisionError",
    "SpecializationError",
    "Specialization",
    "ZERO",
    "ONE",
    "Q",
    "T",
    "H",
    "qt_add",
    "qt_mul",
    "qt_div",
    "iota",
    "specialize",
    "q_power",
    "t_power",
]

_RING, _V, _T = ring("v,t", QQ)
_UNIT = {(0, 0): 1}


class ScalarDivisionError(ZeroDivisionError):
    """Division of a QtScalar by zero."""


class SpecializationError(ArithmeticError):
    """The denominator vanishes identically under t = q^(-k/2)."""


def _clean(c):
    if isinstance(c, Fraction) and c.denominator == 1:
        return c.numerator
    return c


def _add_into(acc, poly, scale=1):
    for mono, c in poly.items():
        s = acc.get(mono, 0) + c * scale
        if s:
            acc[mono] = s
        else:
            acc.pop(mono, None)
    return acc


def _pmul(a, b):
    if len(a) == 1 and len(b) > 1:
        a, b = b, a
    out = {}
    for (a1, b1), c1 in a.items():
        for (a2, b2), c2 in b.items():
            key = (a1 + a2, b1 + b2)
            s = out.get(key, 0) + c1 * c2
            if s:
                out[key] = s
            else:
                out.pop(key, None)
    return out


def _shift(poly, da, db):
    if not da and not db:
        return poly
    return {(a + da, b + db): c for (a, b), c in poly.items()}


def _scale_v(poly, factor):
    if factor == 1:
        return poly
    return {(a * factor, b): c for (a, b), c in poly.items()}


def _to_sympy(poly):
    return _RING({mono: QQ(c.numerator, c.denominator) if isinstance(c, Fraction) else QQ(c)
                  for mono, c in poly.items()})


def _from_sympy(p):
    return {mono: _clean(Fraction(int(c.numerator), int(c.denominator))) for mono, c in p.terms()}


def _is_unit(den):
    return len(den) == 1 and den.get((0, 0)) == 1


def _normalize(num, den, m):
    if not den:
        raise ScalarDivisionError("division by zero QtScalar")
    if not num:
        return {}, dict(_UNIT), 1
    if not _is_unit(den):
        da = min(a for a, _ in den)
        db = min(b for _, b in den)
        if da or db:
            den = _shift(den, -da, -db)
            num = _shift(num, -da, -db)
        if len(den) > 1:
            na = min(a for a, _ in num)
            nb = min(b for _, b in num)
            _, n2, d2 = _to_sympy(_shift(num, -na, -nb)).cofactors(_to_sympy(den))
            num = _shift(_from_sympy(n2), na, nb)
            den = _from_sympy(d2)
        lead = den[max(den)]
        if len(den) == 1:
            num = {mono: _clean(Fraction(c) / lead) for mono, c in num.items()}
            den = dict(_UNIT)
        elif lead != 1:
            num = {mono: _clean(Fraction(c) / lead) for mono, c in num.items()}
            den = {mono: _clean(Fraction(c) / lead) for mono, c in den.items()}
    if m > 1:
        g = m
        for a, _ in num:
            g = gcd(g, a)
            if g == 1:
                break
        if g > 1:
            for a, _ in den:
                g = gcd(g, a)
                if g == 1:
                    break
        if g > 1:
            m //= g
            num = {(a // g, b): c for (a, b), c in num.items()}
            den = {(a // g, b): c for (a, b), c in den.items()}
    return num, den, m


class QtScalar:
    """An element of Q(q^(1/m), t) in canonical form.

    ``num`` and ``den`` map ``(a, b)`` to the coefficient of ``v^a t^b`` with
    ``v = q^(1/m)``.  Instances are immutable.
    """

    __slots__ = ("num", "den", "m", "_hash")

    def __init__(self, num=None, den=None, m=1, *, _raw=False):
        num = {} if num is None else num
        den = dict(_UNIT) if den is None else den
        if not _raw:
            num = {k: _clean(c) for k, c in num.items() if c}
            den = {k: _clean(c) for k, c in den.items() if c}
            num, den, m = _normalize(num, den, m)
        self.num = num
        self.den = den
        self.m = m
        self._hash = None

    # -- construction -------------------------------------------------
    @classmethod
    def const(cls, c) -> QtScalar:
        if isinstance(c, QtScalar):
            return c
        if not isinstance(c, Rational):
            raise TypeError(f"cannot coerce {type(c).__name__} to QtScalar")
        c = _clean(Fraction(c)) if not isinstance(c, int) else c
        return cls({(0, 0): c} if c else {}, dict(_UNIT), 1, _raw=True)

    @classmethod
    def monomial(cls, q_exp=0, t_exp=0, coeff=1) -> QtScalar:
        """``coeff * q^q_exp * t^t_exp``; ``q_exp`` may be a Fraction."""
        qe = Fraction(q_exp)
        return cls({(qe.numerator, int(t_exp)): coeff}, None, qe.denominator)

    @classmethod
    def from_q_poly(cls, coeffs: dict[int, int]) -> QtScalar:
        """Laurent polynomial in integer powers of q."""
        return cls({(d, 0): c for d, c in coeffs.items() if c}, dict(_UNIT), 1, _raw=True)

    # -- predicates ---------------------------------------------------
    def is_zero(self) -> bool:
        return not self.num

    def __bool__(self):
        return bool(self.num)

    def is_laurent(self) -> bool:
        """True when the denominator is 1."""
        return _is_unit(self.den)

    def involves_t(self) -> bool:
        return any(b for _, b in self.num) or any(b for _, b in self.den)

    # -- arithmetic ---------------------------------------------------
    def _lift(self, m):
        f = m // self.m
        return _scale_v(self.num, f), _scale_v(self.den, f)

    def __add__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        if not other.num:
            return self
        if not self.num:
            return other
        m = lcm(self.m, other.m)
        n1, d1 = self._lift(m)
        n2, d2 = other._lift(m)
        if _is_unit(d1) and _is_unit(d2):
            num = _add_into(dict(n1), n2)
            return QtScalar(*_normalize(num, d1, m), _raw=True) if num else ZERO
        if d1 == d2:
            return QtScalar(_add_into(dict(n1), n2), d1, m)
        num = _add_into(_pmul(n1, d2), _pmul(n2, d1))
        return QtScalar(num, _pmul(d1, d2), m)

    __radd__ = __add__

    def __neg__(self):
        return QtScalar({k: -c for k, c in self.num.items()}, self.den, self.m, _raw=True)

    def __sub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def __mul__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        if not self.num or not other.num:
            return ZERO
        m = lcm(self.m, other.m)
        n1, d1 = self._lift(m)
        n2, d2 = other._lift(m)
        if _is_unit(d1) and _is_unit(d2):
            return QtScalar(*_normalize(_pmul(n1, n2), d1, m), _raw=True)
        return QtScalar(_pmul(n1, n2), _pmul(d1, d2), m)

    __rmul__ = __mul__

    def inverse(self) -> QtScalar:
        if not self.num:
            raise ScalarDivisionError("division by zero QtScalar")
        return QtScalar(self.den, self.num, self.m)

    def __truediv__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return other * self.inverse()

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        out = ONE
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    # -- involutions and substitutions ----------------------------------
    def iota(self) -> QtScalar:
        """q -> 1/q, t -> 1/t."""
        num = {(-a, -b): c for (a, b), c in self.num.items()}
        den = {(-a, -b): c for (a, b), c in self.den.items()}
        return QtScalar(num, den, self.m)

    def specialize(self, k: int) -> QtScalar:
        """Substitute t = q^(-k/2); the result has no t."""
        if k < 0:
            raise ValueError("k must be non-negative")
        m2 = 2 * self.m

        def sub(poly):
            out = {}
            for (a, b), c in poly.items():
                key = (2 * a - k * self.m * b, 0)
                s = out.get(key, 0) + c
                if s:
                    out[key] = s
                else:
                    out.pop(key, None)
            return out

        den = sub(self.den)
        if not den:
            raise SpecializationError(f"denominator {self._render(self.den)} vanishes at t=q^(-{k}/2)")
        return QtScalar(sub(self.num), den, m2)

    def q_poly(self) -> dict[Fraction, object]:
        """Coefficients by q-exponent of a t-free Laurent polynomial."""
        if not self.is_laurent() or self.involves_t():
            raise ValueError(f"{self} is not a Laurent polynomial in q")
        return {Fraction(a, self.m): c for (a, _), c in self.num.items()}

    # -- comparison ---------------------------------------------------
    def __eq__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return self.m == other.m and self.num == other.num and self.den == other.den

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((frozenset(self.num.items()), frozenset(self.den.items()), self.m))
        return self._hash

    # -- rendering ----------------------------------------------------
    def _render(self, poly) -> str:
        if not poly:
            return "0"
        parts = []
        for i, mono in enumerate(sorted(poly, reverse=True)):
            c = poly[mono]
            a, b = mono
            factors = []
            if a:
                e = Fraction(a, self.m)
                if e == 1:
                    factors.append("q")
                elif e.denominator == 1:
                    factors.append(f"q^{e.numerator}")
                else:
                    factors.append(f"q^({e.numerator}/{e.denominator})")
            if b:
                factors.append("t" if b == 1 else f"t^{b}")
            sign = "-" if c < 0 else "+"
            mag = abs(c)
            body = "*".join(factors)
            if not body:
                body = str(mag)
            elif mag != 1:
                body = f"{mag}*{body}"
            if i == 0:
                parts.append(body if sign == "+" else f"-{body}")
            else:
                parts.append(f" {sign} {body}")
        return "".join(parts)

    def __str__(self):
        if _is_unit(self.den):
            return self._render(self.num)
        # Trailing denominator term becomes the constant, e.g. (t^2 - 1)/(q*t^-6 - 1).
        da, db = min(self.den)
        num = _shift(self.num, -da, -db)
        den = _shift(self.den, -da, -db)
        n, d = self._render(num), self._render(den)
        if len(num) > 1:
            n = f"({n})"
        return f"{n}/({d})" if len(den) > 1 else f"{n}/{d}"

    def __repr__(self):
        return f"QtScalar({self})"


def _coerce(x):
    if isinstance(x, QtScalar):
        return x
    if isinstance(x, Rational):
        return QtScalar.const(x)
    return NotImplemented


ZERO = QtScalar()
ONE = QtScalar.const(1)
Q = QtScalar.monomial(1, 0)
T = QtScalar.monomial(0, 1)
H = T - T.inverse()


def q_power(e) -> QtScalar:
    return QtScalar.monomial(e, 0)


def t_power(e: int) -> QtScalar:
    return QtScalar.monomial(0, e)


def qt_add(a, b) -> QtScalar:
    return _coerce(a) + b


def qt_mul(a, b) -> QtScalar:
    return _coerce(a) * b


def qt_div(a, b) -> QtScalar:
    return _coerce(a) / b


def iota(a) -> QtScalar:
    return _coerce(a).iota()


@dataclass(frozen=True)
class Specialization:
    """The substitution t = q^(-k/2)."""

    k: int

    def __post_init__(self):
        if self.k < 0:
            raise ValueError("k must be non-negative")

    def __call__(self, a) -> QtScalar:
        return _coerce(a).specialize(self.k)

    @property
    def t(self) -> QtScalar:
        return q_power(Fraction(-self.k, 2))


def specialize(a, s) -> QtScalar:
    k = s.k if isinstance(s, Specialization) else s
    return _coerce(a).specialize(k)
