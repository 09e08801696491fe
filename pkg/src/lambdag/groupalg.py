"""The group algebra Q_{q,t}[P].

Elements are finite sums ``sum c_mu e^mu`` stored as a dict from weights
(fundamental-weight coordinates) to :class:`QtScalar`, zero coefficients
pruned.  Printing and iteration are lexicographic in the weight.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping

from .coeff import ONE, ZERO, QtScalar, q_power
from .rootsys import RootSystem, Weight, weyl_orbit
from .weyl import ExtAffineWeylElement, WeylElement

__all__ = [
    "AlgebraElement",
    "OrbitSum",
    "UnsupportedFeature",
    "e",
    "bar",
    "iota_coeffs",
    "act_affine",
    "act_weyl",
    "constant_term",
    "orbit_sum",
    "is_w_invariant",
    "parse_element",
]


class UnsupportedFeature(NotImplementedError):
    pass


def _as_scalar(c) -> QtScalar:
    return c if isinstance(c, QtScalar) else QtScalar.const(c)


class AlgebraElement:
    """Immutable sparse element of Q_{q,t}[P]."""

    __slots__ = ("terms", "rank")

    def __init__(self, terms: Mapping[Weight, object] | None = None, rank: int | None = None):
        clean = {}
        for mu, c in (terms or {}).items():
            c = _as_scalar(c)
            if c:
                clean[tuple(mu)] = c
        if rank is None:
            rank = len(next(iter(clean))) if clean else None
        self.terms: dict[Weight, QtScalar] = clean
        self.rank = rank

    @classmethod
    def _raw(cls, terms, rank):
        obj = cls.__new__(cls)
        obj.terms = terms
        obj.rank = rank
        return obj

    @classmethod
    def zero(cls, rank: int) -> "AlgebraElement":
        return cls._raw({}, rank)

    @classmethod
    def one(cls, rank: int) -> "AlgebraElement":
        return cls._raw({(0,) * rank: ONE}, rank)

    @classmethod
    def monomial(cls, mu: Iterable[int], coeff=1) -> "AlgebraElement":
        mu = tuple(mu)
        return cls({mu: coeff}, len(mu))

    # -- container protocol -------------------------------------------
    def __len__(self):
        return len(self.terms)

    def __iter__(self):
        return iter(sorted(self.terms.items()))

    def __getitem__(self, mu) -> QtScalar:
        return self.terms.get(tuple(mu), ZERO)

    def support(self) -> list[Weight]:
        return sorted(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    # -- arithmetic -----------------------------------------------------
    def _rank_of(self, other):
        return self.rank if self.rank is not None else other.rank

    def __add__(self, other):
        if not isinstance(other, AlgebraElement):
            if other == 0:
                return self
            return self + AlgebraElement.one(self.rank) * other
        out = dict(self.terms)
        for mu, c in other.terms.items():
            s = out.get(mu)
            s = c if s is None else s + c
            if s:
                out[mu] = s
            else:
                out.pop(mu, None)
        return AlgebraElement._raw(out, self._rank_of(other))

    __radd__ = __add__

    def __neg__(self):
        return AlgebraElement._raw({mu: -c for mu, c in self.terms.items()}, self.rank)

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c) -> "AlgebraElement":
        c = _as_scalar(c)
        if not c:
            return AlgebraElement.zero(self.rank)
        if c == ONE:
            return self
        return AlgebraElement._raw({mu: v * c for mu, v in self.terms.items()}, self.rank)

    def __mul__(self, other):
        if not isinstance(other, AlgebraElement):
            return self.scale(other)
        out: dict[Weight, QtScalar] = {}
        for mu, a in self.terms.items():
            for nu, b in other.terms.items():
                key = tuple(x + y for x, y in zip(mu, nu))
                s = out.get(key)
                s = a * b if s is None else s + a * b
                if s:
                    out[key] = s
                else:
                    out.pop(key, None)
        return AlgebraElement._raw(out, self._rank_of(other))

    def __rmul__(self, other):
        return self.scale(other)

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative powers are not polynomials")
        out = AlgebraElement.one(self.rank)
        for _ in range(n):
            out = out * self
        return out

    def __eq__(self, other):
        if isinstance(other, AlgebraElement):
            return self.terms == other.terms
        if other == 0:
            return not self.terms
        return NotImplemented

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    # -- maps -----------------------------------------------------------
    def map_coeffs(self, fn) -> "AlgebraElement":
        out = {}
        for mu, c in self.terms.items():
            v = fn(c)
            if v:
                out[mu] = v
        return AlgebraElement._raw(out, self.rank)

    def map_weights(self, fn) -> "AlgebraElement":
        out: dict[Weight, QtScalar] = {}
        for mu, c in self.terms.items():
            nu = tuple(fn(mu))
            s = out.get(nu)
            s = c if s is None else s + c
            if s:
                out[nu] = s
            else:
                out.pop(nu, None)
        return AlgebraElement._raw(out, self.rank)

    def specialize(self, k: int) -> "AlgebraElement":
        return self.map_coeffs(lambda c: c.specialize(k))

    def bar(self) -> "AlgebraElement":
        return bar(self)

    def iota(self) -> "AlgebraElement":
        return iota_coeffs(self)

    def constant_term(self) -> QtScalar:
        return constant_term(self)

    # -- rendering ------------------------------------------------------
    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for mu, c in self:
            w = "e[" + ",".join(str(x) for x in mu) + "]"
            s = str(c)
            if s == "1":
                parts.append(w)
            elif s == "-1":
                parts.append("-" + w)
            else:
                if not _is_atomic(s):
                    s = f"({s})"
                parts.append(f"{s}*{w}")
        return " + ".join(parts).replace("+ -", "- ")

    def __repr__(self):
        return f"AlgebraElement({self})"

    def to_json(self) -> list[dict]:
        return [{"weight": list(mu), "coeff": str(c)} for mu, c in self]

    def dumps(self) -> str:
        return json.dumps(self.to_json())


_FRAC_EXP = re.compile(r"\^\(-?\d+/\d+\)")


def _is_atomic(s: str) -> bool:
    # a single monomial, possibly signed; q^(1/2) counts as atomic
    return " " not in s and "/" not in _FRAC_EXP.sub("", s)


def e(*coords) -> AlgebraElement:
    """``e(1, 0)`` or ``e((1, 0))`` is the exponential e^{(1,0)}."""
    if len(coords) == 1 and not isinstance(coords[0], int):
        coords = tuple(coords[0])
    return AlgebraElement.monomial(coords)


def bar(f: AlgebraElement) -> AlgebraElement:
    """e^mu -> e^{-mu}, coefficients untouched."""
    return AlgebraElement._raw({tuple(-x for x in mu): c for mu, c in f.terms.items()}, f.rank)


def iota_coeffs(f: AlgebraElement) -> AlgebraElement:
    return AlgebraElement._raw({mu: c.iota() for mu, c in f.terms.items()}, f.rank)


def act_weyl(w: WeylElement, f: AlgebraElement) -> AlgebraElement:
    return AlgebraElement._raw({w.act_weight(mu): c for mu, c in f.terms.items()}, f.rank)


def act_affine(w: ExtAffineWeylElement, f: AlgebraElement) -> AlgebraElement:
    """w tau(lam) e^mu = q^{(lam, mu)} e^{w mu}."""
    if isinstance(w, WeylElement):
        return act_weyl(w, f)
    if any(not isinstance(x, int) for x in w.translation):
        raise UnsupportedFeature("translations outside the coroot lattice are not supported")
    out = {}
    for mu, c in f.terms.items():
        k, nu = w.act_weight(mu)
        out[nu] = c * q_power(k) if k else c
    return AlgebraElement._raw(out, f.rank)


def constant_term(f: AlgebraElement) -> QtScalar:
    if f.rank is None:
        return ZERO
    return f.terms.get((0,) * f.rank, ZERO)


def is_w_invariant(rs: RootSystem, f: AlgebraElement) -> bool:
    for i in range(1, rs.rank + 1):
        for mu, c in f.terms.items():
            if f[rs.reflect_weight(mu, i)] != c:
                return False
    return True


@dataclass(frozen=True)
class OrbitSum:
    """m_lambda = sum of e^mu over the orbit W lambda."""

    lam: Weight
    element: AlgebraElement

    def __str__(self):
        return str(self.element)


def orbit_sum(rs: RootSystem, lam: Weight) -> OrbitSum:
    lam = tuple(lam)
    if len(lam) != rs.rank:
        raise ValueError(f"weight {lam} has the wrong rank for {rs.label}")
    if not rs.is_dominant(lam):
        raise ValueError(f"{lam} is not dominant")
    terms = {mu: ONE for mu in weyl_orbit(rs, lam)}
    return OrbitSum(lam, AlgebraElement._raw(terms, rs.rank))


_TERM = re.compile(r"\s*([+-])?\s*(?:(\d+(?:/\d+)?)\s*\*?\s*)?e\[\s*([-\d,\s]*)\]\s*")


def parse_element(text: str, rank: int | None = None) -> AlgebraElement:
    """Parse sums like ``e[1,0] - 2*e[0,0] + 3/2 e[-1,1]`` (rational coefficients)."""
    pos = 0
    terms: dict[Weight, QtScalar] = {}
    text = text.strip()
    if not text:
        raise ValueError("empty element")
    while pos < len(text):
        m = _TERM.match(text, pos)
        if not m or m.end() == pos:
            raise ValueError(f"cannot parse element near {text[pos:]!r}")
        sign, coeff, coords = m.groups()
        mu = tuple(int(x) for x in coords.split(",") if x.strip())
        if rank is not None and len(mu) != rank:
            raise ValueError(f"weight {mu} must have {rank} coordinates")
        c = Fraction(coeff) if coeff else Fraction(1)
        if sign == "-":
            c = -c
        terms[mu] = terms.get(mu, ZERO) + QtScalar.const(c)
        pos = m.end()
    return AlgebraElement(terms, rank)
