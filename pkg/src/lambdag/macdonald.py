"""Macdonald polynomials P_lambda at t = q^(-k/2) and Weyl characters.

P_lambda is produced by Gram-Schmidt over orbit sums m_mu, mu dominant and
mu <= lambda, with respect to <f, g>_k = [f bar(g) Delta_k]_0.  The
unnormalized product is used; Gram-Schmidt only sees ratios.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

from . import budget
from .budget import BudgetExceeded
from .coeff import ONE, ZERO, QtScalar
from .groupalg import AlgebraElement, orbit_sum
from .rootsys import RootSystem, Weight, dominance_leq, weyl_orbit
from .scalar import delta_kernel

__all__ = [
    "DivisionRemainder",
    "MacdonaldPoly",
    "dominant_weights_below",
    "dominant_weights_up_to_height",
    "linear_extension",
    "macdonald_poly",
    "weyl_character",
    "weyl_dimension",
]

class DivisionRemainder(ArithmeticError):
    pass


def _sort_key(rs: RootSystem, mu: Weight):
    return (rs.scaled_height(mu), mu)


def linear_extension(rs: RootSystem, weights) -> list[Weight]:
    """Height first, lexicographic on ties; refines the dominance order."""
    return sorted(weights, key=lambda mu: _sort_key(rs, mu))


def dominant_weights_below(rs: RootSystem, lam: Weight) -> list[Weight]:
    """All dominant mu <= lam, in the linear extension.

    Covers in the dominance order on dominant weights differ by a positive
    root (Stembridge), so subtracting positive roots from lam and keeping the
    dominant results reaches every such mu.
    """
    lam = tuple(lam)
    if not rs.is_dominant(lam):
        raise ValueError(f"{lam} is not dominant")
    pos = [rs.root_to_weight(a) for a in rs.positive_roots]
    seen = {lam}
    stack = [lam]
    while stack:
        mu = stack.pop()
        for a in pos:
            nu = tuple(x - y for x, y in zip(mu, a))
            if nu not in seen and rs.is_dominant(nu):
                seen.add(nu)
                stack.append(nu)
    return linear_extension(rs, seen)


def dominant_weights_up_to_height(rs: RootSystem, bound) -> list[Weight]:
    """Dominant weights with ht mu <= bound."""
    unit = [rs.weight_height(tuple(int(i == j) for j in range(rs.rank))) for i in range(rs.rank)]
    out = []

    def rec(prefix, used):
        i = len(prefix)
        if i == rs.rank:
            out.append(tuple(prefix))
            return
        n = 0
        while used + n * unit[i] <= bound:
            rec(prefix + [n], used + n * unit[i])
            n += 1

    rec([], Fraction(0))
    return linear_extension(rs, out)


def weyl_dimension(rs: RootSystem, lam: Weight) -> int:
    num = den = 1
    for a in rs.positive_roots:
        num *= rs.pair_weight_coroot(tuple(x + 1 for x in lam), a)
        den *= rs.pair_weight_coroot(rs.rho, a)
    return num // den


def _divide_binomial(rs: RootSystem, num: dict[Weight, int], alpha: Weight) -> dict[Weight, int]:
    """Exact quotient num / (1 - e^{-alpha}) by leading-term elimination."""
    ht = rs.scaled_height
    rem = dict(num)
    floor = min(ht(mu) for mu in rem) + ht(alpha)
    heap = [(-ht(mu), tuple(-x for x in mu)) for mu in rem]
    heapq.heapify(heap)
    quot: dict[Weight, int] = {}
    while heap:
        _, neg = heapq.heappop(heap)
        mu = tuple(-x for x in neg)
        c = rem.pop(mu, 0)
        if not c:
            continue
        if ht(mu) < floor:
            raise DivisionRemainder(f"non-zero remainder at e^{mu}")
        quot[mu] = c
        nu = tuple(x - y for x, y in zip(mu, alpha))
        if nu not in rem:
            heapq.heappush(heap, (-ht(nu), tuple(-x for x in nu)))
        s = rem.get(nu, 0) + c
        if s:
            rem[nu] = s
        else:
            rem.pop(nu)
    return quot


@lru_cache(maxsize=None)
def _weyl_character(rs: RootSystem, lam: Weight) -> tuple:
    rho = rs.rho
    shifted = tuple(x + 1 for x in lam)
    num: dict[Weight, int] = {}
    for mu in weyl_orbit(rs, shifted):
        _, word = rs.to_dominant(mu)
        num[tuple(x - y for x, y in zip(mu, rho))] = -1 if len(word) % 2 else 1
    for a in rs.positive_roots:
        num = _divide_binomial(rs, num, rs.root_to_weight(a))
    if any(c < 0 for c in num.values()):
        raise DivisionRemainder("negative multiplicity in a character")
    return tuple(sorted(num.items()))


def weyl_character(rs: RootSystem, lam: Weight, max_weyl: int | None = None) -> AlgebraElement:
    """chi_lambda via the alternant, divided factor by factor by prod (1 - e^{-alpha})."""
    lam = tuple(lam)
    if not rs.is_dominant(lam):
        raise ValueError(f"{lam} is not dominant")
    cap = budget.current().max_weyl if max_weyl is None else max_weyl
    if rs.weyl_order > cap:
        raise BudgetExceeded(f"|W| = {rs.weyl_order} for {rs.label} exceeds {cap}")
    terms = _weyl_character(rs, lam)
    out = AlgebraElement({mu: QtScalar.const(c) for mu, c in terms}, rs.rank)
    if sum(c for _, c in terms) != weyl_dimension(rs, lam):
        raise DivisionRemainder(f"dimension mismatch for chi_{lam}")
    return out


@dataclass
class MacdonaldPoly:
    lam: Weight
    k: int
    expansion: AlgebraElement
    # a_{lambda mu} for dominant mu < lambda; the coefficient of m_lambda is 1
    coefficients: dict[Weight, QtScalar] = field(default_factory=dict)

    def __str__(self):
        return str(self.expansion)

    def to_json(self) -> dict:
        return {
            "lambda": list(self.lam),
            "k": self.k,
            "orbit_coefficients": [
                {"mu": list(mu), "coeff": str(c)} for mu, c in sorted(self.coefficients.items())
            ],
            "expansion": self.expansion.to_json(),
        }


class _Gram:
    """Cached <m_mu, m_nu>_k."""

    def __init__(self, rs: RootSystem, k: int, max_k: int | None):
        self.rs = rs
        self.k = k
        self.kernel = delta_kernel(rs, k, max_k)
        self.orbits: dict[Weight, list[Weight]] = {}
        self.cache: dict[tuple[Weight, Weight], QtScalar] = {}

    def orbit(self, mu):
        o = self.orbits.get(mu)
        if o is None:
            o = self.orbits[mu] = sorted(weyl_orbit(self.rs, mu))
        return o

    def __call__(self, mu, nu) -> QtScalar:
        key = (mu, nu) if mu <= nu else (nu, mu)
        v = self.cache.get(key)
        if v is None:
            v = ZERO
            for x in self.orbit(mu):
                for y in self.orbit(nu):
                    c = self.kernel[tuple(b - a for a, b in zip(x, y))]
                    if c:
                        v = v + c
            self.cache[key] = v
        return v

    def pair(self, f: dict, g: dict) -> QtScalar:
        total = ZERO
        for mu, a in f.items():
            for nu, b in g.items():
                total = total + a * b * self(mu, nu)
        return total


@lru_cache(maxsize=None)
def _gram(rs: RootSystem, k: int) -> _Gram:
    return _Gram(rs, k, None)


def _orbit_coeffs(rs: RootSystem, k: int, lam: Weight, memo: dict) -> dict[Weight, QtScalar]:
    if lam in memo:
        return memo[lam]
    G = _gram(rs, k)
    p = {lam: ONE}
    for nu in dominant_weights_below(rs, lam):
        if nu == lam:
            continue
        pn = _orbit_coeffs(rs, k, nu, memo)
        norm = G.pair(pn, pn)
        c = G.pair({lam: ONE}, pn) / norm
        if c:
            for mu, a in pn.items():
                s = p.get(mu, ZERO) - c * a
                if s:
                    p[mu] = s
                else:
                    p.pop(mu, None)
    memo[lam] = p
    return p


_MEMO: dict[tuple[RootSystem, int], dict] = {}


def macdonald_poly(rs: RootSystem, lam: Weight, k: int, max_k: int | None = None,
                   check: bool = True) -> MacdonaldPoly:
    """P_lambda at t = q^(-k/2)."""
    lam = tuple(lam)
    if not rs.is_dominant(lam):
        raise ValueError(f"{lam} is not dominant")
    delta_kernel(rs, k, max_k)  # budget check
    memo = _MEMO.setdefault((rs, k), {})
    coeffs = _orbit_coeffs(rs, k, lam, memo)
    if check:
        G = _gram(rs, k)
        for mu in dominant_weights_below(rs, lam):
            if mu != lam and G.pair(coeffs, {mu: ONE}):
                raise ArithmeticError(f"P_{lam} is not orthogonal to m_{mu}")
    expansion = AlgebraElement.zero(rs.rank)
    for mu, c in coeffs.items():
        expansion = expansion + orbit_sum(rs, mu).element * c
    below = {mu: c for mu, c in coeffs.items() if mu != lam}
    assert all(dominance_leq(rs, mu, lam) for mu in below)
    return MacdonaldPoly(lam, k, expansion, below)
