"""Graded multiplicities GM_lambda of V(lambda) in the exterior algebra of g.

Three independent routes:

* ``decompose``: expand (1+q)^r prod_{a in R} (1 + q e^a) and peel off
  irreducible characters (dominant multiplicities by Freudenthal);
* ``gm_via_macdonald``: GM_lambda(-q) = (1-q)^r <1, chi_lambda>_2;
* the closed forms ``gm_formula_zero/theta/theta_s``.

Polynomials in q are plain ``{degree: coefficient}`` dicts.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import lcm

from . import budget
from .budget import BudgetExceeded
from .coeff import ONE, ZERO, QtScalar, q_power, t_power
from .fold import QTable, fold_binomials
from .groupalg import AlgebraElement, e, orbit_sum
from .macdonald import dominant_weights_below, weyl_character
from .rootsys import RootSystem, Weight, weyl_orbit
from .scalar import cherednik_ratio, macdonald_product

__all__ = [
    "ExteriorCharacter",
    "GradedMultiplicity",
    "NegativeMultiplicity",
    "NotAPolynomial",
    "exterior_character",
    "dominant_multiplicities",
    "decompose",
    "gm_formula_zero",
    "gm_formula_theta",
    "gm_formula_theta_s",
    "gm_via_macdonald",
    "ratio_route_check",
    "scprod_hroot",
    "scprod_hsroot",
    "check_scprod_hsroot",
    "check_theta_s_character",
    "lemma_d_sum",
    "check_lemma_d",
    "special_weight",
]

class NegativeMultiplicity(ArithmeticError):
    pass


class NotAPolynomial(ArithmeticError):
    pass


# ---------------------------------------------------------------------------
# q-polynomial helpers


def _clean(p: dict) -> dict:
    return {d: c for d, c in p.items() if c}


def _mul(a: dict, b: dict) -> dict:
    out: dict = {}
    for i, x in a.items():
        for j, y in b.items():
            out[i + j] = out.get(i + j, 0) + x * y
    return _clean(out)


def _add(a: dict, b: dict, s: int = 1) -> dict:
    out = dict(a)
    for d, c in b.items():
        out[d] = out.get(d, 0) + s * c
    return _clean(out)


def _exact_div(num: dict, den: dict) -> dict:
    """Exact long division of polynomials; a remainder is an error."""
    num = dict(num)
    top = max(den)
    quot: dict = {}
    while num and max(num) >= top:
        d = max(num)
        c = Fraction(num[d], den[top])
        if c.denominator != 1:
            raise NotAPolynomial("non-integral quotient")
        quot[d - top] = int(c)
        num = _add(num, {k + d - top: v for k, v in den.items()}, -int(c))
    if num:
        raise NotAPolynomial(f"division leaves remainder {_render(num)}")
    return quot


def _to_poly(p: dict) -> dict[int, int]:
    out = {}
    for d, c in p.items():
        if Fraction(d).denominator != 1 or Fraction(c).denominator != 1:
            raise NotAPolynomial(f"term {c} q^{d} is not integral")
        out[int(d)] = int(c)
    return _clean(out)


def _render(p: dict) -> str:
    if not p:
        return "0"
    parts = []
    for d in sorted(p):
        c = p[d]
        mono = "1" if d == 0 else ("q" if d == 1 else f"q^{d}")
        if d == 0:
            s = str(abs(c))
        else:
            s = mono if abs(c) == 1 else f"{abs(c)}*{mono}"
        parts.append(("- " if c < 0 else "+ ") + s)
    out = " ".join(parts)
    return out[2:] if out.startswith("+ ") else "-" + out[2:]


def _latex(p: dict) -> str:
    """Ascending powers of q, e.g. ``q + q^{2} + 2q^{5}``."""
    if not p:
        return "0"
    out = ""
    for d in sorted(p):
        c = p[d]
        mono = "" if d == 0 else ("q" if d == 1 else f"q^{{{d}}}")
        term = (str(abs(c)) if (abs(c) != 1 or d == 0) else "") + mono
        if not out:
            out = ("-" if c < 0 else "") + term
        else:
            out += (" - " if c < 0 else " + ") + term
    return out


@dataclass(frozen=True)
class GradedMultiplicity:
    lam: Weight
    poly: tuple[tuple[int, int], ...]  # sorted (degree, coefficient) pairs

    @classmethod
    def make(cls, lam, poly: dict) -> "GradedMultiplicity":
        return cls(tuple(lam), tuple(sorted(_clean(poly).items())))

    def as_dict(self) -> dict[int, int]:
        return dict(self.poly)

    def value_at(self, x) -> int:
        return sum(c * x**d for d, c in self.poly)

    def __str__(self):
        return _render(self.as_dict())

    def latex(self) -> str:
        return _latex(self.as_dict())

    def to_json(self) -> dict:
        return {"lambda": list(self.lam), "poly": {str(d): c for d, c in self.poly}}


# ---------------------------------------------------------------------------
# exterior character and its decomposition


@dataclass
class ExteriorCharacter:
    """P(q) = (1+q)^r prod_{a in R} (1 + q e^a) as a weight -> q-polynomial table."""

    rs: RootSystem
    table: QTable

    @property
    def terms(self) -> dict[tuple[Weight, int], int]:
        return {(w, d): c for w, p in self.table.items() for d, c in p.items()}

    def total_mass(self) -> int:
        return self.table.total_mass()

    def dominant_part(self) -> dict[Weight, dict[int, int]]:
        out = {}
        for n in range(len(self.table)):
            w = self.table.weights[n]
            if (w >= 0).all():
                row = {d: int(c) for d, c in enumerate(self.table.coeffs[n]) if c}
                out[tuple(int(x) for x in w)] = row
        return out

    def check_invariants(self) -> list[str]:
        fails = []
        rs = self.rs
        if self.total_mass() != 2**rs.dim:
            fails.append(f"{rs.label}: mass {self.total_mass()} != 2^{rs.dim}")
        if self.table.degree != rs.dim:
            fails.append(f"{rs.label}: top q-degree {self.table.degree} != {rs.dim}")
        idx = self.table.index()
        for mu, n in idx.items():
            for i in range(1, rs.rank + 1):
                m = idx.get(rs.reflect_weight(mu, i))
                if m is None or (self.table.coeffs[m] != self.table.coeffs[n]).any():
                    fails.append(f"{rs.label}: not W-invariant at {mu}")
                    return fails
        return fails


def _check_budget(rs: RootSystem, max_weyl: int | None, max_roots: int | None):
    b = budget.current()
    cap_w = b.max_weyl if max_weyl is None else max_weyl
    cap_r = b.max_roots if max_roots is None else max_roots
    if rs.weyl_order > cap_w or len(rs.roots) > cap_r:
        raise BudgetExceeded(
            f"{rs.label} (|W|={rs.weyl_order}, |R|={len(rs.roots)}) is over the "
            f"decomposition budget (|W| <= {cap_w}, |R| <= {cap_r})"
        )


@lru_cache(maxsize=None)
def _exterior(rs: RootSystem) -> ExteriorCharacter:
    zero = (0,) * rs.rank
    factors = [(1, 1, zero)] * rs.rank + [(1, 1, rs.root_to_weight(a)) for a in rs.roots]
    return ExteriorCharacter(rs, fold_binomials(rs.rank, factors))


def exterior_character(rs: RootSystem, max_weyl: int | None = None,
                       max_roots: int | None = None) -> ExteriorCharacter:
    _check_budget(rs, max_weyl, max_roots)
    return _exterior(rs)


class _Freudenthal:
    """Dominant weight multiplicities of V(lambda), integer arithmetic only."""

    def __init__(self, rs: RootSystem):
        self.rs = rs
        g = rs.weight_gram
        den = lcm(*(x.denominator for row in g for x in row))
        self.gram = [[int(x * den) for x in row] for row in g]
        self.pos = [rs.root_to_weight(a) for a in rs.positive_roots]
        self.dom_cache: dict[Weight, Weight] = {}

    def ip(self, a, b) -> int:
        g = self.gram
        r = len(a)
        return sum(a[i] * g[i][j] * b[j] for i in range(r) for j in range(r))

    def dom(self, mu):
        d = self.dom_cache.get(mu)
        if d is None:
            d = self.dom_cache[mu] = self.rs.to_dominant(mu)[0]
        return d

    def multiplicities(self, lam: Weight) -> dict[Weight, int]:
        rho = self.rs.rho
        lr = tuple(x + y for x, y in zip(lam, rho))
        top = self.ip(lr, lr)
        weights = dominant_weights_below(self.rs, lam)
        support = set(weights)
        mult = {lam: 1}
        for mu in reversed(weights[:-1]):
            acc = 0
            for a in self.pos:
                nu = tuple(x + y for x, y in zip(mu, a))
                while True:
                    d = self.dom(nu)
                    if d not in support:
                        break
                    m = mult.get(d, 0)
                    if m:
                        acc += self.ip(nu, a) * m
                    nu = tuple(x + y for x, y in zip(nu, a))
            mr = tuple(x + y for x, y in zip(mu, rho))
            q, r = divmod(2 * acc, top - self.ip(mr, mr))
            if r:
                raise ArithmeticError(f"non-integral multiplicity at {mu} in V({lam})")
            if q:
                mult[mu] = q
        return mult


@lru_cache(maxsize=None)
def _freudenthal(rs: RootSystem) -> _Freudenthal:
    return _Freudenthal(rs)


def dominant_multiplicities(rs: RootSystem, lam: Weight) -> dict[Weight, int]:
    return _freudenthal(rs).multiplicities(tuple(lam))


def _decompose_peel(ec: ExteriorCharacter) -> dict[Weight, dict[int, int]]:
    rs = ec.rs
    residual = ec.dominant_part()
    out = {}
    while residual:
        lam = max(residual, key=lambda mu: (rs.scaled_height(mu), mu))
        g = residual[lam]
        if any(c < 0 for c in g.values()):
            raise NegativeMultiplicity(f"negative coefficient in GM_{lam}: {_render(g)}")
        if not rs.in_root_lattice(lam):
            raise ArithmeticError(f"GM_{lam} is non-zero although {lam} is not in the root lattice")
        out[lam] = g
        for mu, m in dominant_multiplicities(rs, lam).items():
            left = _add(residual.get(mu, {}), {d: m * c for d, c in g.items()}, -1)
            if left:
                residual[mu] = left
            else:
                residual.pop(mu, None)
    return out


def _decompose_denominator(ec: ExteriorCharacter) -> dict[Weight, dict[int, int]]:
    """[P * prod_{a>0} (1 - e^{-a})]_lambda via the Weyl denominator identity."""
    rs = ec.rs
    rho = rs.rho
    shifts = []
    for mu in weyl_orbit(rs, rho):
        _, word = rs.to_dominant(mu)
        shifts.append((-1 if len(word) % 2 else 1, tuple(a - b for a, b in zip(rho, mu))))
    idx = ec.table.index()
    coeffs = ec.table.coeffs
    out = {}
    for lam in ec.dominant_part():
        acc = None
        for sgn, s in shifts:
            n = idx.get(tuple(a + b for a, b in zip(lam, s)))
            if n is not None:
                row = coeffs[n].astype(object) * sgn
                acc = row if acc is None else acc + row
        if acc is not None:
            g = {d: int(c) for d, c in enumerate(acc) if c}
            if g:
                if any(c < 0 for c in g.values()):
                    raise NegativeMultiplicity(f"negative coefficient in GM_{lam}")
                out[lam] = g
    return out


def decompose(ec: ExteriorCharacter, method: str = "peel") -> dict[Weight, GradedMultiplicity]:
    """lambda -> GM_lambda for every V(lambda) occurring in the exterior algebra."""
    if method == "peel":
        raw = _decompose_peel(ec)
    elif method == "denominator":
        raw = _decompose_denominator(ec)
    else:
        raise ValueError(f"unknown method {method!r}")
    return {lam: GradedMultiplicity.make(lam, g) for lam, g in sorted(raw.items())}


# ---------------------------------------------------------------------------
# closed forms


def gm_formula_zero(rs: RootSystem) -> GradedMultiplicity:
    p = {0: 1}
    for d in rs.exponent_data.exponents:
        p = _mul(p, {0: 1, 2 * d + 1: 1})
    return GradedMultiplicity.make((0,) * rs.rank, p)


def _head(rs: RootSystem) -> dict:
    """(1 + q^-1) prod_{i<r} (1 + q^(2 d_i + 1))."""
    p = {-1: 1, 0: 1}
    for d in rs.exponent_data.exponents[:-1]:
        p = _mul(p, {0: 1, 2 * d + 1: 1})
    return p


def _finish(lam, p) -> GradedMultiplicity:
    if any(d < 0 for d in p):
        raise NotAPolynomial(f"negative powers of q survive: {_render(p)}")
    return GradedMultiplicity.make(lam, p)


def gm_formula_theta(rs: RootSystem) -> GradedMultiplicity:
    tail = {}
    for d in rs.exponent_data.exponents:
        tail = _add(tail, {2 * d: 1})
    return _finish(rs.root_to_weight(rs.theta), _mul(_head(rs), tail))


def gm_formula_theta_s(rs: RootSystem) -> GradedMultiplicity:
    if rs.simply_laced:
        raise ValueError(f"{rs.label} is simply laced; theta_s is not defined")
    ex = rs.exponent_data
    rl, rsh, dr = ex.r_l, ex.r_s, ex.exponents[-1]
    geom = _exact_div({0: 1, 4 * rl * rsh: -1}, {0: 1, 4 * rl: -1})
    p = _mul(_mul(_head(rs), {dr + 1 - 2 * (rsh - 1) * rl: 1}), geom)
    return _finish(rs.root_to_weight(rs.theta_s), p)


def special_weight(rs: RootSystem, which: str) -> Weight:
    if which == "zero":
        return (0,) * rs.rank
    if which == "theta":
        return rs.root_to_weight(rs.theta)
    if which == "theta-s":
        if rs.simply_laced:
            raise ValueError(f"{rs.label} is simply laced; theta_s is not defined")
        return rs.root_to_weight(rs.theta_s)
    raise ValueError(f"unsupported lambda {which!r}; use zero, theta or theta-s")


# ---------------------------------------------------------------------------
# the Macdonald route


def _substitute_minus_q(p: dict) -> dict:
    return {d: (-c if d % 2 else c) for d, c in p.items()}


def gm_via_macdonald(rs: RootSystem, which: str) -> GradedMultiplicity:
    """GM_lambda(-q) = (1-q)^r <1, chi_lambda>_2, with <f,g> = [f bar(g) Delta_2]_0 / |W|."""
    lam = special_weight(rs, which)
    chi = weyl_character(rs, lam)
    one = AlgebraElement.one(rs.rank)
    val = macdonald_product(rs, one, chi, 2, normalized=True)
    val = val * QtScalar.from_q_poly({0: 1, 1: -1}) ** rs.rank
    try:
        p = _to_poly(val.q_poly())
    except ValueError as exc:
        raise NotAPolynomial(str(exc)) from None
    return _finish(lam, _substitute_minus_q(p))


def scprod_hroot(rs: RootSystem) -> QtScalar:
    """-r + (q t^2 - 1)/(q t^(-2 d_r) - 1) sum_i t^(-2 d_i)."""
    ex = rs.exponent_data.exponents
    s = ZERO
    for d in ex:
        s = s + t_power(-2 * d)
    frac = (q_power(1) * t_power(2) - ONE) / (q_power(1) * t_power(-2 * ex[-1]) - ONE)
    return frac * s - rs.rank


def scprod_hsroot(rs: RootSystem) -> QtScalar:
    """-r_s + (q t^2 - 1)/(q t^(-2 d_r) - 1) t^(-d_r - 1 + 2(r_s - 1) r_l)
    (1 - t^(-4 r_l r_s))/(1 - t^(-4 r_l))."""
    ex = rs.exponent_data
    rl, rsh, dr = ex.r_l, ex.r_s, ex.exponents[-1]
    frac = (q_power(1) * t_power(2) - ONE) / (q_power(1) * t_power(-2 * dr) - ONE)
    geom = (ONE - t_power(-4 * rl * rsh)) / (ONE - t_power(-4 * rl))
    return frac * t_power(-dr - 1 + 2 * (rsh - 1) * rl) * geom - rsh


def _root_sum(rs: RootSystem, roots) -> AlgebraElement:
    out = AlgebraElement.zero(rs.rank)
    for a in roots:
        out = out + e(rs.root_to_weight(a))
    return out


def ratio_route_check(rs: RootSystem, which: str) -> list[str]:
    """Re-derive <1, chi_lambda>_2 / <1, 1>_2 through Cherednik ratios and the
    closed ratio formulas, and compare with the direct constant terms."""
    fails = []
    one = AlgebraElement.one(rs.rank)
    lam = special_weight(rs, which)
    direct = macdonald_product(rs, one, weyl_character(rs, lam), 2) / macdonald_product(rs, one, one, 2)
    if which == "zero":
        return [] if direct == ONE else [f"{rs.label}: <1,1>/<1,1> != 1"]
    if which == "theta":
        ratio = cherednik_ratio(rs, _root_sum(rs, rs.roots), 2)
        closed = scprod_hroot(rs).specialize(2)
        shift = rs.rank
    else:
        short = [a for a in rs.roots if rs.is_short(a)]
        ratio = cherednik_ratio(rs, _root_sum(rs, short), 2)
        closed = scprod_hsroot(rs).specialize(2)
        shift = rs.exponent_data.r_s
    if ratio != closed:
        fails.append(f"{rs.label}: Cherednik ratio for {which} is {ratio}, closed form gives {closed}")
    if ratio + shift != direct:
        fails.append(f"{rs.label}: {shift} + ratio != <1, chi>_2/<1, 1>_2 for {which}")
    return fails


def check_scprod_hsroot(rs: RootSystem, ks=(1, 2)) -> list[str]:
    fails = []
    short = _root_sum(rs, [a for a in rs.roots if rs.is_short(a)])
    for k in ks:
        got = cherednik_ratio(rs, short, k)
        want = scprod_hsroot(rs).specialize(k)
        if got != want:
            fails.append(f"{rs.label} k={k}: short-root ratio {got} != {want}")
    return fails


def check_theta_s_character(rs: RootSystem) -> list[str]:
    """chi_{theta_s} = m_{theta_s} + r_s e^0."""
    lam = rs.root_to_weight(rs.theta_s)
    want = orbit_sum(rs, lam).element + AlgebraElement.one(rs.rank) * rs.exponent_data.r_s
    return [] if weyl_character(rs, lam) == want else [f"{rs.label}: chi_theta_s != m_theta_s + r_s"]


# ---------------------------------------------------------------------------
# sums of t-powers over root heights


def lemma_d_sum(rs: RootSystem, k_exp: int, l_exp: int, short: bool = False) -> tuple[QtScalar, QtScalar]:
    """Both sides of sum_{a>0} t^(k ht a + l) = sum_i t^l (1 - t^(k d_i))/(t^-k - 1).

    With ``short=True`` the sum runs over short positive roots and the d_i are
    the short exponents.
    """
    if k_exp == 0:
        raise ValueError("k_exp must be non-zero")
    if short:
        roots, exps = rs.short_positive_roots(), rs.exponent_data.short_exponents
    else:
        roots, exps = rs.positive_roots, rs.exponent_data.exponents
    lhs = ZERO
    for a in roots:
        lhs = lhs + t_power(k_exp * sum(a) + l_exp)
    rhs = ZERO
    for d in exps:
        rhs = rhs + t_power(l_exp) * (ONE - t_power(k_exp * d)) / (t_power(-k_exp) - ONE)
    return lhs, rhs


LEMMA_D_K = (-4, -2, -1, 1, 2, 4)
LEMMA_D_L = (-2, -1, 0, 1, 2)


def check_lemma_d(rs: RootSystem, ks=LEMMA_D_K, ls=LEMMA_D_L) -> list[str]:
    fails = []
    variants = [False] if rs.simply_laced else [False, True]
    for short in variants:
        for k in ks:
            for l in ls:
                lhs, rhs = lemma_d_sum(rs, k, l, short)
                if lhs != rhs:
                    tag = "short " if short else ""
                    fails.append(f"{rs.label}: {tag}height-sum identity fails at k={k}, l={l}")
    return fails
