"""Reduced irreducible root systems with exact data.

Conventions
-----------
* Simple roots are numbered as in Bourbaki.
* Short roots have ``(a, a) = 2``, long roots ``(a, a) = 2*Lambda``; in the
  simply laced case every root has squared length 2 and counts as long.
* Roots are integer tuples in the simple-root basis.  Weights are integer
  tuples in the fundamental-weight basis, so ``mu[i] == (mu, alpha_{i+1}^vee)``.
* Coweights in the coroot lattice are integer tuples in the simple-coroot basis.
* Simple reflections are indexed 1..r (index 0 is reserved for the affine one).
"""

from __future__ import annotations

import re
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property, lru_cache
from math import factorial, lcm

__all__ = [
    "RootSystem",
    "ExponentData",
    "UnknownRootSystem",
    "build_root_system",
    "heights",
    "exponents",
    "dominance_leq",
    "weyl_orbit",
    "dual_partition",
]

Root = tuple[int, ...]
Weight = tuple[int, ...]


class UnknownRootSystem(ValueError):
    pass


_LABEL = re.compile(r"^\s*([A-Ga-g])\s*_?\s*(\d+)\s*$")

_ROOT_COUNT = {"E6": 72, "E7": 126, "E8": 240, "F4": 48, "G2": 12}
_WEYL_ORDER = {"E6": 51840, "E7": 2903040, "E8": 696729600, "F4": 1152, "G2": 12}


def _gram(family: str, r: int) -> list[list[int]]:
    """Gram matrix (alpha_i, alpha_j) of the simple roots."""
    g = [[0] * r for _ in range(r)]

    def link(i, j, val):
        g[i - 1][j - 1] = g[j - 1][i - 1] = val

    if family == "A":
        for i in range(r):
            g[i][i] = 2
        for i in range(1, r):
            link(i, i + 1, -1)
    elif family == "B":
        for i in range(r - 1):
            g[i][i] = 4
        g[r - 1][r - 1] = 2
        for i in range(1, r):
            link(i, i + 1, -2)
    elif family == "C":
        for i in range(r - 1):
            g[i][i] = 2
        g[r - 1][r - 1] = 4
        for i in range(1, r - 1):
            link(i, i + 1, -1)
        link(r - 1, r, -2)
    elif family == "D":
        for i in range(r):
            g[i][i] = 2
        for i in range(1, r - 1):
            link(i, i + 1, -1)
        link(r - 2, r, -1)
    elif family == "E":
        for i in range(r):
            g[i][i] = 2
        link(1, 3, -1)
        link(2, 4, -1)
        for i in range(3, r):
            link(i, i + 1, -1)
    elif family == "F":
        g[0][0] = g[1][1] = 4
        g[2][2] = g[3][3] = 2
        link(1, 2, -2)
        link(2, 3, -2)
        link(3, 4, -1)
    elif family == "G":
        g[0][0], g[1][1] = 2, 6
        link(1, 2, -3)
    return g


def _check_label(family: str, r: int) -> None:
    ok = {
        "A": r >= 1,
        "B": r >= 2,
        "C": r >= 2,
        "D": r >= 4,
        "E": r in (6, 7, 8),
        "F": r == 4,
        "G": r == 2,
    }[family]
    if not ok:
        raise UnknownRootSystem(f"no root system of type {family}{r}")


def dual_partition(parts: dict[int, int] | list[int]) -> list[int]:
    """Dual of the partition given as n -> multiplicity counts m(1) >= m(2) >= ...

    Returned in increasing order.
    """
    if isinstance(parts, dict):
        seq = [parts.get(n, 0) for n in range(1, max(parts, default=0) + 1)]
    else:
        seq = list(parts)
    top = max(seq, default=0)
    return sorted(sum(1 for x in seq if x >= j) for j in range(1, top + 1))


@dataclass(frozen=True)
class ExponentData:
    m_partition: dict[int, int]
    exponents: tuple[int, ...]
    short_m_partition: dict[int, int]
    short_exponents: tuple[int, ...]
    r_l: int
    r_s: int


@dataclass(frozen=True, eq=False)
class RootSystem:
    """Immutable root-system data; build with :func:`build_root_system`."""

    label: str
    family: str
    rank: int
    gram: tuple[tuple[int, ...], ...]
    cartan: tuple[tuple[int, ...], ...]  # cartan[i][j] = (alpha_i, alpha_j^vee)
    symmetrizer: tuple[int, ...]  # (alpha_i, alpha_i) / 2
    roots: tuple[Root, ...]
    positive_roots: tuple[Root, ...]
    lambda_ratio: int | None
    m: int
    _root_index: dict = field(repr=False, default_factory=dict)

    def __hash__(self):
        return hash(self.label)

    def __eq__(self, other):
        return isinstance(other, RootSystem) and other.label == self.label

    def __repr__(self):
        return f"RootSystem({self.label})"

    # -- basic pairings -----------------------------------------------
    @property
    def simply_laced(self) -> bool:
        return self.lambda_ratio is None

    def norm2(self, beta: Root) -> int:
        """(beta, beta) for a vector in the simple-root basis."""
        g = self.gram
        r = self.rank
        return sum(beta[i] * g[i][j] * beta[j] for i in range(r) for j in range(r))

    def inner_roots(self, a: Root, b: Root) -> int:
        g = self.gram
        r = self.rank
        return sum(a[i] * g[i][j] * b[j] for i in range(r) for j in range(r))

    def is_long(self, beta: Root) -> bool:
        return self.norm2(beta) == 2 * (self.lambda_ratio or 1)

    def is_short(self, beta: Root) -> bool:
        return not self.simply_laced and self.norm2(beta) == 2

    def is_positive(self, beta: Root) -> bool:
        return any(beta) and all(c >= 0 for c in beta)

    def is_root(self, beta: Root) -> bool:
        return tuple(beta) in self._root_index

    def coroot(self, beta: Root) -> tuple[int, ...]:
        """beta^vee in the simple-coroot basis."""
        n = self.norm2(beta)
        return tuple(beta[j] * 2 * self.symmetrizer[j] // n for j in range(self.rank))

    @cached_property
    def long_simple(self) -> tuple[bool, ...]:
        return tuple(self.is_long(self.simple_root(i)) for i in range(1, self.rank + 1))

    def simple_root(self, i: int) -> Root:
        return tuple(int(j == i - 1) for j in range(self.rank))

    def pair_root_coroot(self, beta: Root, alpha: Root) -> int:
        """(beta, alpha^vee) for two vectors in the simple-root basis."""
        return 2 * self.inner_roots(beta, alpha) // self.norm2(alpha)

    def root_to_weight(self, beta: Root) -> Weight:
        """Fundamental-weight coordinates of a root-lattice vector."""
        c = self.cartan
        r = self.rank
        return tuple(sum(beta[i] * c[i][j] for i in range(r)) for j in range(r))

    @cached_property
    def _inverse_cartan(self) -> tuple[tuple[Fraction, ...], ...]:
        return _invert([[Fraction(x) for x in row] for row in self.cartan])

    def weight_to_simple(self, mu: Weight) -> tuple[Fraction, ...]:
        """Simple-root coordinates (rational) of a weight."""
        inv = self._inverse_cartan
        r = self.rank
        return tuple(sum(mu[i] * inv[i][j] for i in range(r)) for j in range(r))

    def in_root_lattice(self, mu: Weight) -> bool:
        return all(c.denominator == 1 for c in self.weight_to_simple(mu))

    def weight_to_root(self, mu: Weight) -> Root:
        coords = self.weight_to_simple(mu)
        if any(c.denominator != 1 for c in coords):
            raise ValueError(f"{mu} is not in the root lattice")
        return tuple(int(c) for c in coords)

    def pair_weight_coroot(self, mu: Weight, alpha: Root) -> int:
        """(mu, alpha^vee) for a weight in fundamental coordinates."""
        return sum(m * c for m, c in zip(mu, self.coroot(alpha)))

    @cached_property
    def weight_gram(self) -> tuple[tuple[Fraction, ...], ...]:
        """(omega_i, omega_j)."""
        inv = self._inverse_cartan
        r = self.rank
        # omega_i = sum_k inv[i][k] alpha_k
        return tuple(
            tuple(sum(inv[i][k] * self.gram[k][l] * inv[j][l] for k in range(r) for l in range(r))
                  for j in range(r))
            for i in range(r)
        )

    def inner_weights(self, mu: Weight, nu: Weight) -> Fraction:
        g = self.weight_gram
        r = self.rank
        return sum((mu[i] * g[i][j] * nu[j] for i in range(r) for j in range(r)), Fraction(0))

    def height(self, beta) -> Fraction | int:
        return sum(beta)

    @cached_property
    def height_functional(self) -> tuple[tuple[int, ...], int]:
        """(n, D) with ht(mu) = sum(n_i mu_i) / D, all integers."""
        h = [sum(row, Fraction(0)) for row in self._inverse_cartan]
        den = lcm(*(x.denominator for x in h))
        return tuple(int(x * den) for x in h), den

    def scaled_height(self, mu: Weight) -> int:
        """D * ht(mu); order-compatible with weight_height."""
        n, _ = self.height_functional
        return sum(a * b for a, b in zip(n, mu))

    def weight_height(self, mu: Weight) -> Fraction:
        n, den = self.height_functional
        return Fraction(sum(a * b for a, b in zip(n, mu)), den)

    # -- reflections --------------------------------------------------
    def reflect_root(self, beta: Root, i: int) -> Root:
        c = self.cartan
        k = sum(beta[j] * c[j][i - 1] for j in range(self.rank))
        if not k:
            return tuple(beta)
        out = list(beta)
        out[i - 1] -= k
        return tuple(out)

    def reflect_weight(self, mu: Weight, i: int) -> Weight:
        k = mu[i - 1]
        if not k:
            return tuple(mu)
        row = self.cartan[i - 1]
        return tuple(x - k * a for x, a in zip(mu, row))

    def reflect_coweight(self, lam: tuple[int, ...], i: int) -> tuple[int, ...]:
        """s_i on a coweight in the simple-coroot basis."""
        row = self.cartan[i - 1]
        k = sum(lam[j] * row[j] for j in range(self.rank))  # (alpha_i, lam)
        if not k:
            return tuple(lam)
        out = list(lam)
        out[i - 1] -= k
        return tuple(out)

    def reflect_root_by(self, beta: Root, alpha: Root) -> Root:
        """s_alpha(beta) = beta - (beta, alpha^vee) alpha."""
        k = self.pair_root_coroot(beta, alpha)
        return tuple(b - k * a for b, a in zip(beta, alpha))

    def to_dominant(self, mu: Weight) -> tuple[Weight, tuple[int, ...]]:
        """Dominant representative of W.mu and the word w (applied left to
        right as written, s_{w[0]} first) carrying mu to it."""
        mu = tuple(mu)
        word = []
        while True:
            for i, x in enumerate(mu):
                if x < 0:
                    mu = self.reflect_weight(mu, i + 1)
                    word.append(i + 1)
                    break
            else:
                return mu, tuple(word)

    def is_dominant(self, mu: Weight) -> bool:
        return all(x >= 0 for x in mu)

    # -- distinguished roots ------------------------------------------
    @cached_property
    def theta(self) -> Root:
        return max((b for b in self.positive_roots if self.is_long(b)), key=sum)

    @cached_property
    def theta_s(self) -> Root | None:
        short = [b for b in self.positive_roots if self.is_short(b)]
        return max(short, key=sum) if short else None

    @cached_property
    def theta_coroot(self) -> tuple[int, ...]:
        return self.coroot(self.theta)

    @cached_property
    def rho(self) -> Weight:
        return (1,) * self.rank

    @cached_property
    def two_rho(self) -> Root:
        return tuple(sum(b[j] for b in self.positive_roots) for j in range(self.rank))

    @cached_property
    def weyl_order(self) -> int:
        f, r = self.family, self.rank
        if f == "A":
            return factorial(r + 1)
        if f in "BC":
            return 2**r * factorial(r)
        if f == "D":
            return 2 ** (r - 1) * factorial(r)
        return _WEYL_ORDER[self.label]

    @property
    def dim(self) -> int:
        """Dimension of the simple Lie algebra."""
        return self.rank + len(self.roots)

    def short_positive_roots(self) -> list[Root]:
        return [b for b in self.positive_roots if self.is_short(b)]

    def long_positive_roots(self) -> list[Root]:
        return [b for b in self.positive_roots if self.is_long(b)]

    @cached_property
    def exponent_data(self) -> ExponentData:
        return exponents(self)

    @property
    def L(self) -> int:
        return heights(self, self.theta)[1]

    @property
    def S(self) -> int:
        return heights(self, self.theta)[2]


def _invert(mat):
    n = len(mat)
    a = [row[:] + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(mat)]
    for col in range(n):
        piv = next(r for r in range(col, n) if a[r][col] != 0)
        a[col], a[piv] = a[piv], a[col]
        p = a[col][col]
        a[col] = [x / p for x in a[col]]
        for r in range(n):
            if r != col and a[r][col] != 0:
                f = a[r][col]
                a[r] = [x - f * y for x, y in zip(a[r], a[col])]
    return tuple(tuple(row[n:]) for row in a)


def _expected_root_count(family: str, r: int) -> int:
    if family == "A":
        return r * (r + 1)
    if family in "BC":
        return 2 * r * r
    if family == "D":
        return 2 * r * (r - 1)
    return _ROOT_COUNT[f"{family}{r}"]


@lru_cache(maxsize=None)
def build_root_system(type_label: str) -> RootSystem:
    """Construct the root system named e.g. ``"B3"``, ``"G2"`` or ``"E_6"``."""
    match = _LABEL.match(type_label)
    if not match:
        raise UnknownRootSystem(f"unknown root system label {type_label!r}")
    family, r = match.group(1).upper(), int(match.group(2))
    _check_label(family, r)
    label = f"{family}{r}"
    gram = _gram(family, r)
    cartan = tuple(tuple(2 * gram[i][j] // gram[j][j] for j in range(r)) for i in range(r))
    symmetrizer = tuple(gram[i][i] // 2 for i in range(r))
    lengths = set(symmetrizer)
    lam = None if len(lengths) == 1 else max(lengths) // min(lengths)

    simple = [tuple(int(j == i) for j in range(r)) for i in range(r)]
    seen = set(simple)
    queue = deque(simple)
    while queue:
        b = queue.popleft()
        for i in range(r):
            k = sum(b[j] * cartan[j][i] for j in range(r))
            if k:
                c = list(b)
                c[i] -= k
                c = tuple(c)
                if c not in seen:
                    seen.add(c)
                    queue.append(c)
    roots = tuple(sorted(seen, key=lambda b: (sum(b), b)))
    if len(roots) != _expected_root_count(family, r):
        raise AssertionError(f"{label}: generated {len(roots)} roots")
    positive = tuple(b for b in roots if all(c >= 0 for c in b))

    inv = _invert([[Fraction(x) for x in row] for row in cartan])
    m = lcm(*(x.denominator for row in inv for x in row))
    return RootSystem(
        label=label,
        family=family,
        rank=r,
        gram=tuple(tuple(row) for row in gram),
        cartan=cartan,
        symmetrizer=symmetrizer,
        roots=roots,
        positive_roots=positive,
        lambda_ratio=lam,
        m=m,
        _root_index={b: n for n, b in enumerate(roots)},
    )


def heights(rs: RootSystem, beta: Root) -> tuple[int, int, int]:
    """(ht, ht_l, ht_s) of a vector in the simple-root basis."""
    ht_l = sum(c for c, lng in zip(beta, rs.long_simple) if lng)
    ht = sum(beta)
    return ht, ht_l, ht - ht_l


def exponents(rs: RootSystem) -> ExponentData:
    mp: dict[int, int] = {}
    ms: dict[int, int] = {}
    for b in rs.positive_roots:
        h = sum(b)
        mp[h] = mp.get(h, 0) + 1
        if rs.is_short(b):
            ms[h] = ms.get(h, 0) + 1
    r_l = sum(rs.long_simple) if not rs.simply_laced else rs.rank
    r_s = rs.rank - r_l
    return ExponentData(
        m_partition=dict(sorted(mp.items())),
        exponents=tuple(dual_partition(mp)),
        short_m_partition=dict(sorted(ms.items())),
        short_exponents=tuple(dual_partition(ms)),
        r_l=r_l,
        r_s=r_s,
    )


def dominance_leq(rs: RootSystem, lam: Weight, mu: Weight) -> bool:
    """lam <= mu, i.e. mu - lam is a non-negative integer sum of simple roots."""
    diff = rs.weight_to_simple(tuple(b - a for a, b in zip(lam, mu)))
    return all(c.denominator == 1 and c >= 0 for c in diff)


def weyl_orbit(rs: RootSystem, lam: Weight) -> set[Weight]:
    lam = tuple(lam)
    seen = {lam}
    queue = deque([lam])
    while queue:
        mu = queue.popleft()
        for i in range(1, rs.rank + 1):
            if mu[i - 1]:
                nu = rs.reflect_weight(mu, i)
                if nu not in seen:
                    seen.add(nu)
                    queue.append(nu)
    return seen
