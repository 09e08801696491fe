"""Products of many binomials ``(1 + c q^a e^beta)`` with integer data.

Weights are packed into a single integer key (mixed radix, with offsets from
the worst-case coordinate bounds) and the q-grading is a dense column axis,
so one factor costs a concatenate, a sort and a ``np.add.reduceat``.
Coefficients stay in int64 while the product of ``1 + |c|`` over all factors
fits; otherwise Python integers (object arrays) are used.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

__all__ = ["QTable", "fold_binomials"]

Factor = tuple[int, int, Sequence[int]]  # (coefficient, q exponent, weight)


@dataclass
class QTable:
    """Sparse map weight -> polynomial in q with integer coefficients.

    ``coeffs[n, d]`` is the coefficient of ``q^d e^{weights[n]}``.
    """

    rank: int
    weights: np.ndarray  # (N, rank) int64
    coeffs: np.ndarray  # (N, D + 1)

    def __post_init__(self):
        self._index = None

    def __len__(self):
        return len(self.weights)

    @property
    def degree(self) -> int:
        return self.coeffs.shape[1] - 1

    def index(self) -> dict[tuple[int, ...], int]:
        if self._index is None:
            self._index = {tuple(int(x) for x in w): n for n, w in enumerate(self.weights)}
        return self._index

    def row(self, mu) -> dict[int, int]:
        n = self.index().get(tuple(mu))
        if n is None:
            return {}
        return {d: int(c) for d, c in enumerate(self.coeffs[n]) if c}

    def items(self):
        for w, n in self.index().items():
            yield w, {d: int(c) for d, c in enumerate(self.coeffs[n]) if c}

    def total_mass(self) -> int:
        return int(sum(int(x) for x in self.coeffs.sum(axis=0)))


def _coef_dtype(factors) -> object:
    bits = sum(math.log2(1 + abs(c)) for c, _, _ in factors)
    return np.int64 if bits < 62 else object


def fold_binomials(rank: int, factors: Iterable[Factor]) -> QTable:
    """Expand prod (1 + c q^a e^beta) with non-negative integer exponents a."""
    factors = [(int(c), int(a), tuple(int(x) for x in b)) for c, a, b in factors]
    if any(a < 0 for _, a, _ in factors):
        raise ValueError("q exponents must be non-negative")
    bound = [sum(abs(b[j]) for _, _, b in factors) for j in range(rank)]
    radix = [2 * x + 1 for x in bound]
    if math.prod(radix) >= 2**62:
        raise OverflowError("weight range too large to pack into int64 keys")
    stride = [1] * rank
    for j in range(rank - 2, -1, -1):
        stride[j] = stride[j + 1] * radix[j + 1]
    origin = sum(bound[j] * stride[j] for j in range(rank))
    width = sum(a for _, a, _ in factors) + 1
    dtype = _coef_dtype(factors)

    keys = np.array([origin], dtype=np.int64)
    coeffs = np.zeros((1, width), dtype=dtype)
    coeffs[0, 0] = 1
    for c, a, b in factors:
        shift = sum(b[j] * stride[j] for j in range(rank))
        moved = np.zeros_like(coeffs)
        if a:
            moved[:, a:] = coeffs[:, : width - a] * c
        else:
            moved[:] = coeffs * c
        keys = np.concatenate([keys, keys + shift])
        coeffs = np.concatenate([coeffs, moved])
        order = np.argsort(keys, kind="stable")
        keys = keys[order]
        coeffs = coeffs[order]
        starts = np.flatnonzero(np.r_[True, keys[1:] != keys[:-1]])
        keys = keys[starts]
        coeffs = np.add.reduceat(coeffs, starts, axis=0)
        live = np.any(coeffs != 0, axis=1)
        if not live.all():
            keys = keys[live]
            coeffs = coeffs[live]

    rest = keys.copy()
    weights = np.zeros((len(keys), rank), dtype=np.int64)
    for j in range(rank):
        weights[:, j] = rest // stride[j]
        rest = rest - weights[:, j] * stride[j]
        weights[:, j] -= bound[j]
    return QTable(rank, weights, coeffs)
