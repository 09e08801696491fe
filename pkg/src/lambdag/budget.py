"""Size budgets shared by the expensive operations.

Defaults come from the environment (``LAMBDAG_MAX_WEYL``, ``LAMBDAG_MAX_K``,
``LAMBDAG_MAX_ROOTS``, ``LAMBDAG_MAX_KERNEL_FACTORS``) and can be overridden
for a block of code with :func:`override`.
"""

from __future__ import annotations

import os
from contextlib import contextmanager
from dataclasses import dataclass, fields, replace


class BudgetExceeded(RuntimeError):
    pass


@dataclass(frozen=True)
class Budgets:
    max_weyl: int = 2_000_000
    max_k: int = 3
    max_roots: int = 72
    # |R| * k binomials in a kernel; D4 at k=2 (48) takes seconds, F4 at k=2 (96) exhausts memory
    max_kernel_factors: int = 72

    def __post_init__(self):
        for f in fields(self):
            if getattr(self, f.name) <= 0:
                raise ValueError(f"budget {f.name} must be positive")

    @classmethod
    def from_env(cls) -> "Budgets":
        kw = {}
        for f in fields(cls):
            raw = os.environ.get("LAMBDAG_" + f.name.upper())
            if raw is not None:
                kw[f.name] = int(raw)
        return cls(**kw)


_current = Budgets.from_env()


def current() -> Budgets:
    return _current


@contextmanager
def override(**changes):
    global _current
    saved = _current
    _current = replace(saved, **{k: v for k, v in changes.items() if v is not None})
    try:
        yield _current
    finally:
        _current = saved
