"""Triangular LR-fuzzy numbers and their extension-principle arithmetic.

A triangular fuzzy number is stored as ``(l, m, r)``: left spread, center
and right spread.  Its membership function is

    mu(x) = 1 - (m - x) / l   for m - l <= x <= m
    mu(x) = 1 - (x - m) / r   for m <  x <= m + r

and zero elsewhere.  Only addition and multiplication by a crisp scalar are
defined; fuzzy-by-fuzzy products are deliberately left out.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .errors import DomainError

SYMMETRY_TOL = 1e-12


@dataclass(frozen=True)
class Interval:
    lo: float
    hi: float

    def __post_init__(self):
        if self.lo > self.hi:
            raise DomainError(f"interval bounds out of order: [{self.lo}, {self.hi}]")

    def __contains__(self, other):
        if isinstance(other, Interval):
            return self.lo <= other.lo and other.hi <= self.hi
        return self.lo <= other <= self.hi

    @property
    def width(self):
        return self.hi - self.lo

    def __add__(self, other):
        return Interval(self.lo + other.lo, self.hi + other.hi)


@dataclass(frozen=True)
class TriangularFuzzyNumber:
    """Triangular fuzzy number ``(l, m, r)_T``.

    Parameters
    ----------
    l : float
        Left spread, must be nonnegative.
    m : float
        Center (modal value).
    r : float
        Right spread, must be nonnegative.

    Zero spreads are allowed; ``(0, m, 0)`` is the crisp number ``m``.
    """

    l: float
    m: float
    r: float

    def __post_init__(self):
        for name in ("l", "m", "r"):
            value = float(getattr(self, name))
            if not math.isfinite(value):
                raise DomainError(f"{name} must be finite, got {value}")
            object.__setattr__(self, name, value)
        if self.l < 0 or self.r < 0:
            raise DomainError(f"spreads must be nonnegative, got l={self.l}, r={self.r}")

    @classmethod
    def symmetric(cls, m, s):
        """Build ``(s, m, s)_T`` from a center and a common spread."""
        return cls(s, m, s)

    @classmethod
    def crisp(cls, value):
        return cls(0.0, value, 0.0)

    @property
    def is_symmetric(self):
        return abs(self.l - self.r) <= SYMMETRY_TOL

    @property
    def support(self):
        return Interval(self.m - self.l, self.m + self.r)

    def as_tuple(self):
        return (self.l, self.m, self.r)

    def __add__(self, other):
        if not isinstance(other, TriangularFuzzyNumber):
            return NotImplemented
        return add(self, other)

    def __rmul__(self, lam):
        if isinstance(lam, TriangularFuzzyNumber):
            return NotImplemented
        return scalar_mul(lam, self)

    __mul__ = __rmul__

    def __str__(self):
        return format_tfn(self)


TFN = TriangularFuzzyNumber


def membership(a: TriangularFuzzyNumber, x: float) -> float:
    """Membership degree of ``x`` in ``a`` (triangular shape on both sides)."""
    if x == a.m:
        return 1.0
    if x < a.m:
        if a.l == 0.0:
            return 0.0
        return max(0.0, 1.0 - (a.m - x) / a.l)
    if a.r == 0.0:
        return 0.0
    return max(0.0, 1.0 - (x - a.m) / a.r)


def alpha_cut(a: TriangularFuzzyNumber, alpha: float) -> Interval:
    """Closed interval of points with membership at least ``alpha``.

    ``alpha = 0`` returns the closure of the support.
    """
    if not 0.0 <= alpha <= 1.0:
        raise DomainError(f"alpha must lie in [0, 1], got {alpha}")
    width = 1.0 - alpha
    return Interval(a.m - width * a.l, a.m + width * a.r)


def add(a: TriangularFuzzyNumber, b: TriangularFuzzyNumber) -> TriangularFuzzyNumber:
    return TriangularFuzzyNumber(a.l + b.l, a.m + b.m, a.r + b.r)


def scalar_mul(lam: float, a: TriangularFuzzyNumber) -> TriangularFuzzyNumber:
    """Multiply by a crisp scalar; a negative factor swaps the spreads."""
    lam = float(lam)
    if lam > 0:
        return TriangularFuzzyNumber(lam * a.l, lam * a.m, lam * a.r)
    if lam < 0:
        return TriangularFuzzyNumber(-lam * a.r, lam * a.m, -lam * a.l)
    return TriangularFuzzyNumber(0.0, 0.0, 0.0)


def fuzzy_sum(terms: Iterable[TriangularFuzzyNumber]) -> TriangularFuzzyNumber:
    total = TriangularFuzzyNumber(0.0, 0.0, 0.0)
    for t in terms:
        total = add(total, t)
    return total


def format_tfn(a: TriangularFuzzyNumber, digits: int = 4) -> str:
    """Render as ``(m, s)_T`` when symmetric, else ``(l, m, r)_T``."""
    if a.is_symmetric:
        return f"({a.m:.{digits}f}, {a.l:.{digits}f})_T"
    return f"({a.l:.{digits}f}, {a.m:.{digits}f}, {a.r:.{digits}f})_T"


def to_array(values: Sequence[TriangularFuzzyNumber]) -> np.ndarray:
    """Stack fuzzy numbers into an ``(n, 3)`` array of ``(l, m, r)`` rows."""
    if len(values) == 0:
        return np.zeros((0, 3))
    return np.array([v.as_tuple() for v in values], dtype=float)


def from_array(arr) -> list[TriangularFuzzyNumber]:
    arr = np.asarray(arr, dtype=float).reshape(-1, 3)
    return [TriangularFuzzyNumber(*row) for row in arr]
