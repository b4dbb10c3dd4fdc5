"""Goodness-of-fit distances between observed and fitted fuzzy responses.

Three families are provided:

* ``D_PQ`` -- weighted integral of (signed) alpha-cut endpoint differences
  raised to the power ``p``; ``D_2_HALF`` is its closed form for
  ``p = 2, q = 1/2``.  Aggregated as the mean over observations.
* ``D_H`` -- sum of absolute differences of center and both spreads.
  Aggregated as a plain sum.
* ``D_LR`` -- mean of the absolute differences of the center and of the two
  weighted "side points" ``m + w_r r`` and ``m - w_l l``.  Aggregated as a
  plain sum.

The ``*_terms`` helpers work on ``(..., 3)`` arrays of ``(l, m, r)`` rows and
broadcast, which the shrinkage search relies on for speed.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np
from scipy import integrate

from .errors import DomainError
from .fuzzy import TriangularFuzzyNumber, to_array

QUAD_TOL = 1e-9


class MetricKind(enum.Enum):
    D_PQ = "dpq"
    D_2_HALF = "d2q"
    D_H = "dh"
    D_LR = "dlr"


class Aggregation(enum.Enum):
    SUM = "sum"
    MEAN_OF_SQUARES = "mean_of_squares"


@dataclass(frozen=True)
class GofMetric:
    """A goodness-of-fit measure together with its parameters.

    Use the constructors :meth:`dlr`, :meth:`dh`, :meth:`d2_half` and
    :meth:`dpq` rather than instantiating directly.
    """

    kind: MetricKind
    p: float = 2.0
    q: float = 0.5
    w_l: float = 0.5
    w_r: float = 0.5

    def __post_init__(self):
        if self.kind is MetricKind.D_PQ:
            _check_pq(self.p, self.q)
        if self.kind is MetricKind.D_LR and (self.w_l <= 0 or self.w_r <= 0):
            raise DomainError(f"D_LR weights must be positive, got {self.w_l}, {self.w_r}")

    @classmethod
    def dlr(cls, w_l=0.5, w_r=0.5):
        return cls(MetricKind.D_LR, w_l=float(w_l), w_r=float(w_r))

    @classmethod
    def dh(cls):
        return cls(MetricKind.D_H)

    @classmethod
    def d2_half(cls):
        return cls(MetricKind.D_2_HALF)

    @classmethod
    def dpq(cls, p, q):
        return cls(MetricKind.D_PQ, p=float(p), q=float(q))

    @property
    def aggregation(self):
        if self.kind in (MetricKind.D_H, MetricKind.D_LR):
            return Aggregation.SUM
        return Aggregation.MEAN_OF_SQUARES

    @property
    def label(self):
        if self.kind is MetricKind.D_LR:
            if self.w_l == 0.5 and self.w_r == 0.5:
                return "dlr"
            return f"dlr:{self.w_l:g},{self.w_r:g}"
        if self.kind is MetricKind.D_PQ:
            return f"dpq:{self.p:g},{self.q:g}"
        return self.kind.value

    def to_dict(self):
        out = {"kind": self.kind.value, "aggregation": self.aggregation.value}
        if self.kind is MetricKind.D_LR:
            out.update(w_l=self.w_l, w_r=self.w_r)
        elif self.kind is MetricKind.D_PQ:
            out.update(p=self.p, q=self.q)
        return out

    def terms(self, y, yhat):
        """Vectorized per-observation distances on ``(..., 3)`` arrays."""
        if self.kind is MetricKind.D_LR:
            return dlr_terms(y, yhat, self.w_l, self.w_r)
        if self.kind is MetricKind.D_H:
            return dh_terms(y, yhat)
        if self.kind is MetricKind.D_2_HALF:
            return d2_half_terms(y, yhat)
        if _even_integer(self.p):
            return dpq_closed_terms(y, yhat, self.p, self.q)
        y, yhat = np.broadcast_arrays(np.asarray(y, float), np.asarray(yhat, float))
        flat_y = y.reshape(-1, 3)
        flat_f = yhat.reshape(-1, 3)
        out = np.array([_dpq_quad(a, b, self.p, self.q) for a, b in zip(flat_y, flat_f)])
        return out.reshape(y.shape[:-1])

    def reduce(self, terms, axis=-1):
        if self.aggregation is Aggregation.SUM:
            return np.sum(terms, axis=axis)
        return np.mean(terms, axis=axis)


@dataclass(frozen=True)
class GofValue:
    per_observation: tuple
    aggregate: float
    aggregation_rule: Aggregation

    def to_dict(self):
        return {
            "per_observation": list(self.per_observation),
            "aggregate": self.aggregate,
            "aggregation_rule": self.aggregation_rule.value,
        }


def parse_metric(text: str) -> GofMetric:
    """Parse ``dlr``, ``dlr:wl,wr``, ``dh``, ``d2q`` or ``dpq:p,q``."""
    name, _, params = text.strip().lower().partition(":")
    args = [float(v) for v in params.split(",")] if params else []
    if name == "dlr":
        if args and len(args) != 2:
            raise DomainError(f"dlr takes two weights, got {text!r}")
        return GofMetric.dlr(*args)
    if name == "dh" and not args:
        return GofMetric.dh()
    if name in ("d2q", "d2half") and not args:
        return GofMetric.d2_half()
    if name == "dpq":
        if len(args) != 2:
            raise DomainError(f"dpq needs p,q parameters, got {text!r}")
        return GofMetric.dpq(*args)
    raise DomainError(f"unknown metric {text!r}")


def _check_pq(p, q):
    if not p > 0:
        raise DomainError(f"p must be positive, got {p}")
    if not 0 <= q <= 1:
        raise DomainError(f"q must lie in [0, 1], got {q}")


def _even_integer(p):
    return float(p).is_integer() and int(p) % 2 == 0


def _split(y, yhat):
    y = np.asarray(y, dtype=float)
    yhat = np.asarray(yhat, dtype=float)
    d = yhat - y
    return d[..., 0], d[..., 1], d[..., 2]


def dh_terms(y, yhat):
    dl, dm, dr = _split(y, yhat)
    return np.abs(dm) + np.abs(dr) + np.abs(dl)


def dlr_terms(y, yhat, w_l=0.5, w_r=0.5):
    dl, dm, dr = _split(y, yhat)
    return (np.abs(dm) + np.abs(dm + w_r * dr) + np.abs(dm - w_l * dl)) / 3.0


def d2_half_terms(y, yhat):
    dl, dm, dr = _split(y, yhat)
    lower = dm - dl  # shift of the support's left end
    upper = dm + dr
    return (lower**2 + 2 * dm**2 + upper**2 + lower * dm + upper * dm) / 6.0


def _power_integral(c0, c1, p):
    # int_0^1 (c0 + c1 t)^p dt for integer p >= 0, by binomial expansion
    p = int(p)
    total = 0.0
    for j in range(p + 1):
        total = total + math.comb(p, j) * c0 ** (p - j) * c1**j / (j + 1)
    return total


def dpq_closed_terms(y, yhat, p, q):
    """Closed form of the D_PQ integrand for integer ``p``.

    With ``t = 1 - alpha`` the lower endpoint difference is ``dm - t dl`` and
    the upper one ``dm + t dr``; both are linear in ``t``.
    """
    dl, dm, dr = _split(y, yhat)
    return (1 - q) * _power_integral(dm, -dl, p) + q * _power_integral(dm, dr, p)


def _signed_power(d, p):
    if float(p).is_integer():
        return d ** int(p)
    # non-integer powers of negative numbers are not real
    return abs(d) ** p


def _dpq_quad(y, yhat, p, q):
    dl, dm, dr = np.asarray(yhat, float) - np.asarray(y, float)
    lower, _ = integrate.quad(lambda a: _signed_power(dm - (1 - a) * dl, p), 0, 1,
                              epsabs=QUAD_TOL, epsrel=QUAD_TOL)
    upper, _ = integrate.quad(lambda a: _signed_power(dm + (1 - a) * dr, p), 0, 1,
                              epsabs=QUAD_TOL, epsrel=QUAD_TOL)
    return (1 - q) * lower + q * upper


def d_pq_pair(y: TriangularFuzzyNumber, yhat: TriangularFuzzyNumber, p: float, q: float) -> float:
    """Per-observation D_PQ term.

    Even integer ``p`` uses the exact polynomial integral; anything else goes
    through adaptive quadrature.  Odd ``p`` keeps the sign of the endpoint
    difference, so the result is not a distance in that case.  Non-integer
    ``p`` uses the absolute difference.
    """
    _check_pq(p, q)
    a, b = np.array(y.as_tuple()), np.array(yhat.as_tuple())
    if _even_integer(p):
        return float(dpq_closed_terms(a, b, p, q))
    return float(_dpq_quad(a, b, p, q))


def d2_half_triangular(y: TriangularFuzzyNumber, yhat: TriangularFuzzyNumber) -> float:
    return float(d2_half_terms(y.as_tuple(), yhat.as_tuple()))


def d_h_pair(y: TriangularFuzzyNumber, yhat: TriangularFuzzyNumber) -> float:
    return float(dh_terms(y.as_tuple(), yhat.as_tuple()))


def d_lr_pair(y: TriangularFuzzyNumber, yhat: TriangularFuzzyNumber,
              w_l: float = 0.5, w_r: float = 0.5) -> float:
    if w_l <= 0 or w_r <= 0:
        raise DomainError(f"D_LR weights must be positive, got {w_l}, {w_r}")
    return float(dlr_terms(y.as_tuple(), yhat.as_tuple(), w_l, w_r))


def aggregate(metric: GofMetric, ys: Sequence[TriangularFuzzyNumber],
              yhats: Sequence[TriangularFuzzyNumber]) -> GofValue:
    """Score fitted responses against observations.

    Raises
    ------
    DomainError
        If the sequences differ in length or are empty.
    """
    if len(ys) != len(yhats):
        raise DomainError(f"length mismatch: {len(ys)} observations vs {len(yhats)} fits")
    if len(ys) == 0:
        raise DomainError("cannot aggregate over zero observations")
    terms = metric.terms(to_array(ys), to_array(yhats))
    value = metric.reduce(terms)
    return GofValue(tuple(float(t) for t in terms), float(value), metric.aggregation)
