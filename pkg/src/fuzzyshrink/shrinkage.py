"""Stein-type shrinkage of fuzzy regression coefficients.

Every coefficient component ``v`` (each center, each left and right spread)
is shrunk on its own by the factor ``1 - k / v**2``.  Centers use the plain
rule; spreads use the positive-part rule ``max(0, (1 - k / v**2) v)`` so they
never turn negative.

Besides the transform itself, this module searches for the shrinkage
constant ``k`` that minimizes a goodness-of-fit measure and for the largest
``k`` that still beats the unshrunk model (the optimal boundary).
"""

from __future__ import annotations

import enum
import logging
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .errors import DomainError
from .metrics import GofMetric
from .regression import (
    FLRModel,
    FuzzyInputDataset,
    FuzzyInputModel,
    predict_crisp_array,
    predict_fuzzy_array,
)

log = logging.getLogger(__name__)

DEFAULT_RESOLUTION = 1e-4
MAX_GRID_POINTS = 200_000
CHUNK = 4096
INVPHI = (math.sqrt(5) - 1) / 2


class Rule(enum.Enum):
    STEIN = "stein"
    POSITIVE_STEIN = "positive_stein"
    NONE = "none"


@dataclass(frozen=True)
class ShrinkagePolicy:
    """Which rule applies to centers and to spreads.

    ``shrink_intercept=False`` leaves the intercept coefficient untouched.
    """

    center_rule: Rule = Rule.STEIN
    spread_rule: Rule = Rule.POSITIVE_STEIN
    shrink_intercept: bool = True

    def __post_init__(self):
        if self.spread_rule is Rule.STEIN:
            raise DomainError("spreads cannot use the plain Stein rule; they could turn negative")

    def to_dict(self):
        return {"center_rule": self.center_rule.value, "spread_rule": self.spread_rule.value,
                "shrink_intercept": self.shrink_intercept}


DEFAULT_POLICY = ShrinkagePolicy()


@dataclass(frozen=True)
class ShrinkageReport:
    k_star: float
    metric_baseline: float
    metric_shrunk: float
    boundary_sup: float
    metric: GofMetric
    grid_resolution: float
    k_max: float = math.nan

    @property
    def improved(self):
        return self.metric_shrunk < self.metric_baseline

    def to_dict(self):
        return {
            "k_star": self.k_star,
            "metric": self.metric.to_dict(),
            "metric_baseline": self.metric_baseline,
            "metric_shrunk": self.metric_shrunk,
            "boundary_sup": self.boundary_sup,
            "improved": self.improved,
            "k_max": self.k_max,
            "grid_resolution": self.grid_resolution,
        }


def _check_k(k):
    if not k > 0:
        raise DomainError(f"shrinkage constant must be positive, got {k}")


def shrink_value(v: float, k: float) -> float:
    """Stein shrinkage ``(1 - k / v**2) v`` of one estimate; ``v = 0`` maps to 0."""
    _check_k(k)
    if v == 0:
        return 0.0
    # v - k/v equals (1 - k/v**2) v without underflowing v**2
    return v - k / v


def shrink_positive(v: float, k: float) -> float:
    """Positive-part Stein shrinkage of a nonnegative estimate."""
    _check_k(k)
    if v < 0:
        raise DomainError(f"positive-rule shrinkage needs v >= 0, got {v}")
    return max(0.0, shrink_value(v, k))


def _apply(rule, v, k):
    """Vectorized rule over arrays ``v`` (any shape) and ``k`` (broadcast)."""
    v = np.asarray(v, dtype=float)
    if rule is Rule.NONE:
        return np.broadcast_to(v, np.broadcast(v, k).shape).copy()
    safe = np.where(v == 0, 1.0, v)
    out = np.where(v == 0, 0.0, v - k / safe)
    if rule is Rule.POSITIVE_STEIN:
        out = np.maximum(out, 0.0)
    return out


def _shrunk_coefs(model, ks, policy):
    """Shrunk coefficient arrays for a vector of ``k`` values.

    Returns ``(K, p + 1, 3)`` for a crisp-input model, or a pair of
    ``(K, p + 1)`` arrays for a fuzzy-input model.
    """
    ks = np.asarray(ks, dtype=float)
    if isinstance(model, FuzzyInputModel):
        a = np.asarray(model.center_coeffs)
        c = np.asarray(model.spread_coeffs)
        kk = ks[:, None]
        a_s = _apply(policy.center_rule, a[None, :], kk)
        c_s = _apply(policy.spread_rule, c[None, :], kk)
        if not policy.shrink_intercept:
            a_s[:, 0], c_s[:, 0] = a[0], c[0]
        return a_s, c_s
    coefs = model.to_array()
    kk = ks[:, None, None]
    out = np.empty((len(ks),) + coefs.shape)
    out[..., 1] = _apply(policy.center_rule, coefs[None, :, 1], kk[..., 0])
    out[..., 0] = _apply(policy.spread_rule, coefs[None, :, 0], kk[..., 0])
    out[..., 2] = _apply(policy.spread_rule, coefs[None, :, 2], kk[..., 0])
    if not policy.shrink_intercept:
        out[:, 0, :] = coefs[0]
    return out


def shrink_model(model, k: float, policy: ShrinkagePolicy = DEFAULT_POLICY):
    """Shrink every coefficient component of ``model`` with constant ``k``."""
    _check_k(k)
    if isinstance(model, FuzzyInputModel):
        if any(v < 0 for v in model.spread_coeffs):
            raise DomainError("spread coefficients must be nonnegative")
        a, c = _shrunk_coefs(model, [k], policy)
        return FuzzyInputModel(tuple(a[0]), tuple(c[0]))
    return FLRModel.from_array(_shrunk_coefs(model, [k], policy)[0])


def _objective(model, data, metric, policy):
    """Vectorized ``k -> aggregate metric`` for the k-shrunk model.

    ``k = 0`` evaluates the unshrunk model.
    """
    if data.n == 0:
        raise DomainError("cannot evaluate shrinkage on an empty dataset")
    y = data.Y_array()
    fuzzy_input = isinstance(model, FuzzyInputModel)
    if fuzzy_input != isinstance(data, FuzzyInputDataset):
        raise DomainError("model and dataset input types do not match")

    def evaluate(ks):
        ks = np.atleast_1d(np.asarray(ks, dtype=float))
        out = np.empty(len(ks))
        for start in range(0, len(ks), CHUNK):
            block = ks[start:start + CHUNK]
            zero = block == 0
            shrunk = _shrunk_coefs(model, np.where(zero, 1.0, block), policy)
            if fuzzy_input:
                a, c = shrunk
                a[zero], c[zero] = model.center_coeffs, model.spread_coeffs
                preds = predict_fuzzy_array(a, c, data.X)
            else:
                shrunk[zero] = model.to_array()
                preds = predict_crisp_array(shrunk, data.X)
            out[start:start + CHUNK] = metric.reduce(metric.terms(y, preds))
        return out

    return evaluate


def default_k_max(model, policy=DEFAULT_POLICY):
    """Largest squared nonzero component; past it every component is flipped or zeroed."""
    start = 0 if policy.shrink_intercept else 1
    if isinstance(model, FuzzyInputModel):
        values = list(model.center_coeffs[start:]) + list(model.spread_coeffs[start:])
    else:
        values = model.to_array()[start:].ravel().tolist()
    nonzero = [v * v for v in values if v != 0]
    if not nonzero:
        raise DomainError("model has no nonzero component to shrink")
    return max(nonzero)


def _grid(k_max, resolution):
    if not k_max > 0:
        raise DomainError(f"k_max must be positive, got {k_max}")
    if resolution is None:
        resolution = max(DEFAULT_RESOLUTION, k_max / MAX_GRID_POINTS)
    if not resolution > 0:
        raise DomainError(f"resolution must be positive, got {resolution}")
    count = max(1, int(math.floor(k_max / resolution + 1e-9)))
    ks = resolution * np.arange(1, count + 1)
    if ks[-1] < k_max - 1e-12 * k_max:
        ks = np.append(ks, k_max)
    return ks, resolution


def _eval_grid(f, ks, threads):
    if threads <= 1 or len(ks) <= CHUNK:
        return f(ks)
    blocks = [ks[i:i + CHUNK] for i in range(0, len(ks), CHUNK)]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        return np.concatenate(list(pool.map(f, blocks)))


def golden_section(f, lo, hi, tol, max_iter=200):
    """Minimize a scalar function on ``[lo, hi]`` by golden-section search."""
    a, b = lo, hi
    c = b - INVPHI * (b - a)
    d = a + INVPHI * (b - a)
    fc, fd = f(c), f(d)
    for _ in range(max_iter):
        if b - a <= tol:
            break
        if fc <= fd:
            b, d, fd = d, c, fc
            c = b - INVPHI * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + INVPHI * (b - a)
            fd = f(d)
    return (c, fc) if fc <= fd else (d, fd)


def _local_minima(values, count):
    """Indices of the ``count`` lowest local minima of a sampled curve."""
    v = values
    left = np.concatenate([[np.inf], v[:-1]])
    right = np.concatenate([v[1:], [np.inf]])
    idx = np.flatnonzero((v <= left) & (v <= right))
    order = np.lexsort((idx, v[idx]))
    return idx[order[:count]]


def _resolve(model, data, metric, k_max, resolution, policy):
    if len(data.Y) == 0:
        raise DomainError("cannot search shrinkage on an empty dataset")
    f = _objective(model, data, metric, policy)
    if k_max is None:
        k_max = default_k_max(model, policy)
    ks, resolution = _grid(k_max, resolution)
    return f, ks, k_max, resolution


def _search_min(f, ks, resolution, values, refine=3):
    best = int(np.argmin(values))
    k_star, f_star = ks[best], values[best]
    scalar = lambda k: float(f([k])[0])
    for i in _local_minima(values, refine):
        lo = ks[i - 1] if i > 0 else 0.0
        hi = ks[i + 1] if i + 1 < len(ks) else ks[i]
        k, fk = golden_section(scalar, lo, hi, resolution / 100)
        if fk < f_star or (fk == f_star and k < k_star):
            k_star, f_star = k, fk
    return float(k_star), float(f_star)


def _search_boundary(f, ks, resolution, baseline, values, k_star=None):
    better = values < baseline
    if better.any():
        last = int(np.flatnonzero(better)[-1])
        if last + 1 == len(ks):
            return float(ks[last])
        lo, hi = ks[last], ks[last + 1]
    elif k_star is not None and f([k_star])[0] < baseline:
        # the whole improving region sits between two grid points
        lo = k_star
        hi = ks[np.searchsorted(ks, k_star, side="right")]
    else:
        return 0.0
    tol = resolution / 100
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if f([mid])[0] < baseline:
            lo = mid
        else:
            hi = mid
    return float(lo)


def optimize_k(model, data, metric: GofMetric, k_max=None, resolution=None,
               policy: ShrinkagePolicy = DEFAULT_POLICY, threads: int = 1) -> ShrinkageReport:
    """Find the shrinkage constant minimizing ``metric`` on ``data``.

    Scans a uniform grid over ``(0, k_max]``, then refines the lowest few
    grid minima by golden-section search to ``resolution / 100``.  The
    returned report also carries the optimal boundary.

    Parameters
    ----------
    k_max : float, optional
        Upper end of the scan.  Defaults to :func:`default_k_max`.
    resolution : float, optional
        Grid spacing.  Defaults to ``1e-4``, coarsened so the grid never
        exceeds 200 000 points.
    """
    f, ks, k_max, resolution = _resolve(model, data, metric, k_max, resolution, policy)
    baseline = float(f([0.0])[0])
    values = _eval_grid(f, ks, threads)
    k_star, f_star = _search_min(f, ks, resolution, values)
    boundary = _search_boundary(f, ks, resolution, baseline, values, k_star)
    log.info("optimize_k: %s k*=%.6g (%.6g -> %.6g), boundary %.6g",
             metric.label, k_star, baseline, f_star, boundary)
    return ShrinkageReport(k_star, baseline, f_star, boundary, metric, resolution, float(k_max))


def optimal_boundary(model, data, metric: GofMetric, k_max=None, resolution=None,
                     policy: ShrinkagePolicy = DEFAULT_POLICY, threads: int = 1) -> float:
    """Largest ``k <= k_max`` whose shrunk model still beats the unshrunk one.

    Returns 0.0 when no grid point improves on the baseline.
    """
    f, ks, k_max, resolution = _resolve(model, data, metric, k_max, resolution, policy)
    baseline = float(f([0.0])[0])
    values = _eval_grid(f, ks, threads)
    k_star, _ = _search_min(f, ks, resolution, values)
    boundary = _search_boundary(f, ks, resolution, baseline, values, k_star)
    if boundary == 0.0:
        log.warning("no shrinkage constant in (0, %g] improves %s", k_max, metric.label)
    return boundary


def metric_curve(model, data, metric: GofMetric, ks, policy: ShrinkagePolicy = DEFAULT_POLICY):
    """Aggregate metric of the shrunk model at each ``k`` (``k = 0`` is the baseline)."""
    return _objective(model, data, metric, policy)(ks)
