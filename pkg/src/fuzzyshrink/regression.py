"""Fuzzy linear regression models and baseline estimators.

Two model forms are supported:

* :class:`FLRModel` -- crisp inputs, fuzzy coefficients
  ``Y = A0 + A1 x1 + ... + Ap xp`` evaluated with fuzzy addition and crisp
  scalar multiplication.
* :class:`FuzzyInputModel` -- fuzzy inputs and outputs; centers are mapped by
  ``a`` and spreads by ``c`` (``s_Y = c0 + sum c_j s_Xj``, left and right
  sides independently).

Estimators fit centers without constraints and spreads with nonnegative
coefficients, so every fitted model yields valid fuzzy predictions.
"""

from __future__ import annotations

import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np
from scipy.optimize import linprog, nnls

from .errors import DegenerateDataError, DomainError, SingularDesignError
from .fuzzy import TriangularFuzzyNumber, from_array, to_array

log = logging.getLogger(__name__)

MAX_REDRAWS = 100


@dataclass(frozen=True)
class FLRModel:
    """Crisp-input fuzzy regression model; ``coefficients[0]`` is the intercept."""

    coefficients: tuple

    def __post_init__(self):
        object.__setattr__(self, "coefficients", tuple(self.coefficients))
        if not self.coefficients:
            raise DomainError("a model needs at least an intercept")

    @classmethod
    def from_array(cls, arr):
        return cls(tuple(from_array(arr)))

    @classmethod
    def symmetric(cls, pairs):
        """Build from ``(center, spread)`` pairs."""
        return cls(tuple(TriangularFuzzyNumber.symmetric(m, s) for m, s in pairs))

    @property
    def n_inputs(self):
        return len(self.coefficients) - 1

    def to_array(self):
        return to_array(self.coefficients)

    def predict(self, X):
        X = np.atleast_2d(np.asarray(X, dtype=float))
        _check_dim(X.shape[1], self.n_inputs)
        return from_array(predict_crisp_array(self.to_array(), X))

    def to_dict(self):
        return {"type": "crisp_input",
                "coefficients": [list(c.as_tuple()) for c in self.coefficients]}


@dataclass(frozen=True)
class FuzzyInputModel:
    center_coeffs: tuple
    spread_coeffs: tuple

    def __post_init__(self):
        a = tuple(float(v) for v in self.center_coeffs)
        c = tuple(float(v) for v in self.spread_coeffs)
        if len(a) != len(c) or not a:
            raise DomainError("center and spread coefficient vectors must match in length")
        if any(v < 0 for v in c):
            raise DomainError(f"spread coefficients must be nonnegative, got {c}")
        object.__setattr__(self, "center_coeffs", a)
        object.__setattr__(self, "spread_coeffs", c)

    @property
    def n_inputs(self):
        return len(self.center_coeffs) - 1

    def predict(self, X):
        X = np.asarray(X, dtype=float)
        if X.ndim == 2:
            X = X[None]
        _check_dim(X.shape[1], self.n_inputs)
        return from_array(predict_fuzzy_array(
            np.array(self.center_coeffs), np.array(self.spread_coeffs), X))

    def to_dict(self):
        return {"type": "fuzzy_input", "center_coeffs": list(self.center_coeffs),
                "spread_coeffs": list(self.spread_coeffs)}


@dataclass(frozen=True, eq=False)
class CrispInputDataset:
    """Crisp ``(n, p)`` inputs with fuzzy responses."""

    X: np.ndarray
    Y: tuple
    name: str = "data"
    symmetric: bool = field(default=None)

    def __post_init__(self):
        X = np.asarray(self.X, dtype=float)
        if X.ndim == 1:
            X = X[:, None]
        Y = tuple(self.Y)
        if X.shape[0] != len(Y):
            raise DomainError(f"{X.shape[0]} input rows but {len(Y)} responses")
        if not np.all(np.isfinite(X)):
            raise DomainError("inputs must be finite")
        object.__setattr__(self, "X", X)
        object.__setattr__(self, "Y", Y)
        if self.symmetric is None:
            object.__setattr__(self, "symmetric", all(y.is_symmetric for y in Y))

    @property
    def n(self):
        return len(self.Y)

    @property
    def p(self):
        return self.X.shape[1]

    def Y_array(self):
        return to_array(self.Y)

    def subset(self, rows):
        return CrispInputDataset(self.X[rows], [self.Y[i] for i in rows], self.name, self.symmetric)


@dataclass(frozen=True, eq=False)
class FuzzyInputDataset:
    """Fuzzy inputs stored as an ``(n, p, 3)`` array, fuzzy responses."""

    X: np.ndarray
    Y: tuple
    name: str = "data"
    symmetric: bool = field(default=None)

    def __post_init__(self):
        X = self.X
        if not isinstance(X, np.ndarray):
            X = np.array([[v.as_tuple() if isinstance(v, TriangularFuzzyNumber) else v
                           for v in row] for row in X], dtype=float)
        X = np.asarray(X, dtype=float)
        if X.ndim == 2 and X.shape[-1] == 3 and len(X) == len(self.Y):
            X = X[:, None, :]
        Y = tuple(self.Y)
        if X.ndim != 3 or X.shape[2] != 3:
            raise DomainError(f"fuzzy inputs must have shape (n, p, 3), got {X.shape}")
        if X.shape[0] != len(Y):
            raise DomainError(f"{X.shape[0]} input rows but {len(Y)} responses")
        if np.any(X[..., [0, 2]] < 0):
            raise DomainError("input spreads must be nonnegative")
        object.__setattr__(self, "X", X)
        object.__setattr__(self, "Y", Y)
        if self.symmetric is None:
            sym = all(y.is_symmetric for y in Y) and bool(np.all(X[..., 0] == X[..., 2]))
            object.__setattr__(self, "symmetric", sym)

    @property
    def n(self):
        return len(self.Y)

    @property
    def p(self):
        return self.X.shape[1]

    def Y_array(self):
        return to_array(self.Y)

    def subset(self, rows):
        return FuzzyInputDataset(self.X[rows], [self.Y[i] for i in rows], self.name, self.symmetric)


def _check_dim(got, expected):
    if got != expected:
        raise DomainError(f"model expects {expected} inputs, got {got}")


def predict_crisp_array(coefs, X):
    """Vectorized crisp-input prediction.

    ``coefs`` has shape ``(..., p + 1, 3)`` and ``X`` shape ``(n, p)``; the
    result has shape ``(..., n, 3)``.  Negative inputs swap the left and
    right spreads of their coefficient.
    """
    coefs = np.asarray(coefs, dtype=float)
    X = np.asarray(X, dtype=float)
    design = np.column_stack([np.ones(len(X)), X])
    pos = np.clip(design, 0, None)
    neg = np.clip(-design, 0, None)
    l, m, r = coefs[..., 0], coefs[..., 1], coefs[..., 2]
    center = m @ design.T
    left = l @ pos.T + r @ neg.T
    right = r @ pos.T + l @ neg.T
    return np.stack([left, center, right], axis=-1)


def predict_fuzzy_array(a, c, X):
    """Vectorized fuzzy-input prediction.

    ``a`` and ``c`` have shape ``(..., p + 1)`` and ``X`` shape ``(n, p, 3)``.
    """
    a = np.asarray(a, dtype=float)
    c = np.asarray(c, dtype=float)
    X = np.asarray(X, dtype=float)
    center = a[..., :1] + a[..., 1:] @ X[..., 1].T
    left = c[..., :1] + c[..., 1:] @ X[..., 0].T
    right = c[..., :1] + c[..., 1:] @ X[..., 2].T
    return np.stack([left, center, right], axis=-1)


def predict_crisp(model: FLRModel, x: Sequence[float]) -> TriangularFuzzyNumber:
    x = np.asarray(x, dtype=float).ravel()
    _check_dim(len(x), model.n_inputs)
    return from_array(predict_crisp_array(model.to_array(), x[None, :]))[0]


def predict_fuzzy(model: FuzzyInputModel, x: Sequence[TriangularFuzzyNumber]) -> TriangularFuzzyNumber:
    _check_dim(len(x), model.n_inputs)
    arr = to_array(list(x))[None]
    if np.any(arr[..., [0, 2]] < 0):
        raise DomainError("input spreads must be nonnegative")
    return from_array(predict_fuzzy_array(model.center_coeffs, model.spread_coeffs, arr))[0]


def predict(model, data):
    """Fitted responses of ``model`` on every row of ``data``."""
    if isinstance(model, FuzzyInputModel):
        if not isinstance(data, FuzzyInputDataset):
            raise DomainError("a fuzzy-input model needs a fuzzy-input dataset")
        return model.predict(data.X)
    if isinstance(data, FuzzyInputDataset):
        raise DomainError("a crisp-input model needs a crisp-input dataset")
    return model.predict(data.X)


def _design(X):
    return np.column_stack([np.ones(len(X)), np.asarray(X, dtype=float)])


def _require_full_rank(D, what="design matrix"):
    n, k = D.shape
    if n < k:
        raise SingularDesignError(f"{what} has {n} rows for {k} coefficients")
    if np.linalg.matrix_rank(D) < k:
        raise SingularDesignError(f"{what} is rank deficient")


def _nnls(D, y):
    coef, _ = nnls(D, y, maxiter=50 * D.shape[1] + 100)
    return coef


def _fit_spreads(D, Y, symmetric, solve):
    """Nonnegative left/right spread coefficients from observed spreads."""
    if symmetric:
        s = solve(np.abs(D), Y[:, 0])
        return s, s
    pos = np.where(D >= 0, D, 0.0)
    neg = np.where(D < 0, -D, 0.0)
    A = np.block([[pos, neg], [neg, pos]])
    sol = solve(A, np.concatenate([Y[:, 0], Y[:, 2]]))
    k = D.shape[1]
    return sol[:k], sol[k:]


def fit_least_squares(data: CrispInputDataset) -> FLRModel:
    """Least-squares fit: OLS centers, nonnegative least-squares spreads.

    Spreads are fitted jointly on ``(1, |x|)``: a negative input sends a
    coefficient's left spread to the response's right side and vice versa.
    Symmetric responses get a single shared spread fit.
    """
    D = _design(data.X)
    _require_full_rank(D)
    Y = data.Y_array()
    centers, *_ = np.linalg.lstsq(D, Y[:, 1], rcond=None)
    left, right = _fit_spreads(D, Y, data.symmetric, _nnls)
    return FLRModel.from_array(np.column_stack([left, centers, right]))


def _lad(D, y, nonneg=False):
    # min sum(u+ + u-)  s.t.  D b + u+ - u- = y
    n, k = D.shape
    cost = np.concatenate([np.zeros(k), np.ones(2 * n)])
    A_eq = np.hstack([D, np.eye(n), -np.eye(n)])
    coef_bounds = (0, None) if nonneg else (None, None)
    bounds = [coef_bounds] * k + [(0, None)] * (2 * n)
    res = linprog(cost, A_eq=A_eq, b_eq=y, bounds=bounds, method="highs-ds")
    if res.status == 3:
        raise SingularDesignError("least-absolutes problem is unbounded")
    if res.status != 0:
        raise RuntimeError(f"least-absolutes LP failed: {res.message}")
    return res.x[:k]


def fit_least_absolutes(data: CrispInputDataset) -> FLRModel:
    """Least-absolute-deviations fit solved as a linear program."""
    D = _design(data.X)
    _require_full_rank(D)
    Y = data.Y_array()
    centers = _lad(D, Y[:, 1])
    # the LP can land a hair below zero
    left, right = _fit_spreads(D, Y, data.symmetric,
                               lambda A, b: np.clip(_lad(A, b, nonneg=True), 0, None))
    return FLRModel.from_array(np.column_stack([left, centers, right]))


def replicate_rng(seed: int, replicate: int) -> np.random.Generator:
    """Independent random stream for one bootstrap replicate."""
    return np.random.default_rng([int(seed), int(replicate)])


def _bootstrap_one(data, seed, replicate):
    rng = replicate_rng(seed, replicate)
    D = _design(data.X)
    for _ in range(MAX_REDRAWS):
        rows = rng.integers(0, data.n, size=data.n)
        if np.linalg.matrix_rank(D[rows]) == D.shape[1]:
            return fit_least_squares(data.subset(rows)).to_array()
    raise DegenerateDataError(
        f"{MAX_REDRAWS} consecutive rank-deficient resamples in replicate {replicate}")


def fit_bootstrap(data: CrispInputDataset, replicates: int = 1000, seed: int = 0,
                  threads: int = 1) -> FLRModel:
    """Average of least-squares fits over row resamples drawn with replacement.

    Each replicate draws from its own stream (see :func:`replicate_rng`), so the
    result depends only on ``seed`` and not on ``threads``.
    """
    if replicates < 1:
        raise DomainError(f"replicates must be >= 1, got {replicates}")
    _require_full_rank(_design(data.X))
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            fits = list(pool.map(lambda i: _bootstrap_one(data, seed, i), range(replicates)))
    else:
        fits = [_bootstrap_one(data, seed, i) for i in range(replicates)]
    total = np.zeros_like(fits[0])
    for f in fits:
        total += f
    mean = total / replicates
    mean[:, [0, 2]] = np.clip(mean[:, [0, 2]], 0, None)
    log.debug("bootstrap: %d replicates, seed %d", replicates, seed)
    return FLRModel.from_array(mean)


def fit_fuzzy_input(data: FuzzyInputDataset) -> FuzzyInputModel:
    """Centers by least squares on input centers; one nonnegative spread map.

    The spread map is fitted jointly on left spreads (against input left
    spreads) and right spreads (against input right spreads).
    """
    Y = data.Y_array()
    Dc = _design(data.X[..., 1])
    _require_full_rank(Dc, "center design")
    a, *_ = np.linalg.lstsq(Dc, Y[:, 1], rcond=None)
    Dl, Dr = _design(data.X[..., 0]), _design(data.X[..., 2])
    c = _nnls(np.vstack([Dl, Dr]), np.concatenate([Y[:, 0], Y[:, 2]]))
    return FuzzyInputModel(tuple(a), tuple(c))


ESTIMATORS = {
    "ls": fit_least_squares,
    "lad": fit_least_absolutes,
    "bootstrap": fit_bootstrap,
    "fuzzy-input": fit_fuzzy_input,
}
