"""Stein-type shrinkage for fuzzy linear regression."""

from .errors import (
    CsvParseError,
    DegenerateDataError,
    DomainError,
    FuzzyShrinkError,
    SingularDesignError,
)
from .fuzzy import TFN, Interval, TriangularFuzzyNumber, add, alpha_cut, membership, scalar_mul
from .metrics import (
    GofMetric,
    GofValue,
    aggregate,
    d2_half_triangular,
    d_h_pair,
    d_lr_pair,
    d_pq_pair,
    parse_metric,
)
from .regression import (
    CrispInputDataset,
    FLRModel,
    FuzzyInputDataset,
    FuzzyInputModel,
    fit_bootstrap,
    fit_fuzzy_input,
    fit_least_absolutes,
    fit_least_squares,
    predict,
    predict_crisp,
    predict_fuzzy,
)
from .shrinkage import (
    Rule,
    ShrinkagePolicy,
    ShrinkageReport,
    optimal_boundary,
    optimize_k,
    shrink_model,
    shrink_positive,
    shrink_value,
)
from .datasets import DatasetId, load_builtin, parse_csv, write_csv

__version__ = "0.1.0"
