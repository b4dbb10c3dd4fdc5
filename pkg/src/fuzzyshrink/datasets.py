"""Built-in example datasets and CSV ingestion.

The four built-in datasets carry their observed responses, the fitted and
shrunk response columns as originally published, and the published
coefficient vectors ("fixture models").  Values are stored at their printed
precision.

CSV layout
----------
* crisp input: any column name without a group suffix, e.g. ``x1``;
* fuzzy variable, full triple: ``<name>_l,<name>_m,<name>_r``;
* symmetric fuzzy variable: ``<name>_m,<name>_s``.

The response variable is called ``y``; an optional fitted column ``yhat``
is read back by :func:`parse_csv_with_fitted`.  Lines starting with ``#``
are comments, except ``# name: ...`` which names the dataset.
"""

from __future__ import annotations

import csv
import enum
import io
import math
import re
from dataclasses import dataclass, field

import numpy as np

from .errors import CsvParseError, DomainError
from .fuzzy import TriangularFuzzyNumber as TFN
from .regression import CrispInputDataset, FLRModel, FuzzyInputDataset, FuzzyInputModel


class DatasetId(enum.Enum):
    DATASET1 = "dataset1"
    DATASET2 = "dataset2"
    DATASET3 = "dataset3"
    DATASET4 = "dataset4"


@dataclass(frozen=True, eq=False)
class BuiltinDataset:
    id: DatasetId
    data: object
    published_fitted: tuple
    published_shrunk: tuple
    fixture_models: dict
    description: str = ""
    notes: tuple = field(default=())

    @property
    def name(self):
        return self.id.value


def _sym(rows):
    return tuple(TFN.symmetric(m, s) for m, s in rows)


# Nuclear power plant control room crew, cognitive response time.
_D1_X = [
    [2.00, 0.00, 15.25], [0.00, 5.00, 14.13], [1.13, 1.50, 14.13], [2.00, 1.25, 13.63],
    [2.19, 3.75, 14.75], [0.25, 3.50, 13.75], [0.75, 5.25, 15.25], [4.25, 2.00, 13.50],
]
_D1_Y = [(5.83, 3.56), (0.85, 0.52), (13.93, 8.50), (4.00, 2.44),
         (1.58, 0.96), (1.58, 0.96), (8.18, 4.99), (1.85, 1.13)]
_D1_FIT = [(6.97, 1.78), (0.85, 2.29), (4.05, 1.80), (3.35, 1.92),
           (2.46, 2.61), (1.72, 1.99), (2.06, 2.63), (1.85, 2.64)]
_D1_SHRUNK = [(6.96, 0.94), (0.83, 1.45), (4.04, 1.00), (3.35, 1.14),
              (2.47, 1.72), (1.70, 1.19), (2.05, 1.71), (1.89, 1.81)]
_M13A = [(-14.8998, 0.2500), (-0.2505, 0.2500), (-0.9558, 0.2216), (1.4670, 0.0837)]
_M13B = [(-14.8995, 0.2324), (-0.2329, 0.2324), (-0.99137, 0.2017), (1.4640, 0.0310)]

# Tanaka's single-predictor data.
_D2_X = [[1], [2], [3], [4], [5]]
_D2_Y = [(8.00, 1.80), (6.40, 2.20), (9.50, 2.60), (13.50, 2.60), (13.00, 2.40)]
_D2_FIT = [(6.72, 2.00), (8.41, 2.16), (10.09, 2.32), (11.78, 2.47), (13.47, 2.63)]
_D2_SHRUNK = [(6.65, 1.79), (8.27, 1.79), (9.90, 1.79), (11.53, 1.79), (13.16, 1.79)]
_M14A = [(5.0365, 1.8469), (1.6862, 0.1565)]
_M14B = [(5.0172, 1.7943), (1.6285, 0.000)]

# Cheese tasting: acetic acid, H2S, lactic acid; spreads are 15% of centers.
_D3_X = [
    [4.543, 3.135, 0.86], [5.159, 5.043, 1.53], [5.366, 5.438, 1.57], [5.759, 7.496, 1.81],
    [4.663, 3.807, 0.99], [5.697, 7.601, 1.09], [5.892, 8.726, 1.29], [6.078, 7.966, 1.78],
    [4.898, 3.85, 1.29], [5.242, 4.176, 1.58], [5.74, 6.142, 1.68], [6.446, 7.908, 1.9],
    [4.477, 2.996, 1.06], [5.236, 4.942, 1.3], [6.151, 6.752, 1.52],
]
_D3_Y = [(12.30, 1.845), (20.90, 3.135), (39.00, 5.850), (47.90, 7.185), (5.60, 0.840),
         (25.90, 3.885), (37.30, 5.595), (21.90, 3.285), (18.10, 2.715), (21.00, 3.150),
         (34.90, 5.235), (57.20, 8.580), (0.70, 0.105), (25.90, 3.885), (54.90, 8.235)]
_D3_FIT = [(6.89, 1.243), (22.34, 2.059), (27.74, 2.188), (34.62, 2.874), (9.02, 1.488),
           (30.40, 2.616), (33.73, 3.018), (43.09, 2.997), (17.04, 1.621), (27.59, 1.830),
           (37.62, 2.434), (55.04, 3.028), (5.79, 1.279), (24.39, 1.937), (48.19, 2.545)]
_D3_SHRUNK = [(7.49, 1.390), (23.32, 2.304), (28.83, 2.447), (36.30, 3.206), (9.80, 1.662),
              (32.36, 2.900), (35.99, 3.347), (44.92, 3.340), (17.72, 1.817), (28.26, 2.056),
              (38.90, 2.720), (56.80, 3.378), (6.284, 1.440), (25.42, 2.164), (49.71, 2.836)]
# (l, m, r) triples as printed
_M15A = [(0, -127.6929, 0), (0, 31.1153, 0), (0.57328, -2.9192, 0), (0.8013, 2.7644, 0)]
_M15B = [(0, -127.6854, 0), (0, 31.0843, 0), (0.6276, -2.5886, 0), (0.9438, 2.7644, 0)]

# Fuzzy input and output; the printed response column repeats the input column.
_D4_X = [(2.00, 0.50), (3.50, 0.50), (5.50, 1.00), (7.00, 0.50),
         (8.50, 0.50), (10.50, 1.00), (11.00, 0.50), (12.50, 0.50)]
_D4_Y = list(_D4_X)
_D4_FIT = [(4.68, 0.50), (5.51, 0.50), (6.61, 1.00), (7.43, 0.50),
           (8.26, 0.50), (9.36, 1.00), (9.63, 0.50), (10.46, 0.50)]
_D4_SHRUNK = [(4.52, 0.48), (5.23, 0.48), (6.18, 0.96), (6.90, 0.48),
              (7.61, 0.48), (8.56, 0.96), (8.80, 0.48), (9.51, 0.48)]
_M17A = FuzzyInputModel((3.58, 0.55), (0.00, 1.00))
_M17B = FuzzyInputModel((3.57, 0.48), (0.00, 0.96))

# shrinkage constants reported alongside each example, keyed by metric label
PUBLISHED_K = {
    DatasetId.DATASET1: {"dlr": 0.0044},
    DatasetId.DATASET2: {"dlr": 0.0972},
    DatasetId.DATASET3: {"dlr": 1.183, "d2q": 0.965, "dh": 1.524},
    DatasetId.DATASET4: {"dlr": 0.041, "d2q": 0.017, "dh": 0.062},
}

PUBLISHED_BOUNDARY = {
    DatasetId.DATASET1: {"dlr": 0.0308},
    DatasetId.DATASET2: {"dlr": 0.2138},
    DatasetId.DATASET3: {"dlr": 1.759, "d2q": 1.929, "dh": 4.335},
    DatasetId.DATASET4: {"dlr": 0.048, "d2q": 0.034, "dh": 0.092},
}

PUBLISHED_METRICS = {
    DatasetId.DATASET1: {"baseline": {"dlr": 20.1521}, "shrunk": {"dlr": 19.4929}},
    DatasetId.DATASET2: {"baseline": {"dlr": 6.06747}, "shrunk": {"dlr": 5.85522}},
    DatasetId.DATASET3: {"baseline": {"dlr": 89.9129, "d2q": 68.3101, "dh": 157.9474},
                         "shrunk": {"dlr": 88.0382, "d2q": 65.0767, "dh": 146.2433}},
    DatasetId.DATASET4: {"baseline": {"dlr": 6.9350, "d2q": 5.6933, "dh": 7.6550},
                         "shrunk": {"dlr": 5.6640, "d2q": 5.1435, "dh": 6.2759}},
}


def _build(id):
    if id is DatasetId.DATASET1:
        return BuiltinDataset(
            id, CrispInputDataset(_D1_X, _sym(_D1_Y), id.value, True),
            _sym(_D1_FIT), _sym(_D1_SHRUNK),
            {"13a": FLRModel.symmetric(_M13A), "13b": FLRModel.symmetric(_M13B)},
            "Control-room crew response time; crisp inputs, symmetric fuzzy output.",
            ("Re-predicting with 13a does not reproduce the published fitted column "
             "(e.g. row 2 center 1.05 vs 0.85); score the published columns instead.",
             "13b prints the x2 center as -0.99137; the shrinkage rule gives -0.9512."),
        )
    if id is DatasetId.DATASET2:
        return BuiltinDataset(
            id, CrispInputDataset(_D2_X, _sym(_D2_Y), id.value, True),
            _sym(_D2_FIT), _sym(_D2_SHRUNK),
            {"14a": FLRModel.symmetric(_M14A), "14b": FLRModel.symmetric(_M14B)},
            "Tanaka's data; one crisp input, symmetric fuzzy output.",
        )
    if id is DatasetId.DATASET3:
        return BuiltinDataset(
            id, CrispInputDataset(_D3_X, _sym(_D3_Y), id.value, True),
            _sym(_D3_FIT), _sym(_D3_SHRUNK),
            {"15a": FLRModel.from_array(_M15A), "15b": FLRModel.from_array(_M15B)},
            "Cheese tasting quality; spreads are 15% of the centers.",
            ("15a/15b carry a left spread only; the published columns show the "
             "average spread (l + r) / 2.",
             "15b is not reachable from 15a by shrinkage at any single k."),
        )
    if id is DatasetId.DATASET4:
        X = np.array([[[s, m, s]] for m, s in _D4_X])
        return BuiltinDataset(
            id, FuzzyInputDataset(X, _sym(_D4_Y), id.value, True),
            _sym(_D4_FIT), _sym(_D4_SHRUNK),
            {"17a": _M17A, "17b": _M17B},
            "Fuzzy input and output, one predictor.",
            ("The published response column duplicates the input column; the true "
             "responses are not recoverable and the published metric values cannot "
             "be re-derived.",),
        )
    raise DomainError(f"unknown dataset {id!r}")


def load_builtin(id) -> BuiltinDataset:
    """Return a built-in dataset by :class:`DatasetId` or name (``"dataset2"``)."""
    if not isinstance(id, DatasetId):
        try:
            id = DatasetId(str(id).lower())
        except ValueError:
            raise DomainError(f"unknown dataset {id!r}; choose from "
                              f"{', '.join(d.value for d in DatasetId)}") from None
    return _build(id)


def fifteen_percent_spreads(centers, fraction=0.15):
    """Symmetric fuzzy responses whose spread is ``fraction`` of each center."""
    return tuple(TFN.symmetric(m, fraction * abs(m)) for m in centers)


_SUFFIX = re.compile(r"^(?P<base>.+)_(?P<part>[lmrs])$")


@dataclass
class _Group:
    name: str
    cols: dict  # part letter -> column index


def _groups(header):
    groups, order = {}, []
    for j, col in enumerate(header):
        match = _SUFFIX.match(col)
        base, part = (match["base"], match["part"]) if match else (col, "crisp")
        if base not in groups:
            groups[base] = _Group(base, {})
            order.append(base)
        if part in groups[base].cols:
            raise CsvParseError(f"duplicate column {col!r}", column=col)
        groups[base].cols[part] = j
    for base in order:
        parts = set(groups[base].cols)
        if parts == {"crisp"} or parts == {"m", "s"} or parts == {"l", "m", "r"}:
            continue
        missing = ({"l", "m", "r"} - parts) if parts & {"l", "r"} else ({"m", "s"} - parts)
        if "crisp" in parts:
            raise CsvParseError(f"column {base!r} is both crisp and fuzzy", column=base)
        col = f"{base}_{sorted(missing)[0]}" if missing else base
        raise CsvParseError("missing column of fuzzy group", column=col)
    return [groups[b] for b in order]


def _cell(row, j, header, rownum):
    text = row[j].strip()
    try:
        value = float(text)
    except ValueError:
        raise CsvParseError(f"non-numeric cell {text!r}", rownum, header[j]) from None
    if not math.isfinite(value):
        raise CsvParseError(f"non-finite cell {text!r}", rownum, header[j])
    return value


def _read_fuzzy(row, group, header, rownum):
    c = group.cols
    if "crisp" in c:
        return TFN.crisp(_cell(row, c["crisp"], header, rownum))
    if "s" in c:
        m, s = _cell(row, c["m"], header, rownum), _cell(row, c["s"], header, rownum)
        if s < 0:
            raise CsvParseError("negative spread", rownum, header[c["s"]])
        return TFN.symmetric(m, s)
    l, m, r = (_cell(row, c[k], header, rownum) for k in "lmr")
    for k, v in (("l", l), ("r", r)):
        if v < 0:
            raise CsvParseError("negative spread", rownum, header[c[k]])
    return TFN(l, m, r)


def parse_csv_with_fitted(text: str, name: str = "csv", response: str = "y", fitted: str = "yhat"):
    """Parse CSV text into ``(dataset, fitted)``; ``fitted`` is None without a ``yhat`` group."""
    lines = text.splitlines()
    body = []
    for line in lines:
        stripped = line.strip()
        if stripped.startswith("#"):
            meta = re.match(r"#\s*name\s*:\s*(.+)$", stripped)
            if meta:
                name = meta.group(1).strip()
            continue
        if stripped:
            body.append(line)
    if not body:
        raise CsvParseError("missing header row")
    rows = list(csv.reader(body))
    header = [h.strip() for h in rows[0]]
    groups = _groups(header)
    by_name = {g.name: g for g in groups}
    if response not in by_name:
        raise CsvParseError(f"no response column group {response!r}", column=response)
    y_group = by_name[response]
    if "crisp" in y_group.cols:
        raise CsvParseError("response must be fuzzy (y_m,y_s or y_l,y_m,y_r)", column=response)
    fit_group = by_name.get(fitted)
    inputs = [g for g in groups if g.name not in (response, fitted)]
    fuzzy_input = any("crisp" not in g.cols for g in inputs)

    X, Y, F = [], [], []
    for i, row in enumerate(rows[1:], start=1):
        if len(row) != len(header):
            raise CsvParseError(f"ragged row: expected {len(header)} cells, got {len(row)}", i)
        Y.append(_read_fuzzy(row, y_group, header, i))
        if fit_group is not None:
            F.append(_read_fuzzy(row, fit_group, header, i))
        values = [_read_fuzzy(row, g, header, i) for g in inputs]
        if fuzzy_input:
            X.append([v.as_tuple() for v in values])
        else:
            X.append([v.m for v in values])

    symmetric = "s" in y_group.cols
    p = len(inputs)
    if fuzzy_input:
        symmetric = symmetric and all("crisp" in g.cols or "s" in g.cols for g in inputs)
        arr = np.array(X, dtype=float).reshape(len(Y), p, 3)
        data = FuzzyInputDataset(arr, Y, name, symmetric)
    else:
        arr = np.array(X, dtype=float).reshape(len(Y), p)
        data = CrispInputDataset(arr, Y, name, symmetric)
    return data, (tuple(F) if fit_group is not None else None)


def parse_csv(text: str, name: str = "csv"):
    """Parse CSV text into a crisp- or fuzzy-input dataset."""
    return parse_csv_with_fitted(text, name)[0]


def _num(v):
    return repr(float(v))


def _fuzzy_header(base, symmetric):
    return [f"{base}_m", f"{base}_s"] if symmetric else [f"{base}_l", f"{base}_m", f"{base}_r"]


def _fuzzy_cells(v, symmetric):
    return [_num(v.m), _num(v.l)] if symmetric else [_num(v.l), _num(v.m), _num(v.r)]


def write_csv(dataset, include_fitted=None) -> str:
    """Serialize a dataset (and optionally fitted responses) to CSV text.

    Numbers are written with ``repr`` so parsing the output restores every
    value exactly.
    """
    fuzzy_input = isinstance(dataset, FuzzyInputDataset)
    p = dataset.X.shape[1] if dataset.X.ndim > 1 else 0
    sym_y = dataset.symmetric and all(y.is_symmetric for y in dataset.Y)
    header = []
    if fuzzy_input:
        sym_x = bool(np.all(dataset.X[..., 0] == dataset.X[..., 2]))
        for j in range(p):
            header += _fuzzy_header(f"x{j + 1}", sym_x)
    else:
        header += [f"x{j + 1}" for j in range(p)]
    header += _fuzzy_header("y", sym_y)
    fitted = list(include_fitted) if include_fitted is not None else None
    if fitted is not None:
        if len(fitted) != dataset.n:
            raise DomainError(f"{len(fitted)} fitted values for {dataset.n} rows")
        sym_f = all(f.is_symmetric for f in fitted)
        header += _fuzzy_header("yhat", sym_f)

    buf = io.StringIO()
    buf.write(f"# name: {dataset.name}\n")
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    for i in range(dataset.n):
        if fuzzy_input:
            cells = []
            for j in range(p):
                l, m, r = dataset.X[i, j]
                cells += [_num(m), _num(l)] if sym_x else [_num(l), _num(m), _num(r)]
        else:
            cells = [_num(v) for v in dataset.X[i]]
        cells += _fuzzy_cells(dataset.Y[i], sym_y)
        if fitted is not None:
            cells += _fuzzy_cells(fitted[i], sym_f)
        writer.writerow(cells)
    return buf.getvalue()
