"""Command-line driver: ``fuzzyshrink {fit,shrink,sweep,evaluate,demo}``.

Every command builds a JSON-serializable report first; the table and CSV
outputs are rendered from that report only.

Exit codes: 0 success, 2 usage error, 3 data or parse error, 4 numerical
failure.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import logging
import os
import sys

import numpy as np

from . import __version__
from .datasets import (
    PUBLISHED_BOUNDARY,
    PUBLISHED_K,
    PUBLISHED_METRICS,
    DatasetId,
    load_builtin,
    parse_csv_with_fitted,
    write_csv,
)
from .errors import (
    CsvParseError,
    DegenerateDataError,
    DomainError,
    SingularDesignError,
)
from .fuzzy import TriangularFuzzyNumber, format_tfn, to_array
from .metrics import GofMetric, aggregate, parse_metric
from .regression import (
    ESTIMATORS,
    FuzzyInputDataset,
    fit_bootstrap,
    predict,
)
from .shrinkage import ShrinkagePolicy, optimize_k, shrink_model

SCHEMA_VERSION = "1.0"
EXIT_OK, EXIT_USAGE, EXIT_DATA, EXIT_NUMERIC = 0, 2, 3, 4

log = logging.getLogger("fuzzyshrink")


class UsageError(Exception):
    pass


def _configure_logging():
    level = os.environ.get("FUZZYSHRINK_LOG", "WARNING").upper()
    logging.basicConfig(level=getattr(logging, level, logging.WARNING),
                        format="%(levelname)s %(name)s: %(message)s", stream=sys.stderr)


def build_parser():
    parser = argparse.ArgumentParser(prog="fuzzyshrink",
                                     description="Stein-type shrinkage for fuzzy linear regression.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    common = argparse.ArgumentParser(add_help=False)
    src = common.add_mutually_exclusive_group()
    src.add_argument("--builtin", help="built-in dataset: dataset1..dataset4")
    src.add_argument("--csv", help="path to a CSV dataset")
    common.add_argument("--estimator", choices=sorted(ESTIMATORS), default=None,
                        help="baseline estimator (default: ls, or fuzzy-input for fuzzy inputs)")
    common.add_argument("--fixture", help="published model (e.g. 14a) or column "
                        "(e.g. 13a-published-fitted, 13b-published-shrunk)")
    common.add_argument("--metric", action="append",
                        help="dlr, dlr:wl,wr, dh, d2q or dpq:p,q (repeatable; default dlr)")
    common.add_argument("--k-max", type=float, default=None)
    common.add_argument("--resolution", type=float, default=None)
    common.add_argument("--replicates", type=int, default=1000)
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--threads", type=int, default=1)
    common.add_argument("--keep-intercept", action="store_true",
                        help="do not shrink the intercept coefficient")
    common.add_argument("--output", choices=["table", "json", "csv"], default="table")

    sub.add_parser("fit", parents=[common], help="fit a baseline model and score it")
    p = sub.add_parser("shrink", parents=[common], help="shrink a model with a given k")
    p.add_argument("--k", type=float, required=True)
    sub.add_parser("sweep", parents=[common], help="search the optimal k and its boundary")
    sub.add_parser("evaluate", parents=[common], help="score fitted values or a fixture model")
    p = sub.add_parser("demo", parents=[common], help="reproduce one of the four worked examples")
    p.add_argument("example", type=int, choices=[1, 2, 3, 4])
    return parser


def _config_echo(args):
    keys = ["command", "builtin", "csv", "estimator", "fixture", "metric", "k", "k_max",
            "resolution", "replicates", "seed", "keep_intercept", "output", "example"]
    return {k: getattr(args, k) for k in keys if hasattr(args, k)}


def _load(args):
    if args.builtin:
        builtin = load_builtin(args.builtin)
        return builtin, builtin.data, None
    if args.csv:
        try:
            with open(args.csv, encoding="utf-8") as fh:
                text = fh.read()
        except OSError as exc:
            raise DomainError(f"cannot read {args.csv}: {exc}") from None
        name = os.path.splitext(os.path.basename(args.csv))[0]
        data, fitted = parse_csv_with_fitted(text, name)
        return None, data, fitted
    raise UsageError("one of --builtin or --csv is required")


def _metrics(args):
    return [parse_metric(m) for m in (args.metric or ["dlr"])]


def _model_or_column(args, builtin, data):
    """Resolve ``--fixture``/``--estimator`` into ``(model, fitted, source)``."""
    if args.fixture:
        if builtin is None:
            raise UsageError("--fixture needs --builtin")
        name = args.fixture.lower()
        for suffix, column in (("-published-fitted", builtin.published_fitted),
                               ("-published-shrunk", builtin.published_shrunk)):
            if name.endswith(suffix) or name == suffix[1:]:
                return None, list(column), f"fixture:{name}"
        if name not in builtin.fixture_models:
            raise UsageError(f"unknown fixture {args.fixture!r}; available: "
                             f"{', '.join(sorted(builtin.fixture_models))}")
        model = builtin.fixture_models[name]
        return model, predict(model, data), f"fixture:{name}"
    estimator = args.estimator or ("fuzzy-input" if isinstance(data, FuzzyInputDataset) else "ls")
    if (estimator == "fuzzy-input") != isinstance(data, FuzzyInputDataset):
        raise UsageError(f"estimator {estimator!r} does not match the dataset's input type")
    if estimator == "bootstrap":
        model = fit_bootstrap(data, args.replicates, args.seed, threads=args.threads)
    else:
        model = ESTIMATORS[estimator](data)
    return model, predict(model, data), f"estimator:{estimator}"


def _gof(metrics, data, fitted):
    return {m.label: aggregate(m, data.Y, fitted).to_dict() for m in metrics}


def _fitted(values):
    return [list(v.as_tuple()) for v in values]


def _report(args, data, builtin):
    text = write_csv(data)
    return {
        "schema_version": SCHEMA_VERSION,
        "command": args.command,
        "provenance": {
            "dataset": builtin.name if builtin else data.name,
            "dataset_sha256": hashlib.sha256(text.encode("utf-8")).hexdigest(),
            "config": _config_echo(args),
            "tool": {"name": "fuzzyshrink", "version": __version__},
        },
    }


def _policy(args):
    return ShrinkagePolicy(shrink_intercept=not args.keep_intercept)


def run_fit(args):
    builtin, data, _ = _load(args)
    model, fitted, source = _model_or_column(args, builtin, data)
    if model is None:
        raise UsageError("fit needs a model, not a published column")
    report = _report(args, data, builtin)
    report.update(source=source, baseline_model=model.to_dict(), fitted=_fitted(fitted),
                  metrics=_gof(_metrics(args), data, fitted))
    return report


def run_shrink(args):
    builtin, data, _ = _load(args)
    model, fitted, source = _model_or_column(args, builtin, data)
    if model is None:
        raise UsageError("shrink needs a model, not a published column")
    shrunk = shrink_model(model, args.k, _policy(args))
    shrunk_fitted = predict(shrunk, data)
    metrics = _metrics(args)
    report = _report(args, data, builtin)
    report.update(
        source=source, k=args.k, policy=_policy(args).to_dict(),
        baseline_model=model.to_dict(), shrunk_model=shrunk.to_dict(),
        fitted=_fitted(fitted), shrunk_fitted=_fitted(shrunk_fitted),
        metrics=_gof(metrics, data, fitted), shrunk_metrics=_gof(metrics, data, shrunk_fitted),
    )
    return report


def run_sweep(args):
    builtin, data, _ = _load(args)
    model, fitted, source = _model_or_column(args, builtin, data)
    if model is None:
        raise UsageError("sweep needs a model, not a published column")
    report = _report(args, data, builtin)
    sweeps = {}
    for metric in _metrics(args):
        sweeps[metric.label] = optimize_k(model, data, metric, args.k_max, args.resolution,
                                          _policy(args), threads=args.threads).to_dict()
    report.update(source=source, policy=_policy(args).to_dict(),
                  baseline_model=model.to_dict(), fitted=_fitted(fitted), shrinkage=sweeps)
    return report


def run_evaluate(args):
    builtin, data, csv_fitted = _load(args)
    if csv_fitted is not None and not args.fixture and not args.estimator:
        model, fitted, source = None, list(csv_fitted), "csv:yhat"
    else:
        model, fitted, source = _model_or_column(args, builtin, data)
    report = _report(args, data, builtin)
    report.update(source=source, fitted=_fitted(fitted),
                  metrics=_gof(_metrics(args), data, fitted))
    if model is not None:
        report["baseline_model"] = model.to_dict()
    return report


def _row(quantity, published, computed, mode):
    return {"quantity": quantity, "published": published, "computed": computed, "mode": mode}


def _demo_crisp(builtin, fixture, fixture_b, k_pub, metric_labels, k_max, mode_metrics):
    data = builtin.data
    model = builtin.fixture_models[fixture]
    rows = []
    pub = PUBLISHED_METRICS[builtin.id]
    for label in metric_labels:
        metric = parse_metric(label)
        if mode_metrics == "published columns":
            base = aggregate(metric, data.Y, builtin.published_fitted).aggregate
        else:
            base = aggregate(metric, data.Y, predict(model, data)).aggregate
        rows.append(_row(f"{label} baseline", pub["baseline"][label], base, mode_metrics))
    shrunk = shrink_model(model, k_pub)
    printed = builtin.fixture_models[fixture_b].to_array()
    got = shrunk.to_array()
    for j in range(len(printed)):
        rows.append(_row(f"{fixture_b} coef {j} center", printed[j, 1], got[j, 1], f"shrink k={k_pub}"))
        rows.append(_row(f"{fixture_b} coef {j} left spread", printed[j, 0], got[j, 0], f"shrink k={k_pub}"))
    for label in metric_labels:
        metric = parse_metric(label)
        rep = optimize_k(model, data, metric, k_max=k_max)
        mode = f"re-predicted from {fixture}"
        rows.append(_row(f"{label} shrunk", pub["shrunk"][label], rep.metric_shrunk, mode))
        rows.append(_row(f"{label} k*", PUBLISHED_K[builtin.id][label], rep.k_star, mode))
        rows.append(_row(f"{label} boundary", PUBLISHED_BOUNDARY[builtin.id][label],
                         rep.boundary_sup, mode))
    return rows


def run_demo(args):
    builtin = load_builtin(f"dataset{args.example}")
    report = _report(args, builtin.data, builtin)
    bid = builtin.id
    if bid is DatasetId.DATASET1:
        rows = _demo_crisp(builtin, "13a", "13b", 0.0044, ["dlr"], 0.2, "published columns")
        rows.insert(1, _row("dlr shrunk (published column)",
                            PUBLISHED_METRICS[bid]["shrunk"]["dlr"],
                            aggregate(GofMetric.dlr(), builtin.data.Y, builtin.published_shrunk).aggregate,
                            "published columns"))
    elif bid is DatasetId.DATASET2:
        rows = _demo_crisp(builtin, "14a", "14b", 0.0972, ["dlr"], 1.0, "re-predicted from 14a")
    elif bid is DatasetId.DATASET3:
        rows = _demo_crisp(builtin, "15a", "15b", PUBLISHED_K[bid]["d2q"], ["dlr", "d2q", "dh"],
                           10.0, "published columns")
    else:
        data = builtin.data
        k = PUBLISHED_K[bid]["dlr"]
        fit_a = predict(builtin.fixture_models["17a"], data)
        fit_b = predict(shrink_model(builtin.fixture_models["17a"], k), data)
        rows = []
        for name, got, pub in (("17a column", fit_a, builtin.published_fitted),
                               (f"17a shrunk k={k} column", fit_b, builtin.published_shrunk)):
            diff = np.abs(to_array(got) - to_array(pub)).max()
            rows.append(_row(f"{name}: max |computed - printed|", 0.0, float(diff), "re-predicted"))
        for label in ("dlr", "d2q", "dh"):
            rows.append(_row(f"{label} baseline", PUBLISHED_METRICS[bid]["baseline"][label],
                             None, "not reproducible: printed responses duplicate inputs"))
    report["demo"] = {"example": args.example, "notes": list(builtin.notes), "rows": rows}
    return report


COMMANDS = {"fit": run_fit, "shrink": run_shrink, "sweep": run_sweep,
            "evaluate": run_evaluate, "demo": run_demo}


def _fmt(v):
    if v is None:
        return "-"
    if isinstance(v, float):
        return f"{v:.6g}"
    return str(v)


def _model_lines(title, model):
    lines = [title]
    if model["type"] == "crisp_input":
        for j, c in enumerate(model["coefficients"]):
            lines.append(f"  A{j} = {format_tfn(TriangularFuzzyNumber(*c))}")
    else:
        lines.append(f"  centers a = {', '.join(_fmt(v) for v in model['center_coeffs'])}")
        lines.append(f"  spreads c = {', '.join(_fmt(v) for v in model['spread_coeffs'])}")
    return lines


def render_table(report):
    """Human-readable rendering of a report dict."""
    prov = report["provenance"]
    lines = [f"fuzzyshrink {report['command']} on {prov['dataset']}"]
    if "source" in report:
        lines.append(f"source: {report['source']}")
    if "baseline_model" in report:
        lines += _model_lines("baseline model:", report["baseline_model"])
    if "shrunk_model" in report:
        lines += _model_lines(f"shrunk model (k={_fmt(report['k'])}):", report["shrunk_model"])
    for key, title in (("metrics", "baseline"), ("shrunk_metrics", "shrunk")):
        for label, value in report.get(key, {}).items():
            lines.append(f"{title:>8} {label:<10} {_fmt(value['aggregate'])}  ({value['aggregation_rule']})")
    for label, sw in report.get("shrinkage", {}).items():
        lines.append(f"sweep {label}: k*={_fmt(sw['k_star'])}  {_fmt(sw['metric_baseline'])} -> "
                     f"{_fmt(sw['metric_shrunk'])}  boundary (0, {_fmt(sw['boundary_sup'])}]")
    if "demo" in report:
        demo = report["demo"]
        width = max(len(r["quantity"]) for r in demo["rows"])
        lines.append(f"{'quantity':<{width}}  {'published':>12}  {'computed':>12}  mode")
        for r in demo["rows"]:
            lines.append(f"{r['quantity']:<{width}}  {_fmt(r['published']):>12}  "
                         f"{_fmt(r['computed']):>12}  {r['mode']}")
        for note in demo["notes"]:
            lines.append(f"note: {note}")
    return "\n".join(lines) + "\n"


def render_csv(report):
    if "demo" in report:
        out = ["quantity,published,computed,mode"]
        for r in report["demo"]["rows"]:
            out.append(",".join(_fmt(r[k]) if k != "mode" else r[k]
                                for k in ("quantity", "published", "computed", "mode")))
        return "\n".join(out) + "\n"
    fitted = report.get("shrunk_fitted") or report.get("fitted") or []
    out = ["row,yhat_l,yhat_m,yhat_r"]
    out += [f"{i + 1},{l!r},{m!r},{r!r}" for i, (l, m, r) in enumerate(fitted)]
    return "\n".join(out) + "\n"


def render(report, output):
    if output == "json":
        return json.dumps(report, indent=2) + "\n"
    if output == "csv":
        return render_csv(report)
    return render_table(report)


def main(argv=None):
    _configure_logging()
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command != "demo" and not (args.builtin or args.csv):
        parser.error("one of --builtin or --csv is required")
    try:
        report = COMMANDS[args.command](args)
    except UsageError as exc:
        return _fail(args, "usage", str(exc), EXIT_USAGE)
    except (CsvParseError, DomainError) as exc:
        return _fail(args, "data", str(exc), EXIT_DATA)
    except (SingularDesignError, DegenerateDataError, RuntimeError, FloatingPointError) as exc:
        return _fail(args, "numerical", str(exc), EXIT_NUMERIC)
    sys.stdout.write(render(report, args.output))
    return EXIT_OK


def _fail(args, kind, message, code):
    payload = {"error": kind, "message": message, "exit_code": code}
    if getattr(args, "output", "table") == "json":
        sys.stderr.write(json.dumps(payload) + "\n")
    else:
        sys.stderr.write(f"fuzzyshrink: {kind} error: {message}\n")
    return code


if __name__ == "__main__":
    sys.exit(main())
