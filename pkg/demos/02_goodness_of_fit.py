# %% Goodness of fit between fuzzy responses
# Three distances are provided: D_LR (sum of absolute center/endpoint gaps),
# D_H (sum of absolute component gaps) and D_{2,1/2} (squared alpha-cut
# endpoint gaps averaged over alpha, then over rows).
from fuzzyshrink import GofMetric, aggregate, load_builtin

d2 = load_builtin("dataset2")
print(d2.description)
for metric in (GofMetric.dlr(), GofMetric.dh(), GofMetric.d2_half()):
    value = aggregate(metric, d2.data.Y, d2.published_fitted)
    print(f"{metric.label:>4}: {value.aggregate:.5f}  ({value.aggregation_rule.value})")

# %% Per-row terms are kept as well
value = aggregate(GofMetric.dlr(), d2.data.Y, d2.published_fitted)
for i, (y, f, t) in enumerate(zip(d2.data.Y, d2.published_fitted, value.per_observation), 1):
    print(f"row {i}: observed {y.m:5.2f}±{y.l:.2f}  fitted {f.m:5.2f}±{f.l:.2f}  term {t:.4f}")

# %% Dataset 3 is where the printed summary values and the printed table
# disagree a little; compare for yourself.
d3 = load_builtin("dataset3")
for metric in (GofMetric.dlr(), GofMetric.dh(), GofMetric.d2_half()):
    print(metric.label, round(aggregate(metric, d3.data.Y, d3.published_fitted).aggregate, 4))
