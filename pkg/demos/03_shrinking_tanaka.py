# %% Shrinking a fitted model
# Every coefficient component v is replaced by v - k / v.  Spreads use the
# positive part, so a small spread (0.1565 here) is set to zero once k
# exceeds v**2.
from fuzzyshrink import GofMetric, aggregate, load_builtin, shrink_model
from fuzzyshrink.fuzzy import format_tfn

d = load_builtin("dataset2")
base = d.fixture_models["14a"]
shrunk = shrink_model(base, 0.0972)
for j, (a, s) in enumerate(zip(base.coefficients, shrunk.coefficients)):
    print(f"A{j}: {format_tfn(a)}  ->  {format_tfn(s)}")

# %% Did it help?
metric = GofMetric.dlr()
before = aggregate(metric, d.data.Y, base.predict(d.data.X)).aggregate
after = aggregate(metric, d.data.Y, shrunk.predict(d.data.X)).aggregate
print(f"D_LR {before:.5f} -> {after:.5f}")

# %% Keeping the intercept fixed is a policy switch
from fuzzyshrink import ShrinkagePolicy

kept = shrink_model(base, 0.0972, ShrinkagePolicy(shrink_intercept=False))
print("intercept kept:", format_tfn(kept.coefficients[0]))
