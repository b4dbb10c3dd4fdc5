# %% Bring your own data
# CSV columns: crisp inputs as x1, x2, ...; fuzzy responses as y_m,y_s
# (symmetric) or y_l,y_m,y_r.  Comment lines start with '#'.
import numpy as np

from fuzzyshrink import (
    GofMetric,
    aggregate,
    fit_bootstrap,
    fit_least_absolutes,
    fit_least_squares,
    load_builtin,
    optimize_k,
    parse_csv,
    write_csv,
)

text = write_csv(load_builtin("dataset3").data)
print(text.splitlines()[0])
print(text.splitlines()[1])
data = parse_csv(text)
print(f"{data.n} rows, {data.p} inputs, symmetric={data.symmetric}")

# %% Three estimators for the baseline fit
metric = GofMetric.dh()
for name, fit in (("least squares", fit_least_squares),
                  ("least absolutes", fit_least_absolutes),
                  ("bootstrap", lambda d: fit_bootstrap(d, 200, seed=1))):
    model = fit(data)
    score = aggregate(metric, data.Y, model.predict(data.X)).aggregate
    print(f"{name:>16}: D_H {score:8.3f}  centers {np.round(model.to_array()[:, 1], 3)}")

# %% and the usual shrinkage search on top
rep = optimize_k(fit_least_squares(data), data, metric, k_max=10)
print(f"k* = {rep.k_star:.4f}, boundary {rep.boundary_sup:.4f}, improved={rep.improved}")
