# %% Triangular fuzzy numbers
# A triangular fuzzy number is written (l, m, r): center m, left spread l,
# right spread r.  Membership falls linearly from 1 at m to 0 at m - l and m + r.
import numpy as np

from fuzzyshrink import TFN, alpha_cut, membership
from fuzzyshrink.fuzzy import format_tfn

a = TFN(1.0, 5.0, 2.0)
b = TFN.symmetric(3.0, 0.5)
print("a =", format_tfn(a), " b =", format_tfn(b))

# %% Membership and alpha-cuts
for x in (3.5, 4.0, 5.0, 6.0, 7.5):
    print(f"mu_a({x}) = {membership(a, x):.2f}")

for alpha in np.linspace(0, 1, 5):
    cut = alpha_cut(a, alpha)
    print(f"alpha={alpha:.2f}  [{cut.lo:.3f}, {cut.hi:.3f}]")

# %% Arithmetic
# Sums add componentwise.  Multiplying by a negative number mirrors the
# number, so the left and right spreads trade places.
print("a + b  =", format_tfn(a + b))
print("2 a    =", format_tfn(2 * a))
print("-2 a   =", format_tfn(-2 * a))
print("0 a    =", format_tfn(0 * a))
