"""
Weighted Möbius sums and their limits
=====================================

W_N(alpha) splits as U_N - V_N/log N. U_N tends to -sin(2 pi alpha)/pi, but at
a rational point V_N has a nonzero limit, so W_N approaches its target only
like 1/log N. This script shows both effects and the bounded partial sums.
"""

# %%
import math

import numpy as np

from mollified_mobius import RationalPoint, build_tables
from mollified_mobius.series import boundedness_monitor, convergence_scan, series_target

tables = build_tables(10**6)
sched = [10**3, 10**4, 10**5, 10**6]
alphas = {"1/3": RationalPoint(1, 3), "1/4": RationalPoint(1, 4), "sqrt2-1": math.sqrt(2) - 1}

for name, alpha in alphas.items():
    for kind in ("U", "W"):
        scan = convergence_scan(kind, alpha, sched, tables)
        print(f"{kind} at {name:8}: " + "  ".join(f"{e:+.4f}" for e in scan.errors))

# %%
# the W error at a rational is predicted by the limit of V
p = RationalPoint(1, 3)
v_lim = series_target("V", p)
for N in sched:
    print(f"N={N:>8}  -V_inf/log N = {-v_lim / math.log(N):+.4f}")

# %%
grid = np.random.default_rng(0).random(200)
for kind in ("Tsum", "V", "Vstar"):
    rep = boundedness_monitor(kind, grid, 10**6, tables)
    print(f"sup |{kind}| over 200 alphas and N <= 1e6: {rep.sup:.3f} at alpha={rep.alpha_at_sup:.4f}, N={rep.n_at_sup}")
