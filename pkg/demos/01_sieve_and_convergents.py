"""
Sieved tables and continued fractions
=====================================

Everything downstream reads from one set of sieved tables. This script builds
them, spot-checks the classical identities, and looks at convergents.
"""

# %%
import math

import numpy as np

from mollified_mobius import build_tables, convergents, frac, sawtooth, sawtooth2
from mollified_mobius.arith import reciprocal_phi_sum

tables = build_tables(10**6)
print("mu(1..12)  :", tables.mobius[1:13].tolist())
print("phi(1..12) :", tables.phi[1:13].tolist())
print("Lambda(8)  :", tables.lam[8], "= log 2 =", math.log(2))

# %%
# Mertens function and the sum mu(n)/n at a few scales
n = np.arange(1, tables.limit + 1)
for N in (10**2, 10**4, 10**6):
    print(f"N={N:>8}  M(N)={int(tables.mobius[1:N + 1].sum()):>5}  sum mu(n)/n={math.fsum(tables.mobius[1:N + 1] / n[:N]):+.6f}")

# %%
# The two sawtooth functions. psi is exactly 0 at integers, psi_2 is its periodic antiderivative
print([sawtooth(x) for x in (0.25, 7.0, -0.25)], frac(-0.25))
print("psi_2(0) =", sawtooth2(0.0, 10**6), " 1/12 =", 1 / 12)

# %%
golden = (math.sqrt(5) - 1) / 2
cl = convergents(golden, 10**6)
print("golden convergent denominators:", cl.denominators[:10], "...")
print("sum 1/phi(q_m) =", reciprocal_phi_sum(cl, tables))
print("pi - 3 convergents:", convergents(math.pi - 3, 10**5).entries)
