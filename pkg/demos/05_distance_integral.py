"""
The mollified distance integral, two ways
=========================================

The integral of |sum b_n {nu}/n|^2 / u^2 is evaluated exactly between
breakpoints m/n, and the same number is recovered from zeta on the critical
line. N = 2 gives log(2 pi) - gamma.
"""

# %%
import math

from mollified_mobius import build_tables, lhs_quadrature, mollifier_coeffs, rhs_piecewise, rhs_via_pairs
from mollified_mobius.criterion import criterion_report
from mollified_mobius.special_values import EULER_GAMMA

tables = build_tables(1000)
print("log(2 pi) - gamma =", math.log(2 * math.pi) - EULER_GAMMA)

for n in (2, 3, 5, 8):
    c = mollifier_coeffs(n, tables)
    r = rhs_piecewise(c, 1e4)
    q = lhs_quadrature(c, t_max=200)
    p = rhs_via_pairs(c, 1e4)
    print(f"N={n}: fractional side {r.total:.6f} +- {r.uncertainty:.1e} ({r.breakpoints.size} breakpoints)  "
          f"critical line {q.total:.6f} +- {q.uncertainty:.1e}  pairs {p:.6f}")

# %%
# the value over a range of N; nothing here is asserted
for row in criterion_report([2, 5, 10, 20, 50, 100], tables, u_max=200):
    print(f"N={row.n:>4}  value {row.rhs_value:.4f}  gap to 1 {row.gap_to_one:.4f}  weighted Mertens {row.weighted_mertens:+.4f}")
