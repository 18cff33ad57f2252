"""
L-values and closed forms at rational points
============================================

The von Mangoldt sine series at a/q has a closed form in terms of L'/L(1, chi)
for odd characters plus a finite prime-power correction. We compute the
pieces, compare the logarithmic derivative with the smoothed series, and then
watch the partial sums approach the closed form.
"""

# %%
import math

from mollified_mobius import RationalPoint, build_tables, character_group, l_at_one, l_at_zero, prop4_target
from mollified_mobius.series import convergence_scan
from mollified_mobius.special_values import log_deriv_crosscheck

chi4 = character_group(4)[1]
print("L(0, chi_4) =", l_at_zero(chi4).real, "  L(1, chi_4) =", l_at_one(chi4).real, "  pi/4 =", math.pi / 4)

# %%
# Two versions of the finite L'/L(1) expression against the series oracle.
# The one with gamma/2 misses by exactly gamma/2.
tables = build_tables(10**7)
for q in (3, 4, 5, 7):
    for chi in character_group(q).odd():
        c = log_deriv_crosscheck(chi, tables)
        print(f"q={q} #{chi.index}: gamma/2 -> {c.quoted_expression.real:+.6f}  gamma -> {c.corrected_expression.real:+.6f}  oracle {c.series_oracle.real:+.6f}")

# %%
for a, q in [(1, 3), (1, 4), (1, 6), (2, 5), (3, 10)]:
    p = RationalPoint(a, q)
    target = prop4_target(p)
    scan = convergence_scan("Tsum", p, [10**3, 10**5, 10**7], tables)
    errs = "  ".join(f"{e:+.1e}" for e in scan.errors)
    print(f"{p}: closed form {target.value:+.6f} (characters {target.character_part:+.6f}, prime powers {target.prime_power_part:+.6f})  errors {errs}")
