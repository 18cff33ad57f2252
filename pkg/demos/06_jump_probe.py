"""
One-sided values of T near rationals
====================================

T(alpha) = (1/pi) sum Lambda(n) sin(2 pi n alpha)/n is believed to jump by
mu(q)/phi(q) at a/q. We only measure; partial sums resolve eps well above 1/N.
"""

# %%
from mollified_mobius import RationalPoint, build_tables, jump_probe

tables = build_tables(10**6)
for a, q in [(0, 1), (1, 2), (1, 3), (1, 5), (1, 6)]:
    rep = jump_probe(RationalPoint(a, q), [1e-2, 1e-3, 1e-4], 10**6, tables)
    print(f"{a}/{q}: T = {rep.t_at:+.4f}, conjectured half jump {rep.conjectured_half_jump:+.4f}")
    for r in rep.rows:
        print(f"   eps={r.eps:g}: left {r.t_left:+.4f} right {r.t_right:+.4f} avg {r.average:+.4f} half jump {r.measured_half_jump:+.4f}")
