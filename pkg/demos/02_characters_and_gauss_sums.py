"""
Dirichlet characters and Gauss sums
===================================

Character groups are built from generators of the unit group. Here we look at
a few small moduli, Gauss sums, and the identity that recovers a sine from odd
characters.
"""

# %%
import math

from mollified_mobius import RationalPoint, character_group, gauss_sum, induced_primitive, lemma2_sum

for q in (4, 5, 8, 12):
    g = character_group(q)
    print(f"q={q}: {len(g)} characters")
    for chi in g:
        vals = " ".join(f"{complex(chi(b)).real:+.0f}{complex(chi(b)).imag:+.0f}i" for b in range(q) if math.gcd(b, q) == 1)
        print(f"   #{chi.index} {chi.parity:4} conductor={chi.conductor:<2} {vals}")

# %%
# |tau|^2 = q for primitive characters; imprimitive ones can vanish
for chi in character_group(12):
    t = gauss_sum(chi)
    print(f"mod 12 #{chi.index}: conductor {chi.conductor:2}  tau = {t.real:+.4f}{t.imag:+.4f}i  |tau|^2 = {abs(t) ** 2:.4f}")

chi8 = next(c for c in character_group(8) if c.conductor == 4)
print("mod 8 character of conductor 4 comes from mod", induced_primitive(chi8).modulus)

# %%
# odd characters weighted by Gauss sums reproduce sin(2 pi a/q)
for a, q in [(1, 4), (2, 5), (5, 12), (7, 30)]:
    s = lemma2_sum(RationalPoint(a, q))
    print(f"{a}/{q}: sum = {s.real:+.12f}{s.imag:+.1e}i  sin = {math.sin(2 * math.pi * a / q):+.12f}")
