"""Contacting more helpers than strictly needed.

With an MBR code (n=10, k=5, M=10) a newcomer can ask d' >= d helpers and
finish as soon as any d batches arrive.  Two schemes with similar bandwidth,
(d=7, d'=9) and (d=5, d'=6), trade places as the erasure rate grows.
"""

# %%
from fractions import Fraction

from erasure_repair import Budget, ChannelModel, Family, HelperScheme, SystemParams, mbr_point
from erasure_repair import optimize_helpers, p_success_helpers

p = SystemParams(10, 10, 5, 9)
wide = HelperScheme(7, 9, mbr_point(p.with_d(7)).beta)
narrow = HelperScheme(5, 6, mbr_point(p.with_d(5)).beta)
print(f"bandwidth: (7,9) -> {wide.gamma_prime}, (5,6) -> {narrow.gamma_prime}")

# %% crossing
print("\n eps    p(7,9)    p(5,6)")
for j in range(1, 11):
    ch = ChannelModel(Fraction(j, 20))
    a, b = p_success_helpers(wide, ch), p_success_helpers(narrow, ch)
    print(f"{j / 20:.2f}  {a:.6f}  {b:.6f}  {'<-' if b > a else ''}")

# %% best (d, d') under a bandwidth cap of 5
print("\n eps   d  d'   p_s")
for j in range(1, 26):
    eps = Fraction(2 * j, 100)
    r = optimize_helpers(p, Family.MBR, Budget(5), ChannelModel(eps))
    print(f"{float(eps):.2f}  {r.argmax.d}  {r.argmax.d_prime}   {r.p_star:.6f}")
# At this cap (6, 9) stays optimal over the whole range.
