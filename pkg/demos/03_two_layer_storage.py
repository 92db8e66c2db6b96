"""Spending spare storage on repair redundancy.

Small system: M=4, n=4, k=2, d=3.  Each node keeps an MSR share (alpha1=2)
and one extra fragment (alpha2=1) that backs a second, independent batch.
"""

# %%
from fractions import Fraction

from erasure_repair import (
    Budget,
    ChannelModel,
    SystemParams,
    TwoLayerAllocation,
    mbr_point,
    msr_point,
    optimize_twolayer,
    p_success_twolayer,
    region_map,
)
from erasure_repair.reliability import indicator_table

p = SystemParams(4, 4, 2, 3)
ch = ChannelModel(0.1)
plain = TwoLayerAllocation(2, 0, 1, 0)
extra = TwoLayerAllocation(2, 1, 1, 1)
print(f"no extra storage:  p_s = {p_success_twolayer(p, plain, ch):.6f}")
print(f"one extra fragment: p_s = {p_success_twolayer(p, extra, ch):.6f}")

# %% which (d1, d2) arrival counts suffice
for d1, row in enumerate(indicator_table(p, extra)):
    print(f"d1={d1}: " + " ".join("x" if ok else "." for ok in row))

# %% the optimizer finds the same allocation
r = optimize_twolayer(p, Budget(6, 3), ch)
print(f"\noptimum: {r.argmax}  p_s={r.p_star:.6f}  ({r.feasible_count} candidates)")

# %% MSR vs MBR base layers on a budget grid, n=10, k=5, d=9, M=1
q = SystemParams(1, 10, 5, 9)
g0, a0, a1 = msr_point(q).gamma, msr_point(q).alpha, mbr_point(q).alpha
gammas = [mbr_point(q).gamma] + [g0 * Fraction(j, 2) for j in range(2, 7)]
alphas = [a0, (a0 + a1) / 2, a1, 2 * a1]
rm = region_map(q, ChannelModel(0.1), gammas, alphas, grid=32)
print("\nalpha_th \\ gamma_th  " + " ".join(f"{float(g):>6.3f}" for g in gammas))
for a, row in zip(alphas, rm.tags):
    print(f"{float(a):>19.4f}  " + " ".join(f"{t if t != 'INFEASIBLE' else '-':>6}" for t in row))
# MBR only wins in the first column: enough storage, but less bandwidth than
# an MSR repair needs.
