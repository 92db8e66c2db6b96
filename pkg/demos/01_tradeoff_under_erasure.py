"""How much extra storage does a lossy repair link cost?

Sweeps total repair bandwidth for (n, k, d) = (10, 5, 9), M = 1 and prints the
minimum per-node storage at several erasure rates.  Each curve is the lossless
one stretched by 1/(1 - eps) along the bandwidth axis.
"""

# %%
from fractions import Fraction

from erasure_repair import (
    INFEASIBLE,
    ChannelModel,
    SystemParams,
    breakpoints,
    mbr_point,
    min_cut_alpha,
    msr_point,
    tradeoff_alpha_star,
)

p = SystemParams(1, 10, 5, 9)
msr, mbr = msr_point(p), mbr_point(p)
print(f"MSR: alpha={msr.alpha}, gamma={msr.gamma}")
print(f"MBR: alpha={mbr.alpha}, gamma={mbr.gamma}")

# %% corner points move right as eps grows
for eps in (0, 0.1, 0.2, 0.3):
    ch = ChannelModel(eps)
    corners = ", ".join(f"{float(g):.4f}" for g in breakpoints(p, ch))
    print(f"eps={eps:<4} corners at gamma = {corners}")

# %% the curves themselves
gammas = [Fraction(25 + 5 * j, 100) for j in range(14)]
print("\ngamma  " + "".join(f"eps={e:<8}" for e in (0, 0.1, 0.2, 0.3)))
for g in gammas:
    cells = []
    for eps in (0, 0.1, 0.2, 0.3):
        a = tradeoff_alpha_star(p, g, ChannelModel(eps))
        cells.append("   -    " if a is INFEASIBLE else f"{float(a):.5f} ")
    print(f"{float(g):.2f}   " + "   ".join(cells))

# %% the closed form agrees with a direct min-cut computation
ch = ChannelModel(0.2)
assert all(tradeoff_alpha_star(p, g, ch) == min_cut_alpha(p, g, ch) for g in gammas)
print("\nclosed form == min-cut at every sampled gamma")
