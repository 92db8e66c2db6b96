"""Repair-parameter search under bandwidth and storage budgets.

Two programs are solved by exhaustive enumeration:

* :func:`optimize_helpers` picks ``(d, d')`` for an MSR or MBR code so that
  ``d' * beta <= gamma_th`` and the helper success probability is maximal;
* :func:`optimize_twolayer` splits per-node storage into a base layer,
  pinned to a lossless tradeoff corner, and an extra layer funding ``beta2``.

:func:`region_map` labels a budget grid by which base family wins.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Optional, Sequence, Union

from .core import (
    INFEASIBLE,
    LOSSLESS,
    ChannelModel,
    CodePoint,
    Family,
    ParameterError,
    RationalLike,
    SystemParams,
    as_fraction,
    cut_feasible,
    mbr_point,
    msr_point,
    tradeoff_points,
)
from .reliability import (
    HelperScheme,
    TwoLayerAllocation,
    base_layer_flow,
    binomial_pmf,
    p_success_helpers,
    p_success_twolayer,
)

DEFAULT_GRID = 64
# Candidates whose screened value is this close to the best get re-evaluated exactly.
_SCREEN_SLACK = 1e-12


@dataclass(frozen=True)
class Budget:
    gamma_th: Fraction
    alpha_th: Optional[Fraction] = None

    def __post_init__(self):
        object.__setattr__(self, "gamma_th", as_fraction(self.gamma_th))
        if self.gamma_th <= 0:
            raise ParameterError("gamma_th must be positive")
        if self.alpha_th is not None:
            object.__setattr__(self, "alpha_th", as_fraction(self.alpha_th))
            if self.alpha_th <= 0:
                raise ParameterError("alpha_th must be positive")


@dataclass(frozen=True)
class OptResult:
    argmax: Union[HelperScheme, TwoLayerAllocation]
    family: Family
    p_star: float
    feasible_count: int
    ties: list = field(default_factory=list)


def family_beta(p: SystemParams, family: Family, d: int) -> Fraction:
    q = p.with_d(d)
    if family is Family.MSR:
        return msr_point(q).beta
    if family is Family.MBR:
        return mbr_point(q).beta
    raise ParameterError(f"helper search supports MSR or MBR, got {family}")


def helper_candidates(p: SystemParams, family: Family, b: Budget) -> Iterable[HelperScheme]:
    for d in range(p.k, p.n):
        beta = family_beta(p, family, d)
        for d_prime in range(d, p.n):
            if d_prime * beta <= b.gamma_th:
                yield HelperScheme(d, d_prime, beta)


def optimize_helpers(p: SystemParams, family: Family, b: Budget, ch: ChannelModel):
    """Best ``(d, d')`` for the given code family, or ``INFEASIBLE``.

    ``p.d`` is ignored; every ``k <= d <= n-1`` is tried.  Ties go to the
    smaller ``d'`` and then the smaller ``d``.
    """
    family = Family(family)
    scored = [(p_success_helpers(s, ch), s) for s in helper_candidates(p, family, b)]
    if not scored:
        return INFEASIBLE
    best_p = max(ps for ps, _ in scored)
    ties = sorted((s for ps, s in scored if ps == best_p), key=lambda s: (s.d_prime, s.d))
    return OptResult(ties[0], family, best_p, len(scored), ties)


def anchor_points(p: SystemParams, families: Optional[Sequence[Family]] = None) -> list[CodePoint]:
    """Lossless corner points usable as the base layer."""
    points = tradeoff_points(p, LOSSLESS)
    if families is not None:
        wanted = {Family(f) for f in families}
        points = [pt for pt in points if pt.family in wanted]
    for pt in points:
        assert cut_feasible(p, pt.alpha, pt.beta, LOSSLESS)
    return points


def beta2_candidates(p: SystemParams, anchor: CodePoint, cap: Fraction, grid: int) -> list[Fraction]:
    """Uniform grid on ``[0, cap]`` plus every ``beta2`` where some indicator flips.

    The success probability is a right-continuous step function of ``beta2``
    that only jumps at the flip values, so this set contains an optimum.
    """
    values = {cap * Fraction(j, grid) for j in range(grid + 1)}
    base = TwoLayerAllocation(anchor.alpha, 0, anchor.beta, 0)
    need = p.M - base_layer_flow(p, base)
    for d1 in range(p.d + 1):
        short = need - d1 * anchor.beta
        if short <= 0:
            continue
        for d2 in range(1, p.d + 1):
            v = short / d2
            if v <= cap:
                values.add(v)
    return sorted(values)


def _screen(p: SystemParams, anchor: CodePoint, beta2: Fraction, weights, tails) -> float:
    # sum over d1 of P(d1) * P(d2 >= smallest d2 that completes the cut)
    base = TwoLayerAllocation(anchor.alpha, 0, anchor.beta, 0)
    need = p.M - base_layer_flow(p, base)
    total = []
    for d1 in range(p.d + 1):
        short = need - d1 * anchor.beta
        if short <= 0:
            m = 0
        elif beta2 == 0:
            continue
        else:
            m = math.ceil(short / beta2)
            if m > p.d:
                continue
        total.append(weights[d1] * tails[m])
    return math.fsum(total)


def optimize_twolayer(p: SystemParams, b: Budget, ch: ChannelModel, grid: int = DEFAULT_GRID,
                      families: Optional[Sequence[Family]] = None):
    """Best two-layer allocation under storage and bandwidth caps, or ``INFEASIBLE``.

    The base layer ``(alpha1, beta1)`` ranges over the lossless corner points
    (restricted to ``families`` if given).  Success never depends on ``alpha2``
    beyond ``beta2 <= alpha2``, so each candidate uses ``alpha2 = beta2``; this is
    also what the tie-break (least storage, then least bandwidth) selects.
    """
    if b.alpha_th is None:
        raise ParameterError("two-layer search needs a storage cap alpha_th")
    if grid < 2:
        raise ParameterError(f"grid resolution must be >= 2, got {grid}")
    eps = ch.p
    weights = [binomial_pmf(p.d, i, eps) for i in range(p.d + 1)]
    tails = [math.fsum(weights[m:]) for m in range(p.d + 1)]

    screened = []
    for anchor in anchor_points(p, families):
        if anchor.alpha > b.alpha_th or anchor.gamma > b.gamma_th:
            continue
        cap = min(b.alpha_th - anchor.alpha, b.gamma_th / p.d - anchor.beta)
        for beta2 in beta2_candidates(p, anchor, cap, grid):
            screened.append((_screen(p, anchor, beta2, weights, tails), anchor, beta2))
    if not screened:
        return INFEASIBLE

    top = max(v for v, _, _ in screened)
    exact = []
    for v, anchor, beta2 in screened:
        if v >= top - _SCREEN_SLACK:
            a = TwoLayerAllocation(anchor.alpha, beta2, anchor.beta, beta2)
            exact.append((p_success_twolayer(p, a, ch), a, anchor.family))
    best_p = max(ps for ps, _, _ in exact)
    ties = sorted(((a, fam) for ps, a, fam in exact if ps == best_p),
                  key=lambda t: (t[0].alpha, t[0].bandwidth(p.d), t[0].alpha1))
    winner, fam = ties[0]
    return OptResult(winner, fam, best_p, len(screened), [a for a, _ in ties])


@dataclass(frozen=True)
class RegionMap:
    """Family tags per budget cell; ``tags[i][j]`` is for ``alpha_grid[i]``, ``gamma_grid[j]``."""

    gamma_grid: list
    alpha_grid: list
    tags: list
    p_msr: list
    p_mbr: list


def _compare(msr, mbr) -> str:
    if msr is INFEASIBLE and mbr is INFEASIBLE:
        return "INFEASIBLE"
    if mbr is INFEASIBLE:
        return Family.MSR.value
    if msr is INFEASIBLE:
        return Family.MBR.value
    if msr.p_star > mbr.p_star:
        return Family.MSR.value
    if mbr.p_star > msr.p_star:
        return Family.MBR.value
    return "TIE"


def region_map(p: SystemParams, ch: ChannelModel, gamma_grid: Sequence[RationalLike],
               alpha_grid: Sequence[RationalLike], grid: int = DEFAULT_GRID) -> RegionMap:
    gammas = [as_fraction(g) for g in gamma_grid]
    alphas = [as_fraction(a) for a in alpha_grid]
    if not gammas or not alphas:
        raise ParameterError("budget grids must be non-empty")
    if gammas != sorted(gammas) or alphas != sorted(alphas):
        raise ParameterError("budget grids must be ascending")
    tags, p_msr, p_mbr = [], [], []
    for a_th in alphas:
        row, row_s, row_b = [], [], []
        for g_th in gammas:
            budget = Budget(g_th, a_th)
            s = optimize_twolayer(p, budget, ch, grid, families=[Family.MSR])
            m = optimize_twolayer(p, budget, ch, grid, families=[Family.MBR])
            row.append(_compare(s, m))
            row_s.append(None if s is INFEASIBLE else s.p_star)
            row_b.append(None if m is INFEASIBLE else m.p_star)
        tags.append(row)
        p_msr.append(row_s)
        p_mbr.append(row_b)
    return RegionMap(gammas, alphas, tags, p_msr, p_mbr)
