"""Acceptance checks shared by ``erasure-repair validate`` and the test suite.

Each ``criterion_*`` function returns a list of :class:`Check` rows.  A
criterion passes iff all of its rows pass.  Nothing here is tuned to make a
check pass: tolerances are the stated ones and failures are reported as-is.
"""

from __future__ import annotations

import itertools
import math
import random
import time
from dataclasses import dataclass, replace
from fractions import Fraction
from typing import Callable

import numpy as np

from .core import (
    INFEASIBLE,
    LOSSLESS,
    ChannelModel,
    Family,
    SystemParams,
    mbr_point,
    min_cut_alpha,
    msr_point,
    tradeoff_alpha_star,
)
from .optimize import Budget, optimize_helpers, optimize_twolayer, region_map
from .reliability import (
    HelperScheme,
    RepetitionScheme,
    TwoLayerAllocation,
    any_of,
    p_success_helpers,
    p_success_repetition,
    p_success_twolayer,
    regen_condition,
)
from .gfsim.field import EXP, INV, LOG, MUL, gf_inv, gf_mul, gf_mul_slow, rank
from .gfsim.storage import is_mds
from .gfsim.trials import (
    ErasureMode,
    build_system,
    derive_seed,
    exhaustive_check,
    plan_for,
    repair,
    run_trials,
)

DEFAULT_TRIALS = 100_000
DEFAULT_SEED = 20240601

# Figure-reproduction systems
FIG3_SYSTEM = SystemParams(10, 10, 5, 9)
SMALL_SYSTEM = SystemParams(4, 4, 2, 3)
FIG6_SYSTEM = SystemParams(1, 10, 5, 9)


@dataclass
class Check:
    criterion: int
    name: str
    expected: str
    observed: str
    tolerance: str
    passed: bool
    seconds: float = 0.0

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return (f"[{status}] criterion {self.criterion}: {self.name} | expected {self.expected} | "
                f"observed {self.observed} | tolerance {self.tolerance}")


def _fmt(x) -> str:
    if x is INFEASIBLE:
        return "INFEASIBLE"
    if isinstance(x, Fraction):
        return str(x) if x.denominator == 1 else f"{float(x):.12g} ({x})"
    if isinstance(x, float):
        return f"{x:.12g}"
    return str(x)


def _timed(fn: Callable):
    t0 = time.perf_counter()
    out = fn()
    return out, time.perf_counter() - t0


# --- criterion 1 -------------------------------------------------------------

def criterion_1() -> list[Check]:
    checks = []
    for d, dp, want in [(7, 9, Fraction(18, 5)), (5, 6, Fraction(4))]:
        got = dp * mbr_point(FIG3_SYSTEM.with_d(d)).beta
        checks.append(Check(1, f"MBR d'*beta at (d={d}, d'={dp})", _fmt(want), _fmt(got),
                            "exact", got == want))
    return checks


# --- criterion 2 -------------------------------------------------------------

def criterion_2() -> list[Check]:
    ch = ChannelModel(Fraction(1, 10))
    reps = 200
    rep, t_rep = _timed(lambda: [p_success_repetition(RepetitionScheme((2, 1, 1)), ch)
                                 for _ in range(reps)])
    three, t_three = _timed(lambda: [any_of(4, 3, ch) for _ in range(reps)])
    per_call = max(t_rep, t_three) / reps
    return [
        Check(2, "repetition counts (2,1,1) at eps=0.1", "0.8019", _fmt(rep[0]), "1e-4",
              abs(rep[0] - 0.8019) <= 1e-4, t_rep / reps),
        Check(2, "any 3 of 4 at eps=0.1", "0.9477", _fmt(three[0]), "1e-4",
              abs(three[0] - 0.9477) <= 1e-4, t_three / reps),
        Check(2, "runtime per evaluation", "< 1 ms", f"{per_call * 1e3:.4f} ms", "1 ms",
              per_call < 1e-3, per_call),
    ]


# --- criterion 3 -------------------------------------------------------------

TRADEOFF_EPS = (Fraction(0), Fraction(1, 10), Fraction(2, 10), Fraction(3, 10))


def _gamma_grid(p: SystemParams, eps_max: Fraction, points: int = 200) -> list[Fraction]:
    lo = mbr_point(p).gamma * Fraction(9, 10)
    hi = msr_point(p).gamma / (1 - eps_max) * Fraction(11, 10)
    return [lo + (hi - lo) * Fraction(j, points - 1) for j in range(points)]


def _as_inf(x):
    return math.inf if x is INFEASIBLE else x


def criterion_3(p: SystemParams = SystemParams(1, 10, 5, 9)) -> list[Check]:
    t0 = time.perf_counter()
    grid = _gamma_grid(p, max(TRADEOFF_EPS))
    msr, mbr = msr_point(p), mbr_point(p)
    mismatches = 0
    endpoint_bad = []
    curves = {}
    for e in TRADEOFF_EPS:
        ch = ChannelModel(e)
        curve = [tradeoff_alpha_star(p, g, ch) for g in grid]
        oracle = [min_cut_alpha(p, g, ch) for g in grid]
        mismatches += sum(1 for a, b in zip(curve, oracle) if a != b)
        curves[e] = curve
        scale = 1 - e
        if tradeoff_alpha_star(p, msr.gamma / scale, ch) != msr.alpha:
            endpoint_bad.append(f"MSR end at eps={e}")
        if tradeoff_alpha_star(p, mbr.gamma / scale, ch) != mbr.alpha:
            endpoint_bad.append(f"MBR end at eps={e}")
        if tradeoff_alpha_star(p, mbr.gamma / scale * Fraction(999_999, 1_000_000), ch) is not INFEASIBLE:
            endpoint_bad.append(f"below MBR end at eps={e}")
        if tradeoff_alpha_star(p, msr.gamma / scale * 2, ch) != msr.alpha:
            endpoint_bad.append(f"flat beyond MSR end at eps={e}")

    dominated = True
    strict = True
    for lo, hi in zip(TRADEOFF_EPS, TRADEOFF_EPS[1:]):
        a, b = [_as_inf(x) for x in curves[lo]], [_as_inf(x) for x in curves[hi]]
        dominated &= all(y >= x for x, y in zip(a, b))
        strict &= any(y > x for x, y in zip(a, b))
    elapsed = time.perf_counter() - t0
    total = len(grid) * len(TRADEOFF_EPS)
    return [
        Check(3, "closed form vs cut oracle", f"0 mismatches of {total}",
              f"{mismatches} mismatches", "exact", mismatches == 0),
        Check(3, "curve endpoints at MSR/MBR scaled by 1/(1-eps)", "all endpoints exact",
              "ok" if not endpoint_bad else "; ".join(endpoint_bad), "exact", not endpoint_bad),
        Check(3, "larger eps needs more storage at every gamma", "dominance, strict somewhere",
              f"dominated={dominated}, strict={strict}", "exact", dominated and strict),
        Check(3, "runtime", "< 1 s", f"{elapsed:.3f} s", "1 s", elapsed < 1.0, elapsed),
    ]


# --- criterion 4 -------------------------------------------------------------

def criterion_4() -> list[Check]:
    checks = []
    wide = HelperScheme(7, 9, mbr_point(FIG3_SYSTEM.with_d(7)).beta)
    narrow = HelperScheme(5, 6, mbr_point(FIG3_SYSTEM.with_d(5)).beta)
    for j in range(1, 8):
        e = Fraction(5 * j, 100)
        a, b = p_success_helpers(wide, ChannelModel(e)), p_success_helpers(narrow, ChannelModel(e))
        checks.append(Check(4, f"(7,9) beats (5,6) at eps={float(e)}", "p(7,9) > p(5,6)",
                            f"{a:.9f} vs {b:.9f}", "strict", a > b))
    for e in (Fraction(45, 100), Fraction(1, 2)):
        a, b = p_success_helpers(wide, ChannelModel(e)), p_success_helpers(narrow, ChannelModel(e))
        checks.append(Check(4, f"(5,6) beats (7,9) at eps={float(e)}", "p(5,6) > p(7,9)",
                            f"{b:.9f} vs {a:.9f}", "strict", b > a))
    return checks


# --- criterion 5 -------------------------------------------------------------

FIG4_EPS = tuple(Fraction(2 * j, 100) for j in range(1, 26))


def helper_sweep(p: SystemParams = FIG3_SYSTEM, family: Family = Family.MBR,
                 gamma_th: Fraction = Fraction(5), eps_values=FIG4_EPS):
    return [(e, optimize_helpers(p, family, Budget(gamma_th), ChannelModel(e))) for e in eps_values]


def criterion_5() -> list[Check]:
    sweep = helper_sweep()
    feasible = all(r is not INFEASIBLE for _, r in sweep)
    ds = [r.argmax.d for _, r in sweep] if feasible else []
    dps = [r.argmax.d_prime for _, r in sweep] if feasible else []
    non_inc = feasible and all(x >= y for x, y in zip(ds, ds[1:])) and \
        all(x >= y for x, y in zip(dps, dps[1:]))
    first, last = sweep[0][1], sweep[-1][1]
    return [
        Check(5, "optimal (d, d') non-increasing in eps over [0.02, 0.5]", "non-increasing",
              f"d: {sorted(set(ds), reverse=True)}, d': {sorted(set(dps), reverse=True)}; "
              f"eps=0.02 -> ({first.argmax.d},{first.argmax.d_prime}), "
              f"eps=0.5 -> ({last.argmax.d},{last.argmax.d_prime})",
              "plateaus allowed", non_inc),
    ]


# --- criterion 6 -------------------------------------------------------------

def random_allocations(count: int, seed: int) -> list[tuple[SystemParams, TwoLayerAllocation, ChannelModel]]:
    rng = random.Random(seed)
    out = []
    while len(out) < count:
        d = rng.randint(1, 5)
        k = rng.randint(1, d)
        p = SystemParams(Fraction(rng.randint(1, 12), rng.randint(1, 3)), d + 1, k, d)
        alpha1 = Fraction(rng.randint(1, 8), rng.randint(1, 4))
        beta1 = alpha1 * Fraction(rng.randint(1, 4), 4)
        alpha2 = Fraction(rng.randint(0, 8), rng.randint(1, 4))
        beta2 = alpha2 * Fraction(rng.randint(0, 4), 4)
        eps = Fraction(rng.randint(0, 19), 20)
        out.append((p, TwoLayerAllocation(alpha1, alpha2, beta1, beta2), ChannelModel(eps)))
    return out


def criterion_6(count: int = 40, seed: int = 6) -> list[Check]:
    t0 = time.perf_counter()
    ch = ChannelModel(Fraction(1, 10))
    named = [
        (SMALL_SYSTEM, TwoLayerAllocation(2, 1, 1, 1), ch, 0.999945),
        (SMALL_SYSTEM, TwoLayerAllocation(2, 0, 1, 0), ch, 0.972),
    ]
    checks = []
    for p, a, c, want in named:
        formula, oracle = p_success_twolayer(p, a, c), exhaustive_check(p, a, c)
        ok = abs(formula - oracle) <= 1e-12 and abs(formula - want) <= 1e-12
        checks.append(Check(6, f"two-layer {_alloc(a)} at eps=0.1", f"{want}",
                            f"formula {formula:.15g}, enumeration {oracle:.15g}", "1e-12", ok))
    worst = 0.0
    for p, a, c in random_allocations(count, seed):
        worst = max(worst, abs(p_success_twolayer(p, a, c) - exhaustive_check(p, a, c)))
    elapsed = time.perf_counter() - t0
    checks.append(Check(6, f"formula vs 2^(2d) enumeration, {count} random allocations (d<=5)",
                        "max |diff| <= 1e-12", f"{worst:.3g}", "1e-12", worst <= 1e-12))
    checks.append(Check(6, "runtime", "< 5 s", f"{elapsed:.3f} s", "5 s", elapsed < 5.0, elapsed))
    return checks


def _alloc(a: TwoLayerAllocation) -> str:
    return f"(a1={a.alpha1}, a2={a.alpha2}, b1={a.beta1}, b2={a.beta2})"


# --- criterion 7 -------------------------------------------------------------

def simulation_cases():
    """(label, params, scheme, channel) for the Monte-Carlo agreement check."""
    ch = ChannelModel(Fraction(1, 10))
    p = FIG3_SYSTEM
    return [
        ("helpers (d=7, d'=9), MBR, eps=0.1", p, HelperScheme(7, 9, mbr_point(p.with_d(7)).beta), ch),
        ("helpers (d=5, d'=6), MBR, eps=0.1", p, HelperScheme(5, 6, mbr_point(p.with_d(5)).beta), ch),
        ("two-layer (2,1,1,1), eps=0.1", SMALL_SYSTEM, TwoLayerAllocation(2, 1, 1, 1), ch),
        ("lossless MSR repair (d=3, beta=1)", SMALL_SYSTEM, HelperScheme(3, 3, 1), LOSSLESS),
    ]


def _required_helpers(p: SystemParams, scheme) -> int:
    return scheme.d if isinstance(scheme, HelperScheme) else p.d


def criterion_7(trials: int = DEFAULT_TRIALS, seed: int = DEFAULT_SEED) -> list[Check]:
    checks = []
    total = 0.0
    for j, (label, p, scheme, ch) in enumerate(simulation_cases()):
        rep, dt = _timed(lambda: run_trials(p, scheme, ch, trials, derive_seed(seed, j)))
        total += dt
        d = _required_helpers(p, scheme)
        allowance = d / 255
        ok = rep.consistent(3.0, allowance)
        checks.append(Check(
            7, label, f"{rep.p_analytic:.6f}",
            f"p_hat={rep.p_hat:.6f} ({rep.successes}/{rep.trials}), diff={rep.deviation:+.6f}",
            f"+{3 * rep.sigma:.6f} / -{3 * rep.sigma + allowance:.6f} (3 sigma, allowance {d}/255)",
            ok, dt))
    checks.append(Check(7, "runtime", "< 60 s", f"{total:.1f} s", "60 s", total < 60.0, total))
    return checks


# --- criterion 8 -------------------------------------------------------------

def fig6_grids(p: SystemParams = FIG6_SYSTEM, cells: int = 8):
    """Budget axes: bandwidth from the MSR repair cost up to 4x, storage from M/k up to 4x the MBR size."""
    g_lo, a_lo = msr_point(p).gamma, msr_point(p).alpha
    g_hi, a_hi = 4 * g_lo, 4 * mbr_point(p).alpha
    gammas = [g_lo + (g_hi - g_lo) * Fraction(j, cells - 1) for j in range(cells)]
    alphas = [a_lo + (a_hi - a_lo) * Fraction(j, cells - 1) for j in range(cells)]
    return gammas, alphas


def criterion_8(cells: int = 8, grid: int = 64) -> list[Check]:
    p = FIG6_SYSTEM
    gammas, alphas = fig6_grids(p, cells)
    rm = region_map(p, ChannelModel(Fraction(1, 10)), gammas, alphas, grid)
    a_mbr = mbr_point(p).alpha
    half = cells // 2
    low_alpha = [t for a, row in zip(rm.alpha_grid, rm.tags) if a < a_mbr for t in row]
    low_gamma_high_alpha = [t for row in rm.tags[half:] for t in row[:half]]
    high_high = [t for row in rm.tags[half:] for t in row[half:]]
    counts = {tag: sum(row.count(tag) for row in rm.tags) for tag in ("MSR", "MBR", "TIE", "INFEASIBLE")}
    return [
        Check(8, "alpha_th < alpha_MBR cells are MSR", "all MSR",
              f"{low_alpha.count('MSR')}/{len(low_alpha)} MSR",
              "exact", bool(low_alpha) and all(t == "MSR" for t in low_alpha)),
        Check(8, "high alpha_th / low gamma_th corner is MSR", "all MSR",
              f"{low_gamma_high_alpha.count('MSR')}/{len(low_gamma_high_alpha)} MSR",
              "exact", all(t == "MSR" for t in low_gamma_high_alpha)),
        Check(8, "high alpha_th / high gamma_th corner contains MBR", ">= 1 MBR cell",
              f"{high_high.count('MBR')} MBR of {len(high_high)}; whole map {counts}",
              "qualitative", "MBR" in high_high),
    ]


# --- criterion 9 -------------------------------------------------------------

def _field_axioms(samples: int, seed: int) -> list[str]:
    bad = []
    elems = np.arange(256)
    if not np.array_equal(MUL[1], elems.astype(np.uint8)):
        bad.append("1 is not the multiplicative identity")
    if MUL[0].any() or MUL[:, 0].any():
        bad.append("0 does not annihilate")
    if not np.array_equal(MUL, MUL.T):
        bad.append("multiplication not commutative")
    if any((a ^ a) != 0 for a in range(256)):
        bad.append("x + x != 0")
    if any(MUL[a, INV[a]] != 1 for a in range(1, 256)):
        bad.append("a * inv(a) != 1")
    if any(gf_mul(a, b) != gf_mul_slow(a, b) for a in range(256) for b in range(256)):
        bad.append("table product disagrees with carry-less product")
    if gf_mul(2, 0x80) != 0x1D:
        bad.append("2 * 0x80 != 0x1D")
    if len({int(EXP[i]) for i in range(255)}) != 255:
        bad.append("2 does not generate the multiplicative group")
    if any(int(EXP[LOG[a]]) != a for a in range(1, 256)):
        bad.append("exp(log(a)) != a")
    try:
        gf_inv(0)
        bad.append("inv(0) did not raise")
    except ZeroDivisionError:
        pass
    rng = np.random.default_rng(seed)
    a, b, c = (rng.integers(0, 256, samples) for _ in range(3))
    if not np.array_equal(MUL[MUL[a, b], c], MUL[a, MUL[b, c]]):
        bad.append("multiplication not associative")
    if not np.array_equal(MUL[a, b ^ c], MUL[a, b] ^ MUL[a, c]):
        bad.append("multiplication does not distribute over addition")
    if not np.array_equal((a ^ b) ^ c, a ^ (b ^ c)):
        bad.append("addition not associative")
    return bad


def gf_det(m: np.ndarray) -> int:
    """Leibniz determinant over GF(2^8); signs vanish in characteristic 2."""
    n = m.shape[0]
    total = 0
    for perm in itertools.permutations(range(n)):
        term = 1
        for i, j in enumerate(perm):
            term = gf_mul(term, int(m[i, j]))
            if term == 0:
                break
        total ^= term
    return total


def minor_rank(m: np.ndarray) -> int:
    """Largest size of a square submatrix with nonzero determinant."""
    rows, cols = m.shape
    for size in range(min(rows, cols), 0, -1):
        for rs in itertools.combinations(range(rows), size):
            for cs in itertools.combinations(range(cols), size):
                if gf_det(m[np.ix_(rs, cs)]) != 0:
                    return size
    return 0


def _low_rank_matrix(rng: np.random.Generator, rows: int, cols: int) -> np.ndarray:
    r = int(rng.integers(0, min(rows, cols) + 1))
    if r == 0:
        return np.zeros((rows, cols), dtype=np.uint8)
    left = rng.integers(0, 256, (rows, r))
    right = rng.integers(0, 256, (r, cols))
    out = np.zeros((rows, cols), dtype=np.uint8)
    for t in range(r):
        out ^= MUL[left[:, t][:, None], right[t][None, :]]
    return out


def _rank_oracle(count: int, seed: int) -> int:
    rng = np.random.default_rng(seed)
    mismatches = 0
    for i in range(count):
        rows, cols = (int(x) for x in rng.integers(1, 5, 2))
        if i % 2:
            m = _low_rank_matrix(rng, rows, cols)
        else:
            m = rng.choice(np.array([0, 1, 2, 3, 0x80, 0x1D], dtype=np.uint8), (rows, cols))
        if rank(m) != minor_rank(m):
            mismatches += 1
    return mismatches


def _monotonicity() -> list[str]:
    bad = []
    eps_grid = [Fraction(j, 20) for j in range(20)]
    for dp in range(1, 10):
        for d in range(1, dp + 1):
            vals = [p_success_helpers(HelperScheme(d, dp, 1), ChannelModel(e)) for e in eps_grid]
            if any(y > x + 1e-15 for x, y in zip(vals, vals[1:])):
                bad.append(f"helpers ({d},{dp}) increases with eps")
            if any(not 0 <= v <= 1 + 1e-15 for v in vals):
                bad.append(f"helpers ({d},{dp}) leaves [0,1]")
            if dp < 9:
                for e in eps_grid:
                    ch = ChannelModel(e)
                    if p_success_helpers(HelperScheme(d, dp + 1, 1), ch) < \
                            p_success_helpers(HelperScheme(d, dp, 1), ch) - 1e-15:
                        bad.append(f"extra helper hurts at ({d},{dp}), eps={e}")
                        break
    for p, a, _ in random_allocations(30, 9):
        vals = [p_success_twolayer(p, a, ChannelModel(e)) for e in eps_grid]
        if any(y > x + 1e-12 for x, y in zip(vals, vals[1:])):
            bad.append(f"two-layer {_alloc(a)} increases with eps")
        for d1 in range(p.d + 1):
            for d2 in range(p.d + 1):
                if regen_condition(p, a, d1, d2):
                    if d1 < p.d and not regen_condition(p, a, d1 + 1, d2):
                        bad.append("regen_condition not monotone in d1")
                    if d2 < p.d and not regen_condition(p, a, d1, d2 + 1):
                        bad.append("regen_condition not monotone in d2")
    ch = ChannelModel(Fraction(1, 10))
    prev = -1.0
    for g in [Fraction(j, 2) for j in range(4, 13)]:
        r = optimize_helpers(FIG3_SYSTEM, Family.MBR, Budget(g), ch)
        cur = -1.0 if r is INFEASIBLE else r.p_star
        if cur < prev:
            bad.append(f"helper optimum drops when gamma_th grows to {g}")
        prev = cur
    for a_th in (Fraction(2), Fraction(5, 2), Fraction(3)):
        prev = -1.0
        for g in (Fraction(3), Fraction(4), Fraction(6), Fraction(9)):
            r = optimize_twolayer(SMALL_SYSTEM, Budget(g, a_th), ch, grid=16)
            cur = -1.0 if r is INFEASIBLE else r.p_star
            if cur < prev:
                bad.append(f"two-layer optimum drops at alpha_th={a_th}, gamma_th={g}")
            prev = cur
    return bad


def mds_audit(target: int = 100, seed: int = 99, max_attempts: int = 2000) -> tuple[int, int, int]:
    """Re-check full MDS on successful repairs; returns (audited, disagreements, attempts).

    Repairs chain: each successful repair becomes the next system, so later
    audits exercise nodes that were themselves produced by repair.
    """
    ch = ChannelModel(Fraction(1, 10))
    cases = [
        (SMALL_SYSTEM, TwoLayerAllocation(2, 1, 1, 1)),
        (FIG3_SYSTEM, HelperScheme(5, 6, mbr_point(FIG3_SYSTEM.with_d(5)).beta)),
    ]
    audited = disagreements = attempts = 0
    for j, (p, scheme) in enumerate(cases):
        sys = build_system(plan_for(p, scheme), derive_seed(seed, j))
        want = target // len(cases) + (j < target % len(cases))
        done = 0
        while done < want and attempts < max_attempts:
            ok, new = repair(sys, p, scheme, ch, ErasureMode.BATCH, derive_seed(seed, 1000 + attempts))
            attempts += 1
            truth = is_mds(new)
            if ok != truth:
                disagreements += 1
            if ok:
                done += 1
                sys = new
            else:
                # keep the old system and move on to the next node
                sys = replace(sys, generation=sys.generation + 1)
        audited += done
    return audited, disagreements, attempts


def criterion_9(seed: int = 9) -> list[Check]:
    t0 = time.perf_counter()
    axioms = _field_axioms(10_000, seed)
    rank_bad = _rank_oracle(400, seed)
    mono = _monotonicity()
    audited, disagreements, _ = mds_audit(100, seed)
    elapsed = time.perf_counter() - t0
    return [
        Check(9, "GF(2^8) field axioms", "no violations", "; ".join(axioms) or "none",
              "exact", not axioms),
        Check(9, "rank vs determinant-minor oracle (<= 4x4)", "0 mismatches of 400",
              f"{rank_bad} mismatches", "exact", rank_bad == 0),
        Check(9, "monotonicity of reliability and optimizers", "no violations",
              "; ".join(mono[:5]) or "none", "exact", not mono),
        Check(9, "MDS audit of successful repairs", "100 audited, 0 disagreements",
              f"{audited} audited, {disagreements} disagreements", "exact",
              audited >= 100 and disagreements == 0),
        Check(9, "runtime", "< 30 s", f"{elapsed:.1f} s", "30 s", elapsed < 30.0, elapsed),
    ]


# --- driver ------------------------------------------------------------------

def run_all(quick: bool = False, trials: int = DEFAULT_TRIALS, seed: int = DEFAULT_SEED) -> list[Check]:
    """Every criterion in order; ``quick`` skips the Monte-Carlo agreement check."""
    checks = criterion_1() + criterion_2() + criterion_3() + criterion_4() + criterion_5() \
        + criterion_6()
    if not quick:
        checks += criterion_7(trials, seed)
    return checks + criterion_8() + criterion_9()
