"""Monte-Carlo repair over erasure links with random linear network coding.

A trial fails one node, lets the helpers send random combinations of their
stored vectors through erasure links, stores ``alpha`` random combinations
of whatever arrived on the new node, and succeeds iff the repaired system is
still MDS.

Only k-subsets containing the new node can lose rank, so for each failed
node and each (k-1)-subset S of survivors the kernel precomputes a basis Q_S
of the annihilator of span(S).  The new node N completes S iff N @ Q_S has
full column rank, which is checked without forming N.

Seeds
-----
``derive_seed(master, j)`` is the (j+1)-th output of SplitMix64 seeded with
``master``::

    z = (master + (j + 1) * 0x9E3779B97F4A7C15) mod 2**64
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9 mod 2**64
    z = (z ^ (z >> 27)) * 0x94D049BB133111EB mod 2**64
    z =  z ^ (z >> 31)

:func:`run_trials` builds its system from ``derive_seed(master, 0)`` and runs
trial ``i`` (failing node ``i mod n``) with ``derive_seed(master, i + 1)``.
Inside a trial the same SplitMix64 recurrence, seeded with the trial seed,
supplies every random draw.
"""

from __future__ import annotations

import enum
import itertools
import json
import math
from dataclasses import dataclass
from typing import Optional, Union

import numba
import numpy as np

from ..core import ChannelModel, Family, ParameterError, SystemParams, mbr_point, msr_point
from ..reliability import (
    HelperScheme,
    TwoLayerAllocation,
    p_success_helpers,
    p_success_twolayer,
    regen_condition,
)
from .field import EXPX, INV, LOG, MUL, ZERO_LOG, log_table, matmul, null_space
from .storage import PRODUCT_MATRIX, RANDOM, StorageSystem, init_system, integer_scale

Scheme = Union[HelperScheme, TwoLayerAllocation]

GOLDEN = 0x9E3779B97F4A7C15
MIX1 = 0xBF58476D1CE4E5B9
MIX2 = 0x94D049BB133111EB
MASK64 = (1 << 64) - 1

# precomputed tables above this many bytes are refused
TABLE_LIMIT = 256 * 1024 * 1024
MAX_EXHAUSTIVE_LINKS = 20


class ErasureMode(str, enum.Enum):
    BATCH = "batch"
    PER_FRAGMENT = "fragment"


def splitmix64(z: int) -> int:
    z &= MASK64
    z = ((z ^ (z >> 30)) * MIX1) & MASK64
    z = ((z ^ (z >> 27)) * MIX2) & MASK64
    return z ^ (z >> 31)


def derive_seed(master: int, index: int) -> int:
    return splitmix64(master + (index + 1) * GOLDEN)


# --- numba kernels -----------------------------------------------------------

_U_GOLDEN = np.uint64(GOLDEN)
_U_MIX1 = np.uint64(MIX1)
_U_MIX2 = np.uint64(MIX2)
_S30, _S27, _S31, _S11 = np.uint64(30), np.uint64(27), np.uint64(31), np.uint64(11)
_BYTE = np.uint64(255)
_INV53 = 1.0 / 9007199254740992.0


@numba.njit(cache=True)
def _next(state):
    state[0] += _U_GOLDEN
    z = state[0]
    z = (z ^ (z >> _S30)) * _U_MIX1
    z = (z ^ (z >> _S27)) * _U_MIX2
    return z ^ (z >> _S31)


@numba.njit(cache=True)
def _uniform(state):
    return float(_next(state) >> _S11) * _INV53


@numba.njit(cache=True)
def _byte(state):
    return np.uint8(_next(state) & _BYTE)


@numba.njit(cache=True)
def _below(state, n):
    return int(_uniform(state) * n)


@numba.njit(cache=True)
def _small_rank(m, cols, mul, inv):
    """Rank of ``m[:, :cols]``, destroying it."""
    rows = m.shape[0]
    r = 0
    for c in range(cols):
        if r == rows:
            break
        p = -1
        for i in range(r, rows):
            if m[i, c] != 0:
                p = i
                break
        if p < 0:
            continue
        if p != r:
            for j in range(c, cols):
                t = m[p, j]
                m[p, j] = m[r, j]
                m[r, j] = t
        s = inv[m[r, c]]
        for i in range(r + 1, rows):
            f = m[i, c]
            if f != 0:
                f = mul[f, s]
                for j in range(c, cols):
                    m[i, j] ^= mul[f, m[r, j]]
        r += 1
    return r


@numba.njit(cache=True)
def _echelon(m, mul, inv):
    """Reduced row echelon form in place; returns the rank."""
    rows, cols = m.shape
    r = 0
    for c in range(cols):
        if r == rows:
            break
        p = -1
        for i in range(r, rows):
            if m[i, c] != 0:
                p = i
                break
        if p < 0:
            continue
        if p != r:
            for j in range(cols):
                t = m[p, j]
                m[p, j] = m[r, j]
                m[r, j] = t
        s = inv[m[r, c]]
        if s != 1:
            for j in range(c, cols):
                m[r, j] = mul[s, m[r, j]]
        for i in range(rows):
            f = m[i, c]
            if i != r and f != 0:
                for j in range(c, cols):
                    m[i, j] ^= mul[f, m[r, j]]
        r += 1
    return r


@numba.njit(cache=True)
def _trial(seed, f, nodes, survivors, member, qdim, Y, n_helpers, tmpl_rows, tmpl_count,
           alpha_new, per_fragment, eps, forced, mul, inv, log, expx, want_new, new_out):
    state = np.empty(1, dtype=np.uint64)
    state[0] = seed
    nsurv = survivors.shape[1]
    alpha = nodes.shape[1]
    M = nodes.shape[2]

    helpers = survivors[f].copy()
    if n_helpers < nsurv:
        for i in range(n_helpers):
            j = i + _below(state, nsurv - i)
            t = helpers[i]
            helpers[i] = helpers[j]
            helpers[j] = t

    T = tmpl_rows.shape[0]
    per_helper = 0
    for t in range(T):
        per_helper += tmpl_count[t]
    cap = n_helpers * per_helper
    frag_helper = np.empty(cap, dtype=np.int64)
    coef = np.zeros((cap, alpha), dtype=np.uint8)
    r = 0
    link = 0
    for hi in range(n_helpers):
        h = helpers[hi]
        for t in range(T):
            if forced.shape[0] > 0:
                link_lost = forced[link] == 0
            elif not per_fragment:
                link_lost = _uniform(state) < eps
            else:
                link_lost = False
            link += 1
            if link_lost:
                continue
            for _ in range(tmpl_count[t]):
                if per_fragment and forced.shape[0] == 0 and _uniform(state) < eps:
                    continue
                frag_helper[r] = h
                for row in range(tmpl_rows[t]):
                    coef[r, row] = _byte(state)
                r += 1

    C = np.empty((alpha_new, r), dtype=np.uint8)
    for i in range(alpha_new):
        for j in range(r):
            C[i, j] = _byte(state)

    if want_new:
        R = np.zeros((r, M), dtype=np.uint8)
        for j in range(r):
            h = frag_helper[j]
            for row in range(alpha):
                c = coef[j, row]
                if c != 0:
                    mr = mul[c]
                    for col in range(M):
                        R[j, col] ^= mr[nodes[h, row, col]]
        for i in range(alpha_new):
            for col in range(M):
                new_out[i, col] = 0
            for j in range(r):
                c = C[i, j]
                if c != 0:
                    mr = mul[c]
                    for col in range(M):
                        new_out[i, col] ^= mr[R[j, col]]

    # Only the row space of the new node matters, so reduce C to echelon
    # form: stored row i is fragment piv[i] plus E-weighted non-pivot fragments.
    E = C.copy()
    rank_c = _echelon(E, mul, inv)
    piv = np.empty(rank_c, dtype=np.int64)
    is_piv = np.zeros(r, dtype=np.bool_)
    for i in range(rank_c):
        for j in range(r):
            if E[i, j] != 0:
                piv[i] = j
                is_piv[j] = True
                break

    # Y holds discrete logs (zero -> ZERO_LOG), so a product is one lookup
    lcoef = np.empty((r, alpha), dtype=np.int64)
    for j in range(r):
        for row in range(alpha):
            cf = coef[j, row]
            lcoef[j, row] = log[cf] if cf != 0 else ZERO_LOG
    nsub = qdim.shape[1]
    qmax = Y.shape[3]
    Z = np.empty((r, qmax), dtype=np.uint8)
    NS = np.empty((rank_c, qmax), dtype=np.uint8)
    out = np.empty(r, dtype=np.bool_)
    for s in range(nsub):
        q = qdim[f, s]
        if q == 0:
            continue
        outside = 0
        for j in range(r):
            out[j] = not member[f, s, frag_helper[j]]
            if out[j]:
                outside += 1
        if outside < q or rank_c < q:
            return False
        for j in range(r):
            if not out[j]:
                continue
            h = frag_helper[j]
            for c in range(q):
                acc = np.uint8(0)
                for row in range(alpha):
                    acc ^= expx[lcoef[j, row] + Y[f, s, h, c, row]]
                Z[j, c] = acc
        for i in range(rank_c):
            pj = piv[i]
            if out[pj]:
                for c in range(q):
                    NS[i, c] = Z[pj, c]
            else:
                for c in range(q):
                    NS[i, c] = 0
            for j in range(r):
                if is_piv[j] or not out[j]:
                    continue
                e = E[i, j]
                if e != 0:
                    for c in range(q):
                        NS[i, c] ^= mul[e, Z[j, c]]
        if _small_rank(NS, q, mul, inv) < q:
            return False
    return True


@numba.njit(cache=True)
def _run_many(seeds, gens, nodes, survivors, member, qdim, Y, n_helpers, tmpl_rows, tmpl_count,
              alpha_new, per_fragment, eps, mul, inv, log, expx):
    n = nodes.shape[0]
    no_force = np.empty(0, dtype=np.int8)
    dummy = np.empty((1, 1), dtype=np.uint8)
    out = np.zeros(seeds.shape[0], dtype=np.bool_)
    for i in range(seeds.shape[0]):
        out[i] = _trial(seeds[i], gens[i] % n, nodes, survivors, member, qdim, Y, n_helpers,
                        tmpl_rows, tmpl_count, alpha_new, per_fragment, eps, no_force,
                        mul, inv, log, expx, False, dummy)
    return out


# --- precomputation ----------------------------------------------------------

@dataclass(frozen=True)
class RepairTables:
    survivors: np.ndarray   # (n, n-1) surviving node ids per failed node
    member: np.ndarray      # (n, S, n) node in subset
    qdim: np.ndarray        # (n, S) codimension of span(subset)
    Y: np.ndarray           # (n, S, n, qmax, alpha) logs of stored rows times Q_S, transposed


def repair_tables(sys: StorageSystem) -> RepairTables:
    cached = sys._tables.get("repair")
    if cached is not None:
        return cached
    p = sys.params
    n, k, M, alpha = p.n, p.k, sys.M, sys.alpha
    survivors = np.array([[h for h in range(n) if h != f] for f in range(n)], dtype=np.int64)
    subsets = [list(itertools.combinations(survivors[f].tolist(), k - 1)) for f in range(n)]
    nsub = len(subsets[0])
    bases = [[null_space(sys.stacked(s)) if s else np.eye(M, dtype=np.uint8) for s in subs]
             for subs in subsets]
    qmax = max(1, max(b.shape[1] for row in bases for b in row))
    size = n * nsub * n * alpha * qmax
    if size > TABLE_LIMIT:
        raise ParameterError(f"repair tables would need {size} bytes; system too large to simulate")
    member = np.zeros((n, nsub, n), dtype=np.bool_)
    qdim = np.zeros((n, nsub), dtype=np.int64)
    Y = np.full((n, nsub, n, qmax, alpha), ZERO_LOG, dtype=np.int16)
    for f in range(n):
        for s, (subset, basis) in enumerate(zip(subsets[f], bases[f])):
            member[f, s, list(subset)] = True
            q = basis.shape[1]
            qdim[f, s] = q
            if q == 0:
                continue
            for h in survivors[f]:
                if not member[f, s, h]:
                    Y[f, s, h, :q, :] = log_table(matmul(sys.nodes[h], basis).T)
    tables = RepairTables(survivors, member, qdim, Y)
    sys._tables["repair"] = tables
    return tables


# --- scheme plumbing ---------------------------------------------------------

@dataclass(frozen=True)
class SimPlan:
    """Integer-scaled view of a scheme: system geometry plus per-helper link templates."""

    params: SystemParams        # integer M
    alpha: int
    alpha1: int
    layout: str
    beta: Optional[int]         # stripes for the product-matrix layout
    n_helpers: int
    templates: tuple            # ((rows, fragments), ...) per helper
    scale: int


def plan_for(p: SystemParams, scheme: Scheme) -> SimPlan:
    """Scale fractional parameters to integers and pick a storage layout."""
    if isinstance(scheme, HelperScheme):
        q = p.with_d(scheme.d)
        scheme.check(q)
        msr, mbr = msr_point(q), mbr_point(q)
        if scheme.beta == msr.beta:
            family, alpha = Family.MSR, msr.alpha
        elif scheme.beta == mbr.beta:
            family, alpha = Family.MBR, mbr.alpha
        else:
            raise ParameterError("helper simulation needs beta at the MSR or MBR point of d")
        s = integer_scale(q.M, alpha, scheme.beta)
        qi = q.scaled(s)
        a, b = int(alpha * s), int(scheme.beta * s)
        layout = RANDOM if family is Family.MSR else PRODUCT_MATRIX
        return SimPlan(qi, a, a, layout, b, scheme.d_prime, ((a, b),), s)

    if isinstance(scheme, TwoLayerAllocation):
        msr, mbr = msr_point(p), mbr_point(p)
        if scheme.alpha1 == msr.alpha:
            layout = RANDOM
        elif (scheme.alpha1, scheme.beta1) == (mbr.alpha, mbr.beta):
            layout = PRODUCT_MATRIX
        else:
            raise ParameterError("two-layer simulation needs an MSR or MBR base layer")
        s = integer_scale(p.M, scheme.alpha1, scheme.alpha2, scheme.beta1, scheme.beta2)
        qi = p.scaled(s)
        a1, a2 = int(scheme.alpha1 * s), int(scheme.alpha2 * s)
        b1, b2 = int(scheme.beta1 * s), int(scheme.beta2 * s)
        # base batch from the alpha1 rows, extra batch mixes the whole node
        templates = ((a1, b1), (a1 + a2, b2))
        return SimPlan(qi, a1 + a2, a1, layout, b1 if layout == PRODUCT_MATRIX else None,
                       p.d, templates, s)

    raise TypeError(f"unsupported scheme {scheme!r}")


def build_system(plan: SimPlan, seed: int) -> StorageSystem:
    return init_system(plan.params, plan.alpha, seed, layout=plan.layout, beta=plan.beta,
                       alpha1=plan.alpha1)


def _template_arrays(plan: SimPlan):
    rows = np.array([t[0] for t in plan.templates], dtype=np.int64)
    counts = np.array([t[1] for t in plan.templates], dtype=np.int64)
    return rows, counts


def _check_system(sys: StorageSystem, plan: SimPlan) -> None:
    if sys.params != plan.params or sys.alpha != plan.alpha:
        raise ParameterError("storage system does not match the scaled scheme "
                             f"(system M={sys.M}, alpha={sys.alpha}; "
                             f"scheme M={plan.params.M}, alpha={plan.alpha})")


def _single(sys, plan, ch, mode, seed, forced, want_new):
    _check_system(sys, plan)
    t = repair_tables(sys)
    rows, counts = _template_arrays(plan)
    new = np.zeros((sys.alpha, sys.M), dtype=np.uint8)
    ok = _trial(np.uint64(seed & MASK64), sys.failed_node, sys.nodes, t.survivors, t.member,
                t.qdim, t.Y, plan.n_helpers, rows, counts, sys.alpha,
                ErasureMode(mode) is ErasureMode.PER_FRAGMENT, ch.p, forced, MUL, INV, LOG, EXPX,
                want_new, new)
    return bool(ok), new


def repair_trial(sys: StorageSystem, p: SystemParams, scheme: Scheme, ch: ChannelModel,
                 erasure_mode: ErasureMode = ErasureMode.BATCH, rng_seed: int = 0) -> bool:
    """One repair of node ``sys.generation mod n``; True iff the system stays MDS.

    ``p`` is the unscaled system the scheme refers to; ``sys`` must be its
    integer-scaled simulation (see :func:`plan_for`).
    """
    ok, _ = _single(sys, plan_for(p, scheme), ch, erasure_mode, rng_seed,
                    np.empty(0, dtype=np.int8), False)
    return ok


def repair(sys: StorageSystem, p: SystemParams, scheme: Scheme, ch: ChannelModel,
           erasure_mode: ErasureMode = ErasureMode.BATCH, rng_seed: int = 0,
           forced_links=None) -> tuple[bool, StorageSystem]:
    """Like :func:`repair_trial` but also returns the repaired system.

    ``forced_links`` (one 0/1 entry per link, helper-major) replaces the
    random erasure draws.
    """
    forced = (np.empty(0, dtype=np.int8) if forced_links is None
              else np.asarray(forced_links, dtype=np.int8))
    ok, new = _single(sys, plan_for(p, scheme), ch, erasure_mode, rng_seed, forced, True)
    return ok, sys.with_node(sys.failed_node, new)


# --- aggregation -------------------------------------------------------------

def describe(scheme: Scheme) -> str:
    if isinstance(scheme, HelperScheme):
        body = {"type": "helpers", "d": scheme.d, "d_prime": scheme.d_prime, "beta": str(scheme.beta)}
    else:
        body = {"type": "two-layer", "alpha1": str(scheme.alpha1), "alpha2": str(scheme.alpha2),
                "beta1": str(scheme.beta1), "beta2": str(scheme.beta2)}
    return json.dumps(body, sort_keys=True)


def analytic_p(p: SystemParams, scheme: Scheme, ch: ChannelModel) -> float:
    if isinstance(scheme, HelperScheme):
        return p_success_helpers(scheme, ch)
    return p_success_twolayer(p, scheme, ch)


@dataclass(frozen=True)
class SimReport:
    trials: int
    successes: int
    p_hat: float
    ci95: float
    p_analytic: float
    seed: int
    scheme_descriptor: str
    erasure_mode: str = ErasureMode.BATCH.value

    @property
    def deviation(self) -> float:
        return self.p_hat - self.p_analytic

    @property
    def sigma(self) -> float:
        """Binomial standard error at the analytic value."""
        p = self.p_analytic
        return math.sqrt(max(p * (1 - p), 0.0) / self.trials)

    def consistent(self, n_sigma: float = 3.0, deficit_allowance: float = 0.0) -> bool:
        """Within ``n_sigma`` above, and ``n_sigma`` plus the one-sided allowance below."""
        band = n_sigma * self.sigma
        return -(band + deficit_allowance) <= self.deviation <= band


def run_trials(p: SystemParams, scheme: Scheme, ch: ChannelModel, trials: int, master_seed: int,
               p_analytic: Optional[float] = None,
               erasure_mode: ErasureMode = ErasureMode.BATCH) -> SimReport:
    if trials < 1:
        raise ParameterError("trials must be >= 1")
    plan = plan_for(p, scheme)
    sys = build_system(plan, derive_seed(master_seed, 0))
    t = repair_tables(sys)
    rows, counts = _template_arrays(plan)
    seeds = np.array([derive_seed(master_seed, i + 1) for i in range(trials)], dtype=np.uint64)
    gens = np.arange(trials, dtype=np.int64)
    ok = _run_many(seeds, gens, sys.nodes, t.survivors, t.member, t.qdim, t.Y, plan.n_helpers,
                   rows, counts, sys.alpha, ErasureMode(erasure_mode) is ErasureMode.PER_FRAGMENT,
                   ch.p, MUL, INV, LOG, EXPX)
    successes = int(ok.sum())
    p_hat = successes / trials
    ci95 = 1.959963984540054 * math.sqrt(p_hat * (1 - p_hat) / trials)
    if p_analytic is None:
        p_analytic = analytic_p(p, scheme, ch)
    return SimReport(trials, successes, p_hat, ci95, p_analytic, master_seed, describe(scheme),
                     ErasureMode(erasure_mode).value)


# --- exhaustive oracle -------------------------------------------------------

def link_count(p: SystemParams, scheme: Scheme) -> int:
    if isinstance(scheme, HelperScheme):
        return scheme.d_prime
    return 2 * p.d


def exhaustive_check(p: SystemParams, scheme: Scheme, ch: ChannelModel,
                     system: Optional[StorageSystem] = None, seed: int = 0) -> float:
    """Sum of pattern probability times success over all 2^L link-erasure patterns.

    Success is the analytic rule (at least ``d`` helper batches, or the
    two-layer cut condition).  When ``system`` is given, each pattern the rule
    accepts must also survive one coding trial with that pattern forced.
    """
    L = link_count(p, scheme)
    if L > MAX_EXHAUSTIVE_LINKS:
        raise ParameterError(f"{L} links exceeds the exhaustive limit of {MAX_EXHAUSTIVE_LINKS}")
    eps = ch.p
    terms = []
    for index, pattern in enumerate(itertools.product((0, 1), repeat=L)):
        arrived = sum(pattern)
        prob = (1.0 - eps) ** arrived * eps ** (L - arrived)
        if isinstance(scheme, HelperScheme):
            ok = arrived >= scheme.d
        else:
            d1, d2 = sum(pattern[0::2]), sum(pattern[1::2])
            ok = regen_condition(p, scheme, d1, d2)
        if ok and system is not None:
            ok, _ = repair(system, p, scheme, ch, ErasureMode.BATCH, derive_seed(seed, index),
                           forced_links=pattern)
        if ok:
            terms.append(prob)
    return math.fsum(terms)
