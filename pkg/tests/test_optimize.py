from fractions import Fraction

import pytest

from erasure_repair.core import INFEASIBLE, LOSSLESS, ChannelModel, Family, ParameterError, SystemParams, mbr_point, msr_point
from erasure_repair.optimize import (
    Budget,
    beta2_candidates,
    helper_candidates,
    optimize_helpers,
    optimize_twolayer,
    region_map,
)
from erasure_repair.reliability import TwoLayerAllocation, p_success_helpers, p_success_twolayer

FIG3 = SystemParams(10, 10, 5, 9)
SMALL = SystemParams(4, 4, 2, 3)
TENTH = ChannelModel(Fraction(1, 10))


def test_budget_validation():
    with pytest.raises(ParameterError):
        Budget(0)
    with pytest.raises(ParameterError):
        Budget(1, -1)


def test_helper_optimum_under_bandwidth_cap():
    r = optimize_helpers(FIG3, Family.MBR, Budget(5), TENTH)
    assert (r.argmax.d, r.argmax.d_prime) == (6, 9)
    assert r.p_star == pytest.approx(0.991669, abs=5e-7)
    # the hand count in the reference lists 15; direct enumeration gives 13
    assert r.feasible_count == 13
    assert r.p_star == p_success_helpers(r.argmax, TENTH)


def test_helper_candidate_values():
    by_pair = {(s.d, s.d_prime): p_success_helpers(s, TENTH)
               for s in helper_candidates(FIG3, Family.MBR, Budget(5))}
    assert by_pair[(7, 9)] == pytest.approx(0.947028, abs=5e-7)
    assert by_pair[(5, 7)] == pytest.approx(0.9743085, abs=5e-8)


def test_helper_lossless_tie_break():
    r = optimize_helpers(FIG3, Family.MBR, Budget(5), LOSSLESS)
    assert r.p_star == 1.0
    smallest = min((s.d_prime, s.d) for s in r.ties)
    assert (r.argmax.d_prime, r.argmax.d) == smallest
    assert (r.argmax.d, r.argmax.d_prime) == (5, 5)


def test_helper_infeasible_below_cheapest():
    cheapest = min(d * mbr_point(FIG3.with_d(d)).beta for d in range(5, 10))
    assert optimize_helpers(FIG3, Family.MBR, Budget(cheapest * Fraction(99, 100)), TENTH) is INFEASIBLE
    assert optimize_helpers(FIG3, Family.MBR, Budget(cheapest), TENTH) is not INFEASIBLE


def test_helper_rejects_interior_family():
    with pytest.raises(ParameterError):
        optimize_helpers(FIG3, Family.INTERIOR, Budget(5), TENTH)


def test_helper_scale_invariance():
    for c in (Fraction(1, 3), Fraction(7, 2)):
        r1 = optimize_helpers(FIG3, Family.MSR, Budget(6), TENTH)
        r2 = optimize_helpers(SystemParams(FIG3.M * c, 10, 5, 9), Family.MSR, Budget(6 * c), TENTH)
        assert (r1.argmax.d, r1.argmax.d_prime) == (r2.argmax.d, r2.argmax.d_prime)
        assert r1.p_star == r2.p_star


def test_helper_without_spare_nodes():
    # n = k + 1 leaves exactly one candidate, d = d' = k
    p = SystemParams(10, 6, 5, 5)
    r = optimize_helpers(p, Family.MBR, Budget(100), TENTH)
    assert (r.argmax.d, r.argmax.d_prime, r.feasible_count) == (5, 5, 1)
    assert r.p_star == pytest.approx(0.9 ** 5, abs=1e-15)


def test_helper_equal_pairs_prefer_fewer_helpers():
    # with d' = d every helper must arrive, so p_s = (1-eps)^d falls with d
    p = SystemParams(10, 10, 5, 9)
    cap = 5 * mbr_point(p.with_d(5)).beta
    equal = [s for s in helper_candidates(p, Family.MBR, Budget(cap)) if s.d == s.d_prime]
    best = max(equal, key=lambda s: (p_success_helpers(s, TENTH), -s.d))
    assert best.d == min(s.d for s in equal)


def test_twolayer_small_example():
    r = optimize_twolayer(SMALL, Budget(6, 3), TENTH)
    assert r.argmax == TwoLayerAllocation(2, 1, 1, 1)
    assert r.p_star == pytest.approx(0.999945, abs=1e-12)
    assert r.p_star == p_success_twolayer(SMALL, r.argmax, TENTH)
    assert r.p_star > p_success_twolayer(SMALL, TwoLayerAllocation(2, 0, 1, 0), TENTH)


def test_twolayer_no_grid_point_beats_optimum():
    r = optimize_twolayer(SMALL, Budget(6, 3), TENTH)
    for j in range(0, 101):
        for anchor in (msr_point(SMALL), mbr_point(SMALL)):
            cap = min(3 - anchor.alpha, Fraction(6, 3) - anchor.beta)
            if cap < 0:
                continue
            b2 = cap * Fraction(j, 100)
            a = TwoLayerAllocation(anchor.alpha, b2, anchor.beta, b2)
            assert p_success_twolayer(SMALL, a, TENTH) <= r.p_star


def test_twolayer_storage_below_msr_infeasible():
    p = SystemParams(1, 10, 5, 9)
    assert optimize_twolayer(p, Budget(10, Fraction(19, 100)), TENTH) is INFEASIBLE


def test_twolayer_low_storage_prefers_msr():
    p = SystemParams(1, 10, 5, 9)
    r = optimize_twolayer(p, Budget(2, Fraction(21, 100)), TENTH)
    assert r.family is Family.MSR


def test_twolayer_requires_storage_cap_and_grid():
    with pytest.raises(ParameterError):
        optimize_twolayer(SMALL, Budget(6), TENTH)
    with pytest.raises(ParameterError):
        optimize_twolayer(SMALL, Budget(6, 3), TENTH, grid=1)


def test_beta2_candidates_contain_flips():
    anchor = msr_point(SMALL)
    cands = beta2_candidates(SMALL, anchor, Fraction(1), 4)
    assert Fraction(1) in cands and Fraction(1, 2) in cands and Fraction(0) in cands
    assert cands == sorted(set(cands))


def test_twolayer_budget_monotone():
    for a_th in (Fraction(5, 2), 3, 4):
        prev = -1.0
        for g in (3, 4, 6, 9):
            r = optimize_twolayer(SMALL, Budget(g, a_th), TENTH, grid=16)
            cur = -1.0 if r is INFEASIBLE else r.p_star
            assert cur >= prev
            prev = cur


def test_region_map_shapes_and_tags():
    p = SystemParams(1, 10, 5, 9)
    gam = [msr_point(p).gamma, 2 * msr_point(p).gamma]
    alp = [msr_point(p).alpha, 2 * mbr_point(p).alpha]
    rm = region_map(p, TENTH, gam, alp, grid=8)
    assert len(rm.tags) == 2 and all(len(row) == 2 for row in rm.tags)
    assert rm.tags[0] == ["MSR", "MSR"]
    assert rm.p_mbr[0] == [None, None]


def test_region_map_mbr_wins_only_below_msr_bandwidth():
    p = SystemParams(1, 10, 5, 9)
    gamma = (mbr_point(p).gamma + msr_point(p).gamma) / 2
    rm = region_map(p, TENTH, [gamma], [2 * mbr_point(p).alpha], grid=8)
    assert rm.tags == [["MBR"]]


def test_region_map_rejects_unsorted():
    with pytest.raises(ParameterError):
        region_map(SMALL, TENTH, [2, 1], [3])
    with pytest.raises(ParameterError):
        region_map(SMALL, TENTH, [], [3])
