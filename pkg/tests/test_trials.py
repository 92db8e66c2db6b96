from dataclasses import replace
from fractions import Fraction

import pytest

from erasure_repair.core import LOSSLESS, ChannelModel, ParameterError, SystemParams, mbr_point, msr_point
from erasure_repair.gfsim.storage import PRODUCT_MATRIX, RANDOM, is_mds
from erasure_repair.gfsim.trials import (
    ErasureMode,
    SimReport,
    build_system,
    derive_seed,
    exhaustive_check,
    plan_for,
    repair,
    repair_trial,
    run_trials,
    splitmix64,
)
from erasure_repair.reliability import HelperScheme, TwoLayerAllocation, p_success_helpers, p_success_twolayer

SMALL = SystemParams(4, 4, 2, 3)
FIG3 = SystemParams(10, 10, 5, 9)
TENTH = ChannelModel(Fraction(1, 10))
LOSSLESS_MSR = HelperScheme(3, 3, 1)
SMALL_2L = TwoLayerAllocation(2, 1, 1, 1)


def test_splitmix_reference_values():
    # first outputs of SplitMix64 seeded with 0
    assert derive_seed(0, 0) == 0xE220A8397B1DCDAF
    assert derive_seed(0, 1) == 0x6E789E6AA1B965F4
    assert splitmix64(0) == 0


def test_plan_scaling():
    plan = plan_for(FIG3, HelperScheme(7, 9, mbr_point(FIG3.with_d(7)).beta))
    assert plan.layout == PRODUCT_MATRIX
    assert plan.params.M == 50 and plan.alpha == 14 and plan.templates == ((14, 2),)
    plan = plan_for(SMALL, SMALL_2L)
    assert plan.layout == RANDOM and plan.alpha == 3 and plan.templates == ((2, 1), (3, 1))
    plan = plan_for(SystemParams(1, 10, 5, 9), HelperScheme(9, 9, msr_point(SystemParams(1, 10, 5, 9)).beta))
    assert plan.scale == 25 and plan.alpha == 5 and plan.templates == ((5, 1),)


def test_plan_rejects_off_family_beta():
    with pytest.raises(ParameterError):
        plan_for(SMALL, HelperScheme(3, 3, Fraction(1, 2)))
    with pytest.raises(ParameterError):
        plan_for(SMALL, TwoLayerAllocation(3, 0, 1, 0))


def test_repair_trial_deterministic():
    sys = build_system(plan_for(SMALL, SMALL_2L), 3)
    outs = [repair_trial(sys, SMALL, SMALL_2L, TENTH, rng_seed=s) for s in range(50)]
    assert outs == [repair_trial(sys, SMALL, SMALL_2L, TENTH, rng_seed=s) for s in range(50)]


def test_all_links_erased_fails():
    sys = build_system(plan_for(SMALL, LOSSLESS_MSR), 1)
    ok, _ = repair(sys, SMALL, LOSSLESS_MSR, LOSSLESS, forced_links=[0, 0, 0])
    assert not ok


def test_too_few_links_fails_and_enough_usually_succeeds():
    sys = build_system(plan_for(SMALL, LOSSLESS_MSR), 1)
    assert not repair(sys, SMALL, LOSSLESS_MSR, LOSSLESS, forced_links=[1, 1, 0])[0]
    wins = sum(repair(sys, SMALL, LOSSLESS_MSR, LOSSLESS, rng_seed=s, forced_links=[1, 1, 1])[0]
               for s in range(200))
    assert wins >= 180


def test_lossless_msr_rate():
    rep = run_trials(SMALL, LOSSLESS_MSR, LOSSLESS, 10_000, 11)
    # random coding over GF(2^8): about 6/256 of repairs hit a singular projection
    assert 0.96 <= rep.p_hat < 1.0
    assert rep.p_analytic == 1.0


def test_new_node_matches_reported_outcome():
    sys = build_system(plan_for(SMALL, SMALL_2L), 4)
    for s in range(40):
        ok, new = repair(sys, SMALL, SMALL_2L, TENTH, rng_seed=s)
        assert ok == is_mds(new)
        assert new.generation == sys.generation + 1


def test_chained_repairs_stay_mds():
    scheme = HelperScheme(5, 6, mbr_point(FIG3.with_d(5)).beta)
    sys = build_system(plan_for(FIG3, scheme), 2)
    seen = 0
    for s in range(40):
        ok, new = repair(sys, FIG3, scheme, TENTH, rng_seed=s)
        if ok:
            assert is_mds(new)
            sys = new
            seen += 1
    assert seen > 20


def test_run_trials_deterministic_and_order_free():
    a = run_trials(SMALL, SMALL_2L, TENTH, 500, 42)
    b = run_trials(SMALL, SMALL_2L, TENTH, 500, 42)
    assert a == b
    assert a.p_analytic == p_success_twolayer(SMALL, SMALL_2L, TENTH)
    sys = build_system(plan_for(SMALL, SMALL_2L), derive_seed(42, 0))
    manual = 0
    for i in reversed(range(500)):
        s = replace(sys, generation=i)
        manual += repair_trial(s, SMALL, SMALL_2L, TENTH, rng_seed=derive_seed(42, i + 1))
    assert manual == a.successes


def test_run_trials_helper_scheme_agrees():
    s = HelperScheme(5, 6, mbr_point(FIG3.with_d(5)).beta)
    rep = run_trials(FIG3, s, TENTH, 4000, 5)
    assert rep.p_analytic == p_success_helpers(s, TENTH)
    assert rep.consistent(3.0, 5 / 255)


def test_per_fragment_mode_runs():
    rep = run_trials(SMALL, SMALL_2L, TENTH, 2000, 5, erasure_mode=ErasureMode.PER_FRAGMENT)
    assert rep.erasure_mode == "fragment"
    assert 0.9 < rep.p_hat <= 1.0


def test_run_trials_validates():
    with pytest.raises(ParameterError):
        run_trials(SMALL, SMALL_2L, TENTH, 0, 1)


def test_sim_report_consistency_band():
    r = SimReport(10_000, 9900, 0.99, 0.002, 0.995, 1, "{}")
    assert r.deviation == pytest.approx(-0.005)
    assert not r.consistent(3.0)
    assert r.consistent(3.0, 0.01)
    above = SimReport(10_000, 10_000, 1.0, 0.0, 0.99, 1, "{}")
    assert not above.consistent(3.0, 0.5)


@pytest.mark.parametrize("eps", [0.0, 0.1, 0.37])
def test_exhaustive_helpers(eps):
    ch = ChannelModel(eps)
    s = HelperScheme(3, 3, 1)
    assert exhaustive_check(SMALL, s, ch) == pytest.approx((1 - eps) ** 3, abs=1e-15)
    s = HelperScheme(5, 6, 1)
    assert exhaustive_check(FIG3, s, ch) == pytest.approx(p_success_helpers(s, ch), abs=1e-12)


def test_exhaustive_small_values():
    assert exhaustive_check(SMALL, SMALL_2L, TENTH) == pytest.approx(0.999945, abs=1e-12)
    assert exhaustive_check(FIG3, HelperScheme(5, 6, 1), TENTH) == pytest.approx(0.885735, abs=1e-12)


def test_exhaustive_with_coding_trials():
    sys = build_system(plan_for(SMALL, SMALL_2L), 8)
    coded = exhaustive_check(SMALL, SMALL_2L, TENTH, system=sys)
    assert coded <= exhaustive_check(SMALL, SMALL_2L, TENTH) + 1e-15
    assert coded > 0.97


def test_exhaustive_size_limit():
    with pytest.raises(ParameterError):
        exhaustive_check(SystemParams(1, 12, 5, 11), TwoLayerAllocation(1, 0, 1, 0), TENTH)
