from fractions import Fraction

import pytest

from erasure_repair.core import (
    INFEASIBLE,
    LOSSLESS,
    ChannelModel,
    CodePoint,
    Family,
    ParameterError,
    SystemParams,
    as_fraction,
    breakpoints,
    cut_feasible,
    f_threshold,
    g_slope,
    mbr_point,
    min_cut_alpha,
    msr_point,
    tradeoff_alpha_star,
    tradeoff_points,
)

FIG2 = SystemParams(1, 10, 5, 9)


def test_as_fraction_reads_float_repr():
    assert as_fraction(0.1) == Fraction(1, 10)
    assert as_fraction("3/7") == Fraction(3, 7)
    assert as_fraction(4) == Fraction(4)
    with pytest.raises(ParameterError):
        as_fraction("abc")
    with pytest.raises(ParameterError):
        as_fraction(True)


@pytest.mark.parametrize("args", [(1, 4, 4, 3), (1, 4, 2, 1), (1, 4, 2, 4), (0, 4, 2, 3), (-1, 4, 2, 3),
                                  (1, 4.5, 2, 3)])
def test_system_params_rejects_bad_geometry(args):
    with pytest.raises(ParameterError):
        SystemParams(*args)


def test_channel_model_domain():
    assert ChannelModel(0).delivery == 1
    assert ChannelModel(0.25).p == 0.25
    with pytest.raises(ParameterError):
        ChannelModel(1)
    with pytest.raises(ParameterError):
        ChannelModel(-0.1)


def test_msr_and_mbr_points_small_system():
    p = SystemParams(4, 4, 2, 3)
    msr, mbr = msr_point(p), mbr_point(p)
    assert (msr.alpha, msr.beta, msr.gamma) == (2, 1, 3)
    assert mbr.beta == Fraction(4, 5)
    assert mbr.alpha == mbr.gamma == Fraction(12, 5)
    assert msr.family is Family.MSR and mbr.family is Family.MBR


def test_mbr_bandwidth_for_helper_figures():
    p = SystemParams(10, 10, 5, 9)
    assert 9 * mbr_point(p.with_d(7)).beta == Fraction(18, 5)
    assert 6 * mbr_point(p.with_d(5)).beta == 4


def test_msr_equals_mbr_when_k_is_one():
    p = SystemParams(3, 5, 1, 4)
    assert msr_point(p).alpha == mbr_point(p).alpha == 3


def test_code_point_checks_gamma():
    with pytest.raises(ParameterError):
        CodePoint(Fraction(1), Fraction(1), Fraction(2), Family.MSR, 3)


def test_thresholds_hit_msr_and_mbr():
    assert f_threshold(FIG2, 0) == msr_point(FIG2).gamma
    assert f_threshold(FIG2, FIG2.k - 1) == mbr_point(FIG2).gamma
    assert g_slope(FIG2, 0) == 0
    with pytest.raises(ParameterError):
        f_threshold(FIG2, FIG2.k)


def test_breakpoints_scale_with_erasure():
    ch = ChannelModel(Fraction(1, 5))
    for lossless, lossy in zip(breakpoints(FIG2), breakpoints(FIG2, ch)):
        assert lossy == lossless * Fraction(5, 4)


def test_tradeoff_plateau_above_msr():
    assert tradeoff_alpha_star(FIG2, 10) == Fraction(1, 5)


def test_tradeoff_infeasible_below_mbr():
    assert tradeoff_alpha_star(FIG2, mbr_point(FIG2).gamma * Fraction(99, 100)) is INFEASIBLE
    assert min_cut_alpha(FIG2, mbr_point(FIG2).gamma * Fraction(99, 100)) is INFEASIBLE


def test_tradeoff_continuous_at_breakpoints():
    ch = ChannelModel(Fraction(1, 10))
    tiny = Fraction(1, 10 ** 12)
    for i, g in enumerate(breakpoints(FIG2, ch)[:-1]):
        left, right = tradeoff_alpha_star(FIG2, g - tiny, ch), tradeoff_alpha_star(FIG2, g, ch)
        assert abs(left - right) < Fraction(1, 10 ** 9), i


@pytest.mark.parametrize("eps", [Fraction(0), Fraction(1, 10), Fraction(1, 3)])
def test_closed_form_matches_cut_oracle(eps):
    ch = ChannelModel(eps)
    lo, hi = mbr_point(FIG2).gamma / 2, msr_point(FIG2).gamma / (1 - eps) * 2
    for j in range(120):
        g = lo + (hi - lo) * Fraction(j, 119)
        assert tradeoff_alpha_star(FIG2, g, ch) == min_cut_alpha(FIG2, g, ch)


def test_min_cut_alpha_is_minimal():
    ch = ChannelModel(Fraction(1, 10))
    g = Fraction(3, 10)
    a = min_cut_alpha(FIG2, g, ch)
    assert cut_feasible(FIG2, a, g / FIG2.d, ch)
    assert not cut_feasible(FIG2, a - Fraction(1, 10 ** 9), g / FIG2.d, ch)


def test_tradeoff_points_tags():
    pts = tradeoff_points(FIG2)
    assert [pt.family for pt in pts] == [Family.MSR] + [Family.INTERIOR] * 3 + [Family.MBR]
    assert pts[0].alpha == msr_point(FIG2).alpha
    assert pts[-1].alpha == mbr_point(FIG2).alpha
    assert all(cut_feasible(FIG2, pt.alpha, pt.beta) for pt in pts)


def test_infeasible_singleton():
    assert not INFEASIBLE
    assert repr(INFEASIBLE) == "INFEASIBLE"
    import pickle
    assert pickle.loads(pickle.dumps(INFEASIBLE)) is INFEASIBLE


def test_nonpositive_gamma_rejected():
    with pytest.raises(ParameterError):
        tradeoff_alpha_star(FIG2, 0)
    with pytest.raises(ParameterError):
        min_cut_alpha(FIG2, -1, LOSSLESS)
