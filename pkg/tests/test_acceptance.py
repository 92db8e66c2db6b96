"""Acceptance criteria 1-9, each at its stated tolerance.

Every test prints one ``criterion N: PASS|FAIL`` line (collected into the
pytest terminal summary by conftest.py) and fails if any of its checks fail.
Run this file directly for the same lines without pytest.
"""

import sys

import pytest

from erasure_repair import validation as v

VERDICTS: dict[int, str] = {}


def _judge(n: int, checks) -> None:
    bad = [c for c in checks if not c.passed]
    verdict = "PASS" if not bad else "FAIL"
    detail = "; ".join(f"{c.name}: observed {c.observed}" for c in bad) or \
        f"{len(checks)} checks"
    VERDICTS[n] = f"criterion {n}: {verdict} ({detail})"
    print(VERDICTS[n])
    for c in checks:
        print("   ", c.line())
    assert not bad, VERDICTS[n]


def test_criterion_1_mbr_bandwidth():
    _judge(1, v.criterion_1())


def test_criterion_2_repetition_and_any_of():
    _judge(2, v.criterion_2())


def test_criterion_3_tradeoff_vs_cut_oracle():
    _judge(3, v.criterion_3())


def test_criterion_4_helper_crossing():
    _judge(4, v.criterion_4())


def test_criterion_5_helper_optimum_sweep():
    _judge(5, v.criterion_5())


def test_criterion_6_twolayer_vs_enumeration():
    _judge(6, v.criterion_6())


@pytest.mark.slow
def test_criterion_7_monte_carlo_agreement():
    _judge(7, v.criterion_7(v.DEFAULT_TRIALS, v.DEFAULT_SEED))


def test_criterion_8_region_map_corners():
    _judge(8, v.criterion_8())


def test_criterion_9_property_suites():
    _judge(9, v.criterion_9())


if __name__ == "__main__":
    failed = 0
    for name, fn in list(globals().items()):
        if name.startswith("test_criterion_"):
            try:
                fn()
            except AssertionError:
                failed += 1
    print("\n".join(VERDICTS[n] for n in sorted(VERDICTS)))
    sys.exit(1 if failed else 0)
