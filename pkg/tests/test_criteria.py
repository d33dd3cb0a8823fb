import math

import numpy as np
import pytest

from fourierpos.algebra import BasisMix, GaussPoly, exact_transform, is_nonneg, mix
from fourierpos.criteria import (
    CRITERIA_1D,
    CRITERIA_2D,
    TestVerdict,
    Witness,
    _moments_table,
    build_associates,
    even_moments_test,
    maximality_test,
    odd_moment_sign_test,
    run_checklist,
)
from fourierpos.experiments import FIG1_COEFFS

UNIT = GaussPoly(0.5, (1.0,), dim=1)
UNIT2 = GaussPoly(0.5, (1.0,), dim=2)
# r^2 exp(-r^2/2): global max 2/e at r = sqrt(2), not at the origin
F_MAX = GaussPoly(0.5, (0.0, 1.0), dim=1)
# transform exp(-s^2/2)(1 - s^2) has mu1 = -1
F_NEGMEAN = exact_transform(GaussPoly(0.5, (1.0, -1.0), dim=1))
F_DEMO = GaussPoly(0.5, FIG1_COEFFS, dim=1)


def test_maximality_clean_on_gaussian():
    v = maximality_test(UNIT)
    assert v.criterion_id == "maximality"
    assert not v.detected and v.witness is None
    assert v.cost > 0


def test_maximality_detects_off_origin_max():
    v = maximality_test(F_MAX)
    assert v.detected
    # golden refinement localizes the max to sub-1e-8
    assert v.witness.r == pytest.approx(math.sqrt(2.0), abs=1e-7)
    # margin is f(0) - f(max) = -2/e
    assert v.witness.margin == pytest.approx(-2.0 / math.e, rel=1e-9)
    assert v.witness.tag == "psi"


def test_maximality_custom_tag():
    v = maximality_test(F_MAX, tag="psi_b")
    assert v.witness.tag == "psi_b"


def test_build_associates_family():
    s = build_associates(UNIT, b=1.0, qmax=4)
    assert len(s.entries) == 10
    assert s.tags() == (
        "psi", "psi_2", "psi_4", "psi_6", "psi_8",
        "psi_b", "psi_b2", "psi_b4", "psi_b6", "psi_b8",
    )
    assert s.base is UNIT
    assert s.b == 1.0 and s.qmax == 4
    assert len(build_associates(UNIT, b=None, qmax=4).entries) == 5
    only = build_associates(UNIT, b=None, qmax=0)
    assert only.tags() == ("psi",) and only.b == 0.0
    with pytest.raises(ValueError):
        build_associates(UNIT, qmax=-1)


def test_associates_preserve_transform_positivity():
    # if the base transform is nonnegative, every associate's is too; build
    # such bases as transforms of manifestly nonnegative functions
    positives = [
        GaussPoly(0.5, (1.0, 1.0)),
        GaussPoly(0.5, (1.0, -2.0, 1.0)),
        GaussPoly(0.8, (0.5, 0.0, 0.3)),
        GaussPoly(0.3, (2.0,)),
    ]
    grid = np.linspace(0.0, 15.0, 3001)
    for g in positives:
        assert is_nonneg(g).ok
        f = exact_transform(g)
        s = build_associates(f, b=1.0, qmax=4)
        for _tag, h in s.entries:
            ht = exact_transform(h)
            scale = max(abs(c) for c in ht.coeffs)
            # two transforms plus eight derivative passes leave ~1e-12 dust,
            # so the grid check replaces the exact root isolation here
            assert ht.eval(grid).min() >= -1e-10 * scale


def test_even_moments_detects_negative_origin():
    c = (0.661713, -0.620937, -0.032473, 0.270186, -0.320185)
    f = mix(BasisMix(dim=1, c=c))
    v = even_moments_test(build_associates(f, b=None, qmax=4))
    assert v.detected and v.witness.tag == "psi_2"
    assert v.witness.r == 0.0 and v.witness.margin < 0.0


def test_even_moments_clean_on_gaussian():
    v = even_moments_test(build_associates(UNIT, b=1.0, qmax=4))
    assert not v.detected


def test_odd_moment_sign():
    table = _moments_table(build_associates(F_NEGMEAN, b=None, qmax=0))
    v = odd_moment_sign_test(table)
    assert v.detected and v.witness.tag == "psi"
    assert v.witness.margin == pytest.approx(-1.0, rel=1e-8)
    clean = odd_moment_sign_test(_moments_table(build_associates(UNIT, b=1.0, qmax=2)))
    assert not clean.detected


def test_checklist_order_1d():
    verdicts = run_checklist(UNIT)
    assert [v.criterion_id for v in verdicts] == [
        "maximality", "even_moments", "odd_moment_sign", "toeplitz3",
        "cosh", "cosh_cos", "omega8", "multicomponent",
    ]
    assert not any(v.detected for v in verdicts)


def test_checklist_order_2d():
    verdicts = run_checklist(UNIT2)
    assert [v.criterion_id for v in verdicts] == [
        "maximality", "even_moments", "odd_moment_sign", "toeplitz3", "I0",
    ]
    assert not any(v.detected for v in verdicts)


def test_checklist_selection_validation():
    with pytest.raises(ValueError):
        run_checklist(UNIT, ("I0",))
    with pytest.raises(ValueError):
        run_checklist(UNIT2, ("cosh",))
    with pytest.raises(ValueError):
        run_checklist(UNIT, ("fft_positivity",))
    assert set(CRITERIA_2D) - set(CRITERIA_1D) == {"I0"}


def test_checklist_demo_function_profile():
    # order-3 scan misses it, order-4 and the convexity bound catch it
    verdicts = {v.criterion_id: v for v in run_checklist(F_DEMO, ("toeplitz", "cosh"), orders=(3, 4))}
    assert not verdicts["toeplitz3"].detected
    assert verdicts["toeplitz4"].detected
    assert verdicts["toeplitz4"].witness.r == pytest.approx(0.025)
    assert verdicts["cosh"].detected
    assert verdicts["cosh"].witness.r == pytest.approx(1.31, abs=1e-9)
    assert verdicts["cosh"].witness.margin == pytest.approx(-0.0109267, abs=1e-6)


def test_checklist_early_exit():
    verdicts = run_checklist(F_MAX, early_exit=True)
    assert len(verdicts) == 1
    assert verdicts[0].criterion_id == "maximality" and verdicts[0].detected
    full = run_checklist(F_MAX)
    assert len(full) == len(CRITERIA_1D)


def test_checklist_witness_names_associate():
    # base is clean under the convexity bound; its convolution is not
    verdicts = run_checklist(F_NEGMEAN, ("cosh",), b=1.0, qmax=1)
    (v,) = verdicts
    assert v.detected and v.witness.tag == "psi_b"


def test_checklist_multicomponent_negative_mean():
    (v,) = run_checklist(F_NEGMEAN, ("multicomponent",), mc_widths=(5.0,), mc_weights=(0.5,))
    assert v.detected
    assert v.witness.tag == "conv_b=5"
    assert v.witness.margin < 0.0


def test_checklist_costs_positive():
    for v in run_checklist(UNIT, b=1.0, qmax=1):
        assert v.cost > 0


def test_verdict_types():
    v = TestVerdict("cosh", True, Witness("psi", 1.0, -0.5), 10)
    assert v.criterion_id == "cosh" and v.witness.margin == -0.5
