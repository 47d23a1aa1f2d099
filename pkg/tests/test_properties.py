import math

import numpy as np
import pytest
from hypothesis import assume, given, settings, strategies as st

from conftest import tmsv
from magnonics import measures
from magnonics.measures import Mode, TwoModeCM
from magnonics.model import SystemParams, build_drift, is_stable
from magnonics.steady_state import is_physical
from magnonics.sweep import steady_state


@st.composite
def stable_params(draw, symmetric=False):
    g1 = draw(st.floats(0.0, 4.0))
    kw = dict(
        delta_d=draw(st.floats(-3.0, 3.0)),
        delta_o1=draw(st.floats(-3.0, 3.0)),
        kappa_o1=draw(st.floats(0.05, 1.0)),
        g1=g1,
        lam=draw(st.floats(0.0, 0.5)),
        r=draw(st.floats(0.0, 2.5)),
        n_o1=draw(st.floats(0.0, 3.0)),
    )
    if symmetric:
        kw.update(delta_o2=kw["delta_o1"], kappa_o2=kw["kappa_o1"], g2=g1, n_o2=kw["n_o1"])
    else:
        kw.update(
            delta_o2=draw(st.floats(-3.0, 3.0)),
            kappa_o2=draw(st.floats(0.05, 1.0)),
            g2=draw(st.floats(0.0, 4.0)),
            n_o2=draw(st.floats(0.0, 3.0)),
        )
    p = SystemParams(**kw)
    assume(is_stable(build_drift(p)))
    return p


@settings(max_examples=200, deadline=None)
@given(stable_params())
def test_monogamy_and_nonnegativity(p):
    v = steady_state(p)
    assert is_physical(v)
    rep = measures.residual_contangle(v)
    assert min(rep.r_d, rep.r_o1, rep.r_o2) >= -1e-9
    assert rep.r_min >= 0
    for a, b in [(0, 1), (0, 2), (1, 2)]:
        m = measures.reduce(v, a, b)
        e = measures.log_negativity(m)
        s_ab, s_ba = measures.steering(m, "ab"), measures.steering(m, "ba")
        assert e >= 0 and s_ab >= 0 and s_ba >= 0
        assert measures.mancini_product(m) > 0
        g = measures.gip_or_none(m)
        assert g is None or g >= 0
        if s_ab > 0 or s_ba > 0:
            assert e > 0


@settings(max_examples=200, deadline=None)
@given(stable_params(symmetric=True))
def test_exchange_symmetry(p):
    m = measures.reduce(steady_state(p), Mode.MAGNON1, Mode.MAGNON2)
    assert abs(m.det_x - m.det_y) < 1e-8
    assert measures.steering(m, "ab") == pytest.approx(measures.steering(m, "ba"), abs=1e-8)


@settings(max_examples=100, deadline=None)
@given(stable_params())
def test_mancini_detection_implies_negativity(p):
    m = measures.reduce(steady_state(p), Mode.MAGNON1, Mode.MAGNON2)
    if measures.mancini_entangled(measures.mancini_product(m)):
        assert measures.log_negativity(m) > 0


@settings(max_examples=100, deadline=None)
@given(stable_params(), st.sampled_from(list(Mode)))
def test_partial_transpose_involution(p, solo):
    v = steady_state(p)
    flip = measures.momentum_flip(3, solo)
    np.testing.assert_array_equal(flip @ (flip @ v @ flip) @ flip, v)


@given(st.floats(0.0, 2.0))
def test_tmsv_closed_forms(s):
    m = TwoModeCM(tmsv(s))
    assert measures.log_negativity(m) == pytest.approx(2 * s, abs=1e-10)
    assert measures.steering(m, "ab") == pytest.approx(math.log(math.cosh(2 * s)), abs=1e-10)
