import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from sadik_frac import MLSpec, ml, ml_deriv, ml_pq
from sadik_frac.errors import InvalidParams, NonConvergent, Overflow

# frozen oracle values from a 60-digit reference summation of the
# defining series (and, for z = -2 at p = 0.1, a 1200-digit run)
ORACLE = [
    # (p, q, m, z, value, abs_tol)
    (0.5, 1.0, 0, 1.0, 5.0089800807622834663, 1e-11),
    (0.5, 1.0, 0, -1.0, 0.42758357615580700441, 1e-12),
    (0.7, 0.7, 0, -2.0, 0.077358224338521222028, 1e-12),
    (0.5, 0.5, 0, -1.0, 0.13660600739194928254, 1e-12),
    (1.0, 1.0, 0, 10.0, 22026.465794806716517, 1e-9),
    (0.5, 1.0, 0, -6.0, 0.092776567800538354389, 1e-8),
    (0.9, 1.0, 0, -10.0, 0.012820606051102099938, 1e-8),
    (1.5, 1.0, 0, -8.0, -0.20287153923872816229, 1e-10),
    (0.5, 0.5, 0, -7.5, 0.0048868855761811644096, 1e-8),
    (1.0, 2.0, 0, -50.0, 0.02, 1e-10),
    (0.3, 1.0, 0, -5.0, 0.13708086902, 1e-9),
    (0.1, 1.0, 0, -2.0, 0.32001533596, 1e-9),
    (0.6, 1.3, 0, -30.0, 0.0255520887133, 1e-10),
    (1.0, 1.0, 1, 0.3, 1.349858807576003089, 1e-10),
    (0.6, 1.1, 2, -1.5, 0.16593984125808883576, 1e-10),
    (0.5, 1.0, 1, -3.0, 0.05437226000717287138, 1e-9),
]


@pytest.mark.parametrize("p,q,m,z,value,tol", ORACLE)
def test_against_frozen_series_oracle(p, q, m, z, value, tol):
    assert ml_deriv(MLSpec(p, q, m), z) == pytest.approx(value, abs=tol)


def test_exp_identity():
    for z in np.linspace(-5, 5, 201):
        assert abs(ml_pq(1.0, 1.0, z) - math.exp(z)) < 1e-10


def test_cos_identity():
    for x in np.linspace(0, 5, 201):
        assert abs(ml_pq(2.0, 1.0, -x * x) - math.cos(x)) < 1e-10


def test_expm1_identity():
    for z in np.linspace(-3, 3, 201):
        if abs(z) < 1e-9:
            continue
        assert abs(z * ml_pq(1.0, 2.0, z) - (math.exp(z) - 1.0)) < 1e-10


def test_value_at_zero():
    assert ml_pq(0.7, 1.3, 0.0) == pytest.approx(1.0 / math.gamma(1.3), rel=1e-14)
    assert ml_deriv(MLSpec(1.0, 1.0, 1), 0.0) == pytest.approx(1.0, rel=1e-14)
    assert ml_deriv(MLSpec(0.5, 1.0, 3), 0.0) == pytest.approx(
        6.0 / math.gamma(0.5 * 3 + 1), rel=1e-13
    )


def test_ml_deriv_m0_matches_ml():
    spec0 = MLSpec(0.8, 1.2)
    for z in (-4.0, -0.3, 0.0, 2.5):
        assert ml(spec0, z) == ml_deriv(spec0, z)


def test_ml_rejects_positive_m():
    with pytest.raises(InvalidParams):
        ml(MLSpec(1.0, 1.0, 2), 0.5)


@pytest.mark.parametrize("p", [0.5, 1.0, 1.5])
@pytest.mark.parametrize("q", [0.5, 1.0, 1.5])
def test_derivative_consistency_with_finite_differences(p, q):
    h = 1e-5
    for z in np.linspace(-2, 2, 9):
        fd = (ml_pq(p, q, z + h) - ml_pq(p, q, z - h)) / (2 * h)
        assert ml_deriv(MLSpec(p, q, 1), z) == pytest.approx(fd, abs=1e-6)


@settings(max_examples=60, deadline=None)
@given(
    p=st.floats(0.3, 1.8),
    q=st.floats(0.3, 2.0),
    k=st.integers(0, 30),
    z=st.floats(-4.0, 4.0),
)
def test_series_term_recurrence(p, q, k, z):
    # consecutive-term ratio must equal z * Gamma(pk+q) / Gamma(p(k+1)+q),
    # comparing the log-gamma route against direct gamma evaluation
    if z == 0.0:
        return
    log_t = lambda j: j * math.log(abs(z)) - math.lgamma(p * j + q)
    ratio = math.exp(log_t(k + 1) - log_t(k))
    direct = abs(z) * math.gamma(p * k + q) / math.gamma(p * (k + 1) + q)
    assert ratio == pytest.approx(direct, rel=1e-11)


def test_overflow_raises():
    with pytest.raises(Overflow):
        ml_pq(1.0, 1.0, 800.0)


def test_unreachable_accuracy_raises_not_convergent():
    # p in (1, 2) far out on the negative axis: series cancels catastrophically
    # and the algebraic tail still carries a sizeable exponential component
    with pytest.raises(NonConvergent):
        ml_pq(1.5, 1.0, -100.0)


def test_invalid_parameters():
    with pytest.raises(InvalidParams):
        MLSpec(0.0, 1.0)
    with pytest.raises(InvalidParams):
        MLSpec(1.0, -1.0)
    with pytest.raises(InvalidParams):
        MLSpec(1.0, 1.0, -2)
