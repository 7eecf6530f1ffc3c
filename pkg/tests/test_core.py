import math

import pytest
from hypothesis import given, settings, strategies as st

from sadik_frac import (
    DenomFactor,
    ImageTerm,
    KnownFunction,
    SadikParams,
    SampledSignal,
    TransformImage,
    VPower,
    eval_image,
    image_of,
    images_match,
)
from sadik_frac.errors import InvalidParams, PoleAtEvaluationPoint


def test_image_of_one_example():
    img = image_of(KnownFunction.one())
    assert eval_image(img, 2.0, SadikParams(1.0, 0.0)) == pytest.approx(0.5)


def test_exponential_pole_raises():
    img = image_of(KnownFunction.exponential(1.0))
    with pytest.raises(PoleAtEvaluationPoint):
        eval_image(img, 1.0, SadikParams(1.0, 0.0))


def test_sine_image_example():
    img = image_of(KnownFunction.sine(2.0))
    assert eval_image(img, 2.0, SadikParams(1.0, 1.0)) == pytest.approx(0.125)


def test_invalid_params():
    with pytest.raises(InvalidParams):
        SadikParams(0.0, 1.0)
    with pytest.raises(InvalidParams):
        SadikParams(-1.0, 0.0).require_numeric()
    with pytest.raises(InvalidParams):
        eval_image(image_of(KnownFunction.one()), -2.0, SadikParams(1.0, 0.0))


def test_vpower_evaluation():
    e = VPower(a=2.0, b=-1.0, c=0.5)
    assert e(1.5, 2.0) == pytest.approx(2 * 1.5 - 2.0 + 0.5)
    assert e.plus(da=1.0)(1.0, 0.0) == pytest.approx(3.5)


# classical Laplace pairs: at (alpha, beta) = (1, 0) every image must agree
LAPLACE_PAIRS = [
    (KnownFunction.one(), lambda s: 1.0 / s),
    (KnownFunction.power(2), lambda s: 2.0 / s ** 3),
    (KnownFunction.power(3), lambda s: 6.0 / s ** 4),
    (KnownFunction.exponential(-1.0), lambda s: 1.0 / (s + 1.0)),
    (KnownFunction.sine(2.0), lambda s: 2.0 / (s * s + 4.0)),
    (KnownFunction.heaviside(1.5), lambda s: math.exp(-1.5 * s) / s),
    (KnownFunction.dirac(), lambda s: 1.0),
]


@pytest.mark.parametrize("f,laplace", LAPLACE_PAIRS)
def test_laplace_reduction(f, laplace):
    img = image_of(f)
    params = SadikParams(1.0, 0.0)
    for s in (0.7, 1.3, 2.0, 5.0):
        assert eval_image(img, s, params) == pytest.approx(laplace(s), rel=1e-12)


@settings(max_examples=40, deadline=None)
@given(
    c=st.floats(-20.0, 20.0),
    v=st.floats(1.1, 6.0),
    alpha=st.floats(0.4, 2.5),
    beta=st.floats(-1.5, 1.5),
)
def test_scaling_homogeneity(c, v, alpha, beta):
    img = image_of(KnownFunction.sine(1.5)).plus(image_of(KnownFunction.power(1)))
    params = SadikParams(alpha, beta)
    base = eval_image(img, v, params)
    assert eval_image(img.scaled(c), v, params) == pytest.approx(c * base, rel=1e-12, abs=1e-12)


def test_plus_merges_like_terms():
    img = image_of(KnownFunction.power(2))
    summed = img.plus(img.scaled(2.0))
    assert len(summed.terms) == 1
    assert summed.terms[0].coeff == pytest.approx(6.0)  # 3 * 2!


def test_cancellation_drops_terms():
    img = image_of(KnownFunction.exponential(0.5))
    zero = img.plus(img.scaled(-1.0))
    assert zero.terms == ()


def test_images_match_partial_fractions():
    # 1/((x-a)(x-b)) = (1/(a-b)) * (1/(x-a) - 1/(x-b)) as v**alpha rationals
    a, b = 2.0, -1.0
    lhs = TransformImage(
        (ImageTerm(1.0, VPower(b=-1.0),
                   denom=(DenomFactor(1.0, a), DenomFactor(1.0, b))),)
    )
    rhs = (
        image_of(KnownFunction.exponential(a)).scaled(1.0 / (a - b))
        .plus(image_of(KnownFunction.exponential(b)).scaled(-1.0 / (a - b)))
    )
    assert images_match(lhs, rhs)
    assert not images_match(lhs, rhs.scaled(1.0 + 1e-6))


def test_denominator_factors_merge():
    t = ImageTerm(1.0, VPower(), denom=(DenomFactor(1.0, 2.0), DenomFactor(1.0, 2.0)))
    assert t.denom == (DenomFactor(1.0, 2.0, 2),)


def test_sampled_signal_validation():
    sig = SampledSignal([0.0, 1.0, 2.0], [5.0, 6.0, 7.0])
    assert len(sig) == 3
    with pytest.raises(InvalidParams):
        SampledSignal([0.0, 1.0], [1.0])
    with pytest.raises(InvalidParams):
        SampledSignal([1.0, 0.5], [1.0, 2.0])
    with pytest.raises(InvalidParams):
        SampledSignal([-0.5, 0.5], [1.0, 2.0])
    with pytest.raises(InvalidParams):
        SampledSignal([], [])


def test_pole_guard_is_relative():
    # a factor that is small in absolute terms but fine relative to v**alpha
    img = TransformImage((ImageTerm(1.0, VPower(), denom=(DenomFactor(1.0, 0.0),)),))
    val = eval_image(img, 1e-3, SadikParams(1.0, 0.0))
    assert val == pytest.approx(1e3)
