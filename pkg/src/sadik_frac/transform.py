"""Sadik transform: forward quadrature, image table, operational rules,
limit theorems and contour inversion.

The transform of phi is Phi(v, alpha, beta) = v**(-beta) *
integral_0^inf exp(-t * v**alpha) * phi(t) dt; at (alpha, beta) = (1, 0)
it reduces to the classical Laplace transform, which is how the numeric
inversion works: substitute s = v**alpha, invert the Laplace image
F(s) = v**beta * Phi(v) on a fixed deformed contour.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from scipy.integrate import quad

from .core import (
    DenomFactor,
    ImageTerm,
    SadikParams,
    TransformImage,
    VPower,
    eval_image,
    eval_image_complex,
)
from .errors import (
    ContourFailure,
    DivergentTransform,
    InvalidOrder,
    InvalidParams,
    LengthMismatch,
    NegativeDelay,
    NotConvergent,
    PoleOnPositiveAxis,
    QuadratureFailure,
    UnsupportedFunction,
)
from .fractional_ops import FracOrder
from .mittag_leffler import MLSpec, ml_deriv

# ---------------------------------------------------------------------------
# function table


@dataclass(frozen=True)
class KnownFunction:
    """Descriptor of a time function with a closed-form image."""

    kind: str
    a: float = 0.0
    n: int = 0
    p: float = 1.0
    q: float = 1.0
    m: int = 0
    sign: int = 1

    @staticmethod
    def one() -> "KnownFunction":
        return KnownFunction("one")

    @staticmethod
    def power(n: int) -> "KnownFunction":
        if n < 0 or int(n) != n:
            raise InvalidParams(f"power exponent must be a nonnegative integer, got {n}")
        return KnownFunction("power", n=int(n))

    @staticmethod
    def exponential(a: float) -> "KnownFunction":
        return KnownFunction("exponential", a=float(a))

    @staticmethod
    def sine(a: float) -> "KnownFunction":
        return KnownFunction("sine", a=float(a))

    @staticmethod
    def heaviside(a: float) -> "KnownFunction":
        if a < 0.0:
            raise InvalidParams(f"heaviside onset must be >= 0, got {a}")
        return KnownFunction("heaviside", a=float(a))

    @staticmethod
    def dirac() -> "KnownFunction":
        return KnownFunction("dirac")

    @staticmethod
    def ml_kernel(p: float, q: float, m: int, a: float, sign: int = 1) -> "KnownFunction":
        """t**(p*m+q-1) * E^(m)_{p,q}(sign * a * t**p)."""
        MLSpec(p, q, m)  # parameter validation
        if sign not in (-1, 1):
            raise InvalidParams("sign must be +1 or -1")
        return KnownFunction("ml_kernel", a=float(a), p=float(p), q=float(q),
                             m=int(m), sign=int(sign))


def image_of(f: KnownFunction) -> TransformImage:
    """Exact closed-form image of a table function."""
    if f.kind == "one":
        return TransformImage((ImageTerm(1.0, VPower(a=-1.0, b=-1.0)),))
    if f.kind == "power":
        return TransformImage(
            (ImageTerm(float(math.factorial(f.n)), VPower(a=-(f.n + 1.0), b=-1.0)),)
        )
    if f.kind == "exponential":
        return TransformImage(
            (ImageTerm(1.0, VPower(b=-1.0), denom=(DenomFactor(1.0, f.a),)),)
        )
    if f.kind == "sine":
        return TransformImage(
            (ImageTerm(f.a, VPower(b=-1.0), denom=(DenomFactor(2.0, -f.a * f.a),)),)
        )
    if f.kind == "heaviside":
        return TransformImage((ImageTerm(1.0, VPower(a=-1.0, b=-1.0), delay=f.a),))
    if f.kind == "dirac":
        return TransformImage.constant(1.0)
    if f.kind == "ml_kernel":
        return TransformImage(
            (
                ImageTerm(
                    float(math.factorial(f.m)),
                    VPower(a=f.p - f.q, b=-1.0),
                    denom=(DenomFactor(f.p, f.sign * f.a, f.m + 1),),
                ),
            )
        )
    raise UnsupportedFunction(f"no closed-form image for kind {f.kind!r}")


def time_function(f: KnownFunction):
    """Scalar time-domain callable for a table function (dirac has none)."""
    if f.kind == "one":
        return lambda t: 1.0
    if f.kind == "power":
        n = f.n
        return lambda t: float(t) ** n
    if f.kind == "exponential":
        a = f.a
        return lambda t: math.exp(a * t)
    if f.kind == "sine":
        a = f.a
        return lambda t: math.sin(a * t)
    if f.kind == "heaviside":
        a = f.a
        return lambda t: 1.0 if t >= a else 0.0
    if f.kind == "ml_kernel":
        spec = MLSpec(f.p, f.q, f.m)
        expo = f.p * f.m + f.q - 1.0
        sa = f.sign * f.a

        def kernel(t: float) -> float:
            return t ** expo * ml_deriv(spec, sa * t ** f.p)

        return kernel
    raise UnsupportedFunction(f"kind {f.kind!r} has no pointwise time function")


def growth_rate(f: KnownFunction) -> float:
    """Exponential-order bound sigma with |f(t)| <~ e^(sigma t)."""
    if f.kind == "exponential":
        return max(f.a, 0.0)
    if f.kind == "ml_kernel" and f.sign > 0 and f.a > 0.0:
        return f.a ** (1.0 / f.p)
    return 0.0


def quad_breakpoints(f: KnownFunction) -> tuple[float, ...]:
    if f.kind == "heaviside" and f.a > 0.0:
        return (f.a,)
    return ()


# ---------------------------------------------------------------------------
# forward transform


def _cutoff(va: float, sigma: float, t0: float) -> float:
    # e^{-(T-t0)(va-sigma)} < 1e-16 with slack for polynomial factors
    span = 37.0
    for _ in range(3):
        span = 37.0 + 8.0 * math.log1p(span)
    return t0 + span / (va - sigma)


def forward_numeric(f, params: SadikParams, v: float, sigma: float = 0.0,
                    breakpoints: tuple[float, ...] = (), rtol: float = 1e-8) -> float:
    """Numeric transform value at real v > 0 by adaptive quadrature.

    `f` is a scalar callable or a KnownFunction (whose growth rate and
    integrand breakpoints are then filled in automatically).  `sigma` is the
    caller-declared exponential growth bound of f.
    """
    if isinstance(f, KnownFunction):
        sigma = max(sigma, growth_rate(f))
        breakpoints = tuple(breakpoints) + quad_breakpoints(f)
        f = time_function(f)
    params.require_numeric()
    if not (v > 0.0):
        raise InvalidParams(f"v must be positive, got {v}")
    va = v ** params.alpha
    if va <= sigma:
        raise DivergentTransform(
            f"v**alpha = {va} does not exceed the growth rate {sigma}"
        )
    t0 = max(breakpoints) if breakpoints else 0.0
    t_cut = _cutoff(va, sigma, t0)

    def integrand(t: float) -> float:
        damp = math.exp(-t * va)
        if damp == 0.0:
            return 0.0
        return damp * f(t)

    pts = [b for b in breakpoints if 0.0 < b < t_cut]
    res = quad(integrand, 0.0, t_cut, points=pts or None, limit=400,
               epsabs=0.0, epsrel=min(rtol * 1e-3, 1e-11), full_output=1)
    value, abserr = res[0], res[1]
    if abserr > max(10.0 * rtol * abs(value), 1e-290):
        raise QuadratureFailure(
            f"forward transform at v={v}: error estimate {abserr:.3g} "
            f"for value {value:.6g}"
        )
    return value * v ** (-params.beta)


# ---------------------------------------------------------------------------
# operational rules (image algebra)


def derivative_image(phi_image: TransformImage, params: SadikParams,
                     init, n: int) -> TransformImage:
    """Image of the n-th derivative: v**(n*alpha)*Phi - sum_k v**(k*alpha-beta)*phi^(n-1-k)(0)."""
    init = tuple(float(x) for x in init)
    if len(init) != n:
        raise LengthMismatch(f"need {n} initial values, got {len(init)}")
    if n < 1:
        raise InvalidOrder("derivative order must be >= 1")
    terms = list(phi_image.shifted_power(da=float(n)).terms)
    for k in range(n):
        c = init[n - 1 - k]
        if c != 0.0:
            terms.append(ImageTerm(-c, VPower(a=float(k), b=-1.0)))
    return TransformImage(tuple(terms)).merged()


def caputo_image(phi_image: TransformImage, params: SadikParams,
                 order, init) -> TransformImage:
    """Image of the Caputo derivative of order gamma:
    v**(g*alpha)*Phi - sum_k v**((g-n+k)*alpha-beta)*phi^(n-1-k)(0+)."""
    order = order if isinstance(order, FracOrder) else FracOrder(float(order))
    if order.is_integer:
        raise InvalidOrder("integer order: use derivative_image")
    g = order.gamma
    n = order.n
    init = tuple(float(x) for x in init)
    if len(init) != n:
        raise LengthMismatch(f"need {n} initial values, got {len(init)}")
    terms = list(phi_image.shifted_power(da=g).terms)
    for k in range(n):
        c = init[n - 1 - k]
        if c != 0.0:
            terms.append(ImageTerm(-c, VPower(a=g - n + k, b=-1.0)))
    return TransformImage(tuple(terms)).merged()


def integrate_image(phi_image: TransformImage, params: SadikParams) -> TransformImage:
    """Image of t -> integral_0^t phi: Phi / v**alpha."""
    return phi_image.shifted_power(da=-1.0)


def delay_image(phi_image: TransformImage, a: float) -> TransformImage:
    """Image of t -> phi(t-a)*step(t-a): exp(-a v**alpha) * Phi."""
    if a < 0.0:
        raise NegativeDelay(f"delay must be >= 0, got {a}")
    return phi_image.delayed(a)


def convolve_images(phi1: TransformImage, phi2: TransformImage,
                    params: SadikParams) -> TransformImage:
    """Image of the causal convolution: v**beta * Phi1 * Phi2."""
    terms = []
    for t1 in phi1.terms:
        for t2 in phi2.terms:
            terms.append(
                ImageTerm(
                    t1.coeff * t2.coeff,
                    t1.v_power.add(t2.v_power).plus(db=1.0),
                    t1.delay + t2.delay,
                    t1.denom + t2.denom,
                )
            )
    return TransformImage(tuple(terms)).merged()


@lru_cache(maxsize=8)
def _gauss_nodes(n: int):
    x, w = np.polynomial.legendre.leggauss(n)
    return tuple(x), tuple(w)


def time_convolution(f, g, t: float, n_nodes: int = 64) -> float:
    """Causal time-domain convolution integral_0^t f(tau) g(t-tau) dtau."""
    if t <= 0.0:
        return 0.0
    x, w = _gauss_nodes(n_nodes)
    total = 0.0
    for xi, wi in zip(x, w):
        tau = 0.5 * t * (xi + 1.0)
        total += wi * f(tau) * g(t - tau)
    return 0.5 * t * total


def delayed(f, a: float):
    """Time shift with causal cutoff: t -> f(t-a) for t >= a, else 0."""
    if a < 0.0:
        raise NegativeDelay(f"delay must be >= 0, got {a}")

    def shifted(t: float) -> float:
        return f(t - a) if t >= a else 0.0

    return shifted


# ---------------------------------------------------------------------------
# t^n multiplication rule


def tn_multiply_check(f, n: int, params: SadikParams, v: float,
                      sigma: float = 0.0, breakpoints: tuple[float, ...] = (),
                      fd_rel_step: float = 1e-4) -> tuple[float, float]:
    """Both sides of the t**n multiplication rule at v.

    lhs: numeric transform of t**n * f(t).
    rhs: (-1)**n (1/(alpha v**(alpha-1)) d/dv + beta/(alpha v**alpha))**n
         applied to the numeric transform of f, nested central differences.
    """
    if n < 1 or int(n) != n:
        raise InvalidParams(f"n must be a positive integer, got {n}")
    params.require_numeric()
    if isinstance(f, KnownFunction):
        sigma = max(sigma, growth_rate(f))
        breakpoints = tuple(breakpoints) + quad_breakpoints(f)
        base = time_function(f)
    else:
        base = f
    alpha, beta = params.alpha, params.beta

    @lru_cache(maxsize=None)
    def phi(w: float) -> float:
        return forward_numeric(base, params, w, sigma=sigma, breakpoints=breakpoints)

    def apply_rule(g):
        def og(w: float) -> float:
            h = fd_rel_step * w
            dg = (g(w + h) - g(w - h)) / (2.0 * h)
            return dg / (alpha * w ** (alpha - 1.0)) + beta * g(w) / (alpha * w ** alpha)

        return og

    rhs_fn = phi
    for _ in range(n):
        rhs_fn = apply_rule(rhs_fn)
    rhs = (-1.0) ** n * rhs_fn(v)
    lhs = forward_numeric(lambda t: t ** n * base(t), params, v,
                          sigma=sigma, breakpoints=breakpoints)
    return lhs, rhs


# ---------------------------------------------------------------------------
# limit theorems


def _as_evaluator(phi, params: SadikParams):
    if isinstance(phi, TransformImage):
        image = phi
        return lambda v: eval_image(image, v, params)
    return phi


_IVT_LEVELS = (1e3, 1e4, 1e5, 1e6)
_FVT_LEVELS = (1e-3, 1e-4, 1e-5, 1e-6)


def _limit_sequence(phi, params: SadikParams, levels, tol: float) -> float:
    """Evaluate v**(alpha+beta) * Phi along v**alpha = levels; demand that the
    final pair agrees to tol (relative, floored at 1)."""
    params.require_numeric()
    evaluator = _as_evaluator(phi, params)
    alpha, beta = params.alpha, params.beta
    xs = []
    for va in levels:
        v = va ** (1.0 / alpha)
        xs.append(v ** (alpha + beta) * evaluator(v))
    if abs(xs[-1] - xs[-2]) > tol * max(1.0, abs(xs[-1])):
        raise NotConvergent(
            f"limit sequence did not settle: {xs}"
        )
    return xs[-1]


def initial_value(phi, params: SadikParams, tol: float = 1e-4) -> float:
    """phi(0+) from the large-v**alpha limit of v**(alpha+beta) * Phi."""
    return _limit_sequence(phi, params, _IVT_LEVELS, tol)


def final_value(phi, params: SadikParams, tol: float = 1e-4) -> float:
    """lim phi(t) as t -> inf from the small-v**alpha limit of v**(alpha+beta) * Phi.

    Closed-form images are first inspected: any pole with Re(v**alpha) >= 0
    away from the origin (growing or oscillating time function) is rejected.
    """
    if isinstance(phi, TransformImage):
        for term in phi.terms:
            for f in term.denom:
                if f.pole > 0.0:
                    raise PoleOnPositiveAxis(
                        f"pole at v**alpha = {f.pole ** (1.0 / f.power):.6g} > 0"
                    )
                if f.pole < 0.0 and f.power >= 2.0:
                    # roots of x**p = pole sit at |arg x| = pi/p <= pi/2
                    raise PoleOnPositiveAxis(
                        "oscillatory image: poles on or right of the imaginary axis"
                    )
                if f.pole == 0.0 and f.power * f.multiplicity > 1.0:
                    raise PoleOnPositiveAxis(
                        "origin pole of order above one: no finite final value"
                    )
    return _limit_sequence(phi, params, _FVT_LEVELS, tol)


# ---------------------------------------------------------------------------
# numeric inversion


def inverse_numeric(phi, params: SadikParams, t: float, nodes: int = 32,
                    rtol: float = 1e-5, sigma0: float = 0.0) -> float:
    """Invert a transform numerically at time t > 0.

    Substitutes s = v**alpha (principal branch of s**(1/alpha)), forms the
    Laplace image F(s) = v**beta * Phi(v), and applies the trapezoid rule on
    a fixed cotangent contour, refined once from `nodes` to 2*`nodes`.
    `sigma0` shifts the contour right of any singularities if needed.
    """
    params.require_numeric()
    if not (t > 0.0):
        raise InvalidParams(f"t must be positive, got {t}")
    if isinstance(phi, TransformImage):
        image = phi
        phi_fn = lambda v: eval_image_complex(image, v, params)
    else:
        phi_fn = phi
    alpha, beta = params.alpha, params.beta

    def F(s: complex) -> complex:
        w = s ** (1.0 / alpha)
        return w ** beta * complex(phi_fn(w))

    # contour scale tied to the base node count so that doubling the node
    # count refines the trapezoid rule on the *same* contour
    r = 2.0 * nodes / (5.0 * t)

    def contour_sum(m: int) -> float:
        acc = 0.5 * math.exp((r + sigma0) * t) * F(sigma0 + r).real
        for k in range(1, m):
            th = math.pi * k / m
            cot = math.cos(th) / math.sin(th)
            s = r * th * (cot + 1j)
            resid = th + (th * cot - 1.0) * cot
            acc += (cmath.exp((sigma0 + s) * t) * F(sigma0 + s) * (1.0 + 1j * resid)).real
        return (r / m) * acc

    coarse = contour_sum(nodes)
    fine = contour_sum(2 * nodes)
    if abs(fine - coarse) > rtol * max(abs(fine), abs(coarse), 1e-2):
        raise ContourFailure(
            f"contour refinement moved the value from {coarse!r} to {fine!r} at t={t}"
        )
    return fine
