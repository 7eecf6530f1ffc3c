"""Self-verification suites for the operational rules.

Each suite runs a battery of dual-route checks (closed-form image versus
independent numeric evaluation) over a positive parameter lattice and
reports the worst observed error.  The CLI `verify` command is a thin
wrapper over these functions; the acceptance tests reuse several of them.
"""

from __future__ import annotations

import math
from dataclasses import dataclass


from .core import SadikParams, eval_image
from .errors import NotConvergent, PoleOnPositiveAxis
from .fractional_ops import caputo_derivative
from .transform import (
    KnownFunction,
    caputo_image,
    convolve_images,
    delayed,
    derivative_image,
    final_value,
    forward_numeric,
    image_of,
    initial_value,
    inverse_numeric,
    time_convolution,
    tn_multiply_check,
)

V_LATTICE = (1.5, 2.0, 4.0)
ALPHA_LATTICE = (0.5, 1.0, 2.0)
BETA_LATTICE = (-1.0, 0.0, 1.0)


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    worst_err: float
    tolerance: float

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return f"[{status}] {self.name}: worst={self.worst_err:.3e} tol={self.tolerance:.1e}"


def _lattice(restrict_va_above: float = 0.0):
    for v in V_LATTICE:
        for alpha in ALPHA_LATTICE:
            if v ** alpha <= restrict_va_above:
                continue
            for beta in BETA_LATTICE:
                yield v, SadikParams(alpha, beta)


def table_functions() -> list[KnownFunction]:
    """Concrete table instances used by the lattice agreement checks."""
    return [
        KnownFunction.one(),
        KnownFunction.power(0),
        KnownFunction.power(1),
        KnownFunction.power(2),
        KnownFunction.power(3),
        KnownFunction.exponential(1.0),
        KnownFunction.exponential(2.0),
        KnownFunction.sine(1.0),
        KnownFunction.sine(2.0),
        KnownFunction.heaviside(1.0),
        KnownFunction.heaviside(2.0),
        KnownFunction.ml_kernel(0.5, 1.0, 0, 1.0, -1),
        KnownFunction.ml_kernel(0.5, 1.0, 0, 2.0, -1),
        KnownFunction.ml_kernel(1.0, 1.0, 1, 1.0, 1),
        KnownFunction.ml_kernel(1.0, 2.0, 0, 1.0, 1),
    ]


def check_table_agreement(tol: float = 1e-6) -> list[CheckResult]:
    """Forward quadrature versus closed-form image for every table kind."""
    out = []
    from .transform import growth_rate

    for f in table_functions():
        img = image_of(f)
        worst = 0.0
        for v, params in _lattice(growth_rate(f)):
            num = forward_numeric(f, params, v)
            ref = eval_image(img, v, params)
            worst = max(worst, abs(num - ref) / max(abs(ref), 1e-300))
        label = f.kind if f.kind != "ml_kernel" else (
            f"ml_kernel(p={f.p},q={f.q},m={f.m},{'+' if f.sign > 0 else '-'}{f.a})"
        )
        if f.kind in ("power", "exponential", "sine", "heaviside") :
            label += f"({f.a if f.kind != 'power' else f.n})"
        out.append(CheckResult(f"table {label}", worst < tol, worst, tol))
    return out


def check_derivative_rule(tol: float = 1e-6) -> list[CheckResult]:
    """S[phi'] (and S[phi'']) versus the derivative-rule image."""
    cases = [
        ("(e^t)' = e^t", KnownFunction.exponential(1.0),
         lambda t: math.exp(t), [1.0], 1, 1.0),
        ("(sin 2t)' = 2cos 2t", KnownFunction.sine(2.0),
         lambda t: 2.0 * math.cos(2.0 * t), [0.0], 1, 0.0),
        ("(sin t)'' = -sin t", KnownFunction.sine(1.0),
         lambda t: -math.sin(t), [0.0, 1.0], 2, 0.0),
    ]
    out = []
    for name, f, dfun, init, n, sigma in cases:
        img = image_of(f)
        worst = 0.0
        for v, params in _lattice(sigma):
            rule = eval_image(derivative_image(img, params, init, n), v, params)
            num = forward_numeric(dfun, params, v, sigma=sigma)
            worst = max(worst, abs(num - rule) / max(abs(rule), 1e-300))
        out.append(CheckResult(f"derivative {name}", worst < tol, worst, tol))
    return out


def check_caputo_rule(tol: float = 1e-4, grid_n: int = 96) -> list[CheckResult]:
    """S[Caputo t^2] versus the fractional-derivative image formula."""
    img = image_of(KnownFunction.power(2))
    out = []
    for g in (0.3, 0.5, 0.8):
        def dfun(t, g=g):
            if t <= 0.0:
                return 0.0
            return caputo_derivative(lambda x: x * x, g, t, grid_n,
                                     deriv=lambda x: 2.0 * x)

        worst = 0.0
        for v, params in _lattice():
            rule = eval_image(caputo_image(img, params, g, [0.0]), v, params)
            num = forward_numeric(dfun, params, v, rtol=1e-7)
            worst = max(worst, abs(num - rule) / max(abs(rule), 1e-300))
        out.append(CheckResult(f"caputo rule gamma={g}", worst < tol, worst, tol))
    return out


def check_convolution_rule(tol: float = 1e-5) -> list[CheckResult]:
    """Time-domain convolution quadrature versus v**beta * Phi1 * Phi2."""
    pairs = [
        ("1 * 1", KnownFunction.one(), lambda t: 1.0,
         KnownFunction.one(), lambda t: 1.0),
        ("e^-t * 1", KnownFunction.exponential(-1.0), lambda t: math.exp(-t),
         KnownFunction.one(), lambda t: 1.0),
    ]
    out = []
    for name, f1, c1, f2, c2 in pairs:
        worst = 0.0
        for v, params in _lattice():
            img = convolve_images(image_of(f1), image_of(f2), params)
            ref = eval_image(img, v, params)
            num = forward_numeric(lambda t: time_convolution(c1, c2, t), params, v)
            worst = max(worst, abs(num - ref) / max(abs(ref), 1e-300))
        out.append(CheckResult(f"convolution {name}", worst < tol, worst, tol))
    return out


def check_delay_rule(tol: float = 1e-6) -> list[CheckResult]:
    """Shifted-function quadrature versus exp(-a v**alpha) * Phi."""
    out = []
    for fname, f, fc in [("heaviside", KnownFunction.one(), lambda t: 1.0),
                         ("ramp", KnownFunction.power(1), lambda t: float(t))]:
        for a in (0.5, 2.0):
            img = image_of(f)
            worst = 0.0
            for v, params in _lattice():
                ref = math.exp(-a * v ** params.alpha) * eval_image(img, v, params)
                num = forward_numeric(delayed(fc, a), params, v, breakpoints=(a,))
                worst = max(worst, abs(num - ref) / max(abs(ref), 1e-300))
            out.append(CheckResult(f"delay {fname} a={a}", worst < tol, worst, tol))
    return out


def check_initial_value(tol: float = 1e-4) -> list[CheckResult]:
    params = SadikParams(1.0, 0.0)
    out = []
    got = initial_value(image_of(KnownFunction.exponential(1.0)), params)
    out.append(CheckResult("ivt e^t -> 1", abs(got - 1.0) < tol, abs(got - 1.0), tol))
    got = initial_value(image_of(KnownFunction.sine(2.0)), params)
    out.append(CheckResult("ivt sin -> 0", abs(got) < tol, abs(got), tol))
    try:
        initial_value(image_of(KnownFunction.dirac()), params)
        out.append(CheckResult("ivt dirac rejects (improper)", False, math.inf, tol))
    except NotConvergent:
        out.append(CheckResult("ivt dirac rejects (improper)", True, 0.0, tol))
    return out


def check_final_value(tol: float = 1e-4) -> list[CheckResult]:
    params = SadikParams(1.0, 0.0)
    out = []
    got = final_value(image_of(KnownFunction.one()), params)
    out.append(CheckResult("fvt 1 -> 1", abs(got - 1.0) < tol, abs(got - 1.0), tol))
    got = final_value(image_of(KnownFunction.dirac()), params)
    out.append(CheckResult("fvt dirac -> 0", abs(got) < tol, abs(got), tol))
    try:
        final_value(image_of(KnownFunction.exponential(1.0)), params)
        out.append(CheckResult("fvt e^t rejects (growing)", False, math.inf, tol))
    except PoleOnPositiveAxis:
        out.append(CheckResult("fvt e^t rejects (growing)", True, 0.0, tol))
    try:
        final_value(image_of(KnownFunction.sine(1.0)), params)
        out.append(CheckResult("fvt sin rejects (oscillating)", False, math.inf, tol))
    except PoleOnPositiveAxis:
        out.append(CheckResult("fvt sin rejects (oscillating)", True, 0.0, tol))
    return out


def check_tn_rule(tol: float = 1e-3) -> list[CheckResult]:
    cases = [
        ("t*1", KnownFunction.one(), 1),
        ("t^2*1", KnownFunction.one(), 2),
        ("t*e^t", KnownFunction.exponential(1.0), 1),
    ]
    points = [(2.0, SadikParams(1.0, 0.0)), (2.0, SadikParams(0.5, 1.0)),
              (3.0, SadikParams(1.0, -1.0))]
    out = []
    for name, f, n in cases:
        worst = 0.0
        for v, params in points:
            from .transform import growth_rate

            if v ** params.alpha <= growth_rate(f):
                continue
            lhs, rhs = tn_multiply_check(f, n, params, v)
            worst = max(worst, abs(lhs - rhs) / max(abs(lhs), 1e-300))
        out.append(CheckResult(f"t^n rule {name}", worst < tol, worst, tol))
    return out


def check_inversion(tol: float = 1e-5) -> list[CheckResult]:
    cases = [
        ("one", KnownFunction.one(), lambda t: 1.0),
        ("t", KnownFunction.power(1), lambda t: t),
        ("e^-t", KnownFunction.exponential(-1.0), lambda t: math.exp(-t)),
        ("sin 2t", KnownFunction.sine(2.0), lambda t: math.sin(2.0 * t)),
    ]
    # grid avoids the zeros of sin 2t, where a relative target is ill-posed
    grid = (0.1, 0.3, 0.7, 1.0, 1.3, 1.9, 2.4, 2.9, 3.4, 4.1, 4.6, 5.0)
    out = []
    for par in (SadikParams(1.0, 0.0), SadikParams(2.0, 1.0)):
        for name, f, exact in cases:
            img = image_of(f)
            worst = 0.0
            for t in grid:
                ref = exact(t)
                if abs(ref) < 0.15:
                    continue
                got = inverse_numeric(img, par, t)
                worst = max(worst, abs(got - ref) / abs(ref))
            out.append(
                CheckResult(
                    f"inversion {name} (alpha={par.alpha}, beta={par.beta})",
                    worst < tol, worst, tol,
                )
            )
    return out


SUITES = {
    "derivative": check_derivative_rule,
    "caputo": check_caputo_rule,
    "convolution": check_convolution_rule,
    "delay": check_delay_rule,
    "ivt": check_initial_value,
    "fvt": check_final_value,
    "tn": check_tn_rule,
    "inversion": check_inversion,
}


def run_suite(name: str) -> list[CheckResult]:
    if name == "all":
        results = []
        for key in sorted(SUITES):
            results.extend(SUITES[key]())
        return results
    if name not in SUITES:
        raise KeyError(f"unknown suite {name!r}; choose from {sorted(SUITES)} or 'all'")
    return SUITES[name]()
