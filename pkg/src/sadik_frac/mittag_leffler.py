"""Two-parameter Mittag-Leffler function E_{p,q} and its derivatives, real arguments.

E_{p,q}(z) = sum_k z^k / Gamma(p*k + q), with E^{(m)} its m-th z-derivative.
Evaluation regimes:

* |z| <= Z_SWITCH: defining series; terms go through log-gamma (overflow
  safe for any p, q > 0) and are accumulated in double-double arithmetic.
* z < -Z_SWITCH, 0 < p < 2: algebraic tail
  E_{p,q}(z) ~ -sum_{k>=1} z^{-k} / Gamma(q - p*k), truncated at the
  smallest term.  The tail is accepted only when both its smallest-term
  floor and the neglected exponentially-small component (relevant for
  1 <= p < 2) are below tolerance; otherwise the series is retried with a
  cancellation guard.  Inputs where neither regime reaches tolerance
  raise NonConvergent instead of returning digits that are not there.
* z > Z_SWITCH: series up to the overflow horizon.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from scipy.special import rgamma

from .errors import InvalidParams, NonConvergent, Overflow

Z_SWITCH = 5.0

_MAX_TERMS = 20_000
_ASYM_MAX_TERMS = 400
_LOG_HUGE = 709.0  # log of the double-precision ceiling, with margin


@dataclass(frozen=True)
class MLSpec:
    """Parameters (p, q, m) of the m-th derivative of E_{p,q}."""

    p: float
    q: float
    m: int = 0

    def __post_init__(self):
        if not (self.p > 0.0):
            raise InvalidParams(f"p must be positive, got {self.p}")
        if not (self.q > 0.0):
            raise InvalidParams(f"q must be positive, got {self.q}")
        if self.m < 0 or int(self.m) != self.m:
            raise InvalidParams(f"m must be a nonnegative integer, got {self.m}")


def _two_sum(a: float, b: float) -> tuple[float, float]:
    s = a + b
    t = s - a
    return s, (a - (s - t)) + (b - t)


class _DoubleDouble:
    """Compensated accumulator, good for ~32 significant digits."""

    __slots__ = ("hi", "lo")

    def __init__(self):
        self.hi = 0.0
        self.lo = 0.0

    def add(self, x: float):
        s, e = _two_sum(self.hi, x)
        self.lo += e
        self.hi, self.lo = _two_sum(s, self.lo)

    def value(self) -> float:
        return self.hi + self.lo


def _series(p: float, q: float, m: int, z: float, loss_tol: float = 1e-6) -> float:
    """Defining series of E^{(m)}_{p,q}; stops on three consecutive negligible terms."""
    if z == 0.0:
        return math.factorial(m) * rgamma(p * m + q)

    log_az = math.log(abs(z))
    neg = z < 0.0
    acc = _DoubleDouble()
    small_run = 0
    max_log_term = -math.inf
    log_poch = math.lgamma(m + 1)  # log of (k+m)!/k!, updated incrementally
    for k in range(_MAX_TERMS):
        if k > 0:
            log_poch += math.log(k + m) - math.log(k)
        log_term = log_poch + k * log_az - math.lgamma(p * (k + m) + q)
        if log_term > _LOG_HUGE:
            if neg:
                raise NonConvergent(
                    f"series terms for E^({m})_({p},{q}) at z={z} overflow before converging"
                )
            raise Overflow(f"E^({m})_({p},{q}) at z={z} exceeds the floating-point range")
        max_log_term = max(max_log_term, log_term)
        term = math.exp(log_term)
        if neg and (k % 2 == 1):
            term = -term
        acc.add(term)
        if not math.isfinite(acc.hi):
            raise Overflow(f"E^({m})_({p},{q}) at z={z} exceeds the floating-point range")
        if abs(term) < 1e-16 * abs(acc.value()) + 5e-324:
            small_run += 1
            if small_run >= 3:
                break
        else:
            small_run = 0
    else:
        raise NonConvergent(
            f"series for E^({m})_({p},{q}) at z={z} did not converge in {_MAX_TERMS} terms"
        )
    total = acc.value()
    if neg:
        # alternating sums lose digits proportionally to the largest term
        cancellation = math.exp(max_log_term) * 1e-15
        if cancellation > loss_tol * max(1.0, abs(total)):
            raise NonConvergent(
                f"series cancellation for E^({m})_({p},{q}) at z={z} "
                f"loses too many digits (~{cancellation:.2g} absolute)"
            )
    return total


def _neglected_exponential(p: float, x: float) -> float:
    """Size of the exponential component the algebraic tail drops, arg = -x."""
    if p < 1.0:
        return 0.0  # purely algebraic sector
    return math.exp(x ** (1.0 / p) * math.cos(math.pi / p))


_LOG_PI = math.log(math.pi)


def _asymptotic(p: float, q: float, m: int, z: float) -> float:
    """Algebraic tail for z -> -inf, differentiated m times in z.

    term_k = (-1)^(k+1) * (k)_m * x^-(k+m) / Gamma(q - p*k)  with x = -z.
    Individual |1/Gamma| values dip to zero near poles, so truncation is
    driven by the smooth envelope Gamma(1 + p*k - q)/pi instead of the raw
    terms; the envelope at the stopping index bounds the truncation error.
    """
    x = -z
    if _neglected_exponential(p, x) > 1e-9:
        raise NonConvergent(
            f"algebraic tail at z={z} drops a non-negligible exponential (p={p})"
        )
    lx = math.log(x)
    log_poch = math.lgamma(m + 1)  # ln of (k)_m, updated incrementally
    total = 0.0
    prev_env = math.inf
    err_est = math.inf
    for k in range(1, _ASYM_MAX_TERMS + 1):
        if k > 1:
            log_poch += math.log(k - 1 + m) - math.log(k - 1)
        arg = q - p * k
        if arg >= 0.5:
            log_env = log_poch - (k + m) * lx - math.lgamma(arg)
        else:  # reflection envelope: |1/Gamma(arg)| <= Gamma(1-arg)/pi
            log_env = log_poch - (k + m) * lx + math.lgamma(1.0 - arg) - _LOG_PI
        env = math.exp(log_env) if log_env < 700.0 else math.inf
        if env > prev_env and k > m + 2:
            err_est = env  # first omitted term of the optimal truncation
            break
        err_est = env
        prev_env = env
        rg = float(rgamma(arg))
        if rg != 0.0:
            sign = 1.0 if (k % 2 == 1) else -1.0
            total += sign * math.exp(log_poch - (k + m) * lx) * rg
        if env < 1e-17 * max(1.0, abs(total)):
            break  # converged to roundoff
    if err_est > 1e-8 * max(1.0, abs(total)):
        raise NonConvergent(
            f"algebraic tail for E^({m})_({p},{q}) at z={z} bottoms out at {err_est:.3g}"
        )
    return total


def _ml_any(p: float, q: float, m: int, z: float) -> float:
    tail_applies = z < 0.0 and 0.0 < p < 2.0
    if z < -Z_SWITCH and tail_applies:
        try:
            return _asymptotic(p, q, m, z)
        except NonConvergent:
            pass
        # fallback series must honour the tail regime's absolute tolerance
        return _series(p, q, m, z, loss_tol=1e-8)
    try:
        return _series(p, q, m, z)
    except NonConvergent:
        # cancellation-limited series (small p, z near the regime edge):
        # the algebraic tail certifies its own error and often succeeds here
        if tail_applies:
            return _asymptotic(p, q, m, z)
        raise


def ml(spec: MLSpec, z: float) -> float:
    """E_{p,q}(z).  Requires spec.m == 0; use ml_deriv for derivative orders."""
    if spec.m != 0:
        raise InvalidParams("ml expects m=0; call ml_deriv for derivative orders")
    return _ml_any(spec.p, spec.q, 0, float(z))


def ml_deriv(spec: MLSpec, z: float) -> float:
    """m-th derivative of E_{p,q} at z: sum_k ((k+m)!/k!) z^k / Gamma(p(k+m)+q)."""
    return _ml_any(spec.p, spec.q, spec.m, float(z))


def ml_pq(p: float, q: float, z: float) -> float:
    """Convenience wrapper for E_{p,q}(z)."""
    return ml(MLSpec(p, q), z)
