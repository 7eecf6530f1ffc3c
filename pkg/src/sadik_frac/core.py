"""Shared parameter records, closed-form transform images, sampled signals.

A transform image is a finite sum of terms

    coeff * v**(a*alpha + b*beta + c) * exp(-delay * v**alpha)
          / prod_j (v**(p_j*alpha) - pole_j)**mult_j

which is closed under every operational rule implemented downstream
(derivative, Caputo, integration, delay, convolution), so image equality
reduces to coefficient comparison after clearing denominators.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from itertools import product

import numpy as np

from .errors import InvalidParams, PoleAtEvaluationPoint

POLE_GUARD = 1e-12


@dataclass(frozen=True)
class SadikParams:
    """Transform exponents (alpha, beta).  alpha must be nonzero;
    every numeric routine in this package additionally requires alpha > 0."""

    alpha: float
    beta: float = 0.0

    def __post_init__(self):
        if self.alpha == 0.0:
            raise InvalidParams("alpha must be a nonzero real number")

    def require_numeric(self) -> "SadikParams":
        if self.alpha <= 0.0:
            raise InvalidParams(f"numeric evaluation needs alpha > 0, got {self.alpha}")
        return self


@dataclass(frozen=True)
class VPower:
    """Exponent of v as an affine form a*alpha + b*beta + c."""

    a: float = 0.0
    b: float = 0.0
    c: float = 0.0

    def __call__(self, alpha: float, beta: float) -> float:
        return self.a * alpha + self.b * beta + self.c

    def plus(self, da: float = 0.0, db: float = 0.0, dc: float = 0.0) -> "VPower":
        return VPower(self.a + da, self.b + db, self.c + dc)

    def add(self, other: "VPower") -> "VPower":
        return VPower(self.a + other.a, self.b + other.b, self.c + other.c)


@dataclass(frozen=True)
class DenomFactor:
    """One factor (v**(power*alpha) - pole)**multiplicity."""

    power: float
    pole: float
    multiplicity: int = 1

    def __post_init__(self):
        if not (self.power > 0.0):
            raise InvalidParams(f"denominator power must be positive, got {self.power}")
        if self.multiplicity < 1 or int(self.multiplicity) != self.multiplicity:
            raise InvalidParams("denominator multiplicity must be a positive integer")


def _merge_factors(factors) -> tuple[DenomFactor, ...]:
    acc: dict[tuple[float, float], int] = {}
    for f in factors:
        key = (f.power, f.pole)
        acc[key] = acc.get(key, 0) + f.multiplicity
    return tuple(
        DenomFactor(p, pole, m) for (p, pole), m in sorted(acc.items())
    )


@dataclass(frozen=True)
class ImageTerm:
    coeff: float
    v_power: VPower = field(default_factory=VPower)
    delay: float = 0.0
    denom: tuple[DenomFactor, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "denom", _merge_factors(self.denom))

    def _key(self):
        return (
            self.v_power.a,
            self.v_power.b,
            self.v_power.c,
            self.delay,
            self.denom,
        )


@dataclass(frozen=True)
class TransformImage:
    terms: tuple[ImageTerm, ...]

    def __post_init__(self):
        object.__setattr__(self, "terms", tuple(self.terms))

    @staticmethod
    def constant(value: float) -> "TransformImage":
        return TransformImage((ImageTerm(value),))

    def scaled(self, c: float) -> "TransformImage":
        return TransformImage(
            tuple(
                ImageTerm(c * t.coeff, t.v_power, t.delay, t.denom) for t in self.terms
            )
        )

    def shifted_power(self, da=0.0, db=0.0, dc=0.0) -> "TransformImage":
        """Multiply every term by v**(da*alpha + db*beta + dc)."""
        return TransformImage(
            tuple(
                ImageTerm(t.coeff, t.v_power.plus(da, db, dc), t.delay, t.denom)
                for t in self.terms
            )
        )

    def delayed(self, a: float) -> "TransformImage":
        return TransformImage(
            tuple(
                ImageTerm(t.coeff, t.v_power, t.delay + a, t.denom) for t in self.terms
            )
        )

    def plus(self, other: "TransformImage") -> "TransformImage":
        return TransformImage(self.terms + other.terms).merged()

    def merged(self) -> "TransformImage":
        """Combine like terms (same exponent, delay and denominator)."""
        acc: dict = {}
        order: list = []
        for t in self.terms:
            k = t._key()
            if k in acc:
                acc[k] = acc[k] + t.coeff
            else:
                acc[k] = t.coeff
                order.append((k, t))
        out = []
        for k, t in order:
            if acc[k] != 0.0:
                out.append(ImageTerm(acc[k], t.v_power, t.delay, t.denom))
        return TransformImage(tuple(out))


def _eval_terms(image: TransformImage, v, alpha: float, beta: float,
                pole_guard: float):
    """Evaluate the term sum at scalar v (real or complex)."""
    is_complex = isinstance(v, complex)
    exp = cmath.exp if is_complex else math.exp
    va = v ** alpha
    total = 0.0 + 0.0j if is_complex else 0.0
    for t in image.terms:
        num = t.coeff * v ** t.v_power(alpha, beta)
        if t.delay != 0.0:
            num *= exp(-t.delay * va)
        den = 1.0 + 0.0j if is_complex else 1.0
        for f in t.denom:
            vpa = v ** (f.power * alpha)
            diff = vpa - f.pole
            if abs(diff) < pole_guard * abs(vpa):
                raise PoleAtEvaluationPoint(
                    f"factor v**({f.power}*alpha) - {f.pole} vanishes at v={v}"
                )
            den *= diff ** f.multiplicity
        total += num / den
    return total


def eval_image(image: TransformImage, v: float, params: SadikParams,
               pole_guard: float = POLE_GUARD) -> float:
    """Closed-form image value at real v > 0."""
    params.require_numeric()
    if not (v > 0.0):
        raise InvalidParams(f"v must be positive, got {v}")
    return _eval_terms(image, float(v), params.alpha, params.beta, pole_guard)


def eval_image_complex(image: TransformImage, v: complex, params: SadikParams,
                       pole_guard: float = POLE_GUARD) -> complex:
    """Same term sum continued to complex v (used by contour inversion)."""
    params.require_numeric()
    return _eval_terms(image, complex(v), params.alpha, params.beta, pole_guard)


def _expand_factor_power(f: DenomFactor):
    """(v**(p*alpha) - pole)**m expanded into [(coeff, alpha_shift)]."""
    out = []
    for i in range(f.multiplicity + 1):
        out.append(
            (math.comb(f.multiplicity, i) * (-f.pole) ** (f.multiplicity - i),
             i * f.power)
        )
    return out


def _cleared_terms(image: TransformImage, union: dict) -> dict:
    """Numerator terms after multiplying through by the union denominator.

    Returns {(a, b, c, delay): coeff} with exponents rounded for keying.
    """
    out: dict = {}
    for t in image.terms:
        have = {(f.power, f.pole): f.multiplicity for f in t.denom}
        missing = []
        for (p, pole), mult in union.items():
            extra = mult - have.get((p, pole), 0)
            if extra > 0:
                missing.append(DenomFactor(p, pole, extra))
        pieces = [[(1.0, 0.0)]] + [_expand_factor_power(f) for f in missing]
        for combo in product(*pieces):
            coeff = t.coeff
            shift = 0.0
            for c, s in combo:
                coeff *= c
                shift += s
            key = (
                round(t.v_power.a + shift, 10),
                round(t.v_power.b, 10),
                round(t.v_power.c, 10),
                round(t.delay, 10),
            )
            out[key] = out.get(key, 0.0) + coeff
    return out


def images_match(x: TransformImage, y: TransformImage, tol: float = 1e-9) -> bool:
    """Coefficient-level equality after clearing denominators and merging."""
    union: dict[tuple[float, float], int] = {}
    for img in (x, y):
        for t in img.terms:
            for f in t.denom:
                key = (f.power, f.pole)
                union[key] = max(union.get(key, 0), f.multiplicity)
    cx = _cleared_terms(x, union)
    cy = _cleared_terms(y, union)
    scale = max(
        [abs(c) for c in cx.values()] + [abs(c) for c in cy.values()] + [1.0]
    )
    for key in cx.keys() | cy.keys():
        if abs(cx.get(key, 0.0) - cy.get(key, 0.0)) > tol * scale:
            return False
    return True


@dataclass(frozen=True)
class SampledSignal:
    """Time grid plus values: the common currency of the numeric operators."""

    t: np.ndarray
    y: np.ndarray

    def __post_init__(self):
        t = np.asarray(self.t, dtype=float)
        y = np.asarray(self.y, dtype=float)
        if t.ndim != 1 or y.ndim != 1 or t.shape != y.shape:
            raise InvalidParams("t and y must be one-dimensional and equally long")
        if t.size == 0:
            raise InvalidParams("signal must contain at least one sample")
        if t[0] < 0.0:
            raise InvalidParams("time grid must start at t >= 0")
        if t.size > 1 and not np.all(np.diff(t) > 0.0):
            raise InvalidParams("time grid must be strictly increasing")
        object.__setattr__(self, "t", t)
        object.__setattr__(self, "y", y)

    def __len__(self) -> int:
        return self.t.size
