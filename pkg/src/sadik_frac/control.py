"""Fractional-order transfer functions and their time responses.

A system sum_k r_k * D^(g_k) phi = f has transfer function
K(v, alpha, beta) = 1 / sum_k r_k * v**(g_k * alpha).  For the two-term
system r * D^g phi + d * phi = f the responses have closed Mittag-Leffler
forms; the general n-term case is handled by numeric contour inversion.
"""

from __future__ import annotations

import numpy as np

from .core import POLE_GUARD, SadikParams, SampledSignal
from .errors import InvalidParams, PoleAtEvaluationPoint
from .mittag_leffler import MLSpec, ml
from .transform import inverse_numeric


class TransferFunction:
    """Ordered (coefficient, order) pairs, orders strictly decreasing."""

    __slots__ = ("terms",)

    def __init__(self, terms):
        terms = tuple((float(r), float(g)) for r, g in terms)
        if not terms:
            raise InvalidParams("transfer function needs at least one term")
        if terms[0][0] == 0.0:
            raise InvalidParams("leading coefficient must be nonzero")
        for (_, g_hi), (_, g_lo) in zip(terms, terms[1:]):
            if not (g_hi > g_lo):
                raise InvalidParams("orders must be strictly decreasing")
        if terms[-1][1] < 0.0:
            raise InvalidParams("orders must be nonnegative")
        self.terms = terms

    def __repr__(self):
        return f"TransferFunction({list(self.terms)!r})"


def transfer_eval(tf: TransferFunction, params: SadikParams, v):
    """K(v, alpha, beta) = 1 / sum_k r_k v**(g_k * alpha); complex v allowed."""
    alpha = params.alpha
    den = 0.0j if isinstance(v, complex) else 0.0
    scale = 0.0
    for r, g in tf.terms:
        piece = r * v ** (g * alpha)
        den += piece
        scale += abs(piece)
    if abs(den) < POLE_GUARD * max(scale, 1e-300):
        raise PoleAtEvaluationPoint(f"characteristic sum vanishes at v={v}")
    return 1.0 / den


def impulse_response(r: float, d: float, gamma: float, grid) -> SampledSignal:
    """(1/r) * t**(g-1) * E_{g,g}(-(d/r) t**g); grid times must be positive."""
    if r == 0.0:
        raise InvalidParams("r must be nonzero")
    if not (gamma > 0.0):
        raise InvalidParams(f"gamma must be positive, got {gamma}")
    t = np.asarray(grid, dtype=float)
    if np.any(t <= 0.0):
        raise InvalidParams("impulse response grid must be strictly positive")
    spec = MLSpec(gamma, gamma)
    ratio = d / r
    y = np.array(
        [ti ** (gamma - 1.0) * ml(spec, -ratio * ti ** gamma) / r for ti in t]
    )
    return SampledSignal(t, y)


def step_response(r: float, d: float, gamma: float, grid) -> SampledSignal:
    """(1/r) * t**g * E_{g,g+1}(-(d/r) t**g); vanishes at t = 0."""
    if r == 0.0:
        raise InvalidParams("r must be nonzero")
    if not (gamma > 0.0):
        raise InvalidParams(f"gamma must be positive, got {gamma}")
    t = np.asarray(grid, dtype=float)
    if np.any(t < 0.0):
        raise InvalidParams("step response grid must be nonnegative")
    spec = MLSpec(gamma, gamma + 1.0)
    ratio = d / r
    y = np.array(
        [ti ** gamma * ml(spec, -ratio * ti ** gamma) / r for ti in t]
    )
    return SampledSignal(t, y)


def impulse_response_numeric(tf: TransferFunction, params: SadikParams, grid,
                             nodes: int = 32, rtol: float = 1e-5) -> SampledSignal:
    """Impulse response of an arbitrary-term transfer function by inversion.

    Requires a strictly proper K (leading order > 0).  The inversion treats
    K as the transform to invert, matching the beta = 0 convention under
    which K's inverse is the physical time response for every alpha.
    """
    if not (tf.terms[0][1] > 0.0):
        raise InvalidParams("transfer function must be strictly proper (leading order > 0)")
    t = np.asarray(grid, dtype=float)
    if np.any(t <= 0.0):
        raise InvalidParams("inversion grid must be strictly positive")
    phi = lambda v: transfer_eval(tf, params, v)
    y = np.array(
        [inverse_numeric(phi, params, ti, nodes=nodes, rtol=rtol) for ti in t]
    )
    return SampledSignal(t, y)
