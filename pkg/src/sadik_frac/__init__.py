"""Sadik-transform operational calculus with fractional-order numerics.

Submodules:

- core: transform parameters, closed-form images, sampled signals
- mittag_leffler: E_{p,q} and derivatives
- fractional_ops: Riemann-Liouville and Caputo operators
- transform: forward/inverse transform, operational rules, limit theorems
- fode: linear Caputo ODE solvers plus the Adams PECE oracle
- control: fractional transfer functions and responses
- cli: command-line front end (also exposed as the `sadik-frac` script)
"""

from . import errors
from .core import (
    DenomFactor,
    ImageTerm,
    SadikParams,
    SampledSignal,
    TransformImage,
    VPower,
    eval_image,
    images_match,
)
from .fode import (
    ExpBound,
    ForcedProblem,
    RelaxationProblem,
    adams_oracle,
    check_exp_bound,
    solve_forced,
    solve_relaxation,
)
from .fractional_ops import FracOrder, caputo_derivative, rl_derivative, rl_integral
from .control import (
    TransferFunction,
    impulse_response,
    impulse_response_numeric,
    step_response,
    transfer_eval,
)
from .mittag_leffler import MLSpec, ml, ml_deriv, ml_pq
from .transform import (
    KnownFunction,
    caputo_image,
    convolve_images,
    delay_image,
    derivative_image,
    final_value,
    forward_numeric,
    image_of,
    initial_value,
    integrate_image,
    inverse_numeric,
    tn_multiply_check,
)

__version__ = "0.1.0"

__all__ = [
    "DenomFactor",
    "ExpBound",
    "ForcedProblem",
    "FracOrder",
    "ImageTerm",
    "KnownFunction",
    "MLSpec",
    "RelaxationProblem",
    "SadikParams",
    "SampledSignal",
    "TransferFunction",
    "TransformImage",
    "VPower",
    "adams_oracle",
    "caputo_derivative",
    "caputo_image",
    "check_exp_bound",
    "convolve_images",
    "delay_image",
    "derivative_image",
    "errors",
    "eval_image",
    "final_value",
    "forward_numeric",
    "image_of",
    "images_match",
    "impulse_response",
    "impulse_response_numeric",
    "initial_value",
    "integrate_image",
    "inverse_numeric",
    "ml",
    "ml_deriv",
    "ml_pq",
    "rl_derivative",
    "rl_integral",
    "solve_forced",
    "solve_relaxation",
    "step_response",
    "tn_multiply_check",
    "transfer_eval",
]
