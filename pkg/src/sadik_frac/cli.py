"""Command-line front end.

Subcommands: transform, verify, fode, control, ml, caputo.  Numeric output
is CSV (header line, comma separated, floats printed with 9 significant
digits, rows in grid order) on stdout or at --out; diagnostics go to
stderr.  Exit codes: 0 success, 1 tolerance failure, 2 bad arguments.
A JSON file passed with --config supplies defaults; explicit flags win.
SADIK_FRAC_THREADS caps the worker pool used for per-grid-point work.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
from concurrent.futures import ThreadPoolExecutor

import numpy as np

from . import verify as verify_mod
from .control import TransferFunction, impulse_response, step_response, transfer_eval
from .core import SadikParams, eval_image
from .errors import SadikFracError
from .fode import RelaxationProblem, adams_oracle, solve_relaxation
from .fractional_ops import caputo_derivative, rl_derivative
from .mittag_leffler import MLSpec, ml_deriv
from .transform import KnownFunction, forward_numeric, image_of, inverse_numeric

FIG_GAMMAS = (0.5, 0.7, 0.9, 1.0)


def _fmt(x: float) -> str:
    return f"{x:.9g}"


def _parse_grid(spec: str) -> np.ndarray:
    """`a:b:n` -> n points from a to b inclusive; a bare number -> one point."""
    parts = spec.split(":")
    if len(parts) == 1:
        return np.array([float(parts[0])])
    if len(parts) != 3:
        raise ValueError(f"grid must be 'a:b:n' or a single number, got {spec!r}")
    a, b, n = float(parts[0]), float(parts[1]), int(parts[2])
    if n < 2 or not a < b:
        raise ValueError(f"grid needs a < b and n >= 2, got {spec!r}")
    return np.linspace(a, b, n)


def _worker_count() -> int:
    cap = os.environ.get("SADIK_FRAC_THREADS")
    if cap is not None:
        try:
            return max(1, int(cap))
        except ValueError:
            return 1
    return min(4, os.cpu_count() or 1)


def _pmap(fn, items):
    """Ordered map over items, fanned out to the worker pool when allowed."""
    workers = _worker_count()
    items = list(items)
    if workers <= 1 or len(items) <= 1:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, items))


def _write_rows(out_path, header, rows):
    text = ",".join(header) + "\n"
    for row in rows:
        text += ",".join(_fmt(x) for x in row) + "\n"
    if out_path:
        with open(out_path, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _known_function(args, parser) -> KnownFunction:
    kind = args.func
    try:
        if kind == "one":
            return KnownFunction.one()
        if kind == "power":
            return KnownFunction.power(args.n)
        if kind == "exp":
            return KnownFunction.exponential(args.a)
        if kind == "sin":
            return KnownFunction.sine(args.a)
        if kind == "heaviside":
            return KnownFunction.heaviside(args.a)
        if kind == "mlk":
            return KnownFunction.ml_kernel(args.p, args.q, args.m, args.a, args.sign)
    except SadikFracError as exc:
        parser.error(str(exc))
    parser.error(f"--func must be one of one/power/exp/sin/heaviside/mlk, got {kind!r}")


def _require(parser, args, names):
    for name in names:
        if getattr(args, name, None) is None:
            parser.error(f"--{name.replace('_', '-')} is required")
    if getattr(args, "tol", 1.0) <= 0.0:
        parser.error("--tol must be positive")


# ---------------------------------------------------------------------------
# subcommands


def cmd_transform(args, parser) -> int:
    _require(parser, args, ["alpha", "beta", "v"])
    f = _known_function(args, parser)
    params = SadikParams(args.alpha, args.beta)
    img = image_of(f)
    grid = _parse_grid(args.v)

    def one_row(v):
        num = forward_numeric(f, params, float(v))
        ref = eval_image(img, float(v), params)
        rel = abs(num - ref) / max(abs(ref), 1e-300)
        return (float(v), num, ref, rel)

    try:
        rows = _pmap(one_row, grid)
    except SadikFracError as exc:
        print(f"transform failed: {exc}", file=sys.stderr)
        return 1
    _write_rows(args.out, ["v", "numeric", "closed_form", "rel_err"], rows)
    worst = max(r[3] for r in rows)
    if worst >= args.tol:
        print(f"worst rel_err {worst:.3e} exceeds tol {args.tol:.1e}", file=sys.stderr)
        return 1
    return 0


def cmd_verify(args, parser) -> int:
    try:
        results = verify_mod.run_suite(args.suite)
    except KeyError as exc:
        parser.error(str(exc))
    for res in results:
        print(res.line())
    failed = [r for r in results if not r.passed]
    print(f"{len(results) - len(failed)}/{len(results)} checks passed")
    return 1 if failed else 0


def _fode_rows(gamma, b, y0, grid, oracle_h, corrector_passes=2):
    closed = solve_relaxation(RelaxationProblem(gamma, b, y0), grid)
    t_end = max(float(grid[-1]), oracle_h)
    oracle = adams_oracle(gamma, lambda t, y: b * y, y0, oracle_h, t_end,
                          corrector_passes=corrector_passes)
    interp = np.interp(grid, oracle.t, oracle.y)
    rows = []
    for t, yc, yo in zip(grid, closed.y, interp):
        rows.append((float(t), yc, yo, abs(yc - yo) / max(abs(yc), 1e-300)))
    return rows


def cmd_fode(args, parser) -> int:
    if args.fig1:
        out_prefix = args.out or "fig1"
        worst = 0.0
        for g in FIG_GAMMAS:
            grid = np.linspace(0.0, 1.0, 101)
            rows = _fode_rows(g, 3.0, 1.0, grid, args.oracle_h)
            _write_rows(f"{out_prefix}_gamma_{g:g}.csv",
                        ["t", "y_closed", "y_oracle", "rel_err"], rows)
            worst = max(worst, max(r[3] for r in rows))
        if worst >= args.tol:
            print(f"oracle disagreement {worst:.3e} exceeds tol {args.tol:.1e}",
                  file=sys.stderr)
            return 1
        return 0
    _require(parser, args, ["gamma", "b", "y0", "t"])
    if not (0.0 < args.gamma <= 1.0):
        parser.error("--gamma must lie in (0, 1]")
    grid = _parse_grid(args.t)
    rows = _fode_rows(args.gamma, args.b, args.y0, grid, args.oracle_h)
    _write_rows(args.out, ["t", "y_closed", "y_oracle", "rel_err"], rows)
    worst = max(r[3] for r in rows)
    if worst >= args.tol:
        print(f"oracle disagreement {worst:.3e} exceeds tol {args.tol:.1e}",
              file=sys.stderr)
        return 1
    return 0


def _control_rows(kind, gamma, r, d, grid, params, nodes):
    grid = np.asarray(grid, dtype=float)
    if kind == "impulse":
        closed = impulse_response(r, d, gamma, grid)
        tf = TransferFunction([(r, gamma), (d, 0.0)])
        phi = lambda v: transfer_eval(tf, params, v)
        numeric = _pmap(lambda t: inverse_numeric(phi, params, float(t), nodes=nodes), grid)
    else:
        closed = step_response(r, d, gamma, grid)
        tf = TransferFunction([(r, gamma), (d, 0.0)])
        # step image: v**beta * K * S[1] = K * v**(-alpha)
        phi = lambda v: transfer_eval(tf, params, v) * v ** (-params.alpha)
        numeric = _pmap(
            lambda t: 0.0 if t == 0.0 else inverse_numeric(phi, params, float(t), nodes=nodes),
            grid,
        )
    rows = []
    for t, yc, yn in zip(grid, closed.y, numeric):
        rows.append((float(t), yc, yn, abs(yc - yn) / max(abs(yc), 1e-300)))
    return rows


def cmd_control(args, parser) -> int:
    params = SadikParams(args.alpha, args.beta)
    if params.beta != 0.0:
        print("warning: response inversion assumes beta = 0 conventions",
              file=sys.stderr)
    if args.fig2 or args.fig3:
        kind = "impulse" if args.fig2 else "step"
        out_prefix = args.out or ("fig2" if args.fig2 else "fig3")
        worst = 0.0
        for g in FIG_GAMMAS:
            grid = np.linspace(1e-3, 5.0, 200)
            rows = _control_rows(kind, g, 1.0, 1.0, grid, params, args.nodes)
            _write_rows(f"{out_prefix}_gamma_{g:g}.csv",
                        ["t", "closed_form", "numeric_inverse", "rel_err"], rows)
            worst = max(worst, max(r[3] for r in rows))
        if worst >= args.tol:
            print(f"inversion disagreement {worst:.3e} exceeds tol {args.tol:.1e}",
                  file=sys.stderr)
            return 1
        return 0
    if args.impulse == args.step:
        parser.error("choose exactly one of --impulse / --step (or a fig preset)")
    _require(parser, args, ["gamma", "t"])
    if args.r == 0.0:
        parser.error("--r must be nonzero")
    if args.gamma <= 0.0:
        parser.error("--gamma must be positive")
    grid = _parse_grid(args.t)
    if args.impulse and args.gamma < 1.0:
        # the impulse kernel is singular at t = 0
        grid = np.where(grid <= 0.0, 1e-3, grid)
        grid = np.unique(grid)
    kind = "impulse" if args.impulse else "step"
    rows = _control_rows(kind, args.gamma, args.r, args.d, grid, params, args.nodes)
    _write_rows(args.out, ["t", "closed_form", "numeric_inverse", "rel_err"], rows)
    worst = max(r[3] for r in rows)
    if worst >= args.tol:
        print(f"inversion disagreement {worst:.3e} exceeds tol {args.tol:.1e}",
              file=sys.stderr)
        return 1
    return 0


def cmd_ml(args, parser) -> int:
    _require(parser, args, ["p", "q", "z"])
    spec = MLSpec(args.p, args.q, args.m)
    grid = _parse_grid(args.z)
    rows = [(float(z), ml_deriv(spec, float(z))) for z in grid]
    _write_rows(args.out, ["z", "value"], rows)
    return 0


def _caputo_closed_form(func, a, n, gamma, t):
    if func == "power":
        if n == 0:
            return 0.0
        return math.gamma(n + 1) / math.gamma(n + 1 - gamma) * t ** (n - gamma)
    # d^gamma e^(a t) = a * t^(1-gamma) * E_{1, 2-gamma}(a t)
    return a * t ** (1.0 - gamma) * ml_deriv(MLSpec(1.0, 2.0 - gamma), a * t)


def cmd_caputo(args, parser) -> int:
    _require(parser, args, ["gamma", "t"])
    if args.func not in ("power", "exp"):
        parser.error("--func must be power or exp for the caputo command")
    if not (0.0 < args.gamma < 1.0) and not (1.0 < args.gamma < 2.0):
        parser.error("--gamma must be non-integer in (0, 2)")
    grid = _parse_grid(args.t)
    if np.any(grid <= 0.0):
        parser.error("caputo grid times must be positive")
    if args.func == "power":
        fn = lambda x: x ** args.n
        dn = (lambda x: float(args.n) * x ** (args.n - 1)) if args.n >= 1 else (lambda x: 0.0)
    else:
        fn = lambda x: math.exp(args.a * x)
        dn = lambda x: args.a * math.exp(args.a * x)
    def one_row(t):
        t = float(t)
        if args.op == "rl":
            num = rl_derivative(fn, args.gamma, t, args.grid_n)
        else:
            num = caputo_derivative(fn, args.gamma, t, args.grid_n, deriv=dn)
        ref = _caputo_closed_form(args.func, args.a, args.n, args.gamma, t)
        if args.op == "rl" and args.func == "power" and args.n == 0:
            ref = t ** (-args.gamma) / math.gamma(1.0 - args.gamma)
        return (t, num, ref, abs(num - ref) / max(abs(ref), 1e-300))

    rows = _pmap(one_row, grid)
    _write_rows(args.out, ["t", "numeric", "closed_form", "rel_err"], rows)
    worst = max(r[3] for r in rows)
    if worst >= args.tol:
        print(f"worst rel_err {worst:.3e} exceeds tol {args.tol:.1e}", file=sys.stderr)
        return 1
    return 0


# ---------------------------------------------------------------------------
# parser assembly


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="sadik-frac",
        description="Sadik-transform operational calculus and fractional-order responses",
    )
    parser.add_argument("--config", help="JSON file with default option values")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("transform", help="numeric vs closed-form transform values")
    p.add_argument("--func", required=True,
                   choices=["one", "power", "exp", "sin", "heaviside", "mlk"])
    p.add_argument("--a", type=float, default=1.0)
    p.add_argument("--n", type=int, default=1)
    p.add_argument("--p", type=float, default=0.5)
    p.add_argument("--q", type=float, default=1.0)
    p.add_argument("--m", type=int, default=0)
    p.add_argument("--sign", type=int, default=-1, choices=[-1, 1])
    p.add_argument("--alpha", type=float)
    p.add_argument("--beta", type=float)
    p.add_argument("--v", help="evaluation grid a:b:n or a single value")
    p.add_argument("--tol", type=float, default=1e-6)
    p.add_argument("--out", "-o")
    p.set_defaults(handler=cmd_transform)

    p = sub.add_parser("verify", help="run theorem self-verification suites")
    p.add_argument("suite", choices=sorted(verify_mod.SUITES) + ["all"])
    p.set_defaults(handler=cmd_verify)

    p = sub.add_parser("fode", help="relaxation problem: closed form vs Adams oracle")
    p.add_argument("--gamma", type=float)
    p.add_argument("--b", type=float)
    p.add_argument("--y0", type=float)
    p.add_argument("--t", help="time grid a:b:n")
    p.add_argument("--oracle-h", type=float, default=1e-3)
    p.add_argument("--tol", type=float, default=5e-3)
    p.add_argument("--fig1", action="store_true",
                   help="emit the growth-curve family (gamma sweep, b=3, y0=1)")
    p.add_argument("--out", "-o")
    p.set_defaults(handler=cmd_fode)

    p = sub.add_parser("control", help="transfer-function responses")
    p.add_argument("--impulse", action="store_true")
    p.add_argument("--step", action="store_true")
    p.add_argument("--gamma", type=float)
    p.add_argument("--r", type=float, default=1.0)
    p.add_argument("--d", type=float, default=1.0)
    p.add_argument("--alpha", type=float, default=1.0)
    p.add_argument("--beta", type=float, default=0.0)
    p.add_argument("--t", help="time grid a:b:n")
    p.add_argument("--nodes", type=int, default=32)
    p.add_argument("--tol", type=float, default=1e-4)
    p.add_argument("--fig2", action="store_true", help="impulse-response family")
    p.add_argument("--fig3", action="store_true", help="step-response family")
    p.add_argument("--out", "-o")
    p.set_defaults(handler=cmd_control)

    p = sub.add_parser("ml", help="evaluate E_{p,q} or its derivatives")
    p.add_argument("--p", type=float)
    p.add_argument("--q", type=float)
    p.add_argument("--m", type=int, default=0)
    p.add_argument("--z", help="argument grid a:b:n")
    p.add_argument("--out", "-o")
    p.set_defaults(handler=cmd_ml)

    p = sub.add_parser("caputo", help="fractional derivatives vs closed forms")
    p.add_argument("--func", default="power", choices=["power", "exp"])
    p.add_argument("--n", type=int, default=2)
    p.add_argument("--a", type=float, default=1.0)
    p.add_argument("--gamma", type=float)
    p.add_argument("--t", help="time grid a:b:n")
    p.add_argument("--grid-n", type=int, default=256)
    p.add_argument("--op", default="caputo", choices=["caputo", "rl"])
    p.add_argument("--tol", type=float, default=1e-4)
    p.add_argument("--out", "-o")
    p.set_defaults(handler=cmd_caputo)
    return parser


def _apply_config(parser, argv):
    """Load --config JSON as defaults; command-line flags still override."""
    probe = argparse.ArgumentParser(add_help=False)
    probe.add_argument("--config")
    known, _ = probe.parse_known_args(argv)
    if not known.config:
        return argv, {}
    with open(known.config, "r", encoding="utf-8") as fh:
        config = json.load(fh)
    if not isinstance(config, dict):
        raise ValueError("config file must hold a JSON object")
    return argv, config


_GRID_FLAGS = ("--v", "--t", "--z")


def _merge_grid_flags(argv):
    """Join grid flags with their value so `--z -2:2:5` survives argparse."""
    out = []
    i = 0
    while i < len(argv):
        tok = argv[i]
        if tok in _GRID_FLAGS and i + 1 < len(argv):
            out.append(f"{tok}={argv[i + 1]}")
            i += 2
        else:
            out.append(tok)
            i += 1
    return out


def main(argv=None) -> int:
    argv = _merge_grid_flags(list(sys.argv[1:] if argv is None else argv))
    parser = _build_parser()
    try:
        argv, config = _apply_config(parser, argv)
    except (OSError, ValueError, json.JSONDecodeError) as exc:
        print(f"bad --config: {exc}", file=sys.stderr)
        return 2
    if config:
        for action in parser._subparsers._group_actions:
            for sub in getattr(action, "choices", {}).values():
                usable = {a.dest for a in sub._actions}
                sub.set_defaults(**{k: v for k, v in config.items() if k in usable})
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.handler(args, parser)
    except SystemExit as exc:
        return int(exc.code or 0)
    except SadikFracError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    raise SystemExit(main())
