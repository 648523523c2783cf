"""Command-line entry point: figure data, verification suites, dead zones, coefficient tables.

Exit codes: 0 success, 1 verification failure, 2 usage or I/O error.
"""
from __future__ import annotations

import argparse
import io
import json
import math
import sys
from dataclasses import dataclass, replace

import numpy as np

from . import waves1d, waves3d
from .analysis import dead_zone_radius
from .estimators import ReferenceWaves1D, ReferenceWaves3D
from .exceptions import ConvergenceError, QuadratureError, TurningPointError
from .verification import SUITES, run_suite
from .waves1d import Kind, ParityChannel
from .waves3d import AngularChannel

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2
MAX_GRID_POINTS = 10**7


@dataclass(frozen=True)
class GridSpec:
    lo: float
    hi: float
    step: float

    def __post_init__(self):
        if not self.step > 0:
            raise ValueError("grid step must be positive")
        if not self.lo < self.hi:
            raise ValueError("grid needs lo < hi")
        if (self.hi - self.lo) / self.step > MAX_GRID_POINTS:
            raise ValueError(f"grid has more than {MAX_GRID_POINTS} intervals")

    @classmethod
    def parse(cls, text: str) -> "GridSpec":
        parts = text.split(":")
        if len(parts) != 3:
            raise ValueError(f"grid must look like lo:hi:step, got {text!r}")
        return cls(*(float(p) for p in parts))

    def points(self) -> np.ndarray:
        count = int(math.floor((self.hi - self.lo) / self.step + 1e-9)) + 1
        # rounding strips accumulated binary noise so CSV y values read cleanly
        return np.round(self.lo + self.step * np.arange(count), 10)


GRID_1D = GridSpec(-30.0, 30.0, 0.01)
GRID_3D = GridSpec(0.0, 60.0, 0.01)


@dataclass(frozen=True)
class FigureRequest:
    figure: str
    dim: int
    mu: float
    grid: GridSpec
    parity: str = "even"
    ell: int = 0
    start_n: int = 0


FIGURES = {
    "fig1a": FigureRequest("fig1a", 1, 1.2, GRID_1D, parity="even"),
    "fig1b": FigureRequest("fig1b", 1, 1.2, GRID_1D, parity="odd"),
    "fig2a": FigureRequest("fig2a", 1, 1.2, GRID_1D, parity="even", start_n=10),
    "fig2b": FigureRequest("fig2b", 1, 1.2, GRID_1D, parity="even", start_n=20),
    "fig3a": FigureRequest("fig3a", 3, 1.0, GRID_3D, ell=0),
    "fig3b": FigureRequest("fig3b", 3, 1.0, GRID_3D, ell=3),
    "fig4a": FigureRequest("fig4a", 3, 1.0, GRID_3D, ell=0, start_n=30),
    "fig4b": FigureRequest("fig4b", 3, 1.0, GridSpec(60.0, 120.0, 0.01), ell=0, start_n=30),
}


def _grid_arg(text: str) -> GridSpec:
    try:
        return GridSpec.parse(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _positive(text: str) -> float:
    value = float(text)
    if not value > 0:
        raise argparse.ArgumentTypeError(f"expected a positive number, got {text}")
    return value


def _non_negative_int(text: str) -> int:
    value = int(text)
    if value < 0:
        raise argparse.ArgumentTypeError(f"expected a non-negative integer, got {text}")
    return value


def _emit(text: str, out: str | None) -> None:
    if out is None or out == "-":
        sys.stdout.write(text)
        return
    with open(out, "w", encoding="utf-8", newline="") as fh:
        fh.write(text)


def figure_request(args) -> FigureRequest:
    req = FIGURES[args.figure]
    overrides = {}
    if args.mu is not None:
        overrides["mu"] = args.mu
    if args.ell is not None:
        if req.dim != 3:
            raise ValueError(f"{req.figure} is one-dimensional; --ell does not apply")
        overrides["ell"] = args.ell
    if args.start_n is not None:
        overrides["start_n"] = args.start_n
    if args.grid is not None:
        overrides["grid"] = args.grid
    return replace(req, **overrides)


def figure_table(req: FigureRequest, n_max=None, accel="avg", cutoff="sharp") -> np.ndarray:
    """Rows (y, f, g) for a figure request."""
    y = req.grid.points()
    if req.dim == 1:
        est = ReferenceWaves1D(req.mu, req.parity, start_n=req.start_n, n_max=n_max, accel=accel, cutoff=cutoff)
    else:
        est = ReferenceWaves3D(req.mu, req.ell, start_n=req.start_n, n_max=n_max, accel=accel, cutoff=cutoff)
    fg = est.fit(y).transform(y)
    return np.column_stack([y, fg])


def format_csv(table: np.ndarray, header: str) -> str:
    buf = io.StringIO()
    np.savetxt(buf, table, fmt="%.17g", delimiter=",", header=header, comments="")
    return buf.getvalue()


def cmd_figure(args) -> int:
    req = figure_request(args)
    table = figure_table(req, n_max=args.nmax, accel=args.accel, cutoff=args.cutoff)
    _emit(format_csv(table, "y,f,g"), args.out)
    return EXIT_OK


def cmd_verify(args) -> int:
    reports = run_suite(args.suite)
    _emit(json.dumps([r.to_dict() for r in reports], indent=2) + "\n", args.out)
    failed = [r for r in reports if not r.passed]
    for r in failed:
        print(f"FAIL {r.check}: max_abs={r.max_abs:.3g} > tolerance={r.tolerance:.3g}", file=sys.stderr)
    return EXIT_FAIL if failed else EXIT_OK


def _channel(args) -> ParityChannel | AngularChannel:
    if args.ell is not None:
        return AngularChannel(args.ell)
    return ParityChannel(args.parity)


def deadzone_evaluator(channel, mu: float, start_n: int, kind: str, accel: str = "avg", cutoff: str = "sharp"):
    """|series| on y >= 0 for one kind, or the larger of |f| and |g| for ``both``."""
    kinds = [Kind.REGULAR, Kind.COMPLEMENTARY] if kind == "both" else [Kind(kind)]
    evaluate = waves3d.eval_series_3d if isinstance(channel, AngularChannel) else waves1d.eval_series_1d

    def evaluator(y):
        return np.max(
            [np.abs(evaluate(k, channel, mu, y, start_n=start_n, accel=accel, cutoff=cutoff)) for k in kinds], axis=0
        )

    return evaluator


def cmd_deadzone(args) -> int:
    channel = _channel(args)
    radial = isinstance(channel, AngularChannel)
    mu = args.mu if args.mu is not None else (1.0 if radial else 1.2)
    y_max = args.ymax if args.ymax is not None else (GRID_3D.hi if radial else GRID_1D.hi)
    start_n = args.start_n or 0
    evaluator = deadzone_evaluator(channel, mu, start_n, args.kind, args.accel, args.cutoff)
    result = dead_zone_radius(evaluator, args.eps, y_max, step=args.step, start_n=start_n)
    print(json.dumps({"start_n": result.start_n, "epsilon": result.epsilon, "radius": result.radius}))
    return EXIT_OK


def coefficient_table(kind: Kind, channel, mu: float, n_max: int) -> np.ndarray:
    """Rows (n, recursion value, closed form, relative difference) for n = 0..n_max."""
    length = max(n_max, 2)
    if isinstance(channel, AngularChannel):
        angle = waves3d.energy_angle(mu)
        rec = waves3d.propagate_3d(kind, channel, angle, length).values
        closed_fn = waves3d.s_closed_3d if kind is Kind.REGULAR else waves3d.c_closed_3d
        closed = np.array([closed_fn(n, channel, angle) for n in range(n_max + 1)])
    else:
        if kind is Kind.REGULAR:
            rec = waves1d.propagate_regular(channel, mu, length).values
            closed_fn = waves1d.s_closed
        else:
            rec = waves1d.propagate_complementary(channel, mu, length).values
            closed_fn = waves1d.c_closed
        closed = np.array([closed_fn(n, channel, mu) for n in range(n_max + 1)])
    rec = rec[: n_max + 1]
    scale = np.where(closed != 0, np.abs(closed), 1.0)
    rel = np.abs(rec - closed) / scale
    return np.column_stack([np.arange(n_max + 1), rec, closed, rel])


def cmd_coeffs(args) -> int:
    channel = _channel(args)
    mu = args.mu if args.mu is not None else (1.0 if isinstance(channel, AngularChannel) else 1.2)
    table = coefficient_table(Kind(args.kind), channel, mu, args.nmax)
    lines = ["n,value,closed_form,rel_diff"]
    lines += [f"{int(n)},{v:.17g},{c:.17g},{r:.17g}" for n, v, c, r in table]
    _emit("\n".join(lines) + "\n", args.out)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="jmatrix-waves", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def series_flags(p, accel=True):
        p.add_argument("--mu", type=_positive)
        p.add_argument("--ell", type=_non_negative_int, help="angular momentum; selects the 3D radial problem")
        p.add_argument("--start-n", type=_non_negative_int, dest="start_n")
        if accel:
            p.add_argument("--accel", choices=["none", "avg", "wynn"], default="avg")
            p.add_argument("--cutoff", choices=["sharp", "smooth"], default="sharp",
                           help="how terms below --start-n are removed")

    fig = sub.add_parser("figure", help="write figure data as CSV y,f,g")
    fig.add_argument("figure", choices=sorted(FIGURES))
    series_flags(fig)
    fig.add_argument("--nmax", type=_non_negative_int)
    fig.add_argument("--grid", type=_grid_arg, help="lo:hi:step")
    fig.add_argument("--out", help="output path (default stdout)")
    fig.set_defaults(func=cmd_figure)

    ver = sub.add_parser("verify", help="run verification suites and write JSON reports")
    ver.add_argument("suite", nargs="?", default="all", choices=list(SUITES) + ["all"])
    ver.add_argument("--out", help="output path (default stdout)")
    ver.set_defaults(func=cmd_verify)

    dz = sub.add_parser("deadzone", help="measure the dead-zone radius of a truncated series")
    series_flags(dz)
    dz.add_argument("--parity", choices=["even", "odd"], default="even")
    dz.add_argument("--kind", choices=["regular", "complementary", "both"], default="both")
    dz.add_argument("--eps", type=_positive, default=1e-3)
    dz.add_argument("--step", type=_positive, default=0.01)
    dz.add_argument("--ymax", type=_positive)
    dz.set_defaults(func=cmd_deadzone)

    co = sub.add_parser("coeffs", help="compare recursion and closed-form coefficients as CSV")
    series_flags(co, accel=False)
    co.add_argument("--kind", choices=["regular", "complementary"], default="regular")
    co.add_argument("--parity", choices=["even", "odd"], default="even")
    co.add_argument("--nmax", type=_non_negative_int, default=50)
    co.add_argument("--out", help="output path (default stdout)")
    co.set_defaults(func=cmd_coeffs)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (OSError, ValueError, TurningPointError, ConvergenceError, QuadratureError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
