"""Command-line front end.

    bargmann boundary --n 3 4 5 --grid 720 --with-circle --format svg --out fig.svg
    bargmann cloud --n 3 --d 2 --count 100000 --seed 7 --out cloud.csv
    bargmann verify containment --n 4 --d 3 --count 100000
    bargmann extremal --n 3 --theta 3.14159265358979

Exit codes: 0 pass, 1 violation or refutation, 2 usage or I/O error.
Every CSV starts with a ``#`` line holding the version, the invocation and
the master seed; floats are written with 17 significant digits.
"""

from __future__ import annotations

import argparse
import io
import math
import os
import sys
from dataclasses import dataclass

import numpy as np

from . import __version__
from . import boundary as bd
from .envelope import CurveFamily, FamilyId, envelope_numeric
from .geometry import minkowski_square_boundary
from .invariants import delta_pure
from .states import MAX_CLI_DIM
from .verify import SUITES, convex_hull, max_im_search, run_suite, sample_cloud

EXIT_OK, EXIT_VIOLATION, EXIT_USAGE = 0, 1, 2
MIN_GRID = 4


class UsageError(Exception):
    pass


@dataclass
class RunConfig:
    subcommand: str
    n: list
    d: int | None
    count: int | None
    seed: int
    tol: float | None
    grid: int | None
    out: str | None
    format: str
    invocation: str

    def validate(self):
        for n in self.n:
            if n < 3 and self.subcommand not in ("cloud",):
                raise UsageError(f"--n must be >= 3, got {n}")
            if n < 2:
                raise UsageError(f"--n must be >= 2, got {n}")
        if self.d is not None and not 2 <= self.d <= MAX_CLI_DIM:
            raise UsageError(f"--d must lie in [2, {MAX_CLI_DIM}], got {self.d}")
        if self.count is not None and self.count < 1:
            raise UsageError(f"--count must be >= 1, got {self.count}")
        if self.grid is not None and self.grid < MIN_GRID:
            raise UsageError(f"--grid must be >= {MIN_GRID}, got {self.grid}")
        if self.tol is not None and not self.tol >= 0:
            raise UsageError(f"--tol must be >= 0, got {self.tol}")
        if len(self.n) > 1 and self.subcommand != "boundary":
            raise UsageError("several --n values are only accepted by 'boundary'")


# -- output ------------------------------------------------------------------

def g17(x) -> str:
    return f"{float(x):.17g}"


class CsvOut:
    """Collects rows; every float is formatted with %.17g."""

    def __init__(self, cfg: RunConfig, header):
        self.buf = io.StringIO()
        self.buf.write(f"# bargmann {__version__} {cfg.invocation} (seed={cfg.seed})\n")
        self.buf.write(",".join(header) + "\n")

    def comment(self, text: str):
        self.buf.write(f"# {text}\n")

    def row(self, *values):
        self.buf.write(",".join(v if isinstance(v, str) else g17(v) for v in values) + "\n")

    def rows(self, array: np.ndarray):
        for r in np.asarray(array, dtype=float):
            self.row(*r)

    def getvalue(self) -> str:
        return self.buf.getvalue()


def svg_document(curves, points=None, polygons=(), title="") -> str:
    """Static SVG: axis cross, one polyline per curve, optional dots and polygons."""
    size, half = 600, 1.15
    scale = size / (2 * half)

    def xy(z):
        return f"{(z.real + half) * scale:.3f},{(half - z.imag) * scale:.3f}"

    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{size}" height="{size}" viewBox="0 0 {size} {size}">',
        f"<title>{title}</title>",
        f'<line x1="0" y1="{size / 2}" x2="{size}" y2="{size / 2}" stroke="#999" stroke-width="1"/>',
        f'<line x1="{size / 2}" y1="0" x2="{size / 2}" y2="{size}" stroke="#999" stroke-width="1"/>',
    ]
    palette = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b", "#e377c2", "#17becf"]
    for k, (label, z) in enumerate(curves):
        pts = " ".join(xy(p) for p in np.append(z, z[:1]))
        out.append(f'<polyline fill="none" stroke="{palette[k % len(palette)]}" stroke-width="1.5" '
                   f'points="{pts}"><title>{label}</title></polyline>')
    for z in polygons:
        pts = " ".join(xy(p) for p in z)
        out.append(f'<polygon fill="none" stroke="#000" stroke-width="1" points="{pts}"/>')
    if points is not None:
        for p in points:
            c = xy(p).split(",")
            out.append(f'<circle cx="{c[0]}" cy="{c[1]}" r="0.8" fill="#444"/>')
    out.append("</svg>")
    return "\n".join(out) + "\n"


def emit(cfg: RunConfig, text: str):
    if cfg.out is None:
        sys.stdout.write(text)
        return
    with open(cfg.out, "w", newline="") as fh:
        fh.write(text)


def _grid_thetas(grid: int) -> np.ndarray:
    return np.arange(grid) * (2 * np.pi / grid)


# -- subcommands -------------------------------------------------------------

def cmd_boundary(cfg: RunConfig, args) -> int:
    grid = cfg.grid or 720
    th = _grid_thetas(grid)
    curves = [(f"n={n}", bd.boundary_radius(n, th)) for n in cfg.n]
    if args.with_circle:
        curves.append(("circle", np.ones_like(th)))
    if cfg.format == "svg":
        emit(cfg, svg_document([(lab, r * np.exp(1j * th)) for lab, r in curves], title="boundary"))
        return EXIT_OK
    csv_out = CsvOut(cfg, ["theta", "r", "x", "y"])
    for label, r in curves:
        if len(curves) > 1:
            csv_out.comment(f"curve {label}")
        csv_out.rows(np.column_stack([th, r, r * np.cos(th), r * np.sin(th)]))
    emit(cfg, csv_out.getvalue())
    return EXIT_OK


def _cloud(cfg: RunConfig, args):
    return sample_cloud(cfg.n[0], cfg.d or 2, cfg.count or 10_000, cfg.seed,
                        kind=args.kind, reverse=args.reverse, workers=args.workers)


def cmd_cloud(cfg: RunConfig, args) -> int:
    cloud = _cloud(cfg, args)
    if cfg.format == "svg":
        n = cfg.n[0]
        curves = []
        if n >= 3:
            curves.append((f"n={n}", bd.RegionSpec(n).curve(720).points))
        emit(cfg, svg_document(curves, points=cloud.points, title=f"cloud n={n}"))
        return EXIT_OK
    csv_out = CsvOut(cfg, ["re", "im"])
    csv_out.rows(np.column_stack([cloud.points.real, cloud.points.imag]))
    emit(cfg, csv_out.getvalue())
    return EXIT_OK


def cmd_hull(cfg: RunConfig, args) -> int:
    hull = convex_hull(_cloud(cfg, args).points)
    if cfg.format == "svg":
        v = hull.vertices[:, 0] + 1j * hull.vertices[:, 1]
        n = cfg.n[0]
        curves = [(f"n={n}", bd.RegionSpec(n).curve(720).points)] if n >= 3 else []
        emit(cfg, svg_document(curves, polygons=[np.append(v, v[:1])], title=f"hull n={n}"))
        return EXIT_OK
    csv_out = CsvOut(cfg, ["x", "y"])
    csv_out.comment(f"vertices {len(hull)} area {g17(hull.area)}")
    csv_out.rows(hull.vertices)
    emit(cfg, csv_out.getvalue())
    return EXIT_OK


def cmd_verify(cfg: RunConfig, args) -> int:
    report = run_suite(
        args.suite,
        n=cfg.n[0] if args.n else None,
        d=cfg.d,
        count=cfg.count,
        seed=cfg.seed,
        tol=cfg.tol,
        grid=cfg.grid,
        restarts=args.restarts,
        workers=args.workers,
    )
    print(report.as_text())
    if cfg.out is not None:
        csv_out = CsvOut(cfg, ["key", "value"])
        csv_out.row("suite", report.suite)
        csv_out.row("passed", str(report.passed).lower())
        for k, v in report.rows:
            csv_out.row(k, v if isinstance(v, float) else str(v))
        emit(cfg, csv_out.getvalue())
    return EXIT_OK if report.passed else EXIT_VIOLATION


def cmd_envelope(cfg: RunConfig, args) -> int:
    fam_id = FamilyId(args.family)
    if fam_id is FamilyId.N4_INNER and args.t is None:
        raise UsageError("--family N4_INNER needs --t")
    family = CurveFamily(fam_id, args.t if fam_id is FamilyId.N4_INNER else None)
    res = envelope_numeric(family, _grid_thetas(cfg.grid or 720))
    th, r = res.curve.thetas, res.curve.radii
    if fam_id is FamilyId.N4_INNER:
        oracle = minkowski_square_boundary(family.t, th)
    else:
        oracle = bd.boundary_radius(3 if fam_id is FamilyId.N3 else 4, th)
    err = float(np.max(np.abs(r - oracle))) if r.size else math.inf
    tol = 1e-8 if cfg.tol is None else cfg.tol
    if cfg.format == "svg":
        emit(cfg, svg_document([(str(family), r * np.exp(1j * th))], title=f"envelope {family}"))
    else:
        csv_out = CsvOut(cfg, ["theta", "r", "x", "y", "param"])
        csv_out.comment(f"family {family} sup_error {g17(err)} failures {len(res.failures)}")
        csv_out.rows(np.column_stack([th, r, r * np.cos(th), r * np.sin(th), res.params]))
        emit(cfg, csv_out.getvalue())
    print(f"{family}: sup error {g17(err)} vs closed form, {len(res.failures)} failures", file=sys.stderr)
    return EXIT_OK if err <= tol and not res.failures else EXIT_VIOLATION


def cmd_extremal(cfg: RunConfig, args) -> int:
    n = cfg.n[0]
    if args.theta is not None:
        try:
            t = bd.t_from_theta(n, args.theta)
        except bd.OutOfRangeError as exc:
            print(f"error: {exc}", file=sys.stderr)
            return EXIT_VIOLATION
    else:
        t = args.t
    states = bd.extremal_tuple(n, t)
    delta = delta_pure(states)
    radius = bd.boundary_radius(n, delta.argument)
    lines = [f"n {n}", f"t {g17(t)}"]
    csv_out = CsvOut(cfg, ["key", "re", "im"])
    csv_out.row("t", t, 0.0)
    for k, s in enumerate(states.states):
        a = s.amplitudes
        lines.append(f"psi_{k} [{g17(a[0].real)}{a[0].imag:+.17g}j, {g17(a[1].real)}{a[1].imag:+.17g}j]")
        for j in range(2):
            csv_out.row(f"psi_{k}_{j}", a[j].real, a[j].imag)
    lines += [
        f"delta {g17(delta.x)} {g17(delta.y)}",
        f"modulus {g17(delta.modulus)}",
        f"argument {g17(delta.argument)}",
        f"boundary_radius {g17(radius)}",
    ]
    csv_out.row("delta", delta.x, delta.y)
    csv_out.row("modulus", delta.modulus, 0.0)
    csv_out.row("argument", delta.argument, 0.0)
    csv_out.row("boundary_radius", radius, 0.0)
    print("\n".join(lines))
    if cfg.out is not None:
        emit(cfg, csv_out.getvalue())
    return EXIT_OK


def cmd_maxim(cfg: RunConfig, args) -> int:
    n = cfg.n[0]
    res = max_im_search(n, args.restarts or 64, cfg.seed, d=cfg.d or 2)
    print(f"n {n} ({res.label})")
    print(f"best {g17(res.best)}")
    print(f"tau {g17(res.tau)}")
    print(f"gap {g17(res.gap)}")
    if res.exceeds_tau:
        print("verdict " + ("violation" if n in (3, 4) else "conjecture-refuting candidate"))
    csv_out = CsvOut(cfg, ["key", "re", "im"])
    csv_out.row("best", res.best, 0.0)
    csv_out.row("tau", res.tau, 0.0)
    for k, s in enumerate(res.states.states):
        for j, a in enumerate(s.amplitudes):
            csv_out.row(f"psi_{k}_{j}", a.real, a.imag)
    if cfg.out is not None:
        emit(cfg, csv_out.getvalue())
    return EXIT_VIOLATION if res.exceeds_tau else EXIT_OK


COMMANDS = {
    "boundary": cmd_boundary,
    "cloud": cmd_cloud,
    "hull": cmd_hull,
    "verify": cmd_verify,
    "envelope": cmd_envelope,
    "extremal": cmd_extremal,
    "maxim": cmd_maxim,
}


# -- parsing -----------------------------------------------------------------

class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


def _common(p: argparse.ArgumentParser, multi_n=False):
    if multi_n:
        p.add_argument("--n", type=int, nargs="+", default=None)
    else:
        p.add_argument("--n", type=int, default=None)
    p.add_argument("--d", type=int, default=None)
    p.add_argument("--count", type=int, default=None)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--tol", type=float, default=None)
    p.add_argument("--grid", type=int, default=None)
    p.add_argument("--out", default=None, help="output file (default: stdout)")
    p.add_argument("--format", choices=("csv", "svg"), default="csv")
    p.add_argument("--workers", type=int, default=os.cpu_count() or 1,
                   help="sampling processes; results do not depend on it")


def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="bargmann", description="Sets of Bargmann invariants.")
    ap.add_argument("--version", action="version", version=f"bargmann {__version__}")
    sub = ap.add_subparsers(dest="subcommand", required=True, parser_class=_Parser)

    p = sub.add_parser("boundary", help="export r_n(theta) curves")
    _common(p, multi_n=True)
    p.add_argument("--with-circle", action="store_true", help="add the unit circle")

    for name, text in (("cloud", "sample invariants of random tuples"),
                       ("hull", "convex hull of a sampled cloud")):
        p = sub.add_parser(name, help=text)
        _common(p)
        p.add_argument("--kind", choices=("pure", "mixed"), default="pure")
        p.add_argument("--reverse", action="store_true", help="evaluate tuples in reverse order")

    p = sub.add_parser("verify", help="run a verification suite")
    p.add_argument("suite", choices=SUITES)
    _common(p)
    p.add_argument("--restarts", type=int, default=None)

    p = sub.add_parser("envelope", help="numeric envelope of a curve family")
    _common(p)
    p.add_argument("--family", choices=[f.value for f in FamilyId], default="N3")
    p.add_argument("--t", type=float, default=None, help="fixed t for N4_INNER")

    p = sub.add_parser("extremal", help="boundary-attaining qubit tuple")
    _common(p)
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--theta", type=float)
    g.add_argument("--t", type=float)

    p = sub.add_parser("maxim", help="maximise Im Delta_n by local search")
    _common(p)
    p.add_argument("--restarts", type=int, default=64)
    return ap


def main(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    n = args.n if isinstance(args.n, list) else [args.n]
    if n == [None]:
        n = [3]
    cfg = RunConfig(
        subcommand=args.subcommand,
        n=n,
        d=args.d,
        count=args.count,
        seed=args.seed,
        tol=args.tol,
        grid=args.grid,
        out=args.out,
        format=args.format,
        invocation=" ".join(argv),
    )
    try:
        cfg.validate()
        if args.workers < 1:
            raise UsageError(f"--workers must be >= 1, got {args.workers}")
        return COMMANDS[cfg.subcommand](cfg, args)
    except UsageError as exc:
        print(f"bargmann: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"bargmann: I/O error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ValueError as exc:
        print(f"bargmann: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
