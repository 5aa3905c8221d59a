"""Monte Carlo and optimisation campaigns over sets of Bargmann invariants.

Sampling is split into fixed-size chunks, each with its own generator
derived from (master seed, chunk index).  Results are therefore the same
array regardless of how many workers produce the chunks.

Checks for n in {3, 4} are backed by the proven boundary; for n >= 5 they
are evidence for the conjectured boundary and are labelled as such.
"""

from __future__ import annotations

import csv
import math
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from . import boundary as bd
from .geometry import PlanarSample
from .invariants import (
    bloch_density_batch,
    bloch_kets_batch,
    closed_form_xy,
    delta_bloch_batch,
    delta_pure_batch,
    delta_trace_batch,
)
from .states import PureState, StateTuple, derived_rng, ginibre_matrices, haar_vectors

CHUNK = 4096
THEOREM_ORDERS = (3, 4)
DET_QUAD_BOUND = 16 / (3 * math.sqrt(3))


def evidence_label(n: int) -> str:
    return "theorem" if n in THEOREM_ORDERS else "conjecture evidence"


# -- clouds ------------------------------------------------------------------

def _chunk_tuples(n: int, d: int, seed: int, chunk: int, size: int, kind: str) -> np.ndarray:
    rng = derived_rng(seed, chunk)
    if kind == "pure":
        return haar_vectors(rng, (size, n), d)
    return ginibre_matrices(rng, (size, n), d)


def _cloud_chunk(args) -> np.ndarray:
    n, d, seed, chunk, size, kind, reverse = args
    states = _chunk_tuples(n, d, seed, chunk, size, kind)
    if reverse:
        states = states[:, ::-1]
    if kind == "pure":
        return delta_pure_batch(states)
    return delta_trace_batch(states)


def _chunks(count: int):
    for c in range((count + CHUNK - 1) // CHUNK):
        yield c, min(CHUNK, count - c * CHUNK)


def default_workers() -> int:
    return os.cpu_count() or 1


def sample_cloud(
    n: int,
    d: int,
    count: int,
    seed: int = 0,
    kind: str = "pure",
    reverse: bool = False,
    workers: int = 1,
) -> PlanarSample:
    """``count`` invariants of random n-tuples in C^d.

    kind="pure" draws Haar states, kind="mixed" Hilbert-Schmidt density
    matrices.  ``reverse`` evaluates the same tuples in reverse order.
    """
    if n < 2 or d < 2 or count < 1:
        raise ValueError(f"need n >= 2, d >= 2, count >= 1 (got n={n}, d={d}, count={count})")
    if kind not in ("pure", "mixed"):
        raise ValueError(f"kind must be 'pure' or 'mixed', got {kind!r}")
    jobs = [(n, d, seed, c, size, kind, reverse) for c, size in _chunks(count)]
    if workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(_cloud_chunk, jobs))
    else:
        parts = [_cloud_chunk(j) for j in jobs]
    meta = {"n": n, "d": d, "seed": seed, "kind": kind, "reverse": reverse}
    return PlanarSample(np.concatenate(parts), f"{kind}-cloud", meta)


def tuple_for_index(n: int, d: int, seed: int, index: int, count: int, kind: str = "pure") -> np.ndarray:
    """Regenerate the states behind sample ``index`` of a cloud of ``count`` samples."""
    if not 0 <= index < count:
        raise IndexError(f"index {index} outside a cloud of {count}")
    chunk, offset = divmod(index, CHUNK)
    size = min(CHUNK, count - chunk * CHUNK)
    return _chunk_tuples(n, d, seed, chunk, size, kind)[offset]


@dataclass
class CloudStats:
    n: int
    d: int
    count: int
    inside: int
    worst_violation: float
    seed: int
    label: str = ""
    violations: np.ndarray = field(default_factory=lambda: np.empty(0, dtype=int))

    @property
    def passed(self) -> bool:
        return self.inside == self.count


def containment_report(cloud: PlanarSample, n: int, tol: float = 1e-9) -> CloudStats:
    z = cloud.points
    excess = np.abs(z) - bd.boundary_radius(n, bd.argument(z))
    bad = np.nonzero(excess > tol)[0]
    return CloudStats(
        n=n,
        d=cloud.meta.get("d", 0),
        count=z.size,
        inside=int(z.size - bad.size),
        worst_violation=float(np.max(excess)) if z.size else -math.inf,
        seed=cloud.meta.get("seed", 0),
        label=evidence_label(n),
        violations=bad,
    )


def dump_violations(stats: CloudStats, cloud: PlanarSample, path) -> int:
    """Write every violating tuple with full amplitudes; returns the row count."""
    kind = cloud.meta.get("kind", "pure")
    n = cloud.meta.get("n", stats.n)
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["index", "re", "im", "excess", "state", "component", "re_amp", "im_amp"])
        for idx in stats.violations:
            z = cloud.points[idx]
            excess = abs(z) - bd.boundary_radius(stats.n, bd.argument(z))
            states = tuple_for_index(n, stats.d, stats.seed, int(idx), len(cloud), kind)
            for k, vec in enumerate(states):
                for j, a in enumerate(np.ravel(vec)):
                    w.writerow([idx, f"{z.real:.17g}", f"{z.imag:.17g}", f"{excess:.17g}",
                                k, j, f"{a.real:.17g}", f"{a.imag:.17g}"])
    return int(stats.violations.size)


# -- hulls -------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class Hull:
    """Convex polygon, vertices counterclockwise, no collinear triples."""

    vertices: np.ndarray  # (k, 2)

    @property
    def area(self) -> float:
        v = self.vertices
        if len(v) < 3:
            return 0.0
        x, y = v[:, 0], v[:, 1]
        return float(0.5 * (np.dot(x, np.roll(y, -1)) - np.dot(y, np.roll(x, -1))))

    def __len__(self):
        return len(self.vertices)


def _as_xy(points) -> np.ndarray:
    p = np.asarray(points)
    if np.iscomplexobj(p) or p.ndim == 1:
        p = np.asarray(p, dtype=complex).ravel()
        return np.column_stack([p.real, p.imag])
    return np.asarray(p, dtype=float).reshape(-1, 2)


def _interior_filter(xy: np.ndarray, directions: int = 64, block: int = 1 << 17) -> np.ndarray:
    # drop points strictly inside the polygon of extreme points in fixed directions
    ang = np.arange(directions) * (2 * np.pi / directions)
    dirs = np.column_stack([np.cos(ang), np.sin(ang)])
    best = np.full(directions, -np.inf)
    idx = np.zeros(directions, dtype=int)
    for s in range(0, len(xy), block):
        proj = xy[s:s + block] @ dirs.T
        j = np.argmax(proj, axis=0)
        val = proj[j, np.arange(directions)]
        upd = val > best
        best[upd], idx[upd] = val[upd], j[upd] + s
    keep_order = [idx[0]] + [j for i, j in zip(idx[:-1], idx[1:]) if j != i]
    if len(keep_order) > 1 and keep_order[-1] == keep_order[0]:
        keep_order.pop()
    poly = xy[keep_order]
    if len(np.unique(poly, axis=0)) < 3:
        return xy
    keep = []
    for s in range(0, len(xy), block):
        part = xy[s:s + block]
        inside = np.ones(len(part), dtype=bool)
        for a, b in zip(poly, np.roll(poly, -1, axis=0)):
            e = b - a
            inside &= (e[0] * (part[:, 1] - a[1]) - e[1] * (part[:, 0] - a[0])) > 0
        keep.append(part[~inside])
    return np.concatenate(keep)


def _cross(o, a, b) -> float:
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def convex_hull(points) -> Hull:
    """Andrew's monotone chain, after discarding clearly interior points."""
    xy = _as_xy(points)
    if len(xy) == 0:
        raise ValueError("convex hull needs at least one point")
    if len(xy) > 64:
        xy = _interior_filter(xy)
    pts = sorted(set(map(tuple, xy.tolist())))
    if len(pts) <= 2:
        return Hull(np.array(pts, dtype=float).reshape(-1, 2))
    lower, upper = [], []
    for p in pts:
        while len(lower) >= 2 and _cross(lower[-2], lower[-1], p) <= 0:
            lower.pop()
        lower.append(p)
    for p in reversed(pts):
        while len(upper) >= 2 and _cross(upper[-2], upper[-1], p) <= 0:
            upper.pop()
        upper.append(p)
    return Hull(np.array(lower[:-1] + upper[:-1], dtype=float))


def hull_contains(hull: Hull, points, tol: float = 0.0) -> np.ndarray:
    """Whether each point lies within distance ``tol`` of the hull polygon (inside test per edge)."""
    xy = _as_xy(points)
    v = hull.vertices
    if len(v) < 3:
        raise ValueError("hull is degenerate")
    ok = np.ones(len(xy), dtype=bool)
    for a, b in zip(v, np.roll(v, -1, axis=0)):
        e = b - a
        dist = (e[0] * (xy[:, 1] - a[1]) - e[1] * (xy[:, 0] - a[0])) / np.hypot(*e)
        ok &= dist >= -tol
    return ok


def hull_compare(a: Hull, b: Hull) -> float:
    """Area of the symmetric difference over the area of the union."""
    from shapely.geometry import Polygon

    if len(a) < 3 or len(b) < 3 or a.area <= 0 or b.area <= 0:
        raise ValueError("hull_compare needs non-degenerate hulls")
    pa, pb = Polygon(a.vertices), Polygon(b.vertices)
    inter = pa.intersection(pb).area
    union = pa.area + pb.area - inter
    return float((union - inter) / union)


# -- determinant bounds ------------------------------------------------------

def det3(r1, r2, r3) -> float:
    return float(np.dot(np.cross(r1, r2), r3))


def det_quad(r1, r2, r3, r4) -> float:
    """det(r1 + r2, r2 + r3, r3 + r4) for unit vectors."""
    rs = [np.asarray(r, dtype=float) for r in (r1, r2, r3, r4)]
    for r in rs:
        if abs(np.linalg.norm(r) - 1) > 1e-10:
            raise ValueError(f"det_quad needs unit vectors, got |r| = {np.linalg.norm(r)!r}")
    return det3(rs[0] + rs[1], rs[1] + rs[2], rs[2] + rs[3])


def random_unit_vectors(rng: np.random.Generator, shape) -> np.ndarray:
    shape = (shape,) if np.isscalar(shape) else tuple(shape)
    v = rng.standard_normal(shape + (3,))
    return v / np.linalg.norm(v, axis=-1, keepdims=True)


def det_bound_campaign(count: int, seed: int = 0) -> dict:
    rng = derived_rng(seed)
    q = random_unit_vectors(rng, (count, 4))
    s = q[:, :3] + q[:, 1:]
    quad = np.einsum("ij,ij->i", np.cross(s[:, 0], s[:, 1]), s[:, 2])
    tri = np.einsum("ij,ij->i", np.cross(q[:, 0], q[:, 1]), q[:, 2])
    return {
        "count": count,
        "max_abs_det_quad": float(np.max(np.abs(quad))),
        "det_quad_bound": DET_QUAD_BOUND,
        "max_abs_det3": float(np.max(np.abs(tri))),
        "passed": bool(np.max(np.abs(quad)) <= DET_QUAD_BOUND + 1e-12 and np.max(np.abs(tri)) <= 1 + 1e-12),
    }


# -- route equivalence -------------------------------------------------------

def route_errors_qubit(n: int, count: int, seed: int = 0) -> dict:
    """Max pairwise disagreement of all routes on random pure-qubit tuples."""
    rs = random_unit_vectors(derived_rng(seed, n), (count, n))
    by_route = {
        "pure": delta_pure_batch(bloch_kets_batch(rs)),
        "trace": delta_trace_batch(bloch_density_batch(rs)),
        "bloch": delta_bloch_batch(rs),
    }
    if n in (3, 4, 5):
        xy = np.array([closed_form_xy(n, r) for r in rs])
        by_route["closed"] = xy[:, 0] + 1j * xy[:, 1]
    names = list(by_route)
    out = {}
    for i, a in enumerate(names):
        for b in names[i + 1:]:
            out[f"{a}-{b}"] = float(np.max(np.abs(by_route[a] - by_route[b])))
    return out


def route_errors_qudit(count: int, seed: int = 0, max_n: int = 8, max_d: int = 4) -> float:
    """Max |delta_pure - delta_trace| over random (n, d) with n <= max_n, d <= max_d."""
    rng = derived_rng(seed)
    worst = 0.0
    ns = rng.integers(2, max_n + 1, count)
    ds = rng.integers(2, max_d + 1, count)
    for n in range(2, max_n + 1):
        for d in range(2, max_d + 1):
            m = int(np.sum((ns == n) & (ds == d)))
            if not m:
                continue
            psi = haar_vectors(rng, (m, n), d)
            rho = psi[..., :, None] * psi[..., None, :].conj()
            err = np.abs(delta_pure_batch(psi) - delta_trace_batch(rho))
            worst = max(worst, float(err.max()))
    return worst


# -- optimisation ------------------------------------------------------------

@dataclass
class SearchResult:
    n: int
    best: float
    states: StateTuple
    values: np.ndarray  # per restart
    tau: float
    label: str

    @property
    def gap(self) -> float:
        return self.tau - self.best

    @property
    def exceeds_tau(self) -> bool:
        return self.best > self.tau + 1e-9


def _kets_from_coords(x: np.ndarray, n: int, d: int) -> np.ndarray:
    if d == 2:
        th, ph = x[..., :n], x[..., n:]
        return np.stack([np.cos(th / 2) + 0j, np.exp(1j * ph) * np.sin(th / 2)], axis=-1)
    v = x[..., : n * d] + 1j * x[..., n * d:]
    v = v.reshape(x.shape[:-1] + (n, d))
    return v / np.linalg.norm(v, axis=-1, keepdims=True)


def max_im_search(
    n: int,
    restarts: int = 64,
    seed: int = 0,
    d: int = 2,
    min_step: float = 1e-9,
    max_sweeps: int = 20_000,
) -> SearchResult:
    """Maximise Im Delta_n over n-tuples of pure states in C^d.

    Multi-restart coordinate pattern search: each coordinate is nudged by
    +/- step, improvements are kept, and a restart's step halves after a
    sweep without improvement.  All restarts advance together.  For d = 2 the
    coordinates are Bloch angles; otherwise real and imaginary amplitude
    parts.
    """
    bd._check_order(n)
    rng = derived_rng(seed)
    if d == 2:
        x = np.concatenate([np.arccos(rng.uniform(-1, 1, (restarts, n))),
                            rng.uniform(0, 2 * np.pi, (restarts, n))], axis=1)
    else:
        x = rng.standard_normal((restarts, 2 * n * d))

    def objective(x):
        return delta_pure_batch(_kets_from_coords(x, n, d)).imag

    f = objective(x)
    step = np.full(restarts, 0.5)
    for _ in range(max_sweeps):
        active = step > min_step
        if not active.any():
            break
        improved = np.zeros(restarts, dtype=bool)
        for j in range(x.shape[1]):
            for sgn in (1.0, -1.0):
                trial = x.copy()
                trial[:, j] += sgn * step
                ft = objective(trial)
                better = active & (ft > f)
                x[better] = trial[better]
                f[better] = ft[better]
                improved |= better
        step = np.where(active & ~improved, step / 2, step)
    k = int(np.argmax(f))
    kets = _kets_from_coords(x[k], n, d)
    states = StateTuple(tuple(PureState(v / np.linalg.norm(v)) for v in kets))
    return SearchResult(n, float(f[k]), states, f, bd.tau(n), evidence_label(n))


# -- convexity ---------------------------------------------------------------

@dataclass
class ConcavityResult:
    n: int
    all_negative: bool
    worst: float  # largest (closest to zero) finite-difference d2y/dx2
    analytic_agrees: bool | None  # None where no analytic formula is checked


def concavity_analytic(n: int, theta):
    """Closed form of d2y/dx2 along the upper boundary, stated for n >= 4."""
    th = np.asarray(theta, dtype=float)
    return (
        -(n - 1) / n
        / np.cos(np.pi / n) ** n
        * np.cos((th - np.pi) / n) ** (n + 1)
        / np.sin((np.pi + (n - 1) * th) / n) ** 3
    )


def concavity_numeric(n: int, theta, h: float = 1e-4):
    """d2y/dx2 of the parametric boundary by central differences in theta."""
    th = np.asarray(theta, dtype=float)

    def xy(t):
        r = bd.boundary_radius(n, t)
        return r * np.cos(t), r * np.sin(t)

    (xm, ym), (x0, y0), (xp, yp) = xy(th - h), xy(th), xy(th + h)
    dx, dy = (xp - xm) / (2 * h), (yp - ym) / (2 * h)
    ddx, ddy = (xp - 2 * x0 + xm) / h**2, (yp - 2 * y0 + ym) / h**2
    return (dx * ddy - dy * ddx) / dx**3


def concavity_check(n: int, grid: int = 1000) -> ConcavityResult:
    if grid < 8:
        raise ValueError(f"grid must be >= 8, got {grid}")
    th = np.pi * np.arange(1, grid + 1) / (grid + 1)
    num = concavity_numeric(n, th)
    agrees = None
    if n >= 4:
        agrees = bool(np.all(np.sign(concavity_analytic(n, th)) == np.sign(num)))
    return ConcavityResult(n, bool(np.all(num < 0)), float(np.max(num)), agrees)


def midpoint_convexity(n: int, pairs: int = 10_000, seed: int = 0, tol: float = 1e-9) -> dict:
    """Midpoints of random boundary chords must stay in R_n."""
    rng = derived_rng(seed, n)
    th = rng.uniform(0, 2 * np.pi, (pairs, 2))
    z = bd.boundary_radius(n, th) * np.exp(1j * th)
    mid = z.mean(axis=1)
    excess = np.abs(mid) - bd.boundary_radius(n, bd.argument(mid))
    return {"pairs": pairs, "failures": int(np.sum(excess > tol)), "worst_excess": float(excess.max())}


# -- suites ------------------------------------------------------------------

SUITES = ("containment", "envelope", "bloch", "convexity", "detbound", "dimension", "hull", "maxim")


@dataclass
class SuiteReport:
    suite: str
    passed: bool
    rows: list  # (key, value)
    label: str = ""

    def as_text(self) -> str:
        head = f"[{'PASS' if self.passed else 'FAIL'}] {self.suite}"
        if self.label:
            head += f" ({self.label})"
        width = max((len(k) for k, _ in self.rows), default=0)
        return "\n".join([head] + [f"  {k:<{width}}  {_fmt(v)}" for k, v in self.rows])


def _fmt(v) -> str:
    if isinstance(v, float):
        return f"{v:.17g}"
    return str(v)


def run_suite(
    suite: str,
    n: int | None = None,
    d: int | None = None,
    count: int | None = None,
    seed: int = 0,
    tol: float | None = None,
    grid: int | None = None,
    restarts: int | None = None,
    workers: int = 1,
) -> SuiteReport:
    if suite not in SUITES:
        raise ValueError(f"unknown suite {suite!r}; choose from {', '.join(SUITES)}")
    return globals()[f"_suite_{suite}"](n=n, d=d, count=count, seed=seed, tol=tol, grid=grid,
                                         restarts=restarts, workers=workers)


def _suite_containment(n, d, count, seed, tol, workers, **_):
    n, d, count = n or 3, d or 2, count or 100_000
    tol = 1e-9 if tol is None else tol
    bd._check_order(n)
    cloud = sample_cloud(n, d, count, seed, workers=workers)
    st = containment_report(cloud, n, tol)
    rows = [("n", n), ("d", d), ("count", st.count), ("inside", st.inside),
            ("worst_violation", st.worst_violation), ("tol", tol), ("seed", seed), ("label", st.label)]
    if not st.passed and n not in THEOREM_ORDERS:
        rows.append(("verdict", "conjecture-refuting candidate"))
    return SuiteReport("containment", st.passed, rows, st.label)


def _suite_envelope(n, grid, tol, **_):
    from .envelope import envelope_numeric, n3_family, n4_inner_family, n4_outer_family
    from .geometry import minkowski_square_boundary

    grid, tol = grid or 720, 1e-8 if tol is None else tol
    th = np.arange(grid) * (2 * np.pi / grid)
    orders = [n] if n else [3, 4]
    rows, ok = [], True
    for m in orders:
        if m not in (3, 4):
            raise ValueError("the envelope suite covers n = 3 and n = 4")
        fam = n3_family() if m == 3 else n4_outer_family()
        res = envelope_numeric(fam, th)
        err = float(np.max(np.abs(res.curve.radii - bd.boundary_radius(m, res.curve.thetas))))
        rows += [(f"{fam}_sup_error", err), (f"{fam}_failures", len(res.failures))]
        ok &= err <= tol and not res.failures
        if m == 4:
            for t in np.round(np.arange(1, 10) / 10, 1):
                fam = n4_inner_family(float(t))
                res = envelope_numeric(fam, th)
                err = float(np.max(np.abs(res.curve.radii - minkowski_square_boundary(t, res.curve.thetas))))
                rows.append((f"{fam}_sup_error", err))
                ok &= err <= tol and not res.failures
    rows += [("grid", grid), ("tol", tol)]
    return SuiteReport("envelope", bool(ok), rows, "theorem")


def _suite_bloch(n, count, seed, tol, **_):
    count, tol = count or 10_000, 1e-10 if tol is None else tol
    rows, ok = [], True
    for m in ([n] if n else [3, 4, 5]):
        for k, v in route_errors_qubit(m, count, seed).items():
            rows.append((f"n{m}_{k}", v))
            ok &= v <= tol
    qudit = route_errors_qudit(count, seed)
    rows += [("qudit_pure-trace", qudit), ("count", count), ("tol", tol)]
    ok &= qudit <= 1e-12
    return SuiteReport("bloch", bool(ok), rows)


def _suite_convexity(n, grid, count, seed, tol, **_):
    grid, count = grid or 1000, count or 10_000
    tol = 1e-9 if tol is None else tol
    rows, ok = [], True
    for m in ([n] if n else range(3, 10)):
        mid = midpoint_convexity(m, count, seed, tol)
        cc = concavity_check(m, grid)
        rows += [(f"n{m}_midpoint_failures", mid["failures"]), (f"n{m}_worst_d2y", cc.worst),
                 (f"n{m}_analytic_sign_agrees", cc.analytic_agrees)]
        ok &= mid["failures"] == 0 and cc.all_negative and cc.analytic_agrees is not False
    return SuiteReport("convexity", bool(ok), rows)


def _suite_detbound(count, seed, **_):
    res = det_bound_campaign(count or 100_000, seed)
    passed = res.pop("passed")
    return SuiteReport("detbound", passed, list(res.items()) + [("seed", seed)])


def _suite_dimension(n, d, count, seed, tol, workers, **_):
    n, count = n or 3, count or 1_000_000
    d = d or 3
    tol = 0.02 if tol is None else tol
    ha = convex_hull(sample_cloud(n, 2, count, seed, workers=workers).points)
    hb = convex_hull(sample_cloud(n, d, count, seed + 1, workers=workers).points)
    ratio = hull_compare(ha, hb)
    rows = [("n", n), ("d_pair", f"2,{d}"), ("count", count), ("symdiff_over_union", ratio),
            ("threshold", tol), ("threshold_kind", "artifact choice")]
    return SuiteReport("dimension", ratio < tol, rows, "conjecture evidence")


def _suite_hull(n, d, count, seed, tol, workers, **_):
    n, d, count = n or 3, d or 2, count or 1_000_000
    tol = 0.02 if tol is None else tol
    hull = convex_hull(sample_cloud(n, d, count, seed, workers=workers).points)
    area = bd.region_area(n)
    rel = abs(hull.area - area) / area
    mixed = sample_cloud(n, d, max(count // 100, 1), seed + 1, kind="mixed", workers=workers)
    outside = int(np.sum(~hull_contains(hull, mixed.points, 1e-6)))
    rows = [("n", n), ("d", d), ("count", count), ("hull_area", hull.area), ("region_area", area),
            ("relative_area_gap", rel), ("mixed_outside_pure_hull", outside)]
    return SuiteReport("hull", rel < tol and outside == 0, rows, evidence_label(n))


def _suite_maxim(n, d, restarts, count, seed, **_):
    n, d = n or 3, d or 2
    restarts = restarts or count or 64
    res = max_im_search(n, restarts, seed, d=d)
    rows = [("n", n), ("d", d), ("restarts", restarts), ("best", res.best), ("tau", res.tau),
            ("gap", res.gap), ("label", res.label)]
    if n in THEOREM_ORDERS:
        passed = res.best >= res.tau - 1e-4 and not res.exceeds_tau
    else:
        passed = not res.exceeds_tau
        if res.exceeds_tau:
            rows.append(("verdict", "conjecture-refuting candidate"))
    return SuiteReport("maxim", bool(passed), rows, res.label)
