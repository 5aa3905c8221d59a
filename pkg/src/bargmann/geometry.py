"""Elliptical disks with a focus at the origin and Minkowski products.

A disk is stored as ``(c, s)``: the set {z : |z| + |z - c| <= s}.  This is
the numerical range of a rank-one matrix u v^dag (c = <v|u>, s = |u||v|)
and, scaled by the neighbour-overlap product, the set swept out by the
last state of a Bargmann tuple.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .states import DimensionMismatchError, PureState, derived_rng

TWO_PI = 2 * np.pi
DISK_TOL = 1e-12


class DegenerateDiskError(ValueError):
    pass


@dataclass(frozen=True)
class EllipticalDisk:
    """{z : |z| + |z - c| <= s}, foci 0 and c, major axis s."""

    c: complex
    s: float

    def __post_init__(self):
        c, s = complex(self.c), float(self.s)
        if s < 0:
            raise ValueError(f"sum bound must be >= 0, got {s}")
        if abs(c) > s + DISK_TOL:
            raise ValueError(f"|c| = {abs(c)!r} exceeds s = {s!r}")
        object.__setattr__(self, "c", c)
        object.__setattr__(self, "s", s)

    @property
    def is_point(self) -> bool:
        return self.s == 0.0

    @property
    def is_degenerate(self) -> bool:
        """Segment [0, c] or the point {0}."""
        return self.s == 0.0 or abs(self.c) >= self.s - DISK_TOL

    @property
    def minor_axis(self) -> float:
        return float(np.sqrt(max(self.s**2 - abs(self.c) ** 2, 0.0)))

    def contains(self, z, tol: float = 0.0):
        return disk_contains(self, z, tol)

    def scaled(self, w: complex) -> "EllipticalDisk":
        """The image w * disk."""
        return EllipticalDisk(w * self.c, abs(w) * self.s)


@dataclass(frozen=True, eq=False)
class PlanarSample:
    points: np.ndarray
    provenance: str = ""
    meta: dict = field(default_factory=dict)

    def __post_init__(self):
        pts = np.asarray(self.points, dtype=complex).ravel()
        if not np.all(np.isfinite(pts)):
            raise ValueError("planar sample contains non-finite points")
        object.__setattr__(self, "points", pts)

    def __len__(self):
        return self.points.size


def rank_one_nr_params(u, v) -> EllipticalDisk:
    """Numerical range of u v^dag: foci 0 and <v|u>, major axis |u||v|."""
    u = np.asarray(u, dtype=complex).ravel()
    v = np.asarray(v, dtype=complex).ravel()
    if u.shape != v.shape:
        raise DimensionMismatchError(f"vectors have lengths {u.size} and {v.size}")
    s = float(np.linalg.norm(u) * np.linalg.norm(v))
    c = complex(np.vdot(v, u))
    if abs(c) > s:  # Cauchy-Schwarz, up to rounding
        c *= s / abs(c)
    return EllipticalDisk(c, s)


def disk_from_tuple(states: Sequence[PureState]) -> EllipticalDisk:
    """Disk swept by Tr(psi_1 ... psi_{m} psi) as the extra state psi varies."""
    states = list(states)
    if len(states) < 2:
        raise ValueError(f"need at least 2 states, got {len(states)}")
    vecs = np.stack([np.asarray(s.amplitudes) for s in states])
    chain = np.prod([np.vdot(vecs[j], vecs[j + 1]) for j in range(len(vecs) - 1)])
    s = float(abs(chain))
    if s == 0.0:
        return EllipticalDisk(0j, 0.0)
    c = complex(chain * np.vdot(vecs[-1], vecs[0]))
    if abs(c) > s:
        c *= s / abs(c)
    return EllipticalDisk(c, s)


def disk_contains(disk: EllipticalDisk, z, tol: float = 0.0):
    if tol < 0:
        raise ValueError("tol must be >= 0")
    z = np.asarray(z, dtype=complex)
    inside = np.abs(z) + np.abs(z - disk.c) <= disk.s + tol
    return bool(inside) if inside.ndim == 0 else inside


def ellipse_polar(disk: EllipticalDisk, theta):
    """Boundary radius of a non-degenerate disk along direction theta."""
    a = abs(disk.c)
    if disk.s <= 0 or a >= disk.s:
        raise DegenerateDiskError(f"disk (c={disk.c}, s={disk.s}) has no polar boundary")
    phase = np.angle(disk.c) if a > 0 else 0.0
    theta = np.asarray(theta, dtype=float)
    r = (disk.s**2 - a**2) / (2 * (disk.s - a * np.cos(theta - phase)))
    return float(r) if r.ndim == 0 else r


def sample_disk_boundary(disk: EllipticalDisk, count: int, seed: int = 0) -> PlanarSample:
    """Points on the boundary at uniformly random polar angles."""
    rng = derived_rng(seed)
    if disk.is_point:
        return PlanarSample(np.zeros(count, dtype=complex), "disk-boundary")
    if disk.is_degenerate:
        # segment: its relative boundary is the whole segment
        return PlanarSample(rng.uniform(0, 1, count) * disk.c, "disk-boundary")
    th = rng.uniform(0, TWO_PI, count)
    return PlanarSample(ellipse_polar(disk, th) * np.exp(1j * th), "disk-boundary")


def sample_disk_interior(disk: EllipticalDisk, count: int, seed: int = 0) -> PlanarSample:
    """Uniform points of the filled disk by rejection from its bounding box."""
    rng = derived_rng(seed)
    if disk.is_degenerate:
        return PlanarSample(rng.uniform(0, 1, count) * disk.c, "disk-interior")
    centre = disk.c / 2
    half = disk.s / 2
    out = np.empty(0, dtype=complex)
    while out.size < count:
        z = centre + rng.uniform(-half, half, 2 * count) + 1j * rng.uniform(-half, half, 2 * count)
        out = np.concatenate([out, z[disk_contains(disk, z)]])
    return PlanarSample(out[:count], "disk-interior")


def minkowski_sample(sets: Sequence[PlanarSample], count: int, seed: int = 0) -> PlanarSample:
    """Products a_1 a_2 ... of one uniformly chosen point per set, ``count`` times."""
    sets = list(sets)
    if not sets:
        raise ValueError("need at least one set")
    rng = derived_rng(seed)
    out = np.ones(count, dtype=complex)
    for s in sets:
        if len(s) == 0:
            raise ValueError("cannot take a Minkowski product with an empty set")
        out = out * s.points[rng.integers(0, len(s), count)]
    return PlanarSample(out, "minkowski-product", {"factors": len(sets)})


def minkowski_square_boundary(t: float, theta):
    """Polar radius of the boundary of E_t * E_t, E_t = {|z| + |z - t| <= 1}.

    With h = |cos(theta/2)|, the maximiser over the factor angle sits at
    half the target angle while h >= t, giving (1-t^2)^2 / (4 (1 - t h)^2);
    once h < t it moves off the bisector and the radius is
    (1-t^2) / (4 sin^2(theta/2)).
    """
    t = float(t)
    if not 0 <= t < 1:
        raise ValueError(f"t must lie in [0, 1), got {t}")
    theta = np.asarray(theta, dtype=float)
    h = np.abs(np.cos(theta / 2))
    on_bisector = (1 - t * t) ** 2 / (4 * (1 - t * h) ** 2)
    with np.errstate(divide="ignore"):
        off_bisector = (1 - t * t) / (4 * np.sin(theta / 2) ** 2)
    r = np.where(h >= t, on_bisector, off_bisector)
    return float(r) if r.ndim == 0 else r
