"""The region R_n bounded by r_n(theta) = cos^n(pi/n) sec^n((theta - pi)/n).

R_n is the set of n-th order pure-state invariants for n in {3, 4}
(and conjecturally for every n >= 3).  Angles are taken in [0, 2pi).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .states import PureState, StateTuple

TWO_PI = 2 * np.pi


class OutOfRangeError(ValueError):
    pass


def _check_order(n: int) -> int:
    if int(n) != n or n < 3:
        raise ValueError(f"region order must be an integer >= 3, got {n}")
    return int(n)


def normalize_angle(theta):
    th = np.mod(np.asarray(theta, dtype=float), TWO_PI)
    # mod can round up to exactly 2pi for tiny negative inputs
    th = np.where(th >= TWO_PI, 0.0, th)
    return float(th) if th.ndim == 0 else th


def omega(n: int) -> complex:
    """exp(-2 pi i / n)."""
    return complex(np.exp(-2j * np.pi / n))


def boundary_radius(n: int, theta):
    n = _check_order(n)
    th = normalize_angle(theta)
    r = np.cos(np.pi / n) ** n / np.cos((th - np.pi) / n) ** n
    return float(r) if np.ndim(r) == 0 else r


def boundary_point_complex(n: int, theta):
    """((w + 1) / (w + exp(-2 i theta / n)))^n with w = omega(n)."""
    n = _check_order(n)
    th = normalize_angle(theta)
    w = omega(n)
    z = ((w + 1) / (w + np.exp(-2j * th / n))) ** n
    return complex(z) if np.ndim(z) == 0 else z


def argument(z):
    """Phase in [0, 2pi), with arg 0 = 0."""
    return normalize_angle(np.angle(z))


def region_contains(n: int, z, tol: float = 0.0):
    if tol < 0:
        raise ValueError("tol must be >= 0")
    z = np.asarray(z, dtype=complex)
    inside = np.abs(z) <= boundary_radius(n, argument(z)) + tol
    return bool(inside) if inside.ndim == 0 else inside


def tau(n: int) -> float:
    """Largest imaginary part over R_n."""
    n = _check_order(n)
    return float(np.cos(np.pi / n) ** n / np.cos(np.pi / (2 * (n - 1))) ** (n - 1))


def theta_star(n: int) -> float:
    """Angle at which r_n(theta) sin(theta) attains tau(n)."""
    n = _check_order(n)
    return (n - 2) / (n - 1) * np.pi / 2


def region_area(n: int, points: int = 10_000) -> float:
    """(1/2) int r_n^2 dtheta by the periodic trapezoid rule."""
    th = np.arange(points) * (TWO_PI / points)
    return float(0.5 * np.sum(boundary_radius(n, th) ** 2) * (TWO_PI / points))


@dataclass(frozen=True)
class RegionSpec:
    n: int

    def __post_init__(self):
        _check_order(self.n)

    @property
    def omega(self) -> complex:
        return omega(self.n)

    @property
    def tau(self) -> float:
        return tau(self.n)

    @property
    def theta_star(self) -> float:
        return theta_star(self.n)

    @property
    def leftmost(self) -> float:
        """Real part of the boundary point at theta = pi."""
        return -np.cos(np.pi / self.n) ** self.n

    def radius(self, theta):
        return boundary_radius(self.n, theta)

    def contains(self, z, tol: float = 0.0):
        return region_contains(self.n, z, tol)

    def curve(self, grid: int) -> "PolarCurve":
        th = np.arange(grid) * (TWO_PI / grid)
        return PolarCurve(th, boundary_radius(self.n, th))


@dataclass(frozen=True, eq=False)
class PolarCurve:
    thetas: np.ndarray
    radii: np.ndarray

    def __post_init__(self):
        th = np.asarray(self.thetas, dtype=float)
        r = np.asarray(self.radii, dtype=float)
        if th.shape != r.shape or th.ndim != 1:
            raise ValueError("thetas and radii must be 1-D arrays of equal length")
        if th.size > 1 and np.any(np.diff(th) <= 0):
            raise ValueError("thetas must be strictly increasing")
        if not np.all(np.isfinite(r)):
            raise ValueError("radii must be finite")
        object.__setattr__(self, "thetas", th)
        object.__setattr__(self, "radii", r)

    @property
    def points(self) -> np.ndarray:
        return self.radii * np.exp(1j * self.thetas)

    def __len__(self):
        return self.thetas.size


def extremal_tuple(n: int, t: float) -> StateTuple:
    """|psi_k> = sin t |0> + conj(omega)^k cos t |1>, k = 0..n-1.

    Every neighbouring overlap equals sin^2 t + conj(omega) cos^2 t, so the
    invariant is that number to the n-th power and lies on the boundary.
    """
    n = _check_order(n)
    w = np.conj(omega(n))
    states = []
    for k in range(n):
        v = np.array([np.sin(t), w**k * np.cos(t)], dtype=complex)
        states.append(PureState(v / np.linalg.norm(v)))
    return StateTuple(tuple(states))


def extremal_value(n: int, t: float) -> complex:
    """Closed form (sin^2 t + conj(omega) cos^2 t)^n of the extremal tuple."""
    return complex((np.sin(t) ** 2 + np.conj(omega(n)) * np.cos(t) ** 2) ** n)


def t_from_theta(n: int, theta: float) -> float:
    """Parameter t in [0, pi/2] whose extremal tuple lands at angle theta."""
    n = _check_order(n)
    th = normalize_angle(theta)
    cos2 = np.sin(th / n) / (2 * np.sin(np.pi / n) * np.cos((th - np.pi) / n))
    eps = 1e-14
    if not -eps <= cos2 <= 1 + eps:
        raise OutOfRangeError(f"cos^2 t = {cos2!r} is outside [0, 1] at theta = {theta!r}")
    return float(np.arccos(np.sqrt(np.clip(cos2, 0.0, 1.0))))


def cubic_discriminant_n3(theta):
    """Discriminant 108 sin^2(theta) of s^3 - 3 s + 2 cos(theta)."""
    return 108 * np.sin(theta) ** 2


def cubic_roots_n3(theta) -> np.ndarray:
    """All three real roots of s^3 - 3 s + 2 cos(theta) = 0, principal first."""
    th = normalize_angle(theta)
    return np.array([2 * np.cos((th - np.pi) / 3 + k * TWO_PI / 3) for k in range(3)])


def cubic_root_n3(theta) -> float:
    """The positive root s = 2 cos((theta - pi)/3); r_3(theta) = s^-3."""
    return float(cubic_roots_n3(theta)[0])
