"""Numerical envelopes of one-parameter families of polar curves.

A family is F(r, theta, p) = 0 with parameter p.  Along each ray theta the
member radius r(theta, p) solves F = 0; the envelope point is where
dF/dp = 0 (equivalently where r(theta, .) is stationary), eliminated
numerically by scanning sub-brackets for sign changes of dF/dp and then
bisecting.

Families
--------
N3
    F = r (1 - t cos theta) - t (1 - t^2) / 2, parameter t.  Members are the
    disks t E_t whose union is the third-order set.
N4_INNER
    F = (1 - t cos a)(1 - t cos(a - theta)) r - (1 - t^2)^2 / 4, parameter a
    at fixed t.  Members are z E_t for z on the boundary of E_t; the
    envelope is the boundary of E_t * E_t.
N4_OUTER
    G = (1 - t cos(theta/2)) sqrt(r) - (1 - t^2) / 2, parameter t.  Members
    are the boundaries of E_t * E_t; the envelope is the fourth-order
    boundary.  theta/2 is the half angle of theta taken in (-pi, pi].
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field

import numpy as np

from .boundary import PolarCurve, normalize_angle

TWO_PI = 2 * np.pi


class FamilyId(str, enum.Enum):
    N3 = "N3"
    N4_INNER = "N4_INNER"
    N4_OUTER = "N4_OUTER"


class NoEnvelopePointError(ValueError):
    pass


@dataclass(frozen=True)
class CurveFamily:
    id: FamilyId
    t: float | None = None  # fixed t for N4_INNER

    def __post_init__(self):
        fid = FamilyId(self.id)
        object.__setattr__(self, "id", fid)
        if fid is FamilyId.N4_INNER:
            if self.t is None or not 0 < self.t < 1:
                raise ValueError(f"N4_INNER needs a fixed t in (0, 1), got {self.t}")

    @property
    def domain(self) -> tuple[float, float]:
        if self.id is FamilyId.N4_INNER:
            return 0.0, TWO_PI
        return 0.0, 1.0

    def radius(self, theta, param):
        """Member radius along theta, i.e. the r solving F(r, theta, param) = 0."""
        theta = np.asarray(theta, dtype=float)
        p = np.asarray(param, dtype=float)
        if self.id is FamilyId.N3:
            return p * (1 - p * p) / (2 * (1 - p * np.cos(theta)))
        if self.id is FamilyId.N4_INNER:
            t = self.t
            return (1 - t * t) ** 2 / (4 * (1 - t * np.cos(p)) * (1 - t * np.cos(p - theta)))
        h = _half_cos(theta)
        return ((1 - p * p) / (2 * (1 - p * h))) ** 2

    def __str__(self):
        return self.id.value if self.t is None else f"{self.id.value}(t={self.t})"


def _half_cos(theta):
    # cos of half the angle, with the angle reduced to (-pi, pi]
    return np.abs(np.cos(np.asarray(theta, dtype=float) / 2))


def family_eval(family: CurveFamily, r, theta, param):
    """(F, dF/dparam) at (r, theta, param)."""
    r = np.asarray(r, dtype=float)
    theta = np.asarray(theta, dtype=float)
    p = np.asarray(param, dtype=float)
    if family.id is FamilyId.N3:
        f = r * (1 - p * np.cos(theta)) - p * (1 - p * p) / 2
        df = 0.5 * (3 * p * p - 2 * r * np.cos(theta) - 1)
    elif family.id is FamilyId.N4_INNER:
        t = family.t
        f = (1 - t * np.cos(p)) * (1 - t * np.cos(p - theta)) * r - (1 - t * t) ** 2 / 4
        df = r * t * (np.sin(p - theta) + np.sin(p) - t * np.sin(2 * p - theta))
    elif family.id is FamilyId.N4_OUTER:
        h = _half_cos(theta)
        sr = np.sqrt(r)
        f = (1 - p * h) * sr - (1 - p * p) / 2
        df = p - sr * h
    else:  # pragma: no cover - FamilyId is closed
        raise ValueError(f"unknown family {family.id!r}")
    return f, df


def n3_family() -> CurveFamily:
    return CurveFamily(FamilyId.N3)


def n4_inner_family(t: float) -> CurveFamily:
    return CurveFamily(FamilyId.N4_INNER, t)


def n4_outer_family() -> CurveFamily:
    return CurveFamily(FamilyId.N4_OUTER)


@dataclass(frozen=True, eq=False)
class EnvelopeResult:
    family: CurveFamily
    curve: PolarCurve
    params: np.ndarray
    failures: dict = field(default_factory=dict)


def _stationarity(family: CurveFamily, theta, p):
    # 0/0 at theta = 0, t = 1 is covered by the analytic limit
    with np.errstate(invalid="ignore", divide="ignore"):
        return family_eval(family, family.radius(theta, p), theta, p)[1]


def _limit_at_zero(family: CurveFamily):
    # every member passes through the rightmost point only in the limit
    if family.id is FamilyId.N4_INNER:
        return None
    return 1.0, 1.0


def envelope_numeric(
    family: CurveFamily,
    theta_grid,
    brackets: int = 256,
    xtol: float = 1e-12,
) -> EnvelopeResult:
    """Envelope radius at each angle of ``theta_grid``.

    All stationary parameters are located (sign changes over ``brackets``
    equal sub-intervals, refined by bisection to ``xtol``); among those with
    member radius in (0, 1] the largest radius is kept.  Angles without any
    valid stationary point are reported in ``failures`` and left out of the
    curve.
    """
    theta = normalize_angle(np.atleast_1d(np.asarray(theta_grid, dtype=float)))
    order = np.argsort(theta, kind="stable")
    theta = theta[order]
    lo, hi = family.domain
    nodes = np.linspace(lo, hi, brackets + 1)

    th2 = theta[:, None]
    g = _stationarity(family, th2, nodes[None, :])
    gl, gr = g[:, :-1], g[:, 1:]
    crossing = (np.sign(gl) * np.sign(gr) < 0)
    exact = g == 0

    ti, bi = np.nonzero(crossing)
    a = nodes[bi].copy()
    b = nodes[bi + 1].copy()
    ga = gl[ti, bi].copy()
    th_c = theta[ti]
    while a.size and np.max(b - a) > xtol:
        m = 0.5 * (a + b)
        gm = _stationarity(family, th_c, m)
        left = np.sign(gm) == np.sign(ga)
        a = np.where(left, m, a)
        ga = np.where(left, gm, ga)
        b = np.where(left, b, m)
    roots = 0.5 * (a + b)

    zi, zj = np.nonzero(exact)
    cand_theta_idx = np.concatenate([ti, zi])
    cand_param = np.concatenate([roots, nodes[zj]])
    with np.errstate(invalid="ignore", divide="ignore"):
        cand_r = family.radius(theta[cand_theta_idx], cand_param)
    valid = (cand_r > 0) & (cand_r <= 1 + 1e-12) & np.isfinite(cand_r)

    best_r = np.full(theta.size, -np.inf)
    best_p = np.full(theta.size, np.nan)
    for k, p, r in zip(cand_theta_idx[valid], cand_param[valid], cand_r[valid]):
        if r > best_r[k]:
            best_r[k], best_p[k] = r, p

    failures = {}
    at_zero = theta == 0.0
    limit = _limit_at_zero(family)
    if limit is not None:
        best_r[at_zero], best_p[at_zero] = limit
    for k in np.nonzero(~np.isfinite(best_r))[0]:
        failures[float(theta[k])] = f"no stationary parameter with r in (0, 1] for {family}"
    ok = np.isfinite(best_r)
    curve = PolarCurve(theta[ok], best_r[ok])
    return EnvelopeResult(family, curve, best_p[ok], failures)


def envelope_point(family: CurveFamily, theta: float, **kw) -> tuple[float, float]:
    """Single-angle convenience wrapper returning (r, param)."""
    res = envelope_numeric(family, [theta], **kw)
    if res.failures:
        raise NoEnvelopePointError(next(iter(res.failures.values())))
    return float(res.curve.radii[0]), float(res.params[0])
