import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from bargmann import boundary as bd
from bargmann import envelope as ev
from bargmann.envelope import (
    CurveFamily,
    FamilyId,
    NoEnvelopePointError,
    envelope_numeric,
    envelope_point,
    family_eval,
    n3_family,
    n4_inner_family,
    n4_outer_family,
)
from bargmann.geometry import minkowski_square_boundary

GRID = np.arange(720) * (2 * np.pi / 720)
TS = np.round(np.arange(1, 10) / 10, 1)


def test_family_eval_examples():
    f, _ = family_eval(n3_family(), 1.0, 0.0, 1.0)
    assert f == 0
    _, df = family_eval(n3_family(), 0.125, np.pi, 0.5)
    assert abs(df) < 1e-15
    g, dg = family_eval(n4_outer_family(), 1.0, 0.0, 1.0)
    assert g == 0 and dg == 0
    for t in (0.2, 0.7):
        assert abs(family_eval(n4_outer_family(), 1.0, 0.0, t)[1] - (t - 1)) < 1e-15


def _families():
    return [n3_family(), n4_outer_family()] + [n4_inner_family(float(t)) for t in (0.2, 0.5, 0.8)]


@pytest.mark.parametrize("family", _families(), ids=str)
def test_derivative_matches_finite_difference(family):
    rng = np.random.default_rng(3)
    lo, hi = family.domain
    h = 1e-6
    for _ in range(200):
        r, th = rng.uniform(0.05, 1), rng.uniform(0, 2 * np.pi)
        p = rng.uniform(lo + 0.01, hi - 0.01)
        _, df = family_eval(family, r, th, p)
        fd = (family_eval(family, r, th, p + h)[0] - family_eval(family, r, th, p - h)[0]) / (2 * h)
        assert abs(df - fd) <= 1e-6 * max(1.0, abs(df))


@settings(max_examples=100, deadline=None)
@given(th=st.floats(0, 2 * np.pi), p=st.floats(0.01, 0.99))
def test_member_radius_solves_family(th, p):
    for fam in (n3_family(), n4_outer_family(), n4_inner_family(0.4)):
        r = fam.radius(th, p if fam.id is not FamilyId.N4_INNER else p * 2 * np.pi)
        param = p if fam.id is not FamilyId.N4_INNER else p * 2 * np.pi
        assert abs(family_eval(fam, r, th, param)[0]) < 1e-12


def test_n3_envelope_matches_closed_form():
    res = envelope_numeric(n3_family(), GRID)
    assert not res.failures and len(res.curve) == 720
    assert np.max(np.abs(res.curve.radii - bd.boundary_radius(3, GRID))) < 1e-8


def test_n4_outer_envelope_matches_closed_form():
    res = envelope_numeric(n4_outer_family(), GRID)
    assert not res.failures
    assert np.max(np.abs(res.curve.radii - bd.boundary_radius(4, GRID))) < 1e-8


@pytest.mark.parametrize("t", TS)
def test_n4_inner_envelope_matches_square_boundary(t):
    res = envelope_numeric(n4_inner_family(float(t)), GRID)
    assert not res.failures
    assert np.max(np.abs(res.curve.radii - minkowski_square_boundary(t, GRID))) < 1e-8


@pytest.mark.parametrize("family", _families(), ids=str)
def test_envelope_tangency(family):
    res = envelope_numeric(family, GRID)
    f, df = family_eval(family, res.curve.radii, res.curve.thetas, res.params)
    assert np.max(np.abs(f)) < 1e-9
    assert np.max(np.abs(df)) < 1e-8


@pytest.mark.parametrize("family", _families(), ids=str)
def test_grid_refinement_stability(family):
    coarse = envelope_numeric(family, GRID)
    fine = envelope_numeric(family, np.arange(1440) * (np.pi / 720))
    assert np.max(np.abs(fine.curve.radii[::2] - coarse.curve.radii)) < 1e-9


def test_n3_never_returns_rejected_branches():
    res = envelope_numeric(n3_family(), GRID)
    principal = bd.boundary_radius(3, GRID)
    for k in (1, 2):
        with np.errstate(divide="ignore"):
            other = 1 / bd.cubic_roots_n3(GRID)[k] ** 3
        distinct = np.abs(other - principal) > 1e-6
        assert distinct.any()
        assert np.all(np.abs(res.curve.radii - other)[distinct] > 1e-9)


def test_theta_pi_included():
    r, t = envelope_point(n3_family(), np.pi)
    assert abs(r - 0.125) < 1e-12 and abs(t - 0.5) < 1e-11


def test_theta_zero_limit():
    for fam in (n3_family(), n4_outer_family()):
        assert envelope_point(fam, 0.0) == (1.0, 1.0)


def test_unsorted_grid_comes_back_sorted():
    th = np.array([3.0, 1.0, 2.0])
    res = envelope_numeric(n3_family(), th)
    assert np.array_equal(res.curve.thetas, [1.0, 2.0, 3.0])


def test_missing_stationary_point_is_reported(monkeypatch):
    monkeypatch.setattr(ev, "_stationarity", lambda fam, th, p: np.ones(np.broadcast(th, p).shape))
    res = envelope_numeric(n4_inner_family(0.5), [1.0, 2.0])
    assert set(res.failures) == {1.0, 2.0} and len(res.curve) == 0
    with pytest.raises(NoEnvelopePointError):
        envelope_point(n4_inner_family(0.5), 1.0)


def test_family_validation():
    with pytest.raises(ValueError):
        CurveFamily(FamilyId.N4_INNER)
    with pytest.raises(ValueError):
        n4_inner_family(1.0)
    with pytest.raises(ValueError):
        CurveFamily("N7")
    assert str(n4_inner_family(0.5)) == "N4_INNER(t=0.5)"
