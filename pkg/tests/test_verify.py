import csv

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from shapely.geometry import MultiPoint

from bargmann import boundary as bd
from bargmann.invariants import delta_pure_batch
from bargmann.verify import (
    CHUNK,
    DET_QUAD_BOUND,
    Hull,
    concavity_analytic,
    concavity_check,
    concavity_numeric,
    containment_report,
    convex_hull,
    det3,
    det_bound_campaign,
    det_quad,
    dump_violations,
    hull_compare,
    hull_contains,
    max_im_search,
    midpoint_convexity,
    random_unit_vectors,
    route_errors_qubit,
    run_suite,
    sample_cloud,
    tuple_for_index,
)
from bargmann.states import derived_rng

A, B = np.sqrt(2 / 3), np.sqrt(1 / 3)
ATTAINING = [(A, 0, B), (0, A, B), (-A, 0, B), (0, -A, B)]


@pytest.fixture(scope="module")
def pure_hull_n3():
    return convex_hull(sample_cloud(3, 2, 1_000_000, seed=0, workers=4).points)


# -- clouds -------------------------------------------------------------------

def test_cloud_single_sample():
    cloud = sample_cloud(3, 2, 1, seed=42)
    assert len(cloud) == 1 and abs(cloud.points[0]) <= 1


def test_cloud_n2_is_real_unit_interval():
    z = sample_cloud(2, 4, 5000, seed=1).points
    assert np.all(z.imag == 0) and np.all((z.real >= 0) & (z.real <= 1))


def test_cloud_n3_d3_imaginary_bound():
    z = sample_cloud(3, 3, 100_000, seed=2).points
    assert z.imag.max() <= 0.25 + 1e-9


def test_cloud_invalid_sizes():
    for args in ((1, 2, 10), (3, 1, 10), (3, 2, 0)):
        with pytest.raises(ValueError):
            sample_cloud(*args)
    with pytest.raises(ValueError):
        sample_cloud(3, 2, 10, kind="thermal")


def test_cloud_deterministic_and_worker_independent():
    a = sample_cloud(4, 3, 3 * CHUNK + 17, seed=5, workers=1).points
    b = sample_cloud(4, 3, 3 * CHUNK + 17, seed=5, workers=3).points
    assert np.array_equal(a, b)
    assert not np.array_equal(a, sample_cloud(4, 3, 3 * CHUNK + 17, seed=6).points)


def test_cloud_prefix_stable():
    long = sample_cloud(3, 2, 2 * CHUNK + 5, seed=8).points
    short = sample_cloud(3, 2, CHUNK + 3, seed=8).points
    assert np.array_equal(long[:CHUNK], short[:CHUNK])


@pytest.mark.parametrize("kind", ["pure", "mixed"])
def test_reversed_cloud_is_exact_mirror(kind):
    fwd = sample_cloud(5, 3, 20_000, seed=3, kind=kind).points
    rev = sample_cloud(5, 3, 20_000, seed=3, kind=kind, reverse=True).points
    if kind == "pure":
        assert np.array_equal(rev, np.conj(fwd))
    else:
        assert np.max(np.abs(rev - np.conj(fwd))) < 1e-15


def test_tuple_for_index_regenerates():
    cloud = sample_cloud(4, 3, CHUNK + 100, seed=9)
    for idx in (0, 17, CHUNK + 42):
        psi = tuple_for_index(4, 3, 9, idx, CHUNK + 100)
        assert delta_pure_batch(psi) == cloud.points[idx]
    with pytest.raises(IndexError):
        tuple_for_index(4, 3, 9, CHUNK + 100, CHUNK + 100)


# -- containment --------------------------------------------------------------

@pytest.mark.parametrize("n,d", [(3, 2), (4, 3), (5, 2)])
def test_containment_examples(n, d):
    cloud = sample_cloud(n, d, 100_000, seed=n + d, workers=4)
    st_ = containment_report(cloud, n, 1e-9)
    assert st_.inside == st_.count == 100_000
    assert np.isfinite(st_.worst_violation) and st_.worst_violation <= 1e-9
    assert st_.label == ("theorem" if n < 5 else "conjecture evidence")


def test_violation_dump_roundtrip(tmp_path):
    # R_3 is strictly smaller than R_4, so order-4 samples leave it
    cloud = sample_cloud(4, 2, 20_000, seed=4)
    stats = containment_report(cloud, 3, 1e-9)
    assert 0 < stats.inside < stats.count
    path = tmp_path / "violations.csv"
    rows = dump_violations(stats, cloud, path)
    assert rows == stats.count - stats.inside
    with open(path) as fh:
        data = list(csv.DictReader(fh))
    first = int(data[0]["index"])
    amps = [complex(float(r["re_amp"]), float(r["im_amp"])) for r in data if int(r["index"]) == first]
    psi = np.array(amps).reshape(4, 2)
    z = delta_pure_batch(psi)
    assert z == complex(float(data[0]["re"]), float(data[0]["im"]))


# -- hulls --------------------------------------------------------------------

def test_hull_square():
    h = convex_hull([0, 1, 1 + 1j, 1j, 0.5 + 0.5j, 0.5])
    assert len(h) == 4 and h.area == 1.0


def test_hull_collinear_and_single():
    h = convex_hull([0, 1, 2, 3, 1.5])
    assert len(h) == 2 and h.area == 0
    assert len(convex_hull([0.3 + 0.1j] * 5)) == 1
    with pytest.raises(ValueError):
        convex_hull([])


def test_hull_accepts_xy_arrays():
    h = convex_hull(np.array([[0, 0], [2, 0], [0, 2], [0.5, 0.5]]))
    assert h.area == 2.0


@settings(max_examples=60, deadline=None)
@given(seed=st.integers(0, 2**32 - 1), size=st.integers(3, 3000))
def test_hull_properties(seed, size):
    pts = derived_rng(seed).standard_normal((size, 2))
    h = convex_hull(pts)
    v = h.vertices
    ref = MultiPoint(pts).convex_hull
    assert abs(h.area - ref.area) <= 1e-12 * max(1.0, ref.area)
    if len(v) >= 3:
        e = np.roll(v, -1, axis=0) - v
        turn = e[:, 0] * np.roll(e, -1, axis=0)[:, 1] - e[:, 1] * np.roll(e, -1, axis=0)[:, 0]
        assert np.all(turn > 0)  # strictly convex, counterclockwise
        assert np.all(hull_contains(h, pts, 1e-12))


def test_hull_area_close_to_region(pure_hull_n3):
    area = bd.region_area(3)
    assert abs(pure_hull_n3.area - area) / area < 0.02


def test_mixed_inside_pure_hull(pure_hull_n3):
    mixed = sample_cloud(3, 2, 10_000, seed=1, kind="mixed").points
    assert np.all(hull_contains(pure_hull_n3, mixed, 1e-6))


def test_hull_compare_basic():
    sq = convex_hull([0, 1, 1 + 1j, 1j])
    assert hull_compare(sq, sq) == 0
    shifted = convex_hull([0.5, 1.5, 1.5 + 1j, 0.5 + 1j])
    v = hull_compare(sq, shifted)
    assert abs(v - 2 / 3) < 1e-12 and v == hull_compare(shifted, sq)
    with pytest.raises(ValueError):
        hull_compare(sq, convex_hull([0, 1, 2]))


def test_hull_compare_dimension_n3():
    a = convex_hull(sample_cloud(3, 2, 1_000_000, seed=0, workers=4).points)
    b = convex_hull(sample_cloud(3, 3, 1_000_000, seed=1, workers=4).points)
    assert hull_compare(a, b) < 0.02


# -- determinant bounds -------------------------------------------------------

def test_det3_examples():
    e1, e2, e3 = np.eye(3)
    assert det3(e1, e2, e3) == 1
    assert det3(e1, e1, e3) == 0


def test_det3_random_bound():
    r = random_unit_vectors(derived_rng(3), (100_000, 3))
    d = np.einsum("ij,ij->i", np.cross(r[:, 0], r[:, 1]), r[:, 2])
    assert np.abs(d).max() <= 1 + 1e-12


def test_det_quad_attaining():
    assert abs(det_quad(*ATTAINING) - DET_QUAD_BOUND) < 1e-12
    e = np.array([0.6, 0.0, 0.8])
    assert det_quad(e, e, e, e) == 0


def test_det_quad_rejects_non_unit():
    with pytest.raises(ValueError):
        det_quad([1, 0, 0], [0, 1, 0], [0, 0, 1], [0.5, 0, 0])


def test_det_quad_four_term_expansion():
    q = random_unit_vectors(derived_rng(4), (10_000, 4))
    for r1, r2, r3, r4 in q:
        lhs = det_quad(r1, r2, r3, r4)
        rhs = det3(r1, r2, r3) + det3(r1, r2, r4) + det3(r1, r3, r4) + det3(r2, r3, r4)
        assert abs(lhs - rhs) < 1e-12


def test_det_bound_campaign():
    res = det_bound_campaign(100_000, seed=0)
    assert res["passed"]
    assert res["max_abs_det_quad"] <= DET_QUAD_BOUND + 1e-12


def test_route_errors_small():
    for n in (3, 4, 5):
        assert max(route_errors_qubit(n, 2000, seed=1).values()) < 1e-10


# -- optimisation -------------------------------------------------------------

@pytest.mark.parametrize("n", [3, 4])
def test_max_im_reaches_tau(n):
    res = max_im_search(n, restarts=64, seed=0)
    assert res.best >= bd.tau(n) - 1e-4
    assert not res.exceeds_tau
    assert res.best == max(res.values)
    z = delta_pure_batch(res.states.vectors())
    assert abs(z.imag - res.best) < 1e-12


def test_max_im_deterministic():
    a = max_im_search(3, restarts=8, seed=11)
    b = max_im_search(3, restarts=8, seed=11)
    assert a.best == b.best and np.array_equal(a.values, b.values)


def test_max_im_n5_gap_reported():
    res = max_im_search(5, restarts=128, seed=0)
    assert res.label == "conjecture evidence"
    assert np.isfinite(res.gap) and not res.exceeds_tau


def test_max_im_qutrit_mode():
    res = max_im_search(3, restarts=16, seed=0, d=3)
    assert res.states.dim == 3
    assert res.best <= bd.tau(3) + 1e-9


def test_max_im_rejects_low_order():
    with pytest.raises(ValueError):
        max_im_search(2)


# -- convexity ----------------------------------------------------------------

def test_concavity_n4():
    res = concavity_check(4, 1000)
    assert res.all_negative and res.analytic_agrees


def test_concavity_n3_numeric_only():
    res = concavity_check(3, 1000)
    assert res.all_negative and res.analytic_agrees is None


def test_concavity_n9():
    res = concavity_check(9, 1000)
    assert res.all_negative and res.analytic_agrees


def test_concavity_grid_too_small():
    with pytest.raises(ValueError):
        concavity_check(4, 7)


def test_concavity_analytic_matches_numeric_value():
    th = np.linspace(0.05, np.pi - 0.05, 50)
    for n in (4, 6, 9):
        num, ana = concavity_numeric(n, th), concavity_analytic(n, th)
        assert np.max(np.abs(num / ana - 1)) < 1e-5


def test_midpoint_convexity():
    for n in range(3, 10):
        assert midpoint_convexity(n, 10_000, seed=0)["failures"] == 0


# -- suites -------------------------------------------------------------------

def test_run_suite_unknown():
    with pytest.raises(ValueError):
        run_suite("nope")


@pytest.mark.parametrize("suite", ["convexity", "detbound", "envelope"])
def test_quick_suites_pass(suite):
    rep = run_suite(suite, count=10_000 if suite != "envelope" else None)
    assert rep.passed
    assert rep.as_text().startswith("[PASS]")


def test_containment_suite_labels_conjecture():
    rep = run_suite("containment", n=5, d=2, count=5000)
    assert rep.passed and rep.label == "conjecture evidence"


def test_hull_type_area_orientation():
    h = Hull(np.array([[0.0, 0.0], [0.0, 1.0], [1.0, 0.0]]))
    assert h.area == -0.5  # clockwise input has negative signed area
