"""Oracle geometry: closed-form argmax/max, projections, samplers."""

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from pfol import (
    Ball,
    Box,
    ConfigError,
    L1Ball,
    Polytope,
    Simplex,
    brute_force_argmax,
    euclidean_project,
    linear_argmax,
    linear_max,
    sample_unit_ball,
    sample_unit_ball_batch,
    sample_unit_sphere,
    sample_unit_sphere_batch,
    set_from_json,
)

ALL_SETS = [
    Ball(dim=3, radius=1.0),
    Ball(dim=2, radius=2.0),
    Box(lower=[-1.0, -1.0], upper=[1.0, 1.0]),
    Box(lower=[0.0, -2.0, 1.0], upper=[0.5, -1.0, 4.0]),
    Simplex(dim=3, scale=1.0),
    Simplex(dim=4, scale=2.5),
    L1Ball(dim=3, radius=1.0),
    L1Ball(dim=5, radius=0.7),
    Polytope(vertices=[[0.0, 0.0], [1.0, 0.0], [0.0, 1.0]]),
    Polytope(vertices=[[1.0, 2.0, -1.0], [0.0, 0.0, 0.0], [-2.0, 1.0, 1.0], [3.0, -1.0, 0.5]]),
]

PROJECTABLE = [s for s in ALL_SETS if s.kind != "polytope"]


class TestLinearArgmax:
    def test_ball_normalizes_direction(self):
        out = linear_argmax(Ball(dim=2, radius=1.0), [3.0, 4.0])
        np.testing.assert_allclose(out, [0.6, 0.8], rtol=0, atol=1e-15)

    def test_simplex_picks_max_coordinate_vertex(self):
        out = linear_argmax(Simplex(dim=3, scale=1.0), [1.0, 5.0, 2.0])
        np.testing.assert_array_equal(out, [0.0, 1.0, 0.0])

    def test_polytope_matches_vertex_scan(self):
        # independent oracle: evaluate all three inner products by hand
        verts = [[0.0, 0.0], [1.0, 0.0], [0.0, 1.0]]
        y = np.array([2.0, 3.0])
        scores = [0.0, 2.0, 3.0]
        assert int(np.argmax(scores)) == 2
        out = linear_argmax(Polytope(vertices=verts), y)
        np.testing.assert_array_equal(out, [0.0, 1.0])

    def test_box_selects_active_corner(self):
        box = Box(lower=[-1.0, -2.0], upper=[3.0, 4.0])
        np.testing.assert_array_equal(linear_argmax(box, [1.0, -1.0]), [3.0, -2.0])

    def test_l1_ball_signed_basis_vector(self):
        out = linear_argmax(L1Ball(dim=3, radius=2.0), [1.0, -5.0, 2.0])
        np.testing.assert_array_equal(out, [0.0, -2.0, 0.0])

    def test_zero_objective_is_deterministic_and_feasible(self):
        for s in ALL_SETS:
            a = linear_argmax(s, np.zeros(s.dim))
            b = linear_argmax(s, np.zeros(s.dim))
            np.testing.assert_array_equal(a, b)
            assert s.feasibility_gap(a) <= 1e-12

    def test_zero_objective_ball_returns_first_axis_point(self):
        out = linear_argmax(Ball(dim=3, radius=2.0), np.zeros(3))
        np.testing.assert_array_equal(out, [2.0, 0.0, 0.0])

    def test_dimension_mismatch_rejected(self):
        with pytest.raises(ValueError, match="shape"):
            linear_argmax(Ball(dim=3, radius=1.0), [1.0, 2.0])

    def test_non_finite_rejected(self):
        for bad in ([np.nan, 0.0], [np.inf, 1.0]):
            with pytest.raises(ValueError, match="NaN or Inf"):
                linear_argmax(Ball(dim=2, radius=1.0), bad)

    def test_output_norm_within_bound(self):
        rng = np.random.default_rng(0)
        for s in ALL_SETS:
            ys = rng.standard_normal((200, s.dim)) * 10.0 ** rng.uniform(-2, 2, size=(200, 1))
            out = s.support_argmax_many(ys)
            norms = np.linalg.norm(out, axis=1)
            assert np.all(norms <= s.norm_bound + 1e-12)

    def test_batch_agrees_with_single(self):
        rng = np.random.default_rng(1)
        for s in ALL_SETS:
            ys = rng.standard_normal((50, s.dim))
            batch = s.support_argmax_many(ys)
            for y, row in zip(ys, batch):
                np.testing.assert_array_equal(linear_argmax(s, y), row)


class TestLinearMax:
    def test_box_equals_weighted_absolute_sum(self):
        assert linear_max(Box(lower=[-1.0, -1.0], upper=[1.0, 1.0]), [2.0, -3.0]) == 5.0

    def test_zero_vector_gives_zero(self):
        for s in ALL_SETS:
            assert linear_max(s, np.zeros(s.dim)) == 0.0

    def test_ball_value_is_radius_times_norm(self):
        # maximize <y, x> over ||x|| <= 2 analytically: 2 * ||y||
        val = linear_max(Ball(dim=2, radius=2.0), [1.0, 1.0])
        assert val == pytest.approx(2.0 * np.sqrt(2.0), rel=1e-14)

    def test_lipschitz_in_the_query(self):
        # |M(y1) - M(y2)| <= D ||y1 - y2|| over 1000 random pairs per set
        rng = np.random.default_rng(2)
        for s in ALL_SETS:
            y1 = rng.standard_normal((1000, s.dim)) * 10.0 ** rng.uniform(-1, 1, size=(1000, 1))
            y2 = y1 + rng.standard_normal((1000, s.dim)) * 10.0 ** rng.uniform(-3, 1, size=(1000, 1))
            m1 = np.einsum("ij,ij->i", y1, s.support_argmax_many(y1))
            m2 = np.einsum("ij,ij->i", y2, s.support_argmax_many(y2))
            gaps = np.linalg.norm(y1 - y2, axis=1)
            keep = gaps > 1e-12
            ratio = np.abs(m1 - m2)[keep] / gaps[keep]
            assert np.max(ratio) <= s.norm_bound * (1 + 1e-9)

    def test_midpoint_convexity(self):
        rng = np.random.default_rng(3)
        for s in ALL_SETS:
            y1 = rng.standard_normal((500, s.dim))
            y2 = rng.standard_normal((500, s.dim))
            mid = 0.5 * (y1 + y2)
            m1 = np.einsum("ij,ij->i", y1, s.support_argmax_many(y1))
            m2 = np.einsum("ij,ij->i", y2, s.support_argmax_many(y2))
            mm = np.einsum("ij,ij->i", mid, s.support_argmax_many(mid))
            assert np.all(mm <= 0.5 * (m1 + m2) + 1e-9)


class TestBruteForceArgmax:
    def test_tie_breaks_to_lowest_index(self):
        out = brute_force_argmax([[1.0, 0.0], [0.0, 1.0]], [1.0, 1.0])
        np.testing.assert_array_equal(out, [1.0, 0.0])

    def test_evaluates_both_inner_products(self):
        # <(1,-3),(0,0)> = 0 beats <(1,-3),(2,1)> = -1
        out = brute_force_argmax([[0.0, 0.0], [2.0, 1.0]], [1.0, -3.0])
        np.testing.assert_array_equal(out, [0.0, 0.0])

    def test_single_vertex(self):
        out = brute_force_argmax([[5.0, -1.0]], [0.3, 0.9])
        np.testing.assert_array_equal(out, [5.0, -1.0])

    def test_empty_list_rejected(self):
        with pytest.raises(ValueError, match="empty"):
            brute_force_argmax([], [1.0])

    def test_polytope_oracle_agrees_on_random_queries(self):
        rng = np.random.default_rng(4)
        verts = rng.standard_normal((12, 4))
        poly = Polytope(vertices=verts)
        for _ in range(300):
            y = rng.standard_normal(4) * 10.0 ** rng.uniform(-1, 1)
            np.testing.assert_array_equal(linear_argmax(poly, y), brute_force_argmax(verts, y))


class TestEuclideanProject:
    def test_ball_radial(self):
        np.testing.assert_allclose(
            euclidean_project(Ball(dim=2, radius=1.0), [3.0, 4.0]), [0.6, 0.8], atol=1e-15)

    def test_box_clamps(self):
        out = euclidean_project(Box(lower=[0.0, 0.0], upper=[1.0, 1.0]), [-2.0, 0.5])
        np.testing.assert_array_equal(out, [0.0, 0.5])

    def test_simplex_threshold(self):
        # KKT by hand: mass 1.6 over two active coordinates, theta = 0.3
        out = euclidean_project(Simplex(dim=3, scale=1.0), [0.8, 0.8, 0.0])
        np.testing.assert_allclose(out, [0.5, 0.5, 0.0], atol=1e-12)

    def test_polytope_unsupported(self):
        poly = Polytope(vertices=[[0.0, 0.0], [1.0, 0.0]])
        with pytest.raises(NotImplementedError, match="projection"):
            euclidean_project(poly, [0.5, 0.5])

    def test_variational_inequality(self):
        # <x - p, z - p> <= 0 for all feasible z characterizes the projection
        rng = np.random.default_rng(5)
        for s in PROJECTABLE:
            for _ in range(5):
                x = rng.standard_normal(s.dim) * 3.0
                p = euclidean_project(s, x)
                assert s.feasibility_gap(p) <= 1e-9
                zs = s.sample_points(rng, 100)
                inner = (zs - p) @ (x - p)
                assert np.max(inner) <= 1e-9

    def test_interior_point_is_fixed(self):
        for s in PROJECTABLE:
            z = s.sample_points(np.random.default_rng(6), 1)[0] * 0.5 if s.kind != "box" else s.sample_points(np.random.default_rng(6), 1)[0]
            p = euclidean_project(s, euclidean_project(s, z))
            np.testing.assert_allclose(p, euclidean_project(s, z), atol=1e-12)


class TestSamplers:
    def test_ball_support(self):
        rng = np.random.default_rng(7)
        v = sample_unit_ball_batch(rng, 5000, 5)
        assert np.max(np.linalg.norm(v, axis=1)) <= 1.0 + 1e-12

    def test_ball_determinism(self):
        a = sample_unit_ball(np.random.default_rng(123), 4)
        b = sample_unit_ball(np.random.default_rng(123), 4)
        np.testing.assert_array_equal(a, b)

    def test_ball_mean_is_centered(self):
        # CLT tolerance 3 sigma / sqrt(n) with per-coordinate variance 1/(d+2)
        rng = np.random.default_rng(8)
        v = sample_unit_ball_batch(rng, 100_000, 3)
        tol = 3.0 * np.sqrt(1.0 / 5.0) / np.sqrt(100_000)
        assert tol < 0.02
        assert np.max(np.abs(v.mean(axis=0))) < 0.02

    def test_sphere_norm_exact(self):
        rng = np.random.default_rng(9)
        v = sample_unit_sphere_batch(rng, 2000, 6)
        np.testing.assert_allclose(np.linalg.norm(v, axis=1), 1.0, atol=1e-12)

    def test_sphere_isotropy(self):
        # E[v v^T] = I/d for the uniform sphere measure
        rng = np.random.default_rng(10)
        v = sample_unit_sphere_batch(rng, 100_000, 2)
        second = v.T @ v / len(v)
        np.testing.assert_allclose(second, np.eye(2) / 2.0, atol=0.02)

    def test_sphere_determinism(self):
        a = sample_unit_sphere(np.random.default_rng(77), 3)
        b = sample_unit_sphere(np.random.default_rng(77), 3)
        np.testing.assert_array_equal(a, b)

    def test_ball_coordinate_variance(self):
        rng = np.random.default_rng(11)
        v = sample_unit_ball_batch(rng, 200_000, 3)
        np.testing.assert_allclose(v.var(axis=0), 1.0 / 5.0, atol=0.01)


class TestNormBound:
    def test_exact_values(self):
        assert Ball(dim=7, radius=2.5).norm_bound == 2.5
        assert Simplex(dim=4, scale=3.0).norm_bound == 3.0
        assert L1Ball(dim=2, radius=0.4).norm_bound == 0.4
        box = Box(lower=[-3.0, 0.0], upper=[1.0, 2.0])
        assert box.norm_bound == pytest.approx(np.sqrt(9.0 + 4.0), rel=1e-15)
        poly = Polytope(vertices=[[1.0, 0.0], [3.0, 4.0]])
        assert poly.norm_bound == 5.0

    def test_sampled_points_respect_bound(self):
        rng = np.random.default_rng(12)
        for s in ALL_SETS:
            pts = s.sample_points(rng, 500)
            assert np.max(np.linalg.norm(pts, axis=1)) <= s.norm_bound + 1e-9
            assert max(s.feasibility_gap(p) for p in pts[:50]) <= 1e-9


class TestValidationAndJson:
    def test_invalid_constructions(self):
        with pytest.raises(ValueError):
            Ball(dim=0, radius=1.0)
        with pytest.raises(ValueError):
            Ball(dim=2, radius=0.0)
        with pytest.raises(ValueError):
            Box(lower=[1.0], upper=[0.0])
        with pytest.raises(ValueError):
            Polytope(vertices=np.empty((0, 2)))

    def test_json_round_trip(self):
        for s in ALL_SETS:
            clone = set_from_json(s.to_json())
            assert clone.kind == s.kind
            assert clone.dim == s.dim
            assert clone.norm_bound == pytest.approx(s.norm_bound, rel=1e-15)
            y = np.arange(1.0, s.dim + 1.0)
            np.testing.assert_array_equal(linear_argmax(clone, y), linear_argmax(s, y))

    def test_unknown_kind_rejected(self):
        with pytest.raises(ConfigError, match="unknown set kind"):
            set_from_json({"kind": "torus", "dim": 2})

    def test_dim_mismatch_rejected(self):
        with pytest.raises(ConfigError, match="dim"):
            set_from_json({"kind": "box", "dim": 3, "lower": [0.0], "upper": [1.0]})


@settings(max_examples=60, deadline=None)
@given(
    y=st.lists(st.floats(-1e6, 1e6, allow_nan=False, allow_infinity=False),
               min_size=3, max_size=3),
    radius=st.floats(0.1, 10.0),
)
def test_ball_argmax_is_support_maximizer(y, radius):
    ball = Ball(dim=3, radius=radius)
    out = linear_argmax(ball, y)
    assert np.linalg.norm(out) <= radius + 1e-9
    probe = np.random.default_rng(0).standard_normal((20, 3))
    probe = radius * probe / np.maximum(np.linalg.norm(probe, axis=1, keepdims=True), 1e-12)
    assert np.dot(y, out) >= np.max(probe @ np.asarray(y)) - 1e-6 * max(1.0, np.abs(y).max())


@settings(max_examples=60, deadline=None)
@given(x=st.lists(st.floats(-100, 100, allow_nan=False), min_size=4, max_size=4))
def test_l1_projection_is_idempotent_and_feasible(x):
    s = L1Ball(dim=4, radius=1.0)
    p = euclidean_project(s, x)
    assert s.feasibility_gap(p) <= 1e-9
    np.testing.assert_allclose(euclidean_project(s, p), p, atol=1e-12)
