import numpy as np
import pytest

from rpd import DimensionError, PreconditionError, layout_from_distances
from rpd.layout import _refine


def pairwise(points):
    points = np.asarray(points, dtype=np.float64)
    delta = points[:, None, :] - points[None, :, :]
    return np.sqrt(np.sum(delta * delta, axis=2))


class TestLayoutRecovery:
    def test_equilateral_triangle(self):
        dist = np.array([[0, 1, 1], [1, 0, 1], [1, 1, 0]], dtype=float)
        result = layout_from_distances(dist, ["a", "b", "c"], "a", "b")
        np.testing.assert_allclose(result.position("a"), (0.0, 0.0), atol=1e-9)
        np.testing.assert_allclose(result.position("b"), (1.0, 0.0), atol=1e-9)
        np.testing.assert_allclose(
            result.position("c"), (0.5, np.sqrt(3) / 2), atol=1e-9
        )
        realized = pairwise(result.coords)
        np.testing.assert_allclose(realized, dist, atol=1e-9)
        assert result.stress < 1e-9
        assert not result.fallback_used

    def test_four_planar_points(self):
        rng = np.random.default_rng(3)
        points = rng.standard_normal((4, 2)) * 2.0
        dist = pairwise(points)
        names = ["p0", "p1", "p2", "p3"]
        result = layout_from_distances(dist, names, "p0", "p1")
        realized = pairwise(result.coords)
        np.testing.assert_allclose(realized, dist, atol=1e-6)
        assert result.stress < 1e-6

    def test_five_points_from_4d_not_embeddable(self):
        rng = np.random.default_rng(4)
        points = rng.standard_normal((5, 4))
        dist = pairwise(points)
        result = layout_from_distances(dist, list("abcde"), "a", "b")
        assert np.isfinite(result.stress)
        assert result.stress > 0.0

    def test_two_points_trivial(self):
        dist = np.array([[0.0, 2.5], [2.5, 0.0]])
        result = layout_from_distances(dist, ["x", "y"], "x", "y")
        np.testing.assert_allclose(result.position("y"), (2.5, 0.0), atol=0)
        assert result.stress == 0.0

    def test_anchor_distance_exact(self):
        rng = np.random.default_rng(5)
        points = rng.standard_normal((6, 2))
        dist = pairwise(points)
        names = [f"n{i}" for i in range(6)]
        result = layout_from_distances(dist, names, "n2", "n4")
        np.testing.assert_allclose(result.position("n2"), (0.0, 0.0), atol=0)
        x, y = result.position("n4")
        assert y == 0.0
        assert x == dist[2, 4]

    def test_mirror_resolved_nonnegative_y(self):
        rng = np.random.default_rng(6)
        points = rng.standard_normal((4, 2))
        dist = pairwise(points)
        result = layout_from_distances(dist, list("abcd"), "a", "b")
        # first free point is "c"; its y must be nonnegative
        assert result.position("c")[1] >= 0.0

    def test_deterministic(self):
        rng = np.random.default_rng(7)
        points = rng.standard_normal((5, 3))
        dist = pairwise(points)
        r1 = layout_from_distances(dist, list("abcde"), "a", "b")
        r2 = layout_from_distances(dist, list("abcde"), "a", "b")
        np.testing.assert_array_equal(r1.coords, r2.coords)
        assert r1.stress == r2.stress

    def test_inconsistent_distances_fall_back(self):
        # Triangle inequality violated: no circle intersection exists.
        dist = np.array([[0.0, 10.0, 1.0], [10.0, 0.0, 1.0], [1.0, 1.0, 0.0]])
        result = layout_from_distances(dist, ["a", "b", "c"], "a", "b")
        assert result.fallback_used
        assert np.isfinite(result.stress)


class TestRefinement:
    def test_stress_never_increases(self):
        rng = np.random.default_rng(8)
        points = rng.standard_normal((6, 4))
        dist = pairwise(points)
        start = rng.standard_normal((6, 2))
        free = np.ones(6, dtype=bool)
        free[:2] = False
        _, history = _refine(start, dist, free, iterations=200)
        diffs = np.diff(history)
        assert np.all(diffs <= 0.0)

    def test_anchors_do_not_move(self):
        rng = np.random.default_rng(9)
        dist = pairwise(rng.standard_normal((5, 2)))
        start = rng.standard_normal((5, 2))
        free = np.ones(5, dtype=bool)
        free[[0, 3]] = False
        refined, _ = _refine(start, dist, free, iterations=50)
        np.testing.assert_array_equal(refined[0], start[0])
        np.testing.assert_array_equal(refined[3], start[3])


class TestValidation:
    def test_needs_two_points(self):
        with pytest.raises(PreconditionError):
            layout_from_distances(np.zeros((1, 1)), ["a"], "a", "a")

    def test_anchor_names_checked(self):
        dist = np.array([[0.0, 1.0], [1.0, 0.0]])
        with pytest.raises(PreconditionError):
            layout_from_distances(dist, ["a", "b"], "a", "z")
        with pytest.raises(PreconditionError):
            layout_from_distances(dist, ["a", "b"], "a", "a")

    def test_zero_anchor_distance(self):
        dist = np.zeros((2, 2))
        with pytest.raises(PreconditionError):
            layout_from_distances(dist, ["a", "b"], "a", "b")

    def test_asymmetric_rejected(self):
        dist = np.array([[0.0, 1.0], [2.0, 0.0]])
        with pytest.raises(PreconditionError):
            layout_from_distances(dist, ["a", "b"], "a", "b")

    def test_wrong_shape(self):
        with pytest.raises(DimensionError):
            layout_from_distances(np.zeros((2, 3)), ["a", "b"], "a", "b")

    def test_tsv_format(self):
        dist = np.array([[0, 1, 1], [1, 0, 1], [1, 1, 0]], dtype=float)
        result = layout_from_distances(dist, ["a", "b", "c"], "a", "b")
        lines = result.to_tsv().strip().split("\n")
        assert lines[0] == "name\tx\ty"
        assert lines[-1].startswith("# stress\t")
        assert len(lines) == 5
