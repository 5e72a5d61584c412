import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from oracles import brute_better_nearest
from wsaic.core import (
    Bounds,
    ConfigurationError,
    Swarm,
    Whale,
    clamp_to_bounds,
    euclidean_distance,
    find_better_nearest,
    make_rng,
)

coords = st.floats(-1e3, 1e3, allow_nan=False, allow_infinity=False)


def vectors(n):
    return arrays(np.float64, n, elements=coords)


class TestDistance:
    def test_examples(self):
        assert euclidean_distance([1, 2], [1, 2]) == 0.0
        assert euclidean_distance([0, 0], [3, 4]) == 5.0
        assert euclidean_distance([0, 0, 0], [1, 1, 1]) == pytest.approx(math.sqrt(3), abs=1e-15)

    def test_dimension_mismatch(self):
        with pytest.raises(ValueError):
            euclidean_distance([0, 0], [0, 0, 0])

    @given(st.integers(1, 6).flatmap(lambda n: st.tuples(vectors(n), vectors(n), vectors(n))))
    def test_metric_axioms(self, abc):
        a, b, c = abc
        ab, bc, ac = euclidean_distance(a, b), euclidean_distance(b, c), euclidean_distance(a, c)
        assert ab == euclidean_distance(b, a)
        assert ab >= 0
        assert ac <= ab + bc + 1e-9 * (1 + ab + bc)


class TestBounds:
    def test_cube(self):
        b = Bounds.cube(3)
        assert b.dim == 3
        assert b.diagonal == pytest.approx(200 * math.sqrt(3))

    def test_invalid(self):
        with pytest.raises(ConfigurationError):
            Bounds([0, 0], [1])
        with pytest.raises(ConfigurationError):
            Bounds([1.0], [1.0])

    def test_read_only(self):
        b = Bounds.cube(2)
        with pytest.raises(ValueError):
            b.lower[0] = 5

    def test_sample_inside(self):
        b = Bounds([-1, 10], [1, 20])
        pts = b.sample(make_rng(3), 500)
        assert all(b.contains(p) for p in pts)


class TestClamp:
    def test_in_bounds_unchanged(self):
        assert np.array_equal(clamp_to_bounds([0, 50], Bounds.cube(2)), [0, 50])

    def test_boundary_snap(self):
        assert np.array_equal(clamp_to_bounds([-100.0000001, 0], Bounds.cube(2)), [-100, 0])

    @given(st.integers(1, 5).flatmap(vectors))
    def test_projection_properties(self, p):
        b = Bounds.cube(p.size)
        q = clamp_to_bounds(p, b)
        assert b.contains(q)
        assert np.array_equal(clamp_to_bounds(q, b), q)
        inside = (p >= -100) & (p <= 100)
        assert np.array_equal(q[inside], p[inside])


class TestBetterNearest:
    def test_best_whale_has_no_guide(self):
        whales = [Whale(np.array([0.0]), 1.0), Whale(np.array([5.0]), 2.0)]
        assert find_better_nearest(whales, 0) is None
        assert find_better_nearest(whales, 1) == 0

    def test_nearest_among_better(self):
        sw = Swarm(np.array([[0.0], [10.0], [3.0], [1.0]]), np.array([5.0, 0.0, 1.0, 9.0]))
        assert find_better_nearest(sw, 0) == 2
        # the closest whale (index 3) is worse, so it is skipped
        assert find_better_nearest(sw, 3) == 0

    def test_equal_fitness_is_not_better(self):
        sw = Swarm(np.array([[0.0], [1.0]]), np.array([1.0, 1.0]))
        assert find_better_nearest(sw, 0) is None

    def test_distance_tie_goes_to_lowest_index(self):
        sw = Swarm(np.array([[0.0], [-1.0], [1.0]]), np.array([3.0, 1.0, 2.0]))
        assert find_better_nearest(sw, 0) == 1

    def test_errors(self):
        with pytest.raises(ConfigurationError):
            find_better_nearest([], 0)
        with pytest.raises(IndexError):
            find_better_nearest(Swarm(np.zeros((2, 1)), np.zeros(2)), 2)

    @settings(max_examples=200)
    @given(st.integers(1, 12), st.integers(1, 4), st.integers(0, 2**32 - 1))
    def test_matches_brute_force(self, p, n, seed):
        rng = np.random.default_rng(seed)
        pos = rng.integers(-3, 4, size=(p, n)).astype(float)  # integer grid forces ties
        fit = rng.integers(0, 4, size=p).astype(float)
        sw = Swarm(pos, fit)
        for i in range(p):
            assert find_better_nearest(sw, i) == brute_better_nearest(pos, fit, i)


class TestRng:
    def test_same_seed_same_stream(self):
        assert np.array_equal(make_rng(11).random(5), make_rng(11).random(5))

    def test_streams_differ(self):
        assert not np.array_equal(make_rng(11, 1).random(5), make_rng(11, 2).random(5))

    def test_swarm_roundtrip(self):
        whales = [Whale(np.array([1.0, 2.0]), 3.0, 4), Whale(np.array([0.0, 0.0]), 1.0, 0)]
        sw = Swarm.from_whales(whales)
        w = sw[0]
        assert np.array_equal(w.position, [1.0, 2.0]) and w.fitness == 3.0 and w.counter == 4
        cp = sw.copy()
        cp.positions[0, 0] = 99
        assert sw.positions[0, 0] == 1.0
