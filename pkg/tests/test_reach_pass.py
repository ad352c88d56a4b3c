import numpy as np
import pytest

from closedfrechet.free_space import FreeInterval, build_free_space
from closedfrechet.geometry import Curve, max_vertex_pair_distance
from closedfrechet.oracle import rightmost_bottom_takeoff, rightmost_top_landing
from closedfrechet.reach_pass import (
    EdgeReach,
    InvariantViolation,
    PassConfig,
    ReachDeque,
    SpanTriple,
    assemble_profile,
    column_step,
    deque_cut_left,
    deque_cut_right,
    initialize,
    right_edge_step,
    run_pass,
)

from helpers import random_pair


def bare(q):
    return [(t.beg, t.val, t.end) for t in q]


class TestCuts:
    def test_cut_left(self):
        assert bare(deque_cut_left(ReachDeque([(0, 0.5, 1), (1, 1.2, 2)]), 1.5)) == [(1.5, 1.2, 2)]
        assert bare(deque_cut_left(ReachDeque(), 3)) == []
        q = deque_cut_left(ReachDeque([(0, 1, 1)]), 0.4)
        assert bare(q) == [(0.4, 1, 1)] and q.triples()[0].identity

    def test_cut_left_at_right_end(self):
        # a cut exactly at a triple's end leaves the single point
        assert bare(deque_cut_left(ReachDeque([(0, 0.5, 1)]), 1.0)) == [(1.0, 0.5, 1)]

    def test_cut_right(self):
        assert bare(deque_cut_right(ReachDeque([(0, 0.5, 1)]), 0.7)) == [(0, 0.5, 0.7)]
        assert bare(deque_cut_right(ReachDeque([(0, 1, 1)]), 0.7)) == [(0, 0.7, 0.7)]
        assert bare(deque_cut_right(ReachDeque([(0, 0.5, 1), (1, 1.2, 2)]), 0.9)) == [(0, 0.5, 0.9)]

    def test_identity_flag_survives_cut_to_constant_looking_triple(self):
        q = deque_cut_right(ReachDeque([SpanTriple(0, 1, 1, True)]), 0.3)
        assert q.triples() == [SpanTriple(0, 0.3, 0.3, True)]
        assert q.last_value() == 0.3


class TestColumnStep:
    def test_case_f(self):
        q = column_step(ReachDeque([(0, 0.2, 0.5)]), None, FreeInterval(0.7, 0.9))
        assert bare(q) == [(0.7, 0.2, 0.9)]

    def test_case_d_identity(self):
        q = column_step(ReachDeque([(0, 1, 1)]), None, FreeInterval(0.25, 0.75))
        assert bare(q) == [(0.25, 0.75, 0.75)]

    def test_rule_3(self):
        left = EdgeReach(FreeInterval(0.0, 1.0), 0.1)
        assert bare(column_step(ReachDeque(), left, FreeInterval(0.2, 0.8))) == [(0.2, 0.1, 0.8)]

    def test_empty_top_clears(self):
        assert bare(column_step(ReachDeque([(0, 0.2, 0.5)]), None, None)) == []

    def test_case_a(self):
        left = EdgeReach(FreeInterval(0.0, 1.0), 0.05)
        q = column_step(ReachDeque([(0.6, 0.3, 0.9)]), left, FreeInterval(0.1, 0.4))
        assert bare(q) == [(0.1, 0.05, 0.4)]

    def test_case_b_and_c(self):
        left = EdgeReach(FreeInterval(0.0, 1.0), 0.05)
        q = column_step(ReachDeque([(0.3, 0.3, 0.6)]), left, FreeInterval(0.1, 0.5))
        assert bare(q) == [(0.1, 0.05, 0.3), (0.3, 0.3, 0.5)]
        q = column_step(ReachDeque([(0.3, 0.3, 0.6)]), left, FreeInterval(0.1, 0.9))
        assert bare(q) == [(0.1, 0.05, 0.3), (0.3, 0.3, 0.6), (0.6, 0.3, 0.9)]

    def test_case_e(self):
        q = column_step(ReachDeque([(0.0, 0.8, 0.8)]), None, FreeInterval(0.2, 0.9))
        assert bare(q) == [(0.2, 0.8, 0.8), (0.8, 0.8, 0.9)]


class TestRightEdge:
    def test_bottom_dominates(self):
        r = right_edge_step(ReachDeque([(0, 0.2, 0.5)]), None, FreeInterval(2.0, 3.0))
        assert r == EdgeReach(FreeInterval(2.0, 3.0), 0.2)

    def test_clip_below_left(self):
        j = 3
        left = EdgeReach(FreeInterval(j - 0.6, j), 0.4)
        r = right_edge_step(ReachDeque(), left, FreeInterval(j - 1, j - 0.5))
        assert r.interval == pytest.approx(FreeInterval(j - 0.6, j - 0.5)) and r.value == 0.4

    def test_nothing_reachable(self):
        assert right_edge_step(ReachDeque(), None, FreeInterval(2.0, 3.0)) is None
        assert right_edge_step(ReachDeque([(0, 0.2, 0.5)]), None, None) is None


class TestInitialize:
    def test_all_free(self, rng):
        X, Y = random_pair(rng, 5)
        g = build_free_space(X, Y, max_vertex_pair_distance(X, Y) + 1e-9)
        W = g.width
        seeded, _ = initialize(g, PassConfig("forward", "seeded"))
        ident, _ = initialize(g, PassConfig("forward", "identity"))
        for i in range(1, W + 1):
            assert bare(seeded[i]) == [(i - 1, W, i)]
            assert bare(ident[i]) == [(i - 1, i, i)]

    def test_square_eps_zero_seeded(self, square):
        g = build_free_space(square, square, 0.0)
        deques, _ = initialize(g, PassConfig("forward", "seeded"))
        assert bare(deques[1]) == [(0, 0, 0)]
        assert bare(deques[5]) == [(4, 4, 4)]
        # closed edges: the shared corner u = 4 and u = 8 also lie on T(4, 0) and T(8, 0)
        assert bare(deques[4]) == [(4, 4, 4)]
        assert bare(deques[8]) == [(8, 8, 8)]
        for i in (2, 3, 6, 7):
            assert bare(deques[i]) == []

    def test_config_validation(self):
        with pytest.raises(ValueError):
            PassConfig("backward", "identity")
        with pytest.raises(ValueError):
            PassConfig("sideways")


class TestRunPass:
    def test_all_free_seeded(self, rng):
        X, Y = random_pair(rng, 5)
        g = build_free_space(X, Y, max_vertex_pair_distance(X, Y) + 1e-9)
        res = run_pass(g, *initialize(g, PassConfig("forward", "seeded")), debug=True)
        for i in range(1, g.width + 1):
            assert [(t.beg, t.val, t.end) for t in res.top[i]] == [(i - 1, g.width, i)]

    def test_blocked_row(self):
        X = Curve([[0.0, 0.0], [1.0, 0.0], [1.0, 1.0]])
        Y = Curve([[0.0, 0.0], [10.0, 10.0], [0.0, 1.0]])
        g = build_free_space(X, Y, 0.5)
        res = run_pass(g, *initialize(g))
        assert all(res.top[i] == [] for i in range(1, g.width + 1))

    def test_shape_check(self, square):
        g = build_free_space(square, square, 0.1)
        with pytest.raises(ValueError):
            run_pass(g, [None], [None])


def test_hand_trace_square_eps_zero(square):
    p = assemble_profile(square, square, 0.0, debug=True)
    assert p.bottom[1] == (0.0, 0.0, 4.0)
    assert bare(p.top[5]) == [(4.0, 0.0, 4.0)]
    assert bare(p.top[8]) == [(8.0, 4.0, 8.0)]
    assert p.top[6] == [] and p.top[7] == []


def test_all_free_profile(rng):
    X, Y = random_pair(rng, 6)
    p = assemble_profile(X, Y, max_vertex_pair_distance(X, Y) + 1e-9, debug=True)
    m = X.m
    for i in range(1, m + 1):
        assert p.bottom[i] == (i - 1, i, 2 * m)


def test_debug_detects_broken_bound(square):
    g = build_free_space(square, square, 2.0)
    deques, seeds = initialize(g)
    # a deque that already violates the size bound before row 1
    deques[1] = ReachDeque([(0, 0.1, 0.2), (0.2, 0.2, 0.4), (0.4, 0.5, 0.6), (0.6, 0.7, 0.8)])
    with pytest.raises(InvariantViolation):
        run_pass(g, deques, seeds, debug=True)


def _max_at(triples, x):
    return max(t.value_at(x) for t in triples if t.beg <= x <= t.end)


def test_profile_matches_single_source_oracles(rng):
    """Interior points of every profile piece against brute-force propagation."""
    checked = 0
    for _ in range(40):
        X, Y = random_pair(rng, 7)
        eps = rng.uniform(0.2, 0.7)
        p = assemble_profile(X, Y, eps, debug=True)
        m = X.m
        for i in range(1, m + 1):
            e = p.bottom[i]
            if e is None or e.d - e.c < 1e-9:
                continue
            u = 0.5 * (e.c + e.d)
            assert rightmost_top_landing(X, Y, eps, u) == pytest.approx(e.r_up, abs=1e-9)
            checked += 1
        for i in range(m + 1, 2 * m + 1):
            for t in p.top[i]:
                if t.end - t.beg < 1e-9:
                    # single points sit on a free-space boundary; skip rounding noise
                    continue
                x = 0.5 * (t.beg + t.end)
                assert rightmost_bottom_takeoff(X, Y, eps, x) == pytest.approx(_max_at(p.top[i], x), abs=1e-9)
                checked += 1
    assert checked > 50
