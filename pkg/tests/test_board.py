import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracles
from ramsey_forge.board import (BLUE, RED, ColoredGraph, ComponentTooLargeError,
                                DuplicateEdgeError, SelfLoopError)


def path_graph(seq, c=BLUE, g=None):
    g = g or ColoredGraph()
    for a, b in zip(seq, seq[1:]):
        g.add_edge(a, b, c)
    return g


class TestAllocation:
    def test_first_allocation_is_zero(self):
        assert ColoredGraph().allocate_free_vertex() == 0

    def test_allocation_skips_used_ids(self):
        g = path_graph([0, 1, 2])
        assert g.allocate_free_vertex() == 3

    def test_ten_allocations_distinct(self):
        g = ColoredGraph()
        assert [g.allocate_free_vertex() for _ in range(10)] == list(range(10))


class TestAddEdge:
    def test_single_blue_edge(self):
        g = ColoredGraph()
        g.add_edge(0, 1, BLUE)
        assert g.color(1, 0) is BLUE and g.num_edges() == 1

    def test_duplicate_edge(self):
        g = ColoredGraph()
        g.add_edge(0, 1, RED)
        with pytest.raises(DuplicateEdgeError):
            g.add_edge(0, 1, RED)

    def test_self_loop(self):
        with pytest.raises(SelfLoopError):
            ColoredGraph().add_edge(0, 0, BLUE)


class TestPathQueries:
    def test_red_through_concatenation(self):
        g = path_graph([0, 1], RED)
        assert g.longest_red_path_through(1, 2) == 3

    def test_red_through_joins_disjoint_edges(self):
        g = ColoredGraph.from_edges([(0, 1, RED), (2, 3, RED)])
        assert g.longest_red_path_through(1, 2) == 4

    def test_red_through_empty(self):
        assert ColoredGraph().longest_red_path_through(5, 6) == 2

    def test_red_from_path_end(self):
        g = path_graph([0, 1, 2], RED)
        assert g.longest_red_path_from(2, excluding=9) == 3

    def test_red_from_isolated(self):
        assert ColoredGraph().longest_red_path_from(4) == 1

    def test_red_star_from_leaf(self):
        g = ColoredGraph.from_edges([(0, 1, RED), (0, 2, RED), (0, 3, RED)])
        assert g.longest_red_path_from(1) == 3

    def test_has_blue_path_trivial(self):
        g = path_graph([0, 1])
        assert g.has_blue_path(1)

    def test_blue_p5(self):
        g = path_graph(range(5))
        assert g.has_blue_path(5) and not g.has_blue_path(6)

    def test_blue_c4(self):
        g = path_graph([0, 1, 2, 3, 0])
        assert g.has_blue_path(4)

    def test_component_guard(self):
        g = path_graph(range(6), RED)
        g.component_guard = 4
        with pytest.raises(ComponentTooLargeError):
            g.longest_red_path_through(5, 6)


class TestComponents:
    def test_two_p3s(self):
        g = path_graph([0, 1, 2])
        path_graph([3, 4, 5], g=g)
        comps = g.blue_components()
        assert len(comps) == 2 and all(c.is_path for c in comps)

    def test_empty(self):
        assert ColoredGraph().blue_components() == []

    def test_triangle(self):
        (c,) = path_graph([0, 1, 2, 0]).blue_components()
        assert not c.is_path and c.ends is None


def check_against_oracle(edges, rng):
    g = ColoredGraph.from_edges(edges)
    vs = sorted({x for u, v, _ in edges for x in (u, v)}) or [0]
    for c in (RED, BLUE):
        assert g.longest_path(c) == oracles.longest_path(edges, c)
        x = rng.choice(vs)
        avoid = set(rng.sample(vs, rng.randint(0, min(2, len(vs)))))
        assert g.longest_path_from(x, c, avoid) == oracles.longest_path_from(edges, x, c, avoid)
        u, v = rng.sample(range(9), 2)
        if not g.has_edge(u, v):
            assert g.longest_path_through(u, v, c) == oracles.longest_path_through(edges, u, v, c)


def test_path_queries_match_brute_force():
    rng = random.Random(7)
    for _ in range(500):
        check_against_oracle(oracles.random_edges(rng), rng)


@settings(max_examples=200, deadline=None)
@given(st.integers(0, 2**32 - 1))
def test_path_queries_match_brute_force_hypothesis(seed):
    rng = random.Random(seed)
    check_against_oracle(oracles.random_edges(rng), rng)
