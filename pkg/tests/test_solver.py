import random

import pytest

import oracles
from ramsey_forge.board import BLUE, RED, ColoredGraph
from ramsey_forge.solver import (Bracket, SolverBudgetError, SolverConfig, builder_move_candidates,
                                 canonicalize, lower_bound, solve, solve_value)


def g(*edges):
    return ColoredGraph.from_edges(edges)


class TestCanonicalize:
    def test_relabelled_p3(self):
        assert canonicalize(g((0, 1, BLUE), (1, 2, BLUE))) == \
               canonicalize(g((7, 3, BLUE), (3, 9, BLUE)))

    def test_colour_matters(self):
        assert canonicalize(g((0, 1, BLUE), (1, 2, BLUE))) != \
               canonicalize(g((0, 1, RED), (1, 2, RED)))

    def test_reversal(self):
        brr = g((0, 1, BLUE), (1, 2, RED), (2, 3, RED))
        rrb = g((0, 1, RED), (1, 2, RED), (2, 3, BLUE))
        assert canonicalize(brr) == canonicalize(rrb)

    def test_budget(self):
        with pytest.raises(SolverBudgetError):
            canonicalize(g((0, 1, BLUE), (2, 3, BLUE)), vertex_budget=3)

    def test_matches_brute_force_on_small_graphs(self):
        rng = random.Random(11)
        for _ in range(300):
            edges = oracles.random_edges(rng, max_vertices=6)
            a = ColoredGraph.from_edges(edges)
            b = oracles.relabel(a, rng)
            assert canonicalize(a) == canonicalize(b)
            assert oracles.brute_canonical(a) == oracles.brute_canonical(b)

    def test_regular_graphs_with_hard_refinement(self):
        # C6 vs two triangles: colour refinement alone cannot tell them apart
        c6 = g(*[(i, (i + 1) % 6, BLUE) for i in range(6)])
        tt = g((0, 1, BLUE), (1, 2, BLUE), (2, 0, BLUE), (3, 4, BLUE), (4, 5, BLUE), (5, 3, BLUE))
        assert canonicalize(c6) != canonicalize(tt)


class TestCandidates:
    cfg = SolverConfig(3, 3)

    def test_empty_board(self):
        assert len(builder_move_candidates(ColoredGraph(), self.cfg)) == 1

    def test_single_blue_edge(self):
        assert len(builder_move_candidates(g((0, 1, BLUE)), self.cfg)) == 2

    def test_red_path(self):
        assert len(builder_move_candidates(g((0, 1, RED), (1, 2, RED)), self.cfg)) == 4


class TestSolve:
    @pytest.mark.parametrize("n", [2, 3, 4])
    def test_k2(self, n):
        assert solve_value(2, n) == n - 1

    @pytest.mark.parametrize("k,n,value", [(3, 3, 3), (3, 4, 4), (3, 5, 5), (4, 4, 5)])
    def test_known_values(self, k, n, value):
        assert solve_value(k, n) == value

    def test_lower_bound_and_monotone(self):
        vals = {n: solve_value(3, n) for n in (3, 4, 5)}
        for n, v in vals.items():
            assert v >= lower_bound(3, n)
        assert vals[3] <= vals[4] <= vals[5]

    def test_truncated_budget_gives_bracket(self):
        res = solve(SolverConfig(3, 6, round_budget=6))
        assert not res.exact and res.bracket == Bracket(7, None)

    def test_budget_below_lower_bound(self):
        with pytest.raises(ValueError):
            SolverConfig(3, 5, round_budget=3)

    @pytest.mark.parametrize("k,n", [(2, 3), (2, 4), (3, 3), (3, 4), (2, 5)])
    def test_memo_soundness(self, k, n):
        a = solve(SolverConfig(k, n, round_budget=4))
        b = solve(SolverConfig(k, n, round_budget=4, use_memo=False))
        assert (a.value, a.bracket) == (b.value, b.bracket)

    def test_result_record(self):
        rec = solve(SolverConfig(3, 3)).to_json()
        assert set(rec) == {"k", "n", "value", "nodes_expanded", "memo_hits", "wall_time_ms"}

    def test_node_limit(self):
        res = solve(SolverConfig(4, 5), node_limit=3)
        assert not res.exact and res.bracket.lower >= lower_bound(4, 5)
