import pytest

from ramsey_forge.board import BLUE, RED
from ramsey_forge.builders import builder_p4
from ramsey_forge.builders.good import GoodGraphState, audit, ceil_frac
from ramsey_forge.builders.p4 import P4Strategy, round_bound
from ramsey_forge.engine import GameConfig, GameState, Status, run_game
from ramsey_forge.painters import AllBlue, HeuristicAdversary, RedGreedy, UniformRandom


def drive(strat, gen, replies):
    """Answer forced proposals blue and the others from ``replies``; return the generator's value."""
    state = strat.state
    replies = iter(replies)
    prop = next(gen)
    while True:
        c = BLUE if prop.forced else next(replies)
        state.play_round(prop.u, prop.v, c, prop.forced)
        try:
            prop = gen.send(c)
        except StopIteration as stop:
            return stop.value


def fresh_strategy(n=20):
    s = P4Strategy(n)
    s.state = GameState(GameConfig(4, n))
    s.stage = "stage1"
    return s


class StagePainter:
    """Blue everywhere except red during the named strategy stage."""

    def __init__(self, strat, red_stage):
        self.strat, self.red_stage = strat, red_stage

    def choose_color(self, state, u, v, legal):
        want = RED if self.strat.stage == self.red_stage else BLUE
        return want if want in legal else BLUE


def test_round_bounds():
    assert [round_bound(n) for n in (10, 15, 16)] == [13, 20, 22]


def test_n_too_small():
    with pytest.raises(ValueError):
        builder_p4(9)


class TestGrowBy5:
    def test_case1_red_red(self):
        s = fresh_strategy()
        h = drive(s, s.grow_by_5(GoodGraphState()), [RED, RED])
        # a, b, c = 0, 1, 2 and x, y = 3, 4: extended path y c x a with red end b
        assert h.g2.vertices == (4, 2, 3, 0, 1)
        assert s.state.round == 5

    def test_case2_all_blue(self):
        s = fresh_strategy()
        h = drive(s, s.grow_by_5(GoodGraphState()), [BLUE] * 4)
        assert h.g0 == (0, 1, 2, 3, 4) and s.state.board.num_edges(RED) == 0

    def test_case3_builds_limb(self):
        s = fresh_strategy()
        h = drive(s, s.grow_by_5(GoodGraphState()), [BLUE, RED, BLUE, BLUE])
        assert h.limb is not None and h.ess == 5

    def test_case3_with_limb_red_red(self):
        s = fresh_strategy()
        h = drive(s, s.grow_by_5(GoodGraphState()), [BLUE, RED, BLUE, BLUE])
        h = drive(s, s.grow_by_5(h), [BLUE, RED, RED, RED])
        assert h.limb is None and len(h.g1) == 10
        assert s.state.board.num_edges(RED) == 4
        assert not audit(h, s.state.board, very=True)

    @pytest.mark.parametrize("replies", [[RED, RED], [BLUE, BLUE, RED, RED, BLUE, BLUE],
                                         [RED, BLUE, RED, BLUE, BLUE, BLUE]])
    def test_edge_budget_after_two_grows(self, replies):
        s = fresh_strategy()
        h = GoodGraphState()
        it = iter(replies + [RED] * 20)
        for _ in range(2):
            h = drive(s, s.grow_by_5(h), it)
        assert s.state.board.num_edges() <= ceil_frac(7 * h.ess, 5) - 1


class TestGlue:
    def test_case1_adopts_path_without_moves(self):
        s = fresh_strategy()
        h = drive(s, s.grow_by_5(GoodGraphState()), [BLUE] * 4)
        rounds = s.state.round
        s.state.play_round(10, 11, RED)
        s.state.play_round(12, 13, RED)
        s.state.play_round(10, 12, BLUE)
        hp = GoodGraphState(g1=(10, 12))
        gen = s.glue(h, hp)
        with pytest.raises(StopIteration) as stop:
            next(gen)
        assert stop.value.value.g1 == (10, 12)
        assert s.state.round == rounds + 3


class TestWholeGame:
    def test_stage1_sizes(self):
        assert P4Strategy(10).m == 10 and P4Strategy(14).m == 10 and P4Strategy(14).r == 4

    @pytest.mark.parametrize("n", range(10, 31))
    @pytest.mark.parametrize("painter", [AllBlue, RedGreedy, HeuristicAdversary])
    def test_shipped_painters(self, n, painter):
        b = builder_p4(n)
        _, state = run_game(b, painter(), GameConfig(4, n))
        assert state.status is Status.BLUE_WIN and state.round <= round_bound(n)
        assert not b.strategy.final_check(state)

    def test_red_greedy_n10_red_count(self):
        _, state = run_game(builder_p4(10), RedGreedy(), GameConfig(4, 10))
        assert state.board.num_edges(RED) <= 4

    @pytest.mark.parametrize("n", [12, 17, 22])
    def test_exceptional_case(self, n):
        b = builder_p4(n)
        _, state = run_game(b, StagePainter(b.strategy, "stage2"), GameConfig(4, n))
        assert b.strategy.exceptional
        assert state.status is Status.BLUE_WIN and state.round <= round_bound(n)
        assert not b.strategy.final_check(state)

    def test_random_painters_with_checks(self):
        for seed in range(200):
            n = 10 + seed % 25
            b = builder_p4(n)
            _, state = run_game(b, UniformRandom(seed), GameConfig(4, n))
            assert state.round <= round_bound(n) and not b.strategy.final_check(state)
            # the last grow step may already complete the blue path
            assert b.strategy.checkpoints >= n // 5 - 1
