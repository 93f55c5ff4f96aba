import io

import pytest

from ramsey_forge.board import BLUE, RED
from ramsey_forge.builders import builder_pk
from ramsey_forge.engine import GameConfig, GameState, run_game
from ramsey_forge.painters import (AllBlue, ChoicePainter, HeuristicAdversary, Interactive,
                                   PainterAbort, RedGreedy, Scripted, UniformRandom, make_painter)

BOTH = frozenset({RED, BLUE})
ONLY_BLUE = frozenset({BLUE})


def empty_state(k=4, n=20, edges=()):
    return GameState(GameConfig(k, n, initial_edges=tuple(edges)))


def test_all_blue():
    assert AllBlue().choose_color(empty_state(), 0, 1, BOTH) is BLUE


def test_all_blue_pk_stage1_is_2T():
    b = builder_pk(5, 30)
    run_game(b, AllBlue(), GameConfig(5, 30, allow_reselect=True))
    assert b.strategy.stage_rounds["one"] == 30


def test_red_greedy():
    p = RedGreedy()
    assert p.choose_color(empty_state(), 0, 1, BOTH) is RED
    assert p.choose_color(empty_state(), 0, 1, ONLY_BLUE) is BLUE


class TestHeuristic:
    def test_blocks_merge_of_long_paths(self):
        edges = [(i, i + 1, BLUE) for i in range(4)] + [(i, i + 1, BLUE) for i in range(10, 14)]
        s = empty_state(edges=edges)
        assert HeuristicAdversary().choose_color(s, 4, 10, BOTH) is RED

    def test_isolated_edge(self):
        assert HeuristicAdversary().choose_color(empty_state(), 0, 1, BOTH) is RED

    def test_forced(self):
        assert HeuristicAdversary().choose_color(empty_state(), 0, 1, ONLY_BLUE) is BLUE


def test_random_is_seeded():
    s = empty_state()
    p, q = UniformRandom(3), UniformRandom(3)
    assert [p.choose_color(s, 0, 1, BOTH) for _ in range(20)] == \
           [q.choose_color(s, 0, 1, BOTH) for _ in range(20)]


def test_scripted_uses_round_index():
    s = empty_state()
    p = Scripted("01")
    assert p.choose_color(s, 0, 1, BOTH) is RED
    s.play_round(0, 1, RED)
    assert p.choose_color(s, 1, 2, BOTH) is BLUE
    s.play_round(1, 2, BLUE)
    assert p.choose_color(s, 2, 3, BOTH) is BLUE  # past the script


def test_scripted_rejects_bad_bits():
    with pytest.raises(ValueError):
        Scripted("012")


def test_choice_painter_counts_only_real_choices():
    p = ChoicePainter([1])
    assert p.choose_color(empty_state(), 0, 1, ONLY_BLUE) is BLUE and p.choices == 0
    assert p.choose_color(empty_state(), 0, 1, BOTH) is BLUE and p.choices == 1
    assert p.choose_color(empty_state(), 0, 1, BOTH) is RED and p.choices == 2


class TestInteractive:
    def test_blue(self):
        out = io.StringIO()
        assert Interactive(io.StringIO("b\n"), out).choose_color(empty_state(), 0, 1, BOTH) is BLUE
        assert "legal=[r,b]" in out.getvalue()

    def test_reprompts(self):
        out = io.StringIO()
        p = Interactive(io.StringIO("x\nr\n"), out)
        assert p.choose_color(empty_state(), 0, 1, BOTH) is RED
        assert "invalid" in out.getvalue()

    def test_illegal_red_reprompts(self):
        p = Interactive(io.StringIO("r\nb\n"), io.StringIO())
        assert p.choose_color(empty_state(), 0, 1, ONLY_BLUE) is BLUE

    @pytest.mark.parametrize("text", ["", "q\n"])
    def test_abort(self, text):
        with pytest.raises(PainterAbort):
            Interactive(io.StringIO(text), io.StringIO()).choose_color(empty_state(), 0, 1, BOTH)


def test_make_painter_unknown():
    with pytest.raises(ValueError):
        make_painter("oracle")
