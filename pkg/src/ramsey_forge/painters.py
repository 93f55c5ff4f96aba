"""Painter policies: trivial, random, heuristic, scripted and interactive."""
from __future__ import annotations

import random
import sys
from dataclasses import dataclass
from typing import Optional, Sequence, TextIO

from .board import BLUE, RED, Color
from .engine import GameError, GameState


class PainterAbort(GameError):
    """The interactive painter quit or ran out of input."""


class AllBlue:
    name = "all-blue"

    def choose_color(self, state: GameState, u: int, v: int, legal: frozenset[Color]) -> Color:
        return BLUE


class RedGreedy:
    name = "red-greedy"

    def choose_color(self, state: GameState, u: int, v: int, legal: frozenset[Color]) -> Color:
        return RED if RED in legal else BLUE


class UniformRandom:
    name = "random"

    def __init__(self, seed: Optional[int] = None):
        self.seed = seed
        self.rng = random.Random(seed)

    def choose_color(self, state: GameState, u: int, v: int, legal: frozenset[Color]) -> Color:
        if len(legal) == 1:
            return next(iter(legal))
        return RED if self.rng.random() < 0.5 else BLUE


@dataclass
class HeuristicParams:
    w_longest: float = 1.0
    w_components: float = 1.0
    w_red: float = 1.0


class HeuristicAdversary:
    """Greedy one-ply painter: pick the colour with the smaller danger score.

    score = w_longest * (longest blue path through the edge's component) / n
          + w_components * (vertices in blue components that are paths) / n
          + w_red * (red path through the edge) / (k - 1), counted only once
            that path reaches k - 1 vertices and further red would be blocked.
    Ties go to red.
    """

    name = "heuristic"

    def __init__(self, params: Optional[HeuristicParams] = None):
        self.params = params or HeuristicParams()

    def score(self, state: GameState, u: int, v: int, color: Color) -> float:
        p, n, k = self.params, state.n, state.k
        g = state.board.copy()
        g.component_guard = max(g.component_guard, 10**6)
        g.add_edge(u, v, color)
        comps = g.components(BLUE)
        longest = 0
        path_vertices = 0
        for c in comps:
            if c.is_path:
                path_vertices += len(c.vertices)
            if u in c.vertices or v in c.vertices:
                longest = max(longest, g._component_longest_path(set(c.vertices), BLUE))
        red = 0.0
        if color is RED:
            through = g.longest_path_through(u, v, RED)
            if through >= k - 1:
                red = through / (k - 1)
        return p.w_longest * longest / n + p.w_components * path_vertices / n + p.w_red * red

    def choose_color(self, state: GameState, u: int, v: int, legal: frozenset[Color]) -> Color:
        if len(legal) == 1:
            return next(iter(legal))
        r = self.score(state, u, v, RED)
        b = self.score(state, u, v, BLUE)
        return RED if r <= b else BLUE


class Scripted:
    """Bit i is the colour for round i (0 = red when legal, else blue; 1 = blue)."""

    name = "script"

    def __init__(self, bits: Sequence[int] | str):
        if isinstance(bits, str):
            if set(bits) - {"0", "1"}:
                raise ValueError("script must be a string of 0/1")
            bits = [int(b) for b in bits]
        self.bits = list(bits)

    def choose_color(self, state: GameState, u: int, v: int, legal: frozenset[Color]) -> Color:
        i = state.round
        bit = self.bits[i] if i < len(self.bits) else 1
        if bit == 0 and RED in legal:
            return RED
        return BLUE


class ChoicePainter:
    """Decodes one bit per genuine choice point (both colours legal).

    Used by the exhaustive verifier: the bit string is a path in the binary
    tree of Painter choices. ``choices`` records how many choice points the
    game actually hit.
    """

    name = "choice"

    def __init__(self, bits: Sequence[int]):
        self.bits = list(bits)
        self.choices = 0

    def choose_color(self, state: GameState, u: int, v: int, legal: frozenset[Color]) -> Color:
        if len(legal) == 1:
            return next(iter(legal))
        i = self.choices
        self.choices += 1
        bit = self.bits[i] if i < len(self.bits) else 0
        return RED if bit == 0 else BLUE


class Interactive:
    name = "interactive"

    def __init__(self, stdin: Optional[TextIO] = None, stdout: Optional[TextIO] = None):
        self.stdin = stdin or sys.stdin
        self.stdout = stdout or sys.stdout

    def _summary(self, state: GameState) -> str:
        b = state.board
        return (f"board: {b.num_edges(RED)} red, {b.num_edges(BLUE)} blue; "
                f"longest blue path {b.longest_path(BLUE)}/{state.n}")

    def choose_color(self, state: GameState, u: int, v: int, legal: frozenset[Color]) -> Color:
        letters = "".join(c for c in "rb" if Color(c.upper()) in legal)
        print(self._summary(state), file=self.stdout)
        while True:
            self.stdout.write(f"round {state.round + 1}: edge ({u},{v}) legal=[{','.join(letters)}]> ")
            self.stdout.flush()
            line = self.stdin.readline()
            if not line:
                raise PainterAbort("input closed before the game ended")
            ans = line.strip().lower()
            if ans == "q":
                raise PainterAbort("painter quit")
            if ans in ("r", "b") and ans in letters:
                return Color(ans.upper())
            print(f"invalid reply {ans!r}; choose one of {list(letters)} or q", file=self.stdout)


PAINTERS = ("all-blue", "red-greedy", "random", "heuristic", "interactive", "script")


def make_painter(kind: str, seed: Optional[int] = None, script: str = "",
                 stdin: Optional[TextIO] = None, stdout: Optional[TextIO] = None):
    if kind == "all-blue":
        return AllBlue()
    if kind == "red-greedy":
        return RedGreedy()
    if kind == "random":
        return UniformRandom(seed)
    if kind == "heuristic":
        return HeuristicAdversary()
    if kind == "interactive":
        return Interactive(stdin, stdout)
    if kind == "script":
        return Scripted(script)
    raise ValueError(f"unknown painter {kind!r}")
