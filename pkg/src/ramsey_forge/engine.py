"""Rules of the Builder-Painter path games, round driver and transcripts."""
from __future__ import annotations

import enum
import json
import logging
from dataclasses import dataclass, field
from typing import Callable, Generator, Iterable, Optional, Protocol

from .board import BLUE, DEFAULT_COMPONENT_GUARD, RED, Color, ColoredGraph, edge_key

log = logging.getLogger(__name__)


class Variant(str, enum.Enum):
    STANDARD = "standard"
    RESTRICTED = "restricted"


class Status(str, enum.Enum):
    IN_PROGRESS = "in_progress"
    BLUE_WIN = "blue_win"
    RED_WIN = "red_win"
    BUDGET_EXCEEDED = "budget_exceeded"


class GameError(Exception):
    pass


class IllegalMoveError(GameError):
    def __init__(self, offender: str, message: str):
        super().__init__(f"illegal move by {offender}: {message}")
        self.offender = offender


class GameOverError(GameError):
    pass


class ReplayMismatch(GameError):
    pass


@dataclass
class GameConfig:
    k: int
    n: int
    variant: Variant = Variant.RESTRICTED
    initial_edges: tuple[tuple[int, int, Color], ...] = ()
    allow_reselect: bool = False
    round_budget: int = 10**6
    component_guard: int = DEFAULT_COMPONENT_GUARD

    def __post_init__(self) -> None:
        if self.k < 2 or self.n < 2:
            raise ValueError("path orders k and n must be at least 2")
        self.variant = Variant(self.variant)

    def to_json(self) -> dict:
        return {"k": self.k, "n": self.n, "variant": self.variant.value,
                "allow_reselect": self.allow_reselect, "round_budget": self.round_budget,
                "component_guard": self.component_guard}


@dataclass(frozen=True)
class Proposal:
    u: int
    v: int
    forced: bool = False
    note: str = ""


@dataclass(frozen=True)
class Move:
    r: int
    u: int
    v: int
    color: Color
    forced: bool = False
    reselect: bool = False
    note: str = ""

    def to_json(self) -> dict:
        return {"r": self.r, "u": self.u, "v": self.v, "c": self.color.value,
                "forced": self.forced, "reselect": self.reselect, "note": self.note}

    @classmethod
    def from_json(cls, d: dict) -> "Move":
        u, v = edge_key(int(d["u"]), int(d["v"]))
        return cls(int(d["r"]), u, v, Color(d["c"]), bool(d.get("forced", False)),
                   bool(d.get("reselect", False)), str(d.get("note", "")))


class GameState:
    def __init__(self, config: GameConfig, board: Optional[ColoredGraph] = None):
        self.config = config
        if board is None:
            board = ColoredGraph.from_edges(config.initial_edges,
                                            component_guard=config.component_guard)
        self.board = board
        self.round = 0
        self.moves: list[Move] = []
        self.status = Status.IN_PROGRESS
        if board.has_blue_path(config.n) and board.num_edges(BLUE):
            self.status = Status.BLUE_WIN
        elif config.round_budget <= 0:
            self.status = Status.BUDGET_EXCEEDED

    @property
    def k(self) -> int:
        return self.config.k

    @property
    def n(self) -> int:
        return self.config.n

    def red_blocked(self, u: int, v: int) -> bool:
        """True when colouring uv red would create a red P_k."""
        return self.board.longest_red_path_through(u, v) >= self.config.k

    def legal_colors(self, u: int, v: int) -> frozenset[Color]:
        if self.status is not Status.IN_PROGRESS:
            raise GameOverError(f"game is over ({self.status.value})")
        existing = self.board.color(u, v)
        if existing is not None:
            if not self.config.allow_reselect:
                raise IllegalMoveError("builder", f"edge {edge_key(u, v)} already coloured")
            return frozenset({existing})
        if self.config.variant is Variant.RESTRICTED and self.red_blocked(u, v):
            return frozenset({BLUE})
        return frozenset({RED, BLUE})

    def is_forcing(self, u: int, v: int) -> bool:
        if self.status is not Status.IN_PROGRESS:
            raise GameOverError(f"game is over ({self.status.value})")
        if self.board.has_edge(u, v):
            raise IllegalMoveError("builder", f"edge {edge_key(u, v)} already coloured")
        return self.red_blocked(u, v)

    def play_round(self, u: int, v: int, color: Color, forced: bool = False,
                   note: str = "") -> Move:
        if self.status is not Status.IN_PROGRESS:
            raise GameOverError(f"game is over ({self.status.value})")
        if u == v:
            raise IllegalMoveError("builder", f"self-loop at {u}")
        u, v = edge_key(u, v)
        existing = self.board.color(u, v)
        reselect = existing is not None
        if reselect:
            if not self.config.allow_reselect:
                raise IllegalMoveError("builder", f"edge {(u, v)} already coloured")
            if color is not existing:
                raise IllegalMoveError("painter", f"reselected edge {(u, v)} must keep {existing}")
            if forced:
                raise IllegalMoveError("builder", f"reselected edge {(u, v)} cannot be forced")
            red_closes = False
        else:
            blocked = self.red_blocked(u, v) if (
                forced or color is RED) else False
            if forced and not blocked:
                raise IllegalMoveError("builder", f"edge {(u, v)} claimed forced but red is legal")
            if color is RED and blocked and self.config.variant is Variant.RESTRICTED:
                raise IllegalMoveError("painter", f"red on {(u, v)} creates a red P_{self.k}")
            red_closes = color is RED and blocked
            self.board.add_edge(u, v, color)
        self.round += 1
        move = Move(self.round, u, v, color, forced, reselect, note)
        self.moves.append(move)
        if not reselect and color is BLUE and self.board.has_path(self.n, BLUE, near=u):
            self.status = Status.BLUE_WIN
        elif red_closes:
            self.status = Status.RED_WIN
        elif self.round >= self.config.round_budget:
            self.status = Status.BUDGET_EXCEEDED
        return move

    def transcript(self) -> "Transcript":
        return Transcript(self.config, list(self.moves), self.status, self.round)


class BuilderOracle(Protocol):
    def next_move(self, state: GameState) -> Proposal: ...

    def on_painter_reply(self, move: Move) -> None: ...


class PainterPolicy(Protocol):
    def choose_color(self, state: GameState, u: int, v: int,
                     legal: frozenset[Color]) -> Color: ...


Strategy = Callable[[GameState], Generator[Proposal, Color, None]]


class StrategyExhausted(GameError):
    pass


class GeneratorBuilder:
    """Adapts a generator strategy (yield proposals, receive colours) to the oracle protocol.

    The strategy reads the live game state; fresh vertices come from
    ``state.board.allocate_free_vertex``.
    """

    name = "generator"

    def __init__(self, strategy: Strategy):
        self._strategy = strategy
        self._gen: Optional[Generator[Proposal, Color, None]] = None
        self._reply: Optional[Color] = None

    def next_move(self, state: GameState) -> Proposal:
        try:
            if self._gen is None:
                self._gen = self._strategy(state)
                return next(self._gen)
            reply, self._reply = self._reply, None
            return self._gen.send(reply)
        except StopIteration:
            raise StrategyExhausted("builder strategy ended before Builder won") from None

    def on_painter_reply(self, move: Move) -> None:
        self._reply = move.color


def run_game(builder: BuilderOracle, painter: PainterPolicy,
             config: GameConfig) -> tuple["Transcript", GameState]:
    state = GameState(config)
    while state.status is Status.IN_PROGRESS:
        prop = builder.next_move(state)
        legal = state.legal_colors(prop.u, prop.v)
        if state.board.has_edge(prop.u, prop.v):
            color = next(iter(legal))
        else:
            color = painter.choose_color(state, prop.u, prop.v, legal)
            if color not in legal:
                raise IllegalMoveError("painter", f"{color} not in legal set for {(prop.u, prop.v)}")
        move = state.play_round(prop.u, prop.v, color, prop.forced, prop.note)
        log.debug("round %d: %s-%s %s %s", move.r, move.u, move.v, move.color, move.note)
        builder.on_painter_reply(move)
    return state.transcript(), state


@dataclass
class Transcript:
    config: GameConfig
    moves: list[Move] = field(default_factory=list)
    outcome: Status = Status.IN_PROGRESS
    rounds: int = 0

    def to_json(self) -> dict:
        init = [[*edge_key(u, v), c.value] for u, v, c in self.config.initial_edges]
        return {"config": self.config.to_json(), "initial_edges": init,
                "moves": [m.to_json() for m in self.moves],
                "outcome": self.outcome.value, "rounds": self.rounds}

    def dumps(self) -> str:
        return json.dumps(self.to_json(), ensure_ascii=False) + "\n"

    def write(self, path) -> None:
        with open(path, "w", encoding="utf-8") as f:
            f.write(self.dumps())

    @classmethod
    def from_json(cls, d: dict) -> "Transcript":
        c = d["config"]
        init = tuple((int(u), int(v), Color(col)) for u, v, col in d.get("initial_edges", []))
        config = GameConfig(int(c["k"]), int(c["n"]), Variant(c.get("variant", "restricted")),
                            init, bool(c.get("allow_reselect", False)),
                            int(c.get("round_budget", 10**6)),
                            int(c.get("component_guard", DEFAULT_COMPONENT_GUARD)))
        moves = [Move.from_json(m) for m in d["moves"]]
        return cls(config, moves, Status(d["outcome"]), int(d["rounds"]))

    @classmethod
    def loads(cls, text: str) -> "Transcript":
        return cls.from_json(json.loads(text))

    @classmethod
    def read(cls, path) -> "Transcript":
        with open(path, encoding="utf-8") as f:
            return cls.loads(f.read())


def replay(transcript: Transcript, moves: Optional[Iterable[Move]] = None) -> GameState:
    """Re-play a transcript from its initial graph, re-validating every move.

    Raises ReplayMismatch on an illegal colour, a false forced flag, a bad
    round index, or an outcome/round count that does not reproduce.
    """
    state = GameState(transcript.config)
    moves = transcript.moves if moves is None else list(moves)
    for i, m in enumerate(moves, start=1):
        if m.r != i:
            raise ReplayMismatch(f"round index {m.r} at position {i}")
        if state.status is not Status.IN_PROGRESS:
            raise ReplayMismatch(f"move at round {i} after game ended ({state.status.value})")
        if m.reselect != state.board.has_edge(m.u, m.v):
            raise ReplayMismatch(f"round {i}: reselect flag disagrees with board")
        try:
            state.play_round(m.u, m.v, m.color, m.forced, m.note)
        except (IllegalMoveError, GameOverError) as exc:
            raise ReplayMismatch(f"round {i}: {exc}") from exc
    if state.status is not transcript.outcome or state.round != transcript.rounds:
        raise ReplayMismatch(
            f"replayed outcome {state.status.value}/{state.round} rounds, "
            f"recorded {transcript.outcome.value}/{transcript.rounds}")
    return state
