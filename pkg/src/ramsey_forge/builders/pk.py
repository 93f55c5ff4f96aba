"""Builder strategy for the P_k versus P_n game (k >= 5) in three stages.

Stage 1 collects T = ceil(n/3) + k vertex-disjoint blue P_3s using the
active/inactive ledger. Stage 2 glues them along a growing red path until
fewer than k blue paths remain. Stage 3 runs the fence procedure (two rounds
per step, reselecting coloured edges where needed) until one blue path on at
least n vertices exists.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Generator, Optional

from ..board import BLUE, RED, Color, edge_key
from ..engine import GameState, GeneratorBuilder, Proposal
from ..structures import is_blue_path

log = logging.getLogger(__name__)


class InvariantViolation(AssertionError):
    pass


def ceil_div(a: int, b: int) -> int:
    return -(-a // b)


def num_p3(n: int, k: int) -> int:
    return ceil_div(n, 3) + k


def stage1_bound(T: int, k: int) -> int:
    return 3 * T + 2 * (k - 1)


def stage2_bound(T: int, k: int) -> int:
    return max(0, 2 * T - k)


def stage3_bound(t: int, k: int) -> int:
    return 4 * t + 2 * k


def internal_bound(n: int, k: int) -> int:
    return 5 * num_p3(n, k) + 7 * k - 6


def round_bound(n: int, k: int) -> int:
    return (5 * n) // 3 + 12 * k


@dataclass
class ActiveLedger:
    """Stage-1 bookkeeping: active red path, active blue matching, inactive P_3s."""

    active_red_path: list[int] = field(default_factory=list)
    active_blue_matching: dict[int, int] = field(default_factory=dict)  # path vertex -> partner
    inactive_blue_paths: list[tuple[int, int, int]] = field(default_factory=list)
    inactive_red_edges: set[tuple[int, int]] = field(default_factory=set)

    def active_edges(self) -> dict[tuple[int, int], Color]:
        out = {edge_key(a, b): RED for a, b in zip(self.active_red_path, self.active_red_path[1:])}
        for x, w in self.active_blue_matching.items():
            out[edge_key(x, w)] = BLUE
        return out

    def inactive_edges(self) -> dict[tuple[int, int], Color]:
        out = {e: RED for e in self.inactive_red_edges}
        for a, b, c in self.inactive_blue_paths:
            out[edge_key(a, b)] = BLUE
            out[edge_key(b, c)] = BLUE
        return out

    def active_vertices(self) -> set[int]:
        vs = set(self.active_red_path)
        vs |= set(self.active_blue_matching.values())
        return vs


def stage1_next(ledger: ActiveLedger, fresh) -> tuple[int, int]:
    """Tail of the active red path (or a fresh vertex) joined to a fresh vertex."""
    x = ledger.active_red_path[-1] if ledger.active_red_path else fresh()
    return x, fresh()


def stage1_update(ledger: ActiveLedger, x: int, y: int, color: Color) -> None:
    path = ledger.active_red_path
    if not path:
        path.append(x)
    if path[-1] != x:
        raise InvariantViolation(f"stage-1 edge {x}-{y} does not start at the active tail")
    if color is RED:
        path.append(y)
        return
    partner = ledger.active_blue_matching.pop(x, None)
    if partner is None:
        ledger.active_blue_matching[x] = y
        return
    ledger.inactive_blue_paths.append((y, x, partner))
    path.pop()
    if path:
        ledger.inactive_red_edges.add(edge_key(path[-1], x))


def check_stage1(ledger: ActiveLedger, board, k: int) -> list[str]:
    """Clauses (i)-(iv) of the stage-1 invariant, evaluated against the board."""
    bad = []
    act, ina = ledger.active_edges(), ledger.inactive_edges()
    if set(act) & set(ina):
        bad.append("(i) active and inactive edges overlap")
    board_edges = board.edge_set()
    if {**act, **ina} != board_edges:
        bad.append("ledger does not partition the board's edges")
    av = ledger.active_vertices()
    for (a, b), c in ina.items():
        if c is BLUE and (a in av or b in av):
            bad.append(f"(ii) inactive blue edge {a}-{b} touches the active graph")
    path = ledger.active_red_path
    if len(path) >= k:
        bad.append(f"(iii) active red path has {len(path)} >= k vertices")
    if len(set(path)) != len(path):
        bad.append("(iii) active red path repeats a vertex")
    on_path = set(path)
    partners = list(ledger.active_blue_matching.values())
    if len(set(partners)) != len(partners):
        bad.append("(iii) blue matching is not a matching")
    for x, w in ledger.active_blue_matching.items():
        if x not in on_path or w in on_path:
            bad.append(f"(iii) matching edge {x}-{w} does not have exactly one end on P")
    seen: set[int] = set()
    for p3 in ledger.inactive_blue_paths:
        if seen & set(p3) or len(set(p3)) != 3:
            bad.append(f"(iv) inactive P_3 {p3} is not vertex-disjoint")
        seen |= set(p3)
    if len(ledger.inactive_red_edges) > len(ledger.inactive_blue_paths):
        bad.append("(iv) more inactive red edges than inactive P_3s")
    return bad


@dataclass
class EssentialGraph:
    blue_paths: list[list[int]]
    red_path: list[int]

    @property
    def s(self) -> int:
        return len(self.blue_paths)

    @property
    def d(self) -> int:
        return len(self.red_path)

    @property
    def m(self) -> int:
        return sum(len(p) for p in self.blue_paths)


def check_essential(eg: EssentialGraph, board, m: int) -> list[str]:
    bad = []
    if not 1 <= eg.d <= eg.s <= eg.m:
        bad.append(f"(s,d,m)=({eg.s},{eg.d},{eg.m}) out of order")
    if eg.m != m:
        bad.append(f"total m changed from {m} to {eg.m}")
    seen: set[int] = set()
    for p in eg.blue_paths:
        if not p or not is_blue_path(board, p):
            bad.append(f"essential path {p} is not blue")
        if seen & set(p):
            bad.append("essential paths overlap")
        seen |= set(p)
    for i, u in enumerate(eg.red_path):
        if eg.blue_paths[i][0] != u:
            bad.append(f"red path vertex {u} is not the marked end of path {i + 1}")
    for a, b in zip(eg.red_path, eg.red_path[1:]):
        if board.color(a, b) is not RED:
            bad.append(f"essential red edge {a}-{b} missing")
    return bad


@dataclass
class Fence:
    red_picket: list[int]          # w_1 .. w_d
    g0: list[int]                  # blue picket starting at w_d
    pickets: list[list[int]]       # G_2 .. G_s

    @property
    def s(self) -> int:
        return 1 + len(self.pickets)

    @property
    def d(self) -> int:
        return len(self.red_picket)

    @property
    def m(self) -> int:
        return len(self.g0) + sum(len(p) for p in self.pickets)


def check_fence(f: Fence, board, k: int) -> list[str]:
    bad = []
    if f.g0[0] != f.red_picket[-1]:
        bad.append("blue picket G0 does not start at the red picket end")
    if f.d >= k:
        bad.append(f"red picket has {f.d} >= k vertices")
    for a, b in zip(f.red_picket, f.red_picket[1:]):
        if board.color(a, b) is not RED:
            bad.append(f"red picket edge {a}-{b} is not red")
    seen = set(f.red_picket)
    if len(seen) != f.d:
        bad.append("red picket repeats a vertex")
    for p in [f.g0] + f.pickets:
        if not p or not is_blue_path(board, p):
            bad.append(f"picket {p} is not a blue path")
        extra = set(p) - ({f.red_picket[-1]} if p is f.g0 else set())
        if seen & extra:
            bad.append("pickets overlap")
        seen |= set(p)
    return bad


class PkStrategy:
    name = "pk"

    def __init__(self, k: int, n: int, checks: bool = True):
        if k < 5:
            raise ValueError("the P_k strategy needs k >= 5")
        if n < 1:
            raise ValueError("n must be positive")
        self.k, self.n = k, n
        self.T = num_p3(n, k)
        self.checks = checks
        self.stage = "one"
        self.stage_rounds = {"one": 0, "two": 0, "three": 0}
        self.t: Optional[int] = None
        self.failures: list[str] = []
        self.checks_run = 0
        self.stage1_checks = 0
        self.state: Optional[GameState] = None
        self.ledger = ActiveLedger()

    def _fail(self, where: str, bad: list[str]) -> None:
        self.checks_run += 1
        if bad:
            raise InvariantViolation(f"{where}: " + "; ".join(bad))

    def _ask(self, u: int, v: int, note: str) -> Generator[Proposal, Color, Color]:
        # counted before yielding: the generator is never resumed after the winning round
        self.stage_rounds[self.stage] += 1
        color = yield Proposal(u, v, False, note)
        return color

    # -- stage 1 ----------------------------------------------------------------

    def run_stage1(self) -> Generator[Proposal, Color, list[list[int]]]:
        self.stage = "one"
        led = self.ledger
        fresh = self.state.board.allocate_free_vertex
        while len(led.inactive_blue_paths) < self.T:
            x, y = stage1_next(led, fresh)
            color = yield from self._ask(x, y, "pk/stage1/extend" if led.active_red_path
                                         else "pk/stage1/start")
            stage1_update(led, x, y, color)
            if self.checks:
                self.stage1_checks += 1
                self._fail("stage 1", check_stage1(led, self.state.board, self.k))
        return [list(p) for p in led.inactive_blue_paths]

    # -- stage 2 ----------------------------------------------------------------

    def gluepk1_step(self, eg: EssentialGraph) -> Generator[Proposal, Color, EssentialGraph]:
        d = eg.d
        ud, nxt = eg.red_path[-1], eg.blue_paths[d][0]
        color = yield from self._ask(ud, nxt, "pk/stage2/gluepk1/" + ("extend" if d else "start"))
        if color is RED:
            return EssentialGraph(eg.blue_paths, eg.red_path + [nxt])
        gd, gn = eg.blue_paths[d - 1], eg.blue_paths[d]
        # G_d runs from u_d; the merged path keeps the far end of the former G_d first
        merged = gd[::-1] + gn
        paths = eg.blue_paths[:d - 1] + [merged] + eg.blue_paths[d + 1:]
        red = eg.red_path[:-1] if d >= 2 else [merged[0]]
        return EssentialGraph(paths, red)

    def run_stage2(self, p3s: list[list[int]]) -> Generator[Proposal, Color, list[list[int]]]:
        self.stage = "two"
        eg = EssentialGraph([list(p) for p in p3s], [p3s[0][0]])
        m = eg.m
        while eg.s >= self.k:
            eg = yield from self.gluepk1_step(eg)
            if self.checks:
                self._fail("stage 2", check_essential(eg, self.state.board, m))
        return eg.blue_paths

    # -- stage 3 ----------------------------------------------------------------

    def recertify(self, paths: list[list[int]]) -> list[list[int]]:
        board = self.state.board
        out = []
        for p in paths:
            if not is_blue_path(board, p):
                raise InvariantViolation(f"handoff path {p} is not blue on the board")
            out.append(list(p))
        if sum(len(p) for p in out) != 3 * self.T or len(out) >= self.k:
            raise InvariantViolation("handoff does not hold fewer than k paths on 3T vertices")
        return out

    def gluepk2_pair(self, f: Fence) -> Generator[Proposal, Color, Fence]:
        wd = f.red_picket[-1]
        g2 = f.pickets[0]
        u2, u2p = g2[0], g2[-1]
        rest = f.pickets[1:]
        c1 = yield from self._ask(wd, u2, "pk/stage3/gluepk2/join")
        if c1 is RED:
            yield from self._ask(wd, u2, "pk/stage3/gluepk2/red-repeat")
            cut = f.g0[1:]
            pickets = ([cut] if cut else []) + rest
            return Fence(f.red_picket + [u2], list(g2), pickets)
        joined = g2[::-1] + f.g0          # u'_2 .. u_2 w_d ..
        if f.d == 1:
            yield from self._ask(wd, u2, "pk/stage3/gluepk2/blue-repeat")
            return Fence([u2p], joined, rest)
        wprev = f.red_picket[-2]
        c2 = yield from self._ask(wprev, u2p, "pk/stage3/gluepk2/close")
        if c2 is RED:
            return Fence(f.red_picket[:-1] + [u2p], joined, rest)
        return Fence(f.red_picket[:-1], [wprev] + joined, rest)

    def run_stage3(self, paths: list[list[int]]) -> Generator[Proposal, Color, list[int]]:
        self.stage = "three"
        self.t = len(paths)
        f = Fence([paths[0][0]], list(paths[0]), [list(p) for p in paths[1:]])
        while f.s >= 2:
            m_before = f.m
            f = yield from self.gluepk2_pair(f)
            if self.checks:
                bad = check_fence(f, self.state.board, self.k)
                if f.m < m_before - 1:
                    bad.append(f"picket vertices fell from {m_before} to {f.m}")
                self._fail("stage 3", bad)
        return f.g0

    # -- driver -------------------------------------------------------------------

    def run(self, state: GameState) -> Generator[Proposal, Color, None]:
        self.state = state
        if state.board.num_edges():
            raise ValueError("the P_k strategy starts from an empty board")
        p3s = yield from self.run_stage1()
        paths = yield from self.run_stage2(p3s)
        paths = self.recertify(paths)
        final = yield from self.run_stage3(paths)
        self.stage = "done"
        raise InvariantViolation(f"stage 3 ended with a blue path on {len(final)} vertices, no win")

    def stage_violations(self) -> list[str]:
        """Per-stage round counts against the stage bounds."""
        out = []
        T, k = self.T, self.k
        r = self.stage_rounds
        if r["one"] > stage1_bound(T, k):
            out.append(f"stage 1 used {r['one']} > {stage1_bound(T, k)} rounds")
        if r["two"] > stage2_bound(T, k):
            out.append(f"stage 2 used {r['two']} > {stage2_bound(T, k)} rounds")
        if self.t is not None and r["three"] > stage3_bound(self.t, k):
            out.append(f"stage 3 used {r['three']} > {stage3_bound(self.t, k)} rounds")
        return out


def builder_pk(k: int, n: int, checks: bool = True) -> GeneratorBuilder:
    strat = PkStrategy(k, n, checks)
    b = GeneratorBuilder(strat.run)
    b.name = "pk"
    b.strategy = strat
    return b
