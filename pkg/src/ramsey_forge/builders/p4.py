"""Builder strategy for the P_4 versus P_n game, finishing within ceil(7n/5) - 1 rounds.

The strategy is a generator: it yields ``Proposal`` objects and receives
Painter's colour for each. Every "force" is proposed with ``forced=True``
and the engine rejects it unless red is actually illegal, so no forcing
claim is taken on trust.

Phases:

1. grow a very good graph five essential vertices at a time up to
   ``m = 5 * (n // 5)``;
2. add the ``r = n - m`` remainder vertices as a simple good graph and glue
   it in (or stop in the exceptional case: r = 2 and a red probe);
3. assemble the essential subgraphs into one blue path on n vertices.
"""
from __future__ import annotations

import logging
from typing import Generator, Optional

from ..board import BLUE, RED, Color
from ..engine import GameState, GeneratorBuilder, Proposal
from ..structures import LimbCert
from .good import GoodGraphState, audit, ceil_frac, extended

log = logging.getLogger(__name__)

Play = Generator[Proposal, Color, GoodGraphState]


class InvariantViolation(AssertionError):
    pass


class P4Strategy:
    """Move oracle state for one game; build a fresh one per game."""

    name = "p4"

    def __init__(self, n: int, checks: bool = True):
        if n < 10:
            raise ValueError("the P_4 strategy needs n >= 10")
        self.n = n
        self.m = 5 * (n // 5)
        self.r = n - self.m
        self.checks = checks
        self.exceptional = False
        self.checkpoints = 0
        self.checks_run = 0
        self.stage = "init"
        self.state: Optional[GameState] = None

    # -- primitives ----------------------------------------------------------

    def fresh(self) -> int:
        return self.state.board.allocate_free_vertex()

    def select(self, u: int, v: int, note: str) -> Generator[Proposal, Color, Color]:
        color = yield Proposal(u, v, False, f"p4/{self.stage}/{note}")
        return color

    def force(self, u: int, v: int, note: str) -> Generator[Proposal, Color, None]:
        color = yield Proposal(u, v, True, f"p4/{self.stage}/{note}")
        if color is not BLUE:
            raise InvariantViolation(f"forced edge {u}-{v} came back {color}")

    def checkpoint(self, h: GoodGraphState, very: bool, what: str) -> None:
        self.checkpoints += 1
        if not self.checks:
            return
        self.checks_run += 1
        bad = audit(h, self.state.board, very)
        if bad:
            raise InvariantViolation(f"{what} [{h.describe()}]: " + "; ".join(bad))

    # -- gluing ----------------------------------------------------------------

    def glue(self, h: GoodGraphState, hp: GoodGraphState) -> Play:
        """Merge a simple good graph ``hp`` into the very good graph ``h``."""
        if not hp.nonempty():
            return h
        if not hp.is_simple or hp.limb is not None:
            raise InvariantViolation(f"glue needs a simple non-limb graph, got {hp.describe()}")
        if hp.g1:
            return (yield from self._glue_11(h, hp.g1))
        if hp.g2 is not None:
            return (yield from self._glue_ext(h, hp.g2))
        return (yield from self._glue_path(h, hp.g0))

    def _glue_11(self, h: GoodGraphState, p: tuple[int, ...]) -> Play:
        if not h.g1:
            return h.with_(g1=p)
        # 1-ends u1 = h.g1[-1] and x = p[0]
        yield from self.force(h.g1[-1], p[0], "glue/case1/join")
        return h.with_(g1=h.g1 + p)

    def _glue_ext(self, h: GoodGraphState, p) -> Play:
        if h.g2 is None:
            return h.with_(g2=p)
        g2 = h.g2
        board = self.state.board
        p_closed = board.has_edge(p.red_end, p.blue_end)
        g_closed = board.has_edge(g2.red_end, g2.blue_end)
        if p_closed and g_closed:
            return (yield from self._glue_closed(h, p))
        # Either transition can absorb the other path's blue end; keep the
        # orientation whose split-off red end is not adjacent to the new blue end.
        if p_closed:
            yield from self.force(g2.transition, p.blue_end, "glue/case2/join-rev")
            new_g2 = extended(g2.blue_vertices + p.blue_vertices, p.red_end)
            loose = g2.red_end
        else:
            yield from self.force(p.transition, g2.blue_end, "glue/case2/join")
            new_g2 = extended(p.blue_vertices + g2.blue_vertices, g2.red_end)
            loose = p.red_end
        if not h.g1:
            return h.with_(g1=(loose,), g2=new_g2)
        yield from self.force(loose, h.g1[-1], "glue/case2/attach")
        return h.with_(g1=h.g1 + (loose,), g2=new_g2)

    def _glue_closed(self, h: GoodGraphState, p) -> Play:
        """Both extended paths have red end ~ blue end: merge them into one (1,1)-path.

        Splitting off a red end would leave a 1-end next to the new blue end,
        so instead join the transitions and hook each red end onto the other
        path's blue end. Every new blue edge stays on the final path.
        """
        a, b = p, h.g2
        yield from self.force(a.transition, b.transition, "glue/case2/closed-ww")
        yield from self.force(a.red_end, b.blue_end, "glue/case2/closed-xu")
        yield from self.force(b.red_end, a.blue_end, "glue/case2/closed-uy")
        path = (b.red_end,) + a.blue_vertices + b.blue_vertices[::-1] + (a.red_end,)
        return (yield from self._glue_11(h.with_(g2=None), path))

    def _glue_path(self, h: GoodGraphState, p: tuple[int, ...]) -> Play:
        if not h.g0:
            return h.with_(g0=p)
        g0 = h.g0
        u0, u0p = g0[-1], g0[0]
        x, y = p[0], p[-1]
        if (yield from self.select(x, u0, "glue/case3/xu0")) is BLUE:
            return h.with_(g0=g0 + p)
        rest = h.with_(g0=())
        if (yield from self.select(y, u0p, "glue/case3/yu0'")) is BLUE:
            hp = GoodGraphState(g1=g0[::-1] + p[::-1])
        elif len(p) > 1:
            yield from self.force(y, u0, "glue/case3/yu0")
            hp = GoodGraphState(g1=p + g0[::-1])
        else:
            hp = GoodGraphState(g2=extended(g0, x))
        return (yield from self.glue(rest, hp))

    # -- stage 1 -----------------------------------------------------------------

    def grow_by_5(self, h: GoodGraphState) -> Play:
        """Very good graph with ess = e  ->  very good graph with ess = e + 5."""
        target = h.ess + 5
        a, b, c = self.fresh(), self.fresh(), self.fresh()
        c1 = yield from self.select(a, b, "probe-ab")
        c2 = yield from self.select(b, c, "probe-bc")
        if c1 is RED and c2 is RED:
            hp = yield from self._good_case1(a, b, c)
        elif c1 is BLUE and c2 is BLUE:
            hp = yield from self._good_case2(a, b, c)
        else:
            if c1 is RED:
                a, c = c, a
            if h.limb is None:
                res = yield from self._good_case3_nolimb(h, a, b, c)
            else:
                res = yield from self._good_case3_limb(h, a, b, c)
            h, hp = res
        out = yield from self.glue(h, hp)
        if out.ess != target:
            raise InvariantViolation(f"grow_by_5 produced ess {out.ess}, wanted {target}")
        self.checkpoint(out, True, "grow_by_5")
        return out

    def _good_case1(self, a: int, b: int, c: int):
        x, y = self.fresh(), self.fresh()
        yield from self.force(a, x, "good-case1/ax")
        yield from self.force(c, y, "good-case1/cy")
        yield from self.force(x, c, "good-case1/xc")
        return GoodGraphState(g2=extended((y, c, x, a), b))

    def _good_case2(self, a: int, b: int, c: int):
        x, y = self.fresh(), self.fresh()
        cx = yield from self.select(c, x, "good-case2/cx")
        xy = yield from self.select(x, y, "good-case2/xy")
        if cx is BLUE and xy is BLUE:
            return GoodGraphState(g0=(a, b, c, x, y))
        if cx is RED and xy is RED:
            yield from self.force(a, y, "good-case2/rr/ay")
            return GoodGraphState(g2=extended((c, b, a, y), x))
        if cx is RED:
            return (yield from self._bbrb(a, b, c, x, y, "good-case2/rb"))
        if (yield from self.select(a, y, "good-case2/br/ay")) is BLUE:
            return GoodGraphState(g1=(x, c, b, a, y))
        return GoodGraphState(g2=extended((a, b, c, x), y))

    def _bbrb(self, a, b, c, x, y, note):
        """Finish a bbrb-path a-b-c-x-y (ab, bc, xy blue; cx red)."""
        if (yield from self.select(a, y, f"{note}/ay")) is BLUE:
            return GoodGraphState(g1=(x, y, a, b, c))
        yield from self.force(c, y, f"{note}/cy")
        return GoodGraphState(g1=(x, y, c, b, a))

    def _good_case3_nolimb(self, h, a, b, c):
        x = self.fresh()
        if (yield from self.select(c, x, "good-case3/cx")) is RED:
            y = self.fresh()
            yield from self.force(x, y, "good-case3/r/xy")
            yield from self.force(a, x, "good-case3/r/ax")
            return h, GoodGraphState(g2=extended((y, x, a, b), c))
        y = self.fresh()
        if (yield from self.select(b, y, "good-case3/b/by")) is BLUE:
            return h.with_(limb=LimbCert(a, b, c, x, y)), GoodGraphState()
        yield from self.force(a, c, "good-case3/br/ac")
        yield from self.force(x, y, "good-case3/br/xy")
        return h, GoodGraphState(g1=(y, x, c, a, b))

    def _good_case3_limb(self, h, a, b, c):
        x, y = self.fresh(), self.fresh()
        if (yield from self.select(x, y, "good-case3L/xy")) is BLUE:
            if (yield from self.select(c, x, "good-case3L/b/cx")) is RED:
                # brrb-path a-b-c-x-y
                yield from self.force(a, x, "good-case3L/brrb/ax")
                return h, GoodGraphState(g2=extended((y, x, a, b), c))
            # bbrb-path y-x-c-b-a
            hp = yield from self._bbrb(y, x, c, b, a, "good-case3L/bbrb")
            return h, hp
        if (yield from self.select(a, x, "good-case3L/r/ax")) is BLUE:
            yield from self.force(b, y, "good-case3L/rb/by")
            yield from self.force(c, y, "good-case3L/rb/cy")
            return h, GoodGraphState(g1=(x, a, b, y, c))
        w1, u1, u2, w3, w2 = h.limb.vertices
        yield from self.force(y, w1, "good-case3L/rr/yw1")
        yield from self.force(y, w3, "good-case3L/rr/yw3")
        yield from self.force(c, u2, "good-case3L/rr/cu2")
        yield from self.force(c, x, "good-case3L/rr/cx")
        yield from self.force(a, w2, "good-case3L/rr/aw2")
        path = (x, c, u2, w3, y, w1, u1, w2, a, b)
        return h.with_(limb=None), GoodGraphState(g1=path)

    # -- stage 2 -------------------------------------------------------------------

    def remainder(self, h: GoodGraphState):
        """Build and glue the r-vertex remainder; returns (state, red_edge or None)."""
        r = self.r
        if r == 0:
            return h, None
        if r == 1:
            hp = GoodGraphState(g0=(self.fresh(),))
            note = "case1"
        else:
            vs = [self.fresh() for _ in range(r)]
            cols = []
            for i in range(r - 1):
                cols.append((yield from self.select(vs[i], vs[i + 1], f"path{i}")))
            if all(c is BLUE for c in cols):
                hp, note = GoodGraphState(g0=tuple(vs)), "case1"
            elif r == 2:
                self.stage = "stage2/exceptional"
                return h, (vs[0], vs[1])
            elif r == 3:
                hp, note = yield from self._remainder3(vs, cols)
            else:
                hp, note = yield from self._remainder4(vs, cols)
        self.stage = f"stage2/{note}"
        out = yield from self.glue(h, hp)
        return out, None

    def _remainder3(self, vs, cols):
        a, b, c = vs
        if cols == [RED, RED]:
            x = self.fresh()
            yield from self.force(a, x, "case2/ax")
            yield from self.force(x, c, "case2/xc")
            return GoodGraphState(g1=(a, x, c)), "case2"
        if cols[0] is RED:
            a, c = c, a
        if (yield from self.select(a, c, "case3/ac")) is BLUE:
            return GoodGraphState(g1=(c, a, b)), "case3"
        return GoodGraphState(g2=extended((a, b), c)), "case3"

    def _remainder4(self, vs, cols):
        a, b, c, d = vs
        last = yield from self.select(a, d, "case4/ad")
        cycle = [(a, b), (b, c), (c, d), (d, a)]
        colors = cols + [last]
        reds = [e for e, col in zip(cycle, colors) if col is RED]
        blues = [e for e, col in zip(cycle, colors) if col is BLUE]
        if len(reds) == 1:
            (p, q), = reds
            i = cycle.index((p, q))
            order = [cycle[(i + j) % 4][0] for j in range(1, 5)]
            return GoodGraphState(g1=tuple(order)), "case4/one-red"
        if len(reds) != 2:
            raise InvariantViolation(f"remainder cycle has {len(reds)} red edges")
        (p1, q1), (p2, q2) = reds
        shared = {p1, q1} & {p2, q2}
        if shared:
            (mid,) = shared
            i = next(j for j, e in enumerate(cycle) if e in blues and
                     cycle[(j + 1) % 4] in blues)
            path = (cycle[i][0], cycle[i][1], cycle[(i + 1) % 4][1])
            red_end = mid
            # transition is the path end adjacent to mid through a red edge
            if self.state.board.color(path[0], red_end) is RED:
                path = path[::-1]
            return GoodGraphState(g2=extended(path, red_end)), "case4/adjacent"
        # disjoint reds: ab and cd (or bc and da)
        if (a, b) in reds:
            yield from self.force(a, c, "case4/disjoint/ac")
            return GoodGraphState(g1=(b, c, a, d)), "case4/disjoint"
        yield from self.force(b, d, "case4/disjoint/bd")
        return GoodGraphState(g1=(a, b, d, c)), "case4/disjoint"

    # -- stage 3 ---------------------------------------------------------------------

    def run_exceptional(self, h: GoodGraphState, ab: tuple[int, int]) -> Play:
        a, b = ab
        if h.g0:
            self.stage = "stage3x/subcase1"
            g0 = h.g0
            u0, u0p = g0[0], g0[-1]
            first = yield from self.select(u0, a, "u0a")
            if first is BLUE:
                second = yield from self.select(u0p, b, "u0'b")
            else:
                # u0-a red makes a red path u0-a-b, so u0'-b is forced
                yield from self.force(u0p, b, "u0'b")
                second = BLUE
            if first is BLUE and second is BLUE:
                hp = GoodGraphState(g1=(a,) + g0 + (b,))
            elif first is BLUE:
                hp = GoodGraphState(g2=extended((a,) + g0, b))
            else:
                hp = GoodGraphState(g2=extended((b,) + g0[::-1], a))
            out = yield from self.glue(h.with_(g0=()), hp)
            return out
        if h.g1:
            self.stage = "stage3x/subcase2"
            g1 = h.g1
            yield from self.force(g1[0], a, "u1a")
            yield from self.force(g1[-1], b, "u1'b")
            return h.with_(g1=(a,) + g1 + (b,))
        self.stage = "stage3x/subcase3"
        if h.g2 is None:
            raise InvariantViolation("exceptional subcase 3 without G2")
        g2 = h.g2
        yield from self.force(g2.transition, a, "w2a")
        yield from self.force(a, g2.red_end, "au2")
        yield from self.force(g2.red_end, b, "u2b")
        if h.limb is not None:
            p, _ = yield from self.limb_to_path(h.limb)
            yield from self.force(p[-1], b, "x4b")
        raise InvariantViolation("exceptional subcase 3 finished without a blue P_n")

    def limb_to_path(self, limb: LimbCert):
        """Turn the limb into a blue (1,0)-path; returns (path, red count), 1-end last."""
        x1, x2, x3, x4, x5 = limb.vertices
        if (yield from self.select(x4, x5, "limb/x4x5")) is BLUE:
            return (x1, x2, x5, x4, x3), 1
        yield from self.force(x5, x3, "limb/x5x3")
        return (x1, x2, x5, x3, x4), 2

    def assemble(self, h: GoodGraphState) -> Play:
        self.stage = "stage3"
        if h.limb is not None:
            p, _ = yield from self.limb_to_path(h.limb)
            if h.g1:
                yield from self.force(p[-1], h.g1[0], "F1/x4u1")
                f1 = p + h.g1
            else:
                f1 = p
        else:
            f1 = h.g1
        # f1: 1-end last
        g2 = h.g2
        if f1 and g2 is not None:
            yield from self.force(f1[-1], g2.red_end, "D/f1u2")
            yield from self.force(g2.transition, f1[0], "D/w2f1'")
            d = g2.blue_vertices + f1 + (g2.red_end,)
        elif g2 is not None:
            yield from self._assemble_bare_ext(h)
            raise InvariantViolation("bare extended path assembly finished without a blue P_n")
        else:
            d = f1
        if not h.g0:
            raise InvariantViolation(f"stage 3 ended with a blue path on {len(d)} < n vertices")
        g0 = h.g0
        x, xp = d[-1], d[0]
        u0, u0p = g0[0], g0[-1]
        if (yield from self.select(x, u0, "D'/xu0")) is BLUE:
            raise InvariantViolation("joined D and G0 without a blue P_n")
        board = self.state.board
        others = board.neighbors(x, RED) - {u0}
        if not others:
            raise InvariantViolation(f"D end {x} is not a 1-end")
        if others - {xp}:
            yield from self.force(u0, xp, "D'/u0x'")
        elif u0p != u0:
            yield from self.force(xp, u0p, "D'/x'u0'")
        else:
            yield from self.force(xp, self.fresh(), "D'/x'y")
        raise InvariantViolation("stage 3 finished without a blue P_n")

    def _assemble_bare_ext(self, h: GoodGraphState):
        """G1 and the limb are empty but G2 is not, so D is not a blue path.

        Without G0 the blue part of G2 has n - 1 vertices and its transition is
        a 2-end, so one forced edge to a free vertex finishes. With G0, join the
        transition to G0 and then try to pull the red end of G2 in at the far end.
        """
        self.stage = "stage3/bare-G2"
        g2, g0 = h.g2, h.g0
        if not g0:
            yield from self.force(g2.transition, self.fresh(), "w2y")
            return
        yield from self.force(g2.transition, g0[0], "w2u0")
        if (yield from self.select(g0[-1], g2.red_end, "u0'u2")) is RED:
            yield from self.force(g0[-1], self.fresh(), "u0'y")

    # -- driver --------------------------------------------------------------------------

    def run(self, state: GameState) -> Generator[Proposal, Color, None]:
        self.state = state
        if state.board.num_edges():
            raise ValueError("the P_4 strategy starts from an empty board")
        h = GoodGraphState()
        for _ in range(self.m // 5):
            self.stage = "stage1"
            h = yield from self.grow_by_5(h)
        self.stage = "stage2"
        h, red_ab = yield from self.remainder(h)
        if red_ab is not None:
            self.exceptional = True
            h = yield from self.run_exceptional(h, red_ab)
            self.checkpoint(h, False, "stage3x")
        elif self.r:
            self.checkpoint(h, False, "stage2")
        if h.ess != self.n:
            raise InvariantViolation(f"stage 2 ended with ess {h.ess} != n {self.n}")
        yield from self.assemble(h)

    # -- end-of-game audit ----------------------------------------------------------------

    def final_check(self, state: GameState) -> list[str]:
        out = []
        reds = state.board.num_edges(RED)
        blues = state.board.num_edges(BLUE)
        if state.status.value == "blue_win":
            if reds > ceil_frac(2 * self.n, 5):
                out.append(f"{reds} red edges exceed ceil(2n/5)={ceil_frac(2 * self.n, 5)}")
            if blues != self.n - 1:
                out.append(f"{blues} blue edges, expected n-1={self.n - 1}")
        if reds + blues != state.round:
            out.append("edge count differs from round count")
        return out


def round_bound(n: int) -> int:
    return ceil_frac(7 * n, 5) - 1


def builder_p4(n: int, checks: bool = True) -> GeneratorBuilder:
    strat = P4Strategy(n, checks)
    b = GeneratorBuilder(strat.run)
    b.name = "p4"
    b.strategy = strat
    return b
