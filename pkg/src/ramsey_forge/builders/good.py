"""Good-graph bookkeeping for the P_4 strategy.

A good graph is decomposed into four vertex-disjoint essential subgraphs:

* ``g0``: a blue path that, together with its red edges, is a whole component;
* ``g1``: a blue (1,1)-path;
* ``g2``: an extended (2,0)-path;
* ``limb``: a limb component.

``check_good`` re-derives every clause from the raw board so the tracked
decomposition can be audited independently of the strategy that built it.
"""
from __future__ import annotations

from dataclasses import dataclass, field, replace
from typing import Optional

from ..board import BLUE, RED, ColoredGraph, edge_key
from ..structures import ExtendedPathCert, LimbCert, check_limb, is_blue_path, red_tail


def ceil_frac(num: int, den: int) -> int:
    return -(-num // den)


def red_allowance(v: int) -> int:
    """Largest red-edge count allowed next to a blue (1,1)- or extended path on v vertices."""
    return ceil_frac(2 * v, 5)


def edge_budget(ess: int) -> int:
    if ess <= 0:
        return 0
    return ceil_frac(7 * ess, 5) - 1


def extended(blue: tuple[int, ...], red_end: int) -> ExtendedPathCert:
    return ExtendedPathCert(blue[0], blue[-1], red_end, tuple(blue))


@dataclass(frozen=True)
class GoodGraphState:
    g0: tuple[int, ...] = ()
    g1: tuple[int, ...] = ()
    g2: Optional[ExtendedPathCert] = None
    limb: Optional[LimbCert] = None

    @property
    def v2(self) -> int:
        return 0 if self.g2 is None else len(self.g2.vertices)

    @property
    def v12(self) -> int:
        return len(self.g1) + self.v2

    @property
    def ess(self) -> int:
        return len(self.g0) + self.v12 + (5 if self.limb else 0)

    def essential_vertices(self) -> set[int]:
        out = set(self.g0) | set(self.g1)
        if self.g2 is not None:
            out |= set(self.g2.vertices)
        if self.limb is not None:
            out |= set(self.limb.vertices)
        return out

    def parts(self) -> dict[str, tuple[int, ...]]:
        return {"G0": self.g0, "G1": self.g1,
                "G2": self.g2.vertices if self.g2 else (),
                "L": self.limb.vertices if self.limb else ()}

    def nonempty(self) -> list[str]:
        return [k for k, v in self.parts().items() if v]

    @property
    def is_simple(self) -> bool:
        return len(self.nonempty()) <= 1

    def with_(self, **kw) -> "GoodGraphState":
        return replace(self, **kw)

    def describe(self) -> str:
        return ", ".join(f"{k}:{len(v)}" for k, v in self.parts().items())


@dataclass
class GoodReport:
    ok: bool
    violations: list[str] = field(default_factory=list)

    def __bool__(self) -> bool:
        return self.ok


def _red_incident(g: ColoredGraph, vs: set[int]) -> set[tuple[int, int]]:
    return {edge_key(v, w) for v in vs for w in g.neighbors(v, RED)}


def _path_edges(seq) -> set[tuple[int, int]]:
    return {edge_key(a, b) for a, b in zip(seq, seq[1:])}


def check_good(state: GoodGraphState, g: ColoredGraph, very: bool = False) -> GoodReport:
    bad: list[str] = []
    parts = state.parts()
    seen: set[int] = set()
    for name, vs in parts.items():
        if seen & set(vs):
            bad.append(f"{name} overlaps another essential subgraph")
        seen |= set(vs)

    # (A)
    if state.limb is not None:
        err = check_limb(g, state.limb)
        if err:
            bad.append(f"(A) {err}")

    # (B)
    if state.g0:
        g0 = state.g0
        if not is_blue_path(g, g0):
            bad.append("(B) G0 is not a blue path")
        vs0 = set(g0)
        reds = _red_incident(g, vs0)
        expected = _path_edges(g0) | reds
        comp = g.colored_component(g0[0])
        actual = {edge_key(v, w) for v in comp for c in (RED, BLUE) for w in g.neighbors(v, c)}
        if actual != expected:
            bad.append("(B) G0 with its red edges is not a whole component")
        if len(reds) > red_allowance(len(g0)) - 1:
            bad.append(f"(B) |Red(G0)|={len(reds)} exceeds {red_allowance(len(g0)) - 1}")

    # (C)
    named: tuple[int, ...] = ()
    blue12: set[tuple[int, int]] = set()
    if state.g2 is not None:
        x = state.g2
        named = (x.blue_end, x.transition, x.red_end)
        if len(x.blue_vertices) < 2 or not is_blue_path(g, x.blue_vertices):
            bad.append("(C) G2 blue part is not a blue path on >= 2 vertices")
        if x.blue_vertices[0] != x.blue_end or x.blue_vertices[-1] != x.transition:
            bad.append("(C) G2 named vertices inconsistent")
        if x.red_end in x.blue_vertices or g.color(x.transition, x.red_end) is not RED:
            bad.append("(C) G2 transition-red end edge is not red")
        elif red_tail(g, x.transition) < 2:
            bad.append("(C) G2 transition vertex is not a 2-end")
        blue12 |= _path_edges(x.blue_vertices)
    if state.g1:
        g1 = state.g1
        if not is_blue_path(g, g1):
            bad.append("(C) G1 is not a blue path")
        for end in {g1[0], g1[-1]}:
            if not g.degree(end, RED):
                bad.append(f"(C) G1 end {end} is not a 1-end")
            for t in named:
                if g.has_edge(end, t):
                    bad.append(f"(C) G1 1-end {end} adjacent to G2 named vertex {t}")
        blue12 |= _path_edges(g1)
    if state.g1 or state.g2 is not None:
        vs12 = set(parts["G1"]) | set(parts["G2"])
        stray = {edge_key(v, w) for v in vs12 for w in g.neighbors(v, BLUE)} - blue12
        if stray:
            bad.append(f"(C) stray blue edges on G1 u G2: {sorted(stray)}")
        r12 = len(_red_incident(g, vs12))
        if r12 > red_allowance(len(vs12)):
            bad.append(f"(C) |Red(G1 u G2)|={r12} exceeds {red_allowance(len(vs12))}")

    # (D), (E)
    for u, v, c in g.edges():
        if u not in seen and v not in seen:
            bad.append(f"({'D' if c is BLUE else 'E'}) edge {u}-{v} misses the essential vertices")

    # (F), (G)
    d0 = len(state.g0) % 5 == 0
    d12 = state.v12 % 5 == 0
    if not (d0 or d12):
        bad.append("(F) neither v(G0) nor v(G1 u G2) divisible by 5")
    if very and not (d0 and d12):
        bad.append("(G) v(G0) and v(G1 u G2) not both divisible by 5")
    return GoodReport(not bad, bad)


def check_very_good(state: GoodGraphState, g: ColoredGraph) -> GoodReport:
    return check_good(state, g, very=True)


def without_part(state: GoodGraphState, g: ColoredGraph, part: str) -> tuple[GoodGraphState, ColoredGraph]:
    """Remove G0 (with its red edges) or the limb from both the decomposition and the board."""
    if part == "G0":
        return state.with_(g0=()), g.without(state.g0)
    if part == "L":
        return state.with_(limb=None), g.without(state.limb.vertices if state.limb else ())
    raise ValueError(part)


def audit(state: GoodGraphState, g: ColoredGraph, very: bool = False) -> list[str]:
    """Full checkpoint audit: goodness, both deletions, and the edge budget."""
    out = [f"{v}" for v in check_good(state, g, very).violations]
    for part in ("G0", "L"):
        s2, g2 = without_part(state, g, part)
        out += [f"without {part}: {v}" for v in check_good(s2, g2, very).violations]
    if g.num_edges() > edge_budget(state.ess):
        out.append(f"edge count {g.num_edges()} exceeds budget {edge_budget(state.ess)}")
    return out
