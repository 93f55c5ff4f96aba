"""Exact online size Ramsey numbers for tiny path pairs by game-tree search.

The value is defined in the standard game: Builder wins when a red P_k or a
blue P_n appears, Painter maximises the number of rounds. Positions are
memoised by an exact canonical form of the coloured host graph.
"""
from __future__ import annotations

import time
from dataclasses import dataclass
from typing import Optional, Union

from .board import BLUE, RED, Color, ColoredGraph

CanonicalKey = tuple


class SolverBudgetError(RuntimeError):
    pass


# -- canonical form -------------------------------------------------------------------


def _refine(vs: list[int], adj: dict[int, dict[int, str]], colors: dict[int, int]) -> dict[int, int]:
    """Colour refinement: iterate (colour, multiset of (edge colour, neighbour colour))."""
    while True:
        sig = {v: (colors[v], tuple(sorted((c, colors[w]) for w, c in adj[v].items()))) for v in vs}
        ranks = {s: i for i, s in enumerate(sorted(set(sig.values())))}
        new = {v: ranks[sig[v]] for v in vs}
        if len(set(new.values())) == len(set(colors.values())):
            return new
        colors = new


def _encode(order: list[int], adj: dict[int, dict[int, str]]) -> tuple:
    pos = {v: i for i, v in enumerate(order)}
    return tuple(sorted((min(pos[u], pos[w]), max(pos[u], pos[w]), c)
                        for u in order for w, c in adj[u].items() if pos[u] < pos[w]))


def canonicalize(g: ColoredGraph, vertex_budget: Optional[int] = None) -> CanonicalKey:
    """Exact canonical key: equal keys iff the coloured graphs are isomorphic.

    Isolated vertices are ignored. Colour refinement splits the vertices into
    cells; ties are broken by individualising each vertex of the first
    non-singleton cell in turn and keeping the lexicographically least encoding.
    """
    vs = sorted(g.vertices())
    if vertex_budget is not None and len(vs) > vertex_budget:
        raise SolverBudgetError(f"{len(vs)} vertices exceed budget {vertex_budget}")
    adj: dict[int, dict[int, str]] = {v: {} for v in vs}
    for u, w, c in g.edges():
        adj[u][w] = c.value
        adj[w][u] = c.value
    colors = _refine(vs, adj, {v: 0 for v in vs})
    return (len(vs),) + _search(vs, adj, colors)


def _search(vs: list[int], adj, colors: dict[int, int]) -> tuple:
    cells: dict[int, list[int]] = {}
    for v in vs:
        cells.setdefault(colors[v], []).append(v)
    target = next((cells[c] for c in sorted(cells) if len(cells[c]) > 1), None)
    if target is None:
        order = sorted(vs, key=lambda v: colors[v])
        return _encode(order, adj)
    best = None
    for v in target:
        # individualised vertex sorts just before the rest of its cell
        trial = {w: (2 * c + 1 if w != v else 2 * colors[v]) for w, c in colors.items()}
        enc = _search(vs, adj, _refine(vs, adj, trial))
        if best is None or enc < best:
            best = enc
    return best


# -- search -------------------------------------------------------------------------------


@dataclass
class SolverConfig:
    k: int
    n: int
    round_budget: Optional[int] = None
    vertex_budget: Optional[int] = None
    use_memo: bool = True

    def __post_init__(self) -> None:
        if self.k < 2 or self.n < 2:
            raise ValueError("k and n must be at least 2")
        if self.round_budget is None:
            self.round_budget = upper_bound(self.k, self.n)
        if self.round_budget < lower_bound(self.k, self.n):
            raise ValueError(f"round budget {self.round_budget} is below the lower bound "
                             f"{lower_bound(self.k, self.n)}")
        if self.vertex_budget is None:
            self.vertex_budget = 2 * self.round_budget


def lower_bound(k: int, n: int) -> int:
    """|E(P_k)| + |E(P_n)| - 1."""
    return (k - 1) + (n - 1) - 1


def upper_bound(k: int, n: int) -> int:
    """A Builder that always extends the blue path's end to a fresh vertex.

    Every red reply is a pendant red edge at the current end, and at most
    k - 2 red replies per end before red is forced, which gives a crude but
    safe ceiling used only as the default search horizon.
    """
    return (n - 1) + (k - 2) * (n - 1) + 1


@dataclass(frozen=True)
class Bracket:
    lower: int
    upper: Optional[int]

    def __str__(self) -> str:
        hi = "?" if self.upper is None else str(self.upper)
        return f"[{self.lower}, {hi}]"


@dataclass
class SolveResult:
    k: int
    n: int
    value: Optional[int] = None
    bracket: Optional[Bracket] = None
    nodes_expanded: int = 0
    memo_hits: int = 0
    wall_time_ms: int = 0

    @property
    def exact(self) -> bool:
        return self.value is not None

    def to_json(self) -> dict:
        out = {"k": self.k, "n": self.n}
        if self.value is not None:
            out["value"] = self.value
        else:
            out["bracket"] = [self.bracket.lower, self.bracket.upper]
        out.update(nodes_expanded=self.nodes_expanded, memo_hits=self.memo_hits,
                   wall_time_ms=self.wall_time_ms)
        return out


class _Searcher:
    def __init__(self, cfg: SolverConfig, node_limit: Optional[int] = None):
        self.cfg = cfg
        self.node_limit = node_limit
        self.memo: dict[tuple, bool] = {}
        self.nodes = 0
        self.hits = 0
        self.canon: dict[frozenset, tuple] = {}

    def key(self, g: ColoredGraph) -> tuple:
        es = frozenset(g.edge_set().items())
        k = self.canon.get(es)
        if k is None:
            k = canonicalize(g, self.cfg.vertex_budget)
            self.canon[es] = k
        return k

    def ends_game(self, g: ColoredGraph, u: int, v: int, c: Color) -> bool:
        target = self.cfg.k if c is RED else self.cfg.n
        return g.longest_path_through(u, v, c) >= target

    def candidates(self, g: ColoredGraph) -> list[tuple[int, int]]:
        return builder_move_candidates(g, self.cfg, self.key)

    def wins(self, g: ColoredGraph, budget: int) -> bool:
        """Can Builder force a monochromatic target within ``budget`` more rounds?"""
        if budget <= 0:
            return False
        # an all-blue Painter never lets red finish, so n - 1 blue edges are needed
        if budget < self.cfg.n - 1 - g.num_edges(BLUE):
            return False
        if self.node_limit is not None and self.nodes >= self.node_limit:
            raise SolverBudgetError(f"node limit {self.node_limit} reached")
        key = (self.key(g), budget)
        if self.cfg.use_memo and key in self.memo:
            self.hits += 1
            return self.memo[key]
        self.nodes += 1
        result = False
        for u, v in self.candidates(g):
            ok = True
            for c in (RED, BLUE):
                if self.ends_game(g, u, v, c):
                    continue
                if budget == 1:
                    ok = False
                    break
                g.add_edge(u, v, c)
                try:
                    sub = self.wins(g, budget - 1)
                finally:
                    _remove_edge(g, u, v, c)
                if not sub:
                    ok = False
                    break
            if ok:
                result = True
                break
        if self.cfg.use_memo:
            self.memo[key] = result
        return result


def _remove_edge(g: ColoredGraph, u: int, v: int, c: Color) -> None:
    # search-only helper: boards are otherwise append-only
    del g._color[(min(u, v), max(u, v))]
    for a, b in ((u, v), (v, u)):
        nb = g._adj[c][a]
        nb.discard(b)
        if not nb:
            del g._adj[c][a]


def builder_move_candidates(g: ColoredGraph, cfg: SolverConfig, key=None) -> list[tuple[int, int]]:
    """Builder moves up to symmetry.

    All uncoloured pairs among non-isolated vertices, one (v, fresh) per
    vertex v, and one (fresh, fresh); two moves are merged when their red and
    blue successors are isomorphic as a pair.
    """
    key = key or (lambda h: canonicalize(h, cfg.vertex_budget))
    vs = sorted(g.vertices())
    base = max(vs, default=-1) + 1
    raw = [(a, b) for i, a in enumerate(vs) for b in vs[i + 1:] if not g.has_edge(a, b)]
    raw += [(v, base) for v in vs]
    raw.append((base, base + 1))
    seen = set()
    out = []
    for u, v in raw:
        sig = []
        for c in (RED, BLUE):
            g.add_edge(u, v, c)
            try:
                sig.append(key(g))
            finally:
                _remove_edge(g, u, v, c)
        sig_t = tuple(sig)
        if sig_t in seen:
            continue
        seen.add(sig_t)
        out.append((u, v))
    return out


def solve(cfg: SolverConfig, time_limit: Optional[float] = None,
          node_limit: Optional[int] = None) -> SolveResult:
    """Iterative deepening on the round horizon from the general lower bound.

    The horizon stops at ``cfg.round_budget``; running out of horizon, vertex
    budget, nodes or time yields a bracket instead of a value.
    """
    t0 = time.monotonic()
    s = _Searcher(cfg, node_limit)
    res = SolveResult(cfg.k, cfg.n)
    lo = max(1, lower_bound(cfg.k, cfg.n))
    budget = lo
    proven_lower = lo
    try:
        while budget <= cfg.round_budget:
            if time_limit is not None and time.monotonic() - t0 > time_limit:
                break
            if s.wins(ColoredGraph(component_guard=10**6), budget):
                res.value = budget
                break
            proven_lower = budget + 1
            budget += 1
    except SolverBudgetError:
        pass
    if res.value is None:
        res.bracket = Bracket(proven_lower, None)
    res.nodes_expanded, res.memo_hits = s.nodes, s.hits
    res.wall_time_ms = int((time.monotonic() - t0) * 1000)
    return res


def solve_value(k: int, n: int, **kw) -> Union[int, Bracket]:
    r = solve(SolverConfig(k, n, **kw))
    return r.value if r.exact else r.bracket
