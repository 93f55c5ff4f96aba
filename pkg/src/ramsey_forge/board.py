"""Two-coloured simple graph over an unbounded vertex universe.

The board of an online Ramsey game is the complete graph on the naturals.
Only the coloured edges are stored; every vertex that has never been touched
by a coloured edge is free.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Iterable, Iterator, Optional

DEFAULT_COMPONENT_GUARD = 64


class Color(enum.Enum):
    RED = "R"
    BLUE = "B"

    @property
    def other(self) -> "Color":
        return Color.BLUE if self is Color.RED else Color.RED

    def __str__(self) -> str:
        return self.value


RED = Color.RED
BLUE = Color.BLUE


class BoardError(Exception):
    pass


class DuplicateEdgeError(BoardError):
    pass


class SelfLoopError(BoardError):
    pass


class ComponentTooLargeError(BoardError):
    """Raised when an exact longest-path search would exceed the size guard."""


class VertexBudgetError(BoardError):
    pass


def edge_key(u: int, v: int) -> tuple[int, int]:
    return (u, v) if u < v else (v, u)


class ColoredGraph:
    """Host graph: coloured edges plus a monotone free-vertex allocator.

    Vertex ids are never recycled. ``allocate_free_vertex`` reserves an id
    even before an edge touches it, so several fresh vertices can be
    requested ahead of a move.
    """

    def __init__(self, component_guard: int = DEFAULT_COMPONENT_GUARD,
                 vertex_budget: Optional[int] = None):
        self._color: dict[tuple[int, int], Color] = {}
        self._adj: dict[Color, dict[int, set[int]]] = {RED: {}, BLUE: {}}
        self._next_id = 0
        self.component_guard = component_guard
        self.vertex_budget = vertex_budget

    # -- construction -----------------------------------------------------

    def copy(self) -> "ColoredGraph":
        g = ColoredGraph(self.component_guard, self.vertex_budget)
        g._color = dict(self._color)
        g._adj = {c: {v: set(nb) for v, nb in adj.items()} for c, adj in self._adj.items()}
        g._next_id = self._next_id
        return g

    def without(self, vertices: Iterable[int]) -> "ColoredGraph":
        """Copy with every edge touching ``vertices`` removed."""
        drop = set(vertices)
        g = ColoredGraph(self.component_guard, self.vertex_budget)
        for (u, v), c in self._color.items():
            if u not in drop and v not in drop:
                g.add_edge(u, v, c)
        g._next_id = self._next_id
        return g

    @classmethod
    def from_edges(cls, edges: Iterable[tuple[int, int, Color]], **kw) -> "ColoredGraph":
        g = cls(**kw)
        for u, v, c in edges:
            g.add_edge(u, v, c)
        return g

    def allocate_free_vertex(self) -> int:
        if self.vertex_budget is not None and self._next_id >= self.vertex_budget:
            raise VertexBudgetError(f"vertex budget {self.vertex_budget} exhausted")
        vid = self._next_id
        self._next_id += 1
        return vid

    def add_edge(self, u: int, v: int, c: Color) -> None:
        if u == v:
            raise SelfLoopError(f"self-loop at {u}")
        key = edge_key(u, v)
        if key in self._color:
            raise DuplicateEdgeError(f"edge {key} already coloured {self._color[key]}")
        self._color[key] = c
        adj = self._adj[c]
        adj.setdefault(u, set()).add(v)
        adj.setdefault(v, set()).add(u)
        # keep the allocator ahead of every id that has ever been used
        self._next_id = max(self._next_id, u + 1, v + 1)

    # -- basic queries ----------------------------------------------------

    def color(self, u: int, v: int) -> Optional[Color]:
        return self._color.get(edge_key(u, v))

    def has_edge(self, u: int, v: int) -> bool:
        return edge_key(u, v) in self._color

    def neighbors(self, v: int, c: Color) -> set[int]:
        return self._adj[c].get(v, set())

    def degree(self, v: int, c: Optional[Color] = None) -> int:
        if c is None:
            return len(self.neighbors(v, RED)) + len(self.neighbors(v, BLUE))
        return len(self.neighbors(v, c))

    def is_free(self, v: int) -> bool:
        return self.degree(v) == 0

    def edges(self, c: Optional[Color] = None) -> Iterator[tuple[int, int, Color]]:
        for (u, v), col in sorted(self._color.items()):
            if c is None or col is c:
                yield u, v, col

    def edge_set(self) -> dict[tuple[int, int], Color]:
        return dict(self._color)

    def vertices(self) -> set[int]:
        """Non-isolated vertices."""
        return set(self._adj[RED]) | set(self._adj[BLUE])

    def num_edges(self, c: Optional[Color] = None) -> int:
        if c is None:
            return len(self._color)
        return sum(1 for col in self._color.values() if col is c)

    @property
    def next_id(self) -> int:
        return self._next_id

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ColoredGraph):
            return NotImplemented
        return self._color == other._color

    def __repr__(self) -> str:
        body = " ".join(f"{u}{c.value.lower()}{v}" for u, v, c in self.edges())
        return f"ColoredGraph({body})"

    # -- monochromatic structure --------------------------------------------

    def component(self, v: int, c: Color) -> set[int]:
        adj = self._adj[c]
        seen = {v}
        stack = [v]
        while stack:
            x = stack.pop()
            for y in adj.get(x, ()):
                if y not in seen:
                    seen.add(y)
                    stack.append(y)
        return seen

    def colored_component(self, v: int) -> set[int]:
        """Component of ``v`` in the graph of all coloured edges."""
        seen = {v}
        stack = [v]
        while stack:
            x = stack.pop()
            for c in (RED, BLUE):
                for y in self._adj[c].get(x, ()):
                    if y not in seen:
                        seen.add(y)
                        stack.append(y)
        return seen

    def _guard(self, size: int, c: Color) -> None:
        if size > self.component_guard:
            raise ComponentTooLargeError(
                f"{c.name.lower()} component of {size} vertices exceeds guard {self.component_guard}")

    def longest_path_from(self, x: int, c: Color, avoid: Iterable[int] = ()) -> int:
        """Vertex count of the longest simple ``c``-path with end ``x`` avoiding ``avoid``."""
        avoid = set(avoid)
        if x in avoid:
            return 0
        adj = self._adj[c]
        if not adj.get(x):
            return 1
        self._guard(len(self.component(x, c)), c)
        return _longest_from(adj, x, avoid | {x})

    def longest_path_through(self, u: int, v: int, c: Color) -> int:
        """Longest simple path in (``c``-edges + uv) that uses the edge uv."""
        adj = self._adj[c]
        size = len(self.component(u, c) | self.component(v, c))
        self._guard(size, c)
        best = 0
        for used in _paths_from(adj, u, {u, v}):
            best = max(best, len(used) + _longest_from(adj, v, used | {v}))
        return best

    def longest_path(self, c: Color) -> int:
        """Vertex count of the longest ``c``-path anywhere (0 for an empty graph)."""
        best = 0
        seen: set[int] = set()
        for v in sorted(self._adj[c]):
            if v in seen or not self._adj[c][v]:
                continue
            comp = self.component(v, c)
            seen |= comp
            best = max(best, self._component_longest_path(comp, c))
        return best

    def _component_longest_path(self, comp: set[int], c: Color) -> int:
        adj = self._adj[c]
        n_edges = sum(len(adj[v]) for v in comp) // 2
        if n_edges == len(comp) - 1:
            return _tree_diameter(adj, comp)
        self._guard(len(comp), c)
        return max(_longest_from(adj, v, {v}) for v in comp)

    def has_path(self, n: int, c: Color, near: Optional[int] = None) -> bool:
        """Whether a ``c``-path on ``n`` vertices exists (restricted to the component of ``near``)."""
        if n <= 1:
            return True
        if near is not None:
            if not self._adj[c].get(near):
                return False
            comp = self.component(near, c)
            return len(comp) >= n and self._component_longest_path(comp, c) >= n
        return self.longest_path(c) >= n

    def longest_red_path_through(self, u: int, v: int) -> int:
        return self.longest_path_through(u, v, RED)

    def longest_red_path_from(self, x: int, excluding: Optional[int] = None) -> int:
        return self.longest_path_from(x, RED, () if excluding is None else (excluding,))

    def has_blue_path(self, n: int) -> bool:
        return self.has_path(n, BLUE)

    def blue_components(self) -> list["ComponentInfo"]:
        return self.components(BLUE)

    def components(self, c: Color) -> list["ComponentInfo"]:
        out = []
        seen: set[int] = set()
        adj = self._adj[c]
        for v in sorted(adj):
            if v in seen or not adj[v]:
                continue
            comp = self.component(v, c)
            seen |= comp
            out.append(ComponentInfo.describe(comp, adj))
        return out


@dataclass(frozen=True)
class ComponentInfo:
    vertices: frozenset[int]
    is_path: bool
    ends: Optional[tuple[int, int]]

    @classmethod
    def describe(cls, comp: set[int], adj: dict[int, set[int]]) -> "ComponentInfo":
        degs = {v: len(adj[v]) for v in comp}
        n_edges = sum(degs.values()) // 2
        is_path = n_edges == len(comp) - 1 and max(degs.values()) <= 2
        ends = None
        if is_path:
            e = sorted(v for v, d in degs.items() if d == 1)
            ends = (e[0], e[1])
        return cls(frozenset(comp), is_path, ends)

    def path_order(self, adj: dict[int, set[int]]) -> list[int]:
        assert self.is_path and self.ends is not None
        order = [self.ends[0]]
        prev = None
        while len(order) < len(self.vertices):
            cur = order[-1]
            nxt = next(w for w in adj[cur] if w != prev)
            prev = cur
            order.append(nxt)
        return order


def _longest_from(adj: dict[int, set[int]], x: int, used: set[int]) -> int:
    best = 1
    for y in adj.get(x, ()):
        if y not in used:
            used.add(y)
            best = max(best, 1 + _longest_from(adj, y, used))
            used.discard(y)
    return best


def _paths_from(adj: dict[int, set[int]], x: int, blocked: set[int]) -> Iterator[set[int]]:
    """Vertex sets of all simple paths starting at x (x included) avoiding ``blocked - {x}``."""
    used = set(blocked)
    path = {x}

    def rec(cur: int) -> Iterator[set[int]]:
        yield set(path)
        for y in adj.get(cur, ()):
            if y not in used:
                used.add(y)
                path.add(y)
                yield from rec(y)
                path.discard(y)
                used.discard(y)

    yield from rec(x)


def _tree_diameter(adj: dict[int, set[int]], comp: set[int]) -> int:
    def farthest(src: int) -> tuple[int, int]:
        dist = {src: 1}
        stack = [src]
        far = (1, src)
        while stack:
            x = stack.pop()
            for y in adj[x]:
                if y not in dist:
                    dist[y] = dist[x] + 1
                    far = max(far, (dist[y], y))
                    stack.append(y)
        return far

    _, a = farthest(next(iter(comp)))
    d, _ = farthest(a)
    return d
