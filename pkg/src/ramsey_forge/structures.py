"""Certificates for the coloured gadgets the P_4 strategy is built from.

A blue (l1, l2)-path is a blue path whose ends head red paths with l1 and
l2 edges. An extended (2,0)-path is a blue (2,0)-path followed by one red
edge at its 2-end. A limb is the five-vertex component

    x1 -b- x2 -r- x3 -b- x4,   x2 -b- x5

Certifiers return a certificate or a falsy ``CertFailure`` naming the
violated clause; they never raise on bad input.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import permutations
from typing import Iterable, Optional, Sequence, Union

from .board import BLUE, RED, ColoredGraph

HAMILTON_SEARCH_LIMIT = 10


@dataclass(frozen=True)
class CertFailure:
    reason: str

    def __bool__(self) -> bool:
        return False


@dataclass(frozen=True)
class BluePathCert:
    vertices: tuple[int, ...]
    end_red_lengths: tuple[int, int]

    @property
    def ends(self) -> tuple[int, int]:
        return self.vertices[0], self.vertices[-1]


@dataclass(frozen=True)
class ExtendedPathCert:
    blue_end: int
    transition: int
    red_end: int
    blue_vertices: tuple[int, ...]

    @property
    def vertices(self) -> tuple[int, ...]:
        return self.blue_vertices + (self.red_end,)


@dataclass(frozen=True)
class LimbCert:
    x1: int
    x2: int
    x3: int
    x4: int
    x5: int

    @property
    def vertices(self) -> tuple[int, ...]:
        return (self.x1, self.x2, self.x3, self.x4, self.x5)

    @property
    def blue_edges(self) -> tuple[tuple[int, int], ...]:
        return ((self.x1, self.x2), (self.x2, self.x5), (self.x3, self.x4))

    @property
    def red_edge(self) -> tuple[int, int]:
        return (self.x2, self.x3)


def is_blue_path(g: ColoredGraph, seq: Sequence[int]) -> bool:
    if not seq or len(set(seq)) != len(seq):
        return False
    return all(g.color(a, b) is BLUE for a, b in zip(seq, seq[1:]))


def red_tail(g: ColoredGraph, x: int) -> int:
    """Edge count of the longest red path with end x."""
    return g.longest_path_from(x, RED) - 1


def _blue_orderings(g: ColoredGraph, vs: Sequence[int]) -> list[tuple[int, ...]]:
    """All Hamiltonian blue paths on ``vs``, each listed once (smaller end first)."""
    if len(vs) == 1:
        return [tuple(vs)]
    vset = set(vs)
    adj = {v: g.neighbors(v, BLUE) & vset for v in vs}
    n_edges = sum(len(a) for a in adj.values()) // 2
    degs = sorted(len(a) for a in adj.values())
    if n_edges == len(vs) - 1 and degs[-1] <= 2 and degs[:2] == [1, 1]:
        start = min(v for v in vs if len(adj[v]) == 1)
        order, prev = [start], None
        while len(order) < len(vs):
            nxt = [w for w in adj[order[-1]] if w != prev]
            if not nxt:
                return []
            prev = order[-1]
            order.append(nxt[0])
        return [tuple(order)]
    if len(vs) > HAMILTON_SEARCH_LIMIT:
        return []
    out = []
    for perm in permutations(sorted(vs)):
        if perm[0] < perm[-1] and is_blue_path(g, perm):
            out.append(perm)
    return out


def _oriented(seq: tuple[int, ...]) -> list[tuple[int, ...]]:
    return [seq] if len(seq) == 1 else [seq, seq[::-1]]


def certify_11_path(g: ColoredGraph, vertices: Iterable[int]) -> Union[BluePathCert, CertFailure]:
    vs = list(dict.fromkeys(vertices))
    if not vs:
        return CertFailure("empty vertex set")
    if is_blue_path(g, vs):
        candidates = [tuple(vs)] + [o for o in _blue_orderings(g, vs) if o != tuple(vs)]
    else:
        candidates = _blue_orderings(g, vs)
    if not candidates:
        return CertFailure("vertices do not span a blue path")
    good = []
    for seq in candidates:
        l1, l2 = red_tail(g, seq[0]), red_tail(g, seq[-1])
        if l1 >= 1 and l2 >= 1:
            good.append((tuple(sorted((seq[0], seq[-1]))), seq, (l1, l2)))
    if not good:
        return CertFailure("an end of the blue path has no red edge")
    good.sort()
    _, seq, lens = good[0]
    if seq[0] > seq[-1]:
        seq, lens = seq[::-1], lens[::-1]
    return BluePathCert(seq, lens)


def certify_extended20(g: ColoredGraph, vertices: Iterable[int]) -> Union[ExtendedPathCert, CertFailure]:
    vs = list(dict.fromkeys(vertices))
    if len(vs) < 3:
        return CertFailure("an extended (2,0)-path has at least three vertices")
    found = []
    for red_end in vs:
        rest = [v for v in vs if v != red_end]
        for seq in _blue_orderings(g, rest):
            for blue in _oriented(seq):
                w = blue[-1]
                if g.color(w, red_end) is RED and red_tail(g, w) >= 2:
                    found.append((blue[0], w, red_end, blue))
    if not found:
        return CertFailure("no blue (2,0)-path with a red edge at its 2-end")
    found.sort()
    b, w, r, blue = found[0]
    return ExtendedPathCert(b, w, r, blue)


def limb_at(g: ColoredGraph, comp: set[int]) -> Optional[LimbCert]:
    if len(comp) != 5:
        return None
    blue = [(u, v) for u in comp for v in g.neighbors(u, BLUE) if u < v]
    red = [(u, v) for u in comp for v in g.neighbors(u, RED) if u < v]
    if len(blue) != 3 or len(red) != 1:
        return None
    bdeg = {v: g.degree(v, BLUE) for v in comp}
    for x2, x3 in (red[0], red[0][::-1]):
        if bdeg[x2] != 2 or bdeg[x3] != 1:
            continue
        (x4,) = g.neighbors(x3, BLUE)
        if bdeg[x4] != 1 or g.degree(x4, RED):
            continue
        x1, x5 = sorted(g.neighbors(x2, BLUE))
        if bdeg[x1] == 1 and bdeg[x5] == 1 and not g.degree(x1, RED) and not g.degree(x5, RED):
            return LimbCert(x1, x2, x3, x4, x5)
    return None


def find_limb(g: ColoredGraph) -> list[LimbCert]:
    out = []
    seen: set[int] = set()
    for v in sorted(g.vertices()):
        if v in seen:
            continue
        comp = g.colored_component(v)
        seen |= comp
        cert = limb_at(g, comp)
        if cert is not None:
            out.append(cert)
    return out


def check_limb(g: ColoredGraph, cert: LimbCert) -> Optional[str]:
    """None if ``cert`` is a limb forming a whole component of ``g``."""
    comp = g.colored_component(cert.x1)
    if comp != set(cert.vertices):
        return "limb is not a whole component"
    for a, b in cert.blue_edges:
        if g.color(a, b) is not BLUE:
            return f"limb edge {a}-{b} is not blue"
    if g.color(*cert.red_edge) is not RED:
        return "limb red edge missing"
    if sum(g.degree(v) for v in comp) != 8:
        return "limb component has extra edges"
    return None
