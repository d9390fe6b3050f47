"""Brute-force ground truth used to cross-check certificates.

Every oracle refuses (raises :class:`OracleRefused`) past its cap instead of
guessing.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

from .complexes import Graph, SimplicialComplex, kn_edges

FACE_COLORING_CAP = 16
CHROMATIC_CAP = 12
SUBGRAPH_HOST_CAP = 64
RAMSEY_EDGE_CAP = 21  # K_7


class OracleRefused(RuntimeError):
    pass


@dataclass(frozen=True)
class ColoringWitness:
    """Vertex label -> color in ``1..n``; every color class is a face."""

    assignment: dict

    def fibers(self, n: int) -> list[list]:
        classes: list[list] = [[] for _ in range(n)]
        for v, c in self.assignment.items():
            classes[c - 1].append(v)
        return classes


def exists_face_coloring(sigma: SimplicialComplex, n: int, cap: int = FACE_COLORING_CAP) -> Optional[ColoringWitness]:
    """Search for a map ``vertices -> {1..n}`` whose fibers are all faces."""
    if sigma.n_vertices > cap:
        raise OracleRefused(f"{sigma.n_vertices} vertices exceeds face-coloring cap {cap}")
    if n < 1:
        return None
    nv = sigma.n_vertices
    fibers = [0] * n
    colors = [0] * nv

    def place(v: int) -> bool:
        if v == nv:
            return True
        bit = 1 << v
        seen_empty = False
        for c in range(n):
            # empty fibers are interchangeable; trying one is enough
            if fibers[c] == 0:
                if seen_empty:
                    continue
                seen_empty = True
            candidate = fibers[c] | bit
            if sigma.is_face_mask(candidate):
                fibers[c] = candidate
                colors[v] = c
                if place(v + 1):
                    return True
                fibers[c] ^= bit
        return False

    if not place(0):
        return None
    return ColoringWitness({sigma.vertices[v]: colors[v] + 1 for v in range(nv)})


def contains_subgraph(h_edges: Iterable[Sequence[int]], g: Graph) -> bool:
    """Does the graph spanned by ``h_edges`` contain a copy of ``g`` (not necessarily induced)?

    Host vertices are the endpoints of ``h_edges``.  Backtracking embedding of
    ``g``'s vertices (highest degree first) with degree pruning.
    """
    host_adj: dict = {}
    n_host_edges = 0
    for u, v in h_edges:
        if u == v:
            continue
        nu = host_adj.setdefault(u, set())
        if v not in nu:
            n_host_edges += 1
        nu.add(v)
        host_adj.setdefault(v, set()).add(u)
    if len(host_adj) > SUBGRAPH_HOST_CAP:
        raise OracleRefused(f"host graph has {len(host_adj)} vertices, cap {SUBGRAPH_HOST_CAP}")
    if len(g.edges) > n_host_edges or g.n > len(host_adj):
        return False
    if not g.edges:
        return True

    g_adj = [set() for _ in range(g.n)]
    for u, v in g.edges:
        g_adj[u].add(v)
        g_adj[v].add(u)
    # BFS-ish order: each later vertex has as many placed neighbours as possible
    order: list[int] = []
    remaining = set(range(g.n))
    while remaining:
        best = max(
            remaining,
            key=lambda w: (sum(1 for x in g_adj[w] if x in order), len(g_adj[w]), -w),
        )
        order.append(best)
        remaining.discard(best)

    hosts = sorted(host_adj)
    host_deg = {x: len(host_adj[x]) for x in hosts}
    image: dict[int, int] = {}
    used: set = set()

    def extend(k: int) -> bool:
        if k == len(order):
            return True
        u = order[k]
        need = len(g_adj[u])
        placed_nbrs = [image[w] for w in g_adj[u] if w in image]
        if placed_nbrs:
            candidates = set(host_adj[placed_nbrs[0]])
            for x in placed_nbrs[1:]:
                candidates &= host_adj[x]
        else:
            candidates = hosts
        for x in sorted(candidates):
            if x in used or host_deg[x] < need:
                continue
            image[u] = x
            used.add(x)
            if extend(k + 1):
                return True
            used.discard(x)
            del image[u]
        return False

    return extend(0)


def brute_ramsey_holds(g: Graph, n: int, N: int) -> bool:
    """True iff every ``n``-coloring of E(K_N) has a one-colored copy of ``g``.

    Depth-first over edge colorings in the canonical edge order, pruning any
    branch whose partial color class already contains ``g``.  The first
    edge's color is fixed (colors are interchangeable).
    """
    if not g.edges:
        raise ValueError("pattern graph must have edges")
    if n < 1:
        raise ValueError("need at least one color")
    edges = kn_edges(N) if N >= 2 else []
    if len(edges) > RAMSEY_EDGE_CAP:
        raise OracleRefused(f"K_{N} has {len(edges)} edges, cap {RAMSEY_EDGE_CAP}")
    if not edges:
        return False
    classes: list[list] = [[] for _ in range(n)]

    def avoid(k: int) -> bool:
        # True iff some completion avoids monochromatic g
        if k == len(edges):
            return True
        limit = 1 if k == 0 else n
        for c in range(limit):
            classes[c].append(edges[k])
            ok = not contains_subgraph(classes[c], g) and avoid(k + 1)
            classes[c].pop()
            if ok:
                return True
        return False

    return not avoid(0)


def is_proper_coloring(g: Graph, colors: Sequence[int]) -> bool:
    return all(colors[u] != colors[v] for u, v in g.edges)


def chromatic_number(g: Graph) -> int:
    if g.n > CHROMATIC_CAP:
        raise OracleRefused(f"{g.n} vertices exceeds chromatic cap {CHROMATIC_CAP}")
    if g.n == 0:
        return 0
    adj = g.adjacency

    def colorable(k: int) -> bool:
        colors = [-1] * g.n

        def place(v: int, used: int) -> bool:
            if v == g.n:
                return True
            # symmetry: a vertex may open at most one new color
            for c in range(min(k, used + 1)):
                if all(colors[w] != c for w in range(v) if adj[v] >> w & 1):
                    colors[v] = c
                    if place(v + 1, max(used, c + 1)):
                        return True
            colors[v] = -1
            return False

        return place(0, 0)

    k = 1
    while not colorable(k):
        k += 1
    return k


def naive_contains_subgraph(h_edges: Iterable[Sequence[int]], g: Graph) -> bool:
    """All-injections matcher; reference for :func:`contains_subgraph` on tiny graphs."""
    from itertools import permutations

    host = {(min(u, v), max(u, v)) for u, v in h_edges if u != v}
    verts = sorted({x for e in host for x in e})
    for image in permutations(verts, g.n):
        if all((min(image[u], image[v]), max(image[u], image[v])) in host for u, v in g.edges):
            return True
    return False


__all__ = [
    "ColoringWitness",
    "OracleRefused",
    "brute_ramsey_holds",
    "chromatic_number",
    "contains_subgraph",
    "exists_face_coloring",
    "is_proper_coloring",
    "naive_contains_subgraph",
]
