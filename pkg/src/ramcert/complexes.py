"""Finite graphs, simplicial complexes and the named builders.

Complexes keep their vertex labels in ``vertices`` and store facets as
bitmasks over vertex *positions* (``1 << index``).  Python integers are
unbounded, so the same encoding serves every size.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations
from pathlib import Path
from typing import Hashable, Iterable, Sequence


class InvalidInput(ValueError):
    """Raised when a builder or query receives arguments outside its domain."""


def iter_bits(mask: int):
    """Yield the positions of the set bits of ``mask`` in increasing order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def bits_to_mask(indices: Iterable[int]) -> int:
    mask = 0
    for i in indices:
        mask |= 1 << i
    return mask


@dataclass(frozen=True)
class Graph:
    """Simple undirected graph on ``range(n)``."""

    n: int
    edges: frozenset = field(default_factory=frozenset)

    def __post_init__(self):
        if self.n < 0:
            raise InvalidInput("vertex count must be nonnegative")
        normalized = set()
        for e in self.edges:
            u, v = tuple(e)
            if u == v:
                raise InvalidInput(f"self-loop at {u}")
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise InvalidInput(f"edge {(u, v)} out of range for n={self.n}")
            normalized.add((min(u, v), max(u, v)))
        object.__setattr__(self, "edges", frozenset(normalized))

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[Sequence[int]]) -> Graph:
        edge_list = [tuple(e) for e in edges]
        seen = set()
        for u, v in edge_list:
            key = (min(u, v), max(u, v))
            if key in seen:
                raise InvalidInput(f"duplicate edge {key}")
            seen.add(key)
        return cls(n, frozenset(edge_list))

    @cached_property
    def adjacency(self) -> tuple[int, ...]:
        """Neighbourhood bitmask per vertex."""
        adj = [0] * self.n
        for u, v in self.edges:
            adj[u] |= 1 << v
            adj[v] |= 1 << u
        return tuple(adj)

    def degree(self, v: int) -> int:
        return self.adjacency[v].bit_count()

    def sorted_edges(self) -> list[tuple[int, int]]:
        return sorted(self.edges)

    def to_json(self) -> dict:
        return {"n": self.n, "edges": [list(e) for e in self.sorted_edges()]}

    @classmethod
    def from_json(cls, data: dict) -> Graph:
        try:
            return cls.from_edges(int(data["n"]), data.get("edges", []))
        except (KeyError, TypeError) as exc:
            raise InvalidInput(f"malformed graph JSON: {exc}") from exc


def complete_graph(n: int) -> Graph:
    return Graph(n, frozenset(combinations(range(n), 2)))


def cycle_graph(n: int) -> Graph:
    if n < 3:
        raise InvalidInput("a cycle needs at least 3 vertices")
    return Graph(n, frozenset((i, (i + 1) % n) for i in range(n)))


def path_graph(n: int) -> Graph:
    """Path on ``n`` vertices (``n - 1`` edges); ``path_graph(3)`` is P_3."""
    return Graph(n, frozenset((i, i + 1) for i in range(n - 1)))


def empty_graph(n: int) -> Graph:
    return Graph(n)


def kn_edges(N: int) -> list[tuple[int, int]]:
    """Edges of K_N in the canonical order: lexicographic pairs ``u < v``."""
    return list(combinations(range(N), 2))


def kn_edge_index(N: int) -> dict[tuple[int, int], int]:
    return {e: i for i, e in enumerate(kn_edges(N))}


def _antichain(masks: Iterable[int]) -> list[int]:
    # larger sets first so containment only needs a backward scan
    ordered = sorted(set(masks), key=lambda m: (-m.bit_count(), m))
    kept: list[int] = []
    for m in ordered:
        if not any(m & ~f == 0 for f in kept):
            kept.append(m)
    return sorted(kept)


class SimplicialComplex:
    """Abstract simplicial complex given by its facets.

    ``vertices`` are arbitrary hashable labels; faces and facets are handled
    as bitmasks over label positions.  Every vertex must lie in some facet.
    The empty set is a face whenever the vertex set is nonempty.
    """

    __slots__ = ("vertices", "facets", "_index", "_face_table", "_facets_by_vertex")

    def __init__(self, vertices: Sequence[Hashable], facets: Iterable[Iterable[Hashable]]):
        self.vertices: tuple = tuple(vertices)
        if len(set(self.vertices)) != len(self.vertices):
            raise InvalidInput("duplicate vertex labels")
        self._index = {v: i for i, v in enumerate(self.vertices)}
        masks = []
        for facet in facets:
            try:
                masks.append(bits_to_mask(self._index[v] for v in facet))
            except KeyError as exc:
                raise InvalidInput(f"facet vertex {exc.args[0]!r} not in vertex set") from None
        masks = [m for m in masks if m]
        self.facets: tuple[int, ...] = tuple(_antichain(masks))
        covered = 0
        for f in self.facets:
            covered |= f
        if covered != self.full_mask:
            missing = [self.vertices[i] for i in iter_bits(self.full_mask & ~covered)]
            raise InvalidInput(f"vertices {missing} lie in no facet")
        self._face_table = None
        self._facets_by_vertex = None

    @classmethod
    def from_masks(cls, vertices: Sequence[Hashable], facet_masks: Iterable[int]) -> SimplicialComplex:
        obj = cls.__new__(cls)
        obj.vertices = tuple(vertices)
        obj._index = {v: i for i, v in enumerate(obj.vertices)}
        obj.facets = tuple(_antichain(m for m in facet_masks if m))
        obj._face_table = None
        obj._facets_by_vertex = None
        return obj

    @property
    def n_vertices(self) -> int:
        return len(self.vertices)

    @property
    def full_mask(self) -> int:
        return (1 << len(self.vertices)) - 1

    def index(self, label: Hashable) -> int:
        return self._index[label]

    def mask_of(self, labels: Iterable[Hashable]) -> int:
        mask = 0
        for v in labels:
            if v not in self._index:
                raise InvalidInput(f"{v!r} is not a vertex")
            mask |= 1 << self._index[v]
        return mask

    def labels_of(self, mask: int) -> tuple:
        return tuple(self.vertices[i] for i in iter_bits(mask))

    def is_face_mask(self, mask: int) -> bool:
        if not self.vertices:
            return False
        table = self._face_table
        if table is None and len(self.vertices) <= 16:
            table = self._face_table = self._build_face_table()
        if table is not None:
            return bool(table[mask])
        return mask == 0 or any(mask & ~f == 0 for f in self.facets)

    def _build_face_table(self) -> bytearray:
        table = bytearray(1 << len(self.vertices))
        for f in self.facets:
            sub = f
            while True:
                table[sub] = 1
                if sub == 0:
                    break
                sub = (sub - 1) & f
        return table

    @property
    def facets_by_vertex(self) -> tuple[tuple[int, ...], ...]:
        if self._facets_by_vertex is None:
            self._facets_by_vertex = tuple(
                tuple(f for f in self.facets if f >> v & 1) for v in range(len(self.vertices))
            )
        return self._facets_by_vertex

    def faces(self) -> set[int]:
        """All faces as bitmasks, including the empty face."""
        out = {0} if self.vertices else set()
        for f in self.facets:
            sub = f
            while sub:
                out.add(sub)
                sub = (sub - 1) & f
        return out

    def f_vector(self) -> tuple[int, ...]:
        counts: dict[int, int] = {}
        for face in self.faces():
            if face:
                d = face.bit_count() - 1
                counts[d] = counts.get(d, 0) + 1
        return tuple(counts.get(d, 0) for d in range(max(counts, default=-1) + 1))

    def facet_labels(self) -> list[tuple]:
        return [self.labels_of(f) for f in self.facets]

    def same_faces(self, other: SimplicialComplex) -> bool:
        if set(self.vertices) != set(other.vertices):
            return False
        mine = {frozenset(self.labels_of(f)) for f in self.faces()}
        theirs = {frozenset(other.labels_of(f)) for f in other.faces()}
        return mine == theirs

    def __eq__(self, other):
        if not isinstance(other, SimplicialComplex):
            return NotImplemented
        return self.same_faces(other)

    def __hash__(self):
        return hash(frozenset(frozenset(self.labels_of(f)) for f in self.facets))

    def __repr__(self):
        return f"SimplicialComplex(vertices={list(self.vertices)}, facets={self.facet_labels()})"

    def to_json(self) -> dict:
        def enc(v):
            return list(v) if isinstance(v, tuple) else v

        return {
            "vertices": [enc(v) for v in self.vertices],
            "facets": [[enc(v) for v in self.labels_of(f)] for f in self.facets],
        }

    @classmethod
    def from_json(cls, data: dict) -> SimplicialComplex:
        def dec(v):
            return tuple(v) if isinstance(v, list) else v

        try:
            vertices = [dec(v) for v in data["vertices"]]
            facets = [[dec(v) for v in f] for f in data["facets"]]
        except (KeyError, TypeError) as exc:
            raise InvalidInput(f"malformed complex JSON: {exc}") from exc
        return cls(vertices, facets)


def is_face(c: SimplicialComplex, s: Iterable[Hashable]) -> bool:
    """True iff the label set ``s`` is a face of ``c``."""
    return c.is_face_mask(c.mask_of(s))


def _positive(name: str, value: int) -> None:
    if not isinstance(value, int) or value < 1:
        raise InvalidInput(f"{name} must be a positive integer, got {value!r}")


def simplex_complex(m: int) -> SimplicialComplex:
    """The full simplex on ``{1..m}``."""
    _positive("m", m)
    return SimplicialComplex(range(1, m + 1), [range(1, m + 1)])


def boundary_simplex(m: int) -> SimplicialComplex:
    """Boundary of the simplex on ``{1..m}``; void (no vertices) for m = 1."""
    _positive("m", m)
    if m == 1:
        return SimplicialComplex([], [])
    labels = range(1, m + 1)
    return SimplicialComplex(labels, combinations(labels, m - 1))


def discrete_complex(n: int) -> SimplicialComplex:
    """``n`` isolated vertices ``1..n``."""
    _positive("n", n)
    return SimplicialComplex(range(1, n + 1), [[i] for i in range(1, n + 1)])


def _maximal_independent_sets(g: Graph) -> list[int]:
    adj = g.adjacency
    out: list[int] = []

    # Bron-Kerbosch on the complement graph
    def expand(r: int, p: int, x: int):
        if not p and not x:
            out.append(r)
            return
        pivot_pool = p | x
        u = max(iter_bits(pivot_pool), key=lambda w: (p & ~adj[w] & ~(1 << w)).bit_count())
        for v in list(iter_bits(p & (adj[u] | (1 << u)))):
            non_nbrs = ~adj[v] & ~(1 << v)
            expand(r | (1 << v), p & non_nbrs, x & non_nbrs)
            p &= ~(1 << v)
            x |= 1 << v

    if g.n:
        expand(0, (1 << g.n) - 1, 0)
    return out


def independence_complex(g: Graph) -> SimplicialComplex:
    """Faces are the independent vertex sets of ``g``."""
    return SimplicialComplex.from_masks(range(g.n), _maximal_independent_sets(g))


def g_free_edge_complex(g: Graph, N: int) -> SimplicialComplex:
    """Complex on the edges of K_N whose faces are the edge sets containing no copy of ``g``.

    Vertex ``i`` is the ``i``-th edge of K_N in lexicographic order; its label is
    the pair ``(u, v)``.
    """
    from .oracles import contains_subgraph

    if not g.edges:
        raise InvalidInput("pattern graph must have at least one edge")
    if not isinstance(N, int) or N < 2:
        raise InvalidInput("N must be an integer >= 2")
    edges = kn_edges(N)
    n_edges = len(edges)
    facets: list[int] = []

    # faces are downward closed: grow by increasing edge index, stop at the first copy of g
    def grow(mask: int, chosen: list, start: int):
        extended = False
        for e in range(start, n_edges):
            chosen.append(edges[e])
            if not contains_subgraph(chosen, g):
                extended = True
                grow(mask | (1 << e), chosen, e + 1)
            chosen.pop()
        if not extended:
            facets.append(mask)

    grow(0, [], 0)
    return SimplicialComplex.from_masks(edges, facets)


def load_json(path: str | Path) -> dict:
    text = Path(path).read_text()
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InvalidInput(f"{path}: line {exc.lineno} column {exc.colno}: {exc.msg}") from exc
