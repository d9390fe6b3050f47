"""Cells of products of simplices and the Ramsey-type complexes built from them.

Conventions
-----------
* A vertex of ``prod_{i in I} Delta_V`` is a *vertex map*: a tuple ``eta`` with
  ``eta[i]`` the position (0-based) of a vertex of the target complex.
* A cell is a tuple of nonzero bitmasks, ``cell[i]`` encoding the part
  ``nu(i)`` over target positions.  Its dimension is
  ``sum(popcount(part) - 1)``.  A vertex map ``eta`` corresponds to the cell
  ``tuple(1 << x for x in eta)``.
* Coordinates of the product are the positions of the source complex's
  vertices.  For ``boundary_simplex(m)`` coordinate ``i`` is the label ``i + 1``.
"""

from __future__ import annotations

import os
import time
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from typing import Callable, Iterable, Iterator, Optional, Sequence

from .complexes import (
    Graph,
    InvalidInput,
    SimplicialComplex,
    bits_to_mask,
    boundary_simplex,
    discrete_complex,
    g_free_edge_complex,
    independence_complex,
    iter_bits,
    kn_edges,
)
from .oracles import contains_subgraph

Cell = tuple[int, ...]
VertexMap = tuple[int, ...]

DEFAULT_MAX_CELLS = 2_000_000
MAX_GROUP_ARITY = 64


def default_max_cells() -> int:
    raw = os.environ.get("RAMCERT_BUDGET_CELLS")
    return int(raw) if raw else DEFAULT_MAX_CELLS


class BudgetExhausted(RuntimeError):
    """Enumeration stopped by a resource cap; ``stats`` holds the partial counts."""

    def __init__(self, message: str, stats: dict):
        super().__init__(message)
        self.stats = stats


@dataclass
class Budget:
    max_cells: int = field(default_factory=default_max_cells)
    time_limit: Optional[float] = None  # seconds
    _started: float = field(default=0.0, repr=False)

    def start(self) -> "Budget":
        self._started = time.monotonic()
        return self

    def check(self, n_cells: int, stats_fn: Callable[[], dict]) -> None:
        if n_cells > self.max_cells:
            raise BudgetExhausted(f"cell budget {self.max_cells} exhausted", stats_fn())
        if self.time_limit is not None and time.monotonic() - self._started > self.time_limit:
            raise BudgetExhausted(f"time budget {self.time_limit}s exhausted", stats_fn())


def cell_dim(cell: Cell) -> int:
    return sum(part.bit_count() for part in cell) - len(cell)


def make_cell(parts: Iterable[Iterable[int]]) -> Cell:
    cell = tuple(bits_to_mask(p) for p in parts)
    if any(part == 0 for part in cell):
        raise InvalidInput("every part of a product cell must be nonempty")
    return cell


def cell_parts(cell: Cell) -> tuple[tuple[int, ...], ...]:
    return tuple(tuple(iter_bits(part)) for part in cell)


def vertex_cell(eta: VertexMap) -> Cell:
    return tuple(1 << x for x in eta)


def selections(cell: Cell) -> Iterator[VertexMap]:
    """Every vertex map ``eta`` with ``eta[i]`` in ``cell[i]``."""
    return product(*(tuple(iter_bits(part)) for part in cell))


def _check_arity(n_coords: int, sigma1: SimplicialComplex, sigma2: SimplicialComplex, targets: Iterable[int]):
    if n_coords != sigma1.n_vertices:
        raise InvalidInput(f"map has {n_coords} coordinates, source complex has {sigma1.n_vertices} vertices")
    bound = 1 << sigma2.n_vertices
    for t in targets:
        if t >= bound:
            raise InvalidInput("map uses a vertex outside the target complex")


def ram_vertex_test(eta: VertexMap, sigma1: SimplicialComplex, sigma2: SimplicialComplex) -> bool:
    """Is ``eta`` a vertex of Ram(sigma1, sigma2): every facet pulls back to a face of sigma1?"""
    _check_arity(len(eta), sigma1, sigma2, (1 << x for x in eta))
    for facet in sigma2.facets:
        preimage = 0
        for i, x in enumerate(eta):
            if facet >> x & 1:
                preimage |= 1 << i
        if not sigma1.is_face_mask(preimage):
            return False
    return True


def cell_in_induced_brute(cell: Cell, accepts: Callable[[VertexMap], bool]) -> bool:
    """Reference membership test for induced subcomplexes: try every selection."""
    return all(accepts(eta) for eta in selections(cell))


def ram_cell_test(cell: Cell, sigma1: SimplicialComplex, sigma2: SimplicialComplex) -> bool:
    """Facet form of induced membership in Ram(sigma1, sigma2).

    For each facet ``sigma`` of sigma2, the coordinates whose part meets
    ``sigma`` must form a face of sigma1.
    """
    _check_arity(len(cell), sigma1, sigma2, cell)
    for facet in sigma2.facets:
        hit = 0
        for i, part in enumerate(cell):
            if part & facet:
                hit |= 1 << i
        if not sigma1.is_face_mask(hit):
            return False
    return True


@dataclass
class Skeleton:
    """Cells of a subcomplex of ``prod_{i < arity} Delta_{n_targets}``, grouped by dimension.

    ``cells[d]`` is sorted in canonical order (lexicographic on the mask tuple).
    ``complete`` records whether the complex has no cells above ``max_dim``.
    """

    arity: int
    n_targets: int
    cells: list[list[Cell]]
    max_dim: int
    complete: bool
    stats: dict = field(default_factory=dict)
    _index: dict = field(default_factory=dict, repr=False)

    @property
    def dims(self) -> list[int]:
        return [len(level) for level in self.cells]

    @property
    def empty(self) -> bool:
        return not self.cells or not self.cells[0]

    def index(self, d: int) -> dict[Cell, int]:
        if d not in self._index:
            self._index[d] = {c: i for i, c in enumerate(self.cells[d])}
        return self._index[d]

    def all_cells(self) -> Iterator[Cell]:
        for level in self.cells:
            yield from level

    def cell_set(self) -> set[Cell]:
        return set(self.all_cells())

    def vertex_maps(self) -> list[VertexMap]:
        return [tuple(p.bit_length() - 1 for p in c) for c in self.cells[0]] if self.cells else []

    def to_json(self) -> dict:
        return {
            "dims": self.dims,
            "cells": {str(d): [[list(p) for p in cell_parts(c)] for c in level] for d, level in enumerate(self.cells)},
            "arity": self.arity,
            "targets": self.n_targets,
            "max_dim": self.max_dim,
            "complete": self.complete,
        }

    @classmethod
    def from_json(cls, data: dict) -> "Skeleton":
        try:
            raw = data["cells"]
            depth = max((int(d) for d in raw), default=-1)
            levels = [sorted(make_cell(parts) for parts in raw.get(str(d), [])) for d in range(depth + 1)]
        except (KeyError, TypeError, ValueError) as exc:
            raise InvalidInput(f"malformed skeleton JSON: {exc}") from exc
        for d, level in enumerate(levels):
            if any(cell_dim(c) != d for c in level):
                raise InvalidInput(f"skeleton JSON lists a cell of the wrong dimension under {d}")
        arity = data.get("arity")
        if arity is None:
            arity = len(levels[0][0]) if levels and levels[0] else 0
        n_targets = data.get("targets")
        if n_targets is None:
            n_targets = max((p.bit_length() for c in (levels[0] if levels else []) for p in c), default=0)
        return cls(
            arity=arity,
            n_targets=n_targets,
            cells=levels,
            max_dim=int(data.get("max_dim", depth)),
            complete=bool(data.get("complete", False)),
        )


def _grow(
    arity: int,
    n_targets: int,
    vertices: Iterable[VertexMap],
    accepts_extension: Callable[[Cell, int, int], bool],
    max_dim: int,
    budget: Optional[Budget],
    label: str,
) -> Skeleton:
    """Breadth-first growth of an induced subcomplex from its vertices.

    A cell of positive dimension is generated exactly once, from the parent
    obtained by deleting the largest element of its last non-singleton part.
    ``accepts_extension(new_cell, i, v)`` decides membership of ``new_cell``
    given that its parent (``new_cell`` without ``v`` in part ``i``) is a member.
    """
    if max_dim < 0:
        raise InvalidInput("max_dim must be >= 0")
    if budget is None:
        budget = Budget()
    if not budget._started:
        budget.start()
    t0 = time.monotonic()
    levels: list[list[Cell]] = []
    total = 0
    level: list[Cell] = []
    nxt = level

    def stats():
        # the last entry is the level under construction when a budget trips
        dims = [len(lv) for lv in levels]
        if nxt is not None and (not levels or nxt is not levels[-1]):
            dims.append(len(nxt))
        return {"complex": label, "dims": dims, "seconds": round(time.monotonic() - t0, 3)}

    for eta in vertices:
        level.append(vertex_cell(eta))
        total += 1
        if total % 4096 == 0:
            budget.check(total, stats)
    budget.check(total, stats)
    level.sort()
    levels.append(level)

    def children(cell: Cell) -> Iterator[tuple[Cell, int, int]]:
        last = 0
        for i in range(arity - 1, -1, -1):
            if cell[i] & (cell[i] - 1):
                last = i
                break
        for i in range(last, arity):
            part = cell[i]
            for v in range(part.bit_length(), n_targets):
                yield cell[:i] + (part | (1 << v),) + cell[i + 1 :], i, v

    for _d in range(1, max_dim + 1):
        nxt = []
        for cell in level:
            for child, i, v in children(cell):
                if accepts_extension(child, i, v):
                    nxt.append(child)
                    total += 1
                    if total % 4096 == 0:
                        budget.check(total, stats)
        budget.check(total, stats)
        nxt.sort()
        levels.append(nxt)
        level = nxt
        if not nxt:
            break

    if level:
        complete = not any(accepts_extension(ch, i, v) for cell in level for ch, i, v in children(cell))
    else:
        complete = True
    while len(levels) < max_dim + 1:
        levels.append([])
    skel = Skeleton(arity=arity, n_targets=n_targets, cells=levels, max_dim=max_dim, complete=complete)
    skel.stats = {"complex": label, "dims": skel.dims, "seconds": round(time.monotonic() - t0, 3), "complete": complete}
    return skel


def ram_vertices(sigma1: SimplicialComplex, sigma2: SimplicialComplex) -> Iterator[VertexMap]:
    """Vertices of Ram(sigma1, sigma2) in lexicographic order.

    Maps are assigned coordinate by coordinate; a partial map is abandoned as
    soon as some facet of sigma2 containing the newest value pulls back to a
    non-face (preimages only grow, and sigma1 is downward closed).
    """
    m = sigma1.n_vertices
    nt = sigma2.n_vertices
    by_vertex = sigma2.facets_by_vertex
    face = sigma1.is_face_mask
    eta = [0] * m
    # preimage[f] for each facet index, maintained incrementally
    facet_pos = {f: k for k, f in enumerate(sigma2.facets)}
    pre = [0] * len(sigma2.facets)

    def assign(i: int) -> Iterator[VertexMap]:
        if i == m:
            yield tuple(eta)
            return
        bit = 1 << i
        for x in range(nt):
            touched = [facet_pos[f] for f in by_vertex[x]]
            ok = True
            for k in touched:
                pre[k] |= bit
                if not face(pre[k]):
                    ok = False
            if ok:
                eta[i] = x
                yield from assign(i + 1)
            for k in touched:
                pre[k] &= ~bit

    if m == 0:
        return iter(())
    return assign(0)


def enumerate_skeleton(
    sigma1: SimplicialComplex,
    sigma2: SimplicialComplex,
    max_dim: int,
    budget: Optional[Budget] = None,
) -> Skeleton:
    """All cells of Ram(sigma1, sigma2) of dimension at most ``max_dim``."""
    face = sigma1.is_face_mask
    by_vertex = sigma2.facets_by_vertex

    def accepts(cell: Cell, i: int, v: int) -> bool:
        # only facets containing the new value v can change their hit set
        for facet in by_vertex[v]:
            hit = 0
            for j, part in enumerate(cell):
                if part & facet:
                    hit |= 1 << j
            if not face(hit):
                return False
        return True

    return _grow(
        sigma1.n_vertices,
        sigma2.n_vertices,
        ram_vertices(sigma1, sigma2),
        accepts,
        max_dim,
        budget,
        "ram",
    )


def hom_complex(g1: Graph, g2: Graph, max_dim: int, budget: Optional[Budget] = None) -> Skeleton:
    """Hom(g1, g2) as Ram(Ind(g1), Ind(g2)); vertices are graph homomorphisms."""
    if g1.n == 0:
        raise InvalidInput("first graph must have a vertex")
    skel = enumerate_skeleton(independence_complex(g1), independence_complex(g2), max_dim, budget)
    skel.stats["complex"] = "hom"
    return skel


def part_complex(sigma: SimplicialComplex, n: int, max_dim: int, budget: Optional[Budget] = None) -> Skeleton:
    skel = enumerate_skeleton(sigma, discrete_complex(n), max_dim, budget)
    skel.stats["complex"] = "part"
    return skel


def rainbow_complex(
    g: Graph,
    N: int,
    m: int,
    max_dim: int,
    budget: Optional[Budget] = None,
    method: str = "direct",
) -> Skeleton:
    """Induced subcomplex of ``prod_{i < m} Delta_{E(K_N)}`` on maps whose edge image contains ``g``.

    ``method="direct"`` tests every selection of a candidate cell for a copy of
    ``g``; ``method="ram"`` goes through Ram(boundary of Delta_m, Sigma(g; N)).
    """
    if m < 1:
        raise InvalidInput("m must be >= 1")
    if N < 2:
        raise InvalidInput("N must be >= 2")
    if not g.edges:
        raise InvalidInput("pattern graph must have edges")
    if method == "ram":
        skel = enumerate_skeleton(boundary_simplex(m), g_free_edge_complex(g, N), max_dim, budget)
        skel.stats["complex"] = "rainbow"
        return skel
    if method != "direct":
        raise InvalidInput(f"unknown method {method!r}")

    edges = kn_edges(N)
    memo: dict[int, bool] = {}

    def image_has_g(eta: VertexMap) -> bool:
        image = bits_to_mask(eta)
        hit = memo.get(image)
        if hit is None:
            hit = memo[image] = contains_subgraph([edges[e] for e in iter_bits(image)], g)
        return hit

    if m < len(g.edges):
        # m edges can never hold a copy of g
        return _grow(m, len(edges), (), lambda *_: False, max_dim, budget, "rainbow")
    return induced_complex(m, len(edges), image_has_g, max_dim, budget, "rainbow")


def induced_complex(
    arity: int,
    n_targets: int,
    accepts: Callable[[VertexMap], bool],
    max_dim: int,
    budget: Optional[Budget] = None,
    label: str = "induced",
) -> Skeleton:
    """Induced subcomplex of ``prod_{i < arity} Delta_{n_targets}`` on the vertex maps ``accepts`` admits.

    Membership is decided selection by selection, straight from the
    definition; only selections through the newly added value are retested.
    """

    def extension_ok(cell: Cell, i: int, v: int) -> bool:
        others = [(v,) if j == i else tuple(iter_bits(p)) for j, p in enumerate(cell)]
        return all(accepts(eta) for eta in product(*others))

    vertices = (eta for eta in product(range(n_targets), repeat=arity) if accepts(eta))
    return _grow(arity, n_targets, vertices, extension_ok, max_dim, budget, label)


def compose_vertex_maps(
    eta1: VertexMap,
    eta2: VertexMap,
    sigma1: Optional[SimplicialComplex] = None,
    sigma2: Optional[SimplicialComplex] = None,
    sigma3: Optional[SimplicialComplex] = None,
) -> VertexMap:
    """The composite ``eta2 . eta1``; validated against the complexes when they are given."""
    if any(x >= len(eta2) or x < 0 for x in eta1):
        raise InvalidInput("codomain of the first map is not the domain of the second")
    if sigma1 is not None and sigma2 is not None and not ram_vertex_test(eta1, sigma1, sigma2):
        raise InvalidInput("first map is not a vertex of Ram(sigma1, sigma2)")
    if sigma2 is not None and sigma3 is not None and not ram_vertex_test(eta2, sigma2, sigma3):
        raise InvalidInput("second map is not a vertex of Ram(sigma2, sigma3)")
    return tuple(eta2[x] for x in eta1)


def map_cell(cell: Cell, eta2: VertexMap) -> Cell:
    """Image of a cell under a vertex map applied partwise."""
    out = []
    for part in cell:
        img = 0
        for x in iter_bits(part):
            img |= 1 << eta2[x]
        out.append(img)
    return tuple(out)


def postcompose_map(
    skeleton: Skeleton,
    eta2: VertexMap,
    sigma1: SimplicialComplex,
    sigma3: SimplicialComplex,
    sigma2: Optional[SimplicialComplex] = None,
) -> dict[Cell, Cell]:
    """Cellular map Ram(sigma1, sigma2) -> Ram(sigma1, sigma3) induced by ``eta2``.

    Raises if ``eta2`` is invalid or some image cell falls outside the target.
    """
    if len(eta2) != skeleton.n_targets:
        raise InvalidInput("map domain does not match the skeleton's target vertices")
    if sigma2 is not None and not ram_vertex_test(eta2, sigma2, sigma3):
        raise InvalidInput("map is not a vertex of Ram(sigma2, sigma3)")
    images = {}
    for cell in skeleton.all_cells():
        img = map_cell(cell, eta2)
        if not ram_cell_test(img, sigma1, sigma3):
            raise InvalidInput(f"image of {cell_parts(cell)} is not a cell of the target complex")
        images[cell] = img
    return images


@dataclass(frozen=True)
class GroupAction:
    """A permutation group on coordinates ``0..arity-1``; ``elements[0]`` is the identity."""

    arity: int
    elements: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        identity = tuple(range(self.arity))
        if not self.elements or self.elements[0] != identity:
            raise InvalidInput("first element must be the identity")
        members = set(self.elements)
        if len(members) != len(self.elements):
            raise InvalidInput("duplicate group elements")
        for g in self.elements:
            if sorted(g) != list(identity):
                raise InvalidInput(f"{g} is not a permutation of {self.arity} points")
        for g in self.elements:
            inv = [0] * self.arity
            for i, gi in enumerate(g):
                inv[gi] = i
            if tuple(inv) not in members:
                raise InvalidInput("not closed under inverses")
            for h in self.elements:
                if tuple(g[h[i]] for i in range(self.arity)) not in members:
                    raise InvalidInput("not closed under composition")

    def is_transitive(self) -> bool:
        return {g[0] for g in self.elements} == set(range(self.arity))

    @staticmethod
    def act_on_map(gamma: Sequence[int], eta: Sequence[int]) -> tuple:
        """(gamma, eta) -> eta . gamma."""
        return tuple(eta[gamma[i]] for i in range(len(gamma)))

    act_on_cell = act_on_map


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    d = 2
    while d * d <= p:
        if p % d == 0:
            return False
        d += 1
    return True


def elementary_abelian_action(p: int, k: int, limit: int = MAX_GROUP_ARITY) -> GroupAction:
    """Regular (translation) action of (Z_p)^k on itself, points indexed by base-p digits."""
    if not is_prime(p):
        raise InvalidInput(f"{p} is not prime")
    if k < 1:
        raise InvalidInput("k must be >= 1")
    m = p**k
    if m > limit:
        raise InvalidInput(f"p^k = {m} exceeds the coordinate limit {limit}")

    def digits(x):
        return [(x // p**t) % p for t in range(k)]

    def number(ds):
        return sum(d * p**t for t, d in enumerate(ds))

    elements = []
    for g in range(m):
        gd = digits(g)
        elements.append(tuple(number([(a + b) % p for a, b in zip(digits(x), gd)]) for x in range(m)))
    return GroupAction(m, tuple(elements))


def has_invariant_cell(skeleton: Skeleton, action: GroupAction) -> bool:
    """Is some cell fixed (as a cell) by every group element?"""
    if action.arity != skeleton.arity:
        raise InvalidInput(f"action on {action.arity} points, skeleton has {skeleton.arity} coordinates")
    gens = action.elements[1:]
    for cell in skeleton.all_cells():
        if all(GroupAction.act_on_cell(g, cell) == cell for g in gens):
            return True
    return False


@dataclass(frozen=True)
class RealizedPoint:
    """Point of ``prod_{i < m} Delta_n`` stored as its m x (n-1) free coordinates."""

    coords: tuple[tuple[Fraction, ...], ...]
    n: int

    def __post_init__(self):
        for row in self.coords:
            if len(row) != self.n - 1:
                raise InvalidInput("each row must have n - 1 coordinates")
            if any(x < 0 for x in row) or sum(row) > 1:
                raise InvalidInput("coordinates must be nonnegative with row sums at most 1")

    def smallest_cell(self) -> Cell:
        last = self.n - 1
        cell = []
        for row in self.coords:
            part = bits_to_mask(j for j, x in enumerate(row) if x > 0)
            if sum(row) < 1:
                part |= 1 << last
            cell.append(part)
        return tuple(cell)

    def on_diagonal(self) -> bool:
        return all(row == self.coords[0] for row in self.coords)

    def act(self, gamma: Sequence[int]) -> "RealizedPoint":
        return RealizedPoint(tuple(self.coords[gamma[i]] for i in range(len(gamma))), self.n)


def realize_vertex(eta: VertexMap, n: int) -> RealizedPoint:
    """Indicator realization: ``x[i][j] = 1`` iff ``eta[i] == j``; value ``n - 1`` is the implicit coordinate."""
    if any(not 0 <= x < n for x in eta):
        raise InvalidInput(f"map values must lie in 0..{n - 1}")
    return RealizedPoint(
        tuple(tuple(Fraction(1 if x == j else 0) for j in range(n - 1)) for x in eta),
        n,
    )


def cell_barycenter(cell: Cell, n: int) -> RealizedPoint:
    rows = []
    for part in cell:
        size = part.bit_count()
        rows.append(tuple(Fraction(1, size) if part >> j & 1 else Fraction(0) for j in range(n - 1)))
    return RealizedPoint(tuple(rows), n)


def cell_meets_diagonal(cell: Cell) -> bool:
    """Does the closed cell meet the diagonal (all rows equal)? Iff the parts share a value."""
    common = -1
    for part in cell:
        common &= part
    return bool(common) and bool(cell)


def diagonal_point_in_cell(cell: Cell, n: int) -> Optional[RealizedPoint]:
    """An equal-rows point of the closed cell, or ``None`` when there is none."""
    if not cell_meets_diagonal(cell):
        return None
    common = -1
    for part in cell:
        common &= part
    j = (common & -common).bit_length() - 1
    return realize_vertex((j,) * len(cell), n)
