"""Invariant suites run by ``ramcert selfcheck`` and by the acceptance tests."""

from __future__ import annotations

import random
import time
from dataclasses import dataclass
from itertools import product
from typing import Callable

from .complexes import (
    Graph,
    SimplicialComplex,
    boundary_simplex,
    complete_graph,
    cycle_graph,
    discrete_complex,
    g_free_edge_complex,
    independence_complex,
    path_graph,
    simplex_complex,
)
from .homology import incidence_matrices
from .polytopal import (
    cell_in_induced_brute,
    cell_meets_diagonal,
    elementary_abelian_action,
    enumerate_skeleton,
    has_invariant_cell,
    hom_complex,
    induced_complex,
    part_complex,
    rainbow_complex,
    ram_cell_test,
    ram_vertex_test,
)

# (p, k) with p**k = m for the coordinate counts the suites use
TRANSITIVE_ACTIONS = {2: (2, 1), 3: (3, 1), 4: (2, 2)}


@dataclass
class CheckResult:
    name: str
    passed: bool
    detail: str
    seconds: float

    def line(self) -> str:
        return f"[{'PASS' if self.passed else 'FAIL'}] {self.name}: {self.detail} ({self.seconds:.2f}s)"


def regression_family() -> list[tuple[str, SimplicialComplex]]:
    """Ten small complexes used across the structural suites."""
    return [
        ("D_2", discrete_complex(2)),
        ("D_3", discrete_complex(3)),
        ("Delta_2", simplex_complex(2)),
        ("bd Delta_3", boundary_simplex(3)),
        ("bd Delta_4", boundary_simplex(4)),
        ("Ind(C_4)", independence_complex(cycle_graph(4))),
        ("Ind(C_5)", independence_complex(cycle_graph(5))),
        ("Ind(P_4)", independence_complex(path_graph(4))),
        ("Ind(K_4)", independence_complex(complete_graph(4))),
        ("Sigma(P_3;3)", g_free_edge_complex(path_graph(3), 3)),
    ]


def _family_skeletons(max_dim: int = 4):
    for name, sigma in regression_family():
        for m in (2, 3, 4):
            yield name, m, enumerate_skeleton(boundary_simplex(m), sigma, max_dim)


def check_boundary_squares_to_zero() -> str:
    total = 0
    for _, _, skel in _family_skeletons():
        incidence_matrices(skel, verify=True)
        total += sum(skel.dims)
    return f"{total} cells over {len(regression_family()) * 3} skeletons"


def check_fixed_point_free() -> str:
    n = 0
    for name, m, skel in _family_skeletons():
        action = elementary_abelian_action(*TRANSITIVE_ACTIONS[m])
        if has_invariant_cell(skel, action):
            raise AssertionError(f"invariant cell in Ram(bd Delta_{m}, {name})")
        n += 1
    return f"no invariant cell in {n} complexes"


def check_diagonal_avoidance() -> str:
    n = 0
    for name, m, skel in _family_skeletons():
        for cell in skel.all_cells():
            if cell_meets_diagonal(cell):
                raise AssertionError(f"cell with a common value in Ram(bd Delta_{m}, {name})")
            n += 1
    for m in (2, 3, 4):
        for n_colors in (2, 3, 4):
            for cell in part_complex(boundary_simplex(m), n_colors, 4 * m).all_cells():
                if cell_meets_diagonal(cell):
                    raise AssertionError(f"Ram(bd Delta_{m}, D_{n_colors}) meets the diagonal")
                n += 1
    return f"{n} cells checked"


def _is_hom(g1: Graph, g2: Graph) -> Callable:
    def accepts(eta):
        return all((min(eta[u], eta[v]), max(eta[u], eta[v])) in g2.edges for u, v in g1.edges)

    return accepts


def _is_face_coloring(sigma: SimplicialComplex, n: int) -> Callable:
    def accepts(eta):
        fibers = [0] * n
        for i, c in enumerate(eta):
            fibers[c] |= 1 << i
        return all(sigma.is_face_mask(f) for f in fibers)

    return accepts


def check_builder_equivalences(max_dim: int = 3) -> str:
    count = 0
    graphs = {"K_2": complete_graph(2), "P_3": path_graph(3), "K_3": complete_graph(3), "C_4": cycle_graph(4)}
    for (a, g1), (b, g2) in product(graphs.items(), repeat=2):
        left = hom_complex(g1, g2, max_dim)
        right = induced_complex(g1.n, g2.n, _is_hom(g1, g2), max_dim)
        if left.cells != right.cells:
            raise AssertionError(f"Hom({a},{b}) differs from the homomorphism-induced complex")
        count += 1
    for name, sigma in regression_family():
        for n in (2, 3):
            left = part_complex(sigma, n, max_dim)
            right = induced_complex(sigma.n_vertices, n, _is_face_coloring(sigma, n), max_dim)
            if left.cells != right.cells:
                raise AssertionError(f"Part({name},{n}) differs from the coloring-induced complex")
            count += 1
    for gname, g in (("P_3", path_graph(3)), ("K_3", complete_graph(3))):
        for N in range(2, 6):
            for m in range(1, 4):
                direct = rainbow_complex(g, N, m, max_dim)
                via_ram = rainbow_complex(g, N, m, max_dim, method="ram")
                if direct.cells != via_ram.cells:
                    raise AssertionError(f"Rainbow({gname};{N};m={m}) differs from Ram(bd Delta_{m}, Sigma)")
                count += 1
    return f"{count} builder pairs identical cell-for-cell"


def random_complex(rng: random.Random, max_vertices: int = 5) -> SimplicialComplex:
    nv = rng.randint(1, max_vertices)
    facets = []
    for _ in range(rng.randint(1, 4)):
        facets.append([v for v in range(nv) if rng.random() < 0.45])
    covered = {v for f in facets for v in f}
    facets.extend([v] for v in range(nv) if v not in covered)
    return SimplicialComplex(range(nv), facets)


def random_cell(rng: random.Random, arity: int, n_targets: int, max_dim: int = 3) -> tuple[int, ...]:
    cell = [1 << rng.randrange(n_targets) for _ in range(arity)]
    for _ in range(rng.randint(0, max_dim)):
        i = rng.randrange(arity)
        cell[i] |= 1 << rng.randrange(n_targets)
    return tuple(cell)


def check_facet_shortcut(trials: int = 10_000, seed: int = 20100901) -> str:
    rng = random.Random(seed)
    accepted = 0
    for _ in range(trials):
        s1 = random_complex(rng)
        s2 = random_complex(rng)
        cell = random_cell(rng, s1.n_vertices, s2.n_vertices)
        fast = ram_cell_test(cell, s1, s2)
        slow = cell_in_induced_brute(cell, lambda eta: ram_vertex_test(eta, s1, s2))
        if fast != slow:
            raise AssertionError(f"shortcut disagrees on {cell} for {s1!r}, {s2!r}")
        accepted += fast
    return f"{trials} triples agree ({accepted} members)"


SUITES: dict[str, Callable[[], str]] = {
    "boundary squares to zero": check_boundary_squares_to_zero,
    "fixed-point-free actions": check_fixed_point_free,
    "diagonal avoidance": check_diagonal_avoidance,
    "builder equivalences": check_builder_equivalences,
    "facet shortcut vs brute": check_facet_shortcut,
}


def run_selfcheck(names=None) -> list[CheckResult]:
    results = []
    for name, fn in SUITES.items():
        if names and name not in names:
            continue
        t0 = time.monotonic()
        try:
            detail, ok = fn(), True
        except AssertionError as exc:
            detail, ok = str(exc), False
        results.append(CheckResult(name, ok, detail, time.monotonic() - t0))
    return results
