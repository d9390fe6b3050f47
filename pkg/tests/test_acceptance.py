"""Acceptance gate: one test per criterion, each printing a PASS/FAIL line.

Run ``pytest tests/test_acceptance.py -v`` for the summary block, or
``python3 tests/test_acceptance.py`` to run the gate as a script.
Criterion 10 is a stretch goal; it is marked slow and never asserts a verdict.
"""
import os
import random
import sys
import time

import pytest

sys.path.insert(0, os.path.dirname(__file__))

from conftest import dense_reduced_betti, random_graph  # noqa: E402
from ramcert.complexes import (  # noqa: E402
    complete_graph,
    cycle_graph,
    discrete_complex,
    g_free_edge_complex,
    independence_complex,
    path_graph,
)
from ramcert.criterion import CERTIFIED, INCONCLUSIVE, certify_chromatic, certify_no_face_coloring, certify_ramsey  # noqa: E402
from ramcert.homology import incidence_matrices, reduced_betti  # noqa: E402
from ramcert.oracles import brute_ramsey_holds, chromatic_number, exists_face_coloring  # noqa: E402
from ramcert.polytopal import Budget, BudgetExhausted, hom_complex, rainbow_complex  # noqa: E402
from ramcert.selfcheck import (  # noqa: E402
    _family_skeletons,
    check_builder_equivalences,
    check_diagonal_avoidance,
    check_facet_shortcut,
    check_fixed_point_free,
    random_complex,
)

RESULTS: list[str] = []


def gate(number: int, title: str, limit: float):
    def wrap(fn):
        def run(*args, **kwargs):
            t0 = time.monotonic()
            try:
                detail = fn(*args, **kwargs)
                elapsed = time.monotonic() - t0
                assert elapsed < limit, f"took {elapsed:.1f}s, limit {limit:.0f}s"
            except BaseException as exc:
                line = f"FAIL  {number:>2}. {title} ({time.monotonic() - t0:.1f}s): {exc}"
                RESULTS.append(line)
                print(line)
                raise
            line = f"PASS  {number:>2}. {title} ({elapsed:.1f}s){': ' + detail if detail else ''}"
            RESULTS.append(line)
            print(line)
        run.__name__ = fn.__name__
        return run
    return wrap


@gate(1, "boundary squares to zero on the regression family", 10)
def test_01_chain_level_soundness():
    skeletons = 0
    for _, _, skel in _family_skeletons(max_dim=4):
        incidence_matrices(skel, verify=True)
        skeletons += 1
    assert skeletons == 30
    return f"{skeletons} skeletons"


@gate(2, "Hom(K_2,K_n) is a sphere over Z_2 and Z_3", 60)
def test_02_sphere_pipeline():
    for n in (3, 4, 5):
        skel = hom_complex(complete_graph(2), complete_graph(n), n)
        assert skel.complete
        expected = {i: int(i == n - 2) for i in range(-1, n)}
        for p in (2, 3):
            assert reduced_betti(skel, p, n - 1).values == expected
            if n < 5:
                dense = dense_reduced_betti(skel, p)
                assert all(v == int(i == n - 2) for i, v in dense.items())
    return "n = 3, 4, 5"


@gate(3, "hom, part and rainbow builders agree with their definitions", 30)
def test_03_builder_equivalences():
    return check_builder_equivalences(max_dim=3)


@gate(4, "chromatic certificates for C_5 and K_4", 10)
def test_04_chromatic_end_to_end():
    c5, k4 = cycle_graph(5), complete_graph(4)
    assert certify_chromatic(c5, 2, 2, 1).verdict == CERTIFIED
    assert certify_chromatic(k4, 3, 2, 1).verdict == CERTIFIED
    assert certify_chromatic(c5, 3, 2, 1).verdict == INCONCLUSIVE
    assert chromatic_number(c5) == 3 and chromatic_number(k4) == 4


@gate(5, "Ramsey certificate for P_3 with 2 colors on K_3", 5)
def test_05_ramsey_end_to_end():
    p3 = path_graph(3)
    cert = certify_ramsey(p3, 2, 3, 2, 1)
    assert cert.verdict == CERTIFIED and cert.bound == 0
    assert cert.betti.values == {-1: 0, 0: 0}
    assert brute_ramsey_holds(p3, 2, 3) and not brute_ramsey_holds(p3, 2, 2)


@gate(6, "negative controls stay inconclusive", 30)
def test_06_negative_controls():
    k3 = complete_graph(3)
    empty = certify_ramsey(k3, 2, 6, 2, 1)
    assert empty.verdict == INCONCLUSIVE and empty.cells[0] == 0 and empty.betti.values[-1] == 1
    points = rainbow_complex(k3, 6, 3, 1)
    assert points.dims == [120, 0]
    assert reduced_betti(points, 3, 0).values == {-1: 0, 0: 119}
    d2 = certify_no_face_coloring(discrete_complex(2), 2, 2, 1)
    assert d2.verdict == INCONCLUSIVE and exists_face_coloring(discrete_complex(2), 2) is not None


def soundness_instances(rng: random.Random, count: int):
    pks = [(2, 1), (3, 1), (2, 2)]
    fixed = [independence_complex(cycle_graph(5)), independence_complex(complete_graph(4)),
             independence_complex(cycle_graph(6)), g_free_edge_complex(path_graph(3), 3)]
    for i in range(count):
        r = i % 4
        if r == 0:
            sigma = random_complex(rng, 6)
        elif r == 1:
            sigma = independence_complex(random_graph(rng, rng.randint(2, 6), rng.uniform(0.3, 0.9)))
        elif r == 2:
            sigma = fixed[(i // 4) % len(fixed)]
        else:
            sigma = independence_complex(random_graph(rng, rng.randint(3, 6), 0.7))
        yield sigma, rng.choice((2, 3)), rng.choice(pks)


@gate(7, "no certificate contradicts an oracle coloring", 600)
def test_07_soundness_sweep():
    rng = random.Random(7)
    in_budget = certified = witnessed = 0
    for sigma, n, (p, k) in soundness_instances(rng, 320):
        cert = certify_no_face_coloring(sigma, n, p, k, Budget(max_cells=40_000, time_limit=5))
        if cert.budget_exhausted:
            continue
        in_budget += 1
        witness = exists_face_coloring(sigma, n)
        witnessed += witness is not None
        if cert.certified:
            certified += 1
            assert witness is None, f"certified but colorable: {sigma!r}, n={n}, p={p}, k={k}, {witness}"
    assert in_budget >= 200, f"only {in_budget} instances finished within budget"
    assert certified > 0 and witnessed > 0
    return f"{in_budget} instances, {certified} certified, {witnessed} colorable"


@gate(8, "no invariant cell and no diagonal cell on the regression family", 60)
def test_08_structural_lemmas():
    return f"{check_fixed_point_free()}; {check_diagonal_avoidance()}"


@gate(9, "facet shortcut matches brute selection enumeration", 60)
def test_09_facet_shortcut():
    return check_facet_shortcut(trials=10_000)


@pytest.mark.slow
@gate(10, "stretch: Rainbow(K_3;6;m=4) to dimension 3 over Z_2", 1800)
def test_10_performance_gate():
    budget = Budget(time_limit=1800)
    try:
        skel = rainbow_complex(complete_graph(3), 6, 4, 3, budget)
    except BudgetExhausted as exc:
        return f"inconclusive by budget, partial cells {exc.stats.get('dims')}"
    table = reduced_betti(skel, 2, 2)
    return f"cells {skel.dims}, reduced Betti {table.values}"


def main() -> int:
    tests = [v for k, v in sorted(globals().items()) if k.startswith("test_")]
    failed = 0
    for t in tests:
        try:
            t()
        except BaseException:
            failed += 1
    print("\n".join(["", "acceptance summary"] + RESULTS))
    return 1 if failed else 0


if __name__ == "__main__":
    raise SystemExit(main())
