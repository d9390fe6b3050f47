import pytest

from ramcert.complexes import (
    InvalidInput,
    SimplicialComplex,
    boundary_simplex,
    complete_graph,
    cycle_graph,
    discrete_complex,
    independence_complex,
    path_graph,
)
from ramcert.criterion import (
    CERTIFIED,
    INCONCLUSIVE,
    certify_chromatic,
    certify_no_face_coloring,
    certify_ramsey,
    prime_power,
    sweep_ramsey,
    vanishing_bound,
)
from ramcert.oracles import brute_ramsey_holds, chromatic_number, exists_face_coloring
from ramcert.polytopal import Budget


@pytest.mark.parametrize("n,p,k,D", [(2, 2, 1, 0), (2, 2, 2, 2), (3, 3, 1, 3), (1, 2, 1, -1), (3, 2, 1, 1)])
def test_vanishing_bound(n, p, k, D):
    assert vanishing_bound(n, p, k) == D


def test_vanishing_bound_rejects_composite():
    with pytest.raises(InvalidInput):
        vanishing_bound(2, 6, 1)


@pytest.mark.parametrize("m,expected", [(2, (2, 1)), (4, (2, 2)), (9, (3, 2)), (6, None), (1, None), (7, (7, 1))])
def test_prime_power(m, expected):
    assert prime_power(m) == expected


class TestFaceColoring:
    def test_two_points_is_inconclusive(self):
        cert = certify_no_face_coloring(discrete_complex(2), 2, 2, 1)
        assert cert.verdict == INCONCLUSIVE
        assert cert.betti.values[0] == 1
        assert exists_face_coloring(discrete_complex(2), 2) is not None

    def test_c5_independence_complex(self, c5):
        cert = certify_no_face_coloring(independence_complex(c5), 2, 2, 1)
        assert cert.verdict == CERTIFIED
        assert cert.bound == 0 and cert.cells == [10, 10]
        assert exists_face_coloring(independence_complex(c5), 2) is None

    def test_void_complex_rejected(self):
        with pytest.raises(InvalidInput):
            certify_no_face_coloring(boundary_simplex(1), 2, 2, 1)

    def test_one_color_rejected(self):
        with pytest.raises(InvalidInput):
            certify_no_face_coloring(discrete_complex(2), 1, 2, 1)

    def test_budget_never_certifies(self, c5):
        cert = certify_no_face_coloring(independence_complex(c5), 3, 2, 2, Budget(max_cells=5))
        assert cert.verdict == INCONCLUSIVE and cert.budget_exhausted and cert.betti is None


class TestChromatic:
    def test_c5_two_colors(self, c5):
        assert certify_chromatic(c5, 2, 2, 1).certified
        assert chromatic_number(c5) == 3

    def test_c5_three_colors_inconclusive(self, c5):
        assert not certify_chromatic(c5, 3, 2, 1).certified

    def test_k4(self):
        k4 = complete_graph(4)
        three = certify_chromatic(k4, 3, 2, 1)
        assert three.certified and three.bound == 1
        assert three.betti.values == {-1: 0, 0: 0, 1: 0}
        four = certify_chromatic(k4, 4, 2, 1)
        assert not four.certified and four.bound == 2 and four.betti.values[2] == 1
        assert certify_chromatic(k4, 2, 2, 1).certified

    def test_k2(self):
        cert = certify_chromatic(complete_graph(2), 2, 2, 1)
        assert not cert.certified and cert.cells == [2, 0]


class TestRamsey:
    def test_p3_hexagon(self, p3):
        cert = certify_ramsey(p3, 2, 3, 2, 1)
        assert cert.certified
        assert cert.bound == 0 and cert.cells == [6, 6]
        assert cert.betti.values == {-1: 0, 0: 0}
        assert brute_ramsey_holds(p3, 2, 3)

    def test_triangle_two_coordinates_empty(self, k3):
        cert = certify_ramsey(k3, 2, 6, 2, 1)
        assert not cert.certified and cert.betti.values[-1] == 1

    def test_triangle_three_coordinates(self, k3):
        cert = certify_ramsey(k3, 2, 6, 3, 1)
        assert not cert.certified
        assert cert.cells[0] == 120 and cert.betti.values[0] == 119

    def test_ram_route_agrees(self, p3):
        a = certify_ramsey(p3, 2, 4, 3, 1)
        b = certify_ramsey(p3, 2, 4, 3, 1, method="ram")
        assert a.dumps(include_timing=False) == b.dumps(include_timing=False)

    def test_soundness_small(self, p3, k3):
        for g in (p3, k3, path_graph(4)):
            for N in range(2, 6):
                for p, k in ((2, 1), (3, 1)):
                    cert = certify_ramsey(g, 2, N, p, k, Budget(max_cells=100_000))
                    if cert.certified:
                        assert brute_ramsey_holds(g, 2, N)

    def test_sweep_records_monotonicity(self, p3):
        report = sweep_ramsey(p3, 2, [2, 3, 4], [2, 3])
        verdicts = [(c["m"], c["N"], c["verdict"]) for c in report["certificates"]]
        assert (2, 2, INCONCLUSIVE) in verdicts and (2, 3, CERTIFIED) in verdicts
        assert report["monotonicity_violations"] == []

    def test_sweep_rejects_non_prime_power(self, p3):
        with pytest.raises(InvalidInput):
            sweep_ramsey(p3, 2, [3], [6])


class TestCertificateFormat:
    def test_fields(self, c5):
        data = certify_chromatic(c5, 2, 2, 1).to_json()
        for key in ("kind", "graph", "n", "p", "k", "bound", "betti", "cells", "verdict", "reason", "ms"):
            assert key in data
        assert data["verdict"] == "certified" and data["kind"] == "chromatic"

    def test_deterministic(self, c5):
        runs = {certify_chromatic(c5, 2, 3, 1).dumps(include_timing=False) for _ in range(3)}
        assert len(runs) == 1

    def test_cells_cover_depth(self):
        cert = certify_chromatic(cycle_graph(7), 3, 2, 1)
        assert len(cert.cells) == cert.bound + 2


def test_partition_kind_on_custom_complex():
    sigma = SimplicialComplex("abc", ["ab", "c"])
    cert = certify_no_face_coloring(sigma, 2, 2, 1)
    assert cert.kind == "partition"
    assert not cert.certified  # {a,b} | {c} is a coloring
