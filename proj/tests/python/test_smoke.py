import os
import pathlib

import pytest

import qehrhart

DATA = pathlib.Path(os.environ.get("QEHRHART_DATA", pathlib.Path(__file__).resolve().parents[2] / "data"))


@pytest.fixture
def triangle():
    return qehrhart.Polytope(2, [[0, 0], [2, 1], [1, 2]])


def test_lattice_points_and_ehrhart(triangle):
    assert qehrhart.lattice_points(triangle) == [[0, 0], [1, 1], [1, 2], [2, 1]]
    assert qehrhart.ehrhart_series(triangle, 2) == [1, 4, 10]


def test_q_ehrhart_methods_agree(triangle):
    rows = {m: qehrhart.q_ehrhart(triangle, 2, m) for m in ("filtration", "harmonic", "dual")}
    assert rows["filtration"][:2] == [[1], [1, 2, 1]]
    assert rows["filtration"] == rows["harmonic"] == rows["dual"]


def test_filtration_with_bases(triangle):
    table = qehrhart.filtration_dims(triangle, 1, with_bases=True)
    assert table["dims"] == [4, 3, 1, 0]
    (generator,) = table["bases"][2]["basis"]
    coeffs = {tuple(t["exp"]): t["coeff"] for t in generator}
    assert coeffs == {(0, 0): "1", (1, 1): "-3", (1, 2): "1", (2, 1): "1"}


def test_harmonic_basis_strings():
    assert qehrhart.harmonic_basis([[0], [1]]) == [["1"], ["x"]]
    assert qehrhart.harmonic_basis([[0, 0], [1, 1], [2, 1], [1, 2]], method="dual")[2] == ["x^2 + x*y + y^2"]
    assert qehrhart.gr_hilbert([[0], [1]]) == [1, 1]
    assert qehrhart.gr_ideal_basis([[0], [1]], 2) == ["x^2"]


def test_rational_triangle_and_files():
    gk = qehrhart.load_polytope(str(DATA / "gk_rational_triangle.json"))
    assert gk.vertices == [["0", "0"], ["2/15", "16/15"], ["-6/7", "4/7"]]
    assert qehrhart.max_vanishing_order(gk, 1) == (1, "y - 1")
    assert gk.dilate(105).vertices == [["0", "0"], ["14", "112"], ["-90", "60"]]
    report = qehrhart.gk_report(gk, m_max=3, k_max=2, property3_m_max=1, growth_m_max=3)
    assert report["complete"]
    assert [v["order"] for v in report["vanishing"]] == [1, 2, 3]


def test_checks_and_generators():
    segment = qehrhart.Polytope(1, [[0], [1]])
    assert qehrhart.minimal_generators(segment, 4) == [(1, 0, 1), (1, 1, 1)]
    assert qehrhart.lemma32_check([[0, 0], [1, 2], [-1, 3]], trials=20, seed=3)["mismatches"] == 0
    assert qehrhart.multiplicativity_check(segment, 3, samples=20, seed=5)["violations"] == 0


def test_errors():
    with pytest.raises(qehrhart.ParseError):
        qehrhart.parse_polytope('{"dim": 2, "vertices": [["1/0", 0]]}')
    with pytest.raises(ValueError):
        qehrhart.Polytope(3, [[0, 0, 0], [1, 0, 0], [0, 1, 0], [0, 0, 1], [1, 1, 1]])
