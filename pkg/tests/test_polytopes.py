import itertools
import math

import numpy as np
import pytest
from numpy.testing import assert_allclose

from pqc.linalg import PreconditionError, ShapeError
from pqc.polytopes import (
    PLATONIC,
    POLYTOPE_NAMES,
    REGULAR_4,
    Hypervector,
    UnknownPolytopeError,
    edge_graph,
    hypervector,
    hypervector_of,
    platonic,
    polytope,
    regular_4polytope,
    so3_rotation,
    verify_isotropy,
)

# (vertices, edges) derived independently from the pair-scan oracle below
EDGE_COUNTS = {
    "tetrahedron": 6, "hexahedron": 12, "octahedron": 12, "dodecahedron": 30, "icosahedron": 30,
    "simplex": 10, "hypercube": 32, "tesseract16": 24, "octaplex": 96, "dodecaplex": 1200, "tetraplex": 720,
}


def pair_scan_edges(vertices):
    """Plain-Python minimal-distance pair count."""
    pts = [tuple(map(float, v)) for v in vertices]
    dists = {(i, j): math.dist(pts[i], pts[j]) for i, j in itertools.combinations(range(len(pts)), 2)}
    shortest = min(dists.values())
    return sorted(k for k, v in dists.items() if abs(v - shortest) <= 1e-9)


def det3(m):
    return (m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
            - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
            + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]))


@pytest.fixture(scope="module")
def all_polytopes():
    return {name: polytope(name) for name in POLYTOPE_NAMES}


def test_basic_counts():
    assert len(platonic("tetrahedron").vertices) == 4
    ico = platonic("icosahedron")
    assert len(ico.vertices) == 12
    assert len(edge_graph(ico)) == 30
    assert verify_isotropy(platonic("hexahedron").vertices, 3).centroid_norm <= 1e-12


def test_table_cells():
    octa = regular_4polytope("octaplex")
    assert len(octa.vertices) == 24 and octa.expected_counts.cells == 24
    dodeca = regular_4polytope("dodecaplex")
    assert len(dodeca.vertices) == 600 and dodeca.expected_counts.cells == 120
    assert [regular_4polytope(n).expected_counts.cells for n in REGULAR_4] == [5, 8, 16, 24, 120, 600]
    assert [regular_4polytope(n).coxeter_group for n in REGULAR_4] == ["A4", "B4", "B4", "F4", "H4", "H4"]


def test_simplex_gram_matrix():
    v = regular_4polytope("simplex").vertices
    gram = v @ v.T
    off = gram[~np.eye(5, dtype=bool)]
    assert_allclose(off, -0.25, atol=1e-12)
    assert_allclose(np.diag(gram), 1.0, atol=1e-12)


@pytest.mark.parametrize("name", POLYTOPE_NAMES)
def test_polytope_invariants(name, all_polytopes):
    p = all_polytopes[name]
    v = p.vertices
    assert v.shape == (p.expected_counts.vertices, p.dim)
    assert np.abs(np.linalg.norm(v, axis=1) - 1).max() <= 1e-12
    assert len({tuple(np.round(x, 9)) for x in v}) == len(v)
    iso = verify_isotropy(v, p.dim)
    assert iso.centroid_norm <= 1e-9 and iso.frame_deviation <= 1e-9
    if p.antipodal:
        keys = {tuple(np.round(x, 9)) for x in v}
        assert all(tuple(np.round(-x, 9)) in keys for x in v)
    edges = edge_graph(p)
    assert len(edges) == p.expected_counts.edges == EDGE_COUNTS[name]
    # regular: every vertex has the same degree
    degree = np.bincount(np.array(edges).ravel(), minlength=len(v))
    assert degree.min() == degree.max() == 2 * len(edges) // len(v)
    assert p.expected_counts.euler_characteristic() == (2 if p.dim == 3 else 0)


@pytest.mark.parametrize("name", ["tetrahedron", "hexahedron", "octahedron", "dodecahedron",
                                  "icosahedron", "simplex", "hypercube", "tesseract16", "octaplex"])
def test_edge_graph_matches_pair_scan(name, all_polytopes):
    p = all_polytopes[name]
    assert edge_graph(p) == pair_scan_edges(p.vertices)


def test_polytope_lookup():
    assert polytope((3, 3, 5)).name == "tetraplex"
    assert polytope([4, 3, 3]).name == "hypercube"
    assert polytope((5, 3)).name == "dodecahedron"
    assert regular_4polytope("tesseract16").label == "Tesseract (T_1)"
    for bad in (lambda: platonic("cube"), lambda: regular_4polytope("24-cell"), lambda: polytope((7, 3))):
        with pytest.raises(UnknownPolytopeError):
            bad()


def test_verify_isotropy_examples():
    axes = np.vstack([np.eye(3), -np.eye(3)])
    r = verify_isotropy(axes, 3)
    assert r.centroid_norm == 0.0 and r.frame_deviation == 0.0
    tet = platonic("tetrahedron").vertices
    frame = sum(np.outer(x, x) for x in tet)
    assert_allclose(frame, 4 / 3 * np.eye(3), atol=1e-12)
    assert verify_isotropy(tet, 3).frame_deviation <= 1e-12
    single = verify_isotropy([[1.0, 0.0, 0.0]], 3)
    assert single.centroid_norm == 1.0 and not single.is_isotropic()


def test_verify_isotropy_errors():
    with pytest.raises(ShapeError):
        verify_isotropy([], 3)
    with pytest.raises(ShapeError):
        verify_isotropy([[1, 0, 0], [0, 1]], 3)
    with pytest.raises(ShapeError):
        verify_isotropy([[1, 0]], 3)


def test_so3_identity():
    assert_allclose(so3_rotation(0, 0, 0), np.eye(3), atol=1e-15)


def test_so3_is_a_rotation():
    rng = np.random.default_rng(3)
    for phi, theta, varphi in rng.uniform(-2 * math.pi, 2 * math.pi, size=(100, 3)):
        r = so3_rotation(phi, theta, varphi)
        assert np.abs(r @ r.T - np.eye(3)).max() <= 1e-12
        assert abs(det3(r) - 1) <= 1e-12


def test_so3_as_printed_is_not_orthogonal():
    r = so3_rotation(0.3, 0.7, 1.1, as_printed=True)
    assert np.abs(r @ r.T - np.eye(3)).max() > 0.1
    # the two forms agree wherever sin(phi) == sin(varphi)
    assert_allclose(so3_rotation(0.4, 0.9, 0.4, as_printed=True), so3_rotation(0.4, 0.9, 0.4))


@pytest.mark.parametrize("solid,t", [("tetrahedron", 4), ("octahedron", 6), ("hexahedron", 8),
                                     ("icosahedron", 12), ("dodecahedron", 20)])
def test_hypervectors(solid, t):
    hv = hypervector_of(solid)
    assert hv.t == t and hv.vectors.shape == (t, 3)
    assert verify_isotropy(hv.vectors, 3).centroid_norm <= 1e-12
    assert hypervector(t).solid == solid


def test_hypervector_validation():
    with pytest.raises(PreconditionError):
        Hypervector(5, np.eye(5, 3), "none")
    with pytest.raises(PreconditionError):
        Hypervector(4, 2 * platonic("tetrahedron").vertices, "tetrahedron")
    with pytest.raises(PreconditionError):
        hypervector(7)
    with pytest.raises(UnknownPolytopeError):
        hypervector_of("simplex")


def test_vertex_order_is_deterministic():
    assert np.array_equal(regular_4polytope("dodecaplex").vertices, regular_4polytope("dodecaplex").vertices)
    assert set(PLATONIC) | set(REGULAR_4) == set(POLYTOPE_NAMES)
