"""Regular 3- and 4-polytopes with unit circumradius, hypervectors, isotropy.

Vertex sets are generated from the usual golden-ratio coordinates and
rescaled onto the unit sphere, so a vertex set is a tight frame exactly when
``sum v v^T = (n / dim) I``.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

import numpy as np

from .linalg import PreconditionError, ShapeError

PHI = (1.0 + math.sqrt(5.0)) / 2.0

EDGE_TOL = 1e-9


class UnknownPolytopeError(KeyError):
    pass


@dataclass(frozen=True)
class ElementCounts:
    vertices: int
    edges: int
    faces: int
    cells: int | None = None

    def euler_characteristic(self) -> int:
        chi = self.vertices - self.edges + self.faces
        return chi if self.cells is None else chi - self.cells


@dataclass(frozen=True)
class Polytope:
    name: str
    dim: int
    schlaefli: tuple
    vertices: np.ndarray
    expected_counts: ElementCounts
    label: str = ""
    coxeter_group: str = ""

    def __post_init__(self):
        self.vertices.setflags(write=False)

    @property
    def antipodal(self) -> bool:
        return self.name not in ("tetrahedron", "simplex")


@dataclass(frozen=True)
class Hypervector:
    t: int
    vectors: np.ndarray
    solid: str

    ALLOWED_T = (4, 6, 8, 12, 20)

    def __post_init__(self):
        if self.t not in self.ALLOWED_T:
            raise PreconditionError(f"hypervector size {self.t} not in {self.ALLOWED_T}")
        if self.vectors.shape != (self.t, 3):
            raise ShapeError(f"hypervector V_{self.t} needs {self.t} 3-vectors")
        if np.abs(np.linalg.norm(self.vectors, axis=1) - 1.0).max() > 1e-12:
            raise PreconditionError("hypervector components must be unit vectors")
        self.vectors.setflags(write=False)


@dataclass(frozen=True)
class IsotropyReport:
    n: int
    centroid_norm: float
    frame_deviation: float

    def is_isotropic(self, tol: float = 1e-9) -> bool:
        return self.centroid_norm <= tol and self.frame_deviation <= tol


def _normalize(rows) -> np.ndarray:
    v = np.array(rows, dtype=float)
    return v / np.linalg.norm(v, axis=1, keepdims=True)


def _is_even(perm) -> bool:
    inversions = sum(1 for i, j in itertools.combinations(range(len(perm)), 2) if perm[i] > perm[j])
    return inversions % 2 == 0


def _signed(base):
    """All sign choices of ``base``, without duplicating zero entries."""
    choices = [(x,) if x == 0 else (x, -x) for x in base]
    return itertools.product(*choices)


def _all_perms(base) -> set:
    out = set()
    for signed in _signed(base):
        out.update(itertools.permutations(signed))
    return out


def _even_perms(base) -> set:
    n = len(base)
    evens = [p for p in itertools.permutations(range(n)) if _is_even(p)]
    out = set()
    for signed in _signed(base):
        for p in evens:
            out.add(tuple(signed[i] for i in p))
    return out


def _cyclic_perms(base) -> set:
    out = set()
    for signed in _signed(base):
        for k in range(3):
            out.add(tuple(signed[(i + k) % 3] for i in range(3)))
    return out


def _sorted_rows(points) -> np.ndarray:
    # deterministic vertex order regardless of set iteration order
    return _normalize(sorted(points))


# -- 3D -------------------------------------------------------------------

def _tetrahedron():
    return _sorted_rows([(1, 1, 1), (1, -1, -1), (-1, 1, -1), (-1, -1, 1)])


def _hexahedron():
    return _sorted_rows(itertools.product((1, -1), repeat=3))


def _octahedron():
    return _sorted_rows(_all_perms((1, 0, 0)))


def _icosahedron():
    return _sorted_rows(_cyclic_perms((0, 1, PHI)))


def _dodecahedron():
    pts = set(itertools.product((1, -1), repeat=3))
    pts |= _cyclic_perms((0, 1 / PHI, PHI))
    return _sorted_rows(pts)


# -- 4D -------------------------------------------------------------------

def _simplex4():
    # standard basis of R^5 projected onto the sum-zero hyperplane
    e = np.eye(5) - 1.0 / 5.0
    basis = np.linalg.svd(e)[2][:4]
    return _normalize(e @ basis.T)


def _hypercube4():
    return _sorted_rows(itertools.product((1, -1), repeat=4))


def _cross4():
    return _sorted_rows(_all_perms((1, 0, 0, 0)))


def _octaplex():
    return _sorted_rows(_all_perms((1, 1, 0, 0)))


def _tetraplex():
    # 600-cell: 8 + 16 + 96 vertices
    pts = _all_perms((2, 0, 0, 0))
    pts |= set(itertools.product((1, -1), repeat=4))
    pts |= _even_perms((PHI, 1, 1 / PHI, 0))
    return _sorted_rows(pts)


def _dodecaplex():
    # 120-cell at circumradius 2*sqrt(2): seven coordinate orbits, 600 vertices
    s5 = math.sqrt(5.0)
    pts = _all_perms((2, 2, 0, 0))
    pts |= _all_perms((1, 1, 1, s5))
    pts |= _all_perms((PHI ** -2, PHI, PHI, PHI))
    pts |= _all_perms((1 / PHI, 1 / PHI, 1 / PHI, PHI ** 2))
    pts |= _even_perms((0, PHI ** -2, 1, PHI ** 2))
    pts |= _even_perms((0, 1 / PHI, PHI, s5))
    pts |= _even_perms((1 / PHI, 1, PHI, 2))
    # orbits built from floats can collide only up to rounding
    v = np.round(np.array(sorted(pts)), 12)
    return _normalize(np.unique(v, axis=0))


PLATONIC = {
    "tetrahedron": ((3, 3), ElementCounts(4, 6, 4), _tetrahedron),
    "hexahedron": ((4, 3), ElementCounts(8, 12, 6), _hexahedron),
    "octahedron": ((3, 4), ElementCounts(6, 12, 8), _octahedron),
    "dodecahedron": ((5, 3), ElementCounts(20, 30, 12), _dodecahedron),
    "icosahedron": ((3, 5), ElementCounts(12, 30, 20), _icosahedron),
}

# Table I labels; Schlaefli symbols disambiguate the names.
REGULAR_4 = {
    "simplex": ("Simplex (S)", (3, 3, 3), "A4", ElementCounts(5, 10, 10, 5), _simplex4),
    "hypercube": ("Hypercube (H)", (4, 3, 3), "B4", ElementCounts(16, 32, 24, 8), _hypercube4),
    "tesseract16": ("Tesseract (T_1)", (3, 3, 4), "B4", ElementCounts(8, 24, 32, 16), _cross4),
    "octaplex": ("Octaplex (O)", (3, 4, 3), "F4", ElementCounts(24, 96, 96, 24), _octaplex),
    "dodecaplex": ("Dodecaplex (D)", (5, 3, 3), "H4", ElementCounts(600, 1200, 720, 120), _dodecaplex),
    "tetraplex": ("Tetraplex (T_2)", (3, 3, 5), "H4", ElementCounts(120, 720, 1200, 600), _tetraplex),
}

POLYTOPE_NAMES = tuple(PLATONIC) + tuple(REGULAR_4)

_SCHLAEFLI_INDEX = {sym: name for name, (_, sym, *_rest) in REGULAR_4.items()}
_SCHLAEFLI_INDEX.update({sym: name for name, (sym, *_rest) in PLATONIC.items()})


def platonic(name: str) -> Polytope:
    try:
        schlaefli, counts, build = PLATONIC[name]
    except KeyError:
        raise UnknownPolytopeError(f"unknown Platonic solid {name!r}; choose from {sorted(PLATONIC)}") from None
    return Polytope(name, 3, schlaefli, build(), counts, label=name.capitalize())


def regular_4polytope(name: str) -> Polytope:
    try:
        label, schlaefli, group, counts, build = REGULAR_4[name]
    except KeyError:
        raise UnknownPolytopeError(f"unknown 4-polytope {name!r}; choose from {sorted(REGULAR_4)}") from None
    return Polytope(name, 4, schlaefli, build(), counts, label=label, coxeter_group=group)


def polytope(name_or_symbol) -> Polytope:
    """Look up any of the eleven polytopes by name or Schlaefli symbol."""
    if isinstance(name_or_symbol, (tuple, list)):
        key = tuple(int(x) for x in name_or_symbol)
        if key not in _SCHLAEFLI_INDEX:
            raise UnknownPolytopeError(f"no regular convex polytope with symbol {list(key)}")
        name_or_symbol = _SCHLAEFLI_INDEX[key]
    if name_or_symbol in PLATONIC:
        return platonic(name_or_symbol)
    return regular_4polytope(name_or_symbol)


def verify_isotropy(vectors, dim: int | None = None) -> IsotropyReport:
    """Centroid and tight-frame deviation of a finite vector set.

    Never raises for non-isotropic input; the caller thresholds the report.
    """
    try:
        v = np.array(vectors, dtype=float)
    except ValueError as exc:
        raise ShapeError(f"mixed vector lengths: {exc}") from None
    if v.ndim != 2 or v.shape[0] == 0:
        raise ShapeError("verify_isotropy needs a non-empty list of vectors")
    if dim is not None and v.shape[1] != dim:
        raise ShapeError(f"vectors have length {v.shape[1]}, expected {dim}")
    n, k = v.shape
    centroid = np.linalg.norm(v.sum(axis=0) / n)
    frame = v.T @ v - (n / k) * np.eye(k)
    return IsotropyReport(n, float(centroid), float(np.abs(frame).max()))


def edge_graph(p: Polytope, tol: float = EDGE_TOL) -> list[tuple[int, int]]:
    """Vertex pairs at the minimal pairwise distance."""
    v = p.vertices
    diff = v[:, None, :] - v[None, :, :]
    dist = np.sqrt(np.einsum("ijk,ijk->ij", diff, diff))
    iu = np.triu_indices(len(v), k=1)
    pair_dist = dist[iu]
    shortest = pair_dist.min()
    hit = np.abs(pair_dist - shortest) <= tol
    return [(int(i), int(j)) for i, j in zip(iu[0][hit], iu[1][hit])]


def so3_rotation(phi: float, theta: float, varphi: float, as_printed: bool = False) -> np.ndarray:
    """Three-angle rotation matrix.

    The published form has ``-sin(varphi) sin(theta)`` in row 2, column 3,
    which is not orthogonal for generic angles; the default uses
    ``-sin(phi) sin(theta)`` there, which makes the matrix a proper rotation.
    Pass ``as_printed=True`` for the verbatim entries.  Angles outside the
    customary domains are accepted.
    """
    cf, sf = math.cos(phi), math.sin(phi)
    ct, st = math.cos(theta), math.sin(theta)
    cv, sv = math.cos(varphi), math.sin(varphi)
    r23 = -sv * st if as_printed else -sf * st
    return np.array([
        [cf * ct * cv + sf * sv, -cf * ct * sv + sf * cv, st * cf],
        [-sf * ct * cv + cf * sv, sf * ct * sv + cf * cv, r23],
        [-st * cv, st * sv, ct],
    ])


# hypervector size -> solid whose vertex count it is
SOLID_FOR_T = {4: "tetrahedron", 6: "octahedron", 8: "hexahedron", 12: "icosahedron", 20: "dodecahedron"}


def hypervector_of(solid_name: str) -> Hypervector:
    p = platonic(solid_name)
    return Hypervector(len(p.vertices), np.array(p.vertices), solid_name)


def hypervector(t: int) -> Hypervector:
    """``V_t`` by size."""
    try:
        return hypervector_of(SOLID_FOR_T[t])
    except KeyError:
        raise PreconditionError(f"no hypervector of size {t}; choose from {sorted(SOLID_FOR_T)}") from None
