"""Uniform-weight unitary key sets."""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .linalg import EXACT_TOL, PreconditionError, ShapeError, random_haar_unitary, unitarity_error
from .polytopes import UnknownPolytopeError, platonic

I2 = np.eye(2, dtype=complex)
X = np.array([[0, 1], [1, 0]], dtype=complex)
Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
Z = np.array([[1, 0], [0, -1]], dtype=complex)
PAULI_VECTOR = (X, Y, Z)


class UnknownEnsembleError(KeyError):
    pass


@dataclass(frozen=True)
class UnitaryEnsemble:
    """A key set: ``members[j]`` is the unitary applied for key ``j``."""

    dim: int
    label: str
    members: tuple

    def __post_init__(self):
        if not self.members:
            raise PreconditionError("an ensemble needs at least one member")
        for j, u in enumerate(self.members):
            if u.shape != (self.dim, self.dim):
                raise ShapeError(f"member {j} has shape {u.shape}, expected {(self.dim, self.dim)}")
            err = unitarity_error(u)
            if err > EXACT_TOL:
                raise PreconditionError(f"member {j} of {self.label!r} is not unitary (error {err:.3g})")
            u.setflags(write=False)

    @classmethod
    def of(cls, label: str, members) -> "UnitaryEnsemble":
        members = tuple(np.array(m, dtype=complex) for m in members)
        return cls(members[0].shape[0], label, members)

    @property
    def cardinality(self) -> int:
        return len(self.members)

    @property
    def weight(self) -> Fraction:
        return Fraction(1, len(self.members))

    def __len__(self):
        return len(self.members)

    def __iter__(self):
        return iter(self.members)

    def __getitem__(self, k):
        return self.members[k]


def pauli_ensemble() -> UnitaryEnsemble:
    return UnitaryEnsemble.of("pauli", [I2, X, Y, Z])


def complex_rotation(theta: float) -> np.ndarray:
    """``[[cos t, -i sin t], [i sin t, cos t]]``, entry for entry.

    This matrix is Hermitian, so ``R R^dag = R^2 = I + sin(2t) Y``; it is
    unitary only where ``sin 2t = 0``.  It is returned as a plain matrix and
    never wrapped into an ensemble.
    """
    c, s = math.cos(theta), math.sin(theta)
    return np.array([[c, -1j * s], [1j * s, c]], dtype=complex)


def axis_rotation(axis, angle: float) -> np.ndarray:
    """SU(2) element ``exp(-i angle/2 n.sigma)`` (rotates the Bloch sphere by ``angle``)."""
    n = np.asarray(axis, dtype=float)
    n = n / np.linalg.norm(n)
    n_sigma = n[0] * X + n[1] * Y + n[2] * Z
    return math.cos(angle / 2) * I2 - 1j * math.sin(angle / 2) * n_sigma


def bloch_rotation(u) -> np.ndarray:
    """Real 3x3 matrix of ``r.sigma -> u (r.sigma) u^dag``."""
    u = np.asarray(u, dtype=complex)
    r = np.empty((3, 3))
    for j, sj in enumerate(PAULI_VECTOR):
        conj = u @ sj @ u.conj().T
        for i, si in enumerate(PAULI_VECTOR):
            r[i, j] = 0.5 * np.trace(si @ conj).real
    return r


# key-set name -> solid whose vertices give the rotation axes (dual pairing)
POLYHEDRAL_KEYSETS = {
    "K_P": "tetrahedron",
    "K_H": "octahedron",
    "K_O": "hexahedron",
    "K_D": "icosahedron",
    "K_I": "dodecahedron",
}
_KEYSET_FOR_SOLID = {solid: key for key, solid in POLYHEDRAL_KEYSETS.items()}


def polyhedral_ensemble(solid_name: str) -> UnitaryEnsemble:
    """One 2pi/3 Bloch rotation about each vertex axis of a Platonic solid.

    With ``cos(2pi/3) = -1/2`` the induced rotations sum to zero over any
    vertex set that is a centred tight frame, which is what makes the
    channel output maximally mixed.
    """
    if solid_name in POLYHEDRAL_KEYSETS:
        solid_name = POLYHEDRAL_KEYSETS[solid_name]
    try:
        solid = platonic(solid_name)
    except UnknownPolytopeError:
        raise UnknownEnsembleError(f"unknown solid {solid_name!r}") from None
    members = [axis_rotation(v, 2 * math.pi / 3) for v in solid.vertices]
    return UnitaryEnsemble.of(f"{_KEYSET_FOR_SOLID[solid_name]}/{solid_name}", members)


_i = 1j
GELL_MANN_GENERALIZED = (
    [[0, 1, 0], [1, 0, 0], [0, 0, 1]],
    [[0, -_i, 0], [_i, 0, 0], [0, 0, 1]],
    [[0, _i, 0], [-_i, 0, 0], [0, 0, 1]],
    [[1, 0, 0], [0, 0, 1], [0, 1, 0]],
    [[1, 0, 0], [0, 0, _i], [0, -_i, 0]],
    [[1, 0, 0], [0, 0, -_i], [0, _i, 0]],
    [[0, 0, 1], [0, 1, 0], [1, 0, 0]],
    [[0, 0, _i], [0, 1, 0], [-_i, 0, 0]],
    [[0, 0, -_i], [0, 1, 0], [_i, 0, 0]],
)


def gell_mann_ensemble() -> UnitaryEnsemble:
    """The nine matrices ``L_1 .. L_9`` as published."""
    return UnitaryEnsemble.of("gell-mann", GELL_MANN_GENERALIZED)


def shift_operator(d: int) -> np.ndarray:
    """``X|k> = |k+1 mod d>``."""
    return np.roll(np.eye(d, dtype=complex), 1, axis=0)


def clock_operator(d: int) -> np.ndarray:
    """``Z|k> = w^k |k>`` with ``w = exp(2 pi i / d)``."""
    w = cmath.exp(2j * math.pi / d)
    return np.diag([w ** k for k in range(d)])


def weyl_ensemble(d: int) -> UnitaryEnsemble:
    """All ``d**2`` products ``X^a Z^b``, ordered by ``(a, b)``."""
    if d < 2:
        raise PreconditionError("weyl_ensemble needs d >= 2")
    x, z = shift_operator(d), clock_operator(d)
    members = [
        np.linalg.matrix_power(x, a) @ np.linalg.matrix_power(z, b)
        for a in range(d)
        for b in range(d)
    ]
    return UnitaryEnsemble.of(f"weyl-{d}", members)


def singleton_identity(d: int) -> UnitaryEnsemble:
    return UnitaryEnsemble.of(f"singleton-identity-{d}", [np.eye(d, dtype=complex)])


def random_subensemble(d: int, n: int, seed: int) -> UnitaryEnsemble:
    """``n`` Haar unitaries; member ``j`` is drawn with seed ``seed + j``."""
    if n < 1:
        raise PreconditionError("random_subensemble needs n >= 1")
    members = [random_haar_unitary(d, seed + j) for j in range(n)]
    return UnitaryEnsemble.of(f"haar-{d}-{n}-{seed}", members)


STATIC_LABELS = ("pauli", "gell-mann", *POLYHEDRAL_KEYSETS.values())


def ensemble_labels() -> list[str]:
    """Labels understood by :func:`get_ensemble` (parametric ones use ``<d>``/``<n>``)."""
    return [
        *STATIC_LABELS,
        *POLYHEDRAL_KEYSETS,
        "weyl-<d>",
        "singleton-identity-<d>",
        "haar-<d>-<n>-<seed>",
    ]


def get_ensemble(label: str, d: int | None = None, n: int | None = None, seed: int = 0) -> UnitaryEnsemble:
    """Resolve a textual label to an ensemble.

    ``weyl`` and ``singleton-identity`` take the dimension either as a
    ``-<d>`` suffix or through ``d``; ``haar`` additionally needs ``n``.
    """
    if label == "pauli":
        return pauli_ensemble()
    if label in ("gell-mann", "gellmann"):
        return gell_mann_ensemble()
    if label in POLYHEDRAL_KEYSETS or label in _KEYSET_FOR_SOLID:
        return polyhedral_ensemble(label)
    head, _, tail = label.partition("-")
    if label.startswith("singleton-identity"):
        head, tail = "singleton-identity", label[len("singleton-identity"):].lstrip("-")
    try:
        parts = [int(x) for x in tail.split("-")] if tail else []
    except ValueError:
        raise UnknownEnsembleError(f"unknown ensemble label {label!r}") from None
    if head == "weyl":
        dim = parts[0] if parts else d
        if dim is None:
            raise UnknownEnsembleError("weyl ensemble needs a dimension")
        return weyl_ensemble(dim)
    if head == "singleton-identity":
        return singleton_identity(parts[0] if parts else (d or 2))
    if head == "haar":
        dim, size, s = (parts + [None, None, None])[:3]
        dim = dim if dim is not None else d
        size = size if size is not None else n
        if dim is None or size is None:
            raise UnknownEnsembleError("haar ensemble needs a dimension and a size")
        return random_subensemble(dim, size, s if s is not None else seed)
    raise UnknownEnsembleError(f"unknown ensemble label {label!r}")
