"""Dense complex linear algebra for small matrices.

Matrices are plain ``numpy`` arrays of dtype ``complex128``.  Density
matrices and pure states are thin validated wrappers around them.
"""
from __future__ import annotations

import math

import numpy as np

#: Tolerance for algebraically exact constructions.
EXACT_TOL = 1e-12
#: Tolerance for results of iterative routines.
ITER_TOL = 1e-9

_HERMITIAN_PRE_TOL = 1e-10
_MAX_SWEEPS = 100
_OFFDIAG_RTOL = 1e-14


class ShapeError(ValueError):
    """Operand shapes are incompatible."""


class PreconditionError(ValueError):
    """An operation was called on an input outside its domain."""


class ConvergenceError(ArithmeticError):
    """An iterative routine did not converge."""


def as_matrix(a) -> np.ndarray:
    m = np.asarray(a, dtype=complex)
    if m.ndim != 2:
        raise ShapeError(f"expected a 2-d matrix, got shape {m.shape}")
    return m


def matmul(a, b) -> np.ndarray:
    a, b = as_matrix(a), as_matrix(b)
    if a.shape[1] != b.shape[0]:
        raise ShapeError(f"cannot multiply {a.shape} by {b.shape}")
    return a @ b


def adjoint(a) -> np.ndarray:
    return as_matrix(a).conj().T


def identity(d: int) -> np.ndarray:
    return np.eye(d, dtype=complex)


def max_abs(a) -> float:
    """Largest entry modulus (entrywise max norm)."""
    a = np.asarray(a)
    return float(np.abs(a).max()) if a.size else 0.0


def allclose(a, b, tol: float) -> bool:
    """Entrywise comparison with an explicit absolute tolerance."""
    a, b = np.asarray(a), np.asarray(b)
    return a.shape == b.shape and max_abs(a - b) <= tol


def hermiticity_error(a) -> float:
    a = as_matrix(a)
    if a.shape[0] != a.shape[1]:
        raise ShapeError(f"matrix is not square: {a.shape}")
    return max_abs(a - a.conj().T)


def unitarity_error(u) -> float:
    u = as_matrix(u)
    return max_abs(u @ u.conj().T - np.eye(u.shape[0]))


def hermitian_eigenvalues(m) -> np.ndarray:
    """Full spectrum of a Hermitian matrix by cyclic complex Jacobi sweeps.

    Each pair ``(p, q)`` is annihilated by a unitary plane rotation built from
    a phase factor (making the pivot real) followed by the classic real
    Jacobi rotation.  Sweeps stop once the off-diagonal Frobenius mass drops
    to ``1e-14 * ||m||_F``.

    Returns:
        Eigenvalues in ascending order.

    Raises:
        PreconditionError: if ``m`` is not Hermitian within 1e-10.
        ConvergenceError: if 100 sweeps do not reach the threshold.
    """
    a = np.array(as_matrix(m), dtype=complex)
    if hermiticity_error(a) > _HERMITIAN_PRE_TOL:
        raise PreconditionError("hermitian_eigenvalues needs a Hermitian matrix")
    n = a.shape[0]
    # symmetrize away sub-tolerance noise so the diagonal is exactly real
    a = 0.5 * (a + a.conj().T)
    target = _OFFDIAG_RTOL * np.linalg.norm(a)
    offdiag = ~np.eye(n, dtype=bool)

    for sweep in range(_MAX_SWEEPS + 1):
        off = np.linalg.norm(a[offdiag])
        if off <= target:
            return np.sort(np.diag(a).real)
        if sweep == _MAX_SWEEPS:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                b = a[p, q]
                g = abs(b)
                if g == 0.0:
                    continue
                phase = b / g
                theta = (a[q, q].real - a[p, p].real) / (2.0 * g)
                t = 1.0 / (abs(theta) + math.hypot(theta, 1.0))
                if theta < 0.0:
                    t = -t
                c = 1.0 / math.sqrt(t * t + 1.0)
                s = t * c
                rot = np.array([[c, s], [-s * phase.conjugate(), c * phase.conjugate()]])
                idx = [p, q]
                a[:, idx] = a[:, idx] @ rot
                a[idx, :] = rot.conj().T @ a[idx, :]
                a[p, q] = a[q, p] = 0.0
                a[p, p] = a[p, p].real
                a[q, q] = a[q, q].real
    raise ConvergenceError(f"Jacobi did not converge in {_MAX_SWEEPS} sweeps")


def schatten_norm(m, p=2) -> float:
    """Schatten p-norm of a Hermitian matrix, ``p`` in ``[1, inf]``.

    For Hermitian input the singular values are the moduli of the
    eigenvalues, which is all this routine supports.
    """
    p = float(p)
    if not p >= 1.0:
        raise PreconditionError(f"Schatten norm needs p >= 1, got {p}")
    lam = np.abs(hermitian_eigenvalues(m))
    if math.isinf(p):
        return float(lam.max())
    top = lam.max()
    if top == 0.0:
        return 0.0
    # scale by the largest modulus to keep large p from overflowing
    return float(top * np.sum((lam / top) ** p) ** (1.0 / p))


class DensityMatrix:
    """A validated quantum state: Hermitian, unit trace, positive semidefinite."""

    HERMITIAN_TOL = 1e-12
    TRACE_TOL = 1e-12
    EIGEN_TOL = -1e-10

    __slots__ = ("matrix",)

    def __init__(self, matrix, validate: bool = True):
        m = np.array(as_matrix(matrix), dtype=complex)
        if m.shape[0] != m.shape[1]:
            raise ShapeError(f"density matrix must be square, got {m.shape}")
        if validate:
            herm = hermiticity_error(m)
            if herm > self.HERMITIAN_TOL:
                raise PreconditionError(f"not Hermitian (deviation {herm:.3g})")
            tr = np.trace(m)
            if abs(tr - 1.0) > self.TRACE_TOL:
                raise PreconditionError(f"trace is {tr}, expected 1")
            lo = hermitian_eigenvalues(m)[0]
            if lo < self.EIGEN_TOL:
                raise PreconditionError(f"negative eigenvalue {lo:.3g}")
        m.setflags(write=False)
        object.__setattr__(self, "matrix", m)

    def __setattr__(self, name, value):
        raise AttributeError("DensityMatrix is immutable")

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    def eigenvalues(self) -> np.ndarray:
        return hermitian_eigenvalues(self.matrix)

    def __repr__(self):
        return f"DensityMatrix(dim={self.dim})"

    @classmethod
    def maximally_mixed(cls, d: int) -> "DensityMatrix":
        return cls(np.eye(d) / d, validate=False)

    @classmethod
    def diagonal(cls, probs) -> "DensityMatrix":
        return cls(np.diag(np.asarray(probs, dtype=float)))

    @classmethod
    def basis(cls, d: int, k: int) -> "DensityMatrix":
        return PureState.basis(d, k).density()


def as_density(rho) -> DensityMatrix:
    return rho if isinstance(rho, DensityMatrix) else DensityMatrix(rho)


class PureState:
    """Normalized state vector."""

    NORM_TOL = 1e-12

    __slots__ = ("amplitudes",)

    def __init__(self, amplitudes, validate: bool = True):
        v = np.array(amplitudes, dtype=complex).reshape(-1)
        if validate and abs(np.vdot(v, v).real - 1.0) > self.NORM_TOL:
            raise PreconditionError("amplitudes are not normalized")
        v.setflags(write=False)
        object.__setattr__(self, "amplitudes", v)

    def __setattr__(self, name, value):
        raise AttributeError("PureState is immutable")

    @property
    def dim(self) -> int:
        return self.amplitudes.shape[0]

    def probabilities(self) -> np.ndarray:
        return np.abs(self.amplitudes) ** 2

    def density(self) -> DensityMatrix:
        v = self.amplitudes
        return DensityMatrix(np.outer(v, v.conj()), validate=False)

    @classmethod
    def basis(cls, d: int, k: int) -> "PureState":
        if not 0 <= k < d:
            raise PreconditionError(f"basis index {k} out of range for d={d}")
        v = np.zeros(d, dtype=complex)
        v[k] = 1.0
        return cls(v, validate=False)

    def __repr__(self):
        return f"PureState(dim={self.dim})"


def von_neumann_entropy(rho) -> float:
    """Entropy in nats, with ``0 ln 0 = 0``."""
    lam = as_density(rho).eigenvalues()
    lam = lam[lam > 0.0]
    return max(0.0, float(-np.sum(lam * np.log(lam))))


def _complex_gaussian(rng: np.random.Generator, shape) -> np.ndarray:
    return (rng.standard_normal(shape) + 1j * rng.standard_normal(shape)) / math.sqrt(2.0)


def random_density(d: int, seed: int) -> DensityMatrix:
    """Hilbert-Schmidt random state ``G G^dag / tr(G G^dag)``."""
    if d < 2:
        raise PreconditionError("random_density needs d >= 2")
    g = _complex_gaussian(np.random.default_rng(seed), (d, d))
    w = g @ g.conj().T
    w = 0.5 * (w + w.conj().T)
    return DensityMatrix(w / np.trace(w).real, validate=False)


def random_haar_unitary(d: int, seed: int) -> np.ndarray:
    """Haar-distributed unitary from the QR factor of a complex Ginibre matrix.

    The columns of Q are rephased by ``r_jj / |r_jj|`` so that the
    triangular factor has a positive diagonal, which makes Q exactly Haar.
    """
    if d < 2:
        raise PreconditionError("random_haar_unitary needs d >= 2")
    z = _complex_gaussian(np.random.default_rng(seed), (d, d))
    q, r = np.linalg.qr(z)
    diag = np.diag(r)
    return q * (diag / np.abs(diag))


def matrix_to_json(m) -> list:
    """Rows of ``[re, im]`` pairs."""
    return [[[float(z.real), float(z.imag)] for z in row] for row in as_matrix(m)]


def matrix_from_json(rows) -> np.ndarray:
    try:
        return np.array([[complex(re, im) for re, im in row] for row in rows], dtype=complex)
    except (TypeError, ValueError) as exc:
        raise ShapeError(f"malformed serialized matrix: {exc}") from exc
