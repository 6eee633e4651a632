"""Key-set channels, PQC certification and the encrypt/decrypt protocol."""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .ensembles import UnitaryEnsemble
from .linalg import (
    EXACT_TOL,
    DensityMatrix,
    PreconditionError,
    ShapeError,
    as_density,
    max_abs,
    random_haar_unitary,
    schatten_norm,
    von_neumann_entropy,
)

REPORT_NORMS = (1.0, 2.0, math.inf)


def _conjugate_sum(members, m: np.ndarray) -> np.ndarray:
    acc = np.zeros_like(m, dtype=complex)
    for u in members:
        acc += u @ m @ u.conj().T
    return acc


def _check_dims(e: UnitaryEnsemble, d: int):
    if e.dim != d:
        raise ShapeError(f"ensemble acts on d={e.dim}, state has d={d}")


def apply_linear(e: UnitaryEnsemble, m) -> np.ndarray:
    """The channel on an arbitrary (not necessarily positive) operator."""
    m = np.asarray(m, dtype=complex)
    _check_dims(e, m.shape[0])
    return _conjugate_sum(e.members, m) / len(e)


def apply(e: UnitaryEnsemble, rho) -> DensityMatrix:
    """``(1/|K|) sum_j U_j rho U_j^dag``."""
    rho = as_density(rho)
    out = apply_linear(e, rho.matrix)
    # unitary conjugation keeps the state valid; only rounding is removed here
    return DensityMatrix(0.5 * (out + out.conj().T), validate=False)


def _eps_factor(d: int, p: float) -> float:
    return float(d) if math.isinf(p) else d ** ((p - 1.0) / p)


def epsilon_of(e: UnitaryEnsemble, rho, p=2) -> float:
    """Smallest ``eps`` with ``||L(rho) - 1/d||_p <= eps / d^((p-1)/p)``."""
    p = float(p)
    if not p >= 1.0:
        raise PreconditionError(f"p must be >= 1, got {p}")
    out = apply(e, rho)
    d = out.dim
    diff = out.matrix - np.eye(d) / d
    return schatten_norm(diff, p) * _eps_factor(d, p)


def _matrix_unit(d: int, j: int, k: int) -> np.ndarray:
    m = np.zeros((d, d), dtype=complex)
    m[j, k] = 1.0
    return m


def completeness_residual(e: UnitaryEnsemble) -> float:
    """``max_{j,k} max|L(E_jk) - delta_jk 1/d|`` over all matrix units."""
    d = e.dim
    target = np.eye(d) / d
    worst = 0.0
    for j in range(d):
        for k in range(d):
            out = apply_linear(e, _matrix_unit(d, j, k))
            worst = max(worst, max_abs(out - target) if j == k else max_abs(out))
    return worst


def is_complete(e: UnitaryEnsemble, tol: float = EXACT_TOL) -> bool:
    """Exact completeness check on the ``d**2`` matrix units.

    The channel is linear, so agreeing with ``rho -> tr(rho) 1/d`` on a
    basis of the operator space certifies it on every state.
    """
    return completeness_residual(e) <= tol


def probe_states(d: int) -> list[DensityMatrix]:
    """Tomographically complete pure states: ``|j>``, ``|j>+|k>``, ``|j>+i|k>``."""
    states = [DensityMatrix.basis(d, j) for j in range(d)]
    for j in range(d):
        for k in range(j + 1, d):
            for phase in (1.0, 1j):
                v = np.zeros(d, dtype=complex)
                v[j], v[k] = 1.0, phase
                v /= math.sqrt(2.0)
                states.append(DensityMatrix(np.outer(v, v.conj()), validate=False))
    return states


@dataclass(frozen=True)
class PqcReport:
    dim: int
    cardinality: int
    label: str
    epsilon_by_p: dict
    entropy_nats: float
    complete: bool
    tolerance: float
    completeness_residual: float
    extra: dict = field(default_factory=dict)

    @property
    def entropy_bits(self) -> float:
        return self.entropy_nats / math.log(2.0)

    def to_json(self) -> dict:
        return {
            "label": self.label,
            "dim": self.dim,
            "cardinality": self.cardinality,
            "epsilon_by_p": {_p_key(p): v for p, v in self.epsilon_by_p.items()},
            "entropy_nats": self.entropy_nats,
            "entropy_bits": self.entropy_bits,
            "max_entropy_nats": math.log(self.dim),
            "complete": self.complete,
            "tolerance": self.tolerance,
            "completeness_residual": self.completeness_residual,
        }


def _p_key(p: float) -> str:
    return "inf" if math.isinf(p) else format(p, "g")


def pqc_report(e: UnitaryEnsemble, tol: float = EXACT_TOL) -> PqcReport:
    """Worst-case ``eps`` and output entropy over :func:`probe_states`."""
    outputs = [apply(e, rho) for rho in probe_states(e.dim)]
    target = np.eye(e.dim) / e.dim
    eps = {}
    for p in REPORT_NORMS:
        eps[p] = max(schatten_norm(out.matrix - target, p) * _eps_factor(e.dim, p) for out in outputs)
    entropy = min(von_neumann_entropy(out) for out in outputs)
    residual = completeness_residual(e)
    complete = residual <= tol and all(v <= tol for v in eps.values())
    return PqcReport(e.dim, len(e), e.label, eps, entropy, complete, tol, residual)


def _check_key(e: UnitaryEnsemble, key_index: int):
    if not 0 <= key_index < len(e):
        raise IndexError(f"key index {key_index} out of range for |K|={len(e)}")


def encrypt(rho, e: UnitaryEnsemble, key_index: int) -> DensityMatrix:
    """``U_k rho U_k^dag``."""
    rho = as_density(rho)
    _check_dims(e, rho.dim)
    _check_key(e, key_index)
    u = e.members[key_index]
    return DensityMatrix(u @ rho.matrix @ u.conj().T, validate=False)


def decrypt(sigma, e: UnitaryEnsemble, key_index: int) -> DensityMatrix:
    """``U_k^dag sigma U_k``; any key is accepted, a wrong one just gives a different state."""
    sigma = as_density(sigma)
    _check_dims(e, sigma.dim)
    _check_key(e, key_index)
    u = e.members[key_index]
    return DensityMatrix(u.conj().T @ sigma.matrix @ u, validate=False)


def fidelity(rho, sigma) -> float:
    """Uhlmann fidelity ``(tr sqrt(sqrt(rho) sigma sqrt(rho)))^2``."""
    a, b = as_density(rho).matrix, as_density(sigma).matrix
    w, v = np.linalg.eigh(a)
    sqrt_a = (v * np.sqrt(np.clip(w, 0, None))) @ v.conj().T
    inner = np.linalg.eigvalsh(sqrt_a @ b @ sqrt_a)
    return float(np.sum(np.sqrt(np.clip(inner, 0, None))) ** 2)


def trace_distance(rho, sigma) -> float:
    a, b = as_density(rho).matrix, as_density(sigma).matrix
    return 0.5 * schatten_norm(a - b, 1)


def haar_average_estimate(d: int, n: int, seed: int, rho) -> DensityMatrix:
    """Mean of ``n`` Haar conjugations; sample ``j`` uses seed ``seed + j``.

    Samples are accumulated in index order, so the result is a pure
    function of the arguments.
    """
    if n < 1:
        raise PreconditionError("haar_average_estimate needs n >= 1")
    rho = as_density(rho)
    if rho.dim != d:
        raise ShapeError(f"state has d={rho.dim}, expected {d}")
    acc = np.zeros((d, d), dtype=complex)
    for j in range(n):
        u = random_haar_unitary(d, seed + j)
        acc += u @ rho.matrix @ u.conj().T
    acc /= n
    return DensityMatrix(0.5 * (acc + acc.conj().T), validate=False)
