"""Fourier transforms, the extended QFT and the 4-polytope correspondence table."""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .linalg import PreconditionError, PureState
from .polytopes import REGULAR_4, Hypervector, UnknownPolytopeError, hypervector


def qft_matrix(d: int) -> np.ndarray:
    """Entry ``(k, j)`` is ``w^(jk) / sqrt(d)``, ``w = exp(2 pi i / d)``."""
    if d < 2:
        raise PreconditionError("qft_matrix needs d >= 2")
    k = np.arange(d)
    # exponent reduced mod d keeps the phase argument small
    return np.exp(2j * np.pi * (np.outer(k, k) % d) / d) / math.sqrt(d)


def extended_qft_map(j: int, d: int, D: int) -> PureState:
    """Image of ``|j>`` (``0 <= j < d``) as a uniform superposition over ``D >= d`` levels.

    Phases use the ``D``-th root of unity so that ``D == d`` reproduces the
    columns of :func:`qft_matrix`.
    """
    if D < d:
        raise PreconditionError(f"extended QFT needs D >= d, got D={D}, d={d}")
    if not 0 <= j < d:
        raise PreconditionError(f"basis index {j} out of range for d={d}")
    ell = np.arange(D)
    amps = np.exp(2j * np.pi * ((j * ell) % D) / D) / math.sqrt(D)
    return PureState(amps)


# Table I data: cells s and basis-vector count D per polytope. Not derived.
TABLE_I = {
    "simplex": (5, 20),
    "hypercube": (8, 48),
    "tesseract16": (16, 96),
    "octaplex": (24, 192),
    "dodecaplex": (120, 1440),
    "tetraplex": (600, 12000),
}
OPTIMAL_QUTRIT_CARDINALITY = 9


@dataclass(frozen=True)
class HypervectorPartition:
    D: int
    cells: tuple
    assigned_hypervector: Hypervector

    @property
    def s(self) -> int:
        return len(self.cells)

    @property
    def t(self) -> int:
        return self.assigned_hypervector.t


def hypervector_partition(polytope_name: str) -> HypervectorPartition:
    """Split ``range(D)`` into ``s`` contiguous blocks of ``t = D / s``."""
    try:
        s, D = TABLE_I[polytope_name]
    except KeyError:
        raise UnknownPolytopeError(f"no Table I row for {polytope_name!r}; choose from {sorted(TABLE_I)}") from None
    t = D // s
    cells = tuple(tuple(range(c * t, (c + 1) * t)) for c in range(s))
    return HypervectorPartition(D, cells, hypervector(t))


@dataclass(frozen=True)
class CorrespondenceRow:
    polytope_name: str
    label: str
    schlaefli: tuple | None
    symmetry_group: str | None
    channel: str
    cells: int | None
    hypervector_t: int | None
    basis_vectors: int
    cardinality: int
    optimal: bool
    secure: bool
    ensemble: str | None = None

    def __post_init__(self):
        if self.cells is not None and self.cells * self.hypervector_t != self.basis_vectors:
            raise PreconditionError(f"{self.polytope_name}: s * t != D")
        if self.cardinality != self.basis_vectors:
            raise PreconditionError(f"{self.polytope_name}: cardinality != basis vectors")

    def to_json(self) -> dict:
        return {
            "polytope_name": self.polytope_name,
            "label": self.label,
            "schlaefli": list(self.schlaefli) if self.schlaefli else None,
            "symmetry_group": self.symmetry_group,
            "channel": self.channel,
            "cells": self.cells,
            "hypervector_t": self.hypervector_t,
            "basis_vectors": self.basis_vectors,
            "cardinality": self.cardinality,
            "optimal": self.optimal,
            "secure": self.secure,
            "ensemble": self.ensemble,
        }


_CHANNEL_NAMES = {
    "simplex": "Lambda_S",
    "hypercube": "Lambda_H",
    "tesseract16": "Lambda_T1",
    "octaplex": "Lambda_O",
    "dodecaplex": "Lambda_D",
    "tetraplex": "Lambda_T2",
}


def correspondence_report() -> list[CorrespondenceRow]:
    """The optimal qutrit entry followed by the six 4-polytope rows."""
    rows = [
        CorrespondenceRow(
            polytope_name="conjectured",
            label="Conj.",
            schlaefli=None,
            symmetry_group=None,
            channel="Lambda_L",
            cells=None,
            hypervector_t=None,
            basis_vectors=OPTIMAL_QUTRIT_CARDINALITY,
            cardinality=OPTIMAL_QUTRIT_CARDINALITY,
            optimal=True,
            secure=True,
            ensemble="gell-mann",
        )
    ]
    for name, (s, D) in TABLE_I.items():
        label, schlaefli, group, _counts, _build = REGULAR_4[name]
        rows.append(
            CorrespondenceRow(
                polytope_name=name,
                label=label,
                schlaefli=schlaefli,
                symmetry_group=group,
                channel=_CHANNEL_NAMES[name],
                cells=s,
                hypervector_t=D // s,
                basis_vectors=D,
                cardinality=D,
                optimal=False,
                secure=True,
            )
        )
    return rows
