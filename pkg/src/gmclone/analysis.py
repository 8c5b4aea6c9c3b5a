"""Physics validation: reduced density matrices, fidelities, nonlinearity,
and the bond-dimension scaling study.

Positions are 1-indexed to match the ket convention (qubit 1 = leftmost).
Clones sit on positions 1..M, anticlones on M+1..2M-1.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .builder import GMParameters, StateVector, build_gm, build_gm_basis
from .errors import DomainError, ResourceLimitError
from .mps import bond_dimension, mps_from_state
from .qubit import Qubit, anticlone, equatorial_qubit, make_qubit
from ._format import float17

SWEEP_LIMIT = 8  # 2M-1 <= 15 qubits

SCALING_CSV_HEADER = "M,num_qubits,bond_dim,cut_ranks,tol"


@dataclass(frozen=True)
class DensityMatrix:
    dim: int
    entries: np.ndarray

    def __post_init__(self):
        if self.entries.shape != (self.dim, self.dim):
            raise DomainError("density matrix shape mismatch")


@dataclass(frozen=True)
class ScalingRow:
    M: int
    num_qubits: int
    bond_dim: int
    cut_ranks: list
    tol: float


def reduced_density(state: StateVector, keep) -> DensityMatrix:
    """Partial trace onto the given 1-indexed qubit positions."""
    keep = sorted(set(keep))
    n = state.num_qubits
    if not keep:
        raise DomainError("keep must name at least one qubit")
    if keep[0] < 1 or keep[-1] > n:
        raise DomainError(f"positions must lie in 1..{n}")
    axes = [p - 1 for p in keep]
    rest = [q for q in range(n) if q not in axes]
    tensor = state.amplitudes.reshape((2,) * n).transpose(axes + rest)
    matrix = tensor.reshape(2 ** len(axes), -1)
    rho = matrix @ matrix.conj().T
    return DensityMatrix(dim=2 ** len(axes), entries=rho)


def _single_qubit_fidelities(state, positions, target: Qubit):
    psi = target.components()
    out = []
    for pos in positions:
        rho = reduced_density(state, [pos]).entries
        out.append(float(np.real(psi.conj() @ rho @ psi)))
    return out


def clone_fidelity(state: StateVector, M: int, input: Qubit) -> list[float]:
    """Overlap of each clone's reduced state with the input, one per clone.

    By symmetry of the cloner output all M values coincide; the optimal
    universal value is (2M+1)/(3M).
    """
    if state.num_qubits != 2 * M - 1:
        raise DomainError(
            f"state has {state.num_qubits} qubits, expected {2 * M - 1}"
        )
    return _single_qubit_fidelities(state, range(1, M + 1), input)


def anticlone_fidelity(state: StateVector, M: int, input: Qubit) -> list[float]:
    """Same figure against the anticlone state, one per anticlone position.

    Reported for completeness; no optimality target is attached to it.
    """
    if state.num_qubits != 2 * M - 1:
        raise DomainError(
            f"state has {state.num_qubits} qubits, expected {2 * M - 1}"
        )
    return _single_qubit_fidelities(state, range(M + 1, 2 * M), anticlone(input))


def nonlinearity_gap(M: int, alpha: complex, beta: complex) -> float:
    """Distance between cloning the superposition and superposing the clones.

    Returns || GM(alpha 0 + beta 1) - (alpha GM(0) + beta GM(1)) || minimized
    over a global phase on the first term.  Zero at basis inputs, strictly
    positive for genuine superpositions once M >= 2 (the cloning map is not
    linear); trivially zero for M = 1.
    """
    if M < 1:
        raise DomainError("M must be >= 1")
    q = make_qubit(alpha, beta)
    cloned = build_gm(GMParameters(M, q)).amplitudes
    superposed = (
        q.alpha * build_gm_basis(M, 0).amplitudes
        + q.beta * build_gm_basis(M, 1).amplitudes
    )
    cross = abs(np.vdot(superposed, cloned))
    gap_sq = float(np.vdot(cloned, cloned).real + np.vdot(superposed, superposed).real) - 2 * cross
    return math.sqrt(max(0.0, gap_sq))


def scaling_sweep(M_min: int, M_max: int, tol: float) -> list[ScalingRow]:
    """Compile the cloner output of the fixed equatorial input for each M.

    Every row must satisfy bond_dim <= 2M; the sweep itself is reported as
    data rather than asserted beyond that bound.
    """
    if M_min < 1 or M_min > M_max:
        raise DomainError("need 1 <= M_min <= M_max")
    if M_max > SWEEP_LIMIT:
        raise ResourceLimitError(f"sweep guarded at M <= {SWEEP_LIMIT} (15 qubits)")
    input_qubit = equatorial_qubit(0.0)
    rows = []
    for M in range(M_min, M_max + 1):
        state = build_gm(GMParameters(M, input_qubit))
        mps, spectrum = mps_from_state(state, tol)
        rows.append(
            ScalingRow(
                M=M,
                num_qubits=2 * M - 1,
                bond_dim=bond_dimension(mps),
                cut_ranks=spectrum.retained_ranks(),
                tol=tol,
            )
        )
    return rows


def scaling_csv(rows) -> str:
    lines = [SCALING_CSV_HEADER]
    for row in rows:
        ranks = ";".join(str(r) for r in row.cut_ranks)
        lines.append(
            f"{row.M},{row.num_qubits},{row.bond_dim},{ranks},{float17(row.tol)}"
        )
    return "\n".join(lines) + "\n"


def write_scaling_csv(path, rows) -> None:
    Path(path).write_text(scaling_csv(rows), encoding="ascii")
