"""Matrix-product-state compilation by a successive-SVD sweep.

The coefficient tensor is repartitioned left to right: at each cut the
current remainder is reshaped to (D_k * 2, rest), SVD'd into V S W+, the
site tensor absorbs V S (singular values stay on the left factor) and W+ is
carried forward as the next remainder.  Singular values below
``tol * sigma_max`` are discarded per cut together with their factor
columns/rows; the roundtrip error is then bounded by the root-sum-square of
everything discarded.

Site k holds two D_k x D_{k+1} matrices (one per basis value of qubit k),
stored as one (2, D_k, D_{k+1}) array.  Reconstruction contracts
left boundary . A_1 ... A_n . right boundary in ascending site order.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from . import kernels
from .builder import StateVector
from .errors import DegenerateStateError, DomainError, MalformedMPSError, StageParseError
from ._format import dumps_17g

DEFAULT_TOL = 1e-12


@dataclass(frozen=True)
class MatrixProductState:
    sites: list  # site k: complex array (2, D_k, D_{k+1})
    left_boundary: np.ndarray  # (D_1,)
    right_boundary: np.ndarray  # (D_{n+1},)

    def __post_init__(self):
        self.validate()

    @property
    def num_sites(self) -> int:
        return len(self.sites)

    def bond_dims(self) -> list[int]:
        """D_1 .. D_{n+1} including the boundary bonds."""
        dims = [int(self.left_boundary.shape[0])]
        dims.extend(int(A.shape[2]) for A in self.sites)
        return dims

    def validate(self) -> None:
        if not self.sites:
            raise MalformedMPSError("MPS needs at least one site")
        if self.left_boundary.ndim != 1 or self.right_boundary.ndim != 1:
            raise MalformedMPSError("boundaries must be vectors")
        prev = self.left_boundary.shape[0]
        for k, A in enumerate(self.sites, start=1):
            if A.ndim != 3 or A.shape[0] != 2:
                raise MalformedMPSError(f"site {k} must have shape (2, D_k, D_k+1)")
            if A.shape[1] != prev:
                raise MalformedMPSError(
                    f"site {k}: expected {prev} rows, got {A.shape[1]}"
                )
            prev = A.shape[2]
        if self.right_boundary.shape[0] != prev:
            raise MalformedMPSError(
                f"right boundary has length {self.right_boundary.shape[0]}, "
                f"expected {prev}"
            )


@dataclass(frozen=True)
class BondCut:
    singular_values: np.ndarray  # full descending list, pre-truncation
    retained: int


@dataclass(frozen=True)
class BondSpectrum:
    cuts: list
    tolerance: float

    def discarded_weight(self) -> float:
        """Sum of squared discarded singular values across all cuts."""
        return float(
            sum(np.sum(cut.singular_values[cut.retained :] ** 2) for cut in self.cuts)
        )

    def retained_ranks(self) -> list[int]:
        return [cut.retained for cut in self.cuts]


def mps_from_state(state: StateVector, tol: float = DEFAULT_TOL):
    """Compile a dense state into MPS form; returns (mps, spectrum).

    ``tol`` is relative: at every cut, singular values > tol * sigma_max are
    retained.  tol = 0 keeps everything nonzero and makes the roundtrip
    exact to machine precision.
    """
    if not 0.0 <= tol < 1.0:
        raise DomainError("tol must lie in [0, 1)")
    n = state.num_qubits
    if n < 1:
        raise DomainError("need at least one qubit")
    remainder = np.ascontiguousarray(state.amplitudes, dtype=np.complex128).reshape(1, -1)
    sites = []
    cuts = []
    for _ in range(n - 1):
        matrix = remainder.reshape(remainder.shape[0] * 2, -1)
        U, S, Wh = np.linalg.svd(matrix, full_matrices=False)
        if S[0] <= 0.0:
            raise DegenerateStateError("zero state: nothing to retain at this cut")
        keep = int(np.sum(S > tol * S[0]))
        if keep == 0:
            raise DegenerateStateError("all singular values truncated at a cut")
        cuts.append(BondCut(S.copy(), keep))
        site = (U[:, :keep] * S[:keep]).reshape(-1, 2, keep).transpose(1, 0, 2)
        sites.append(np.ascontiguousarray(site))
        remainder = Wh[:keep, :]
    last = remainder.reshape(-1, 2, 1).transpose(1, 0, 2)
    sites.append(np.ascontiguousarray(last))
    mps = MatrixProductState(
        sites=sites,
        left_boundary=np.ones(1, dtype=np.complex128),
        right_boundary=np.ones(1, dtype=np.complex128),
    )
    return mps, BondSpectrum(cuts=cuts, tolerance=tol)


def mps_to_state(mps: MatrixProductState) -> StateVector:
    """Contract the MPS back into dense amplitudes (no renormalization)."""
    mps.validate()
    amps = kernels.contract_sweep(mps.sites, mps.left_boundary, mps.right_boundary)
    return StateVector(mps.num_sites, amps)


def bond_dimension(mps: MatrixProductState) -> int:
    """Largest bond dimension, boundaries included."""
    return max(mps.bond_dims())


def combine_basis_mps(
    mps0: MatrixProductState,
    mps1: MatrixProductState,
    alpha: complex,
    beta: complex,
) -> MatrixProductState:
    """Block-direct-sum of the two basis-clone MPSs with doubled bonds.

    Each site stacks the input site tensors block-diagonally; the input
    weights alpha, beta ride on the left boundary.  The reconstruction is
    exactly alpha * state(mps0) + beta * state(mps1), which is generally a
    different state from compiling the cloner output of the superposed
    input (the cloning map is nonlinear).
    """
    if mps0.num_sites != mps1.num_sites:
        raise DomainError("MPS lengths differ")
    sites = []
    for A, B in zip(mps0.sites, mps1.sites):
        block = np.zeros(
            (2, A.shape[1] + B.shape[1], A.shape[2] + B.shape[2]),
            dtype=np.complex128,
        )
        block[:, : A.shape[1], : A.shape[2]] = A
        block[:, A.shape[1] :, A.shape[2] :] = B
        sites.append(block)
    left = np.concatenate(
        [complex(alpha) * mps0.left_boundary, complex(beta) * mps1.left_boundary]
    )
    right = np.concatenate([mps0.right_boundary, mps1.right_boundary])
    return MatrixProductState(sites=sites, left_boundary=left, right_boundary=right)


# ---------------------------------------------------------------------------
# export / import
# ---------------------------------------------------------------------------

def _complex_rows(array: np.ndarray) -> list:
    flat = array.reshape(-1)
    return [[float(z.real), float(z.imag)] for z in flat]


def export_document(mps: MatrixProductState, spectrum: BondSpectrum | None = None) -> dict:
    doc = {
        "num_qubits": mps.num_sites,
        "sites": [
            {
                "shape": [int(d) for d in A.shape],
                "entries": _complex_rows(A),  # row-major over (bit, row, col)
            }
            for A in mps.sites
        ],
        "left_boundary": _complex_rows(mps.left_boundary),
        "right_boundary": _complex_rows(mps.right_boundary),
    }
    if spectrum is not None:
        doc["spectrum"] = {
            "tolerance": float(spectrum.tolerance),
            "cuts": [
                {
                    "singular_values": [float(s) for s in cut.singular_values],
                    "retained": int(cut.retained),
                }
                for cut in spectrum.cuts
            ],
        }
    return doc


def save_mps(path, mps: MatrixProductState, spectrum: BondSpectrum | None = None) -> None:
    Path(path).write_text(dumps_17g(export_document(mps, spectrum)), encoding="ascii")


def _to_complex_array(rows, shape, path) -> np.ndarray:
    try:
        values = np.array([complex(re, im) for re, im in rows], dtype=np.complex128)
        return values.reshape(shape)
    except (TypeError, ValueError):
        raise StageParseError(path, 0, "malformed complex entries") from None


def load_mps(path):
    """Inverse of :func:`save_mps`; returns (mps, spectrum-or-None)."""
    path = Path(path)
    try:
        doc = json.loads(path.read_text(encoding="ascii"))
    except json.JSONDecodeError as exc:
        raise StageParseError(path, exc.lineno, exc.msg) from None
    try:
        sites = [
            _to_complex_array(site["entries"], tuple(site["shape"]), path)
            for site in doc["sites"]
        ]
        left = _to_complex_array(doc["left_boundary"], (-1,), path)
        right = _to_complex_array(doc["right_boundary"], (-1,), path)
    except (KeyError, TypeError):
        raise StageParseError(path, 0, "missing or malformed MPS fields") from None
    mps = MatrixProductState(sites=sites, left_boundary=left, right_boundary=right)
    spectrum = None
    if "spectrum" in doc:
        spec = doc["spectrum"]
        spectrum = BondSpectrum(
            cuts=[
                BondCut(
                    np.array(cut["singular_values"], dtype=np.float64),
                    int(cut["retained"]),
                )
                for cut in spec["cuts"]
            ],
            tolerance=float(spec["tolerance"]),
        )
    return mps, spectrum
