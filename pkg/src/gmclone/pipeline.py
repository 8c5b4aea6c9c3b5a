"""Classical state-preparation pipeline over bitstring stage files.

Three stages, each a plain LF-terminated text file:

1. ``FullBitString``   every bitstring of length 2M-1, sorted;
2. ``GMBitString``     the support strings of the two basis-clone outputs,
   sorted (their popcounts are M-1 and M, which makes them exactly the two
   popcount classes);
3. ``GMMatrix``        one ``BITS<TAB>RE<TAB>IM<TAB>CLASS`` record per
   support string, carrying the final per-ket amplitude and its parity
   class (``C0`` or ``C1``).

Coefficients stored in GMMatrix are the normalized per-ket amplitudes of
the basis-clone states (the j-sector weight divided by the square root of
the arrangement multiplicity), signs included, so the file alone suffices
to rebuild the dense states.
"""

from __future__ import annotations

import enum
from bisect import bisect_left
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from . import kernels
from .builder import StateVector, build_gm_basis
from .errors import (
    DomainError,
    InternalConsistencyError,
    ResourceLimitError,
    StageParseError,
)
from ._format import float17

FULL_ENUMERATION_LIMIT = 12  # 2^(2M-1) lines; M=12 is ~8.4M lines already

FULL_STAGE_NAME = "FullBitString"
GM_STAGE_NAME = "GMBitString"
MATRIX_STAGE_NAME = "GMMatrix"


class ParityClass(enum.Enum):
    CLONE_OF_0 = "C0"
    CLONE_OF_1 = "C1"
    NOT_GM = "NOT_GM"


@dataclass(frozen=True)
class GMMatrixRecord:
    bits: str
    coefficient: complex
    parity_class: ParityClass


@dataclass(frozen=True)
class PipelineArtifacts:
    full_path: Path
    gm_path: Path
    matrix_path: Path


def gen_full_bitstrings(M: int) -> list[str]:
    """All 2^(2M-1) bitstrings of register length 2M-1, lexicographic."""
    if M < 1:
        raise DomainError("M must be >= 1")
    if M > FULL_ENUMERATION_LIMIT:
        raise ResourceLimitError(
            f"full enumeration guarded at M <= {FULL_ENUMERATION_LIMIT}"
        )
    n = 2 * M - 1
    return [format(i, f"0{n}b") for i in range(2**n)]


def gen_gm_bitstrings(M: int) -> list[str]:
    """Sorted union of the two basis-clone supports.

    The supports are the full popcount classes M-1 and M: a support string
    of the clone of |0> has j ones in the clone sector and M-1-j in the
    anticlone sector for some j, and conversely any split of M-1 ones is
    realized.  Fixed-width lexicographic order equals numeric order.
    """
    if M < 1:
        raise DomainError("M must be >= 1")
    n = 2 * M - 1
    counts = kernels.popcounts(np.arange(2**n, dtype=np.int64))
    mask = (counts == M - 1) | (counts == M)
    return [format(i, f"0{n}b") for i in np.nonzero(mask)[0]]


def parity_classify(bits: str, M: int) -> ParityClass:
    """Popcount M-1 -> clone of |0>, popcount M -> clone of |1>."""
    if len(bits) != 2 * M - 1:
        raise DomainError(
            f"expected {2 * M - 1} bits for M={M}, got {len(bits)}"
        )
    ones = 0
    for ch in bits:
        if ch == "1":
            ones += 1
        elif ch != "0":
            raise DomainError(f"invalid bit character {ch!r}")
    if ones == M - 1:
        return ParityClass.CLONE_OF_0
    if ones == M:
        return ParityClass.CLONE_OF_1
    return ParityClass.NOT_GM


def assign_coefficients(M: int) -> list[GMMatrixRecord]:
    """Match support strings against the full enumeration and attach amplitudes.

    Membership is checked by binary search over the sorted full list; a
    support string missing from it would mean the enumeration itself is
    broken, hence the internal-consistency error.
    """
    full = gen_full_bitstrings(M)
    support = gen_gm_bitstrings(M)
    amps = {
        ParityClass.CLONE_OF_0: build_gm_basis(M, 0).amplitudes,
        ParityClass.CLONE_OF_1: build_gm_basis(M, 1).amplitudes,
    }
    records = []
    for bits in support:
        pos = bisect_left(full, bits)
        if pos == len(full) or full[pos] != bits:
            raise InternalConsistencyError(
                f"support string {bits} missing from the full enumeration"
            )
        cls = parity_classify(bits, M)
        if cls is ParityClass.NOT_GM:
            raise InternalConsistencyError(
                f"support string {bits} fell outside both parity classes"
            )
        records.append(GMMatrixRecord(bits, complex(amps[cls][int(bits, 2)]), cls))
    return records


def reconstruct_state(records, M: int, parity_class: ParityClass) -> StateVector:
    """Dense state of one parity class rebuilt from GMMatrix records."""
    n = 2 * M - 1
    amps = np.zeros(2**n, dtype=np.complex128)
    for rec in records:
        if len(rec.bits) != n:
            raise DomainError(
                f"record {rec.bits!r} does not fit a {n}-qubit register"
            )
        if rec.parity_class is parity_class:
            amps[int(rec.bits, 2)] = rec.coefficient
    return StateVector(n, amps)


# ---------------------------------------------------------------------------
# stage file I/O
# ---------------------------------------------------------------------------

def write_bitstring_stage(path, strings) -> None:
    path = Path(path)
    path.write_text("".join(s + "\n" for s in strings), encoding="ascii")


def read_bitstring_stage(path, expected_length: int | None = None) -> list[str]:
    """Parse a FullBitString/GMBitString stage; strict line grammar.

    The register width is taken from ``expected_length`` when given,
    otherwise from the first line; every later line must match it.
    """
    path = Path(path)
    strings = []
    width = expected_length
    with path.open(encoding="ascii") as handle:
        for lineno, raw in enumerate(handle, start=1):
            line = raw.rstrip("\n")
            if not line or any(ch not in "01" for ch in line):
                raise StageParseError(path, lineno, f"bad bitstring {line!r}")
            if width is None:
                width = len(line)
            if len(line) != width:
                raise StageParseError(
                    path, lineno, f"expected {width} bits, got {len(line)}"
                )
            strings.append(line)
    return strings


def write_gm_matrix(path, records) -> None:
    path = Path(path)
    lines = []
    for rec in records:
        lines.append(
            f"{rec.bits}\t{float17(rec.coefficient.real)}"
            f"\t{float17(rec.coefficient.imag)}\t{rec.parity_class.value}\n"
        )
    path.write_text("".join(lines), encoding="ascii")


def read_gm_matrix(path, expected_length: int | None = None) -> list[GMMatrixRecord]:
    path = Path(path)
    records = []
    width = expected_length
    with path.open(encoding="ascii") as handle:
        for lineno, raw in enumerate(handle, start=1):
            fields = raw.rstrip("\n").split("\t")
            if len(fields) != 4:
                raise StageParseError(path, lineno, "expected 4 tab-separated fields")
            bits, re_text, im_text, cls_text = fields
            if not bits or any(ch not in "01" for ch in bits):
                raise StageParseError(path, lineno, f"bad bitstring {bits!r}")
            if width is None:
                width = len(bits)
            if len(bits) != width:
                raise StageParseError(
                    path, lineno, f"expected {width} bits, got {len(bits)}"
                )
            try:
                coeff = complex(float(re_text), float(im_text))
            except ValueError:
                raise StageParseError(
                    path, lineno, f"unparseable coefficient {re_text!r}/{im_text!r}"
                ) from None
            if cls_text == ParityClass.CLONE_OF_0.value:
                cls = ParityClass.CLONE_OF_0
            elif cls_text == ParityClass.CLONE_OF_1.value:
                cls = ParityClass.CLONE_OF_1
            else:
                raise StageParseError(path, lineno, f"unknown class {cls_text!r}")
            records.append(GMMatrixRecord(bits, coeff, cls))
    return records


def run_pipeline(M: int, out_dir) -> tuple[PipelineArtifacts, list[GMMatrixRecord]]:
    """Run all three stages and persist them under ``out_dir``."""
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    full = gen_full_bitstrings(M)
    support = gen_gm_bitstrings(M)
    records = assign_coefficients(M)
    artifacts = PipelineArtifacts(
        full_path=out_dir / FULL_STAGE_NAME,
        gm_path=out_dir / GM_STAGE_NAME,
        matrix_path=out_dir / MATRIX_STAGE_NAME,
    )
    write_bitstring_stage(artifacts.full_path, full)
    write_bitstring_stage(artifacts.gm_path, support)
    write_gm_matrix(artifacts.matrix_path, records)
    return artifacts, records
