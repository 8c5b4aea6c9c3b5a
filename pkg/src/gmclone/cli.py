"""Command-line driver: prepare / compile / analyze / sweep.

Exit codes: 0 success, 2 usage error, 3 resource guard, 4 internal
consistency failure, 1 anything else.  All outputs are deterministic —
identical invocations produce byte-identical files.
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from . import analysis, mps, pipeline
from .builder import GMParameters, StateVector, build_gm
from .errors import (
    GMCloneError,
    InternalConsistencyError,
    ResourceLimitError,
    UsageError,
)
from .qubit import Qubit, equatorial_qubit, make_qubit
from ._format import dumps_17g, float17

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_USAGE = 2
EXIT_RESOURCE = 3
EXIT_INTERNAL = 4


@dataclass(frozen=True)
class RunConfig:
    command: str
    clones: int
    input_spec: str
    tol: float
    out_dir: Path
    format: str

    def __post_init__(self):
        if self.clones < 1:
            raise UsageError("--clones must be >= 1")
        if not 0.0 <= self.tol < 1.0:
            raise UsageError("--tol must lie in [0, 1)")
        if self.format not in ("json", "csv"):
            raise UsageError("--format must be json or csv")


def parse_input_spec(spec: str) -> Qubit:
    """SPEC grammar: basis:0 | basis:1 | equatorial:FLOAT | amps:RE,IM,RE,IM."""
    tag, _, payload = spec.partition(":")
    try:
        if tag == "basis":
            bit = int(payload)
            if bit not in (0, 1):
                raise ValueError
            return Qubit(1.0 + 0j, 0j) if bit == 0 else Qubit(0j, 1.0 + 0j)
        if tag == "equatorial":
            return equatorial_qubit(float(payload))
        if tag == "amps":
            parts = [float(x) for x in payload.split(",")]
            if len(parts) != 4:
                raise ValueError
            return make_qubit(complex(parts[0], parts[1]), complex(parts[2], parts[3]))
    except (ValueError, GMCloneError):
        raise UsageError(f"bad --input spec {spec!r}") from None
    raise UsageError(f"unknown --input tag {tag!r}")


def _basis_bit(spec: str):
    tag, _, payload = spec.partition(":")
    if tag == "basis" and payload in ("0", "1"):
        return int(payload)
    return None


def cmd_prepare(cfg: RunConfig) -> int:
    artifacts, records = pipeline.run_pipeline(cfg.clones, cfg.out_dir)
    count0 = sum(
        1 for r in records if r.parity_class is pipeline.ParityClass.CLONE_OF_0
    )
    count1 = len(records) - count0
    print(f"FullBitString: {2 ** (2 * cfg.clones - 1)} lines -> {artifacts.full_path}")
    print(f"GMBitString:   {len(records)} lines -> {artifacts.gm_path}")
    print(f"GMMatrix:      {len(records)} records -> {artifacts.matrix_path}")
    print(f"parity classes: C0={count0} C1={count1}")
    return EXIT_OK


def _compile_source_state(cfg: RunConfig) -> tuple[StateVector, str]:
    bit = _basis_bit(cfg.input_spec)
    matrix_path = cfg.out_dir / pipeline.MATRIX_STAGE_NAME
    if bit is not None and matrix_path.is_file():
        records = pipeline.read_gm_matrix(
            matrix_path, expected_length=2 * cfg.clones - 1
        )
        cls = (
            pipeline.ParityClass.CLONE_OF_0
            if bit == 0
            else pipeline.ParityClass.CLONE_OF_1
        )
        return pipeline.reconstruct_state(records, cfg.clones, cls), "gm_matrix"
    q = parse_input_spec(cfg.input_spec)
    return build_gm(GMParameters(cfg.clones, q)), "builder"


def cmd_compile(cfg: RunConfig) -> int:
    state, source = _compile_source_state(cfg)
    compiled, spectrum = mps.mps_from_state(state, cfg.tol)
    roundtrip = mps.mps_to_state(compiled)
    error = float(np.linalg.norm(state.amplitudes - roundtrip.amplitudes))
    cfg.out_dir.mkdir(parents=True, exist_ok=True)
    export_path = cfg.out_dir / "mps.json"
    report_path = cfg.out_dir / "compile_report.json"
    mps.save_mps(export_path, compiled, spectrum)
    report = {
        "M": cfg.clones,
        "num_qubits": state.num_qubits,
        "input": cfg.input_spec,
        "tol": float(cfg.tol),
        "source": source,
        "bond_dims": compiled.bond_dims(),
        "retained_ranks": spectrum.retained_ranks(),
        "singular_values_per_cut": [
            [float(s) for s in cut.singular_values] for cut in spectrum.cuts
        ],
        "roundtrip_error": error,
    }
    report_path.write_text(dumps_17g(report), encoding="ascii")
    print(f"MPS export -> {export_path}")
    print(f"report     -> {report_path}")
    print(f"bond_dims: {compiled.bond_dims()}  roundtrip_error: {float17(error)}")
    return EXIT_OK


def cmd_analyze(cfg: RunConfig) -> int:
    q = parse_input_spec(cfg.input_spec)
    state = build_gm(GMParameters(cfg.clones, q))
    clones = analysis.clone_fidelity(state, cfg.clones, q)
    anticlones = analysis.anticlone_fidelity(state, cfg.clones, q)
    gap = analysis.nonlinearity_gap(cfg.clones, q.alpha, q.beta)
    if cfg.format == "csv":
        print("metric,value")
        print("clone_fidelities," + ";".join(float17(f) for f in clones))
        print("anticlone_fidelities," + ";".join(float17(f) for f in anticlones))
        print("nonlinearity_gap," + float17(gap))
    else:
        report = {
            "M": cfg.clones,
            "input": cfg.input_spec,
            "clone_fidelities": clones,
            "anticlone_fidelities": anticlones,
            "nonlinearity_gap": gap,
        }
        print(dumps_17g(report), end="")
    return EXIT_OK


def cmd_sweep(cfg: RunConfig) -> int:
    rows = analysis.scaling_sweep(1, cfg.clones, cfg.tol)
    cfg.out_dir.mkdir(parents=True, exist_ok=True)
    csv_path = cfg.out_dir / "scaling.csv"
    analysis.write_scaling_csv(csv_path, rows)
    print(f"scaling CSV -> {csv_path}")
    for row in rows:
        print(
            f"M={row.M} qubits={row.num_qubits} "
            f"bond_dim={row.bond_dim} (bound {2 * row.M})"
        )
    return EXIT_OK


_HANDLERS = {
    "prepare": cmd_prepare,
    "compile": cmd_compile,
    "analyze": cmd_analyze,
    "sweep": cmd_sweep,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="gmclone",
        description=(
            "Simulate the 1->M universal cloning machine output, prepare it "
            "through the parity bitstring pipeline, and compile it to an MPS."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p, with_input=True, with_tol=True):
        p.add_argument("--clones", type=int, required=True, help="number of clones M")
        if with_input:
            p.add_argument(
                "--input",
                default="equatorial:0.0",
                help="basis:0 | basis:1 | equatorial:PHI | amps:RE,IM,RE,IM",
            )
        if with_tol:
            p.add_argument(
                "--tol", type=float, default=mps.DEFAULT_TOL,
                help="relative singular-value cutoff in [0, 1)",
            )
        p.add_argument("--out", type=Path, default=Path("."), help="output directory")
        p.add_argument("--format", choices=("json", "csv"), default="json")

    add_common(sub.add_parser("prepare", help="run the bitstring pipeline stages"),
               with_input=False, with_tol=False)
    add_common(sub.add_parser("compile", help="compile a cloner output state to MPS"))
    add_common(sub.add_parser("analyze", help="fidelities and nonlinearity gap"),
               with_tol=False)
    add_common(sub.add_parser("sweep", help="bond-dimension scaling study M=1..clones"),
               with_input=False)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        cfg = RunConfig(
            command=args.command,
            clones=args.clones,
            input_spec=getattr(args, "input", "basis:0"),
            tol=getattr(args, "tol", 0.0),
            out_dir=args.out,
            format=args.format,
        )
        return _HANDLERS[cfg.command](cfg)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ResourceLimitError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_RESOURCE
    except InternalConsistencyError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    except GMCloneError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAILURE


def entry_point() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry_point()
