"""Command-line front end.

Exit status: 0 on success, 1 when verification or classification finds an
internal inconsistency, 2 on usage, parse or configuration errors.
"""
from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from pathlib import Path
from typing import Optional, Sequence

import numpy as np

from . import analysis
from .circuit_format import ParseError, Program, parse
from .cost_model import ConfigError, TechParams, format_report, wafer_report
from .gate_model import format_address
from .reference_oracle import cross_check
from .state_core import CoreError, load_signs, max_lines, readout
from .transforms import extract_common_factor, fwht, preprocess

EXIT_OK, EXIT_INTERNAL, EXIT_USAGE = 0, 1, 2
PRICED_CONTROLS = 2


class UsageError(Exception):
    pass


def format_vector(vec: Sequence[int]) -> str:
    """``(1 -1 1 -1, 1 -1 1 -1)``: space separated, a comma after every 4 entries."""
    items = [str(int(v)) for v in vec]
    groups = [" ".join(items[i:i + 4]) for i in range(0, len(items), 4)]
    return "(" + ", ".join(groups) + ")"


@dataclass
class RunReport:
    n: int
    loaded_vector: np.ndarray
    final_core_vector: np.ndarray
    spectrum: Optional[np.ndarray]
    common_factor: int
    reduced: np.ndarray
    spectral_report: Optional[analysis.SpectralReport] = None

    def as_dict(self) -> dict:
        out = {
            "n": self.n,
            "loaded_vector": self.loaded_vector.tolist(),
            "final_core_vector": self.final_core_vector.tolist(),
            "spectrum": None if self.spectrum is None else self.spectrum.tolist(),
            "common_factor": self.common_factor,
            "reduced": self.reduced.tolist(),
        }
        if self.spectral_report is not None:
            out["spectral_report"] = self.spectral_report.as_dict()
        return out

    def as_text(self) -> str:
        lines = [
            f"lines           {self.n}",
            f"loaded          {format_vector(self.loaded_vector)}",
            f"core readout    {format_vector(self.final_core_vector)}",
        ]
        if self.spectrum is not None:
            lines.append(f"spectrum        {format_vector(self.spectrum)}")
        lines.append(f"common factor   {self.common_factor}")
        lines.append(f"reduced         {format_vector(self.reduced)}")
        nonzero = [format_address(a, self.n) for a in np.flatnonzero(self.reduced).tolist()]
        lines.append("nonzero at      " + (" ".join(nonzero) if nonzero else "-"))
        if self.spectral_report is not None:
            lines.append(_verdict_line(self.spectral_report))
        return "\n".join(lines)


def _verdict_line(rep: analysis.SpectralReport) -> str:
    flags = [name for name in ("constant", "balanced", "affine") if getattr(rep, name)]
    basis = f" at {format_address(rep.basis_address, rep.n)}" if rep.is_single_basis else ""
    return f"verdicts        {' '.join(flags) or 'none'}{basis} (marker entry {rep.magnitude_at_marker})"


def run_program(program: Program, spectral: bool = False) -> RunReport:
    """Preprocess, load the core, apply every step by tag update, read out, postprocess."""
    cap = max_lines()
    if program.n > cap:
        raise UsageError(f"program needs {program.n} lines, cap is {cap} (set STATCORE_MAX_N to raise it)")
    loaded = preprocess(program.n, program.start_index, program.pre_hadamard)
    core = load_signs(program.n, loaded).run(program.steps)
    vector = readout(core)
    spectrum = fwht(vector) if program.post_hadamard else None
    factor, reduced = extract_common_factor(vector if spectrum is None else spectrum)
    report = None
    if spectral and spectrum is not None:
        report = analysis.classify_spectrum(spectrum, program.n)
    return RunReport(program.n, loaded, vector, spectrum, factor, reduced, report)


def _dump(doc: dict) -> str:
    return json.dumps(doc, sort_keys=True, indent=2)


def cmd_run(args) -> int:
    try:
        program = parse(Path(args.file).read_text(encoding="utf-8"))
    except OSError as exc:
        raise UsageError(f"cannot read {args.file}: {exc.strerror}") from None
    except ParseError as exc:
        raise UsageError(f"{args.file}: {exc}") from None
    for i, step in enumerate(program.steps):
        if len(step.controls) > PRICED_CONTROLS:
            print(f"warning: step {i} ({step}) has {len(step.controls)} controls; "
                  f"the hardware plan wires at most {PRICED_CONTROLS}", file=sys.stderr)
    report = run_program(program, spectral=args.spectral)
    print(_dump(report.as_dict()) if args.format == "structured" else report.as_text())
    return EXIT_OK


def cmd_classify(args) -> int:
    try:
        tt = analysis.TruthTable.parse(args.table)
    except analysis.TruthTableError as exc:
        raise UsageError(str(exc)) from None
    trace = analysis.run_pipeline(tt)
    report = analysis.classify_spectrum(trace.spectrum, trace.circuit.n)
    truth = analysis.classify_truth_table(tt)
    problems = analysis.disagreements(report, truth)
    if args.format == "structured":
        print(_dump({
            "table": str(tt),
            "oracle_steps": [str(s) for s in trace.circuit.steps],
            "core_vector": trace.core_vector.tolist(),
            "spectral": report.as_dict(),
            "ground_truth": truth.as_dict(),
            "internal_errors": problems,
        }))
    else:
        gt = [name for name in ("constant", "balanced", "symmetric", "anti_symmetric") if getattr(truth, name)]
        print(f"table           {tt} (x = {tt.x}, lines = {trace.circuit.n})")
        print("oracle          " + (" ".join(str(s) for s in trace.circuit.steps) or "(no steps)"))
        print(f"core readout    {format_vector(trace.core_vector)}")
        print(f"spectrum        {format_vector(trace.spectrum)}")
        print(_verdict_line(report))
        print(f"ground truth    {' '.join(gt) or 'none'}")
        for p in problems:
            print(f"INTERNAL ERROR: {p}", file=sys.stderr)
    return EXIT_INTERNAL if problems else EXIT_OK


def cmd_cost(args) -> int:
    try:
        params = TechParams.from_config(Path(args.config).read_text()) if args.config else TechParams()
    except OSError as exc:
        raise UsageError(f"cannot read {args.config}: {exc.strerror}") from None
    except ConfigError as exc:
        raise UsageError(str(exc)) from None
    report = wafer_report(params)
    print(_dump(report.as_dict()) if args.format == "structured" else format_report(report))
    return EXIT_OK


def cmd_verify(args) -> int:
    cap = max_lines()
    if not 1 <= args.max_n <= cap:
        raise UsageError(f"--max-n must be in [1, {cap}]")
    if args.trials < 0:
        raise UsageError("--trials must be >= 0")
    result = cross_check(args.seed, args.trials, args.max_n)
    if args.format == "structured":
        print(_dump({
            "seed": result.seed,
            "trials": result.trials,
            "max_n": result.max_n,
            "checked": result.checked,
            "passed": result.passed,
            "counterexample": None if result.passed else result.failure.describe(),
        }))
    elif result.passed:
        print(f"pass: {result.checked} random circuits (seed {args.seed}, n <= {args.max_n}) "
              "match the dense reference")
    else:
        print(result.failure.describe())
        print(f"FAIL after {result.checked} of {result.trials} trials")
    return EXIT_OK if result.passed else EXIT_INTERNAL


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="statcore", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    fmt = dict(choices=("text", "structured"), default="text")

    p = sub.add_parser("run", help="execute a .qwd program")
    p.add_argument("file")
    p.add_argument("--format", **fmt)
    p.add_argument("--spectral", action="store_true", help="classify the post-Hadamard spectrum")
    p.set_defaults(func=cmd_run)

    p = sub.add_parser("classify", help="classify a truth table with one oracle call")
    p.add_argument("table", help="e.g. 01,10 or 0110|1001")
    p.add_argument("--format", **fmt)
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("cost", help="transistor/area/delay report")
    p.add_argument("--config", help="key = value file overriding technology parameters")
    p.add_argument("--format", **fmt)
    p.set_defaults(func=cmd_cost)

    p = sub.add_parser("verify", help="check the core against the dense reference")
    p.add_argument("--seed", type=int, default=1)
    p.add_argument("--trials", type=int, default=200)
    p.add_argument("--max-n", type=int, default=10)
    p.add_argument("--format", **fmt)
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (UsageError, CoreError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
