"""Truth tables, oracle synthesis and Deutsch-Jozsa style classification.

A function ``f`` of ``x`` bits becomes a circuit on ``n = x + 1`` lines: domain
bit ``j`` (LSB = 0) sits on line ``A_{j+1}`` and ``A0`` receives ``f``. Running
init ``0...01`` -> Hadamard -> oracle -> Hadamard leaves ``2 * sum_a (-1)**f(a)``
at the marker address ``0...01``.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from .gate_model import Circuit, GateStep
from .state_core import load_signs, readout
from .transforms import fwht, preprocess

SEPARATORS = ",|"
MARKER = 1


class TruthTableError(ValueError):
    pass


@dataclass(frozen=True)
class TruthTable:
    """``bits[i] = f(i)``; the index's MSB is the highest domain line."""

    bits: tuple[bool, ...]

    def __post_init__(self):
        object.__setattr__(self, "bits", tuple(bool(b) for b in self.bits))
        size = len(self.bits)
        if size == 0 or size & (size - 1):
            raise TruthTableError(f"truth table length must be a power of two, got {size}")

    @property
    def x(self) -> int:
        return len(self.bits).bit_length() - 1

    @classmethod
    def parse(cls, text: str) -> "TruthTable":
        """Read a string of '0'/'1'; ',' and '|' are ignored, e.g. ``"0110|1001"``."""
        chars = [c for c in text.strip() if c not in SEPARATORS]
        bad = [c for c in chars if c not in "01"]
        if bad:
            raise TruthTableError(f"unexpected character {bad[0]!r} in truth table {text!r}")
        return cls(tuple(c == "1" for c in chars))

    @classmethod
    def from_int(cls, x: int, value: int) -> "TruthTable":
        """Table whose printed string is ``value`` in binary, first entry = MSB."""
        size = 1 << x
        return cls(tuple(bool(value >> (size - 1 - i) & 1) for i in range(size)))

    def __call__(self, a: int) -> bool:
        return self.bits[a]

    def __str__(self) -> str:
        return "".join("1" if b else "0" for b in self.bits)


Monomial = frozenset  # of circuit line indices in 1..x; the empty set is the constant 1


def anf(tt: TruthTable) -> set[frozenset[int]]:
    """Algebraic normal form via the GF(2) Moebius butterfly.

    ``f = XOR over monomials m of AND_{k in m} A_k``.
    """
    coeff = np.array(tt.bits, dtype=np.uint8)
    h = 1
    while h < coeff.size:
        blocks = coeff.reshape(-1, 2, h)
        blocks[:, 1, :] ^= blocks[:, 0, :]
        h *= 2
    return {_lines_of(mask) for mask in np.flatnonzero(coeff).tolist()}


def _lines_of(mask: int) -> frozenset[int]:
    return frozenset(j + 1 for j in range(mask.bit_length()) if mask >> j & 1)


def _line_mask(monomial: frozenset[int]) -> int:
    return sum(1 << k for k in monomial)


def evaluate_anf(monomials, a: int) -> bool:
    out = False
    for m in monomials:
        out ^= all(a >> (k - 1) & 1 for k in m)
    return out


def synthesize_oracle(tt: TruthTable) -> Circuit:
    """One NOT on ``A0`` per ANF monomial, controlled by that monomial's lines.

    Steps are ordered by degree, then by line mask, so ``0110`` gives
    ``CX A1 A0`` before ``CX A2 A0``. All steps commute anyway.
    """
    terms = sorted(anf(tt), key=lambda m: (len(m), _line_mask(m)))
    return Circuit(tt.x + 1, tuple(GateStep(0, m) for m in terms))


@dataclass(frozen=True)
class SpectralReport:
    spectrum: tuple[int, ...]
    n: int
    magnitude_at_marker: int
    is_single_basis: bool
    basis_address: Optional[int]
    constant: bool
    balanced: bool
    affine: bool

    def as_dict(self) -> dict:
        return {
            "n": self.n,
            "spectrum": list(self.spectrum),
            "marker_entry": self.magnitude_at_marker,
            "single_basis": self.is_single_basis,
            "basis_address": None
            if self.basis_address is None
            else format(self.basis_address, f"0{self.n}b"),
            "constant": self.constant,
            "balanced": self.balanced,
            "affine": self.affine,
        }


def classify_spectrum(spectrum, n: int) -> SpectralReport:
    """Read constant/balanced/affine verdicts off a post-Hadamard spectrum.

    ``magnitude_at_marker`` keeps the sign of the marker entry; constant-0 gives
    ``+2**n`` and constant-1 gives ``-2**n``.
    """
    spec = np.asarray(spectrum, dtype=np.int64)
    if spec.shape != (1 << n,):
        raise ValueError(f"spectrum length {spec.size} != 2**{n}")
    marker = int(spec[MARKER]) if n >= 1 else int(spec[0])
    nonzero = np.flatnonzero(spec)
    single = nonzero.size == 1
    return SpectralReport(
        spectrum=tuple(spec.tolist()),
        n=n,
        magnitude_at_marker=marker,
        is_single_basis=single,
        basis_address=int(nonzero[0]) if single else None,
        constant=abs(marker) == 1 << n,
        balanced=marker == 0,
        affine=single,
    )


@dataclass(frozen=True)
class GroundTruth:
    constant: bool
    constant_value: Optional[bool]
    balanced: bool
    symmetric: bool
    anti_symmetric: bool

    def as_dict(self) -> dict:
        return {
            "constant": self.constant,
            "constant_value": None if self.constant_value is None else int(self.constant_value),
            "balanced": self.balanced,
            "symmetric": self.symmetric,
            "anti_symmetric": self.anti_symmetric,
        }


def classify_truth_table(tt: TruthTable) -> GroundTruth:
    bits = tt.bits
    constant = len(set(bits)) == 1
    flipped = tuple(reversed(bits))
    return GroundTruth(
        constant=constant,
        constant_value=bits[0] if constant else None,
        balanced=2 * sum(bits) == len(bits),
        symmetric=flipped == bits,
        anti_symmetric=flipped == tuple(not b for b in bits),
    )


@dataclass(frozen=True)
class PipelineTrace:
    circuit: Circuit
    loaded: np.ndarray
    core_vector: np.ndarray
    spectrum: np.ndarray


def run_pipeline(tt: TruthTable) -> PipelineTrace:
    """Init ``0...01``, Hadamard, one oracle call on the core, Hadamard, readout."""
    circuit = synthesize_oracle(tt)
    loaded = preprocess(circuit.n, MARKER, apply_hadamard=True)
    core = load_signs(circuit.n, loaded).run(circuit.steps)
    vector = readout(core)
    return PipelineTrace(circuit, loaded, vector, fwht(vector))


def classify(tt: TruthTable) -> tuple[SpectralReport, GroundTruth]:
    trace = run_pipeline(tt)
    return classify_spectrum(trace.spectrum, trace.circuit.n), classify_truth_table(tt)


def disagreements(report: SpectralReport, truth: GroundTruth) -> list[str]:
    """Pipeline verdicts that contradict the truth table; always empty unless something is broken."""
    problems = []
    if report.constant != truth.constant:
        problems.append(f"constant: spectrum says {report.constant}, table says {truth.constant}")
    if report.balanced != truth.balanced:
        problems.append(f"balanced: spectrum says {report.balanced}, table says {truth.balanced}")
    if report.affine and not (truth.symmetric or truth.anti_symmetric):
        problems.append("single-basis spectrum but table is neither symmetric nor anti-symmetric")
    return problems
