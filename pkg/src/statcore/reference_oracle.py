"""Dense reference simulator that physically swaps vector entries.

Deliberately naive: it walks :func:`swap_pairs` and exchanges entries one pair at
a time. The data-stationary core is checked against it.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Callable, Optional, Sequence

import numpy as np

from .gate_model import Circuit, GateStep, StepError, swap_pairs
from .transforms import log2_length


def dense_apply_step(vec: Sequence[int], step: GateStep) -> np.ndarray:
    out = np.array(vec, dtype=np.int64)
    n = log2_length(out)
    for a, b in swap_pairs(step, n):
        out[a], out[b] = out[b], out[a]
    return out


def run_dense(circuit: Circuit, start: Sequence[int]) -> np.ndarray:
    out = np.array(start, dtype=np.int64)
    if log2_length(out) != circuit.n:
        raise StepError(f"circuit has {circuit.n} lines but start vector has {len(out)} entries")
    for step in circuit.steps:
        out = dense_apply_step(out, step)
    return out


def run_stationary(circuit: Circuit, start: Sequence[int]) -> np.ndarray:
    """Load ``start`` into a core, run the circuit by tag updates, read it back."""
    from .state_core import load_signs, readout

    core = load_signs(circuit.n, start)
    core.run(circuit.steps)
    return readout(core)


Runner = Callable[[Circuit, Sequence[int]], np.ndarray]


@dataclass
class Counterexample:
    trial: int
    circuit: Circuit
    start: list[int]
    expected: list[int]
    got: list[int]

    def describe(self) -> str:
        from .circuit_format import Program, emit

        text = emit(Program(self.circuit.n, steps=self.circuit.steps))
        return "\n".join([
            f"trial {self.trial}: data-stationary result differs from dense reference",
            "circuit:",
            *("  " + line for line in text.splitlines()),
            f"start:      {self.start}",
            f"dense:      {self.expected}",
            f"stationary: {self.got}",
        ])


@dataclass
class VerifyResult:
    seed: int
    trials: int
    max_n: int
    checked: int = 0
    failure: Optional[Counterexample] = None

    @property
    def passed(self) -> bool:
        return self.failure is None


MAX_DEPTH = 64
MAX_RANDOM_CONTROLS = 3


def random_step(rng: random.Random, n: int) -> GateStep:
    target = rng.randrange(n)
    others = [k for k in range(n) if k != target]
    k = rng.randint(0, min(len(others), MAX_RANDOM_CONTROLS))
    return GateStep(target, frozenset(rng.sample(others, k)))


def random_instance(rng: random.Random, max_n: int) -> tuple[Circuit, list[int]]:
    n = rng.randint(1, max_n)
    depth = rng.randint(0, MAX_DEPTH)
    circuit = Circuit(n, tuple(random_step(rng, n) for _ in range(depth)))
    start = [rng.choice((-1, 0, 1)) for _ in range(1 << n)]
    return circuit, start


def cross_check(seed: int, trials: int, max_n: int, runner: Runner = run_stationary) -> VerifyResult:
    """Compare ``runner`` against :func:`run_dense` on seeded random circuits.

    Stops at the first mismatch. ``runner`` is swappable so a broken core can be
    shown to be caught.
    """
    rng = random.Random(seed)
    result = VerifyResult(seed, trials, max_n)
    for trial in range(trials):
        circuit, start = random_instance(rng, max_n)
        expected = run_dense(circuit, start)
        got = runner(circuit, start)
        result.checked += 1
        if not np.array_equal(expected, got):
            result.failure = Counterexample(trial, circuit, start, expected.tolist(), np.asarray(got).tolist())
            break
    return result
