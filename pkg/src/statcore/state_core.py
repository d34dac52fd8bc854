"""Data-stationary core memory.

Each word holds an amplitude in {-1, 0, +1} and an address tag. Gates never move
amplitudes; they flip one tag bit in every word whose control bits read 1, the
same update applied to all words at once. ``readout`` sorts words by tag to give
the state vector in logical order.
"""
from __future__ import annotations

import os
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .gate_model import GateStep, check_step

DEFAULT_MAX_LINES = 28
MAX_LINES_ENV = "STATCORE_MAX_N"
AMPLITUDES = (-1, 0, 1)


class CoreError(ValueError):
    pass


def max_lines() -> int:
    """Line-count cap, from ``$STATCORE_MAX_N`` when set."""
    raw = os.environ.get(MAX_LINES_ENV)
    if raw is None:
        return DEFAULT_MAX_LINES
    try:
        cap = int(raw)
    except ValueError:
        raise CoreError(f"{MAX_LINES_ENV} must be an integer, got {raw!r}") from None
    if cap < 1:
        raise CoreError(f"{MAX_LINES_ENV} must be >= 1, got {cap}")
    return cap


def _check_lines(n: int) -> None:
    cap = max_lines()
    if not 1 <= n <= cap:
        raise CoreError(f"line count {n} outside [1, {cap}]")


def _tag_dtype(n: int):
    return np.uint32 if n <= 32 else np.uint64


@dataclass(frozen=True)
class Word:
    amp: int
    tag: int


class StateCore:
    """Fixed array of ``2**n`` words; tags always form a permutation of ``range(2**n)``."""

    def __init__(self, n: int, amps: np.ndarray, tags: np.ndarray | None = None):
        _check_lines(n)
        size = 1 << n
        amps = np.asarray(amps)
        if amps.shape != (size,):
            raise CoreError(f"expected {size} amplitudes for {n} lines, got shape {amps.shape}")
        if not np.isin(amps, AMPLITUDES).all():
            bad = amps[~np.isin(amps, AMPLITUDES)][0]
            raise CoreError(f"amplitude {int(bad)} outside {{-1, 0, +1}}")
        self.n = n
        self.amps = amps.astype(np.int8)
        self.amps.flags.writeable = False
        if tags is None:
            tags = np.arange(size, dtype=_tag_dtype(n))
        self.tags = np.array(tags, dtype=_tag_dtype(n))

    def __len__(self) -> int:
        return len(self.amps)

    def __iter__(self):
        for amp, tag in zip(self.amps.tolist(), self.tags.tolist()):
            yield Word(amp, tag)

    def __eq__(self, other) -> bool:
        if not isinstance(other, StateCore):
            return NotImplemented
        return (
            self.n == other.n
            and np.array_equal(self.amps, other.amps)
            and np.array_equal(self.tags, other.tags)
        )

    def __repr__(self) -> str:
        return f"StateCore(n={self.n}, words={len(self)})"

    def copy(self) -> "StateCore":
        return StateCore(self.n, self.amps, self.tags.copy())

    def apply(self, step: GateStep) -> "StateCore":
        """Flip the target tag bit of every word whose control bits are all 1, in place."""
        check_step(step, self.n)
        mask = self.tags.dtype.type(step.control_mask)
        bit = self.tags.dtype.type(1 << step.target)
        # with no controls mask is 0 and every word fires
        firing = (self.tags & mask) == mask
        self.tags[firing] ^= bit
        return self

    def run(self, steps: Iterable[GateStep]) -> "StateCore":
        for step in steps:
            self.apply(step)
        return self

    def is_permutation(self) -> bool:
        return np.array_equal(np.sort(self.tags), np.arange(len(self), dtype=self.tags.dtype))


def init_basis(n: int, index: int) -> StateCore:
    """Core holding the basis state ``|index>``: +1 at that word, 0 elsewhere."""
    _check_lines(n)
    if not 0 <= index < 1 << n:
        raise CoreError(f"basis index {index} outside [0, {1 << n})")
    amps = np.zeros(1 << n, dtype=np.int8)
    amps[index] = 1
    return StateCore(n, amps)


def load_signs(n: int, vec: Sequence[int]) -> StateCore:
    """Load a pre-processed trit vector; word ``i`` gets tag ``i``."""
    _check_lines(n)
    arr = np.asarray(vec)
    if arr.shape != (1 << n,):
        raise CoreError(f"vector length {arr.size} != 2**{n}")
    if not np.isin(arr, AMPLITUDES).all():
        bad = arr[~np.isin(arr, AMPLITUDES)][0]
        raise CoreError(f"entry {int(bad)} outside the core amplitude domain {{-1, 0, +1}}")
    return StateCore(n, arr)


def apply_step(core: StateCore, step: GateStep) -> StateCore:
    """Functional form of :meth:`StateCore.apply`; ``core`` is left untouched."""
    return core.copy().apply(step)


def readout(core: StateCore) -> np.ndarray:
    """State vector in logical (tag) order, as int64."""
    out = np.empty(len(core), dtype=np.int64)
    out[core.tags] = core.amps
    return out
