"""Wiring-diagram steps: NOT gates with any number of positive controls.

Line ``A_k`` is bit ``k`` of an address, with ``A0`` the least significant bit.
"""
from __future__ import annotations

from dataclasses import dataclass, field


class StepError(ValueError):
    """Raised when a step is not valid for a given line count."""


@dataclass(frozen=True)
class GateStep:
    target: int
    controls: frozenset[int] = field(default_factory=frozenset)

    def __post_init__(self):
        # accept any iterable for convenience, keep a frozenset internally
        object.__setattr__(self, "controls", frozenset(self.controls))

    @classmethod
    def of(cls, target: int, *controls: int) -> "GateStep":
        if len(set(controls)) != len(controls):
            raise StepError(f"duplicate control in {controls}")
        return cls(target, frozenset(controls))

    @property
    def control_mask(self) -> int:
        mask = 0
        for c in self.controls:
            mask |= 1 << c
        return mask

    @property
    def kind(self) -> str:
        """Paper-style gate name: UNC, SCN, DCN, or MCN for more than two controls."""
        return ("UNC", "SCN", "DCN")[len(self.controls)] if len(self.controls) < 3 else "MCN"

    def __str__(self) -> str:
        ctrl = ",".join(f"A{c}" for c in sorted(self.controls, reverse=True))
        return f"{self.kind}[{ctrl}->A{self.target}]" if ctrl else f"{self.kind}[A{self.target}]"


@dataclass(frozen=True)
class Circuit:
    n: int
    steps: tuple[GateStep, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "steps", tuple(self.steps))
        if self.n < 1:
            raise StepError(f"line count must be >= 1, got {self.n}")
        for i, step in enumerate(self.steps):
            problem = validate_step(step, self.n)
            if problem:
                raise StepError(f"step {i}: {problem}")

    def __len__(self) -> int:
        return len(self.steps)


def validate_step(step: GateStep, n: int) -> str | None:
    """Return ``None`` if ``step`` is valid on ``n`` lines, else a description of the violation.

    Duplicate controls can only arise from a raw sequence, so ``step`` may also be
    a ``(target, controls)`` pair where ``controls`` is a list.
    """
    if isinstance(step, GateStep):
        target, controls = step.target, list(step.controls)
    else:
        target, controls = step[0], list(step[1])
    if len(set(controls)) != len(controls):
        return f"duplicate-control: {sorted(controls)}"
    for idx in [target, *controls]:
        if not 0 <= idx < n:
            return f"index-out-of-range: A{idx} with {n} lines"
    if target in controls:
        return f"target-in-controls: A{target}"
    return None


def check_step(step: GateStep, n: int) -> None:
    problem = validate_step(step, n)
    if problem:
        raise StepError(problem)


def fires(address: int, step: GateStep) -> bool:
    mask = step.control_mask
    return address & mask == mask


def swap_pairs(step: GateStep, n: int) -> list[tuple[int, int]]:
    """Addresses interchanged by ``step``, as ``(low, high)`` pairs sorted by ``low``.

    Each pair differs only in the target bit, so ``high - low == 2**target``.
    """
    check_step(step, n)
    bit = 1 << step.target
    return [(a, a | bit) for a in range(1 << n) if not a & bit and fires(a, step)]


def format_address(address: int, n: int) -> str:
    """MSB-first binary, e.g. ``format_address(3, 4) == '0011'``."""
    return format(address, f"0{n}b")

