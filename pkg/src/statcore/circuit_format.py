"""Line-oriented ``.qwd`` program format.

::

    # the XOR example
    lines 3
    init 001
    pre hadamard
    step CX A1 A0
    step CX A2 A0
    post hadamard

Directives must appear in this order; ``lines`` is required and comes first,
the others are optional and may appear at most once. A step lists its controls
and then its target. ``X``/``CX``/``CCX`` take 0/1/2 controls, ``MCX`` any number.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Optional

from .gate_model import GateStep, validate_step

MNEMONICS = {"X": 0, "CX": 1, "CCX": 2}
_LINE_TOKEN = re.compile(r"A(\d+)")
_PHASES = {"lines": 0, "init": 1, "pre": 2, "step": 3, "post": 4}


class ParseError(ValueError):
    def __init__(self, line: int, reason: str):
        super().__init__(f"line {line}: {reason}")
        self.line = line
        self.reason = reason


@dataclass(frozen=True)
class Program:
    n: int
    init_index: Optional[int] = None  # None means the default 0...01
    pre_hadamard: bool = False
    steps: tuple[GateStep, ...] = ()
    post_hadamard: bool = False

    def __post_init__(self):
        object.__setattr__(self, "steps", tuple(self.steps))
        if self.n < 1:
            raise ValueError(f"line count must be >= 1, got {self.n}")
        if self.init_index is not None and not 0 <= self.init_index < 1 << self.n:
            raise ValueError(f"init index {self.init_index} outside [0, {1 << self.n})")
        for step in self.steps:
            problem = validate_step(step, self.n)
            if problem:
                raise ValueError(problem)

    @property
    def start_index(self) -> int:
        return 1 if self.init_index is None else self.init_index


def _parse_line_ref(token: str, lineno: int) -> int:
    m = _LINE_TOKEN.fullmatch(token)
    if not m:
        raise ParseError(lineno, f"expected a line like A0, got {token!r}")
    return int(m.group(1))


def _parse_step(args: list[str], n: int, lineno: int) -> GateStep:
    if not args:
        raise ParseError(lineno, "step needs a gate name")
    name, refs = args[0], args[1:]
    if name in MNEMONICS:
        if len(refs) != MNEMONICS[name] + 1:
            raise ParseError(lineno, f"{name} takes {MNEMONICS[name] + 1} line(s), got {len(refs)}")
    elif name == "MCX":
        if not refs:
            raise ParseError(lineno, "MCX needs at least a target line")
    else:
        raise ParseError(lineno, f"unknown gate {name!r}")
    idx = [_parse_line_ref(t, lineno) for t in refs]
    *controls, target = idx
    problem = validate_step((target, controls), n)
    if problem:
        raise ParseError(lineno, problem)
    return GateStep(target, frozenset(controls))


def parse(text: str) -> Program:
    """Parse ``.qwd`` text. Any problem raises :class:`ParseError` with its line number."""
    n = None
    init_index = None
    pre = post = False
    steps: list[GateStep] = []
    phase = -1
    for lineno, raw in enumerate(text.splitlines(), start=1):
        tokens = raw.split("#", 1)[0].split()
        if not tokens:
            continue
        head, args = tokens[0], tokens[1:]
        if head not in _PHASES:
            raise ParseError(lineno, f"unknown directive {head!r}")
        if n is None and head != "lines":
            raise ParseError(lineno, "missing 'lines' directive before " + repr(head))
        new_phase = _PHASES[head]
        if head == "lines" and n is not None:
            raise ParseError(lineno, "duplicate 'lines' directive")
        if new_phase < phase or (new_phase == phase and head != "step"):
            raise ParseError(lineno, f"'{head}' is repeated or out of order")
        phase = new_phase

        if head == "lines":
            if len(args) != 1 or not args[0].isdigit() or int(args[0]) < 1:
                raise ParseError(lineno, "expected 'lines <positive integer>'")
            n = int(args[0])
        elif head == "init":
            if len(args) != 1 or set(args[0]) - set("01"):
                raise ParseError(lineno, "expected 'init <bitstring>'")
            if len(args[0]) != n:
                raise ParseError(lineno, f"init bitstring has {len(args[0])} bits, expected {n}")
            init_index = int(args[0], 2)
        elif head in ("pre", "post"):
            if args != ["hadamard"]:
                raise ParseError(lineno, f"expected '{head} hadamard'")
            if head == "pre":
                pre = True
            else:
                post = True
        else:
            steps.append(_parse_step(args, n, lineno))

    if n is None:
        raise ParseError(len(text.splitlines()) + 1, "missing 'lines' directive")
    return Program(n, init_index, pre, tuple(steps), post)


def emit_step(step: GateStep) -> str:
    k = len(step.controls)
    name = {0: "X", 1: "CX", 2: "CCX"}.get(k, "MCX")
    refs = [f"A{c}" for c in sorted(step.controls, reverse=True)] + [f"A{step.target}"]
    return " ".join(["step", name, *refs])


def emit(program: Program) -> str:
    """Canonical text: one space between tokens, LF line endings, trailing newline."""
    out = [f"lines {program.n}"]
    if program.init_index is not None:
        out.append("init " + format(program.init_index, f"0{program.n}b"))
    if program.pre_hadamard:
        out.append("pre hadamard")
    out.extend(emit_step(s) for s in program.steps)
    if program.post_hadamard:
        out.append("post hadamard")
    return "\n".join(out) + "\n"
