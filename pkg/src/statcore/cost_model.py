"""Transistor count, wafer capacity and bus delay for the tagged-word core.

Defaults are a mid-2000s technology snapshot: 32 address bits, 0.01 um^2 per
transistor, a 20 cm radius wafer and 40 cm of bus at 8 ns/cm.
"""
from __future__ import annotations

import configparser
import math
from dataclasses import asdict, dataclass, fields

MICRONS_PER_CM = 10_000
WORDS_PER_GW = 1 << 30


class ConfigError(ValueError):
    pass


@dataclass(frozen=True)
class TechParams:
    address_bits: int = 32
    data_transistors: int = 2
    cell_transistors_per_address_bit: int = 4
    bus_transistors_per_address_bit: int = 3
    transistor_area: float = 0.01  # um^2
    wafer_radius: float = 20.0  # cm
    bus_distance: float = 40.0  # cm
    delay_per_cm: float = 8.0  # ns/cm

    def __post_init__(self):
        for f in fields(self):
            value = getattr(self, f.name)
            if not value > 0:
                raise ConfigError(f"{f.name} must be positive, got {value}")

    @classmethod
    def from_config(cls, text: str) -> "TechParams":
        """Parse flat ``key = value`` lines; keys are field names, '#' starts a comment."""
        parser = configparser.ConfigParser(inline_comment_prefixes=("#",))
        parser.optionxform = str
        try:
            parser.read_string("[tech]\n" + text)
        except configparser.Error as exc:
            raise ConfigError(f"malformed config: {exc}") from None
        types = {f.name: f.type for f in fields(cls)}
        values = {}
        for key, raw in parser["tech"].items():
            if key not in types:
                raise ConfigError(f"unknown parameter {key!r}")
            convert = int if types[key] in (int, "int") else float
            try:
                values[key] = convert(raw)
            except ValueError:
                raise ConfigError(f"{key}: cannot read {raw!r} as {convert.__name__}") from None
        return cls(**values)


@dataclass(frozen=True)
class CostReport:
    transistors_per_word: int
    wafer_transistors: int
    word_capacity: int
    address_space_bits: int
    gate_delay_ns: float

    @property
    def feasible(self) -> bool:
        return self.word_capacity > 0

    @property
    def word_capacity_gw(self) -> float:
        return self.word_capacity / WORDS_PER_GW

    def as_dict(self) -> dict:
        out = asdict(self)
        out["word_capacity_gw"] = self.word_capacity_gw
        out["feasible"] = self.feasible
        return out


def word_cost(p: TechParams) -> int:
    return (
        p.data_transistors
        + p.address_bits * p.cell_transistors_per_address_bit
        + p.address_bits * p.bus_transistors_per_address_bit
    )


def wafer_transistors(p: TechParams) -> int:
    radius_um = p.wafer_radius * MICRONS_PER_CM
    return math.floor(math.pi * radius_um**2 / p.transistor_area)


def gate_delay(p: TechParams) -> float:
    """Worst-case bus settling time in ns; linear in bus length."""
    return p.bus_distance * p.delay_per_cm


def wafer_report(p: TechParams | None = None) -> CostReport:
    p = p or TechParams()
    per_word = word_cost(p)
    total = wafer_transistors(p)
    capacity = total // per_word
    return CostReport(
        transistors_per_word=per_word,
        wafer_transistors=total,
        word_capacity=capacity,
        # an empty wafer has no address space at all
        address_space_bits=capacity.bit_length() - 1 if capacity else 0,
        gate_delay_ns=gate_delay(p),
    )


def format_report(report: CostReport) -> str:
    rows = [
        ("transistors per word", f"{report.transistors_per_word}"),
        ("wafer transistors", f"{report.wafer_transistors:,} ({report.wafer_transistors:.4e})"),
        ("word capacity", f"{report.word_capacity:,} ({report.word_capacity_gw:.2f} GW, 1 GW = 2^30)"),
        ("address space bits", f"{report.address_space_bits}"),
        ("gate delay", f"{report.gate_delay_ns:g} ns"),
    ]
    if not report.feasible:
        rows.append(("feasible", "no: fewer transistors than one word needs"))
    width = max(len(k) for k, _ in rows)
    return "\n".join(f"{k.ljust(width)}  {v}" for k, v in rows)
