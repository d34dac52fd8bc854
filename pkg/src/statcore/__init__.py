"""Classical emulation of permutation quantum circuits on a data-stationary core."""
from .analysis import (
    GroundTruth,
    SpectralReport,
    TruthTable,
    anf,
    classify_spectrum,
    classify_truth_table,
    synthesize_oracle,
)
from .circuit_format import ParseError, Program, emit, parse
from .cost_model import CostReport, TechParams, gate_delay, wafer_report, word_cost
from .gate_model import Circuit, GateStep, StepError, swap_pairs, validate_step
from .reference_oracle import dense_apply_step, run_dense
from .state_core import StateCore, Word, apply_step, init_basis, load_signs, readout
from .transforms import extract_common_factor, fwht, preprocess

__version__ = "0.1.0"
