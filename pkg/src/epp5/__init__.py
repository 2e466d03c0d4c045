"""Boolean-function synthesis for the five-pair Bell-state error-correcting code."""
from .baseline import NotFound, monte_carlo_search
from .bell import BellLabel, DesignationMatrix, PauliOp, canonical_syndromes, table1, validate_designation
from .catalog import BASE_DESIGNATION, NAMED_PATHS, ROWSUM_DESIGNATION, named_path
from .designations import relate_designations
from .elimination import NoSolution, eliminate_block
from .gates import BXOR, By, GateSequence, SxBx, Sz, apply_sequence, gate_matrix, sequence_matrix
from .gf2 import BitVec, Block2, Mat10, det2, is_invertible, mat_mul, mat_vec, symplectic_check
from .optimize import DepthExceeded, Objective, minimal_sequence, permute_and_reduce
from .render import parse_diagram, render_sequence
from .synthesis import (ChoicePath, InfeasiblePath, SolutionRecord, StageChoice, build_template,
                        enumerate_solutions, synthesize)
from .verify import VerificationReport, check_correction, verify_solution

__version__ = "0.1.0"

__all__ = [
    "NotFound", "monte_carlo_search",
    "BellLabel", "DesignationMatrix", "PauliOp", "canonical_syndromes", "table1", "validate_designation",
    "BASE_DESIGNATION", "NAMED_PATHS", "ROWSUM_DESIGNATION", "named_path",
    "relate_designations",
    "NoSolution", "eliminate_block",
    "BXOR", "By", "GateSequence", "SxBx", "Sz", "apply_sequence", "gate_matrix", "sequence_matrix",
    "BitVec", "Block2", "Mat10", "det2", "is_invertible", "mat_mul", "mat_vec", "symplectic_check",
    "DepthExceeded", "Objective", "minimal_sequence", "permute_and_reduce",
    "parse_diagram", "render_sequence",
    "ChoicePath", "InfeasiblePath", "SolutionRecord", "StageChoice", "build_template",
    "enumerate_solutions", "synthesize",
    "VerificationReport", "check_correction", "verify_solution",
]
