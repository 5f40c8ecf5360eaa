"""Stock-price braids, Ising-anyon gate recognition and circuit emission."""

from .braid import BraidWord, Crossing, RankState, braid_word, detect_crossings, free_reduce, rank_order
from .config import RunConfig, load_config
from .cyclo import CycloMatrix, CycloValue, mat_adjoint, mat_identity, mat_mul, mat_tensor
from .emit import (
    CircuitDocument,
    circuit_document,
    emit_qasm,
    parse_qasm,
    render_braid_ascii,
    render_braid_svg,
    render_circuit_ascii,
    render_circuit_svg,
    render_svg,
)
from .errors import (
    AdmissibilityError,
    BraidwireError,
    DimensionError,
    DuplicateDateError,
    EmitError,
    MissingDataError,
    ParseError,
    UnknownGateError,
)
from .gates import (
    GateDef,
    GateHit,
    RecognizedCircuit,
    Residue,
    enumerate_realizations,
    find_gate,
    recognize,
    standard_library,
)
from .ingest import PortfolioSeries, PriceFrame, ValidationReport, load_csv, parse_csv_text, validate_portfolio
from .rep import IsingRep, generator_matrix, ising_rep, projective_equal, word_product
from .verify import run_verification

__version__ = "0.1.0"

__all__ = [
    "AdmissibilityError", "BraidWord", "BraidwireError", "CircuitDocument", "Crossing", "CycloMatrix",
    "CycloValue", "DimensionError", "DuplicateDateError", "EmitError", "GateDef", "GateHit", "IsingRep",
    "MissingDataError", "ParseError", "PortfolioSeries", "PriceFrame", "RankState", "RecognizedCircuit",
    "Residue", "RunConfig", "UnknownGateError", "ValidationReport", "braid_word", "circuit_document",
    "detect_crossings", "emit_qasm", "enumerate_realizations", "find_gate", "free_reduce",
    "generator_matrix", "ising_rep", "load_config", "load_csv", "mat_adjoint", "mat_identity", "mat_mul",
    "mat_tensor", "parse_csv_text", "parse_qasm", "projective_equal", "rank_order", "recognize",
    "render_braid_ascii", "render_braid_svg", "render_circuit_ascii", "render_circuit_svg", "render_svg",
    "run_verification", "standard_library", "validate_portfolio", "word_product",
]
