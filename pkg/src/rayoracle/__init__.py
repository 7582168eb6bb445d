"""Minimized quantum lookup oracles for 2D rectangle scenes.

Builds Boolean bit-functions from a scene of axis-aligned rectangles,
minimizes them exactly (Quine-McCluskey with Petrick cover selection),
synthesizes a lookup oracle circuit, lowers it to smaller gate bases,
and simulates or exports the result.
"""

from .circuit import (
    Circuit,
    CircuitBuilder,
    Gate,
    GateBasis,
    GateKind,
    QubitId,
    depth,
    gate_count,
    qubit_count,
)
from .errors import (
    CapacityError,
    InconsistencyError,
    ParseError,
    RayOracleError,
    ValidationError,
    VerificationError,
)
from .logic import (
    Implicant,
    SopExpression,
    TruthTable,
    implicant_covers,
    sop_evaluate,
    table_of_sop,
    try_combine,
)
from .lowering import lower
from .minimize import (
    CoverSolution,
    PrimeSet,
    brute_force_minimal_cover,
    minimize,
    petrick_cover,
    prime_implicants,
)
from .qasm import export_qasm
from .scene import Rect, Scene, load_scene, parse_scene
from .sim import Histogram, Statevector, chi_square_uniform, histogram_csv, run, sample
from .synth import (
    BitFunctionSet,
    OracleLayout,
    derive_bit_functions,
    synthesize,
    verify_oracle,
)

__version__ = "0.1.0"

__all__ = [
    "CapacityError",
    "Circuit",
    "CircuitBuilder",
    "CoverSolution",
    "Gate",
    "GateBasis",
    "GateKind",
    "Histogram",
    "Implicant",
    "InconsistencyError",
    "OracleLayout",
    "ParseError",
    "PrimeSet",
    "QubitId",
    "RayOracleError",
    "Rect",
    "Scene",
    "SopExpression",
    "Statevector",
    "TruthTable",
    "BitFunctionSet",
    "ValidationError",
    "VerificationError",
    "brute_force_minimal_cover",
    "chi_square_uniform",
    "depth",
    "derive_bit_functions",
    "export_qasm",
    "gate_count",
    "histogram_csv",
    "implicant_covers",
    "load_scene",
    "lower",
    "minimize",
    "parse_scene",
    "petrick_cover",
    "prime_implicants",
    "qubit_count",
    "run",
    "sample",
    "sop_evaluate",
    "synthesize",
    "table_of_sop",
    "try_combine",
    "verify_oracle",
]
