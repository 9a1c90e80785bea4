"""Synthesis of Boolean-function-controlled NOT circuits over Clifford+R1.

Compile an arbitrary n-variable Boolean function into a quantum circuit
that flips a target qubit exactly when the function is true, choosing
between constructions with no auxiliary qubits and constructions whose
non-Clifford rotations all fit in a single stage.  Every emitted circuit
can be certified against a brute-force oracle by the embedded branching
statevector simulator.
"""

from .boolfn import (
    AngleTable,
    GrayCode,
    ParseError,
    SpectralData,
    TruthTable,
    angles,
    gray_code,
    lifted_spectrum,
    mu,
    parse_function,
    pm_one_vector,
    rho,
    spectrum,
    trailing_bit,
    walsh_hadamard,
)
from .circuit import (
    Circuit,
    ConditionedBlock,
    Gate,
    GateKind,
    ResourceCounts,
    adjoint,
    cnot,
    compose,
    h,
    merge_s_gate,
    r1,
    r1dg,
    resource_counts,
    rotation_depth,
    s,
    sdg,
    x,
)
from .export import to_qasm, to_text_diagram
from .sim import (
    Branch,
    BranchedState,
    OracleMode,
    StateVector,
    VerificationReport,
    apply,
    diagonal_decomposition_check,
    legal_basis_inputs,
    oracle_unitary,
    state_equal_up_to_phase,
    verify,
)
from .synth import (
    ConstructionKind,
    Layout,
    SynthesisResult,
    TargetContract,
    synth_and_depth1,
    synth_and_low_width,
    synth_anddg_depth1,
    synth_anddg_low_width,
    synth_general_depth1,
    synth_general_low_width,
    synthesize,
)

__version__ = "0.1.0"
