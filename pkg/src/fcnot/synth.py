"""Circuit constructions for Boolean-function-controlled NOT gates.

Given an n-variable function f, each construction emits a Clifford+R1
circuit realizing ``|x>|y>|0^l> -> |x>|y xor f(x)>|0^l>`` for one of three
target contracts (arbitrary ``|y>``, ``|y> = |0>``, ``|y> = |f(x)>``) and
one of two cost profiles:

* low-width: no auxiliary qubits, rotations serialized on few wires;
* depth-1: one auxiliary qubit per linear combination of inputs, so all
  rotations land on distinct qubits and execute in a single stage.

Rotation angles come from the Walsh-Hadamard spectrum of f: a rotation by
``theta_j = s_j * pi / 2**(n+1)`` is scheduled onto the wire holding the
XOR of the variables selected by the bits of j (plus the target, for the
adjoint rotations).  Zero coefficients would rotate by zero and emit no
gate at all.

The two uncompute constructions (``|f(x)>`` contract) measure the target
after a basis change and repair the surviving phases with doubled-angle
rotations, conditioned on the measurement outcome.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

from .boolfn import (
    AngleTable,
    SpectralData,
    TruthTable,
    angles,
    gray_code,
    mu,
    spectrum,
    trailing_bit,
)
from .circuit import (
    Circuit,
    CircuitElement,
    ConditionedBlock,
    Gate,
    cnot,
    h,
    r1,
    r1dg,
    resource_counts,
    rotation_depth,
    s,
    x,
)


class TargetContract(Enum):
    ARBITRARY = "arbitrary"
    ZERO = "zero"
    F_OF_X = "f_of_x"


class ConstructionKind(Enum):
    """The six constructions, named ``<contract>-<profile>``."""

    GENERAL_LOW_WIDTH = "general-lowwidth"
    GENERAL_DEPTH1 = "general-depth1"
    AND_LOW_WIDTH = "and-lowwidth"
    AND_DEPTH1 = "and-depth1"
    ANDDG_LOW_WIDTH = "anddg-lowwidth"
    ANDDG_DEPTH1 = "anddg-depth1"

    @property
    def target_contract(self) -> TargetContract:
        return {
            ConstructionKind.GENERAL_LOW_WIDTH: TargetContract.ARBITRARY,
            ConstructionKind.GENERAL_DEPTH1: TargetContract.ARBITRARY,
            ConstructionKind.AND_LOW_WIDTH: TargetContract.ZERO,
            ConstructionKind.AND_DEPTH1: TargetContract.ZERO,
            ConstructionKind.ANDDG_LOW_WIDTH: TargetContract.F_OF_X,
            ConstructionKind.ANDDG_DEPTH1: TargetContract.F_OF_X,
        }[self]

    @property
    def is_uncompute(self) -> bool:
        return self.target_contract is TargetContract.F_OF_X

    def ancilla_count(self, n: int) -> int:
        """Closed-form auxiliary-qubit count for n variables."""
        if self in (ConstructionKind.GENERAL_LOW_WIDTH,
                    ConstructionKind.AND_LOW_WIDTH,
                    ConstructionKind.ANDDG_LOW_WIDTH):
            return 0
        if self is ConstructionKind.GENERAL_DEPTH1:
            return (1 << (n + 1)) - n - 2
        return (1 << n) - n - 1


@dataclass(frozen=True)
class Layout:
    """Physical qubit indices of the logical roles.

    ``controls[i - 1]`` carries variable ``x_i``; ``aux`` qubits start and
    end in |0>.
    """

    controls: tuple[int, ...]
    target: int
    aux: tuple[int, ...]

    def roles(self, qubit_count: int) -> tuple[str, ...]:
        out = ["aux"] * qubit_count
        for i, q in enumerate(self.controls):
            out[q] = f"x{i + 1}"
        out[self.target] = "target"
        return tuple(out)


@dataclass(frozen=True)
class SynthesisResult:
    kind: ConstructionKind
    circuit: Circuit
    layout: Layout
    ancilla_count: int

    def metrics(self) -> dict[str, int]:
        counts = resource_counts(self.circuit)
        return {
            "qubits": counts.qubits,
            "ancillas": self.ancilla_count,
            "cnot": counts.cnot,
            "r1_total": counts.r1_total,
            "r1_non_clifford": counts.r1_non_clifford,
            "rotation_depth": rotation_depth(self.circuit),
            "measurements": counts.measurements,
        }


def synthesize(f: TruthTable, kind: ConstructionKind) -> SynthesisResult:
    """Dispatch to the construction named by ``kind``."""
    return _DISPATCH[kind](f)


# ---------------------------------------------------------------------------
# Shared emission helpers


def _rotation(table: AngleTable, sd: SpectralData, j: int, qubit: int,
              dagger: bool, doubled: bool = False) -> Gate | None:
    """Rotation for spectral index j on ``qubit``; None if the coefficient
    vanishes (zero angle, identity elision)."""
    if sd.coefficients[j] == 0:
        return None
    angle = table.angles[j] * 2 if doubled else table.angles[j]
    return r1dg(angle, qubit) if dagger else r1(angle, qubit)


def _combination_ladder(sd: SpectralData, table: AngleTable, i: int,
                        dagger: bool, doubled: bool) -> list[Gate]:
    """Gray-code ladder on wire i phasing every combination whose leading
    variable is x_{i+1}: rotate by theta at index ``2**i + v_k``, then step
    the wire with a CNOT from bit position delta_k.  The cycle closes, so
    the wire ends holding x_{i+1} again.  For i == 0 there is a single
    step and no CNOT.
    """
    code = gray_code(i)
    out: list[Gate] = []
    for k in range(1 << i):
        g = _rotation(table, sd, (1 << i) + code.codewords[k], i, dagger, doubled)
        if g is not None:
            out.append(g)
        if i > 0:
            out.append(cnot(code.deltas[k], i))
    return out


def _target_ladder(sd: SpectralData, table: AngleTable, n: int) -> list[Gate]:
    """Gray-code ladder on the target wire n: adjoint rotation by theta at
    the current codeword, then a CNOT from the control at bit position
    delta_k, walking the target through every combination XOR y."""
    code = gray_code(n)
    out: list[Gate] = []
    for k in range(1 << n):
        g = _rotation(table, sd, code.codewords[k], n, dagger=True)
        if g is not None:
            out.append(g)
        out.append(cnot(code.deltas[k], n))
    return out


def _prep_pairs(limit: int) -> list[tuple[int, int, int]]:
    """CNOT schedule preparing combination wires: for each composite label
    ``3 <= k < limit`` (weight != 1), seed from the wire of the trailing
    bit, then fold in the rest from wire ``k - trailing_bit(k)``.  Returns
    (k, seed_control, fold_control) in increasing k, which guarantees every
    fold source is finalized before use."""
    out = []
    for k in range(3, limit):
        if mu(k) != 1:
            out.append((k, trailing_bit(k), k - trailing_bit(k)))
    return out


# ---------------------------------------------------------------------------
# The six constructions


def synth_general_low_width(f: TruthTable) -> SynthesisResult:
    """Arbitrary target state, no auxiliary qubits.

    Wire i-1 carries x_i and wire n the target.  The circuit is
    ``H_n . S_n . C_0 ... C_{n-1} . C . H_n`` where each C_i is a Gray-code
    ladder phasing the input-only combinations led by x_{i+1}, and C phases
    every combination XOR y on the target wire with adjoint rotations.
    Worst case it uses ``2**(n+1) - 1`` rotations and ``2**(n+1) - 2``
    CNOTs.
    """
    sd = spectrum(f)
    table = angles(sd)
    return _general_low_width_from_spectrum(sd, table)


def _general_low_width_from_spectrum(sd: SpectralData,
                                     table: AngleTable) -> SynthesisResult:
    n = sd.n
    elements: list[CircuitElement] = [h(n), s(n)]
    for i in range(n):
        elements.extend(_combination_ladder(sd, table, i, dagger=False, doubled=False))
    elements.extend(_target_ladder(sd, table, n))
    elements.append(h(n))
    layout = Layout(controls=tuple(range(n)), target=n, aux=())
    circuit = Circuit(n + 1, tuple(elements), layout.roles(n + 1))
    return SynthesisResult(ConstructionKind.GENERAL_LOW_WIDTH, circuit, layout, 0)


def synth_general_depth1(f: TruthTable) -> SynthesisResult:
    """Arbitrary target state, all rotations in a single parallel stage.

    One wire per nonzero combination label ``1 <= k < 2**(n+1)`` of the
    inputs and the target (label bit i-1 selects x_i, bit n selects the
    target); label k lives on physical qubit k - 1.  Wires of weight 1 are
    the inputs and the target themselves; the other ``2**(n+1) - n - 2``
    wires are auxiliary.  CNOT schedules C1 (seed from trailing bit) and C2
    (fold in the rest) prepare every combination, a single layer R of
    rotations fires on all wires at once, and the preparation is undone.
    """
    sd = spectrum(f)
    table = angles(sd)
    n = sd.n
    size = 1 << (n + 1)
    target = (1 << n) - 1  # physical index of label 2**n

    prep: list[Gate] = []
    pairs = _prep_pairs(size)
    prep.extend(cnot(seed - 1, k - 1) for k, seed, _ in pairs)
    prep.extend(cnot(fold - 1, k - 1) for k, _, fold in pairs)
    unprep = [g.adjoint() for g in reversed(prep)]

    rotations: list[Gate] = []
    for k in range(1, 1 << n):
        g = _rotation(table, sd, k, k - 1, dagger=False)
        if g is not None:
            rotations.append(g)
    for k in range(1 << n):
        g = _rotation(table, sd, k, (1 << n) + k - 1, dagger=True)
        if g is not None:
            rotations.append(g)

    elements = [h(target), s(target), *prep, *rotations, *unprep, h(target)]
    layout = Layout(
        controls=tuple((1 << i) - 1 for i in range(n)),
        target=target,
        aux=tuple(k - 1 for k in range(1, size) if mu(k) != 1),
    )
    circuit = Circuit(size - 1, tuple(elements), layout.roles(size - 1))
    return SynthesisResult(
        ConstructionKind.GENERAL_DEPTH1, circuit, layout,
        ConstructionKind.GENERAL_DEPTH1.ancilla_count(n),
    )


def synth_and_low_width(f: TruthTable) -> SynthesisResult:
    """Target known to be |0>, no auxiliary qubits.

    Keeps only the target-wire ladder of the general low-width form (the
    input-only rotations are unnecessary on this contract), so ``2**n``
    rotations and ``2**n`` CNOTs suffice.  A final S on the target repairs
    the residual phase ``(-i)**f(x)`` the dropped ladders would have
    supplied, making the map ``|x>|0> -> |x>|f(x)>`` exact on
    superpositions.
    """
    sd = spectrum(f)
    table = angles(sd)
    n = sd.n
    elements: list[CircuitElement] = [h(n), s(n)]
    elements.extend(_target_ladder(sd, table, n))
    elements.extend([h(n), s(n)])
    layout = Layout(controls=tuple(range(n)), target=n, aux=())
    circuit = Circuit(n + 1, tuple(elements), layout.roles(n + 1))
    return SynthesisResult(ConstructionKind.AND_LOW_WIDTH, circuit, layout, 0)


def synth_and_depth1(f: TruthTable) -> SynthesisResult:
    """Target known to be |0>, single rotation stage.

    Uses ``2**n`` wires: the target at 0, x_i at ``2**(i-1)``, and one
    auxiliary wire per composite label ``3 <= k < 2**n``.  C1 and C2
    prepare the input combinations as in the general depth-1 form, and C3
    (a CNOT fan-out from the target) folds the target into every wire, so
    the single rotation layer phases ``combination xor target`` everywhere.
    The same final S as in the low-width variant makes the contract exact.
    """
    sd = spectrum(f)
    table = angles(sd)
    n = sd.n
    size = 1 << n

    pairs = _prep_pairs(size)
    c1 = [cnot(seed, k) for k, seed, _ in pairs]
    c2 = [cnot(fold, k) for k, _, fold in pairs]
    c3 = [cnot(0, 1 << i) for i in range(n)]
    prep = [*c1, *c3, *c2]
    unprep = [g.adjoint() for g in reversed(prep)]

    rotations: list[Gate] = []
    for k in range(size):
        g = _rotation(table, sd, k, k, dagger=True)
        if g is not None:
            rotations.append(g)

    elements = [h(0), s(0), *prep, *rotations, *unprep, h(0), s(0)]
    layout = Layout(
        controls=tuple(1 << i for i in range(n)),
        target=0,
        aux=tuple(k for k in range(3, size) if mu(k) != 1),
    )
    circuit = Circuit(size, tuple(elements), layout.roles(size))
    return SynthesisResult(
        ConstructionKind.AND_DEPTH1, circuit, layout,
        ConstructionKind.AND_DEPTH1.ancilla_count(n),
    )


def synth_anddg_low_width(f: TruthTable) -> SynthesisResult:
    """Target known to be |f(x)>, uncompute to |0>, no auxiliary qubits.

    A Hadamard rotates the target into the X basis and it is measured.  On
    outcome 0 the state is already ``|x>|0>``; on outcome 1 the surviving
    amplitudes carry a ``(-1)**f(x)`` phase, which the conditioned block
    repairs with the input-only Gray-code ladders at doubled angles before
    an X resets the target.
    """
    sd = spectrum(f)
    table = angles(sd)
    n = sd.n

    body: list[Gate] = []
    for i in range(n):
        body.extend(_combination_ladder(sd, table, i, dagger=False, doubled=True))
    body.append(x(n))

    layout = Layout(controls=tuple(range(n)), target=n, aux=())
    roles = layout.roles(n + 1)
    block = ConditionedBlock(n, Circuit(n + 1, tuple(body)))
    circuit = Circuit(n + 1, (h(n), block), roles)
    return SynthesisResult(ConstructionKind.ANDDG_LOW_WIDTH, circuit, layout, 0)


def synth_anddg_depth1(f: TruthTable) -> SynthesisResult:
    """Target known to be |f(x)>, uncompute to |0>, single rotation stage.

    Layout as in the depth-1 compute variant (target at 0, x_i at
    ``2**(i-1)``).  Only input combinations are needed for the phase
    repair, so the conditioned block prepares them with C1/C2, fires all
    doubled-angle rotations in one stage, undoes the preparation, and
    resets the target with an X.
    """
    sd = spectrum(f)
    table = angles(sd)
    n = sd.n
    size = 1 << n

    pairs = _prep_pairs(size)
    prep = [cnot(seed, k) for k, seed, _ in pairs]
    prep += [cnot(fold, k) for k, _, fold in pairs]
    unprep = [g.adjoint() for g in reversed(prep)]

    rotations: list[Gate] = []
    for k in range(1, size):
        g = _rotation(table, sd, k, k, dagger=False, doubled=True)
        if g is not None:
            rotations.append(g)

    body = [*prep, *rotations, *unprep, x(0)]
    layout = Layout(
        controls=tuple(1 << i for i in range(n)),
        target=0,
        aux=tuple(k for k in range(3, size) if mu(k) != 1),
    )
    roles = layout.roles(size)
    block = ConditionedBlock(0, Circuit(size, tuple(body)))
    circuit = Circuit(size, (h(0), block), roles)
    return SynthesisResult(
        ConstructionKind.ANDDG_DEPTH1, circuit, layout,
        ConstructionKind.ANDDG_DEPTH1.ancilla_count(n),
    )


_DISPATCH = {
    ConstructionKind.GENERAL_LOW_WIDTH: synth_general_low_width,
    ConstructionKind.GENERAL_DEPTH1: synth_general_depth1,
    ConstructionKind.AND_LOW_WIDTH: synth_and_low_width,
    ConstructionKind.AND_DEPTH1: synth_and_depth1,
    ConstructionKind.ANDDG_LOW_WIDTH: synth_anddg_low_width,
    ConstructionKind.ANDDG_DEPTH1: synth_anddg_depth1,
}
