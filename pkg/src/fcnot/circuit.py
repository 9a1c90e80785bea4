"""Gate-level circuit representation for Clifford+R1 with conditioned blocks.

Circuits are flat ordered lists of gates plus optional measurement-conditioned
sub-blocks, over integer-indexed qubits.  Rotation angles are exact rational
multiples of pi (Fractions in units of pi with power-of-two denominators), so
Clifford detection and adjoint bookkeeping never touch floating point.

Circuits are immutable after construction; every function here is pure.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Union


class GateKind(Enum):
    H = "h"
    S = "s"
    SDG = "sdg"
    X = "x"
    CNOT = "cx"
    R1 = "r1"
    R1DG = "r1dg"


_ARITY = {
    GateKind.H: 1,
    GateKind.S: 1,
    GateKind.SDG: 1,
    GateKind.X: 1,
    GateKind.CNOT: 2,
    GateKind.R1: 1,
    GateKind.R1DG: 1,
}

_ROTATIONS = frozenset({GateKind.R1, GateKind.R1DG})

_ADJOINT_KIND = {
    GateKind.H: GateKind.H,
    GateKind.S: GateKind.SDG,
    GateKind.SDG: GateKind.S,
    GateKind.X: GateKind.X,
    GateKind.CNOT: GateKind.CNOT,
    GateKind.R1: GateKind.R1DG,
    GateKind.R1DG: GateKind.R1,
}


@dataclass(frozen=True)
class Gate:
    """A single gate.  ``angle`` (units of pi) is set only for R1/R1DG.

    For CNOT, ``qubits`` is ``(control, target)``.
    """

    kind: GateKind
    qubits: tuple[int, ...]
    angle: Fraction | None = None

    def __post_init__(self) -> None:
        arity = _ARITY[self.kind]
        if len(self.qubits) != arity:
            raise ValueError(f"{self.kind.value} takes {arity} qubit(s)")
        if min(self.qubits) < 0:
            raise ValueError("qubit indices must be nonnegative")
        if self.kind is GateKind.CNOT and self.qubits[0] == self.qubits[1]:
            raise ValueError("CNOT control and target must differ")
        if self.kind in _ROTATIONS:
            if self.angle is None:
                raise ValueError(f"{self.kind.value} requires an angle")
            d = self.angle.denominator
            if d & (d - 1):
                raise ValueError("rotation denominators must be powers of two")
        elif self.angle is not None:
            raise ValueError(f"{self.kind.value} takes no angle")

    def is_rotation(self) -> bool:
        return self.kind in _ROTATIONS

    def is_clifford(self) -> bool:
        """Every non-rotation gate is Clifford; a rotation is Clifford iff
        its angle is a multiple of pi/2 (exact rational test)."""
        if self.kind not in _ROTATIONS:
            return True
        return self.angle.denominator <= 2

    def adjoint(self) -> "Gate":
        return Gate(_ADJOINT_KIND[self.kind], self.qubits, self.angle)


def h(q: int) -> Gate:
    return Gate(GateKind.H, (q,))


def s(q: int) -> Gate:
    return Gate(GateKind.S, (q,))


def sdg(q: int) -> Gate:
    return Gate(GateKind.SDG, (q,))


def x(q: int) -> Gate:
    return Gate(GateKind.X, (q,))


def cnot(control: int, target: int) -> Gate:
    return Gate(GateKind.CNOT, (control, target))


def r1(angle: Fraction, q: int) -> Gate:
    return Gate(GateKind.R1, (q,), Fraction(angle))


def r1dg(angle: Fraction, q: int) -> Gate:
    return Gate(GateKind.R1DG, (q,), Fraction(angle))


@dataclass(frozen=True)
class ConditionedBlock:
    """Measure ``measured_qubit`` in the Z basis; run ``body`` iff the
    outcome is 1.  Bodies contain no further measurements."""

    measured_qubit: int
    body: "Circuit"

    def __post_init__(self) -> None:
        if self.measured_qubit < 0:
            raise ValueError("qubit indices must be nonnegative")
        if any(not isinstance(el, Gate) for el in self.body.elements):
            raise ValueError("conditioned blocks cannot nest measurements")


CircuitElement = Union[Gate, ConditionedBlock]

_ROLE_RE = re.compile(r"^(target|aux|x\d+)$")


@dataclass(frozen=True)
class Circuit:
    """An ordered gate list over qubits ``0 .. qubit_count - 1``.

    ``roles`` optionally annotates each qubit as ``"x<i>"`` (control for
    variable i), ``"target"``, or ``"aux"``; auxiliary annotations let the
    verifier assert restoration to |0>.
    """

    qubit_count: int
    elements: tuple[CircuitElement, ...] = ()
    roles: tuple[str, ...] | None = None

    def __post_init__(self) -> None:
        if self.qubit_count < 0:
            raise ValueError("qubit_count must be nonnegative")
        for el in self.elements:
            if isinstance(el, ConditionedBlock):
                if el.measured_qubit >= self.qubit_count:
                    raise ValueError("measured qubit out of range")
                if el.body.qubit_count != self.qubit_count:
                    raise ValueError("block body must match the circuit width")
            elif max(el.qubits) >= self.qubit_count:
                raise ValueError("gate qubit out of range")
        if self.roles is not None:
            if len(self.roles) != self.qubit_count:
                raise ValueError("one role per qubit required")
            for role in self.roles:
                if not _ROLE_RE.match(role):
                    raise ValueError(f"invalid role {role!r}")


def compose(a: Circuit, b: Circuit) -> Circuit:
    """Concatenation; ``a`` executes first.  Qubit counts must agree."""
    if a.qubit_count != b.qubit_count:
        raise ValueError("cannot compose circuits of different widths")
    return Circuit(a.qubit_count, a.elements + b.elements, a.roles or b.roles)


def adjoint(c: Circuit) -> Circuit:
    """Reverse gate order, replacing each gate by its adjoint.

    Raises on circuits containing measurements, which are not unitary.
    """
    if any(isinstance(el, ConditionedBlock) for el in c.elements):
        raise ValueError("cannot take the adjoint of a measuring circuit")
    return Circuit(
        c.qubit_count,
        tuple(el.adjoint() for el in reversed(c.elements)),
        c.roles,
    )


def rotation_depth(c: Circuit) -> int:
    """Number of rotation stages: the longest chain of non-Clifford R1/R1DG
    gates in the dependency DAG (two gates depend iff they share a qubit).

    Implemented as an as-soon-as-possible sweep of per-qubit stage counters.
    Clifford gates synchronize the qubits they touch without opening a new
    stage.  A conditioned block joins its measured qubit with every qubit its
    body touches before the body runs, and its rotations count toward the
    depth unconditionally (worst case).  For the circuits produced here, where
    each depth-1 construction places all rotations on distinct qubits with no
    interleaving dependencies, this greedy schedule attains the minimum.
    """
    depth = [0] * c.qubit_count

    def sweep_gate(g: Gate) -> None:
        d = max(depth[q] for q in g.qubits)
        if g.kind in _ROTATIONS and g.angle.denominator > 2:
            d += 1
        for q in g.qubits:
            depth[q] = d

    for el in c.elements:
        if isinstance(el, ConditionedBlock):
            touched = {el.measured_qubit}
            for g in el.body.elements:
                touched.update(g.qubits)
            d0 = max(depth[q] for q in touched)
            for q in touched:
                depth[q] = d0
            for g in el.body.elements:
                sweep_gate(g)
        else:
            sweep_gate(el)
    return max(depth, default=0)


@dataclass(frozen=True)
class ResourceCounts:
    cnot: int
    r1_total: int
    r1_non_clifford: int
    h: int
    s: int
    x: int
    measurements: int
    qubits: int
    auxiliary: int

    def as_dict(self) -> dict[str, int]:
        return {
            "cnot": self.cnot,
            "r1_total": self.r1_total,
            "r1_non_clifford": self.r1_non_clifford,
            "h": self.h,
            "s": self.s,
            "x": self.x,
            "measurements": self.measurements,
            "qubits": self.qubits,
            "auxiliary": self.auxiliary,
        }


def resource_counts(c: Circuit) -> ResourceCounts:
    """Gate tallies.  Conditioned-block bodies are counted unconditionally,
    so the result is an outcome-independent upper bound."""
    counts = {"cnot": 0, "r1": 0, "r1nc": 0, "h": 0, "s": 0, "x": 0, "m": 0}

    def tally(g: Gate) -> None:
        if g.kind is GateKind.CNOT:
            counts["cnot"] += 1
        elif g.kind is GateKind.H:
            counts["h"] += 1
        elif g.kind in (GateKind.S, GateKind.SDG):
            counts["s"] += 1
        elif g.kind is GateKind.X:
            counts["x"] += 1
        else:
            counts["r1"] += 1
            if not g.is_clifford():
                counts["r1nc"] += 1

    for el in c.elements:
        if isinstance(el, ConditionedBlock):
            counts["m"] += 1
            for g in el.body.elements:
                tally(g)
        else:
            tally(el)

    aux = sum(1 for r in c.roles or () if r == "aux")
    return ResourceCounts(
        cnot=counts["cnot"],
        r1_total=counts["r1"],
        r1_non_clifford=counts["r1nc"],
        h=counts["h"],
        s=counts["s"],
        x=counts["x"],
        measurements=counts["m"],
        qubits=c.qubit_count,
        auxiliary=aux,
    )


def merge_s_gate(c: Circuit) -> Circuit:
    """Optional pass: absorb the designated S on the target into the first
    adjoint rotation that follows it on the same qubit.

    The low-width and depth-1 compute constructions open with ``H_t, S_t``
    and later apply ``R1dg(theta_0)`` to the same qubit, with only gates
    diagonal on that qubit (CNOT controls) in between.  Since
    ``S * R1dg(a) = R1dg(a - pi/2)``, the S gate can be dropped and the
    rotation retargeted.  Circuits without the pattern (including ones
    already merged) are returned unchanged.
    """
    elems = list(c.elements)
    for i in range(len(elems) - 1):
        first, second = elems[i], elems[i + 1]
        if not (isinstance(first, Gate) and isinstance(second, Gate)):
            continue
        if first.kind is not GateKind.H or second.kind is not GateKind.S:
            continue
        if first.qubits != second.qubits:
            continue
        t = second.qubits[0]
        for j in range(i + 2, len(elems)):
            el = elems[j]
            if isinstance(el, ConditionedBlock):
                break
            if t not in el.qubits:
                continue
            if el.kind is GateKind.R1DG:
                elems[j] = r1dg(el.angle - Fraction(1, 2), t)
                del elems[i + 1]
                return Circuit(c.qubit_count, tuple(elems), c.roles)
            if el.kind is GateKind.CNOT and el.qubits[0] == t:
                continue  # diagonal on t, commutes with the pending S
            break  # non-diagonal gate on t: pattern does not apply here
    return c
