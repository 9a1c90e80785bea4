"""Serialization of circuits to a column diagram and to assembly text.

Both outputs are deterministic: the same circuit always serializes to the
same bytes, and every rotation angle appears as an exact integer-over-
power-of-two multiple of pi, never as a floating-point literal.
"""

from __future__ import annotations

from fractions import Fraction

from .circuit import Circuit, ConditionedBlock, Gate, GateKind


def format_pi_multiple(angle: Fraction) -> str:
    """Human form of an exact angle: ``0``, ``pi/4``, ``-3pi/8``, ``pi``."""
    num, den = angle.numerator, angle.denominator
    if num == 0:
        return "0"
    sign = "-" if num < 0 else ""
    mag = abs(num)
    head = "pi" if mag == 1 else f"{mag}pi"
    tail = "" if den == 1 else f"/{den}"
    return f"{sign}{head}{tail}"


def _gate_cells(gate: Gate) -> dict[int, str]:
    kind = gate.kind
    if kind is GateKind.CNOT:
        control, target = gate.qubits
        return {control: "●", target: "⊕"}
    (q,) = gate.qubits
    if kind is GateKind.R1:
        return {q: f"R1({format_pi_multiple(gate.angle)})"}
    if kind is GateKind.R1DG:
        return {q: f"R1†({format_pi_multiple(gate.angle)})"}
    return {q: {GateKind.H: "H", GateKind.S: "S", GateKind.SDG: "S†",
                GateKind.X: "X"}[kind]}


class _DiagramBuilder:
    """Accumulates diagram columns with as-soon-as-possible placement."""

    def __init__(self, qubit_count: int) -> None:
        self.qubit_count = qubit_count
        # Per column: cell text by row, vertical connector char by row,
        # and the set of rows carrying a classical (double) wire.
        self.cells: list[dict[int, str]] = []
        self.links: list[dict[int, str]] = []
        self.classical: list[set[int]] = []
        self.occupied = [-1] * qubit_count

    def _place(self, rows: set[int], cells: dict[int, str], link: str | None) -> int:
        column = 1 + max(self.occupied[r] for r in rows)
        while len(self.cells) <= column:
            self.cells.append({})
            self.links.append({})
            self.classical.append(set())
        self.cells[column].update(cells)
        if link is not None and len(rows) > 1:
            for r in range(min(rows) + 1, max(rows)):
                if r not in cells:
                    self.links[column][r] = link
        for r in rows:
            self.occupied[r] = column
        return column

    def add_gate(self, gate: Gate, conditioned_on: int | None = None) -> int:
        cells = _gate_cells(gate)
        rows = set(cells)
        link = "│"
        if conditioned_on is not None and conditioned_on not in rows:
            rows.add(conditioned_on)
            cells[conditioned_on] = "●"
            link = "║"
        span = set(range(min(rows), max(rows) + 1))
        return self._place(span, cells, link)

    def add_block(self, block: ConditionedBlock) -> None:
        q = block.measured_qubit
        start = self._place({q}, {q: "M"}, None)
        end = start
        for gate in block.body.elements:
            end = self.add_gate(gate, conditioned_on=q)
        for column in range(start + 1, end + 1):
            self.classical[column].add(q)


def to_text_diagram(c: Circuit, max_columns: int | None = None) -> str:
    """Render one labeled row per qubit with gates in ASAP columns.

    Conditioned blocks show the measurement as ``M``; the measured qubit's
    wire turns into a double line across the block, and each conditioned
    gate hangs off it with a double-line drop and a ``●`` junction.  When
    ``max_columns`` is given, wider diagrams wrap into stacked sections
    with ``…`` continuation markers.
    """
    builder = _DiagramBuilder(c.qubit_count)
    for el in c.elements:
        if isinstance(el, ConditionedBlock):
            builder.add_block(el)
        else:
            builder.add_gate(el)

    labels = []
    for q in range(c.qubit_count):
        role = c.roles[q] if c.roles is not None else "q"
        name = {"target": "y", "aux": "0"}.get(role, role if role != "q" else "q")
        labels.append(f"{name}_{q}:")
    width = max(len(label) for label in labels)
    labels = [label.ljust(width + 1) for label in labels]

    columns = list(zip(builder.cells, builder.links, builder.classical))
    if not columns:
        return "\n".join(f"{label}──" for label in labels)

    chunks = [columns]
    if max_columns is not None and max_columns > 0:
        chunks = [
            columns[i : i + max_columns]
            for i in range(0, len(columns), max_columns)
        ]

    sections = []
    for ci, chunk in enumerate(chunks):
        lines = []
        for q in range(c.qubit_count):
            parts = [labels[q]]
            if ci > 0:
                parts.append("…")
            for cells, links, classical in chunk:
                wire = "═" if q in classical else "─"
                text = cells.get(q, links.get(q, ""))
                w = max(len(s) for s in [*cells.values(), ""]) + 2
                pad = w - len(text)
                parts.append(wire * (pad // 2) + text + wire * (pad - pad // 2))
            if ci + 1 < len(chunks):
                parts.append("…")
            lines.append("".join(parts))
        sections.append("\n".join(lines))
    return "\n\n".join(sections)


def to_qasm(c: Circuit) -> str:
    """Assembly text: declarations, one gate per line, exact angles.

    Rotations appear as a phase gate ``p(<k>*pi/<2**j>)``; adjoint
    rotations are canonicalized to a negated numerator.  A conditioned
    block becomes a ``measure`` into the single classical bit followed by
    an ``if (c[0] == 1) { ... }`` region.
    """
    lines = [f"qubit q[{c.qubit_count}];", "bit c[1];"]

    def gate_line(gate: Gate) -> str:
        kind = gate.kind
        if kind is GateKind.CNOT:
            return f"cx q[{gate.qubits[0]}],q[{gate.qubits[1]}];"
        (q,) = gate.qubits
        if kind in (GateKind.R1, GateKind.R1DG):
            angle = gate.angle if kind is GateKind.R1 else -gate.angle
            return f"p({angle.numerator}*pi/{angle.denominator}) q[{q}];"
        return f"{kind.value} q[{q}];"

    for el in c.elements:
        if isinstance(el, ConditionedBlock):
            lines.append(f"measure q[{el.measured_qubit}] -> c[0];")
            lines.append("if (c[0] == 1) {")
            lines.extend(f"  {gate_line(g)}" for g in el.body.elements)
            lines.append("}")
        else:
            lines.append(gate_line(el))
    return "\n".join(lines) + "\n"
