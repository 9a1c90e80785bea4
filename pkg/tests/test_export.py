"""Text-diagram and assembly serialization."""

import re
from fractions import Fraction

from fcnot.boolfn import TruthTable
from fcnot.circuit import Circuit, cnot, h, r1, r1dg, x
from fcnot.export import format_pi_multiple, to_qasm, to_text_diagram
from fcnot.synth import ConstructionKind, synthesize

AND2 = TruthTable.from_value(2, 0b1000)


def test_format_pi_multiple():
    assert format_pi_multiple(Fraction(0)) == "0"
    assert format_pi_multiple(Fraction(1, 4)) == "pi/4"
    assert format_pi_multiple(Fraction(-1, 4)) == "-pi/4"
    assert format_pi_multiple(Fraction(3, 8)) == "3pi/8"
    assert format_pi_multiple(Fraction(1)) == "pi"
    assert format_pi_multiple(Fraction(-2)) == "-2pi"


# ---------------------------------------------------------------------------
# Diagrams


def test_empty_circuit_renders_labeled_wires():
    out = to_text_diagram(Circuit(2, roles=("x1", "target")))
    lines = out.splitlines()
    assert len(lines) == 2
    assert lines[0].startswith("x1_0:")
    assert lines[1].startswith("y_1:")


def test_single_cnot_renders_control_and_target():
    out = to_text_diagram(Circuit(2, (cnot(0, 1),)))
    lines = out.splitlines()
    assert "●" in lines[0]
    assert "⊕" in lines[1]
    assert lines[0].index("●") == lines[1].index("⊕")


def test_and_low_width_diagram_shape():
    circuit = synthesize(AND2, ConstructionKind.AND_LOW_WIDTH).circuit
    out = to_text_diagram(circuit)
    lines = out.splitlines()
    assert len(lines) == 3
    assert lines[0].startswith("x1_0:")
    assert lines[2].startswith("y_2:")
    for token in ("H", "S", "R1†(pi/4)", "R1†(-pi/4)", "⊕"):
        assert token in lines[2] or token in out


def test_conditioned_block_rendered_with_classical_wire():
    circuit = synthesize(AND2, ConstructionKind.ANDDG_LOW_WIDTH).circuit
    out = to_text_diagram(circuit)
    assert "M" in out
    assert "═" in out  # classical double wire on the measured row
    assert "║" in out  # drop from a conditioned gate to the classical wire


def test_diagram_wraps_at_column_cap():
    circuit = synthesize(AND2, ConstructionKind.GENERAL_LOW_WIDTH).circuit
    out = to_text_diagram(circuit, max_columns=4)
    sections = out.split("\n\n")
    assert len(sections) > 1
    assert "…" in sections[0]
    assert "…" in sections[1]


def test_diagram_is_deterministic():
    circuit = synthesize(AND2, ConstructionKind.GENERAL_DEPTH1).circuit
    assert to_text_diagram(circuit) == to_text_diagram(circuit)


# ---------------------------------------------------------------------------
# Assembly text


def test_qasm_single_hadamard():
    out = to_qasm(Circuit(1, (h(0),)))
    assert out == "qubit q[1];\nbit c[1];\nh q[0];\n"


def test_qasm_exact_angle_literals():
    out = to_qasm(Circuit(1, (r1(Fraction(1, 4), 0),)))
    assert "p(1*pi/4) q[0];" in out
    out = to_qasm(Circuit(1, (r1dg(Fraction(1, 4), 0),)))
    assert "p(-1*pi/4) q[0];" in out


def test_qasm_no_floating_point_literals():
    for kind in ConstructionKind:
        out = to_qasm(synthesize(AND2, kind).circuit)
        for arg in re.findall(r"p\(([^)]*)\)", out):
            assert re.fullmatch(r"-?\d+\*pi/\d+", arg)
        assert "." not in out.replace(".inc", "")


def test_qasm_conditioned_block_structure():
    out = to_qasm(synthesize(AND2, ConstructionKind.ANDDG_LOW_WIDTH).circuit)
    assert out.count("measure") == 1
    assert out.count("if (c[0] == 1) {") == 1
    assert out.index("measure") < out.index("if (")
    assert out.rstrip().endswith("}")


def test_qasm_deterministic_and_injective_spot_checks():
    a = synthesize(AND2, ConstructionKind.GENERAL_LOW_WIDTH).circuit
    b = synthesize(AND2, ConstructionKind.AND_LOW_WIDTH).circuit
    assert to_qasm(a) == to_qasm(a)
    assert to_qasm(a) != to_qasm(b)
    assert to_qasm(Circuit(1, (h(0),))) != to_qasm(Circuit(1, (x(0),)))
