import xml.etree.ElementTree as ET

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from braidwire.braid import BraidWord
from braidwire.emit import (
    QASM_SUBSET,
    CircuitDocument,
    circuit_document,
    emit_qasm,
    gate_statements,
    parse_qasm,
    render_braid_ascii,
    render_braid_svg,
    render_circuit_ascii,
    render_circuit_svg,
    render_svg,
)
from braidwire.errors import EmitError, ParseError
from braidwire.gates import recognize, standard_library
from braidwire.rep import ising_rep

from strategies import words

NS = {"s": "http://www.w3.org/2000/svg"}
HEADER_LINES = 4
TABLE1 = ["PG", "NKE", "HD", "UNH", "DIS", "AXP"]


def body(qasm: str) -> list[str]:
    return qasm.splitlines()[HEADER_LINES:]


def test_single_qubit_sequence():
    doc = CircuitDocument.from_names(1, ["S", "H", "H", "H", "X"])
    assert body(emit_qasm(doc)) == ["s q[0];", "h q[0];", "h q[0];", "h q[0];", "x q[0];"]


def test_empty_circuit_is_header_only():
    text = emit_qasm(CircuitDocument(2))
    assert text.splitlines()[0] == "OPENQASM 2.0;"
    assert body(text) == []
    assert "qreg q[2];" in text


def test_controlled_z():
    assert body(emit_qasm(CircuitDocument.from_names(2, ["CZ"]))) == ["cz q[0],q[1];"]


def test_parallel_z_is_two_lines():
    assert body(emit_qasm(CircuitDocument.from_names(2, ["Z1Z2"]))) == ["z q[0];", "z q[1];"]


def test_qubit_shift_documented():
    assert "q[k-1]" in emit_qasm(CircuitDocument(1))


def test_unmappable_names():
    for name, q in [("T", 1), ("H3", 2), ("X1dg", 2), ("CZ", 3)]:
        with pytest.raises(EmitError):
            gate_statements(name, q)


def test_every_library_gate_maps_into_subset():
    for q in (1, 2, 3):
        for g in standard_library(q):
            for gate, regs in gate_statements(g.name, q):
                assert gate in QASM_SUBSET
                assert all(0 <= r < q for r in regs)


def test_residue_becomes_comment():
    rc = recognize(BraidWord.from_ints(4, [-1, 2, -1]), ising_rep(4))
    text = emit_qasm(circuit_document(rc))
    assert "// residue: s2" in text
    size, ops = parse_qasm(text)
    assert size == 1 and ops == [("sdg", (0,)), ("sdg", (0,))]


@pytest.mark.parametrize(
    "text",
    [
        "",
        "OPENQASM 3.0;\nqreg q[1];\n",
        'OPENQASM 2.0;\ninclude "other.inc";\nqreg q[1];\n',
        "OPENQASM 2.0;\nqreg q[1];\nt q[0];\n",
        "OPENQASM 2.0;\nqreg q[1];\nh q[1];\n",
        "OPENQASM 2.0;\nqreg q[2];\ncz q[0];\n",
        "OPENQASM 2.0;\nqreg q[2];\ncz q[0],q[0];\n",
        "OPENQASM 2.0;\nqreg q[1];\nh q[0]\n",
    ],
)
def test_parse_qasm_rejects(text):
    with pytest.raises(ParseError):
        parse_qasm(text)


@pytest.mark.parametrize("n", [4, 6, 8])
@given(data=st.data())
@settings(max_examples=30)
def test_emitted_qasm_reparses(n, data):
    rc = recognize(data.draw(words(n, 8)), ising_rep(n))
    doc = circuit_document(rc)
    size, ops = parse_qasm(emit_qasm(doc))
    assert size == rc.qubits
    expected = [s for op in doc.ops for s in gate_statements(op.name, doc.qubits)]
    assert ops == expected


def test_ascii_captions():
    word = BraidWord.from_ints(6, [4, -1, -3])
    text = render_braid_ascii(word, TABLE1)
    caption = text.splitlines()[0].split()
    assert caption == ["σ4", "σ1⁻¹", "σ3⁻¹"]
    assert text.splitlines()[1].startswith("PG")


def test_ascii_empty_word():
    lines = render_braid_ascii(BraidWord(4, ())).splitlines()
    strand_lines = [ln for ln in lines[1:] if ln.strip()]
    assert len(strand_lines) == 4
    assert all("\\" not in ln and "/" not in ln for ln in strand_lines)


@given(words(6, 10))
@settings(max_examples=40)
def test_ascii_one_column_per_letter(word):
    text = render_braid_ascii(word)
    assert len(text.splitlines()[0].split()) == len(word)
    assert sum(ln.count("\\ /") for ln in text.splitlines()) == len(word)
    assert text == render_braid_ascii(word)


def test_ascii_final_labels_follow_permutation():
    text = render_braid_ascii(BraidWord.from_ints(4, [1]), ["A", "B", "C", "D"])
    rows = [ln for ln in text.splitlines()[1:] if ln.startswith(("A", "B", "C", "D"))]
    assert rows[0].endswith(" B") and rows[1].endswith(" A")


def test_ascii_label_count():
    with pytest.raises(ValueError):
        render_braid_ascii(BraidWord(4, ()), ["A"])


def svg_root(text):
    return ET.fromstring(text.split("\n", 1)[1])


def test_svg_two_under_crossings():
    root = svg_root(render_braid_svg(BraidWord.from_ints(4, [-2, -2])))
    marks = root.findall(".//s:text[@data-column]", NS)
    assert len(marks) == 2
    assert all(m.get("class") == "crossing under" for m in marks)


def test_svg_empty_word_horizontal_paths():
    root = svg_root(render_braid_svg(BraidWord(4, ())))
    paths = root.findall(".//s:path[@class='strand']", NS)
    assert len(paths) == 4
    for p in paths:
        pts = p.get("d").replace("M", "").split("L")
        ys = {pt.split()[1] for pt in pts}
        assert len(ys) == 1


def test_svg_under_strand_is_broken():
    root = svg_root(render_braid_svg(BraidWord.from_ints(4, [1])))
    paths = {p.get("data-label"): p.get("d") for p in root.findall(".//s:path", NS)}
    assert paths["1"].count("M") == 1  # moving down, passes over
    assert paths["2"].count("M") == 2  # broken underneath


def test_svg_gate_overlay():
    word = BraidWord.from_ints(4, [1, 2, 1])
    rc = recognize(word, ising_rep(4))
    root = svg_root(render_braid_svg(word, circuit=rc))
    (rect,) = root.findall(".//s:rect[@class='gate']", NS)
    (label,) = root.findall(".//s:text[@class='gate-label']", NS)
    assert label.text == "H"
    assert float(rect.get("width")) > 2 * 40


@given(words(6, 10))
@settings(max_examples=30)
def test_svg_column_bijection_and_determinism(word):
    text = render_braid_svg(word)
    root = svg_root(text)
    cols = [int(m.get("data-column")) for m in root.findall(".//s:text[@data-column]", NS)]
    assert cols == list(range(len(word)))
    assert text == render_braid_svg(word)


def test_circuit_renderings():
    rc = recognize(BraidWord.from_ints(6, [1, -3, 5, 4, 5, 4, 2]), ising_rep(6))
    doc = circuit_document(rc)
    svg = render_circuit_svg(doc)
    svg_root(svg)
    assert svg == render_svg(rc) == render_svg(doc)
    art = render_circuit_ascii(doc)
    assert art.startswith("q1:") and "@" in art and "[H]" in art
    assert len(art.splitlines()) == 2


def test_render_svg_dispatch():
    assert render_svg(BraidWord(4, ())).startswith("<?xml")
    with pytest.raises(TypeError):
        render_svg(42)
