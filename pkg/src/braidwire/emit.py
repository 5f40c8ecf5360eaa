"""
Serializers: QASM 2.0 text, ASCII and SVG diagrams.

Everything here is a pure function of its inputs and produces byte-identical
output for identical inputs. Strand 1 is drawn topmost and time runs left to
right. Gate labels use 1-based qubits; QASM registers are 0-based.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Sequence
from xml.sax.saxutils import escape

from .braid import BraidWord, apply_word, letter_text
from .errors import EmitError, ParseError
from .gates import GateHit, RecognizedCircuit

__all__ = [
    "CircuitOp",
    "ResidueSegment",
    "CircuitDocument",
    "QASM_SUBSET",
    "circuit_document",
    "gate_statements",
    "emit_qasm",
    "parse_qasm",
    "render_braid_ascii",
    "render_circuit_ascii",
    "render_braid_svg",
    "render_circuit_svg",
    "render_svg",
]

QASM_SUBSET = frozenset({"h", "s", "sdg", "x", "y", "z", "cz", "cx", "id"})

_SINGLE = {"I": "id", "H": "h", "S": "s", "Sdg": "sdg", "X": "x", "Y": "y", "Z": "z"}
_EMBEDDED_RE = re.compile(r"^(I|H|S|X|Y|Z)(\d+)(dg)?$")
_PARALLEL_Z_RE = re.compile(r"^Z(\d+)Z(\d+)$")
_TWO_QUBIT_RE = re.compile(r"^(CZ|CNOT)(\d)(\d)$")


def gate_statements(name: str, qubits: int) -> list[tuple[str, tuple[int, ...]]]:
    """QASM statements for a gate label as (gate, register indices)."""

    def reg(*label_qubits):
        for k in label_qubits:
            if not 1 <= k <= qubits:
                raise EmitError(f"gate {name!r} addresses qubit {k} outside 1..{qubits}")
        return tuple(k - 1 for k in label_qubits)

    if name in _SINGLE and qubits == 1:
        return [(_SINGLE[name], reg(1))]
    if name == "I":
        return [("id", reg(k)) for k in range(1, qubits + 1)]
    m = _EMBEDDED_RE.match(name)
    if m:
        base = m.group(1) + ("dg" if m.group(3) else "")
        if m.group(3) and m.group(1) != "S":
            raise EmitError(f"cannot map gate {name!r} to QASM")
        return [(_SINGLE[base], reg(int(m.group(2))))]
    m = _PARALLEL_Z_RE.match(name)
    if m:
        a, b = int(m.group(1)), int(m.group(2))
        return [("z", reg(a)), ("z", reg(b))]
    if name in ("CZ", "CNOT") and qubits == 2:
        return [("cz" if name == "CZ" else "cx", reg(1, 2))]
    m = _TWO_QUBIT_RE.match(name)
    if m:
        return [("cz" if m.group(1) == "CZ" else "cx", reg(int(m.group(2)), int(m.group(3))))]
    raise EmitError(f"cannot map gate {name!r} to QASM")


@dataclass(frozen=True)
class CircuitOp:
    name: str
    qubits: tuple[int, ...]  # 1-based
    window: tuple[int, int]
    timestamps: tuple[str, str] | None = None


@dataclass(frozen=True)
class ResidueSegment:
    position: int  # number of ops preceding the residue
    window: tuple[int, int]
    letters: tuple[tuple[int, int], ...]
    timestamps: tuple[str, str] | None = None

    def text(self, unicode: bool = False) -> str:
        return " ".join(letter_text(i, s, unicode) for i, s in self.letters)


@dataclass(frozen=True)
class CircuitDocument:
    qubits: int
    ops: tuple[CircuitOp, ...] = ()
    residues: tuple[ResidueSegment, ...] = ()

    def __post_init__(self):
        for op in self.ops:
            for k in op.qubits:
                if not 1 <= k <= self.qubits:
                    raise ValueError(f"{op.name}: qubit {k} out of range")

    @classmethod
    def from_names(cls, qubits: int, names: Sequence[str]) -> CircuitDocument:
        ops = []
        for n, name in enumerate(names):
            touched = sorted({r + 1 for _, regs in gate_statements(name, qubits) for r in regs})
            ops.append(CircuitOp(name, tuple(touched), (n, 1)))
        return cls(qubits, tuple(ops))

    def sequence(self) -> list[CircuitOp | ResidueSegment]:
        """Ops and residues interleaved in source order."""
        out: list = []
        residues = list(self.residues)
        for n, op in enumerate(self.ops):
            while residues and residues[0].position == n:
                out.append(residues.pop(0))
            out.append(op)
        out.extend(residues)
        return out


def circuit_document(circuit: RecognizedCircuit) -> CircuitDocument:
    ops = []
    residues = []
    for item in circuit.items:
        if isinstance(item, GateHit):
            stmts = gate_statements(item.name, circuit.qubits)
            touched = tuple(sorted({r + 1 for _, regs in stmts for r in regs}))
            ops.append(CircuitOp(item.name, touched, item.window, item.timestamps))
        else:
            residues.append(
                ResidueSegment(len(ops), item.window, tuple(c.letter for c in item.letters), item.timestamps)
            )
    return CircuitDocument(circuit.qubits, tuple(ops), tuple(residues))


# -- QASM ---------------------------------------------------------------


def emit_qasm(circuit: CircuitDocument) -> str:
    lines = [
        "OPENQASM 2.0;",
        'include "qelib1.inc";',
        "// gate label qubit k is register index q[k-1]",
        f"qreg q[{circuit.qubits}];",
    ]
    for entry in circuit.sequence():
        if isinstance(entry, ResidueSegment):
            span = f" {entry.timestamps[0]}..{entry.timestamps[1]}" if entry.timestamps else ""
            lines.append(f"// residue{span}: {entry.text()}")
            continue
        for gate, regs in gate_statements(entry.name, circuit.qubits):
            if gate not in QASM_SUBSET:
                raise EmitError(f"gate {gate!r} outside the QASM subset")
            lines.append(f"{gate} " + ",".join(f"q[{r}]" for r in regs) + ";")
    return "\n".join(lines) + "\n"


_STMT_RE = re.compile(r"^([a-z]+)\s+(q\[\d+\](?:\s*,\s*q\[\d+\])*)\s*;$")
_ARITY = {"h": 1, "s": 1, "sdg": 1, "x": 1, "y": 1, "z": 1, "id": 1, "cz": 2, "cx": 2}


def parse_qasm(text: str) -> tuple[int, list[tuple[str, tuple[int, ...]]]]:
    """Statement-level parser for the emitted QASM 2.0 subset.

    Returns the register size and the gate applications.
    """
    state = "version"
    size = 0
    ops = []
    for lineno, raw in enumerate(text.split("\n"), start=1):
        line = raw.split("//", 1)[0].strip()
        if not line:
            continue
        if state == "version":
            if line != "OPENQASM 2.0;":
                raise ParseError("expected 'OPENQASM 2.0;'", lineno)
            state = "include"
            continue
        if state == "include" and line.startswith("include"):
            if line != 'include "qelib1.inc";':
                raise ParseError("unsupported include", lineno)
            state = "qreg"
            continue
        if state in ("include", "qreg"):
            m = re.match(r"^qreg\s+q\[(\d+)\]\s*;$", line)
            if not m:
                raise ParseError("expected qreg declaration", lineno)
            size = int(m.group(1))
            if size < 1:
                raise ParseError("empty register", lineno)
            state = "body"
            continue
        m = _STMT_RE.match(line)
        if not m:
            raise ParseError(f"malformed statement {line!r}", lineno)
        gate = m.group(1)
        if gate not in _ARITY:
            raise ParseError(f"gate {gate!r} not in subset", lineno)
        regs = tuple(int(x) for x in re.findall(r"q\[(\d+)\]", m.group(2)))
        if len(regs) != _ARITY[gate]:
            raise ParseError(f"{gate} takes {_ARITY[gate]} operand(s)", lineno)
        if any(r >= size for r in regs) or len(set(regs)) != len(regs):
            raise ParseError("bad register index", lineno)
        ops.append((gate, regs))
    if state != "body":
        raise ParseError("missing header or register declaration")
    return size, ops


# -- ASCII --------------------------------------------------------------


def _strand_labels(word: BraidWord, labels: Sequence[str] | None) -> list[str]:
    if labels is None:
        labels = word.labels
    if labels is None:
        labels = [str(p) for p in range(1, word.strands + 1)]
    if len(labels) != word.strands:
        raise ValueError("need one label per strand")
    return list(labels)


def render_braid_ascii(word: BraidWord, labels: Sequence[str] | None = None) -> str:
    """Fixed-width braid diagram, one column per letter, captions on top.

    In the gap row a ``\\`` means the strand moving down passes over, ``/``
    means the strand moving up passes over.
    """
    labels = _strand_labels(word, labels)
    n = word.strands
    captions = [letter_text(c.strand, c.sign) for c in word.letters]
    width = max([7] + [len(c) + 3 for c in captions])
    width += 1 - width % 2  # odd, so the glyph has a centre
    mid = width // 2
    left = max(len(s) for s in labels) + 1
    final = apply_word(labels, word)

    rows = [[] for _ in range(2 * n - 1)]
    for c in word.letters:
        top = 2 * (c.strand - 1)
        for r in range(2 * n - 1):
            if r == top:
                cell = "-" * (mid - 1) + "\\ /" + "-" * (width - mid - 2)
            elif r == top + 2:
                cell = "-" * (mid - 1) + "/ \\" + "-" * (width - mid - 2)
            elif r == top + 1:
                cell = " " * mid + ("\\" if c.sign > 0 else "/") + " " * (width - mid - 1)
            elif r % 2 == 0:
                cell = "-" * width
            else:
                cell = " " * width
            rows[r].append(cell)

    out = [" " * left + "".join(cap.center(width) for cap in captions)]
    for r in range(2 * n - 1):
        body = "".join(rows[r])
        if r % 2 == 0:
            p = r // 2
            out.append(labels[p].ljust(left) + "--" + body + "-- " + final[p])
        else:
            out.append(" " * left + "  " + body)
    return "\n".join(line.rstrip() for line in out) + "\n"


def render_circuit_ascii(circuit: CircuitDocument) -> str:
    entries = circuit.sequence()
    cells = []
    for e in entries:
        if isinstance(e, ResidueSegment):
            cells.append({k: "~" + e.text() + "~" for k in range(1, circuit.qubits + 1)})
            continue
        if e.name in ("CZ",) or e.name.startswith("CZ"):
            cells.append({k: "@" for k in e.qubits})
        elif e.name.startswith("CNOT"):
            cells.append({e.qubits[0]: "@", e.qubits[1]: "(+)"})
        elif _PARALLEL_Z_RE.match(e.name):
            cells.append({k: "[Z]" for k in e.qubits})
        else:
            m = _EMBEDDED_RE.match(e.name)
            sym = e.name if not m else m.group(1) + ("dg" if m.group(3) else "")
            cells.append({k: f"[{sym}]" for k in e.qubits})
    lines = []
    for k in range(1, circuit.qubits + 1):
        parts = []
        for col in cells:
            w = max(len(v) for v in col.values()) + 2
            parts.append(col.get(k, "").center(w, "-"))
        lines.append(f"q{k}: -" + "".join(parts) + "-")
    return "\n".join(lines) + "\n"


# -- SVG ----------------------------------------------------------------

_PALETTE = ("#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b", "#e377c2", "#17becf")
_COL = 40
_ROW = 30
_LEFT = 70
_TOP = 40
_GAP = 0.18  # fraction of the diagonal left open around an under-crossing


def _fmt(x: float) -> str:
    s = f"{x:.2f}".rstrip("0").rstrip(".")
    return s if s != "-0" else "0"


def _svg_open(width: float, height: float) -> list[str]:
    return [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{_fmt(width)}" height="{_fmt(height)}" '
        f'viewBox="0 0 {_fmt(width)} {_fmt(height)}" font-family="monospace" font-size="11">',
    ]


def render_braid_svg(
    word: BraidWord,
    labels: Sequence[str] | None = None,
    circuit: RecognizedCircuit | None = None,
) -> str:
    """Braid diagram; the under-strand is broken at every crossing.

    With ``circuit`` the gate windows are overlaid as labelled boxes.
    """
    labels = _strand_labels(word, labels)
    n = word.strands
    cols = len(word.letters)
    lead = _COL / 2
    width = _LEFT + lead * 2 + _COL * cols + 70
    height = _TOP + _ROW * (n - 1) + 50

    def y(p):  # strand position 1..n
        return _TOP + _ROW * (p - 1)

    # pen state per strand identity: list of subpaths (lists of points)
    pos_of = {p: p for p in range(1, n + 1)}  # identity -> current position
    at = {p: p for p in range(1, n + 1)}  # position -> identity
    paths = {p: [[(_LEFT, y(p)), (_LEFT + lead, y(p))]] for p in range(1, n + 1)}
    marks = []
    for k, c in enumerate(word.letters):
        x0 = _LEFT + lead + _COL * k
        x1 = x0 + _COL
        down, up = at[c.strand], at[c.strand + 1]  # identities moving down / up
        over = down if c.sign > 0 else up
        for ident in range(1, n + 1):
            sub = paths[ident][-1]
            p = pos_of[ident]
            if ident == down or ident == up:
                ya, yb = y(p), y(p + 1 if ident == down else p - 1)
                if ident == over:
                    sub.append((x1, yb))
                else:
                    lo, hi = 0.5 - _GAP, 0.5 + _GAP
                    sub.append((x0 + _COL * lo, ya + (yb - ya) * lo))
                    paths[ident].append([(x0 + _COL * hi, ya + (yb - ya) * hi), (x1, yb)])
            else:
                sub.append((x1, y(p)))
        pos_of[down], pos_of[up] = c.strand + 1, c.strand
        at[c.strand], at[c.strand + 1] = up, down
        kind = "over" if c.sign > 0 else "under"
        marks.append(
            f'<text class="crossing {kind}" data-column="{k}" data-strand="{c.strand}" '
            f'x="{_fmt((x0 + x1) / 2)}" y="{_fmt(y(n) + 28)}" text-anchor="middle">'
            f"{escape(letter_text(c.strand, c.sign))}</text>"
        )
    x_end = _LEFT + lead + _COL * cols + lead
    for ident in range(1, n + 1):
        paths[ident][-1].append((x_end, y(pos_of[ident])))

    out = _svg_open(width, height)
    if circuit is not None:
        out.append('<g class="gates">')
        for hit in circuit.gates:
            gx = _LEFT + lead + _COL * hit.start
            out.append(
                f'<rect class="gate" x="{_fmt(gx + 2)}" y="{_fmt(_TOP - 22)}" '
                f'width="{_fmt(_COL * hit.length - 4)}" height="{_fmt(_ROW * (n - 1) + 34)}" '
                f'fill="#fff3c4" stroke="#b8860b" stroke-dasharray="4 2"/>'
            )
            out.append(
                f'<text class="gate-label" x="{_fmt(gx + _COL * hit.length / 2)}" y="{_fmt(_TOP - 10)}" '
                f'text-anchor="middle">{escape(hit.name)}</text>'
            )
        out.append("</g>")
    out.append('<g class="labels">')
    for p in range(1, n + 1):
        out.append(f'<text x="{_fmt(_LEFT - 6)}" y="{_fmt(y(p) + 4)}" text-anchor="end">{escape(labels[p - 1])}</text>')
    final = apply_word(labels, word)
    for p in range(1, n + 1):
        out.append(f'<text x="{_fmt(x_end + 6)}" y="{_fmt(y(p) + 4)}">{escape(final[p - 1])}</text>')
    out.append("</g>")
    out.append('<g class="strands" fill="none" stroke-width="2.5" stroke-linecap="round">')
    for ident in range(1, n + 1):
        d = " ".join(
            "M " + " L ".join(f"{_fmt(px)} {_fmt(py)}" for px, py in sub) for sub in paths[ident]
        )
        color = _PALETTE[(ident - 1) % len(_PALETTE)]
        out.append(f'<path class="strand" data-label="{escape(labels[ident - 1])}" stroke="{color}" d="{d}"/>')
    out.append("</g>")
    out.append('<g class="crossings">')
    out.extend(marks)
    out.append("</g>")
    out.append("</svg>")
    return "\n".join(out) + "\n"


def render_circuit_svg(circuit: CircuitDocument) -> str:
    entries = circuit.sequence()
    q = circuit.qubits
    step = 56
    width = _LEFT + step * (len(entries) + 1)
    height = _TOP + _ROW * 1.5 * (q - 1) + 40

    def wy(k):
        return _TOP + _ROW * 1.5 * (k - 1)

    out = _svg_open(width, height)
    out.append('<g class="wires" stroke="black" stroke-width="1.5">')
    for k in range(1, q + 1):
        out.append(f'<line x1="{_fmt(_LEFT)}" y1="{_fmt(wy(k))}" x2="{_fmt(width - 10)}" y2="{_fmt(wy(k))}"/>')
    out.append("</g>")
    out.append('<g class="labels">')
    for k in range(1, q + 1):
        out.append(f'<text x="{_fmt(_LEFT - 8)}" y="{_fmt(wy(k) + 4)}" text-anchor="end">q{k}</text>')
    out.append("</g>")
    out.append('<g class="ops">')
    for col, e in enumerate(entries):
        cx = _LEFT + step * (col + 1)
        if isinstance(e, ResidueSegment):
            out.append(
                f'<rect class="residue" x="{_fmt(cx - 22)}" y="{_fmt(wy(1) - 14)}" width="44" '
                f'height="{_fmt(wy(q) - wy(1) + 28)}" fill="white" stroke="gray" stroke-dasharray="3 2"/>'
            )
            out.append(
                f'<text class="residue-label" x="{_fmt(cx)}" y="{_fmt(wy(q) + 28)}" text-anchor="middle" '
                f'font-size="9">{escape(e.text(unicode=True))}</text>'
            )
            continue
        controlled = e.name.startswith("CZ") or e.name.startswith("CNOT")
        if controlled:
            ys = [wy(k) for k in e.qubits]
            out.append(
                f'<line class="control" x1="{_fmt(cx)}" y1="{_fmt(min(ys))}" x2="{_fmt(cx)}" '
                f'y2="{_fmt(max(ys))}" stroke="black" stroke-width="1.5"/>'
            )
            targets = e.qubits if e.name.startswith("CZ") else e.qubits[:1]
            for k in targets:
                out.append(f'<circle class="dot" cx="{_fmt(cx)}" cy="{_fmt(wy(k))}" r="4" fill="black"/>')
            if e.name.startswith("CNOT"):
                k = e.qubits[1]
                out.append(
                    f'<circle class="target" cx="{_fmt(cx)}" cy="{_fmt(wy(k))}" r="8" fill="white" stroke="black"/>'
                )
            continue
        m = _EMBEDDED_RE.match(e.name)
        sym = e.name if not m else m.group(1) + ("†" if m.group(3) else "")
        if e.name == "Sdg":
            sym = "S†"
        if _PARALLEL_Z_RE.match(e.name):
            sym = "Z"
        for k in e.qubits:
            out.append(
                f'<rect class="gate" data-name="{escape(e.name)}" x="{_fmt(cx - 13)}" y="{_fmt(wy(k) - 13)}" '
                f'width="26" height="26" fill="white" stroke="black"/>'
            )
            out.append(f'<text x="{_fmt(cx)}" y="{_fmt(wy(k) + 4)}" text-anchor="middle">{escape(sym)}</text>')
    out.append("</g>")
    out.append("</svg>")
    return "\n".join(out) + "\n"


def render_svg(obj, **kwargs) -> str:
    """Dispatch on a braid word, a recognized circuit or a circuit document."""
    if isinstance(obj, BraidWord):
        return render_braid_svg(obj, **kwargs)
    if isinstance(obj, RecognizedCircuit):
        return render_circuit_svg(circuit_document(obj))
    if isinstance(obj, CircuitDocument):
        return render_circuit_svg(obj)
    raise TypeError(f"cannot render {type(obj).__name__}")
