"""Gate library, braid-word segmentation and brute-force realization search."""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence, Union

from .braid import BraidWord, Crossing, free_reduce
from .cyclo import INV_SQRT2, I as _I, CycloMatrix, CycloValue, mat_identity, mat_mul, mat_tensor
from .errors import DimensionError, UnknownGateError
from .rep import IsingRep, generator_matrix, projective_equal

__all__ = [
    "GateDef",
    "GateHit",
    "Residue",
    "RecognizedCircuit",
    "DEFAULT_MAX_WINDOW",
    "single_qubit_gates",
    "standard_library",
    "gate_on_qubit",
    "find_gate",
    "recognize",
    "enumerate_realizations",
]

DEFAULT_MAX_WINDOW = 6


@dataclass(frozen=True)
class GateDef:
    name: str
    qubit_count: int
    matrix: CycloMatrix
    display_symbol: str

    def __post_init__(self):
        if self.matrix.dim != 1 << self.qubit_count:
            raise DimensionError(f"{self.name}: matrix size does not match {self.qubit_count} qubits")


def _m(rows):
    return CycloMatrix(rows)


@lru_cache(maxsize=None)
def single_qubit_gates() -> tuple[GateDef, ...]:
    h = INV_SQRT2
    return (
        GateDef("I", 1, mat_identity(2), "I"),
        GateDef("H", 1, _m([[h, h], [h, -h]]), "H"),
        GateDef("S", 1, CycloMatrix.diag([1, _I]), "S"),
        GateDef("Sdg", 1, CycloMatrix.diag([1, -_I]), "S†"),
        GateDef("X", 1, _m([[0, 1], [1, 0]]), "X"),
        GateDef("Y", 1, _m([[0, -_I], [_I, 0]]), "Y"),
        GateDef("Z", 1, CycloMatrix.diag([1, -1]), "Z"),
    )


def _embedded_name(base: str, qubit: int) -> str:
    if base == "Sdg":
        return f"S{qubit}dg"
    return f"{base}{qubit}"


def gate_on_qubit(base: GateDef, qubit: int, total_qubits: int) -> GateDef:
    """Embed a 1-qubit gate on ``qubit`` (1-based, qubit 1 most significant)."""
    if base.qubit_count != 1:
        raise ValueError(f"{base.name} is not a 1-qubit gate")
    if not 1 <= qubit <= total_qubits:
        raise IndexError(f"qubit {qubit} out of range 1..{total_qubits}")
    m = None
    for k in range(1, total_qubits + 1):
        factor = base.matrix if k == qubit else mat_identity(2)
        m = factor if m is None else mat_tensor(m, factor)
    name = base.name if total_qubits == 1 else _embedded_name(base.name, qubit)
    symbol = base.display_symbol
    return GateDef(name, total_qubits, m, symbol)


def _controlled_z(q: int, a: int, b: int) -> CycloMatrix:
    values = []
    for r in range(1 << q):
        both = (r >> (q - a)) & 1 and (r >> (q - b)) & 1
        values.append(-1 if both else 1)
    return CycloMatrix.diag(values)


def _cnot(q: int, control: int, target: int) -> CycloMatrix:
    dim = 1 << q
    rows = [[0] * dim for _ in range(dim)]
    for r in range(dim):
        c = r ^ (1 << (q - target)) if (r >> (q - control)) & 1 else r
        rows[c][r] = 1
    return CycloMatrix(rows)


@lru_cache(maxsize=None)
def standard_library(qubits: int) -> tuple[GateDef, ...]:
    """Named target gates for 1, 2 or 3 qubits, in match-priority order."""
    base = single_qubit_gates()
    if qubits == 1:
        return base
    if qubits not in (2, 3):
        raise ValueError(f"no standard library for {qubits} qubits")
    gates = [GateDef("I", qubits, mat_identity(1 << qubits), "I")]
    for g in base[1:]:
        for k in range(1, qubits + 1):
            gates.append(gate_on_qubit(g, k, qubits))
    z = base[-1]
    for k in range(1, qubits):
        m = mat_mul(gate_on_qubit(z, k, qubits).matrix, gate_on_qubit(z, k + 1, qubits).matrix)
        gates.append(GateDef(f"Z{k}Z{k + 1}", qubits, m, "Z Z"))
    if qubits == 2:
        gates.append(GateDef("CZ", 2, _controlled_z(2, 1, 2), "CZ"))
        gates.append(GateDef("CNOT", 2, _cnot(2, 1, 2), "CX"))
    else:
        for k in range(1, qubits):
            gates.append(GateDef(f"CZ{k}{k + 1}", qubits, _controlled_z(qubits, k, k + 1), "CZ"))
            gates.append(GateDef(f"CNOT{k}{k + 1}", qubits, _cnot(qubits, k, k + 1), "CX"))
    return tuple(gates)


def find_gate(name: str, qubits: int) -> GateDef:
    for g in standard_library(qubits):
        if g.name == name:
            return g
    raise UnknownGateError(f"no gate named {name!r} for {qubits} qubit(s)")


@dataclass(frozen=True)
class GateHit:
    name: str
    start: int
    length: int
    phase: CycloValue
    timestamps: tuple[str, str] | None = None

    @property
    def window(self) -> tuple[int, int]:
        return (self.start, self.length)


@dataclass(frozen=True)
class Residue:
    start: int
    letters: tuple[Crossing, ...]

    @property
    def length(self) -> int:
        return len(self.letters)

    @property
    def window(self) -> tuple[int, int]:
        return (self.start, self.length)

    @property
    def timestamps(self):
        return _span(self.letters)


Item = Union[GateHit, Residue]


def _span(letters: Sequence[Crossing]):
    if letters and letters[0].tick is not None and letters[-1].tick is not None:
        return (letters[0].tick[0], letters[-1].tick[1])
    return None


@dataclass(frozen=True)
class RecognizedCircuit:
    qubits: int
    word: BraidWord  # the reduced word that windows index into
    items: tuple[Item, ...]

    @property
    def gates(self) -> list[GateHit]:
        return [x for x in self.items if isinstance(x, GateHit)]

    @property
    def labels(self) -> list[str]:
        return [x.name for x in self.gates]

    def to_json_obj(self) -> dict:
        items = []
        for x in self.items:
            span = x.timestamps
            if isinstance(x, GateHit):
                item = {
                    "type": "gate",
                    "name": x.name,
                    "window": [x.start, x.length],
                    "phase": x.phase.to_json(),
                    "phaseText": x.phase.render(),
                }
            else:
                item = {
                    "type": "residue",
                    "window": [x.start, x.length],
                    "letters": [c.strand * c.sign for c in x.letters],
                }
            item["from"], item["to"] = span if span else (None, None)
            items.append(item)
        return {
            "schemaVersion": 1,
            "qubits": self.qubits,
            "strands": self.word.strands,
            "word": self.word.to_ints(),
            "items": items,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_obj(), indent=2, ensure_ascii=False) + "\n"


def _check_compat(word: BraidWord, rep: IsingRep, library: Sequence[GateDef]):
    if word.strands != rep.strands:
        raise DimensionError(f"word on {word.strands} strands, representation on {rep.strands}")
    for g in library:
        if g.qubit_count != rep.qubits:
            raise DimensionError(f"gate {g.name} acts on {g.qubit_count} qubits, rep on {rep.qubits}")


def _match(m: CycloMatrix, identity: CycloMatrix, library: Sequence[GateDef]):
    hit = projective_equal(m, identity)
    if hit:
        return None, hit.phase
    for g in library:
        hit = projective_equal(m, g.matrix)
        if hit:
            return g, hit.phase
    return False, None


def recognize(
    word: BraidWord,
    rep: IsingRep,
    library: Sequence[GateDef] | None = None,
    max_window: int = DEFAULT_MAX_WINDOW,
) -> RecognizedCircuit:
    """Greedy left-to-right segmentation of a braid word into gates.

    At each position the longest window (up to ``max_window`` letters) whose
    product is projectively a library gate or the identity wins; ties go to
    library order. Identity windows are dropped. Letters that start no match
    accumulate into a residue. The word is free-reduced first.
    """
    if max_window < 1:
        raise ValueError("max_window must be at least 1")
    if library is None:
        library = standard_library(rep.qubits)
    _check_compat(word, rep, library)
    word = free_reduce(word)
    letters = word.letters
    identity = mat_identity(rep.dim)
    items: list[Item] = []
    pending: list[Crossing] = []
    pending_start = 0
    pos = 0
    while pos < len(letters):
        best = None
        product = None
        for length in range(1, min(max_window, len(letters) - pos) + 1):
            c = letters[pos + length - 1]
            g = generator_matrix(rep, c.strand, c.sign)
            product = g if product is None else mat_mul(product, g)
            gate, phase = _match(product, identity, library)
            if gate is not False:
                best = (length, gate, phase)
        if best is None:
            if not pending:
                pending_start = pos
            pending.append(letters[pos])
            pos += 1
            continue
        if pending:
            items.append(Residue(pending_start, tuple(pending)))
            pending = []
        length, gate, phase = best
        if gate is not None:
            items.append(GateHit(gate.name, pos, length, phase, _span(letters[pos : pos + length])))
        pos += length
    if pending:
        items.append(Residue(pending_start, tuple(pending)))
    return RecognizedCircuit(rep.qubits, word, tuple(items))


def enumerate_realizations(target: GateDef, rep: IsingRep, max_length: int) -> list[BraidWord]:
    """All words of length 1..max_length whose product is projectively ``target``.

    Sorted by length, then lexicographically on (strand, sign) with σi before σi⁻¹.
    """
    if max_length > 8:
        raise ValueError("max_length above 8 is not tractable")
    if target.qubit_count != rep.qubits:
        raise DimensionError(f"gate {target.name} acts on {target.qubit_count} qubits, rep on {rep.qubits}")
    alphabet = [(i, s) for i in range(1, rep.strands) for s in (1, -1)]
    mats = {a: generator_matrix(rep, *a) for a in alphabet}
    found: list[tuple[tuple[int, int], ...]] = []

    # depth-first in alphabet order yields lexicographic order within a length
    def walk(prefix, product, depth):
        for a in alphabet:
            m = mats[a] if product is None else mat_mul(product, mats[a])
            word = prefix + (a,)
            if depth == 1:
                if projective_equal(m, target.matrix):
                    found.append(word)
            else:
                walk(word, m, depth - 1)

    results = []
    for length in range(1, max_length + 1):
        found.clear()
        walk((), None, length)
        results.extend(
            BraidWord(rep.strands, tuple(Crossing(i, s) for i, s in w)) for w in found
        )
    return results
