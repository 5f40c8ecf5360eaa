"""Identity checks for the generator tables and the braid-to-gate catalogue."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Iterator

from .braid import BraidWord
from .cyclo import I, INV_SQRT2, CycloMatrix, CycloValue, mat_identity
from .gates import enumerate_realizations, find_gate, recognize, standard_library
from .rep import IsingRep, ising_rep, letters_product, projective_equal, word_product

HARD = "hard"
INFO = "informational"

# Integer patterns of the generators as usually printed, prefactors dropped.
PRINTED_GENERATORS = {
    4: {
        1: [[1, 0], [0, "i"]],
        2: [[1, "-i"], ["-i", 1]],
        3: [[1, 0], [0, "i"]],
    },
    6: {
        1: [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, "i", 0], [0, 0, 0, "i"]],
        2: [[1, 0, "-i", 0], [0, 1, 0, "-i"], ["-i", 0, 1, 0], [0, "-i", 0, 1]],
        3: [[1, 0, 0, 0], [0, "i", 0, 0], [0, 0, "i", 0], [0, 0, 0, 1]],
        4: [[1, "-i", 0, 0], ["-i", 1, 0, 0], [0, 0, 1, "-i"], [0, 0, "-i", 1]],
        5: [[1, 0, 0, 0], [0, "i", 0, 0], [0, 0, 1, 0], [0, 0, 0, "i"]],
    },
}

# (strands, word as signed ints, gate label, phase must be exactly 1)
GATE_IDENTITIES = [
    (4, [1, 2, 1], "H", False),
    (4, [-1, -2, -1], "H", False),
    (4, [-2, -2], "X", False),
    (4, [2, 2], "X", False),
    (4, [1], "S", True),
    (6, [-1, -2, -1], "H1", False),
    (6, [4, 5, 4], "H2", False),
    (6, [3, 3], "Z1Z2", True),
    (6, [1, -3, 5], "CZ", True),
]

# Claimed as a Hadamard realization, but the product is Z H Z up to phase.
DISPUTED_IDENTITIES = [
    (4, [-1, 2, -1], "H"),
]


def printed_matrix(rows) -> CycloMatrix:
    conv = {"i": I, "-i": -I}
    return CycloMatrix([[conv[x] if isinstance(x, str) else x for x in row] for row in rows])


def normalized(m: CycloMatrix) -> CycloMatrix:
    """Rescale by the positive real factor 2^(-j/2) that makes ``m`` unitary."""
    gram = m.adjoint() @ m
    c = gram.rows[0][0]
    if gram != mat_identity(m.dim).scale(c):
        raise ValueError("matrix is not a multiple of a unitary")
    j = 0
    while not c.is_one():
        if j > 64 or c.is_zero():
            raise ValueError("normalization is not a power of sqrt(2)")
        c = c * CycloValue(1, k=1)
        j += 1
    # scale by INV_SQRT2 ** j; an even j is an exact power of 1/2
    out = m
    for _ in range(j):
        out = out.scale(INV_SQRT2)
    return out


def word_text(ints) -> str:
    return " ".join(f"s{abs(x)}" + ("^-1" if x < 0 else "") for x in ints) or "(empty)"


@dataclass(frozen=True)
class CheckResult:
    name: str
    kind: str
    passed: bool
    detail: str = ""

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        tag = " [informational]" if self.kind == INFO else ""
        extra = f" -- {self.detail}" if self.detail else ""
        return f"{status} {self.name}{tag}{extra}"


@dataclass(frozen=True)
class VerificationReport:
    results: tuple[CheckResult, ...]

    @property
    def hard_failures(self) -> list[CheckResult]:
        return [r for r in self.results if r.kind == HARD and not r.passed]

    @property
    def ok(self) -> bool:
        return not self.hard_failures

    def lines(self) -> list[str]:
        return [r.line() for r in self.results]


def braid_relations_hold(rep: IsingRep) -> tuple[bool, str]:
    n = rep.strands
    for i in range(1, n):
        for j in range(i + 2, n):
            if letters_product([(i, 1), (j, 1)], rep) != letters_product([(j, 1), (i, 1)], rep):
                return False, f"s{i} s{j} != s{j} s{i}"
    for i in range(1, n - 1):
        lhs = letters_product([(i, 1), (i + 1, 1), (i, 1)], rep)
        rhs = letters_product([(i + 1, 1), (i, 1), (i + 1, 1)], rep)
        if lhs != rhs:
            return False, f"s{i} s{i+1} s{i} != s{i+1} s{i} s{i+1}"
    return True, ""


def _checks(rep_for: Callable[[int], IsingRep]) -> Iterator[CheckResult]:
    for n, table in PRINTED_GENERATORS.items():
        rep = rep_for(n)
        for idx, rows in table.items():
            m = projective_equal(rep.generators[idx], normalized(printed_matrix(rows)))
            yield CheckResult(
                f"{n}-strand generator s{idx} matches printed pattern up to normalization and phase",
                HARD,
                m.equal,
                f"prefactor {m.phase.render()}" if m.equal else "no projective match",
            )

    for n in (4, 6, 8):
        rep = rep_for(n)
        bad = [i for i, g in rep.generators.items() if not g.is_unitary()]
        yield CheckResult(f"{n}-strand generators are unitary", HARD, not bad,
                          f"non-unitary: {bad}" if bad else "")
        ok, detail = braid_relations_hold(rep)
        yield CheckResult(f"{n}-strand braid relations", HARD, ok, detail)

    for n, ints, label, exact in GATE_IDENTITIES:
        rep = rep_for(n)
        word = BraidWord.from_ints(n, ints)
        gate = find_gate(label, rep.qubits)
        m = projective_equal(word_product(word, rep), gate.matrix)
        passed = m.equal and (not exact or m.phase.is_one())
        labels = recognize(word, rep).labels
        passed = passed and labels == [label]
        detail = f"phase {m.phase.render()}" if m.equal else "no projective match"
        yield CheckResult(f"{word_text(ints)} ~ {label} ({n} strands)", HARD, passed,
                          f"{detail}; recognized {labels}")

    rep = rep_for(4)
    word = BraidWord.from_ints(4, [-2, 2])
    ident = word_product(word, rep).is_identity()
    yield CheckResult("s2^-1 s2 = I (4 strands), elided by recognition", HARD,
                      ident and recognize(word, rep).items == (), "")

    for n, ints, label in DISPUTED_IDENTITIES:
        rep = rep_for(n)
        product = word_product(BraidWord.from_ints(n, ints), rep)
        m = projective_equal(product, find_gate(label, rep.qubits).matrix)
        z, h = find_gate("Z", 1).matrix, find_gate("H", 1).matrix
        zhz = projective_equal(product, z @ h @ z)
        detail = "product is projectively Z H Z" if zhz else "product unclassified"
        yield CheckResult(f"{word_text(ints)} ~ {label} ({n} strands, disputed)", INFO, m.equal, detail)

    yield from _eight_strand_report(rep_for(8))


def _eight_strand_report(rep: IsingRep) -> Iterator[CheckResult]:
    lib = {g.name: g for g in standard_library(3)}

    def check(ints, label):
        m = projective_equal(word_product(BraidWord.from_ints(8, ints), rep), lib[label].matrix)
        return CheckResult(f"8-strand {label} = {word_text(ints)}", INFO, m.equal,
                           "experimental basis" if m.equal else "not matched in experimental basis")

    yield check([1], "S1")
    yield check([5], "S2")
    yield check([7], "S3")
    yield check([2, 2], "X1")
    yield check([4, 4], "X2")
    yield check([4, 4, 6, 6], "X3")
    for k in (1, 2, 3):
        found = enumerate_realizations(lib[f"H{k}"], rep, 3)
        yield CheckResult(f"8-strand H{k} realizable with at most 3 exchanges", INFO, bool(found),
                          f"{len(found)} words")


def run_verification(rep_for: Callable[[int], IsingRep] = ising_rep) -> VerificationReport:
    return VerificationReport(tuple(_checks(rep_for)))


__all__ = [
    "CheckResult",
    "VerificationReport",
    "PRINTED_GENERATORS",
    "GATE_IDENTITIES",
    "DISPUTED_IDENTITIES",
    "printed_matrix",
    "normalized",
    "braid_relations_hold",
    "run_verification",
]
