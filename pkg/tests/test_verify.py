from types import MappingProxyType

from braidwire.cyclo import CycloMatrix, I
from braidwire.rep import IsingRep, ising_rep
from braidwire.verify import (
    HARD,
    INFO,
    PRINTED_GENERATORS,
    braid_relations_hold,
    normalized,
    printed_matrix,
    run_verification,
)


def test_default_run_passes_hard_checks():
    report = run_verification()
    assert report.ok
    assert not report.hard_failures
    assert all(line.startswith(("PASS", "FAIL")) for line in report.lines())


def test_informational_section_present():
    report = run_verification()
    info = [r for r in report.results if r.kind == INFO]
    assert any(r.name.startswith("8-strand") for r in info)
    assert any("disputed" in r.name for r in info)
    assert all("[informational]" in r.line() for r in info)


def test_printed_exchange_pattern_normalizes_to_unitary():
    m = normalized(printed_matrix(PRINTED_GENERATORS[4][2]))
    assert m.is_unitary()
    assert normalized(printed_matrix(PRINTED_GENERATORS[6][3])) == CycloMatrix.diag([1, I, I, 1])


def corrupted(n, index, matrix):
    base = ising_rep(n)
    gens = dict(base.generators)
    gens[index] = matrix
    return IsingRep(base.strands, base.qubits, MappingProxyType(gens), base.experimental)


def test_fault_injection_is_reported():
    bad4 = corrupted(4, 2, CycloMatrix.diag([1, I]))
    report = run_verification(lambda n: bad4 if n == 4 else ising_rep(n))
    assert not report.ok
    names = [r.name for r in report.hard_failures]
    assert any("generator s2" in name for name in names)
    assert any("s1 s2 s1 ~ H" in name for name in names)


def test_braid_relation_violation_detected():
    bad = corrupted(6, 3, CycloMatrix.diag([1, I, 1, 1]))
    ok, detail = braid_relations_hold(bad)
    assert not ok and "s" in detail
    assert all(r.kind in (HARD, INFO) for r in run_verification().results)
