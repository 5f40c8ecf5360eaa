import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from braidwire.braid import BraidWord, free_reduce
from braidwire.cyclo import I, INV_SQRT2, ONE, ZETA, CycloMatrix, CycloValue, mat_identity, mat_tensor
from braidwire.errors import DimensionError
from braidwire.gates import find_gate
from braidwire.rep import (
    EXCHANGE_PREFACTOR,
    construct_generators,
    generator_matrix,
    ising_rep,
    projective_equal,
    word_product,
)

import oracle
from strategies import words

H = CycloMatrix([[INV_SQRT2, INV_SQRT2], [INV_SQRT2, -INV_SQRT2]])


def test_four_strand_s_generators():
    rep = ising_rep(4)
    assert rep.generators[1] == CycloMatrix.diag([1, I])
    assert rep.generators[3] == rep.generators[1]
    assert rep.qubits == 1 and rep.dim == 2


def test_four_strand_exchange_generator():
    expected = CycloMatrix([[1, -I], [-I, 1]]).scale(EXCHANGE_PREFACTOR)
    assert ising_rep(4).generators[2] == expected
    assert EXCHANGE_PREFACTOR == ZETA * INV_SQRT2


def test_six_strand_diagonals():
    rep = ising_rep(6)
    assert rep.generators[3] == CycloMatrix.diag([1, I, I, 1])
    assert generator_matrix(rep, 5, 1) == CycloMatrix.diag([1, I, 1, I])


def test_inverse_generators():
    rep = ising_rep(4)
    assert generator_matrix(rep, 1, -1) == CycloMatrix.diag([1, -I])
    expected = CycloMatrix([[1, I], [I, 1]]).scale(ZETA.conj() * INV_SQRT2)
    assert generator_matrix(rep, 2, -1) == expected


def test_generator_range_and_sign():
    rep = ising_rep(4)
    with pytest.raises(IndexError):
        generator_matrix(rep, 4)
    with pytest.raises(IndexError):
        generator_matrix(rep, 0)
    with pytest.raises(ValueError):
        generator_matrix(rep, 1, 0)


def test_unsupported_strands():
    for n in (2, 3, 5, 10):
        with pytest.raises(ValueError):
            ising_rep(n)


def test_eight_strand_is_experimental():
    assert ising_rep(8).experimental
    assert not ising_rep(4).experimental and not ising_rep(6).experimental
    assert ising_rep(8).qubits == 3


@pytest.mark.parametrize("n", [4, 6])
def test_generic_construction_reproduces_tables(n):
    assert construct_generators(n) == dict(ising_rep(n).generators)


@pytest.mark.parametrize("n", [4, 6, 8])
def test_generators_match_numpy_oracle(n):
    ref = oracle.generators(n)
    for i, g in ising_rep(n).generators.items():
        assert np.allclose(np.array(g.to_complex()), ref[i])


def test_hadamard_word_phase():
    m = word_product(BraidWord.from_ints(4, [1, 2, 1]), ising_rep(4))
    assert m == H.scale(ZETA)
    match = projective_equal(m, H)
    assert match.equal and match.phase == ZETA


def test_zz_and_cz_exact():
    rep = ising_rep(6)
    assert word_product(BraidWord.from_ints(6, [3, 3]), rep) == CycloMatrix.diag([1, -1, -1, 1])
    assert word_product(BraidWord.from_ints(6, [1, -3, 5]), rep) == CycloMatrix.diag([1, 1, 1, -1])


def test_word_product_strand_mismatch():
    with pytest.raises(DimensionError):
        word_product(BraidWord.from_ints(6, [1]), ising_rep(4))


def test_empty_word_is_identity():
    assert word_product(BraidWord(4, ()), ising_rep(4)).is_identity()


def test_projective_equal_examples():
    s = CycloMatrix.diag([1, I])
    z = CycloMatrix.diag([1, -1])
    assert projective_equal(s, s).phase == ONE
    assert not projective_equal(s, z)
    with pytest.raises(DimensionError):
        projective_equal(s, mat_identity(4))


def test_projective_equal_rejects_non_unit_scalar():
    assert not projective_equal(H, H.scale(CycloValue(2)))


def test_disputed_word_is_zhz_not_h():
    rep = ising_rep(4)
    m = word_product(BraidWord.from_ints(4, [-1, 2, -1]), rep)
    z = CycloMatrix.diag([1, -1])
    assert not projective_equal(m, H)
    assert projective_equal(m, z @ H @ z)
    zhz = np.diag([1, -1]) @ oracle.H @ np.diag([1, -1])
    assert oracle.projectively_equal(oracle.product([-1, 2, -1], 4), zhz)
    assert not oracle.projectively_equal(oracle.product([-1, 2, -1], 4), oracle.H)


# ----- properties, exact arithmetic -----


@pytest.mark.parametrize("n", [4, 6, 8])
def test_braid_relations(n):
    rep = ising_rep(n)
    g = rep.generators
    for i in range(1, n):
        for j in range(i + 2, n):
            assert g[i] @ g[j] == g[j] @ g[i]
    for i in range(1, n - 1):
        assert g[i] @ g[i + 1] @ g[i] == g[i + 1] @ g[i] @ g[i + 1]


@pytest.mark.parametrize("n", [4, 6, 8])
@given(data=st.data())
@settings(max_examples=60)
def test_homomorphism_and_inverse(n, data):
    rep = ising_rep(n)
    a = data.draw(words(n, 8))
    b = data.draw(words(n, 8))
    assert word_product(a + b, rep) == word_product(a, rep) @ word_product(b, rep)
    assert word_product(a + a.inverse(), rep).is_identity()
    assert word_product(free_reduce(a + b), rep) == word_product(a + b, rep)
    assert word_product(a, rep).is_unitary()


@given(words(6, 6))
@settings(max_examples=50)
def test_products_match_numpy(word):
    got = np.array(word_product(word, ising_rep(6)).to_complex())
    assert np.allclose(got, oracle.product(word.to_ints(), 6))


@given(words(4, 5), words(4, 5), words(4, 5), st.integers(min_value=0, max_value=7))
@settings(max_examples=80)
def test_projective_equivalence_laws(a, b, c, m):
    rep = ising_rep(4)
    A, B, C = (word_product(w, rep) for w in (a, b, c))
    assert projective_equal(A, A).phase == ONE
    phase = CycloValue.zeta_power(m)
    match = projective_equal(A.scale(phase), A)
    assert match and match.phase == phase
    ab, ba = projective_equal(A, B), projective_equal(B, A)
    assert ab.equal == ba.equal
    if ab:
        assert ab.phase * ba.phase == ONE
        bc = projective_equal(B, C)
        if bc:
            ac = projective_equal(A, C)
            assert ac and ac.phase == ab.phase * bc.phase


def test_s1_s3_symmetry_on_four_strands():
    rep = ising_rep(4)
    swap = {1: 3, 3: 1, 2: 2}
    for ints in ([1, 2, 1], [1, -2, 3, 3], [-3, 2, -1]):
        mirrored = [swap[abs(x)] * (1 if x > 0 else -1) for x in ints]
        assert word_product(BraidWord.from_ints(4, ints), rep) == word_product(
            BraidWord.from_ints(4, mirrored), rep
        )


def test_tensor_embedding_of_h():
    rep = ising_rep(6)
    h1 = find_gate("H1", 2).matrix
    assert h1 == mat_tensor(H, mat_identity(2))
    assert projective_equal(word_product(BraidWord.from_ints(6, [-1, -2, -1]), rep), h1)
