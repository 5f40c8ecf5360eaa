"""
Ising-anyon representation of the braid group on 4, 6 and 8 strands.

2m anyons carry m - 1 qubits. Exchanges inside an initial pair (odd
generators at the ends) act diagonally as S; exchanges between pairs (even
generators) mix one qubit with the unit prefactor exp(i*pi/4)/sqrt(2) = (1+i)/2
in front of [[1, -i], [-i, 1]]. The 4- and 6-strand tables are stored as
printed integer patterns plus that prefactor. The 8-strand table comes from
the generic pairwise construction in :func:`construct_generators`, which is
experimental: it is only checked against the group relations.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from types import MappingProxyType
from typing import Mapping

from .braid import BraidWord
from .cyclo import I, ONE, ZERO, CycloMatrix, CycloValue, mat_identity, mat_mul
from .errors import DimensionError

__all__ = [
    "SUPPORTED_STRANDS",
    "EXCHANGE_PREFACTOR",
    "IsingRep",
    "ProjectiveMatch",
    "ising_rep",
    "construct_generators",
    "generator_matrix",
    "word_product",
    "projective_equal",
]

SUPPORTED_STRANDS = (4, 6, 8)

EXCHANGE_PREFACTOR = CycloValue.gaussian(1, 1, 1)  # (1 + i)/2 = exp(i*pi/4)/sqrt(2)

_i = I
_m_i = -I

# Printed patterns: 'i' stands for the imaginary unit.
_TABLE_4 = {
    1: [[1, 0], [0, "i"]],
    2: [[1, "-i"], ["-i", 1]],
    3: [[1, 0], [0, "i"]],
}
_TABLE_6 = {
    1: [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, "i", 0], [0, 0, 0, "i"]],
    2: [[1, 0, "-i", 0], [0, 1, 0, "-i"], ["-i", 0, 1, 0], [0, "-i", 0, 1]],
    3: [[1, 0, 0, 0], [0, "i", 0, 0], [0, 0, "i", 0], [0, 0, 0, 1]],
    4: [[1, "-i", 0, 0], ["-i", 1, 0, 0], [0, 0, 1, "-i"], [0, 0, "-i", 1]],
    5: [[1, 0, 0, 0], [0, "i", 0, 0], [0, 0, 1, 0], [0, 0, 0, "i"]],
}


def _pattern(rows) -> CycloMatrix:
    conv = {"i": _i, "-i": _m_i}
    return CycloMatrix([[conv.get(x, x) if isinstance(x, str) else x for x in row] for row in rows])


def _table(patterns: Mapping[int, list]) -> dict[int, CycloMatrix]:
    out = {}
    for index, rows in patterns.items():
        m = _pattern(rows)
        out[index] = m.scale(EXCHANGE_PREFACTOR) if index % 2 == 0 else m
    return out


def construct_generators(strands: int) -> dict[int, CycloMatrix]:
    """Generator table built from the pairwise exchange scheme.

    With q = strands/2 - 1 qubits (qubit 1 most significant):
    σ1 is S on qubit 1, σ(2q+1) is S on qubit q, σ(2k+1) for 1 <= k < q is
    diag(1 if bits k and k+1 agree else i), and σ(2k) mixes qubit k.
    """
    if strands < 4 or strands % 2:
        raise ValueError(f"need an even strand count >= 4, got {strands}")
    q = strands // 2 - 1
    dim = 1 << q

    def bit(index: int, qubit: int) -> int:
        return (index >> (q - qubit)) & 1

    gens = {}
    for g in range(1, strands):
        rows = [[ZERO] * dim for _ in range(dim)]
        if g % 2:
            k = (g + 1) // 2  # pair boundary index 1..q+1
            for r in range(dim):
                if k == 1:
                    odd = bit(r, 1)
                elif k == q + 1:
                    odd = bit(r, q)
                else:
                    odd = bit(r, k - 1) ^ bit(r, k)
                rows[r][r] = _i if odd else ONE
        else:
            k = g // 2
            flip = 1 << (q - k)
            for r in range(dim):
                rows[r][r] = EXCHANGE_PREFACTOR
                rows[r][r ^ flip] = EXCHANGE_PREFACTOR * _m_i
        gens[g] = CycloMatrix(rows)
    return gens


@dataclass(frozen=True)
class IsingRep:
    strands: int
    qubits: int
    generators: Mapping[int, CycloMatrix]
    experimental: bool = False

    @property
    def dim(self) -> int:
        return 1 << self.qubits


@dataclass(frozen=True)
class ProjectiveMatch:
    equal: bool
    phase: CycloValue | None = None  # A = phase * B when equal

    def __bool__(self):
        return self.equal


@lru_cache(maxsize=None)
def ising_rep(strands: int) -> IsingRep:
    if strands == 4:
        gens, experimental = _table(_TABLE_4), False
    elif strands == 6:
        gens, experimental = _table(_TABLE_6), False
    elif strands == 8:
        gens, experimental = construct_generators(8), True
    else:
        raise ValueError(f"unsupported strand count {strands}; choose one of {SUPPORTED_STRANDS}")
    return IsingRep(strands, strands // 2 - 1, MappingProxyType(gens), experimental)


def _inverse_table(rep: IsingRep) -> dict[int, CycloMatrix]:
    cache = rep.__dict__.get("_inverses")
    if cache is None:
        cache = {i: m.adjoint() for i, m in rep.generators.items()}
        object.__setattr__(rep, "_inverses", cache)
    return cache


def generator_matrix(rep: IsingRep, strand: int, sign: int = 1) -> CycloMatrix:
    if not 1 <= strand <= rep.strands - 1:
        raise IndexError(f"generator σ{strand} out of range for {rep.strands} strands")
    if sign == 1:
        return rep.generators[strand]
    if sign == -1:
        # unitary, so the inverse is the adjoint
        return _inverse_table(rep)[strand]
    raise ValueError(f"sign must be +1 or -1, got {sign}")


def word_product(word: BraidWord, rep: IsingRep) -> CycloMatrix:
    """Product of generator images, left to right in time order."""
    if word.strands != rep.strands:
        raise DimensionError(f"word on {word.strands} strands, representation on {rep.strands}")
    return letters_product(word.signed_letters, rep)


def letters_product(letters, rep: IsingRep) -> CycloMatrix:
    result = None
    for strand, sign in letters:
        g = generator_matrix(rep, strand, sign)
        result = g if result is None else mat_mul(result, g)
    return mat_identity(rep.dim) if result is None else result


def projective_equal(a: CycloMatrix, b: CycloMatrix) -> ProjectiveMatch:
    """Decide ``a == phase * b`` for some unit-modulus phase.

    Works on adjoint(a) @ b, which must be a scalar multiple of the identity.
    """
    if a.dim != b.dim:
        raise DimensionError(f"cannot compare {a.dim}x{a.dim} with {b.dim}x{b.dim}")
    if a.zero_pattern() != b.zero_pattern():
        return ProjectiveMatch(False)
    p = mat_mul(a.adjoint(), b)
    c = p.rows[0][0]
    for r, row in enumerate(p.rows):
        for k, x in enumerate(row):
            if r == k:
                if x != c:
                    return ProjectiveMatch(False)
            elif not x.is_zero():
                return ProjectiveMatch(False)
    if c.is_zero() or not c.is_unit_modulus():
        return ProjectiveMatch(False)
    return ProjectiveMatch(True, c.conj())
