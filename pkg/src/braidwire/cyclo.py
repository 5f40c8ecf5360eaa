"""
Exact arithmetic over Z[1/2][zeta], zeta = exp(i*pi/4).

A value is stored as four integer numerators and one power-of-two exponent,

    (c0 + c1*zeta + c2*zeta^2 + c3*zeta^3) / 2^k,     zeta^4 = -1,

in canonical form: k is minimal, so either some numerator is odd or the value
is zero with k = 0. Since {1, zeta, zeta^2, zeta^3} is a basis of the
cyclotomic field, canonical forms are unique and equality is structural.

Useful constants: i = zeta^2, sqrt(2) = zeta - zeta^3, 1/sqrt(2) = (zeta - zeta^3)/2.

Matrices are square, power-of-two sized, row-major tuples of values. Products
skip zero entries, which keeps the sparse braid generators cheap to multiply.
"""

from __future__ import annotations

import cmath
from typing import Iterable, Sequence

from .errors import DimensionError

__all__ = [
    "CycloValue",
    "CycloMatrix",
    "ZERO",
    "ONE",
    "ZETA",
    "I",
    "SQRT2",
    "INV_SQRT2",
    "cyclo_add",
    "cyclo_mul",
    "cyclo_neg",
    "cyclo_conj",
    "mat_mul",
    "mat_adjoint",
    "mat_identity",
    "mat_tensor",
]


def _trailing_zeros(n: int) -> int:
    return (n & -n).bit_length() - 1


class CycloValue:
    __slots__ = ("c0", "c1", "c2", "c3", "k", "_hash")

    def __init__(self, c0: int = 0, c1: int = 0, c2: int = 0, c3: int = 0, k: int = 0):
        if k < 0:
            # negative exponents are multiplications by powers of two
            c0, c1, c2, c3, k = c0 << -k, c1 << -k, c2 << -k, c3 << -k, 0
        self._set(int(c0), int(c1), int(c2), int(c3), int(k))

    def _set(self, c0, c1, c2, c3, k):
        if k:
            g = c0 | c1 | c2 | c3
            if g == 0:
                k = 0
            else:
                s = _trailing_zeros(g)
                if s:
                    s = min(s, k)
                    c0 >>= s
                    c1 >>= s
                    c2 >>= s
                    c3 >>= s
                    k -= s
        self.c0, self.c1, self.c2, self.c3, self.k = c0, c1, c2, c3, k
        self._hash = None

    @classmethod
    def _raw(cls, c0, c1, c2, c3, k):
        obj = cls.__new__(cls)
        obj._set(c0, c1, c2, c3, k)
        return obj

    @classmethod
    def from_int(cls, n: int) -> CycloValue:
        return cls._raw(n, 0, 0, 0, 0)

    @classmethod
    def zeta_power(cls, m: int) -> CycloValue:
        """zeta**m for any integer m."""
        m %= 8
        sign = -1 if m >= 4 else 1
        coeffs = [0, 0, 0, 0]
        coeffs[m % 4] = sign
        return cls._raw(*coeffs, 0)

    @classmethod
    def gaussian(cls, re: int, im: int, k: int = 0) -> CycloValue:
        """(re + im*i) / 2^k."""
        return cls(re, 0, im, 0, k)

    # -- inspection -----------------------------------------------------

    @property
    def numerators(self) -> tuple[int, int, int, int]:
        return (self.c0, self.c1, self.c2, self.c3)

    def is_zero(self) -> bool:
        return not (self.c0 or self.c1 or self.c2 or self.c3)

    def is_one(self) -> bool:
        return self.c0 == 1 and self.k == 0 and not (self.c1 or self.c2 or self.c3)

    def norm_squared(self) -> CycloValue:
        return self * self.conj()

    def is_unit_modulus(self) -> bool:
        return self.norm_squared().is_one()

    def __complex__(self) -> complex:
        z = cmath.exp(1j * cmath.pi / 4)
        return (self.c0 + self.c1 * z + self.c2 * z * z + self.c3 * z ** 3) / 2 ** self.k

    # -- ring operations ------------------------------------------------

    def __add__(self, other):
        if not isinstance(other, CycloValue):
            if isinstance(other, int):
                other = CycloValue.from_int(other)
            else:
                return NotImplemented
        a, b = self, other
        if a.k == b.k:
            return CycloValue._raw(a.c0 + b.c0, a.c1 + b.c1, a.c2 + b.c2, a.c3 + b.c3, a.k)
        if a.k < b.k:
            a, b = b, a
        s = a.k - b.k
        return CycloValue._raw(
            a.c0 + (b.c0 << s), a.c1 + (b.c1 << s), a.c2 + (b.c2 << s), a.c3 + (b.c3 << s), a.k
        )

    __radd__ = __add__

    def __neg__(self):
        return CycloValue._raw(-self.c0, -self.c1, -self.c2, -self.c3, self.k)

    def __sub__(self, other):
        if isinstance(other, int):
            other = CycloValue.from_int(other)
        if not isinstance(other, CycloValue):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, CycloValue):
            if isinstance(other, int):
                return CycloValue._raw(
                    self.c0 * other, self.c1 * other, self.c2 * other, self.c3 * other, self.k
                )
            return NotImplemented
        a0, a1, a2, a3 = self.c0, self.c1, self.c2, self.c3
        b0, b1, b2, b3 = other.c0, other.c1, other.c2, other.c3
        # zeta^4 = -1 folds degrees 4..6 back with a sign flip
        return CycloValue._raw(
            a0 * b0 - a1 * b3 - a2 * b2 - a3 * b1,
            a0 * b1 + a1 * b0 - a2 * b3 - a3 * b2,
            a0 * b2 + a1 * b1 + a2 * b0 - a3 * b3,
            a0 * b3 + a1 * b2 + a2 * b1 + a3 * b0,
            self.k + other.k,
        )

    __rmul__ = __mul__

    def conj(self) -> CycloValue:
        # zeta -> zeta^-1 = -zeta^3
        return CycloValue._raw(self.c0, -self.c3, -self.c2, -self.c1, self.k)

    def half(self, times: int = 1) -> CycloValue:
        """Divide by 2**times."""
        return CycloValue._raw(self.c0, self.c1, self.c2, self.c3, self.k + times)

    def inverse_unit(self) -> CycloValue:
        """Inverse of a unit-modulus value (its conjugate)."""
        if not self.is_unit_modulus():
            raise ValueError(f"{self} does not have unit modulus")
        return self.conj()

    # -- comparison / hashing -------------------------------------------

    def __eq__(self, other):
        if isinstance(other, int):
            other = CycloValue.from_int(other)
        if not isinstance(other, CycloValue):
            return NotImplemented
        return (
            self.k == other.k
            and self.c0 == other.c0
            and self.c1 == other.c1
            and self.c2 == other.c2
            and self.c3 == other.c3
        )

    def __hash__(self):
        h = self._hash
        if h is None:
            h = self._hash = hash((self.c0, self.c1, self.c2, self.c3, self.k))
        return h

    # -- rendering ------------------------------------------------------

    def __repr__(self):
        return f"CycloValue({self.c0}, {self.c1}, {self.c2}, {self.c3}, k={self.k})"

    def __str__(self):
        return self.render()

    def render(self) -> str:
        """Text form ``a + b·ζ + c·ζ² + d·ζ³ (/2^k)``; zero terms are omitted."""
        terms = []
        for coeff, unit in zip(self.numerators, ("", "ζ", "ζ²", "ζ³")):
            if coeff == 0:
                continue
            mag = abs(coeff)
            body = unit if (mag == 1 and unit) else (f"{mag}·{unit}" if unit else str(mag))
            terms.append(("-" if coeff < 0 else "+", body))
        if not terms:
            return "0"
        text = ("-" if terms[0][0] == "-" else "") + terms[0][1]
        for sign, body in terms[1:]:
            text += f" {sign} {body}"
        if self.k:
            text = f"({text}) /2^{self.k}" if len(terms) > 1 else f"{text} /2^{self.k}"
        return text

    def to_json(self) -> dict:
        return {"num": [str(c) for c in self.numerators], "exp": self.k}

    @classmethod
    def from_json(cls, data: dict) -> CycloValue:
        nums = [int(c) for c in data["num"]]
        if len(nums) != 4:
            raise ValueError("expected four numerators")
        return cls(*nums, k=int(data["exp"]))


ZERO = CycloValue()
ONE = CycloValue(1)
ZETA = CycloValue(0, 1)
I = CycloValue(0, 0, 1)
SQRT2 = CycloValue(0, 1, 0, -1)
INV_SQRT2 = CycloValue(0, 1, 0, -1, k=1)


def cyclo_add(*values: CycloValue) -> CycloValue:
    total = ZERO
    for v in values:
        total = total + v
    return total


def cyclo_mul(*values: CycloValue) -> CycloValue:
    total = ONE
    for v in values:
        total = total * v
    return total


def cyclo_neg(value: CycloValue) -> CycloValue:
    return -value


def cyclo_conj(value: CycloValue) -> CycloValue:
    return value.conj()


def _as_value(x) -> CycloValue:
    if isinstance(x, CycloValue):
        return x
    if isinstance(x, int):
        return CycloValue.from_int(x)
    raise TypeError(f"cannot convert {x!r} to CycloValue")


class CycloMatrix:
    """Immutable square matrix with CycloValue entries and power-of-two size."""

    __slots__ = ("dim", "rows", "_nonzero", "_hash")

    def __init__(self, rows: Iterable[Iterable]):
        rows = tuple(tuple(_as_value(x) for x in row) for row in rows)
        dim = len(rows)
        if dim == 0 or dim & (dim - 1):
            raise DimensionError(f"matrix dimension must be a power of two, got {dim}")
        if any(len(r) != dim for r in rows):
            raise DimensionError("matrix must be square")
        self.dim = dim
        self.rows = rows
        self._nonzero = None
        self._hash = None

    @classmethod
    def _trusted(cls, rows):
        obj = cls.__new__(cls)
        obj.dim = len(rows)
        obj.rows = rows
        obj._nonzero = None
        obj._hash = None
        return obj

    @classmethod
    def diag(cls, values: Sequence) -> CycloMatrix:
        n = len(values)
        return cls([[values[r] if r == c else 0 for c in range(n)] for r in range(n)])

    def __getitem__(self, rc):
        r, c = rc
        return self.rows[r][c]

    @property
    def nonzero(self) -> tuple[tuple[tuple[int, CycloValue], ...], ...]:
        """Per row, the (column, value) pairs of nonzero entries."""
        nz = self._nonzero
        if nz is None:
            nz = self._nonzero = tuple(
                tuple((c, v) for c, v in enumerate(row) if not v.is_zero()) for row in self.rows
            )
        return nz

    def zero_pattern(self) -> tuple[tuple[int, ...], ...]:
        return tuple(tuple(c for c, _ in row) for row in self.nonzero)

    def __matmul__(self, other: CycloMatrix) -> CycloMatrix:
        return mat_mul(self, other)

    def scale(self, factor: CycloValue) -> CycloMatrix:
        return CycloMatrix._trusted(tuple(tuple(factor * x for x in row) for row in self.rows))

    def adjoint(self) -> CycloMatrix:
        return mat_adjoint(self)

    def is_identity(self) -> bool:
        return self == mat_identity(self.dim)

    def is_unitary(self) -> bool:
        return (mat_adjoint(self) @ self).is_identity()

    def __eq__(self, other):
        if not isinstance(other, CycloMatrix):
            return NotImplemented
        return self.rows == other.rows

    def __hash__(self):
        h = self._hash
        if h is None:
            h = self._hash = hash(self.rows)
        return h

    def __repr__(self):
        return f"CycloMatrix(dim={self.dim})"

    def render(self) -> str:
        return "\n".join("[" + ", ".join(x.render() for x in row) + "]" for row in self.rows)

    def to_complex(self) -> list[list[complex]]:
        return [[complex(x) for x in row] for row in self.rows]

    def to_json(self) -> list:
        return [[x.to_json() for x in row] for row in self.rows]


def mat_identity(dim: int) -> CycloMatrix:
    return CycloMatrix([[1 if r == c else 0 for c in range(dim)] for r in range(dim)])


def mat_mul(a: CycloMatrix, b: CycloMatrix) -> CycloMatrix:
    if a.dim != b.dim:
        raise DimensionError(f"cannot multiply {a.dim}x{a.dim} by {b.dim}x{b.dim}")
    n = a.dim
    bnz = b.nonzero
    out = []
    for arow in a.nonzero:
        acc = [ZERO] * n
        for k, av in arow:
            for c, bv in bnz[k]:
                acc[c] = acc[c] + av * bv
        out.append(tuple(acc))
    return CycloMatrix._trusted(tuple(out))


def mat_adjoint(a: CycloMatrix) -> CycloMatrix:
    n = a.dim
    return CycloMatrix._trusted(tuple(tuple(a.rows[r][c].conj() for r in range(n)) for c in range(n)))


def mat_tensor(a: CycloMatrix, b: CycloMatrix) -> CycloMatrix:
    """Kronecker product; ``a`` acts on the more significant qubits."""
    na, nb = a.dim, b.dim
    rows = []
    for ra in range(na):
        for rb in range(nb):
            rows.append(
                tuple(a.rows[ra][ca] * b.rows[rb][cb] for ca in range(na) for cb in range(nb))
            )
    return CycloMatrix._trusted(tuple(rows))
