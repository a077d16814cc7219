"""Dense bit-packed GF(2) vectors and matrices.

Rows are packed into Python ints (bit i of a row = coefficient of column i),
so XOR of whole rows is a single word-parallel integer operation.  All types
are immutable values: operations return new objects and never mutate their
inputs.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator


class ShapeError(ValueError):
    """Operand dimensions are incompatible."""


def _pack(bits: Iterable[int]) -> int:
    word = 0
    for i, b in enumerate(bits):
        if b & 1:
            word |= 1 << i
    return word


@dataclass(frozen=True)
class BitVec:
    """A fixed-length vector over GF(2), packed into one int."""

    length: int
    bits: int = 0

    def __post_init__(self) -> None:
        if self.length < 0:
            raise ShapeError(f"negative length {self.length}")
        if self.bits < 0 or self.bits >> self.length:
            raise ShapeError(f"bits out of range for length {self.length}")

    @classmethod
    def from_bits(cls, bits: Iterable[int]) -> "BitVec":
        bits = list(bits)
        return cls(len(bits), _pack(bits))

    @classmethod
    def from_indices(cls, length: int, indices: Iterable[int]) -> "BitVec":
        word = 0
        for i in indices:
            if not 0 <= i < length:
                raise ShapeError(f"index {i} out of range for length {length}")
            word ^= 1 << i
        return cls(length, word)

    def __getitem__(self, i: int) -> int:
        if not 0 <= i < self.length:
            raise IndexError(i)
        return (self.bits >> i) & 1

    def __iter__(self) -> Iterator[int]:
        return ((self.bits >> i) & 1 for i in range(self.length))

    def __xor__(self, other: "BitVec") -> "BitVec":
        if self.length != other.length:
            raise ShapeError(f"length mismatch {self.length} != {other.length}")
        return BitVec(self.length, self.bits ^ other.bits)

    def weight(self) -> int:
        return self.bits.bit_count()

    def is_zero(self) -> bool:
        return self.bits == 0

    def to_list(self) -> list[int]:
        return list(self)

    def to_string(self) -> str:
        return "".join(str(b) for b in self)

    def concat(self, other: "BitVec") -> "BitVec":
        return BitVec(self.length + other.length, self.bits | (other.bits << self.length))


@dataclass(frozen=True)
class BitMatrix:
    """A rows x cols matrix over GF(2), one packed int per row."""

    rows: int
    cols: int
    data: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        if self.rows < 0 or self.cols < 0:
            raise ShapeError(f"negative shape ({self.rows}, {self.cols})")
        if not self.data and self.rows:
            object.__setattr__(self, "data", (0,) * self.rows)
        if len(self.data) != self.rows:
            raise ShapeError(f"expected {self.rows} rows, got {len(self.data)}")
        for r in self.data:
            if r < 0 or r >> self.cols:
                raise ShapeError(f"row value out of range for {self.cols} columns")

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "BitMatrix":
        return cls(rows, cols, (0,) * rows)

    @classmethod
    def identity(cls, n: int) -> "BitMatrix":
        return cls(n, n, tuple(1 << i for i in range(n)))

    def get(self, i: int, j: int) -> int:
        if not (0 <= i < self.rows and 0 <= j < self.cols):
            raise IndexError((i, j))
        return (self.data[i] >> j) & 1

    def row(self, i: int) -> BitVec:
        return BitVec(self.cols, self.data[i])

    def col(self, j: int) -> BitVec:
        if not 0 <= j < self.cols:
            raise IndexError(j)
        return BitVec(self.rows, _pack((r >> j) & 1 for r in self.data))

    def __xor__(self, other: "BitMatrix") -> "BitMatrix":
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ShapeError("shape mismatch for XOR")
        return BitMatrix(self.rows, self.cols, tuple(a ^ b for a, b in zip(self.data, other.data)))

    def transpose(self) -> "BitMatrix":
        out = [0] * self.cols
        for i, r in enumerate(self.data):
            while r:
                low = r & -r
                out[low.bit_length() - 1] |= 1 << i
                r ^= low
        return BitMatrix(self.cols, self.rows, tuple(out))

    def __matmul__(self, other: "BitMatrix") -> "BitMatrix":
        return mat_mul(self, other)

    def mat_vec(self, v: BitVec) -> BitVec:
        """Matrix-vector product: bit i = parity of <row i, v>."""
        if v.length != self.cols:
            raise ShapeError(f"vector length {v.length} != cols {self.cols}")
        return BitVec(self.rows, _pack((r & v.bits).bit_count() & 1 for r in self.data))

    def hstack(self, other: "BitMatrix") -> "BitMatrix":
        if self.rows != other.rows:
            raise ShapeError("row count mismatch for hstack")
        data = tuple(a | (b << self.cols) for a, b in zip(self.data, other.data))
        return BitMatrix(self.rows, self.cols + other.cols, data)

    def is_zero(self) -> bool:
        return all(r == 0 for r in self.data)

    def to_lists(self) -> list[list[int]]:
        return [self.row(i).to_list() for i in range(self.rows)]

    @classmethod
    def from_lists(cls, rows: list[list[int]], cols: int | None = None) -> "BitMatrix":
        if rows:
            widths = {len(r) for r in rows}
            if len(widths) != 1:
                raise ShapeError("ragged rows")
            width = widths.pop()
            if cols is not None and cols != width:
                raise ShapeError(f"expected {cols} columns, got {width}")
            cols = width
        elif cols is None:
            cols = 0
        return cls(len(rows), cols, tuple(_pack(r) for r in rows))


def mat_mul(a: BitMatrix, b: BitMatrix) -> BitMatrix:
    """GF(2) matrix product: entry (i,j) = parity of sum_t a[i,t] * b[t,j]."""
    if a.cols != b.rows:
        raise ShapeError(f"inner dimensions differ: {a.cols} != {b.rows}")
    out = []
    for r in a.data:
        acc = 0
        while r:
            low = r & -r
            acc ^= b.data[low.bit_length() - 1]
            r ^= low
        out.append(acc)
    return BitMatrix(a.rows, b.cols, tuple(out))


def _echelon(rows: list[int]) -> list[int]:
    """Row echelon basis (list of ints with distinct leading bits), inputs copied."""
    basis: list[int] = []
    for r in rows:
        r = _reduce(r, basis)
        if r:
            basis.append(r)
            basis.sort(reverse=True)
    return basis


def _reduce(v: int, basis: list[int]) -> int:
    for b in basis:
        if v ^ b < v:
            v ^= b
    return v


def rank(a: BitMatrix) -> int:
    """GF(2) row rank via Gaussian elimination on a copy."""
    return len(_echelon(list(a.data)))


def in_row_space(a: BitMatrix, v: BitVec) -> bool:
    """True iff v is a GF(2) linear combination of the rows of a."""
    if v.length != a.cols:
        raise ShapeError(f"vector length {v.length} != cols {a.cols}")
    return _reduce(v.bits, _echelon(list(a.data))) == 0
