"""Adjacency matrices, the quantum parity-check matrix, and Pauli errors.

The physical edges of an operational graph define three adjacency matrices:
m_b and m_p (k x m bit- and phase-check incidence, rows indexed by data
qubits) and m_c (m x m symmetric cross-check incidence, zero diagonal).
The stabilizer generators of the code are the rows of

    G_XZ = ( m_p^T | m_b^T . m_p XOR m_c  ||  m_b^T | 1_m )

with the X block over columns [data | parity] followed by the Z block.
This shape makes the rows mutually commute for *any* choice of the three
matrices, which is the fail-safe property the whole construction leans on.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .gf2 import BitMatrix, BitVec, ShapeError, mat_mul
from .opgraph import OperationalGraph


@dataclass(frozen=True)
class CpcAdjacency:
    m_b: BitMatrix  # k x m, bit-check incidence
    m_p: BitMatrix  # k x m, phase-check incidence
    m_c: BitMatrix  # m x m, symmetric, zero diagonal

    def __post_init__(self) -> None:
        if self.m_b.rows != self.m_p.rows or self.m_b.cols != self.m_p.cols:
            raise ShapeError("m_b and m_p must have identical shape")
        m = self.m_b.cols
        if self.m_c.rows != m or self.m_c.cols != m:
            raise ShapeError(f"m_c must be {m} x {m}")
        for i in range(m):
            if self.m_c.get(i, i):
                raise ShapeError("m_c must have zero diagonal")
        if self.m_c != self.m_c.transpose():
            raise ShapeError("m_c must be symmetric")

    @property
    def k(self) -> int:
        return self.m_b.rows

    @property
    def m(self) -> int:
        return self.m_b.cols


@dataclass(frozen=True)
class QuantumParityMatrix:
    """Stabilizer generators as GF(2) rows; columns ordered data qubits
    first, then parity qubits, in both the X and Z blocks."""

    n: int
    m: int
    g_x: BitMatrix
    g_z: BitMatrix

    def __post_init__(self) -> None:
        for blk in (self.g_x, self.g_z):
            if blk.rows != self.m or blk.cols != self.n:
                raise ShapeError(f"blocks must be {self.m} x {self.n}")

    def symplectic_rows(self) -> BitMatrix:
        """Rows as length-2n vectors (x | z)."""
        return self.g_x.hstack(self.g_z)

    def to_json(self) -> dict:
        return {"g_x": self.g_x.to_lists(), "g_z": self.g_z.to_lists()}

    @classmethod
    def from_json(cls, obj: dict) -> "QuantumParityMatrix":
        g_x = BitMatrix.from_lists(obj["g_x"])
        g_z = BitMatrix.from_lists(obj["g_z"], cols=g_x.cols)
        return cls(g_x.cols, g_x.rows, g_x, g_z)


@dataclass(frozen=True)
class PauliError:
    """An n-qubit Pauli as an (x, z) bit-vector pair; Y = both bits set."""

    x: BitVec
    z: BitVec

    def __post_init__(self) -> None:
        if self.x.length != self.z.length:
            raise ShapeError("x and z must have equal length")

    @property
    def n(self) -> int:
        return self.x.length

    def weight(self) -> int:
        return (self.x.bits | self.z.bits).bit_count()

    def __xor__(self, other: "PauliError") -> "PauliError":
        return PauliError(self.x ^ other.x, self.z ^ other.z)

    def is_identity(self) -> bool:
        return self.x.is_zero() and self.z.is_zero()

    def as_symplectic(self) -> BitVec:
        return self.x.concat(self.z)

    @classmethod
    def identity(cls, n: int) -> "PauliError":
        return cls(BitVec(n), BitVec(n))

    @classmethod
    def single(cls, n: int, qubit: int, kind: str) -> "PauliError":
        """One-qubit X, Z or Y error."""
        if kind not in ("X", "Z", "Y"):
            raise ValueError(f"kind must be X, Z or Y, got {kind!r}")
        x = 1 << qubit if kind in ("X", "Y") else 0
        z = 1 << qubit if kind in ("Z", "Y") else 0
        return cls(BitVec(n, x), BitVec(n, z))

    def label(self, labels: Sequence[str]) -> str:
        return pauli_term_string(self.x.bits, self.z.bits, labels)


def extract_adjacency(g: OperationalGraph) -> CpcAdjacency:
    """Read m_b, m_p, m_c off the physical edges (annotation ignored)."""
    d_idx = {d: i for i, d in enumerate(g.data_qubits)}
    p_idx = {p: i for i, p in enumerate(g.parity_qubits)}
    mb = [0] * g.k
    mp = [0] * g.k
    mc = [0] * g.m
    for d, p in g.bit_edges:
        mb[d_idx[d]] |= 1 << p_idx[p]
    for d, p in g.phase_edges:
        mp[d_idx[d]] |= 1 << p_idx[p]
    for a, b in g.cross_edges:
        mc[p_idx[a]] |= 1 << p_idx[b]
        mc[p_idx[b]] |= 1 << p_idx[a]
    return CpcAdjacency(
        BitMatrix(g.k, g.m, tuple(mb)),
        BitMatrix(g.k, g.m, tuple(mp)),
        BitMatrix(g.m, g.m, tuple(mc)),
    )


def quantum_parity_matrix(adj: CpcAdjacency) -> QuantumParityMatrix:
    """Assemble G_XZ from the adjacency triple."""
    mbt = adj.m_b.transpose()
    mpt = adj.m_p.transpose()
    g_x = mpt.hstack(mat_mul(mbt, adj.m_p) ^ adj.m_c)
    g_z = mbt.hstack(BitMatrix.identity(adj.m))
    return QuantumParityMatrix(adj.k + adj.m, adj.m, g_x, g_z)


def check_commutation(q: QuantumParityMatrix) -> bool:
    """True iff G_X . G_Z^T XOR G_Z . G_X^T = 0 (all generators commute)."""
    lhs = mat_mul(q.g_x, q.g_z.transpose()) ^ mat_mul(q.g_z, q.g_x.transpose())
    return lhs.is_zero()


def pauli_term_string(x: int, z: int, labels: Sequence[str]) -> str:
    terms = []
    for i, lab in enumerate(labels):
        xi, zi = (x >> i) & 1, (z >> i) & 1
        if xi and zi:
            terms.append(f"Y_{lab}")
        elif xi:
            terms.append(f"X_{lab}")
        elif zi:
            terms.append(f"Z_{lab}")
    return " ".join(terms) if terms else "I"


def pauli_strings(q: QuantumParityMatrix, labels: Sequence[str]) -> list[str]:
    """Render each stabilizer row in Pauli notation, e.g. 'Z_D1 Z_D2 Z_p1 X_p2'."""
    if len(labels) != q.n:
        raise ShapeError(f"need {q.n} labels, got {len(labels)}")
    return [pauli_term_string(q.g_x.data[i], q.g_z.data[i], labels) for i in range(q.m)]
