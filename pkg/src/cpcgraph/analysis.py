"""Syndrome analysis, code distance, lookup decoding and Monte Carlo
logical-error-rate estimation.

Syndromes are symplectic products: bit i of the syndrome of an error
(x, z) is g_x[i] . z XOR g_z[i] . x.  The code distance is the minimum
weight of a nonzero Pauli with zero syndrome that is not itself in the
row space of the stabilizer matrix.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterator, Sequence

import numpy as np

from .gf2 import BitMatrix, BitVec, ShapeError, _echelon, _pack, _reduce
from .stabilizer import PauliError, QuantumParityMatrix

Syndrome = BitVec

ERROR_TYPES = ("X", "Z", "Y")

MAX_DISTANCE_WEIGHT = 4
MAX_DECODER_CHECKS = 20


@dataclass(frozen=True)
class SyndromeTable:
    """All single-qubit error syndromes, keyed by (qubit index, X/Z/Y)."""

    entries: dict[tuple[int, str], Syndrome]
    uniqueness: bool  # all nonzero and pairwise distinct


@dataclass(frozen=True)
class PartitionTags:
    """Parity qubits split by origin: S1 detects X on data, S2 detects Z."""

    s1: frozenset[str]
    s2: frozenset[str]

    def __post_init__(self) -> None:
        if self.s1 & self.s2:
            raise ValueError(f"tags overlap: {sorted(self.s1 & self.s2)}")

    def to_json(self) -> dict:
        return {"s1": sorted(self.s1), "s2": sorted(self.s2)}

    @classmethod
    def from_json(cls, obj: dict) -> "PartitionTags":
        return cls(frozenset(obj["s1"]), frozenset(obj["s2"]))


def syndrome(q: QuantumParityMatrix, e: PauliError) -> Syndrome:
    """Parity-measurement outcome flips caused by a Pauli error."""
    if e.n != q.n:
        raise ShapeError(f"error acts on {e.n} qubits, code has {q.n}")
    return BitVec(
        q.m,
        _pack(
            ((gx & e.z.bits).bit_count() + (gz & e.x.bits).bit_count()) & 1
            for gx, gz in zip(q.g_x.data, q.g_z.data)
        ),
    )


def syndrome_table(q: QuantumParityMatrix) -> SyndromeTable:
    """Syndromes of every single-qubit X, Z and Y error."""
    entries: dict[tuple[int, str], Syndrome] = {}
    for i in range(q.n):
        sx = BitVec(q.m, q.g_z.col(i).bits)
        sz = BitVec(q.m, q.g_x.col(i).bits)
        entries[(i, "X")] = sx
        entries[(i, "Z")] = sz
        entries[(i, "Y")] = sx ^ sz
    values = [s.bits for s in entries.values()]
    unique = 0 not in values and len(set(values)) == len(values)
    return SyndromeTable(entries, unique)


def signature_profile(
    table: SyndromeTable,
    data_count: int,
    parity_labels: Sequence[str],
    tags: PartitionTags,
) -> dict[tuple[str, str], tuple[tuple[int, int], ...]]:
    """Detection-count signatures per error class.

    For each error type (X/Z/Y) and each qubit class ("data", "S1", "S2"),
    returns the sorted multiset of (detections in S1, detections in S2)
    pairs across that class's qubits.
    """
    if set(parity_labels) != tags.s1 | tags.s2:
        raise ValueError("tags must cover exactly the parity qubits")
    s1_mask = sum(1 << j for j, p in enumerate(parity_labels) if p in tags.s1)
    s2_mask = sum(1 << j for j, p in enumerate(parity_labels) if p in tags.s2)

    def qubit_class(i: int) -> str:
        if i < data_count:
            return "data"
        return "S1" if parity_labels[i - data_count] in tags.s1 else "S2"

    buckets: dict[tuple[str, str], list[tuple[int, int]]] = {}
    for (i, etype), syn in table.entries.items():
        pair = ((syn.bits & s1_mask).bit_count(), (syn.bits & s2_mask).bit_count())
        buckets.setdefault((etype, qubit_class(i)), []).append(pair)
    return {key: tuple(sorted(v)) for key, v in buckets.items()}


def _single_syndrome_bits(q: QuantumParityMatrix) -> dict[tuple[int, str], int]:
    out = {}
    for i in range(q.n):
        sx = q.g_z.col(i).bits
        sz = q.g_x.col(i).bits
        out[(i, "X")] = sx
        out[(i, "Z")] = sz
        out[(i, "Y")] = sx ^ sz
    return out


def _pauli_candidates(n: int, weight: int) -> Iterator[tuple[int, int, tuple[tuple[int, str], ...]]]:
    """All weight-`weight` Paulis as (x bits, z bits, per-qubit terms)."""
    for qubits in itertools.combinations(range(n), weight):
        for kinds in itertools.product(ERROR_TYPES, repeat=weight):
            x = z = 0
            for qb, kind in zip(qubits, kinds):
                if kind in ("X", "Y"):
                    x |= 1 << qb
                if kind in ("Z", "Y"):
                    z |= 1 << qb
            yield x, z, tuple(zip(qubits, kinds))


def distance(q: QuantumParityMatrix, max_w: int) -> int | None:
    """Exact code distance if <= max_w, else None (meaning >= max_w + 1).

    Brute force: the smallest weight of a Pauli whose syndrome is zero and
    which is outside the stabilizer row space.
    """
    if not 1 <= max_w <= MAX_DISTANCE_WEIGHT:
        raise ValueError(f"max_w must be in 1..{MAX_DISTANCE_WEIGHT}")
    singles = _single_syndrome_bits(q)
    sym = q.symplectic_rows()
    basis = _echelon(list(sym.data))
    n = q.n
    for w in range(1, max_w + 1):
        for x, z, terms in _pauli_candidates(n, w):
            syn = 0
            for qb, kind in terms:
                syn ^= singles[(qb, kind)]
            if syn:
                continue
            if _reduce(x | (z << n), basis):
                return w
    return None


def logical_qubit_count(q: QuantumParityMatrix) -> int:
    """n minus the number of independent stabilizer generators."""
    return q.n - len(_echelon(list(q.symplectic_rows().data)))


@dataclass(frozen=True)
class LookupDecoder:
    """Min-weight coset-representative decoder for small codes.

    Maps each achievable syndrome to a minimum-weight error producing it
    (ties broken lexicographically on the (x, z) bit vectors).  Syndromes
    without an entry decode to None: detected but uncorrectable.
    """

    n: int
    m: int
    table: dict[int, tuple[int, int]]

    def decode(self, syn: Syndrome) -> PauliError | None:
        hit = self.table.get(syn.bits)
        if hit is None:
            return None
        x, z = hit
        return PauliError(BitVec(self.n, x), BitVec(self.n, z))


def _lex_key(x: int, z: int, n: int) -> tuple[tuple[int, ...], tuple[int, ...]]:
    return (tuple((x >> i) & 1 for i in range(n)), tuple((z >> i) & 1 for i in range(n)))


def build_lookup_decoder(q: QuantumParityMatrix, max_weight: int | None = None) -> LookupDecoder:
    """Exhaustively fill a syndrome -> min-weight-error table.

    Enumeration runs weight by weight until every syndrome is matched or
    max_weight (default m, which always suffices) is exhausted.
    """
    if q.m > MAX_DECODER_CHECKS:
        raise ValueError(f"m={q.m} exceeds lookup-decoder limit {MAX_DECODER_CHECKS}")
    if max_weight is None:
        max_weight = q.m
    singles = _single_syndrome_bits(q)
    table: dict[int, tuple[int, int]] = {0: (0, 0)}
    found_at: dict[int, int] = {0: 0}
    total = 1 << q.m
    for w in range(1, max_weight + 1):
        if len(table) == total:
            break
        for x, z, terms in _pauli_candidates(q.n, w):
            syn = 0
            for qb, kind in terms:
                syn ^= singles[(qb, kind)]
            if syn not in table:
                table[syn] = (x, z)
                found_at[syn] = w
            elif found_at[syn] == w and _lex_key(x, z, q.n) < _lex_key(*table[syn], q.n):
                table[syn] = (x, z)
    return LookupDecoder(q.n, q.m, table)


def stabilizer_group_keys(q: QuantumParityMatrix) -> list[int]:
    """All 2^m row-space elements packed as x | (z << n)."""
    n = q.n
    row_keys = [q.g_x.data[i] | (q.g_z.data[i] << n) for i in range(q.m)]
    keys = [0] * (1 << q.m)
    for mask in range(1, 1 << q.m):
        low = mask & -mask
        keys[mask] = keys[mask ^ low] ^ row_keys[low.bit_length() - 1]
    return keys


@dataclass(frozen=True)
class MonteCarloResult:
    p: float
    shots: int
    failures: int
    rate: float
    stderr: float
    seed: int

    CSV_HEADER = "p,shots,failures,rate,stderr,seed"

    def csv_row(self) -> str:
        return f"{self.p},{self.shots},{self.failures},{self.rate},{self.stderr},{self.seed}"

    def to_json(self) -> dict:
        return {
            "p": self.p,
            "shots": self.shots,
            "failures": self.failures,
            "rate": self.rate,
            "stderr": self.stderr,
            "seed": self.seed,
        }


def _decoder_arrays(q: QuantumParityMatrix, decoder: LookupDecoder):
    total = 1 << q.m
    corr_x = np.zeros(total, dtype=np.int64)
    corr_z = np.zeros(total, dtype=np.int64)
    corr_ok = np.zeros(total, dtype=bool)
    for syn, (x, z) in decoder.table.items():
        corr_x[syn] = x
        corr_z[syn] = z
        corr_ok[syn] = True
    return corr_x, corr_z, corr_ok


def _chunk_failures(
    rng: np.random.Generator,
    size: int,
    p: float,
    n: int,
    gx_t: np.ndarray,
    gz_t: np.ndarray,
    corr_x: np.ndarray,
    corr_z: np.ndarray,
    corr_ok: np.ndarray,
    group_sorted: np.ndarray,
) -> int:
    u = rng.random((size, n))
    has_err = u < p
    kind = rng.integers(0, 3, size=(size, n))  # 0 = X, 1 = Y, 2 = Z
    x = (has_err & (kind <= 1)).astype(np.int64)
    z = (has_err & (kind >= 1)).astype(np.int64)

    syn_bits = ((x @ gz_t) + (z @ gx_t)) & 1
    pow_m = 1 << np.arange(syn_bits.shape[1], dtype=np.int64)
    syn_key = syn_bits @ pow_m
    pow_n = 1 << np.arange(n, dtype=np.int64)
    x_key = x @ pow_n
    z_key = z @ pow_n

    ok = corr_ok[syn_key]
    res_key = (x_key ^ corr_x[syn_key]) | ((z_key ^ corr_z[syn_key]) << n)
    pos = np.searchsorted(group_sorted, res_key)
    pos = np.minimum(pos, len(group_sorted) - 1)
    in_group = group_sorted[pos] == res_key
    return int(np.count_nonzero(~(ok & in_group)))


def monte_carlo(
    q: QuantumParityMatrix,
    decoder: LookupDecoder,
    p: float,
    shots: int,
    seed: int,
    workers: int = 1,
    chunk_size: int = 1 << 16,
) -> MonteCarloResult:
    """Estimate the logical failure rate under depolarizing noise.

    Each qubit independently suffers X, Y or Z with probability p/3 each.
    A shot fails when the decoder has no entry for the observed syndrome or
    when the residual error (sampled error times correction) lies outside
    the stabilizer row space.  Shots are carved into fixed chunks whose
    random substreams derive from (seed, chunk index), so the estimate is
    reproducible for a given seed regardless of worker count.
    """
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"p must lie in [0, 1], got {p}")
    if 2 * q.n > 62:
        raise ValueError("packed residual keys need 2n <= 62 bits")
    n = q.n
    gx_t = np.array(q.g_x.to_lists(), dtype=np.int64).T.copy() if q.m else np.zeros((n, 0), np.int64)
    gz_t = np.array(q.g_z.to_lists(), dtype=np.int64).T.copy() if q.m else np.zeros((n, 0), np.int64)
    corr_x, corr_z, corr_ok = _decoder_arrays(q, decoder)
    group_sorted = np.sort(np.array(stabilizer_group_keys(q), dtype=np.int64))

    chunks = [(i, min(chunk_size, shots - i * chunk_size)) for i in range((shots + chunk_size - 1) // chunk_size)]

    def run(idx_size: tuple[int, int]) -> int:
        idx, size = idx_size
        rng = np.random.Generator(np.random.PCG64(np.random.SeedSequence(seed, spawn_key=(idx,))))
        return _chunk_failures(rng, size, p, n, gx_t, gz_t, corr_x, corr_z, corr_ok, group_sorted)

    if workers > 1:
        from concurrent.futures import ThreadPoolExecutor

        with ThreadPoolExecutor(max_workers=workers) as pool:
            failures = sum(pool.map(run, chunks))
    else:
        failures = sum(run(c) for c in chunks)

    rate = failures / shots if shots else 0.0
    stderr = float(np.sqrt(rate * (1.0 - rate) / shots)) if shots else 0.0
    return MonteCarloResult(p, shots, failures, rate, stderr, seed)


def exhaustive_failure_probability(
    q: QuantumParityMatrix,
    decoder: LookupDecoder,
    p: float,
    max_w: int,
) -> float:
    """Exact decoding-failure probability truncated at error weight max_w.

    Sums P(e) = (p/3)^w (1-p)^(n-w) over every failing Pauli of weight
    w <= max_w.  With max_w = n this is the exact failure probability.
    """
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"p must lie in [0, 1], got {p}")
    singles = _single_syndrome_bits(q)
    group = set(stabilizer_group_keys(q))
    n = q.n
    total = 0.0
    for w in range(1, max_w + 1):
        weight_prob = (p / 3.0) ** w * (1.0 - p) ** (n - w)
        fails = 0
        for x, z, terms in _pauli_candidates(n, w):
            syn = 0
            for qb, kind in terms:
                syn ^= singles[(qb, kind)]
            hit = decoder.table.get(syn)
            if hit is None:
                fails += 1
                continue
            res = (x ^ hit[0]) | ((z ^ hit[1]) << n)
            if res not in group:
                fails += 1
        total += fails * weight_prob
    return total


def format_syndrome(syn: Syndrome, split_at: int | None = None) -> str:
    s = syn.to_string()
    if split_at is None or not 0 < split_at < len(s):
        return s
    return s[:split_at] + " " + s[split_at:]


def syndrome_table_text(
    table: SyndromeTable,
    data_count: int,
    parity_labels: Sequence[str],
    tags: PartitionTags | None = None,
) -> str:
    """Aligned text table, one row per qubit, X/Z/Y syndrome columns.

    When the S1 parity qubits form a prefix of the parity order, syndrome
    strings get a space between the S1 and S2 measurement groups.
    """
    n = data_count + len(parity_labels)
    split = None
    if tags is not None and set(parity_labels[: len(tags.s1)]) == set(tags.s1):
        split = len(tags.s1)
    width = len(parity_labels) + (1 if split else 0)
    head = f"{'qubit':>8}  {'X':^{width}}  {'Z':^{width}}  {'Y':^{width}}"
    lines = [head]
    for i in range(n):
        cells = [format_syndrome(table.entries[(i, t)], split) for t in ERROR_TYPES]
        lines.append(f"{i + 1:>8}  " + "  ".join(cells))
    return "\n".join(lines)


def syndrome_table_json(table: SyndromeTable) -> dict:
    entries = [
        {"qubit": i + 1, "error": t, "syndrome": syn.to_string()}
        for (i, t), syn in sorted(table.entries.items())
    ]
    return {"entries": entries, "uniqueness": table.uniqueness}
