"""Classical binary block codes in Tanner/factor-graph form.

A code here is a parity-check structure over its data bits only: each check
row records which data bits it sums, and implicitly owns one parity bit that
stores that sum.  Codewords are therefore [data bits | parity bits].
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass

from .gf2 import BitMatrix, BitVec, ShapeError

MAX_EXHAUSTIVE_K = 24


@dataclass(frozen=True)
class ClassicalCode:
    """An [n, k] binary code given by its per-check data-bit participation.

    checks is (n-k) x k: checks[i, j] = 1 iff parity bit i sums data bit j.
    """

    name: str
    k: int
    checks: BitMatrix

    def __post_init__(self) -> None:
        if self.k < 0:
            raise ShapeError(f"negative k {self.k}")
        if self.checks.cols != self.k:
            raise ShapeError(f"checks has {self.checks.cols} columns, expected k={self.k}")

    @property
    def n(self) -> int:
        return self.k + self.checks.rows

    @property
    def num_checks(self) -> int:
        return self.checks.rows

    def redundant_rows(self) -> list[int]:
        """Indices of check rows that duplicate an earlier row (flagged, not rejected)."""
        seen: dict[int, int] = {}
        dups = []
        for i, r in enumerate(self.checks.data):
            if r in seen:
                dups.append(i)
            else:
                seen[r] = i
        return dups

    def to_json(self) -> dict:
        rows = [
            [j for j in range(self.k) if self.checks.get(i, j)]
            for i in range(self.checks.rows)
        ]
        return {"name": self.name, "k": self.k, "checks": rows}

    @classmethod
    def from_json(cls, obj: dict) -> "ClassicalCode":
        name = obj["name"]
        k = int(obj["k"])
        rows = [BitVec.from_indices(k, row).bits for row in obj["checks"]]
        return cls(name, k, BitMatrix(len(rows), k, tuple(rows)))


def encode(code: ClassicalCode, data: BitVec) -> BitVec:
    """Encode k data bits into the length-n codeword [data | parity]."""
    if data.length != code.k:
        raise ShapeError(f"data length {data.length} != k {code.k}")
    return data.concat(code.checks.mat_vec(data))


def classical_distance(code: ClassicalCode) -> int:
    """Minimum Hamming weight over all nonzero codewords, by brute force."""
    if code.k < 1:
        raise ShapeError("need k >= 1")
    if code.k > MAX_EXHAUSTIVE_K:
        raise ValueError(f"k={code.k} too large for exhaustive distance")
    best = code.n
    for word in range(1, 1 << code.k):
        w = encode(code, BitVec(code.k, word)).weight()
        if w < best:
            best = w
    return best


def single_flip_syndromes(code: ClassicalCode) -> list[BitVec]:
    """Parity-change pattern of each single-bit flip on the full codeword.

    Data-bit flips change the checks they participate in; a parity-bit flip
    changes only its own stored value.
    """
    out = [code.checks.col(j) for j in range(code.k)]
    out += [BitVec.from_indices(code.num_checks, [i]) for i in range(code.num_checks)]
    return out


def detects_all_double_flips(code: ClassicalCode) -> bool:
    """True iff every 1- or 2-bit codeword corruption changes some parity.

    Equivalent to the single-flip patterns being nonzero and pairwise
    distinct, i.e. distance >= 3.
    """
    syn = [v.bits for v in single_flip_syndromes(code)]
    return 0 not in syn and len(set(syn)) == len(syn)


_BUILTINS = {
    # One check summing both data bits; detects any single flip.
    "detect-3-2-2": (2, [[0, 1]]),
    # Hamming [7,4,3] check assignments fixed so single-bit errors reproduce
    # the reference syndrome columns exactly (see tests for the golden data).
    "hamming-7-4-3-bit": (4, [[0, 1, 2], [0, 2, 3], [0, 1, 3]]),
    "hamming-7-4-3-phase": (4, [[0, 1, 3], [0, 1, 2], [0, 2, 3]]),
}


def builtin(name: str) -> ClassicalCode:
    """Return a named built-in code."""
    if name not in _BUILTINS:
        raise KeyError(f"unknown built-in code {name!r}; have {sorted(_BUILTINS)}")
    k, rows = _BUILTINS[name]
    packed = tuple(BitVec.from_indices(k, r).bits for r in rows)
    return ClassicalCode(name, k, BitMatrix(len(rows), k, packed))


def builtin_names() -> list[str]:
    return sorted(_BUILTINS)


def load_code(path_or_spec: str) -> ClassicalCode:
    """Load a code from a JSON file path, or from 'builtin:<name>'."""
    if path_or_spec.startswith("builtin:"):
        return builtin(path_or_spec.split(":", 1)[1])
    with open(path_or_spec, encoding="utf-8") as fh:
        return ClassicalCode.from_json(json.load(fh))
