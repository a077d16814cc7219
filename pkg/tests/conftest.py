"""Shared fixtures: the four reference codes and golden syndrome data."""

from __future__ import annotations

import random

import pytest

from cpcgraph import builder, opgraph
from cpcgraph.builder import DesignSession, apply_cross_checks, combine
from cpcgraph.classical import builtin
from cpcgraph.gf2 import BitMatrix
from cpcgraph.opgraph import OperationalGraph

# Reference single-error syndrome table for the reconstructed [[10,4,3]]
# code: (1-based qubit, error type) -> syndrome over parity qubits p1..p6,
# written "S1 bits, S2 bits".
GOLDEN_1043_SYNDROMES = {
    (1, "X"): "111 000", (1, "Z"): "000 111", (1, "Y"): "111 111",
    (2, "X"): "101 000", (2, "Z"): "000 110", (2, "Y"): "101 110",
    (3, "X"): "110 000", (3, "Z"): "000 011", (3, "Y"): "110 011",
    (4, "X"): "011 000", (4, "Z"): "000 101", (4, "Y"): "011 101",
    (5, "X"): "100 000", (5, "Z"): "011 100", (5, "Y"): "111 100",
    (6, "X"): "010 000", (6, "Z"): "101 010", (6, "Y"): "111 010",
    (7, "X"): "001 000", (7, "Z"): "110 001", (7, "Y"): "111 001",
    (8, "X"): "000 100", (8, "Z"): "101 011", (8, "Y"): "101 111",
    (9, "X"): "000 010", (9, "Z"): "110 101", (9, "Y"): "110 111",
    (10, "X"): "000 001", (10, "Z"): "011 110", (10, "Y"): "011 111",
}


def golden_zsyndrome_matrix() -> BitMatrix:
    """Z-error syndromes of the parity qubits as columns of an m x m matrix."""
    cols = [GOLDEN_1043_SYNDROMES[(5 + j, "Z")].replace(" ", "") for j in range(6)]
    rows = [[int(cols[j][i]) for j in range(6)] for i in range(6)]
    return BitMatrix.from_lists(rows)


def make_421() -> DesignSession:
    return combine(builtin("detect-3-2-2"), builtin("detect-3-2-2"))


def make_1041() -> DesignSession:
    return combine(builtin("hamming-7-4-3-bit"), builtin("hamming-7-4-3-phase"))


def reference_1043_pairs(session: DesignSession) -> list[tuple[str, str]]:
    from cpcgraph.stabilizer import extract_adjacency

    mc = builder.recover_mc_from_syndromes(
        golden_zsyndrome_matrix(), extract_adjacency(session.graph)
    )
    return builder.cross_pairs_from_mc(mc, session.graph.parity_qubits)


@pytest.fixture
def session_421() -> DesignSession:
    return make_421()


@pytest.fixture
def session_422() -> DesignSession:
    return apply_cross_checks(make_421(), [("p1", "p2")])


@pytest.fixture
def session_1041() -> DesignSession:
    return make_1041()


@pytest.fixture
def session_1043() -> DesignSession:
    s = make_1041()
    return apply_cross_checks(s, reference_1043_pairs(s))


def random_graph(rng: random.Random, k: int | None = None, m: int | None = None,
                 edge_p: float = 0.4, cross_p: float = 0.3) -> OperationalGraph:
    """A random physical operational graph (unannotated)."""
    k = k if k is not None else rng.randint(1, 4)
    m = m if m is not None else rng.randint(1, 4)
    data = tuple(f"D{i + 1}" for i in range(k))
    parity = tuple(f"p{j + 1}" for j in range(m))
    bit = {(d, p) for d in data for p in parity if rng.random() < edge_p}
    phase = {(d, p) for d in data for p in parity if rng.random() < edge_p}
    cross = {
        (parity[a], parity[b])
        for a in range(m)
        for b in range(a + 1, m)
        if rng.random() < cross_p
    }
    return OperationalGraph(
        data_qubits=data,
        parity_qubits=parity,
        bit_edges=frozenset(bit),
        phase_edges=frozenset(phase),
        cross_edges=frozenset(cross),
    )


def random_annotated_graph(rng: random.Random, **kw) -> OperationalGraph:
    return opgraph.annotate(random_graph(rng, **kw))
