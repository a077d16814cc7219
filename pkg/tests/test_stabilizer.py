"""Adjacency extraction, G_XZ assembly, commutation, Pauli rendering."""

import random

import pytest

from conftest import random_graph

from cpcgraph.gf2 import BitMatrix, BitVec, ShapeError, rank
from cpcgraph.opgraph import OperationalGraph
from cpcgraph.stabilizer import (
    CpcAdjacency,
    PauliError,
    QuantumParityMatrix,
    check_commutation,
    extract_adjacency,
    pauli_strings,
    quantum_parity_matrix,
)
from test_gf2 import numpy_rank


def random_adjacency(rng: random.Random, k: int, m: int) -> CpcAdjacency:
    mb = BitMatrix(k, m, tuple(rng.getrandbits(m) for _ in range(k)))
    mp = BitMatrix(k, m, tuple(rng.getrandbits(m) for _ in range(k)))
    mc_rows = [0] * m
    for i in range(m):
        for j in range(i + 1, m):
            if rng.random() < 0.4:
                mc_rows[i] |= 1 << j
                mc_rows[j] |= 1 << i
    return CpcAdjacency(mb, mp, BitMatrix(m, m, tuple(mc_rows)))


def test_extract_adjacency_422(session_422):
    adj = extract_adjacency(session_422.graph)
    assert adj.m_b.to_lists() == [[1, 0], [1, 0]]
    assert adj.m_p.to_lists() == [[0, 1], [0, 1]]
    assert adj.m_c.to_lists() == [[0, 1], [1, 0]]


def test_extract_adjacency_empty_graph():
    g = OperationalGraph((), ("p1", "p2"))
    adj = extract_adjacency(g)
    assert adj.m_b == BitMatrix.zeros(0, 2)
    assert adj.m_c == BitMatrix.zeros(2, 2)


def test_extract_adjacency_1043_matches_builtin_checks(session_1043):
    from cpcgraph.classical import builtin

    adj = extract_adjacency(session_1043.graph)
    bit = builtin("hamming-7-4-3-bit").checks
    phase = builtin("hamming-7-4-3-phase").checks
    # k x m layout: the first three parity columns carry the bit code's
    # checks transposed, the last three the phase code's
    k = 4
    for i in range(3):
        for j in range(k):
            assert adj.m_b.get(j, i) == bit.get(i, j)
            assert adj.m_p.get(j, 3 + i) == phase.get(i, j)
    assert all(adj.m_b.get(j, 3 + i) == 0 for i in range(3) for j in range(k))
    assert all(adj.m_p.get(j, i) == 0 for i in range(3) for j in range(k))


def test_extract_ignores_annotation(session_422):
    from cpcgraph.opgraph import clear_annotation

    assert extract_adjacency(session_422.graph) == extract_adjacency(
        clear_annotation(session_422.graph)
    )


def test_quantum_parity_matrix_422_rows(session_422):
    q = quantum_parity_matrix(extract_adjacency(session_422.graph))
    assert q.g_x.to_lists() == [[0, 0, 0, 1], [1, 1, 1, 0]]
    assert q.g_z.to_lists() == [[1, 1, 1, 0], [0, 0, 0, 1]]


def test_quantum_parity_matrix_zero_adjacency():
    adj = CpcAdjacency(BitMatrix.zeros(1, 2), BitMatrix.zeros(1, 2), BitMatrix.zeros(2, 2))
    q = quantum_parity_matrix(adj)
    labels = ["D1", "p1", "p2"]
    assert pauli_strings(q, labels) == ["Z_p1", "Z_p2"]


def test_parity_block_of_gz_is_identity():
    rng = random.Random(41)
    for _ in range(50):
        adj = random_adjacency(rng, rng.randint(1, 5), rng.randint(1, 5))
        q = quantum_parity_matrix(adj)
        block = [[q.g_z.get(i, adj.k + j) for j in range(adj.m)] for i in range(adj.m)]
        assert BitMatrix.from_lists(block) == BitMatrix.identity(adj.m)


def test_commutation_422(session_422):
    assert check_commutation(quantum_parity_matrix(extract_adjacency(session_422.graph)))


def test_commutation_random_adjacency():
    rng = random.Random(42)
    for _ in range(200):
        adj = random_adjacency(rng, rng.randint(1, 6), rng.randint(1, 6))
        assert check_commutation(quantum_parity_matrix(adj))


def test_commutation_detects_anticommuting_rows():
    q = QuantumParityMatrix(
        n=1,
        m=2,
        g_x=BitMatrix.from_lists([[1], [0]]),
        g_z=BitMatrix.from_lists([[0], [1]]),
    )
    assert not check_commutation(q)


def test_rank_gives_logical_count(session_422, session_1043):
    from cpcgraph.analysis import logical_qubit_count

    q4 = quantum_parity_matrix(extract_adjacency(session_422.graph))
    sym = q4.symplectic_rows()
    assert rank(sym) == numpy_rank(sym.to_lists()) == 2
    assert logical_qubit_count(q4) == 2

    q10 = quantum_parity_matrix(extract_adjacency(session_1043.graph))
    sym10 = q10.symplectic_rows()
    assert rank(sym10) == numpy_rank(sym10.to_lists()) == 6
    assert logical_qubit_count(q10) == 4


def test_pauli_strings_422(session_422):
    q = quantum_parity_matrix(extract_adjacency(session_422.graph))
    assert pauli_strings(q, ["D1", "D2", "p1", "p2"]) == [
        "Z_D1 Z_D2 Z_p1 X_p2",
        "X_D1 X_D2 X_p1 Z_p2",
    ]


def test_pauli_strings_identity_row():
    q = QuantumParityMatrix(2, 1, BitMatrix.zeros(1, 2), BitMatrix.zeros(1, 2))
    assert pauli_strings(q, ["a", "b"]) == ["I"]


def test_pauli_strings_label_count():
    q = QuantumParityMatrix(2, 1, BitMatrix.zeros(1, 2), BitMatrix.zeros(1, 2))
    with pytest.raises(ShapeError):
        pauli_strings(q, ["a"])


def test_pauli_error_weight_and_xor():
    y = PauliError.single(4, 2, "Y")
    assert y.weight() == 1
    x = PauliError.single(4, 0, "X")
    both = y ^ x
    assert both.weight() == 2
    assert (both ^ both).is_identity()
    assert y.label(["q0", "q1", "q2", "q3"]) == "Y_q2"


def test_adjacency_validation():
    with pytest.raises(ShapeError):
        CpcAdjacency(
            BitMatrix.zeros(1, 2),
            BitMatrix.zeros(1, 2),
            BitMatrix.from_lists([[1, 0], [0, 0]]),  # diagonal entry
        )
    with pytest.raises(ShapeError):
        CpcAdjacency(
            BitMatrix.zeros(1, 2),
            BitMatrix.zeros(1, 2),
            BitMatrix.from_lists([[0, 1], [0, 0]]),  # asymmetric
        )


def test_commutation_from_random_graphs():
    rng = random.Random(43)
    for _ in range(100):
        g = random_graph(rng)
        assert check_commutation(quantum_parity_matrix(extract_adjacency(g)))
