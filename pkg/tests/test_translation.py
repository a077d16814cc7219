"""Factor-graph translation and its equivalence with the stabilizer path."""

import itertools
import random

import pytest

from conftest import random_annotated_graph

from cpcgraph import translation
from cpcgraph.analysis import syndrome
from cpcgraph.gf2 import BitMatrix
from cpcgraph.opgraph import GraphStateError, OperationalGraph, annotate
from cpcgraph.stabilizer import PauliError, extract_adjacency, quantum_parity_matrix
from cpcgraph.translation import (
    component_flips,
    factor_syndrome,
    translate,
    unconnected_variables,
)


def all_paulis_up_to(n: int, max_w: int):
    for w in range(1, max_w + 1):
        for qubits in itertools.combinations(range(n), w):
            for kinds in itertools.product("XZY", repeat=w):
                e = PauliError.identity(n)
                for qb, kind in zip(qubits, kinds):
                    e = e ^ PauliError.single(n, qb, kind)
                yield e


def row_support(cfg, i):
    return {cfg.variables[j] for j in range(cfg.h.cols) if cfg.h.get(i, j)}


def test_translate_422_matches_reference_topology(session_422):
    cfg = translate(session_422.graph)
    assert row_support(cfg, 0) == {("D1", "bit"), ("D2", "bit"), ("p1", "bit"), ("p2", "phase")}
    assert row_support(cfg, 1) == {("D1", "phase"), ("D2", "phase"), ("p2", "bit"), ("p1", "phase")}


def test_translate_421_parity_phase_columns_zero(session_421):
    cfg = translate(session_421.graph)
    assert cfg.h.col(cfg.column_of(("p1", "phase"))).is_zero()
    assert cfg.h.col(cfg.column_of(("p2", "phase"))).is_zero()


def test_translate_empty_graph():
    g = annotate(OperationalGraph((), ()))
    cfg = translate(g)
    assert cfg.h == BitMatrix.zeros(0, 0)
    assert unconnected_variables(cfg) == []


def test_translate_requires_annotation(session_421):
    from cpcgraph.opgraph import clear_annotation

    with pytest.raises(GraphStateError):
        translate(clear_annotation(session_421.graph))


def test_parity_bit_block_is_identity():
    rng = random.Random(31)
    for _ in range(50):
        g = random_annotated_graph(rng)
        cfg = translate(g)
        k, m = g.k, g.m
        block = [[cfg.h.get(i, 2 * k + j) for j in range(m)] for i in range(m)]
        assert BitMatrix.from_lists(block) == BitMatrix.identity(m)


def test_unconnected_variables_1041(session_1041):
    # the S1 parity qubits receive no detections for their own phase flips;
    # the S2 phase components are watched through the induced virtual edges
    cfg = translate(session_1041.graph)
    assert unconnected_variables(cfg) == [("p1", "phase"), ("p2", "phase"), ("p3", "phase")]


def test_unconnected_variables_422_empty(session_422):
    assert unconnected_variables(translate(session_422.graph)) == []


def test_double_rule_application_cancels():
    # toggling the same cross edge twice restores the factor graph exactly
    from cpcgraph.builder import apply_cross_checks, combine
    from cpcgraph.classical import builtin

    s = combine(builtin("detect-3-2-2"), builtin("detect-3-2-2"))
    before = translate(s.graph)
    apply_cross_checks(s, [("p1", "p2")])
    apply_cross_checks(s, [("p1", "p2")])
    assert translate(s.graph) == before


def test_component_flips_orders_y_as_both():
    g = annotate(
        OperationalGraph(("D1",), ("p1",), bit_edges=frozenset({("D1", "p1")}))
    )
    cfg = translate(g)
    y_on_data = PauliError.single(2, 0, "Y")
    flips = component_flips(cfg, y_on_data)
    assert flips[cfg.column_of(("D1", "bit"))] == 1
    assert flips[cfg.column_of(("D1", "phase"))] == 1
    assert flips.weight() == 2


def test_factor_syndrome_equals_symplectic_on_goldens(session_422, session_1043):
    for session, max_w in ((session_422, 2), (session_1043, 2)):
        g = session.graph
        q = quantum_parity_matrix(extract_adjacency(g))
        cfg = translate(g)
        for e in all_paulis_up_to(g.n, max_w):
            assert factor_syndrome(cfg, e) == syndrome(q, e)


def test_factor_syndrome_equals_symplectic_on_random_graphs():
    rng = random.Random(32)
    for _ in range(60):
        g = random_annotated_graph(rng, k=rng.randint(1, 3), m=rng.randint(1, 3))
        q = quantum_parity_matrix(extract_adjacency(g))
        cfg = translate(g)
        for _ in range(25):
            w = rng.randint(1, min(3, g.n))
            e = PauliError.identity(g.n)
            for qb in rng.sample(range(g.n), w):
                e = e ^ PauliError.single(g.n, qb, rng.choice("XZY"))
            assert factor_syndrome(cfg, e) == syndrome(q, e)


def test_undetected_single_component_weight_matches_distance(session_421, session_422, session_1041, session_1043):
    # the minimum weight of a single-component error pattern that trips no
    # check equals the quantum detection distance of the same graph
    from cpcgraph.analysis import distance
    from cpcgraph.gf2 import BitVec

    for session in (session_421, session_422, session_1041, session_1043):
        g = session.graph
        cfg = translate(g)
        q = quantum_parity_matrix(extract_adjacency(g))
        d = distance(q, 3)
        cols = [cfg.h.col(j) for j in range(cfg.h.cols)]
        best = None
        for w in range(1, 4):
            for combo in itertools.combinations(range(cfg.h.cols), w):
                acc = BitVec(cfg.h.rows)
                for j in combo:
                    acc = acc ^ cols[j]
                if acc.is_zero():
                    best = w
                    break
            if best:
                break
        assert best == d


def test_json_and_dot_exports(session_422):
    cfg = translate(session_422.graph)
    obj = translation.to_json(cfg)
    assert obj["check_nodes"] == ["p1", "p2"]
    assert len(obj["variables"]) == cfg.h.cols
    dot = translation.to_dot(cfg)
    assert "shape=square" in dot and "shape=circle" in dot
