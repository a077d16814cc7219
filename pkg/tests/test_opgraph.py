"""Operational-graph annotation, simplification and editing."""

import random

import pytest

from conftest import random_annotated_graph, random_graph

from cpcgraph import opgraph
from cpcgraph.gf2 import mat_mul
from cpcgraph.opgraph import (
    EdgeRoleError,
    GraphStateError,
    OperationalGraph,
    annotate,
    clear_annotation,
    edge_toggle,
    simplify,
    virtual_reachability,
)
from cpcgraph.stabilizer import extract_adjacency


def two_parity_graph(**kw) -> OperationalGraph:
    return OperationalGraph(("D1",), ("p1", "p2"), **kw)


def test_annotate_single_virtual_edge():
    g = two_parity_graph(
        bit_edges=frozenset({("D1", "p1")}),
        phase_edges=frozenset({("D1", "p2")}),
    )
    out = annotate(g)
    assert out.virtual_edges == {("p2", "p1")}
    assert not out.virtual_loops


def test_annotate_421_virtual_edges_cancel(session_421):
    g = session_421.graph
    assert g.annotated
    assert not g.virtual_edges and not g.virtual_loops and not g.ann_crosses


def test_annotate_loop_when_both_edges_share_parity():
    g = two_parity_graph(
        bit_edges=frozenset({("D1", "p1")}),
        phase_edges=frozenset({("D1", "p1")}),
    )
    out = annotate(g)
    assert out.virtual_loops == {"p1"}
    assert not out.virtual_edges


def test_annotate_rejects_preannotated():
    g = annotate(two_parity_graph(bit_edges=frozenset({("D1", "p1")})))
    with pytest.raises(GraphStateError):
        annotate(g)


def test_annotate_physical_edges_unchanged():
    g = random_graph(random.Random(21))
    out = annotate(g)
    assert (out.bit_edges, out.phase_edges, out.cross_edges) == (
        g.bit_edges,
        g.phase_edges,
        g.cross_edges,
    )


def test_simplify_cancels_duplicate_contributions():
    # two identical virtual edges can only arise transiently; the set
    # representation plus annotate()'s XOR accumulation realizes the
    # cancellation rule, checked here via a D-pair that contributes twice
    g = OperationalGraph(
        ("D1", "D2"),
        ("p1", "p2"),
        bit_edges=frozenset({("D1", "p1"), ("D2", "p1")}),
        phase_edges=frozenset({("D1", "p2"), ("D2", "p2")}),
    )
    assert not annotate(g).virtual_edges


def test_simplify_reversal_rule():
    # a symmetric annotation link plus a virtual edge one way leaves only
    # the reversed virtual edge
    g = OperationalGraph(
        ("D1",),
        ("p1", "p2"),
        cross_edges=frozenset({("p1", "p2")}),
        virtual_edges=frozenset({("p1", "p2")}),
        ann_crosses=frozenset({("p1", "p2")}),
        annotated=True,
    )
    out = simplify(g)
    assert out.virtual_edges == {("p2", "p1")}
    assert not out.ann_crosses
    assert out.cross_edges == {("p1", "p2")}  # physical edge untouched


def test_simplify_antiparallel_pair_merges_to_symmetric_link():
    g = OperationalGraph(
        ("D1",),
        ("p1", "p2"),
        virtual_edges=frozenset({("p1", "p2"), ("p2", "p1")}),
        annotated=True,
    )
    out = simplify(g)
    assert not out.virtual_edges
    assert out.ann_crosses == {("p1", "p2")}


def test_simplify_fixpoint():
    rng = random.Random(22)
    for _ in range(200):
        g = random_annotated_graph(rng)
        assert simplify(g) == g


def test_annotate_matches_closed_form():
    # annotation-layer reachability equals m_b^T . m_p XOR m_c
    rng = random.Random(23)
    for _ in range(200):
        g = random_annotated_graph(rng)
        adj = extract_adjacency(g)
        expected = mat_mul(adj.m_b.transpose(), adj.m_p) ^ adj.m_c
        assert virtual_reachability(g) == expected


def test_annotate_iteration_order_invariance():
    # same edge set built in different insertion orders annotates identically
    rng = random.Random(24)
    g = random_graph(rng, k=3, m=3)
    edges_sorted = OperationalGraph(
        g.data_qubits,
        g.parity_qubits,
        bit_edges=frozenset(sorted(g.bit_edges)),
        phase_edges=frozenset(sorted(g.phase_edges, reverse=True)),
        cross_edges=g.cross_edges,
    )
    assert annotate(g) == annotate(edges_sorted)


def test_edge_toggle_involution():
    rng = random.Random(25)
    g = random_graph(rng, k=2, m=3)
    for kind, endpoints in [
        ("bit", ("D1", "p2")),
        ("phase", ("D2", "p1")),
        ("cross", ("p1", "p3")),
    ]:
        assert edge_toggle(edge_toggle(g, kind, endpoints), kind, endpoints) == g
    ag = annotate(g)
    assert edge_toggle(edge_toggle(ag, "virtual", ("p1", "p2")), "virtual", ("p1", "p2")) == ag
    assert edge_toggle(edge_toggle(ag, "loop", ("p1",)), "loop", ("p1",)) == ag


def test_edge_toggle_cross_builds_422_from_421(session_421, session_422):
    bare = clear_annotation(session_421.graph)
    toggled = edge_toggle(bare, "cross", ("p1", "p2"))
    assert toggled.cross_edges == {("p1", "p2")}
    assert toggled == clear_annotation(session_422.graph)


def test_edge_toggle_role_errors():
    g = OperationalGraph(("D1", "D2"), ("p1", "p2"))
    with pytest.raises(EdgeRoleError):
        edge_toggle(g, "bit", ("D1", "D2"))
    with pytest.raises(EdgeRoleError):
        edge_toggle(g, "cross", ("p1", "p1"))
    with pytest.raises(EdgeRoleError):
        edge_toggle(g, "nonsense", ("D1", "p1"))


def test_constructor_validates_roles():
    with pytest.raises(EdgeRoleError):
        OperationalGraph(("D1",), ("p1",), bit_edges=frozenset({("p1", "D1")}))
    with pytest.raises(EdgeRoleError):
        OperationalGraph(("D1",), ("D1",))
    with pytest.raises(GraphStateError):
        OperationalGraph(("D1",), ("p1", "p2"), virtual_edges=frozenset({("p1", "p2")}))


def test_degenerate_isolated_qubits_are_legal():
    g = OperationalGraph(("D1", "D2"), ("p1",), bit_edges=frozenset({("D1", "p1")}))
    out = annotate(g)
    assert out.annotated


def test_json_round_trip():
    rng = random.Random(26)
    for _ in range(20):
        g = random_annotated_graph(rng)
        assert opgraph.from_json(opgraph.to_json(g)) == g


def test_dot_export_mentions_styles(session_422):
    dot = opgraph.to_dot(session_422.graph)
    assert "shape=triangle" in dot and "shape=star" in dot
    assert "color=red" in dot
    assert "digraph" in dot
