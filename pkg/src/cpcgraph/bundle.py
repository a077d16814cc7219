"""Self-contained code bundles: a named graph plus every artifact derived
from it (adjacency triple, stabilizer matrix, syndrome table, metadata).

A bundle is internally consistent by construction; `validate` recomputes
each derived field from the stored graph and checks it matches.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

from . import opgraph
from .analysis import PartitionTags, SyndromeTable, syndrome_table, syndrome_table_json
from .gf2 import BitMatrix, BitVec
from .opgraph import OperationalGraph
from .stabilizer import (
    CpcAdjacency,
    QuantumParityMatrix,
    extract_adjacency,
    quantum_parity_matrix,
)


class BundleConsistencyError(ValueError):
    """A stored derived field does not match recomputation from the graph."""


@dataclass(frozen=True)
class CodeBundle:
    name: str
    graph: OperationalGraph
    tags: PartitionTags | None
    adjacency: CpcAdjacency
    matrix: QuantumParityMatrix
    table: SyndromeTable
    claimed_distance: int | None = None

    @property
    def n(self) -> int:
        return self.graph.n

    @property
    def k(self) -> int:
        return self.graph.k

    @property
    def labels(self) -> tuple[str, ...]:
        return self.graph.data_qubits + self.graph.parity_qubits


def build_bundle(
    graph: OperationalGraph,
    name: str,
    tags: PartitionTags | None = None,
    claimed_distance: int | None = None,
) -> CodeBundle:
    adj = extract_adjacency(graph)
    q = quantum_parity_matrix(adj)
    return CodeBundle(name, graph, tags, adj, q, syndrome_table(q), claimed_distance)


def validate(bundle: CodeBundle) -> None:
    """Recompute all derived fields from the graph; raise on any mismatch."""
    fresh = build_bundle(bundle.graph, bundle.name, bundle.tags, bundle.claimed_distance)
    if fresh.adjacency != bundle.adjacency:
        raise BundleConsistencyError("adjacency matrices do not match the graph")
    if fresh.matrix != bundle.matrix:
        raise BundleConsistencyError("stabilizer matrix does not match the graph")
    if fresh.table.entries != bundle.table.entries or fresh.table.uniqueness != bundle.table.uniqueness:
        raise BundleConsistencyError("syndrome table does not match the graph")


def to_json(bundle: CodeBundle) -> dict:
    return {
        "name": bundle.name,
        "graph": opgraph.to_json(bundle.graph),
        "tags": bundle.tags.to_json() if bundle.tags else None,
        "adjacency": {
            "m_b": bundle.adjacency.m_b.to_lists(),
            "m_p": bundle.adjacency.m_p.to_lists(),
            "m_c": bundle.adjacency.m_c.to_lists(),
        },
        "g_xz": bundle.matrix.to_json(),
        "syndrome_table": syndrome_table_json(bundle.table),
        "metadata": {
            "n": bundle.n,
            "k": bundle.k,
            "claimed_distance": bundle.claimed_distance,
        },
    }


def from_json(obj: dict) -> CodeBundle:
    graph = opgraph.from_json(obj["graph"])
    tags = PartitionTags.from_json(obj["tags"]) if obj.get("tags") else None
    adjacency = CpcAdjacency(
        m_b=BitMatrix.from_lists(obj["adjacency"]["m_b"], cols=graph.m),
        m_p=BitMatrix.from_lists(obj["adjacency"]["m_p"], cols=graph.m),
        m_c=BitMatrix.from_lists(obj["adjacency"]["m_c"], cols=graph.m),
    )
    matrix = QuantumParityMatrix.from_json(obj["g_xz"])
    entries: dict[tuple[int, str], BitVec] = {}
    for rec in obj["syndrome_table"]["entries"]:
        bits = [int(c) for c in rec["syndrome"]]
        entries[(rec["qubit"] - 1, rec["error"])] = BitVec.from_bits(bits)
    table = SyndromeTable(entries, bool(obj["syndrome_table"]["uniqueness"]))
    bundle = CodeBundle(
        name=obj["name"],
        graph=graph,
        tags=tags,
        adjacency=adjacency,
        matrix=matrix,
        table=table,
        claimed_distance=obj["metadata"].get("claimed_distance"),
    )
    validate(bundle)
    return bundle


def save(bundle: CodeBundle, path: str) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(to_json(bundle), fh, indent=2)


def load(path: str) -> CodeBundle:
    with open(path, encoding="utf-8") as fh:
        return from_json(json.load(fh))
