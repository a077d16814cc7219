"""The code-design procedure: combine two classical codes into a
preliminary quantum code, then add cross-checks until the target distance
is reached (by hand, from published syndrome data, or by search).

A design session owns an operational graph that is kept annotated at all
times: each physical edit strips the annotation layer, toggles the edge and
re-annotates.  Virtual edges are derived data and are not edited here.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field

from . import opgraph
from .analysis import PartitionTags, distance
from .classical import ClassicalCode
from .gf2 import BitMatrix, mat_mul
from .opgraph import OperationalGraph
from .stabilizer import CpcAdjacency, extract_adjacency, quantum_parity_matrix


class IncompatibleCodesError(ValueError):
    """The two classical codes do not encode the same number of bits."""


class InconsistencyError(ValueError):
    """Published syndrome data is incompatible with the physical edges."""


@dataclass
class DesignSession:
    base_graph: OperationalGraph  # physical graph as combined, unannotated
    graph: OperationalGraph       # current graph, always annotated
    tags: PartitionTags
    history: list[dict] = field(default_factory=list)
    target_distance: int | None = None

    def to_json(self) -> dict:
        return {
            "base_graph": opgraph.to_json(self.base_graph),
            "graph": opgraph.to_json(self.graph),
            "tags": self.tags.to_json(),
            "history": list(self.history),
            "target_distance": self.target_distance,
        }

    @classmethod
    def from_json(cls, obj: dict) -> "DesignSession":
        return cls(
            base_graph=opgraph.from_json(obj["base_graph"]),
            graph=opgraph.from_json(obj["graph"]),
            tags=PartitionTags.from_json(obj["tags"]),
            history=list(obj.get("history", [])),
            target_distance=obj.get("target_distance"),
        )


def combine(bit_code: ClassicalCode, phase_code: ClassicalCode) -> DesignSession:
    """Merge a bit-flip code and a phase-flip code into a preliminary
    quantum code with no cross-checks.

    Data qubits D1..Dk carry the shared register; each check of the bit
    code becomes an S1 parity qubit wired by bit edges, each check of the
    phase code an S2 parity qubit wired by phase edges.
    """
    if bit_code.k != phase_code.k:
        raise IncompatibleCodesError(
            f"codes must encode the same number of bits: {bit_code.k} != {phase_code.k}"
        )
    k = bit_code.k
    m1, m2 = bit_code.num_checks, phase_code.num_checks
    data = tuple(f"D{i + 1}" for i in range(k))
    parity = tuple(f"p{j + 1}" for j in range(m1 + m2))
    bit_edges = {
        (data[j], parity[i])
        for i in range(m1)
        for j in range(k)
        if bit_code.checks.get(i, j)
    }
    phase_edges = {
        (data[j], parity[m1 + i])
        for i in range(m2)
        for j in range(k)
        if phase_code.checks.get(i, j)
    }
    base = OperationalGraph(
        data_qubits=data,
        parity_qubits=parity,
        bit_edges=frozenset(bit_edges),
        phase_edges=frozenset(phase_edges),
    )
    tags = PartitionTags(frozenset(parity[:m1]), frozenset(parity[m1:]))
    return DesignSession(base, opgraph.annotate(base), tags)


PHYSICAL_KINDS = ("bit", "phase", "cross")


def toggle_edge(session: DesignSession, kind: str, endpoints: tuple[str, ...]) -> DesignSession:
    """Toggle one physical edge and re-annotate; the edit is recorded."""
    if kind not in PHYSICAL_KINDS:
        raise opgraph.EdgeRoleError(
            f"sessions edit physical edges only ({', '.join(PHYSICAL_KINDS)}); "
            "virtual edges are derived by annotation"
        )
    bare = opgraph.clear_annotation(session.graph)
    bare = opgraph.edge_toggle(bare, kind, endpoints)
    session.graph = opgraph.annotate(bare)
    session.history.append({"kind": kind, "endpoints": list(endpoints)})
    return session


def apply_cross_checks(session: DesignSession, pairs) -> DesignSession:
    """Toggle a batch of cross-check edges between distinct parity pairs."""
    pairs = [tuple(p) for p in pairs]
    if len(set(map(frozenset, pairs))) != len(pairs):
        raise opgraph.EdgeRoleError("cross-check pairs must be distinct")
    for a, b in pairs:
        toggle_edge(session, "cross", (a, b))
    return session


def undo(session: DesignSession) -> DesignSession:
    """Drop the most recent edit and rebuild the graph from the base."""
    if not session.history:
        return session
    session.history.pop()
    session.graph = replay(session.base_graph, session.history)
    return session


def replay(base: OperationalGraph, history: list[dict]) -> OperationalGraph:
    """Re-apply an edit history to a bare physical graph."""
    g = base
    for record in history:
        g = opgraph.edge_toggle(g, record["kind"], tuple(record["endpoints"]))
    return opgraph.annotate(g)


def recover_mc_from_syndromes(zsyndromes: BitMatrix, adj: CpcAdjacency) -> BitMatrix:
    """Reconstruct the cross-check adjacency from published Z-error data.

    Column j of zsyndromes must be the syndrome of a Z error on parity
    qubit j.  Those columns equal m_b^T . m_p XOR m_c, so m_c follows by
    XOR.  The result must be symmetric with a zero diagonal, otherwise the
    published table cannot come from these m_b, m_p.
    """
    if zsyndromes.rows != adj.m or zsyndromes.cols != adj.m:
        raise InconsistencyError(f"zsyndromes must be {adj.m} x {adj.m}")
    mc = zsyndromes ^ mat_mul(adj.m_b.transpose(), adj.m_p)
    for i in range(adj.m):
        if mc.get(i, i):
            raise InconsistencyError(f"recovered m_c has a diagonal entry at {i}")
    if mc != mc.transpose():
        raise InconsistencyError("recovered m_c is not symmetric")
    return mc


def cross_pairs_from_mc(mc: BitMatrix, parity_labels) -> list[tuple[str, str]]:
    """Upper-triangle 1-entries of m_c as (label, label) pairs."""
    pairs = []
    for i in range(mc.rows):
        for j in range(i + 1, mc.cols):
            if mc.get(i, j):
                pairs.append((parity_labels[i], parity_labels[j]))
    return pairs


@dataclass(frozen=True)
class SearchResult:
    success: bool
    pairs: tuple[tuple[str, str], ...]
    distance: int | None
    examined: int
    message: str


def _candidate_singles(mb, mp, base_t, mc_rows, k, m):
    """Single-error syndromes (as ints over parity bits) for a given m_c."""
    syns = []
    for j in range(k):
        sx, sz = mb.data[j], mp.data[j]
        syns.extend((sx, sz, sx ^ sz))
    for j in range(m):
        sx = 1 << j
        sz = base_t.data[j] ^ mc_rows[j]
        syns.extend((sx, sz, sx ^ sz))
    return syns


def _singles_ok(syns, target_d: int) -> bool:
    if any(s == 0 for s in syns):
        return False
    if target_d >= 3 and len(set(syns)) != len(syns):
        return False
    return True


def _collision_count(syns) -> int:
    zero = sum(1 for s in syns if s == 0)
    seen: dict[int, int] = {}
    for s in syns:
        if s:
            seen[s] = seen.get(s, 0) + 1
    return zero + sum(c - 1 for c in seen.values())


def _verified_distance(session: DesignSession, pairs, target_d: int) -> int | None:
    g = opgraph.clear_annotation(session.graph)
    for a, b in pairs:
        g = opgraph.edge_toggle(g, "cross", (a, b))
    q = quantum_parity_matrix(extract_adjacency(g))
    return distance(q, max_w=target_d)


EXHAUSTIVE_MAX_M = 8


def search_cross_checks(
    session: DesignSession,
    target_d: int,
    budget: int = 200_000,
) -> SearchResult:
    """Find a cross-check set that raises the code distance to target_d.

    Candidates are screened by single-error syndrome structure (all nonzero
    for distance 2, additionally pairwise distinct for distance 3) and
    every screened hit is re-verified with the brute-force distance before
    being returned.  For m <= 8 parity qubits the search is exhaustive over
    pair subsets ordered by size (bounded by `budget` candidates); beyond
    that a greedy pass adds whichever pair removes the most syndrome
    collisions.
    """
    if target_d > 3:
        raise ValueError("search supports target distances up to 3")
    g = session.graph
    m = g.m
    labels = g.parity_qubits
    if target_d <= 1:
        return SearchResult(True, (), _verified_distance(session, (), 1), 0, "nothing to do")

    adj = extract_adjacency(opgraph.clear_annotation(g))
    base_t = mat_mul(adj.m_b.transpose(), adj.m_p).transpose()
    mc0 = list(adj.m_c.data)
    all_pairs = list(itertools.combinations(range(m), 2))

    def mc_rows_for(subset) -> list[int]:
        rows = mc0[:]
        for i, j in subset:
            rows[i] ^= 1 << j
            rows[j] ^= 1 << i
        return rows

    examined = 0
    best: tuple[int, tuple] = (1 << 30, ())

    if m <= EXHAUSTIVE_MAX_M:
        for size in range(len(all_pairs) + 1):
            for subset in itertools.combinations(all_pairs, size):
                examined += 1
                if examined > budget:
                    return SearchResult(
                        False, _label_pairs(best[1], labels), None, examined - 1,
                        f"budget exhausted; best candidate leaves {best[0]} syndrome collisions",
                    )
                syns = _candidate_singles(adj.m_b, adj.m_p, base_t, mc_rows_for(subset), adj.k, m)
                coll = _collision_count(syns)
                if (coll, len(subset)) < (best[0], len(best[1])):
                    best = (coll, subset)
                if not _singles_ok(syns, target_d):
                    continue
                pairs = _label_pairs(subset, labels)
                if _verified_distance(session, pairs, target_d - 1) is None:
                    d = _verified_distance(session, pairs, target_d)
                    return SearchResult(True, pairs, d, examined, "verified by brute force")
        return SearchResult(
            False, _label_pairs(best[1], labels), None, examined,
            f"exhausted all pair subsets; best candidate leaves {best[0]} syndrome collisions",
        )

    # Greedy: repeatedly toggle the pair that most reduces collisions.
    subset: set = set()
    current = _collision_count(
        _candidate_singles(adj.m_b, adj.m_p, base_t, mc_rows_for(subset), adj.k, m)
    )
    while examined < budget:
        best_gain, best_pair = 0, None
        for pair in all_pairs:  # lexicographic order, so ties keep the first
            trial = subset ^ {pair}
            examined += 1
            coll = _collision_count(
                _candidate_singles(adj.m_b, adj.m_p, base_t, mc_rows_for(trial), adj.k, m)
            )
            if current - coll > best_gain:
                best_gain, best_pair = current - coll, pair
        if best_pair is None:
            break
        subset ^= {best_pair}
        current -= best_gain
        if current == 0:
            break
    pairs = _label_pairs(sorted(subset), labels)
    if current == 0 and _verified_distance(session, pairs, target_d - 1) is None:
        d = _verified_distance(session, pairs, target_d)
        return SearchResult(True, pairs, d, examined, "greedy, verified by brute force")
    return SearchResult(
        False, pairs, None, examined,
        f"greedy stalled with {current} syndrome collisions",
    )


def _label_pairs(subset, labels) -> tuple[tuple[str, str], ...]:
    return tuple((labels[i], labels[j]) for i, j in subset)


def save_session(session: DesignSession, path: str) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(session.to_json(), fh, indent=2)


def load_session(path: str) -> DesignSession:
    with open(path, encoding="utf-8") as fh:
        return DesignSession.from_json(json.load(fh))
