"""Operational graphs: qubit nodes, physical check edges, and the
virtual-edge annotation engine.

Nodes are data qubits (drawn as triangles) and parity qubits (stars).
Physical edges come in three kinds:

- bit edges copy X-errors from a data qubit onto a parity qubit,
- phase edges propagate a Z-error on either endpoint as an X-error on the
  other,
- cross edges do the same between two parity qubits.

Annotation adds *virtual* edges marking indirect propagation: under the
canonical check ordering (cross, bit, phase stages), a Z-error on a
phase-connected parity qubit travels through a shared data qubit and
surfaces as an X-error on a bit-connected parity qubit.  All edge
multiplicities live in GF(2): inserting an existing edge removes it, which
is the algebraic fact ("two propagation paths cancel") behind every
simplification rule here.

The annotation layer of an annotated graph consists of ``virtual_edges``,
``virtual_loops`` and ``ann_crosses``.  The last is the annotation-layer
view of the cross edges: it starts as a copy of the physical ``cross_edges``
and is then canonicalized jointly with the virtual edges (a cross link plus
a virtual edge one way collapses into a reversed virtual edge; antiparallel
virtual edges merge into a symmetric link).  The physical ``cross_edges``
set is never touched by simplification, because the stabilizer extraction
must see the hardware edges, not detectability.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, replace

from .gf2 import BitMatrix

Edge = tuple[str, str]


class EdgeRoleError(ValueError):
    """Edge endpoints do not have the node roles this edge kind requires."""


class GraphStateError(RuntimeError):
    """Operation applied to a graph in the wrong annotation state."""


def _pair(a: str, b: str) -> Edge:
    """Normalize an unordered parity pair."""
    return (a, b) if a <= b else (b, a)


@dataclass(frozen=True)
class OperationalGraph:
    data_qubits: tuple[str, ...]
    parity_qubits: tuple[str, ...]
    bit_edges: frozenset[Edge] = frozenset()      # (data, parity)
    phase_edges: frozenset[Edge] = frozenset()    # (data, parity)
    cross_edges: frozenset[Edge] = frozenset()    # sorted (parity, parity), physical
    virtual_edges: frozenset[Edge] = frozenset()  # directed (src parity, dst parity)
    virtual_loops: frozenset[str] = frozenset()   # parity ids
    ann_crosses: frozenset[Edge] = frozenset()    # annotation-layer symmetric links
    annotated: bool = False

    def __post_init__(self) -> None:
        data, parity = set(self.data_qubits), set(self.parity_qubits)
        if len(data) != len(self.data_qubits) or len(parity) != len(self.parity_qubits):
            raise EdgeRoleError("duplicate node ids")
        if data & parity:
            raise EdgeRoleError(f"ids in both roles: {sorted(data & parity)}")
        for d, p in self.bit_edges | self.phase_edges:
            if d not in data or p not in parity:
                raise EdgeRoleError(f"({d}, {p}) must connect a data qubit to a parity qubit")
        for col in (self.cross_edges, self.ann_crosses):
            for a, b in col:
                if a == b:
                    raise EdgeRoleError(f"cross link {a!r} needs distinct endpoints")
                if a not in parity or b not in parity:
                    raise EdgeRoleError(f"cross link ({a}, {b}) must connect parity qubits")
                if (a, b) != _pair(a, b):
                    raise EdgeRoleError(f"cross link ({a}, {b}) not normalized")
        for s, t in self.virtual_edges:
            if s == t:
                raise EdgeRoleError(f"virtual edge on {s!r} needs distinct endpoints (use a loop)")
            if s not in parity or t not in parity:
                raise EdgeRoleError(f"virtual edge ({s}, {t}) must connect parity qubits")
        if not self.virtual_loops <= parity:
            raise EdgeRoleError("virtual loops must sit on parity qubits")
        if not self.annotated and (self.virtual_edges or self.virtual_loops or self.ann_crosses):
            raise GraphStateError("annotation fields set on an unannotated graph")

    @property
    def k(self) -> int:
        return len(self.data_qubits)

    @property
    def m(self) -> int:
        return len(self.parity_qubits)

    @property
    def n(self) -> int:
        return self.k + self.m

    def data_index(self, q: str) -> int:
        return self.data_qubits.index(q)

    def parity_index(self, q: str) -> int:
        return self.parity_qubits.index(q)


def annotate(g: OperationalGraph) -> OperationalGraph:
    """Add the virtual edges and loops implied by the physical edges.

    For every data qubit D carrying both a bit edge to p_b and a phase edge
    to p_ph, a Z-error on p_ph is detected as an X-error on p_b: toggle the
    directed virtual edge p_ph -> p_b, or a loop when p_b = p_ph.  Pairs of
    identical contributions cancel (GF(2)).  The result is simplified.
    """
    if g.annotated or g.virtual_edges or g.virtual_loops:
        raise GraphStateError("graph already carries annotation")
    bit_nbrs: dict[str, list[str]] = {d: [] for d in g.data_qubits}
    phase_nbrs: dict[str, list[str]] = {d: [] for d in g.data_qubits}
    for d, p in g.bit_edges:
        bit_nbrs[d].append(p)
    for d, p in g.phase_edges:
        phase_nbrs[d].append(p)

    virtual: set[Edge] = set()
    loops: set[str] = set()
    for d in g.data_qubits:
        for p_b in bit_nbrs[d]:
            for p_ph in phase_nbrs[d]:
                if p_b == p_ph:
                    loops.symmetric_difference_update({p_b})
                else:
                    virtual.symmetric_difference_update({(p_ph, p_b)})

    out = replace(
        g,
        virtual_edges=frozenset(virtual),
        virtual_loops=frozenset(loops),
        ann_crosses=g.cross_edges,
        annotated=True,
    )
    return simplify(out)


def simplify(g: OperationalGraph) -> OperationalGraph:
    """Canonicalize the annotation layer; idempotent.

    Per unordered parity pair {a, b} the layer carries two GF(2) bits:
    "Z on a is detected at b" and the reverse.  Directed virtual edges set
    one bit, symmetric links set both; accumulating all contributions and
    re-expressing the result (one bit -> a directed virtual edge, both ->
    a symmetric link) realizes cancellation, reversal and addition in a
    single XOR pass.  Physical edges are untouched.
    """
    if not g.annotated:
        return g
    detect: dict[Edge, list[int]] = {}  # pair -> [a detected at b, b detected at a]
    for s, t in g.virtual_edges:
        bits = detect.setdefault(_pair(s, t), [0, 0])
        bits[0 if (s, t) == _pair(s, t) else 1] ^= 1
    for pair in g.ann_crosses:
        bits = detect.setdefault(pair, [0, 0])
        bits[0] ^= 1
        bits[1] ^= 1

    virtual: set[Edge] = set()
    crosses: set[Edge] = set()
    for (a, b), (ab, ba) in detect.items():
        if ab and ba:
            crosses.add((a, b))
        elif ab:
            virtual.add((a, b))
        elif ba:
            virtual.add((b, a))
    return replace(g, virtual_edges=frozenset(virtual), ann_crosses=frozenset(crosses))


def clear_annotation(g: OperationalGraph) -> OperationalGraph:
    """Strip the annotation layer, returning the bare physical graph."""
    return replace(
        g,
        virtual_edges=frozenset(),
        virtual_loops=frozenset(),
        ann_crosses=frozenset(),
        annotated=False,
    )


EDGE_KINDS = ("bit", "phase", "cross", "virtual", "loop")


def edge_toggle(g: OperationalGraph, kind: str, endpoints: tuple[str, ...]) -> OperationalGraph:
    """Insert the edge if absent, remove it if present (mod-2 editing).

    This is the raw editing primitive: it does not re-annotate.  Toggling
    twice returns the original graph.
    """
    data, parity = set(g.data_qubits), set(g.parity_qubits)
    if kind in ("bit", "phase"):
        d, p = endpoints
        if d not in data or p not in parity:
            raise EdgeRoleError(f"{kind} edge needs (data, parity), got ({d}, {p})")
        field = "bit_edges" if kind == "bit" else "phase_edges"
        return replace(g, **{field: frozenset(getattr(g, field) ^ {(d, p)})})
    if kind == "cross":
        a, b = endpoints
        if a == b:
            raise EdgeRoleError("cross edge needs two distinct parity qubits")
        if a not in parity or b not in parity:
            raise EdgeRoleError(f"cross edge needs parity endpoints, got ({a}, {b})")
        return replace(g, cross_edges=frozenset(g.cross_edges ^ {_pair(a, b)}))
    if kind == "virtual":
        if not g.annotated:
            raise GraphStateError("virtual edges live on annotated graphs; annotate first")
        s, t = endpoints
        if s == t:
            raise EdgeRoleError("virtual edge needs distinct endpoints (use a loop)")
        if s not in parity or t not in parity:
            raise EdgeRoleError(f"virtual edge needs parity endpoints, got ({s}, {t})")
        return replace(g, virtual_edges=frozenset(g.virtual_edges ^ {(s, t)}))
    if kind == "loop":
        if not g.annotated:
            raise GraphStateError("virtual loops live on annotated graphs; annotate first")
        (p,) = endpoints
        if p not in parity:
            raise EdgeRoleError(f"virtual loop needs a parity qubit, got {p}")
        return replace(g, virtual_loops=frozenset(g.virtual_loops ^ {p}))
    raise EdgeRoleError(f"unknown edge kind {kind!r}; expected one of {EDGE_KINDS}")


def virtual_reachability(g: OperationalGraph) -> BitMatrix:
    """m x m detectability matrix of the annotation layer.

    Entry (i, j) = 1 iff a Z-error on parity qubit j is detected as an
    X-error at parity qubit i.  For a correctly annotated graph this equals
    m_b^T . m_p XOR m_c built from the physical edges.
    """
    if not g.annotated:
        raise GraphStateError("reachability is defined on annotated graphs")
    idx = {p: i for i, p in enumerate(g.parity_qubits)}
    rows = [0] * g.m
    for s, t in g.virtual_edges:
        rows[idx[t]] ^= 1 << idx[s]
    for a, b in g.ann_crosses:
        rows[idx[b]] ^= 1 << idx[a]
        rows[idx[a]] ^= 1 << idx[b]
    for p in g.virtual_loops:
        rows[idx[p]] ^= 1 << idx[p]
    return BitMatrix(g.m, g.m, tuple(rows))


def to_dot(g: OperationalGraph) -> str:
    """Graphviz rendering: triangles for data, stars for parity; red bit
    edges, black phase/cross edges, pink dashed directed virtual edges."""
    lines = ["digraph operational {", "  rankdir=TB;"]
    for d in g.data_qubits:
        lines.append(f'  "{d}" [shape=triangle];')
    for p in g.parity_qubits:
        lines.append(f'  "{p}" [shape=star];')
    for d, p in sorted(g.bit_edges):
        lines.append(f'  "{d}" -> "{p}" [color=red, dir=none];')
    for d, p in sorted(g.phase_edges):
        lines.append(f'  "{d}" -> "{p}" [color=black, dir=none];')
    for a, b in sorted(g.cross_edges):
        lines.append(f'  "{a}" -> "{b}" [color=black, dir=none];')
    for s, t in sorted(g.virtual_edges):
        lines.append(f'  "{s}" -> "{t}" [color=pink, style=dashed, dir=forward];')
    for p in sorted(g.virtual_loops):
        lines.append(f'  "{p}" -> "{p}" [color=pink, style=dashed, dir=forward];')
    for a, b in sorted(g.ann_crosses - g.cross_edges):
        lines.append(f'  "{a}" -> "{b}" [color=pink, style=dashed, dir=both];')
    lines.append("}")
    return "\n".join(lines)


def to_json(g: OperationalGraph) -> dict:
    return {
        "data_qubits": list(g.data_qubits),
        "parity_qubits": list(g.parity_qubits),
        "bit_edges": sorted(list(e) for e in g.bit_edges),
        "phase_edges": sorted(list(e) for e in g.phase_edges),
        "cross_edges": sorted(list(e) for e in g.cross_edges),
        "virtual_edges": sorted(list(e) for e in g.virtual_edges),
        "virtual_loops": sorted(g.virtual_loops),
        "ann_crosses": sorted(list(e) for e in g.ann_crosses),
        "annotated": g.annotated,
    }


def from_json(obj: dict) -> OperationalGraph:
    return OperationalGraph(
        data_qubits=tuple(obj["data_qubits"]),
        parity_qubits=tuple(obj["parity_qubits"]),
        bit_edges=frozenset(tuple(e) for e in obj["bit_edges"]),
        phase_edges=frozenset(tuple(e) for e in obj["phase_edges"]),
        cross_edges=frozenset(_pair(*e) for e in obj["cross_edges"]),
        virtual_edges=frozenset(tuple(e) for e in obj["virtual_edges"]),
        virtual_loops=frozenset(obj["virtual_loops"]),
        ann_crosses=frozenset(_pair(*e) for e in obj.get("ann_crosses", [])),
        annotated=bool(obj.get("annotated", False)),
    )


def dumps(g: OperationalGraph) -> str:
    return json.dumps(to_json(g), indent=2)
