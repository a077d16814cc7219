"""Translation from annotated operational graphs to classical factor graphs.

Every qubit splits into two classical components: a bit component and a
phase component.  Data-qubit components are plain variables.  A parity
qubit's bit component is the measured check node (an X-error there flips
the measurement outcome directly, hence the identity block), while its
phase component is an unmeasured variable.

The parity-check matrix H has one row per parity qubit and columns ordered
[data bit | data phase | parity bit | parity phase].  Edges are accumulated
mod 2 from the annotated graph:

    bit edge (D, P)        ->  H[P, D.bit]
    phase edge (D, P)      ->  H[P, D.phase]
    symmetric link {P1,P2} ->  H[P2, P1.phase] and H[P1, P2.phase]
    virtual edge (S -> T)  ->  H[T, S.phase]
    virtual loop (P)       ->  H[P, P.phase]
    parity bit block       ->  identity

Symmetric links are taken from the graph's annotation layer (its canonical
view of the cross edges), so a cross edge consumed by a virtual-edge
reversal is not double counted.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

from .gf2 import BitMatrix, BitVec, ShapeError
from .opgraph import GraphStateError, OperationalGraph
from .stabilizer import PauliError

VarTag = tuple[str, str]  # (qubit id, "bit" | "phase")


@dataclass(frozen=True)
class ClassicalFactorGraph:
    variables: tuple[VarTag, ...]  # one per column of h
    check_nodes: tuple[str, ...]   # one per parity qubit (its measured bit component)
    h: BitMatrix                   # m x (2k + 2m)

    def __post_init__(self) -> None:
        if self.h.rows != len(self.check_nodes):
            raise ShapeError("one row per check node required")
        if self.h.cols != len(self.variables):
            raise ShapeError("one column per variable required")

    def column_of(self, tag: VarTag) -> int:
        return self.variables.index(tag)


def translate(g: OperationalGraph) -> ClassicalFactorGraph:
    """Map an annotated, simplified operational graph to its factor graph."""
    if not g.annotated:
        raise GraphStateError("translate requires an annotated graph")
    k, m = g.k, g.m
    variables = (
        tuple((d, "bit") for d in g.data_qubits)
        + tuple((d, "phase") for d in g.data_qubits)
        + tuple((p, "bit") for p in g.parity_qubits)
        + tuple((p, "phase") for p in g.parity_qubits)
    )
    d_idx = {d: i for i, d in enumerate(g.data_qubits)}
    p_idx = {p: i for i, p in enumerate(g.parity_qubits)}
    col_data_bit = lambda d: d_idx[d]
    col_data_phase = lambda d: k + d_idx[d]
    col_parity_bit = lambda p: 2 * k + p_idx[p]
    col_parity_phase = lambda p: 2 * k + m + p_idx[p]

    rows = [0] * m
    for d, p in g.bit_edges:
        rows[p_idx[p]] ^= 1 << col_data_bit(d)
    for d, p in g.phase_edges:
        rows[p_idx[p]] ^= 1 << col_data_phase(d)
    for a, b in g.ann_crosses:
        rows[p_idx[b]] ^= 1 << col_parity_phase(a)
        rows[p_idx[a]] ^= 1 << col_parity_phase(b)
    for s, t in g.virtual_edges:
        rows[p_idx[t]] ^= 1 << col_parity_phase(s)
    for p in g.virtual_loops:
        rows[p_idx[p]] ^= 1 << col_parity_phase(p)
    for p in g.parity_qubits:
        rows[p_idx[p]] |= 1 << col_parity_bit(p)

    h = BitMatrix(m, 2 * k + 2 * m, tuple(rows))
    return ClassicalFactorGraph(variables, g.parity_qubits, h)


def unconnected_variables(cfg: ClassicalFactorGraph) -> list[VarTag]:
    """Variables whose column is all-zero; errors there are undetectable."""
    return [tag for j, tag in enumerate(cfg.variables) if cfg.h.col(j).is_zero()]


def component_flips(cfg: ClassicalFactorGraph, e: PauliError) -> BitVec:
    """Component-flip vector of a Pauli error, qubit order data then parity.

    An X on qubit q flips q's bit component, Z flips the phase component,
    Y flips both.
    """
    m = len(cfg.check_nodes)
    k = (len(cfg.variables) - 2 * m) // 2
    if e.n != k + m:
        raise ShapeError(f"error acts on {e.n} qubits, graph has {k + m}")
    flips = 0
    for q in range(k):  # data qubits
        flips |= ((e.x.bits >> q) & 1) << q
        flips |= ((e.z.bits >> q) & 1) << (k + q)
    for j in range(m):  # parity qubits
        flips |= ((e.x.bits >> (k + j)) & 1) << (2 * k + j)
        flips |= ((e.z.bits >> (k + j)) & 1) << (2 * k + m + j)
    return BitVec(len(cfg.variables), flips)


def factor_syndrome(cfg: ClassicalFactorGraph, e: PauliError) -> BitVec:
    """Syndrome of a Pauli error read through the classical factor graph."""
    return cfg.h.mat_vec(component_flips(cfg, e))


def to_dot(cfg: ClassicalFactorGraph) -> str:
    """Graphviz rendering: circles for variables, squares for checks."""
    m = len(cfg.check_nodes)
    k = (len(cfg.variables) - 2 * m) // 2
    lines = ["graph factor {", "  rankdir=TB;"]
    names = {}
    for j, (q, comp) in enumerate(cfg.variables):
        name = f"{q}.{comp}"
        names[j] = name
        if comp == "bit" and q in cfg.check_nodes:
            lines.append(f'  "{name}" [shape=square];')
        else:
            fill = "yellow" if comp == "bit" else "lightblue"
            lines.append(f'  "{name}" [shape=circle, style=filled, fillcolor={fill}];')
    for i, p in enumerate(cfg.check_nodes):
        check_col = 2 * k + i
        for j in range(cfg.h.cols):
            if j != check_col and cfg.h.get(i, j):
                lines.append(f'  "{p}.bit" -- "{names[j]}";')
    lines.append("}")
    return "\n".join(lines)


def to_json(cfg: ClassicalFactorGraph) -> dict:
    return {
        "variables": [[q, comp] for q, comp in cfg.variables],
        "check_nodes": list(cfg.check_nodes),
        "h": cfg.h.to_lists(),
    }


def dumps(cfg: ClassicalFactorGraph) -> str:
    return json.dumps(to_json(cfg), indent=2)
