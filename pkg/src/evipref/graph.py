"""Collective preference graph and Condorcet-cycle elimination.

A decided relation per pair turns into directed arcs: strict preference
is a single arc, indifference is a mutual arc pair handled as one unit,
incomparability leaves the pair unconnected. A preference paradox is a
strongly connected component of three or more nodes in the strict-arc
digraph; indifference 2-cycles are tolerated by definition and therefore
contribute no strong connectivity (otherwise a mere chain of indifferent
pairs, or two separate cycles joined by one, would count as a paradox).

Two interchangeable algorithms repair paradoxes by demoting relations to
incomparability: a naive loop that repeatedly removes the weakest edge of
every offending component, and an incremental builder that inserts edges
most-confident-first behind a reachability gate. "Weakest" everywhere
means smallest distance to the categorical incomparability mass.
"""

from __future__ import annotations

import io
from dataclasses import dataclass
from typing import Mapping, Sequence

import numpy as np

from ._kernels import (
    KIND_INDIFFERENCE,
    KIND_INVERSE,
    KIND_STRICT,
    get_kernels,
)
from .evidence import MassFunction
from .fusion import FusedPair, Pair, RelationKind

_KERNEL_KIND = {
    RelationKind.STRICT_PREFERENCE: KIND_STRICT,
    RelationKind.INVERSE_PREFERENCE: KIND_INVERSE,
    RelationKind.INDIFFERENCE: KIND_INDIFFERENCE,
}


@dataclass(frozen=True)
class RelationEdge:
    """A decided, comparable relation placed in the graph.

    Strict preference is the arc i->j, inverse preference j->i, and
    indifference both arcs; the two indifference arcs are inserted and
    removed together.
    """

    pair: Pair
    kind: RelationKind
    mass: MassFunction
    d_incomp: float

    def __post_init__(self) -> None:
        i, j = self.pair
        if i == j:
            raise ValueError(f"self-pair ({i}, {i}) not allowed")
        if not i < j:
            raise ValueError(f"pair must be oriented (i, j) with i < j, got {self.pair}")
        if self.kind == RelationKind.INCOMPARABILITY:
            raise ValueError("incomparable pairs carry no edge")

    def arcs(self) -> tuple[tuple[int, int], ...]:
        i, j = self.pair
        if self.kind == RelationKind.STRICT_PREFERENCE:
            return ((i, j),)
        if self.kind == RelationKind.INVERSE_PREFERENCE:
            return ((j, i),)
        return ((i, j), (j, i))


@dataclass(frozen=True)
class PreferenceGraph:
    """Immutable snapshot of the collective preference graph.

    ``demoted`` is the audit trail of pairs turned incomparable by a
    cycle-elimination pass, in removal order.
    """

    nodes: tuple[int, ...]
    edges: tuple[RelationEdge, ...]
    demoted: tuple[Pair, ...] = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, "nodes", tuple(sorted(self.nodes)))
        edges = tuple(sorted(self.edges, key=lambda e: e.pair))
        seen: set[Pair] = set()
        node_set = set(self.nodes)
        for e in edges:
            if e.pair in seen:
                raise ValueError(f"duplicate edge for pair {e.pair}")
            seen.add(e.pair)
            if e.pair[0] not in node_set or e.pair[1] not in node_set:
                raise ValueError(f"edge {e.pair} references unknown node")
        object.__setattr__(self, "edges", edges)
        object.__setattr__(self, "demoted", tuple(tuple(p) for p in self.demoted))

    def arcs(self) -> list[tuple[int, int]]:
        out: list[tuple[int, int]] = []
        for e in self.edges:
            out.extend(e.arcs())
        return out

    def edge_for(self, pair: Pair) -> RelationEdge | None:
        for e in self.edges:
            if e.pair == pair:
                return e
        return None


def build_graph(fused: Sequence[FusedPair]) -> PreferenceGraph:
    """Materialize the decided graph; incomparable pairs contribute nodes only."""
    nodes: set[int] = set()
    seen: set[Pair] = set()
    edges: list[RelationEdge] = []
    for fp in fused:
        i, j = fp.pair
        if i == j:
            raise ValueError(f"self-pair ({i}, {i}) not allowed")
        pair = (i, j) if i < j else (j, i)
        if pair in seen:
            raise ValueError(f"duplicate fused pair {pair}")
        seen.add(pair)
        nodes.update(pair)
        if fp.decided != RelationKind.INCOMPARABILITY:
            edges.append(
                RelationEdge(pair=pair, kind=fp.decided, mass=fp.mass, d_incomp=fp.d_incomp)
            )
    return PreferenceGraph(nodes=tuple(nodes), edges=tuple(edges))


def _pack_edges(nodes: Sequence[int], edges: Sequence[RelationEdge]):
    """Map node ids to 0..n-1 and flatten edges into kernel arrays."""
    id_of = {node: k for k, node in enumerate(nodes)}
    n_edges = len(edges)
    ei = np.empty(n_edges, np.int64)
    ej = np.empty(n_edges, np.int64)
    kind = np.empty(n_edges, np.int64)
    d = np.empty(n_edges, np.float64)
    for k, e in enumerate(edges):
        ei[k] = id_of[e.pair[0]]
        ej[k] = id_of[e.pair[1]]
        kind[k] = _KERNEL_KIND[e.kind]
        d[k] = e.d_incomp
    return ei, ej, kind, d


def _strict_arc_csr(n: int, ei: np.ndarray, ej: np.ndarray, kind: np.ndarray):
    """Connectivity arcs for paradox detection: strict preferences only.

    Indifference units are tolerated 2-cycles; letting them carry strong
    connectivity would fuse unrelated cycles (or flag plain indifference
    chains), so they are invisible to the component search.
    """
    fwd = kind == KIND_STRICT
    rev = kind == KIND_INVERSE
    src = np.concatenate([ei[fwd], ej[rev]])
    dst = np.concatenate([ej[fwd], ei[rev]])
    order = np.argsort(src, kind="stable")
    src = src[order]
    dst = dst[order]
    indptr = np.zeros(n + 1, np.int64)
    np.add.at(indptr, src + 1, 1)
    np.cumsum(indptr, out=indptr)
    return indptr, dst


def _component_groups(g: PreferenceGraph, backend: str | None = None) -> list[list[int]]:
    """Strict-arc strongly connected components, ordered by smallest node."""
    n = len(g.nodes)
    if n == 0:
        return []
    ei, ej, kind, _ = _pack_edges(g.nodes, g.edges)
    indptr, targets = _strict_arc_csr(n, ei, ej, kind)
    comp, n_comp = get_kernels(backend).scc_labels(n, indptr, targets)
    groups: dict[int, list[int]] = {}
    for local, node in enumerate(g.nodes):
        groups.setdefault(int(comp[local]), []).append(node)
    return sorted(groups.values(), key=lambda nodes: nodes[0])


def _induced_subgraph(g: PreferenceGraph, nodes: list[int]) -> PreferenceGraph:
    node_set = set(nodes)
    edges = tuple(
        e for e in g.edges if e.pair[0] in node_set and e.pair[1] in node_set
    )
    return PreferenceGraph(nodes=tuple(nodes), edges=edges)


def find_paradox_components(
    g: PreferenceGraph, backend: str | None = None
) -> list[PreferenceGraph]:
    """Induced subgraphs of every SCC with at least three nodes."""
    return [
        _induced_subgraph(g, nodes)
        for nodes in _component_groups(g, backend)
        if len(nodes) >= 3
    ]


def check_dag2(
    g: PreferenceGraph, backend: str | None = None
) -> tuple[bool, PreferenceGraph | None]:
    """True when no strict-preference cycle of length >= 3 remains.

    On failure also returns the first offending component (smallest node
    first).
    """
    paradoxes = find_paradox_components(g, backend)
    if paradoxes:
        return False, paradoxes[0]
    return True, None


def naive_dag2(g: PreferenceGraph, backend: str | None = None) -> PreferenceGraph:
    """Remove-weakest-edge loop over paradox components.

    Each sweep recomputes the components and demotes exactly one edge per
    offending component: the one closest to incomparability, ties broken
    by lexicographic pair. Terminates because every sweep strictly shrinks
    the edge set.
    """
    n = len(g.nodes)
    if n == 0 or not g.edges:
        return g
    ei, ej, kind, d = _pack_edges(g.nodes, g.edges)
    demoted_idx, n_demoted = get_kernels(backend).naive_demote(n, ei, ej, kind, d)
    dropped = [int(demoted_idx[k]) for k in range(int(n_demoted))]
    dropped_set = set(dropped)
    kept = tuple(e for k, e in enumerate(g.edges) if k not in dropped_set)
    new_demotions = tuple(g.edges[k].pair for k in dropped)
    return PreferenceGraph(nodes=g.nodes, edges=kept, demoted=g.demoted + new_demotions)


def incremental_order(fused: Sequence[FusedPair]) -> list[FusedPair]:
    """Comparable pairs in insertion order: descending distance to
    incomparability, equal distances yielding to the lexicographically
    larger pair first (so the smaller pair is the one gated later)."""
    comparable = [fp for fp in fused if fp.decided != RelationKind.INCOMPARABILITY]
    return sorted(comparable, key=lambda fp: (fp.d_incomp, fp.pair))[::-1]


def incremental_dag2(
    fused: Sequence[FusedPair], backend: str | None = None
) -> PreferenceGraph:
    """Build the graph edge by edge, most-confident relations first.

    A popped relation is admitted only if its arcs cannot close a cycle
    of length >= 3 given the edges already in place; otherwise the pair
    is demoted to incomparability. Incomparable pairs contribute their
    nodes but are never pushed.
    """
    nodes: set[int] = set()
    for fp in fused:
        if fp.pair[0] == fp.pair[1]:
            raise ValueError(f"self-pair {fp.pair} not allowed")
        nodes.update(fp.pair)
    ordered = incremental_order(fused)
    node_list = tuple(sorted(nodes))
    if not ordered:
        return PreferenceGraph(nodes=node_list, edges=())

    edges = [
        RelationEdge(pair=fp.pair, kind=fp.decided, mass=fp.mass, d_incomp=fp.d_incomp)
        for fp in ordered
    ]
    ei, ej, kind, _ = _pack_edges(node_list, edges)
    order = np.arange(len(edges), dtype=np.int64)
    admitted, demoted_idx, n_demoted = get_kernels(backend).incremental_admit(
        len(node_list), order, ei, ej, kind
    )
    kept = tuple(e for k, e in enumerate(edges) if admitted[k])
    demoted = tuple(edges[int(demoted_idx[k])].pair for k in range(int(n_demoted)))
    return PreferenceGraph(nodes=node_list, edges=kept, demoted=demoted)


def to_dot(g: PreferenceGraph, labels: Mapping[int, str] | None = None) -> str:
    """Graphviz rendering: one arrow per strict arc, dir=both for
    indifference, demoted pairs recorded in a comment header."""

    def name(node: int) -> str:
        text = labels[node] if labels else str(node)
        return '"' + str(text).replace('"', '\\"') + '"'

    buf = io.StringIO()
    if g.demoted:
        listed = " ".join(f"({name(i)},{name(j)})".replace('"', "") for i, j in g.demoted)
        buf.write(f"// demoted to incomparability: {listed}\n")
    buf.write("digraph preferences {\n")
    for node in g.nodes:
        buf.write(f"  {name(node)};\n")
    for e in g.edges:
        i, j = e.pair
        if e.kind == RelationKind.STRICT_PREFERENCE:
            buf.write(f"  {name(i)} -> {name(j)};\n")
        elif e.kind == RelationKind.INVERSE_PREFERENCE:
            buf.write(f"  {name(j)} -> {name(i)};\n")
        else:
            buf.write(f"  {name(i)} -> {name(j)} [dir=both];\n")
    buf.write("}\n")
    return buf.getvalue()


def to_edge_csv(g: PreferenceGraph, labels: Mapping[int, str] | None = None) -> str:
    """Edge list as CSV rows `i,j,kind,d_incomp`."""

    def name(node: int) -> str:
        return labels[node] if labels else str(node)

    lines = ["i,j,kind,d_incomp"]
    for e in g.edges:
        i, j = e.pair
        lines.append(f"{name(i)},{name(j)},{e.kind.token},{e.d_incomp:.5f}")
    return "\n".join(lines) + "\n"
