"""Simple digraph container with dense ids, edge-list I/O, and component analysis.

The graph is immutable after construction: vertex ids are dense 0-based
integers, arcs are stored in insertion order and the arc id is the position
in that order.  Self-loops and duplicate arcs are rejected outright; every
downstream formula assumes a simple digraph.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import connected_components as _cc

from .errors import GraphStructureError, ParseError


class DiGraph:
    """Immutable simple digraph.

    Attributes:
        n: number of vertices.
        arcs: tuple of (tail, head) pairs; position is the arc id.
        out_adj / in_adj: per-vertex lists of arc ids, in arc-id order.
        arc_index: dict (tail, head) -> arc id.
        tails / heads: numpy views of the arc endpoints.
    """

    __slots__ = ("n", "arcs", "out_adj", "in_adj", "arc_index", "tails", "heads")

    def __init__(self, n, arcs):
        if n < 0:
            raise GraphStructureError(f"negative vertex count {n}")
        arcs = tuple((int(t), int(h)) for t, h in arcs)
        out_adj = [[] for _ in range(n)]
        in_adj = [[] for _ in range(n)]
        arc_index = {}
        for aid, (t, h) in enumerate(arcs):
            if not (0 <= t < n and 0 <= h < n):
                raise GraphStructureError(f"arc ({t},{h}) references vertex outside 0..{n - 1}")
            if t == h:
                raise GraphStructureError(f"self-loop ({t},{h}) not allowed")
            if (t, h) in arc_index:
                raise GraphStructureError(f"duplicate arc ({t},{h})")
            arc_index[(t, h)] = aid
            out_adj[t].append(aid)
            in_adj[h].append(aid)
        self.n = n
        self.arcs = arcs
        self.out_adj = out_adj
        self.in_adj = in_adj
        self.arc_index = arc_index
        self.tails = np.fromiter((t for t, _ in arcs), dtype=np.int64, count=len(arcs))
        self.heads = np.fromiter((h for _, h in arcs), dtype=np.int64, count=len(arcs))

    @property
    def n_arcs(self):
        return len(self.arcs)

    def out_neighbors(self, v):
        """Heads of the arcs leaving v, in arc-id order."""
        return [self.arcs[a][1] for a in self.out_adj[v]]

    def out_degree(self, v):
        return len(self.out_adj[v])

    def in_degree(self, v):
        return len(self.in_adj[v])

    def has_arc(self, t, h):
        return (t, h) in self.arc_index

    def __eq__(self, other):
        return isinstance(other, DiGraph) and self.n == other.n and self.arcs == other.arcs

    def __hash__(self):
        return hash((self.n, self.arcs))

    def __repr__(self):
        return f"DiGraph(n={self.n}, n_arcs={self.n_arcs})"


@dataclass(frozen=True)
class ComponentLabeling:
    """Strongly connected component labels.

    component_id: per-vertex component label (numpy int array).
    sizes: per-component vertex counts, indexed by label.
    condensation_order: component labels in a topological order of the
        condensation (every arc goes from an earlier to a later entry).
    """

    component_id: np.ndarray
    sizes: np.ndarray
    condensation_order: tuple

    @property
    def count(self):
        return len(self.sizes)


def parse_edge_list(text, undirected=False):
    """Parse whitespace-separated edge-list text into a DiGraph.

    Lines starting with '#' are comments, except an optional header
    "#n <N>" that fixes the vertex count.  With ``undirected`` set, each
    input line (u, v) yields both arcs u->v and v->u.
    """
    declared_n = None
    arcs = []
    seen = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line:
            continue
        if line.startswith("#"):
            parts = line[1:].split()
            if parts and parts[0] == "n":
                if len(parts) != 2:
                    raise ParseError("malformed '#n' header", lineno)
                try:
                    declared_n = int(parts[1])
                except ValueError:
                    raise ParseError(f"bad vertex count {parts[1]!r}", lineno) from None
                if declared_n < 0:
                    raise ParseError(f"negative vertex count {declared_n}", lineno)
            continue
        parts = line.split()
        if len(parts) != 2:
            raise ParseError(f"expected two vertex ids, got {len(parts)} tokens", lineno)
        try:
            u, v = int(parts[0]), int(parts[1])
        except ValueError:
            raise ParseError(f"non-integer vertex id in {line!r}", lineno) from None
        if u < 0 or v < 0:
            raise ParseError(f"negative vertex id in {line!r}", lineno)
        if u == v:
            raise ParseError(f"self-loop ({u},{v})", lineno)
        pairs = [(u, v), (v, u)] if undirected else [(u, v)]
        for pair in pairs:
            if pair in seen:
                raise ParseError(f"duplicate arc {pair}", lineno)
            seen[pair] = lineno
            arcs.append(pair)
    max_id = max((max(u, v) for u, v in arcs), default=-1)
    n = max_id + 1 if declared_n is None else declared_n
    if declared_n is not None and max_id >= declared_n:
        raise ParseError(f"vertex id {max_id} exceeds declared count {declared_n}")
    return DiGraph(n, arcs)


def serialize_edge_list(g):
    """Inverse of parse_edge_list (directed form); preserves arc order."""
    lines = [f"#n {g.n}"]
    lines.extend(f"{t} {h}" for t, h in g.arcs)
    return "\n".join(lines) + "\n"


def _scc_labels(n, tails, heads):
    """Raw strong-component labels via compiled sparse graph machinery."""
    if n == 0:
        return 0, np.zeros(0, dtype=np.int64)
    m = csr_matrix(
        (np.ones(len(tails), dtype=np.int8), (tails, heads)), shape=(n, n)
    )
    ncomp, labels = _cc(m, directed=True, connection="strong")
    return ncomp, labels.astype(np.int64)


def strongly_connected_components(g):
    """Label maximal mutually-reachable vertex sets and order the condensation."""
    ncomp, labels = _scc_labels(g.n, g.tails, g.heads)
    sizes = np.bincount(labels, minlength=ncomp)
    # Condensation arcs: comp(tail) -> comp(head) where labels differ.
    order = _topo_order(ncomp, labels[g.tails], labels[g.heads])
    return ComponentLabeling(labels, sizes, tuple(order))


def _topo_order(ncomp, comp_t, comp_h):
    """Kahn topological order over the condensation DAG (deterministic)."""
    cross = comp_t != comp_h
    pairs = set(zip(comp_t[cross].tolist(), comp_h[cross].tolist()))
    succ = [[] for _ in range(ncomp)]
    indeg = [0] * ncomp
    for a, b in sorted(pairs):
        succ[a].append(b)
        indeg[b] += 1
    ready = sorted(c for c in range(ncomp) if indeg[c] == 0)
    order = []
    while ready:
        c = ready.pop(0)
        order.append(c)
        inserted = []
        for b in succ[c]:
            indeg[b] -= 1
            if indeg[b] == 0:
                inserted.append(b)
        for b in sorted(inserted):
            ready.append(b)
    return order


def is_strongly_connected(g):
    if g.n == 0:
        return True
    ncomp, _ = _scc_labels(g.n, g.tails, g.heads)
    return ncomp == 1


def induced_subgraph(g, open_vertices):
    """Subgraph induced by the open vertex set, with dense relabeling.

    Returns (subgraph, kept) where kept[new_id] = old_id.
    """
    open_set = set(int(v) for v in open_vertices)
    for v in open_set:
        if not (0 <= v < g.n):
            raise GraphStructureError(f"vertex {v} outside 0..{g.n - 1}")
    kept = sorted(open_set)
    remap = {old: new for new, old in enumerate(kept)}
    arcs = [
        (remap[t], remap[h])
        for t, h in g.arcs
        if t in open_set and h in open_set
    ]
    return DiGraph(len(kept), arcs), kept


def symmetric_arc_pairs(g):
    """All unordered pairs {u->v, v->u} present in g, as (arc_id, arc_id).

    Each pair appears once, with the smaller arc id first; empty iff the
    graph has no symmetric edges.
    """
    pairs = []
    for aid, (t, h) in enumerate(g.arcs):
        bid = g.arc_index.get((h, t))
        if bid is not None and aid < bid:
            pairs.append((aid, bid))
    return pairs


def is_robustly_strongly_connected(g):
    """True iff g is strongly connected and stays so after deleting either
    member of any symmetric arc pair (one at a time)."""
    if not is_strongly_connected(g):
        return False
    pairs = symmetric_arc_pairs(g)
    for aid, bid in pairs:
        for drop in (aid, bid):
            keep = np.ones(g.n_arcs, dtype=bool)
            keep[drop] = False
            ncomp, _ = _scc_labels(g.n, g.tails[keep], g.heads[keep])
            if ncomp != 1:
                return False
    return True
