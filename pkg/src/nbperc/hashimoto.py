"""Non-backtracking transition operator on arcs and its oriented line graph.

The operator is stored matrix-free as successor lists: arc v follows arc
u = i->j iff tail(v) = j and head(v) != i.  Those lists are exactly the
adjacency of the oriented line graph (OLG), so one structure serves both
roles.
"""
from __future__ import annotations

import numpy as np

from .errors import CapExceededError, DimensionMismatchError
from .graph import DiGraph

EXACT_TRACE_CAP = 5000


class HashimotoOperator:
    """Matrix-free non-backtracking operator of a simple digraph.

    ``pair_u`` / ``pair_v`` hold every stored transition (v follows u) as
    flat arrays, ordered by u then by v's arc id; ``succ`` holds the same
    data as per-arc lists.
    """

    __slots__ = ("n_arcs", "graph", "succ", "pair_u", "pair_v")

    def __init__(self, graph, succ):
        self.graph = graph
        self.n_arcs = graph.n_arcs
        self.succ = [tuple(s) for s in succ]
        counts = np.fromiter((len(s) for s in self.succ), dtype=np.int64, count=self.n_arcs)
        self.pair_u = np.repeat(np.arange(self.n_arcs, dtype=np.int64), counts)
        flat = [v for s in self.succ for v in s]
        self.pair_v = np.asarray(flat, dtype=np.int64)

    @property
    def dim(self):
        return self.n_arcs

    def successors(self, arc_id):
        return self.succ[arc_id]

    def apply(self, x):
        """y_v = sum over u with v following u of x_u (forward transition)."""
        x = np.asarray(x, dtype=np.float64)
        if x.shape != (self.n_arcs,):
            raise DimensionMismatchError(
                f"expected vector of length {self.n_arcs}, got shape {x.shape}"
            )
        if self.n_arcs == 0:
            return np.zeros(0)
        return np.bincount(self.pair_v, weights=x[self.pair_u], minlength=self.n_arcs)

    def apply_transpose(self, x):
        """y_u = sum over v following u of x_v (reverse transition)."""
        x = np.asarray(x, dtype=np.float64)
        if x.shape != (self.n_arcs,):
            raise DimensionMismatchError(
                f"expected vector of length {self.n_arcs}, got shape {x.shape}"
            )
        if self.n_arcs == 0:
            return np.zeros(0)
        return np.bincount(self.pair_u, weights=x[self.pair_v], minlength=self.n_arcs)


def build_hashimoto(g):
    """Transcribe the non-backtracking rule into successor lists."""
    succ = []
    for t, h in g.arcs:
        row = [a for a in g.out_adj[h] if g.arcs[a][1] != t]
        succ.append(row)
    return HashimotoOperator(g, succ)


def build_olg(g):
    """Oriented line graph: one vertex per arc of g, arcs per allowed
    non-backtracking succession.  Its adjacency matrix equals the operator."""
    h = g if isinstance(g, HashimotoOperator) else build_hashimoto(g)
    arcs = list(zip(h.pair_u.tolist(), h.pair_v.tolist()))
    return DiGraph(h.n_arcs, arcs)


def trace_powers(h, s_max, cap=EXACT_TRACE_CAP):
    """Exact [Tr H^1, ..., Tr H^s_max] by integer basis-vector propagation.

    Uses arbitrary-precision integers: closed non-backtracking walk counts
    exceed 64 bits already at moderate lengths on small dense graphs.
    """
    if s_max < 1:
        raise ValueError(f"s_max must be >= 1, got {s_max}")
    if h.n_arcs > cap:
        raise CapExceededError(
            f"exact trace needs n_arcs <= {cap}, got {h.n_arcs}"
        )
    succ = h.succ
    traces = [0] * (s_max + 1)
    for e0 in range(h.n_arcs):
        vec = {e0: 1}
        for s in range(1, s_max + 1):
            nxt = {}
            for u, c in vec.items():
                for v in succ[u]:
                    nxt[v] = nxt.get(v, 0) + c
            vec = nxt
            if not vec:
                break
            traces[s] += vec.get(e0, 0)
    return traces[1:]


def trace_power(h, s, cap=EXACT_TRACE_CAP):
    """Exact Tr H^s: closed non-backtracking walks of length s (with start)."""
    return trace_powers(h, s, cap=cap)[-1]
