"""Deterministic graph families used by tests, experiments, and the CLI.

Undirected families are symmetrized: every undirected edge becomes two
opposite arcs, matching the mapping from undirected to directed site
percolation used throughout.
"""
from __future__ import annotations

import heapq

import numpy as np

from .errors import GraphStructureError
from .graph import DiGraph


def _sym_arcs(edges):
    arcs = []
    for u, v in edges:
        arcs.append((u, v))
        arcs.append((v, u))
    return arcs


def gen_cycle(n):
    """Directed n-cycle, n >= 3."""
    if n < 3:
        raise GraphStructureError(f"cycle needs n >= 3, got {n}")
    return DiGraph(n, [(i, (i + 1) % n) for i in range(n)])


def gen_complete_sym(n):
    """Complete graph on n vertices, both arc directions."""
    if n < 2:
        raise GraphStructureError(f"complete graph needs n >= 2, got {n}")
    return DiGraph(n, [(u, v) for u in range(n) for v in range(n) if u != v])


def gen_path_sym(n):
    """Path on n vertices, symmetrized."""
    if n < 1:
        raise GraphStructureError(f"path needs n >= 1, got {n}")
    return DiGraph(n, _sym_arcs((i, i + 1) for i in range(n - 1)))


def gen_star_sym(k):
    """Star with center 0 and k leaves, symmetrized (2k arcs)."""
    if k < 1:
        raise GraphStructureError(f"star needs k >= 1 leaves, got {k}")
    return DiGraph(k + 1, _sym_arcs((0, i) for i in range(1, k + 1)))


def gen_random_regular_sym(n, d, seed, max_attempts=20000):
    """Random d-regular graph by configuration-model pairing, symmetrized.

    Pairings producing self-loops or multi-edges are rejected wholesale
    and redrawn, so the accepted graph is uniform over simple d-regular
    graphs and exactly reproducible per seed.
    """
    if d >= n:
        raise GraphStructureError(f"need d < n, got d={d}, n={n}")
    if d < 1:
        raise GraphStructureError(f"need d >= 1, got d={d}")
    if (n * d) % 2 != 0:
        raise GraphStructureError(f"n*d must be even, got n={n}, d={d}")
    rng = np.random.default_rng(np.random.SeedSequence(seed))
    stubs = np.repeat(np.arange(n, dtype=np.int64), d)
    for _ in range(max_attempts):
        perm = rng.permutation(stubs)
        u, v = perm[0::2], perm[1::2]
        if np.any(u == v):
            continue
        lo = np.minimum(u, v)
        hi = np.maximum(u, v)
        key = lo * n + hi
        if len(np.unique(key)) != len(key):
            continue
        order = np.argsort(key, kind="stable")
        edges = list(zip(lo[order].tolist(), hi[order].tolist()))
        return DiGraph(n, _sym_arcs(edges))
    raise GraphStructureError(
        f"no simple pairing found in {max_attempts} attempts (n={n}, d={d})"
    )


def gen_erdos_renyi_digraph(n, arc_prob, seed):
    """Each ordered pair (u, v), u != v, is an arc independently with
    probability arc_prob."""
    if not 0.0 <= arc_prob <= 1.0:
        raise GraphStructureError(f"arc_prob {arc_prob} outside [0,1]")
    rng = np.random.default_rng(np.random.SeedSequence(seed))
    draws = rng.random((n, n))
    mask = draws < arc_prob
    np.fill_diagonal(mask, False)
    us, vs = np.nonzero(mask)
    return DiGraph(n, list(zip(us.tolist(), vs.tolist())))


def gen_random_tree_sym(n, seed):
    """Uniform random labeled tree via Pruefer decoding, symmetrized."""
    if n < 1:
        raise GraphStructureError(f"tree needs n >= 1, got {n}")
    if n == 1:
        return DiGraph(1, [])
    if n == 2:
        return DiGraph(2, _sym_arcs([(0, 1)]))
    rng = np.random.default_rng(np.random.SeedSequence(seed))
    seq = rng.integers(0, n, size=n - 2)
    degree = np.ones(n, dtype=np.int64)
    for v in seq:
        degree[v] += 1
    edges = []
    leaves = [v for v in range(n) if degree[v] == 1]
    heapq.heapify(leaves)
    for v in seq:
        leaf = heapq.heappop(leaves)
        edges.append((leaf, int(v)))
        degree[v] -= 1
        if degree[v] == 1:
            heapq.heappush(leaves, int(v))
    a = heapq.heappop(leaves)
    b = heapq.heappop(leaves)
    edges.append((a, b))
    return DiGraph(n, _sym_arcs(edges))
