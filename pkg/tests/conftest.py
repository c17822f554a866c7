"""Shared fixtures and independent oracles.

The oracles here deliberately avoid the production code paths: dense
eigensolves go through numpy, reachability through boolean closure, and
walk counts through explicit enumeration over arc sequences.
"""
import numpy as np
import pytest

from nbperc import DiGraph, gen_complete_sym, gen_cycle, gen_path_sym, gen_star_sym


@pytest.fixture
def c3():
    return gen_cycle(3)


@pytest.fixture
def p3sym():
    return gen_path_sym(3)


@pytest.fixture
def k4sym():
    return gen_complete_sym(4)


@pytest.fixture
def star3sym():
    return gen_star_sym(3)


@pytest.fixture
def chord():
    # Directed triangle plus the chord arc 0->2 paired with 2->0.
    return DiGraph(3, [(0, 1), (1, 2), (2, 0), (0, 2)])


def dense_hashimoto(g):
    """Dense 0/1 non-backtracking matrix built straight from the rule."""
    m = g.n_arcs
    mat = np.zeros((m, m))
    for u, (i, j) in enumerate(g.arcs):
        for v, (jp, l) in enumerate(g.arcs):
            if jp == j and l != i:
                mat[u, v] = 1.0
    return mat


def dense_adjacency(g):
    mat = np.zeros((g.n, g.n))
    for t, h in g.arcs:
        mat[t, h] = 1.0
    return mat


def dense_rho(mat):
    if mat.size == 0:
        return 0.0
    return float(np.max(np.abs(np.linalg.eigvals(mat))))


def reachability_closure(g):
    """Boolean transitive closure (with self-reachability)."""
    reach = np.eye(g.n, dtype=bool)
    for t, h in g.arcs:
        reach[t, h] = True
    for _ in range(g.n):
        new = reach | (reach @ reach)
        if (new == reach).all():
            break
        reach = new
    return reach


def brute_scc_partition(g):
    """SCC partition via mutual reachability; frozen sets for comparison."""
    reach = reachability_closure(g)
    mutual = reach & reach.T
    return {frozenset(np.flatnonzero(mutual[v]).tolist()) for v in range(g.n)}


def brute_closed_nb_walks(g, s):
    """Count closed non-backtracking walks of length s by enumerating arc
    sequences directly from the graph (no operator involved)."""
    arcs = g.arcs
    m = len(arcs)

    def count_from(start, current, steps):
        if steps == 0:
            return 1 if current == start else 0
        ci, cj = arcs[current]
        total = 0
        for nxt in range(m):
            ni, nj = arcs[nxt]
            if ni == cj and nj != ci:
                total += count_from(start, nxt, steps - 1)
        return total

    return sum(count_from(e, e, s) for e in range(m))
