"""Spectral radius, induced norms, and left Perron-Frobenius data.

The spectral radius of a nonnegative 0/1 operator equals the maximum over
the strongly connected blocks of its digraph, so the engine decomposes
into blocks first and runs shifted power iteration with a Collatz-
Wielandt bracket on each irreducible block.  The shift (+I) makes every
block primitive, which turns the bracket convergence geometric even on
periodic structures like pure cycles; an acyclic (nilpotent) operator is
detected structurally and reported as an exact zero.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import NonConvergenceError, NotStronglyConnectedError
from .graph import DiGraph, _scc_labels
from .hashimoto import HashimotoOperator, build_hashimoto

DEFAULT_TOL = 1e-10

METHOD_POWER = "power-shifted"
METHOD_NILPOTENT = "nilpotent-detected"
METHOD_GELFAND = "gelfand-fallback"


@dataclass
class SpectralReport:
    """Spectral summary of a digraph and its non-backtracking operator."""

    rho_H: float
    rho_A: float
    norm_row: int
    norm_col: int
    left_pf: np.ndarray | None
    gamma_L: float | None
    iterations: int
    residual: float
    method: str


@dataclass(frozen=True)
class SpectralRadiusResult:
    rho: float
    method: str
    residual: float
    iterations: int


def _operator_pairs(op):
    """(dim, src, dst) arc pairs of the operator's digraph."""
    if isinstance(op, HashimotoOperator):
        return op.n_arcs, op.pair_u, op.pair_v
    if isinstance(op, DiGraph):
        return op.n, op.tails, op.heads
    raise TypeError(f"unsupported operator type {type(op).__name__}")


def _block_rho(k, src, dst, tol, max_iter):
    """Certified spectral radius of one irreducible block.

    Collatz-Wielandt on the shifted block: for positive x,
    min_i ((B+I)x)_i / x_i - 1  <=  rho(B)  <=  max_i ((B+I)x)_i / x_i - 1.
    Returns (lo, hi, iterations).
    """
    x = np.full(k, 1.0 / k)
    lo, hi = 0.0, float(k)
    for it in range(1, max_iter + 1):
        y = np.bincount(dst, weights=x[src], minlength=k) + x
        r = y / x
        lo, hi = float(r.min()) - 1.0, float(r.max()) - 1.0
        x = y / y.sum()
        if hi - lo < tol:
            return lo, hi, it
    return lo, hi, max_iter


def spectral_radius(op, tol=DEFAULT_TOL, max_iter=None):
    """Perron-Frobenius spectral radius of a 0/1 nonnegative operator.

    ``op`` is a DiGraph (adjacency action) or a HashimotoOperator.
    """
    if tol <= 0:
        raise ValueError(f"tol must be positive, got {tol}")
    dim, src, dst = _operator_pairs(op)
    if max_iter is None:
        max_iter = 10 * dim + 1000
    if dim == 0 or len(src) == 0:
        return SpectralRadiusResult(0.0, METHOD_NILPOTENT, 0.0, 0)
    ncomp, labels = _scc_labels(dim, src, dst)
    sizes = np.bincount(labels, minlength=ncomp)
    nontrivial = np.flatnonzero(sizes > 1)
    if len(nontrivial) == 0:
        # Every block is a singleton and there are no self-loops: the
        # operator digraph is acyclic, hence the operator is nilpotent.
        return SpectralRadiusResult(0.0, METHOD_NILPOTENT, 0.0, 0)
    best_lo = best_hi = 0.0
    total_it = 0
    converged = True
    comp_src = labels[src]
    same = comp_src == labels[dst]
    for comp in nontrivial:
        mask = same & (comp_src == comp)
        members = np.flatnonzero(labels == comp)
        local = np.full(dim, -1, dtype=np.int64)
        local[members] = np.arange(len(members))
        lo, hi, it = _block_rho(
            len(members), local[src[mask]], local[dst[mask]], tol, max_iter
        )
        total_it += it
        if hi - lo >= tol:
            converged = False
        if hi > best_hi:
            best_lo, best_hi = lo, hi
    rho = 0.5 * (best_lo + best_hi)
    residual = best_hi - best_lo
    if converged:
        return SpectralRadiusResult(rho, METHOD_POWER, residual, total_it)
    if residual > max(1.0, rho):
        raise NonConvergenceError(
            f"spectral radius bracket did not converge: [{best_lo}, {best_hi}]",
            bracket=(best_lo, best_hi),
        )
    return SpectralRadiusResult(rho, METHOD_GELFAND, residual, total_it)


def adjacency_spectral_radius(g, tol=DEFAULT_TOL, max_iter=None):
    """rho(A(g)) by the same engine."""
    return spectral_radius(g, tol=tol, max_iter=max_iter).rho


def induced_norms(h):
    """(max row sum, max column sum) of the operator, exact integers.

    Row sum of arc u is its successor count; column sum of arc v is its
    predecessor count.
    """
    if h.n_arcs == 0:
        return 0, 0
    norm_row = max(len(s) for s in h.succ)
    norm_col = int(np.bincount(h.pair_v, minlength=h.n_arcs).max()) if len(h.pair_v) else 0
    return norm_row, norm_col


def olg_strongly_connected(h):
    """Check strong connectivity of the oriented line graph; returns
    (flag, offending_arc_id or None)."""
    if h.n_arcs == 0:
        return True, None
    ncomp, labels = _scc_labels(h.n_arcs, h.pair_u, h.pair_v)
    if ncomp == 1:
        return True, None
    sizes = np.bincount(labels, minlength=ncomp)
    worst = int(np.argmin(sizes))
    return False, int(np.flatnonzero(labels == worst)[0])


def left_perron_vector(h, tol=DEFAULT_TOL, max_iter=None):
    """Left Perron-Frobenius vector xi (unit 1-norm) and principal ratio.

    Requires the oriented line graph to be strongly connected; the error
    names an arc outside the dominant component otherwise.
    """
    ok, arc_id = olg_strongly_connected(h)
    if not ok:
        arc = h.graph.arcs[arc_id]
        raise NotStronglyConnectedError(
            f"oriented line graph is not strongly connected (e.g. arc {arc})",
            arc=arc,
        )
    if h.n_arcs == 0:
        raise NotStronglyConnectedError("empty operator has no Perron vector")
    if max_iter is None:
        max_iter = 10 * h.n_arcs + 1000
    k = h.n_arcs
    xi = np.full(k, 1.0 / k)
    for _ in range(max_iter):
        y = h.apply(xi) + xi
        r = y / xi
        lo, hi = float(r.min()) - 1.0, float(r.max()) - 1.0
        xi = y / y.sum()
        if hi - lo < tol:
            rho = 0.5 * (lo + hi)
            residual = float(np.abs(h.apply(xi) - rho * xi).sum())
            if residual <= tol:
                gamma = float(xi.max() / xi.min())
                return xi, gamma
    raise NonConvergenceError(
        f"left Perron vector did not converge within {max_iter} iterations"
    )


def compute_spectral_report(g, h=None, tol=DEFAULT_TOL, max_iter=None):
    """Full spectral summary: rho(H), rho(A), induced norms, and (when the
    OLG is strongly connected) the left Perron vector and principal ratio."""
    if h is None:
        h = build_hashimoto(g)
    res_h = spectral_radius(h, tol=tol, max_iter=max_iter)
    rho_a = adjacency_spectral_radius(g, tol=tol, max_iter=max_iter)
    norm_row, norm_col = induced_norms(h)
    left_pf = None
    gamma = None
    ok, _ = olg_strongly_connected(h)
    if ok and h.n_arcs > 0:
        left_pf, gamma = left_perron_vector(h, tol=tol, max_iter=max_iter)
    return SpectralReport(
        rho_H=res_h.rho,
        rho_A=rho_a,
        norm_row=norm_row,
        norm_col=norm_col,
        left_pf=left_pf,
        gamma_L=gamma,
        iterations=res_h.iterations,
        residual=res_h.residual,
        method=res_h.method,
    )
