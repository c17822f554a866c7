import math

import numpy as np
import pytest

from nbperc import (
    adjacency_spectral_radius,
    build_hashimoto,
    compute_spectral_report,
    gen_erdos_renyi_digraph,
    gen_random_regular_sym,
    gen_random_tree_sym,
    induced_norms,
    left_perron_vector,
    spectral_radius,
    symmetric_arc_pairs,
)
from nbperc.errors import NotStronglyConnectedError

from conftest import dense_adjacency, dense_hashimoto, dense_rho


class TestSpectralRadius:
    def test_nilpotent_path(self, p3sym):
        res = spectral_radius(build_hashimoto(p3sym))
        assert res.rho == 0.0
        assert res.method == "nilpotent-detected"

    def test_cycle_permutation(self, c3):
        res = spectral_radius(build_hashimoto(c3))
        assert abs(res.rho - 1.0) < 1e-9

    def test_complete_sym(self, k4sym):
        h = build_hashimoto(k4sym)
        res = spectral_radius(h)
        assert abs(res.rho - dense_rho(dense_hashimoto(k4sym))) < 1e-6
        assert abs(res.rho - 2.0) < 1e-6

    def test_random_vs_dense_oracle(self):
        for seed in range(30):
            g = gen_erdos_renyi_digraph(4 + seed % 8, 0.35, seed)
            h = build_hashimoto(g)
            rho_h = spectral_radius(h).rho
            rho_a = adjacency_spectral_radius(g)
            assert abs(rho_h - dense_rho(dense_hashimoto(g))) < 1e-6
            assert abs(rho_a - dense_rho(dense_adjacency(g))) < 1e-6

    def test_tied_reducible_blocks(self):
        # Two disjoint directed triangles feeding one another's shadow: the
        # operator is reducible with two blocks of equal radius.
        from nbperc import DiGraph

        g = DiGraph(6, [(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3), (0, 3)])
        res = spectral_radius(build_hashimoto(g))
        assert abs(res.rho - 1.0) < 1e-8


class TestAdjacency:
    def test_cycle(self, c3):
        assert abs(adjacency_spectral_radius(c3) - 1.0) < 1e-9

    def test_complete_sym(self, k4sym):
        assert abs(adjacency_spectral_radius(k4sym) - 3.0) < 1e-6

    def test_path_sym(self, p3sym):
        assert abs(adjacency_spectral_radius(p3sym) - math.sqrt(2)) < 1e-6


class TestInducedNorms:
    def test_cycle(self, c3):
        assert induced_norms(build_hashimoto(c3)) == (1, 1)

    def test_complete_sym(self, k4sym):
        assert induced_norms(build_hashimoto(k4sym)) == (2, 2)

    def test_star_norm_strictly_above_rho(self, star3sym):
        h = build_hashimoto(star3sym)
        assert induced_norms(h) == (2, 2)
        res = spectral_radius(h)
        assert res.rho == 0.0


class TestLeftPerron:
    def test_complete_sym_uniform(self, k4sym):
        xi, gamma = left_perron_vector(build_hashimoto(k4sym))
        assert abs(gamma - 1.0) < 1e-9
        assert np.allclose(xi, 1.0 / 12)

    def test_cycle_uniform(self, c3):
        xi, gamma = left_perron_vector(build_hashimoto(c3))
        assert abs(gamma - 1.0) < 1e-9

    def test_chord_rejected_with_arc(self, chord):
        with pytest.raises(NotStronglyConnectedError) as exc:
            left_perron_vector(build_hashimoto(chord))
        assert exc.value.arc in chord.arcs

    def test_eigen_residual_contract(self):
        tol = 1e-10
        for seed in (1, 5, 9):
            g = gen_random_regular_sym(40, 3, seed)
            h = build_hashimoto(g)
            xi, gamma = left_perron_vector(h, tol=tol)
            rho = spectral_radius(h).rho
            assert abs(xi.sum() - 1.0) < 1e-12
            assert (xi > 0).all()
            assert np.abs(h.apply(xi) - rho * xi).sum() <= tol
            assert gamma >= 1.0


class TestPaperInequalities:
    def test_rho_h_below_rho_a_and_norms(self):
        for seed in range(60):
            g = gen_erdos_renyi_digraph(5 + seed % 16, 0.25, seed)
            h = build_hashimoto(g)
            sr = compute_spectral_report(g, h)
            assert sr.rho_H <= sr.rho_A + 1e-9
            assert sr.rho_H <= min(sr.norm_row, sr.norm_col) + 1e-9

    def test_equality_iff_no_symmetric_pairs(self):
        saw_equal = saw_gap = False
        for seed in range(60):
            g = gen_erdos_renyi_digraph(5 + seed % 12, 0.2, seed)
            h = build_hashimoto(g)
            sr = compute_spectral_report(g, h)
            if not symmetric_arc_pairs(g):
                assert abs(sr.rho_H - sr.rho_A) < 1e-6
                saw_equal = True
            elif sr.rho_A > 1e-6 and spectral_radius(g).rho > 0:
                saw_gap = True
        assert saw_equal

    def test_regular_identity_small(self):
        for d, seed in ((3, 0), (4, 1), (5, 2)):
            g = gen_random_regular_sym(200, d, seed)
            rho = spectral_radius(build_hashimoto(g)).rho
            assert abs(rho - (d - 1)) < 1e-3

    def test_regular_identity_large(self):
        g = gen_random_regular_sym(10000, 3, 7)
        rho = spectral_radius(build_hashimoto(g)).rho
        assert abs(rho - 2.0) < 1e-3

    def test_tree_nilpotent(self):
        for n, seed in ((10, 0), (100, 1), (1000, 2)):
            g = gen_random_tree_sym(n, seed)
            res = spectral_radius(build_hashimoto(g))
            assert res.rho == 0.0
            assert res.method == "nilpotent-detected"
