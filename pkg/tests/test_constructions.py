import math
from fractions import Fraction

import pytest

from inducibility.constructions import (
    dtame_blowup,
    gnp_construction,
    split_construction,
    split_plus_edge,
)
from inducibility.density import induced_density
from inducibility.errors import InputError, PreconditionError
from inducibility.graphs import Graph, is_isomorphic

E = math.e


class TestSplit:
    def test_acceptance_value(self):
        rep = split_construction(3, 1, 300, 1 / 3)
        assert rep.achieved == Fraction(1990000, 4455100)
        assert abs(rep.limit_formula - 4 / 9) < 1e-12
        assert rep.graph is None  # host exceeds the 64-vertex universe

    def test_limit_near_inverse_e(self):
        rep = split_construction(100, 1, 10_000, 1 / 100)
        assert abs(rep.limit_formula - (99 / 100) ** 99) < 1e-12
        assert abs(rep.limit_formula - 1 / E) < 0.002

    def test_r2_limit_near_two_over_e_squared(self):
        rep = split_construction(200, 2, 40_000, 2 / 200)
        assert abs(rep.limit_formula - 2 / E**2) < 0.01

    def test_achieved_converges_to_limit(self):
        rep = split_construction(3, 1, 300, 1 / 3)
        assert abs(float(rep.achieved) - rep.limit_formula) <= 0.02

    def test_small_instance_consistency(self):
        rep = split_construction(3, 1, 30, 1 / 3)
        assert is_isomorphic(rep.target, Graph.path(3))
        assert rep.target_density == induced_density(rep.target, rep.graph).density
        assert rep.achieved <= rep.target_density

    def test_event_counts_match_direct_arithmetic(self):
        rep = split_construction(5, 2, 40, 0.3)
        small = round(0.3 * 40)
        expect = Fraction(
            math.comb(small, 2) * math.comb(40 - small, 3), math.comb(40, 5)
        )
        assert rep.achieved == expect

    def test_sigma_maximizer_at_r_over_k(self):
        k, r = 6, 2
        grid = [i / 200 for i in range(1, 200)]
        best = max(grid, key=lambda s: math.comb(k, r) * s**r * (1 - s) ** (k - r))
        assert abs(best - r / k) <= 1 / 200

    def test_input_errors(self):
        with pytest.raises(InputError):
            split_construction(3, 3, 10, 0.5)
        with pytest.raises(InputError):
            split_construction(3, 1, 10, 0.0)
        with pytest.raises(InputError):
            split_construction(5, 3, 100, 0.01)  # small side too small


class TestGnp:
    def test_limit_values(self):
        assert abs(gnp_construction(10, 12, 0).limit_formula - (44 / 45) ** 44) < 1e-12
        assert gnp_construction(2, 5, 1).limit_formula == 1.0
        assert abs(gnp_construction(50, 60, 0).limit_formula - 1 / E) < 0.01

    def test_achieved_is_sample_density(self):
        rep = gnp_construction(4, 10, seed=3)
        assert rep.seed == 3
        assert rep.achieved == induced_density(rep.target, rep.graph).density

    def test_seed_reproducible(self):
        assert gnp_construction(5, 12, seed=9) == gnp_construction(5, 12, seed=9)

    def test_target_shape(self):
        rep = gnp_construction(6, 8, seed=0)
        assert rep.target.n == 6 and rep.target.edge_count() == 1


class TestSplitPlusEdge:
    def test_small_case(self):
        rep = split_plus_edge(4, 8)
        assert rep.achieved == Fraction(36, 70)
        assert rep.achieved > 0
        assert rep.limit_formula == 6 / 16
        assert rep.target_density == induced_density(rep.target, rep.graph).density
        assert rep.achieved <= rep.target_density

    def test_target_is_bipartite_plus_edge(self):
        rep = split_plus_edge(5, 10)
        t = rep.target
        assert t.n == 5 and t.edge_count() == 2 * 3 + 1
        assert t.has_edge(0, 1)

    def test_limit_approaches_two_over_e_squared(self):
        rep = split_plus_edge(60, 6000)
        assert abs(rep.limit_formula - 2 / E**2) < 0.02
        assert rep.graph is None and rep.target is not None

    def test_input_errors(self):
        with pytest.raises(InputError):
            split_plus_edge(3, 10)


class TestBlowup:
    def test_star_blowup_is_complete_bipartite(self):
        rep = dtame_blowup(Graph.star(3), {0}, 20)
        assert is_isomorphic(rep.graph, Graph.complete_bipartite(5, 15))
        assert abs(rep.limit_formula - 27 / 64) < 1e-12

    def test_complete_graph_blowup(self):
        rep = dtame_blowup(Graph.complete(4), set(), 10)
        assert rep.graph == Graph.complete(10)
        assert rep.achieved == 1 and rep.target_density == 1

    def test_p4_blowup_positive(self, p4):
        rep = dtame_blowup(p4, {0, 1, 2}, 8)
        assert rep.achieved == Fraction(16, 70)
        assert rep.target_density == induced_density(p4, rep.graph).density
        assert rep.achieved <= rep.target_density

    def test_event_subsets_induce_pattern(self, p4):
        # every one-per-group pick really is a copy: achieved <= density
        rep = dtame_blowup(p4, {1, 2, 3}, 9)
        assert 0 < rep.achieved <= rep.target_density

    def test_large_n_keeps_half_the_limit(self):
        rep = dtame_blowup(Graph.star(3), {0}, 200)
        assert float(rep.achieved) >= 0.5 * rep.limit_formula
        assert rep.graph is None

    def test_invalid_taming_set_rejected(self, p4):
        with pytest.raises(PreconditionError):
            dtame_blowup(p4, {1, 2}, 8)
