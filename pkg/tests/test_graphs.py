import math
import random
from itertools import combinations, permutations

import pytest

from inducibility.errors import Graph6Error, InputError, UnsupportedSizeError
from inducibility.graphs import (
    Graph,
    automorphism_count,
    canonical_code,
    canonical_key,
    complement,
    degree_profile,
    disjoint_union,
    induced_subgraph,
    is_isomorphic,
    non_isolated_core,
    parse_graph6,
    relabel,
    to_graph6,
    with_isolated,
)
from oracles import (
    all_labeled_graphs,
    brute_automorphisms,
    brute_isomorphic,
    edge_set,
    ref_decode_graph6,
)


def random_graph(rng, n, p=0.5):
    return Graph.from_edges(
        n, [(i, j) for i in range(n) for j in range(i + 1, n) if rng.random() < p]
    )


class TestGraph6:
    def test_named_decodings(self):
        assert parse_graph6("Bw") == Graph.complete(3)
        assert parse_graph6("A?") == Graph.empty(2)
        assert parse_graph6("Bg") == Graph.from_edges(3, [(0, 1), (1, 2)])

    def test_named_encodings(self):
        assert to_graph6(Graph.complete(3)) == "Bw"
        assert to_graph6(Graph(1, (0,))) == "@"

    def test_agrees_with_reference_decoder(self):
        rng = random.Random(1)
        for _ in range(300):
            n = rng.randint(0, 40)
            g = random_graph(rng, n, rng.uniform(0.1, 0.9))
            line = to_graph6(g)
            n_ref, edges_ref = ref_decode_graph6(line)
            assert n_ref == g.n
            assert edges_ref == edge_set(g)

    def test_round_trip_all_small(self):
        for n in range(6):
            for g in all_labeled_graphs(n):
                assert parse_graph6(to_graph6(g)) == g

    def test_round_trip_random_large(self):
        rng = random.Random(2)
        for _ in range(1000):
            n = rng.randint(0, 40)
            g = random_graph(rng, n, rng.random())
            assert parse_graph6(to_graph6(g)) == g

    def test_extended_header_for_63_and_64(self):
        for n in (63, 64):
            g = Graph.complete(n)
            line = to_graph6(g)
            assert line.startswith("~")
            assert parse_graph6(line) == g

    @pytest.mark.parametrize(
        "bad, fragment",
        [
            ("", "empty"),
            ("!", "offset 0"),
            ("B", "expected"),
            ("Bww", "expected"),
            ("B!", "offset 1"),
            ("~~~~~", "unsupported"),
        ],
    )
    def test_parse_errors_name_offsets(self, bad, fragment):
        with pytest.raises(Graph6Error, match=fragment):
            parse_graph6(bad)

    def test_vertex_count_limit(self):
        line = to_graph6(Graph.empty(64))
        too_big = "~" + chr(64) + chr(63) + chr(63)  # n = 4096
        with pytest.raises(Graph6Error, match="exceeds"):
            parse_graph6(too_big + "?" * 10)
        assert parse_graph6(line).n == 64

    def test_nonzero_padding_rejected(self):
        # single vertex pair, no edge, but padding bit set
        with pytest.raises(Graph6Error, match="padding"):
            parse_graph6("A" + chr(63 + 1))


class TestBasicOps:
    def test_complement_examples(self):
        assert complement(Graph.complete(3)) == Graph.empty(3)
        assert is_isomorphic(complement(Graph.path(4)), Graph.path(4))

    def test_complement_involution(self):
        rng = random.Random(3)
        for _ in range(100):
            g = random_graph(rng, rng.randint(0, 12))
            assert complement(complement(g)) == g

    def test_induced_subgraph_examples(self):
        c4 = Graph.cycle(4)
        for verts in combinations(range(4), 3):
            assert is_isomorphic(induced_subgraph(c4, verts), Graph.path(3))
        g = Graph.path(5)
        assert induced_subgraph(g, []) == Graph.empty(0)
        assert induced_subgraph(g, range(5)) == g

    def test_induced_subgraph_out_of_range(self):
        with pytest.raises(InputError):
            induced_subgraph(Graph.path(3), [0, 5])

    def test_degree_profile_examples(self):
        prof = degree_profile(Graph.path(3))
        assert prof.degrees == (1, 2, 1)
        assert prof.edge_count == 2
        assert (prof.m, prof.m1, prof.m_ge2) == (3, 2, 1)
        prof = degree_profile(Graph.complete(4))
        assert prof.max_degree == 3 and prof.edge_count == 6
        assert prof.m == 4 and prof.m1 == 0
        g = with_isolated(Graph.from_edges(4, [(0, 1), (2, 3)]), 1)
        prof = degree_profile(g)
        assert (prof.m, prof.m1, prof.m_ge2, prof.edge_count) == (4, 4, 0, 2)
        assert sum(prof.k_hist.values()) == g.n

    def test_degree_sum_invariant(self):
        rng = random.Random(4)
        for _ in range(200):
            g = random_graph(rng, rng.randint(0, 20))
            prof = degree_profile(g)
            assert sum(prof.degrees) == 2 * prof.edge_count

    def test_non_isolated_core(self):
        assert non_isolated_core(with_isolated(Graph.path(3), 2)) == Graph.path(3)
        assert non_isolated_core(Graph.empty(5)) == Graph.empty(0)
        assert non_isolated_core(Graph.complete(3)) == Graph.complete(3)


class TestCanonical:
    def test_relabel_invariance_exhaustive_small(self):
        for n in range(5):
            for g in all_labeled_graphs(n):
                code = canonical_key(g)
                for p in permutations(range(n)):
                    assert canonical_key(relabel(g, list(p))) == code

    def test_relabel_invariance_sampled_n6(self):
        rng = random.Random(5)
        for _ in range(500):
            g = random_graph(rng, 6)
            p = list(range(6))
            rng.shuffle(p)
            assert canonical_key(g) == canonical_key(relabel(g, p))

    def test_relabel_invariance_sampled_larger(self):
        rng = random.Random(50)
        for n in (7, 8, 12, 16):
            for _ in range(150):
                g = random_graph(rng, n, rng.uniform(0.1, 0.9))
                p = list(range(n))
                rng.shuffle(p)
                assert canonical_key(g) == canonical_key(relabel(g, p))
                assert is_isomorphic(g, relabel(g, p))

    def test_distinct_classes_on_four_vertices(self):
        codes = {canonical_key(g) for g in all_labeled_graphs(4)}
        assert len(codes) == 11

    def test_code_object_equality(self):
        assert canonical_code(Graph.cycle(4)) != canonical_code(Graph.star(3))
        assert canonical_code(Graph.path(3)) == canonical_code(
            relabel(Graph.path(3), [2, 0, 1])
        )

    def test_iso_agrees_with_brute_force(self):
        rng = random.Random(6)
        for _ in range(400):
            n = rng.randint(1, 6)
            g1 = random_graph(rng, n)
            g2 = random_graph(rng, n)
            assert is_isomorphic(g1, g2) == brute_isomorphic(g1, g2)

    def test_iso_examples(self):
        assert is_isomorphic(Graph.path(3), relabel(Graph.path(3), [1, 2, 0]))
        assert not is_isomorphic(Graph.complete(3), Graph.path(3))
        assert is_isomorphic(complement(Graph.path(4)), Graph.path(4))


class TestAutomorphisms:
    def test_examples(self):
        assert automorphism_count(Graph.star(3)) == 6
        assert automorphism_count(Graph.path(4)) == 2
        assert automorphism_count(Graph.cycle(5)) == 10

    def test_agrees_with_brute_force_exhaustive(self):
        for n in range(1, 6):
            for g in all_labeled_graphs(n):
                assert automorphism_count(g) == brute_automorphisms(g)

    def test_agrees_with_brute_force_sampled(self, classes_by_n):
        rng = random.Random(7)
        sample = rng.sample(list(classes_by_n[7]), 60)
        for g in sample:
            assert automorphism_count(g) == brute_automorphisms(g)

    def test_divides_factorial(self, classes_by_n):
        for n in range(1, 8):
            for g in classes_by_n[n]:
                assert math.factorial(n) % automorphism_count(g) == 0

    def test_large_symmetric_graphs(self):
        assert automorphism_count(Graph.complete(16)) == math.factorial(16)
        assert automorphism_count(Graph.empty(12)) == math.factorial(12)
        assert automorphism_count(Graph.complete_bipartite(4, 4)) == 2 * 24 * 24
        assert automorphism_count(Graph.cycle(12)) == 24

    def test_size_limit(self):
        with pytest.raises(UnsupportedSizeError):
            automorphism_count(Graph.empty(17))

    def test_strongly_regular_pair(self):
        # rook and Shrikhande are both (16,6,2,2)-strongly-regular and
        # refinement alone cannot split them; exactness means the codes,
        # the isomorphism test, and the group orders must all tell them apart
        def rook():
            idx = lambda i, j: 4 * i + j
            edges = []
            for i in range(4):
                for j in range(4):
                    edges += [(idx(i, j), idx(i, jj)) for jj in range(j + 1, 4)]
                    edges += [(idx(i, j), idx(ii, j)) for ii in range(i + 1, 4)]
            return Graph.from_edges(16, edges)

        def shrikhande():
            idx = lambda a, b: 4 * a + b
            conn = [(1, 0), (3, 0), (0, 1), (0, 3), (1, 1), (3, 3)]
            edges = set()
            for a in range(4):
                for b in range(4):
                    for da, db in conn:
                        u = idx(a, b)
                        v = idx((a + da) % 4, (b + db) % 4)
                        edges.add((min(u, v), max(u, v)))
            return Graph.from_edges(16, sorted(edges))

        r, s = rook(), shrikhande()
        assert sorted(r.degrees()) == sorted(s.degrees())
        assert not is_isomorphic(r, s)
        assert automorphism_count(r) == 1152
        assert automorphism_count(s) == 192
        rng = random.Random(99)
        for g in (r, s):
            p = list(range(16))
            rng.shuffle(p)
            assert canonical_key(g) == canonical_key(relabel(g, p))

    def test_petersen_group_order(self):
        edges = [(i, (i + 1) % 5) for i in range(5)]
        edges += [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
        edges += [(i, 5 + i) for i in range(5)]
        assert automorphism_count(Graph.from_edges(10, edges)) == 120


class TestConstructionHelpers:
    def test_disjoint_union(self):
        g = disjoint_union(Graph.complete(2), Graph.complete(2))
        assert g.edge_count() == 2 and g.n == 4
        assert not g.has_edge(0, 2)

    def test_validation(self):
        with pytest.raises(InputError):
            Graph(2, (1, 0))  # asymmetric
        with pytest.raises(InputError):
            Graph(2, (2, 0))  # self loop at 1? bit 1 of row 0 is vertex 1: fine
        with pytest.raises(InputError):
            Graph(1, (1,))  # self loop
        with pytest.raises(InputError):
            Graph(2, (4, 0))  # bit above n
