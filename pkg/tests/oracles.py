"""Independent reference implementations used as test oracles.

Everything here is deliberately brute force and structured differently
from the package code: permutation scans instead of canonical codes, edge
sets instead of bitmasks, and a separate graph6 decoder that indexes the
bit stream arithmetically.  Oracles must stay independent of the paths
they check.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations, permutations
from math import comb, factorial

from inducibility.graphs import Graph


def ref_decode_graph6(line: str) -> tuple[int, set[frozenset[int]]]:
    """Reference graph6 decoder returning (n, edge set)."""
    data = line.strip().encode("ascii")
    if data[0] == 126:
        n = ((data[1] - 63) << 12) | ((data[2] - 63) << 6) | (data[3] - 63)
        body = data[4:]
    else:
        n = data[0] - 63
        body = data[1:]
    bits = []
    for byte in body:
        val = byte - 63
        bits.extend((val >> shift) & 1 for shift in range(5, -1, -1))
    edges = set()
    idx = 0
    for j in range(1, n):
        for i in range(j):
            if bits[idx]:
                edges.add(frozenset((i, j)))
            idx += 1
    return n, edges


def edge_set(g: Graph) -> set[frozenset[int]]:
    return {frozenset(e) for e in g.edges()}


def brute_isomorphic(g1: Graph, g2: Graph) -> bool:
    if g1.n != g2.n:
        return False
    e2 = edge_set(g2)
    for p in permutations(range(g1.n)):
        if {frozenset((p[u], p[v])) for u, v in g1.edges()} == e2:
            return True
    return False


def brute_automorphisms(g: Graph) -> int:
    e = edge_set(g)
    return sum(
        1
        for p in permutations(range(g.n))
        if {frozenset((p[u], p[v])) for u, v in g.edges()} == e
    )


def brute_count_induced(h: Graph, g: Graph) -> int:
    count = 0
    for verts in combinations(range(g.n), h.n):
        pos = {v: i for i, v in enumerate(verts)}
        sub_edges = {
            frozenset((pos[u], pos[v]))
            for u, v in combinations(verts, 2)
            if g.has_edge(u, v)
        }
        sub = Graph.from_edges(h.n, [tuple(e) for e in sub_edges])
        if brute_isomorphic(sub, h):
            count += 1
    return count


def brute_injective_maps(h: Graph, g: Graph) -> int:
    """Injective maps preserving both adjacency and non-adjacency."""
    count = 0
    for image in permutations(range(g.n), h.n):
        ok = True
        for u in range(h.n):
            for v in range(u + 1, h.n):
                if h.has_edge(u, v) != g.has_edge(image[u], image[v]):
                    ok = False
                    break
            if not ok:
                break
        if ok:
            count += 1
    return count


def brute_ind_over_labeled(h: Graph, n: int) -> Fraction:
    """Max induced density over all labeled n-vertex hosts (no canonical
    machinery anywhere)."""
    pairs = list(combinations(range(n), 2))
    best = 0
    for bits in range(1 << len(pairs)):
        g = Graph.from_edges(
            n, [pairs[i] for i in range(len(pairs)) if (bits >> i) & 1]
        )
        best = max(best, brute_count_induced(h, g))
    return Fraction(best, comb(n, h.n))


def brute_detectable_last_two(g: Graph, order: list[int], detectable: set[int]) -> bool:
    """Direct reading of the bright-labeling definition."""
    positive = []
    for i, v in enumerate(order):
        earlier = order[:i]
        if any(g.has_edge(v, u) for u in earlier):
            positive.append(v)
    if len(positive) < 2:
        return False
    return positive[-1] in detectable and positive[-2] in detectable


def brute_brightness(g: Graph, detectable: set[int]) -> Fraction:
    """Brightness over orderings of the full vertex set."""
    count = 0
    for order in permutations(range(g.n)):
        if brute_detectable_last_two(g, list(order), detectable):
            count += 1
    return Fraction(count, factorial(g.n))


def brute_is_tamed_by_permutations(h: Graph, v0: set[int]) -> bool:
    """The permutation form: every permutation fixing v0 pointwise must be
    an automorphism."""
    free = [v for v in range(h.n) if v not in v0]
    e = edge_set(h)
    for perm in permutations(free):
        mapping = {v: v for v in v0}
        mapping.update(dict(zip(free, perm)))
        if {frozenset((mapping[u], mapping[v])) for u, v in h.edges()} != e:
            return False
    return True


def all_labeled_graphs(n: int):
    pairs = list(combinations(range(n), 2))
    for bits in range(1 << len(pairs)):
        yield Graph.from_edges(
            n, [pairs[i] for i in range(len(pairs)) if (bits >> i) & 1]
        )
