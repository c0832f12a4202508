"""Taming sets and the happy / detectable / obscure vertex classes.

A set V0 tames a graph when everything outside V0 is a clique or a stable
set and each V0 vertex attaches to all of it or none of it; equivalently,
every permutation fixing V0 pointwise is an automorphism.  The classifiers
below are exact; the obscurity oracle is the definition-based exhaustive
search (two deleted vertices plus an induced-subgraph match against the
non-isolated core) and exists to cross-check the cheap characterization.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from .errors import InputError, PreconditionError, UnsupportedSizeError
from .graphs import (
    Graph,
    _induced_rows,
    canonical_key,
    induced_subgraph,
    non_isolated_core,
)

TAMING_EXACT_LIMIT = 16

OBSCURE_ORACLE_LIMIT = 10


@dataclass(frozen=True)
class TameWitness:
    v0: frozenset[int]
    valid: bool
    source: str  # "closure", "exact_min", or "user"


@dataclass(frozen=True)
class VertexClassification:
    happy: frozenset[int]
    degree_one: frozenset[int]
    detectable: frozenset[int]
    obscure: frozenset[int]


def _vertex_set_mask(h: Graph, vs) -> int:
    mask = 0
    for v in vs:
        if not 0 <= v < h.n:
            raise InputError(f"vertex {v} out of range for n={h.n}")
        mask |= 1 << v
    return mask


def _mask_tames(h: Graph, v0_mask: int) -> bool:
    rest = ((1 << h.n) - 1) ^ v0_mask
    clique = True
    stable = True
    r = rest
    while r:
        low = r & -r
        v = low.bit_length() - 1
        r ^= low
        inside = h.adj[v] & rest
        if inside:
            stable = False
        if inside != rest ^ low:
            clique = False
        if not (clique or stable):
            return False
    m = v0_mask
    while m:
        low = m & -m
        v = low.bit_length() - 1
        m ^= low
        inside = h.adj[v] & rest
        if inside != 0 and inside != rest:
            return False
    return True


def is_tamed_by(h: Graph, v0) -> bool:
    """True iff V(h) minus v0 is a clique or stable set and every v0 vertex
    attaches to all of it or none of it."""
    return _mask_tames(h, _vertex_set_mask(h, v0))


def tame_witness_from(h: Graph, s) -> TameWitness:
    """Close s into a taming set by adding the partially-attached and the
    outside-connected vertices; the result always validates."""
    s_mask = _vertex_set_mask(h, s)
    rest = ((1 << h.n) - 1) ^ s_mask
    v0_mask = s_mask
    r = rest
    while r:
        low = r & -r
        v = low.bit_length() - 1
        r ^= low
        if (h.adj[v] & s_mask) != s_mask:
            v0_mask |= low  # attached to only part of s
        if h.adj[v] & rest:
            v0_mask |= low  # has a neighbor outside s
    v0 = frozenset(v for v in range(h.n) if (v0_mask >> v) & 1)
    valid = _mask_tames(h, v0_mask)
    if not valid:
        raise AssertionError("closure witness failed to tame; implementation bug")
    return TameWitness(v0=v0, valid=True, source="closure")


def minimal_taming_number(h: Graph) -> tuple[int, TameWitness]:
    """Smallest taming-set size with a witness, by exhaustive search over the
    complements W = V \\ V0 (W must be a clique or stable set with every
    outside vertex attached to all or none of it)."""
    if h.n > TAMING_EXACT_LIMIT:
        raise UnsupportedSizeError(
            f"minimal_taming_number supports n <= {TAMING_EXACT_LIMIT}, got {h.n}"
        )
    n = h.n
    full = (1 << n) - 1
    best_size = -1
    best_w = 0
    for w in range(full + 1):
        size = w.bit_count()
        if size < best_size or (size == best_size and w >= best_w):
            continue
        if _mask_tames(h, full ^ w):
            best_size, best_w = size, w
    v0_mask = full ^ best_w
    v0 = frozenset(v for v in range(n) if (v0_mask >> v) & 1)
    return n - best_size, TameWitness(v0=v0, valid=True, source="exact_min")


def is_d_tame(h: Graph, d: int) -> bool:
    number, _ = minimal_taming_number(h)
    return number <= d


def classify_vertices(h: Graph) -> VertexClassification:
    """Happy = non-isolated with all neighbors of degree >= 2; detectable =
    happy or degree one; obscure = the remaining non-isolated vertices.
    Isolated vertices belong to none of the classes."""
    degs = h.degrees()
    happy = set()
    degree_one = set()
    for v in range(h.n):
        if degs[v] == 0:
            continue
        if degs[v] == 1:
            degree_one.add(v)
        row = h.adj[v]
        all_ge2 = True
        while row:
            low = row & -row
            if degs[low.bit_length() - 1] < 2:
                all_ge2 = False
                break
            row ^= low
        if all_ge2:
            happy.add(v)
    detectable = happy | degree_one
    obscure = {v for v in range(h.n) if degs[v] > 0} - detectable
    return VertexClassification(
        happy=frozenset(happy),
        degree_one=frozenset(degree_one),
        detectable=frozenset(detectable),
        obscure=frozenset(obscure),
    )


def is_obscure_oracle(h: Graph, v: int) -> bool:
    """Definition-based obscurity test by exhaustive search.

    v (non-isolated) is obscure when some pair of distinct non-isolated
    vertices v1, v2 with v2 still non-isolated after deleting v1 leaves an
    induced subgraph of h - v1 - v2 isomorphic to the non-isolated core of
    h - v.  Only subsets of exactly the core's size can match, which prunes
    the subset search.
    """
    if not 0 <= v < h.n:
        raise InputError(f"vertex {v} out of range for n={h.n}")
    if h.adj[v] == 0:
        raise PreconditionError("obscurity is defined for non-isolated vertices only")
    if h.n > OBSCURE_ORACLE_LIMIT:
        raise UnsupportedSizeError(
            f"is_obscure_oracle supports n <= {OBSCURE_ORACLE_LIMIT}, got {h.n}"
        )
    core = non_isolated_core(induced_subgraph(h, [u for u in range(h.n) if u != v]))
    core_key = canonical_key(core)
    core_degs = sorted(core.degrees())
    msize = core.n
    non_isolated = [u for u in range(h.n) if h.adj[u]]
    for v1 in non_isolated:
        for v2 in non_isolated:
            if v2 == v1:
                continue
            if h.adj[v2] & ~(1 << v1) == 0:
                continue  # v2 isolated once v1 is removed
            rest = [u for u in range(h.n) if u != v1 and u != v2]
            if len(rest) < msize:
                continue
            for subset in combinations(rest, msize):
                rows = _induced_rows(h.adj, subset)
                if sorted(r.bit_count() for r in rows) != core_degs:
                    continue
                if canonical_key(Graph(msize, rows)) == core_key:
                    return True
    return False
