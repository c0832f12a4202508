"""Exact and Monte-Carlo induced density of a pattern graph in a host graph.

The exact counter walks k-subsets in lexicographic order, filters by the
sorted degree sequence inside the subset, and only then pays for a
canonical-code comparison.  All densities are exact rationals.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

from .errors import InputError, UnsupportedSizeError
from .graphs import Graph, _induced_rows, canonical_key
from .mc import MCEstimate, run_bernoulli_streams

DEFAULT_SUBSET_BUDGET = 10**8


@dataclass(frozen=True)
class DensityResult:
    copies: int
    total: int
    density: Fraction


def _check_sizes(h: Graph, g: Graph) -> None:
    if h.n > g.n:
        raise InputError(f"pattern has {h.n} vertices but host only {g.n}")


def count_induced(h: Graph, g: Graph, budget: int | None = None) -> int:
    """Number of |V(h)|-subsets of g inducing a copy of h."""
    _check_sizes(h, g)
    k, n = h.n, g.n
    total = math.comb(n, k)
    limit = DEFAULT_SUBSET_BUDGET if budget is None else budget
    if total > limit:
        raise UnsupportedSizeError(
            f"C({n},{k}) = {total} subsets exceeds the work budget {limit}"
        )
    if k == 0:
        return 1
    target_key = canonical_key(h)
    target_degs = sorted(h.degrees())
    adj = g.adj
    copies = 0
    for verts in combinations(range(n), k):
        rows = _induced_rows(adj, verts)
        if sorted(r.bit_count() for r in rows) != target_degs:
            continue
        if canonical_key(Graph(k, rows)) == target_key:
            copies += 1
    return copies


def induced_density(h: Graph, g: Graph, budget: int | None = None) -> DensityResult:
    copies = count_induced(h, g, budget)
    total = math.comb(g.n, h.n)
    return DensityResult(copies=copies, total=total, density=Fraction(copies, total))


def sample_k_subset(rng: random.Random, n: int, k: int) -> tuple[int, ...]:
    """Uniform k-subset of range(n) by partial Fisher-Yates; O(k) extra memory."""
    ids = list(range(n))
    for i in range(k):
        j = rng.randrange(i, n)
        ids[i], ids[j] = ids[j], ids[i]
    return tuple(sorted(ids[:k]))


def induced_density_mc(
    h: Graph, g: Graph, samples: int, seed: int
) -> MCEstimate:
    """Monte-Carlo estimate of the induced density with a 95% Wilson interval."""
    _check_sizes(h, g)
    if samples < 1:
        raise InputError("samples must be >= 1")
    k, n = h.n, g.n
    target_key = canonical_key(h)
    adj = g.adj

    def trial(rng: random.Random) -> bool:
        verts = sample_k_subset(rng, n, k)
        return canonical_key(Graph(k, _induced_rows(adj, verts))) == target_key

    return run_bernoulli_streams(trial, samples, seed)
