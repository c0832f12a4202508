"""Bright labelings and their probability.

A labeling v1..vk is bright when at least two positions carry a vertex with
a neighbor among the earlier ones and the vertices at the last two such
positions are both detectable.  Isolated vertices never contribute a
positive back-degree and do not change anyone else's, so only the relative
order of the non-isolated vertices matters; the exact enumerator therefore
ranges over orderings of the non-isolated core only, which keeps the count
at m! instead of k!.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction
from itertools import permutations
from typing import Sequence

from .errors import InputError, PreconditionError, UnsupportedSizeError
from .graphs import Graph, degree_profile
from .mc import MCEstimate, run_bernoulli_streams
from .structure import classify_vertices

BRIGHTNESS_EXACT_LIMIT = 10


def is_bright(h: Graph, labeling: Sequence[int]) -> bool:
    if sorted(labeling) != list(range(h.n)):
        raise InputError("labeling is not a permutation of the vertex set")
    detect_mask = 0
    for v in classify_vertices(h).detectable:
        detect_mask |= 1 << v
    return _bright_given_masks(h.adj, labeling, detect_mask)


def _bright_given_masks(adj: Sequence[int], order: Sequence[int], detect_mask: int) -> bool:
    seen = 0
    last = -1
    second_last = -1
    for v in order:
        if adj[v] & seen:
            second_last = last
            last = v
        seen |= 1 << v
    if second_last < 0:
        return False
    return bool((detect_mask >> last) & 1) and bool((detect_mask >> second_last) & 1)


def brightness_exact(h: Graph) -> Fraction:
    """Fraction of labelings that are bright, by enumerating core orderings."""
    core_verts = [v for v in range(h.n) if h.adj[v]]
    m = len(core_verts)
    if m > BRIGHTNESS_EXACT_LIMIT:
        raise UnsupportedSizeError(
            f"brightness_exact supports m <= {BRIGHTNESS_EXACT_LIMIT} non-isolated"
            f" vertices, got {m} (use brightness_mc)"
        )
    if m == 0:
        return Fraction(0)
    detect_mask = 0
    for v in classify_vertices(h).detectable:
        detect_mask |= 1 << v
    adj = h.adj
    bright = 0
    for order in permutations(core_verts):
        if _bright_given_masks(adj, order, detect_mask):
            bright += 1
    return Fraction(bright, math.factorial(m))


def brightness_mc(h: Graph, samples: int, seed: int) -> MCEstimate:
    """Estimate over uniformly random labelings, 95% Wilson interval."""
    if samples < 1:
        raise InputError("samples must be >= 1")
    detect_mask = 0
    for v in classify_vertices(h).detectable:
        detect_mask |= 1 << v
    verts = list(range(h.n))
    adj = h.adj

    def trial(rng: random.Random) -> bool:
        order = verts[:]
        rng.shuffle(order)
        return _bright_given_masks(adj, order, detect_mask)

    return run_bernoulli_streams(trial, samples, seed)


@dataclass(frozen=True)
class BrightnessBounds:
    lb_m2: Fraction
    lb_m1: Fraction
    special_m1: Fraction


def brightness_lower_bounds(h: Graph) -> BrightnessBounds:
    """Closed-form lower bounds from the counts of degree-1 and degree->=2
    vertices; the negative branch of the m1 expression is clamped to zero
    since a negative probability bound is vacuous."""
    prof = degree_profile(h)
    if prof.edge_count < 2:
        raise PreconditionError("lower bounds require at least 2 edges")
    m, m1, m2 = prof.m, prof.m1, prof.m_ge2
    pairs = Fraction(math.comb(m, 2))
    lb_m2 = Fraction(math.comb(m2, 2)) / pairs
    lb_m1 = max(Fraction(0), Fraction(m1 * (m1 - 2), 2) / pairs)
    special = Fraction(0)
    if m1 == 2:
        ones = [v for v in range(h.n) if h.adj[v].bit_count() == 1]
        u, v = ones
        if not h.has_edge(u, v):
            special = 1 / pairs
    return BrightnessBounds(lb_m2=lb_m2, lb_m1=lb_m1, special_m1=special)


@dataclass(frozen=True)
class BrightnessReport:
    exact: Fraction | None
    mc: MCEstimate | None
    lb_m2: Fraction
    lb_m1: Fraction
    special_m1: Fraction
    lb_const: Fraction  # 1/12 when the floor applies (>= 2 edges), else 0


def brightness_report(
    h: Graph, mc_samples: int = 100_000, seed: int = 0
) -> BrightnessReport:
    """Exact value when the core is small, Monte-Carlo otherwise, plus all
    closed-form lower bounds."""
    prof = degree_profile(h)
    if prof.edge_count < 2:
        raise PreconditionError("brightness report requires at least 2 edges")
    bounds = brightness_lower_bounds(h)
    exact: Fraction | None = None
    mc: MCEstimate | None = None
    if prof.m <= BRIGHTNESS_EXACT_LIMIT:
        exact = brightness_exact(h)
    else:
        mc = brightness_mc(h, mc_samples, seed)
    return BrightnessReport(
        exact=exact,
        mc=mc,
        lb_m2=bounds.lb_m2,
        lb_m1=bounds.lb_m1,
        special_m1=bounds.special_m1,
        lb_const=Fraction(1, 12),
    )
