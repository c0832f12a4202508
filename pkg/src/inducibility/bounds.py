"""Closed-form upper-bound formulas for induced densities, the degree-gap
finder that feeds them, and a selector that picks the applicable regime for
a given pattern graph.

The recurring quantity is phi(s) = s^s / (s! e^s), the point mass of a
Poisson(s) variable at its mean; it caps the probability that a sampled
vertex set hits a structured part in exactly s elements.  Vanishing
asymptotic correction terms are never folded into numbers: reports either
carry a finite formula value (the finite part only) or are flagged
asymptotic-only.

All transcendental evaluation happens in the log domain (s^s / s!
overflows doubles near s = 150) with relative error well inside 1e-12.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any

from .brightness import BRIGHTNESS_EXACT_LIMIT, brightness_exact, brightness_lower_bounds
from .errors import InputError, InternalCheckError, PreconditionError
from .graphs import Graph, canonical_key, complement, degree_profile, induced_subgraph, non_isolated_core

E = math.e

def _as_fraction(x: float | Fraction | int) -> Fraction:
    """Exact rational view of a parameter.

    Floats are read as the nearest rational with denominator at most 10^12,
    so 0.01 means 1/100 rather than its binary approximation; thresholds
    and interval scans then run exactly and deterministically.
    """
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    return Fraction(x).limit_denominator(10**12)


REGIME_HIGH_DEGREE_S = "high_degree_s"
REGIME_HIGH_DEGREE_ST = "high_degree_st"
REGIME_UNIFORM = "uniform_low_degree"
REGIME_NON_UNIFORM = "non_uniform"
REGIME_SPARSE = "sparse_core"
REGIME_DENSE = "dense_external"
REGIME_DEGENERATE = "complement_first"


def phi(s: int) -> float:
    """s^s / (s! e^s), evaluated as exp(s ln s - ln s! - s)."""
    if s < 1:
        raise PreconditionError("phi requires s >= 1")
    return math.exp(s * math.log(s) - math.lgamma(s + 1) - s)


def high_degree_bound(s: int, ind_reduced: float = 1.0) -> float:
    """phi(s) scaled by a density bound for the graph with the s high-degree
    vertices removed (finite part only)."""
    if s < 1:
        raise InputError("s must be >= 1")
    if not 0 <= ind_reduced <= 1:
        raise InputError("ind_reduced must lie in [0, 1]")
    return phi(s) * ind_reduced

def high_degree_pair_bound(s: int, t: int) -> float:
    """phi(s) * phi(t): applies when t vertices outside the high-degree set
    are only partially attached to it."""
    if s < 1 or t < 1:
        raise InputError("s and t must be >= 1")
    return phi(s) * phi(t)


def uniform_degree_bound(tau: int, beta: float, eps: float) -> tuple[int, float]:
    """(f, 2 (phi(tau)/beta)^f) with f = floor(sqrt(beta / (tau eps))).

    f = 0 yields the vacuous value 2.
    """
    if tau < 1:
        raise InputError("tau must be >= 1")
    if not 0 < beta <= 1:
        raise InputError("beta must be in (0, 1]")
    if eps <= 0:
        raise InputError("eps must be positive")
    ratio = _as_fraction(beta) / (tau * _as_fraction(eps))
    f = math.isqrt(ratio.numerator // ratio.denominator)
    return f, 2.0 * (phi(tau) / beta) ** f


@dataclass(frozen=True)
class DegreeGapReport:
    a: float
    b: float
    delta: float
    s: int
    S: frozenset[int]


def find_degree_gap(h: Graph, eps: float | Fraction, C: float | Fraction) -> DegreeGapReport:
    """First degree-free interval (a*k, b*k) of width delta*k with b <= eps.

    delta = eps^2 / (8C) makes the combined interval mass exceed twice the
    edge budget, so a gap must exist whenever l <= C*k and the maximum
    degree reaches eps*k; the scan runs in exact rational arithmetic.
    """
    k = h.n
    prof = degree_profile(h)
    eps_f = _as_fraction(eps)
    c_f = _as_fraction(C)
    if c_f <= 0 or eps_f <= 0:
        raise InputError("eps and C must be positive")
    if prof.edge_count > c_f * k:
        raise PreconditionError(f"edge count {prof.edge_count} exceeds C*k = {float(c_f * k)}")
    if prof.max_degree < eps_f * k:
        raise PreconditionError(
            f"max degree {prof.max_degree} below eps*k = {float(eps_f * k)}"
        )
    delta = eps_f * eps_f / (8 * c_f)
    degrees = set(prof.degrees)
    i = 1
    while delta * (i + 1) <= eps_f:
        lo = delta * i * k
        hi = delta * (i + 1) * k
        if not any(lo < d < hi for d in degrees):
            a = delta * i
            b = delta * (i + 1)
            threshold = b * k
            S = frozenset(v for v in range(k) if h.adj[v].bit_count() >= threshold)
            s = len(S)
            if not 1 <= s <= 2 * c_f / delta:
                raise InternalCheckError(f"gap size s={s} outside [1, 2C/delta]")
            if s * b * k > 2 * prof.edge_count:
                raise InternalCheckError("s*b*k exceeds the degree sum")
            return DegreeGapReport(
                a=float(a), b=float(b), delta=float(delta), s=s, S=S
            )
        i += 1
    raise InternalCheckError(
        "no degree gap found although the preconditions hold; impossible"
    )


def high_degree_split(h: Graph, b: float | Fraction) -> tuple[frozenset[int], frozenset[int], Graph]:
    """S = vertices of degree >= b*k, T = outside vertices only partially
    attached to S, and the graph induced away from S."""
    b_f = _as_fraction(b)
    if not 0 < b_f < 1:
        raise InputError("b must be in (0, 1)")
    k = h.n
    threshold = b_f * k
    s_mask = 0
    for v in range(k):
        if h.adj[v].bit_count() >= threshold:
            s_mask |= 1 << v
    S = frozenset(v for v in range(k) if (s_mask >> v) & 1)
    T = frozenset(
        v
        for v in range(k)
        if not (s_mask >> v) & 1 and (h.adj[v] & s_mask) != s_mask
    )
    hprime = induced_subgraph(h, [v for v in range(k) if not (s_mask >> v) & 1])
    return S, T, hprime


def sparse_regime_bound(alpha: float, nu: float) -> float:
    """(2 + 3 e^2 alpha) / (2 + (e-2) nu) / e + 2 alpha."""
    if alpha < 0:
        raise InputError("alpha must be nonnegative")
    if not 0 <= nu <= 1:
        raise InputError("nu must lie in [0, 1]")
    return (2 + 3 * E * E * alpha) / (2 + (E - 2) * nu) / E + 2 * alpha


def find_sparse_alpha() -> tuple[float, float]:
    """Largest alpha (to 1e-9, by bisection) keeping the sparse bound below
    1/e at the 1/12 floor, plus the bound value at alpha/2."""
    target = 1 / E

    def ok(a: float) -> bool:
        return sparse_regime_bound(a, 1 / 12) < target

    lo, hi = 0.0, 1.0
    if not ok(lo):
        raise InternalCheckError("sparse bound already at 1/e for alpha = 0")
    while hi - lo > 1e-12:
        mid = (lo + hi) / 2
        if ok(mid):
            lo = mid
        else:
            hi = mid
    c = sparse_regime_bound(lo / 2, 1 / 12)
    return lo, c


def solve_epsilon(C: float, target: float | None = None) -> float:
    """Largest eps with 2 (2/e)^(sqrt(1/(8 C eps)) - 1) <= target
    (default target 2/e^2), found by bisection to 1e-12."""
    if C <= 0:
        raise InputError("C must be positive")
    goal = 2 / (E * E) if target is None else target
    if not 0 < goal < 2:
        raise InputError("target must be in (0, 2)")

    def value(eps: float) -> float:
        return 2 * (2 / E) ** (math.sqrt(1 / (8 * C * eps)) - 1)

    lo, hi = 1e-15, 1.0
    if value(lo) > goal:
        raise InputError("target unreachable even at eps = 1e-15")
    if value(hi) <= goal:
        return hi
    while hi - lo > 1e-12 * max(1.0, lo):
        mid = (lo + hi) / 2
        if value(mid) <= goal:
            lo = mid
        else:
            hi = mid
    return lo


def non_uniform_predicate(h: Graph, beta: float, C: float) -> bool:
    """Hypotheses of the vanishing-bound case: edge count at most C*k and
    every degree multiplicity at most beta*k (the conclusion itself is
    asymptotic and never evaluated to a number)."""
    if not 0 < beta < 1:
        raise InputError("beta must be in (0, 1)")
    k = h.n
    prof = degree_profile(h)
    if prof.edge_count > _as_fraction(C) * k:
        return False
    limit = _as_fraction(beta) * k
    return all(count <= limit for count in prof.k_hist.values())


@dataclass(frozen=True)
class SelectorParams:
    gamma: float | None = None
    C: float = 1.0
    eps: float | None = None
    alpha: float | None = None
    beta: float | None = None


@dataclass(frozen=True)
class BoundReport:
    regime: str
    finite_value: float | None
    asymptotic_only: bool
    inputs: dict[str, Any] = field(compare=False)
    citation: str

    def __post_init__(self) -> None:
        if (self.finite_value is not None) == self.asymptotic_only:
            raise InternalCheckError("finite_value present iff not asymptotic_only")


_SPARSE_ALPHA_CACHE: float | None = None


def _default_alpha() -> float:
    global _SPARSE_ALPHA_CACHE
    if _SPARSE_ALPHA_CACHE is None:
        _SPARSE_ALPHA_CACHE = find_sparse_alpha()[0]
    return _SPARSE_ALPHA_CACHE


def _nu_lower_bound(core: Graph) -> tuple[float, str]:
    """Deterministic lower bound on the bright-labeling probability: exact
    when the core is small, otherwise the best closed-form floor."""
    if core.n <= BRIGHTNESS_EXACT_LIMIT:
        return float(brightness_exact(core)), "exact"
    lbs = brightness_lower_bounds(core)
    best = max(lbs.lb_m2, lbs.lb_m1, lbs.special_m1, Fraction(1, 12))
    return float(best), "closed_form_floor"


def regime_selector(h: Graph, params: SelectorParams | None = None) -> BoundReport:
    """Classify h into the applicable bound regime after normalizing to the
    sparser of the graph and its complement (exact-half ties go to the
    lexicographically smaller canonical form, so the label is
    complement-invariant)."""
    p = params or SelectorParams()
    C = p.C
    eps = p.eps if p.eps is not None else solve_epsilon(C)
    alpha = p.alpha if p.alpha is not None else _default_alpha()

    k = h.n
    inputs: dict[str, Any] = {"C": C, "eps": eps, "alpha": alpha}
    if p.gamma is not None:
        inputs["gamma"] = p.gamma
    if k == 0:
        inputs["k"] = 0
        return BoundReport(
            regime=REGIME_DEGENERATE,
            finite_value=None,
            asymptotic_only=True,
            inputs=inputs,
            citation="degenerate: empty vertex set, no bound applies",
        )

    half = Fraction(k * (k - 1) // 2, 2)
    complemented = False
    work = h
    l = work.edge_count()
    if l > half:
        work = complement(work)
        complemented = True
    elif l == half and canonical_key(complement(work)) < canonical_key(work):
        work = complement(work)
        complemented = True
    prof = degree_profile(work)
    l = prof.edge_count
    m = prof.m
    inputs.update({"k": k, "edges": l, "m": m, "max_degree": prof.max_degree,
                   "complemented": complemented})

    if l < 2:
        return BoundReport(
            regime=REGIME_DEGENERATE,
            finite_value=None,
            asymptotic_only=True,
            inputs=inputs,
            citation="degenerate after complement normalization: fewer than 2"
            " edges, outside the bounds' hypotheses",
        )

    if l >= _as_fraction(C) * k:
        return BoundReport(
            regime=REGIME_DENSE,
            finite_value=None,
            asymptotic_only=True,
            inputs=inputs,
            citation="dense regime: externally known vanishing-density bound"
            " with a user-supplied constant (asymptotic only)",
        )

    beta = p.beta if p.beta is not None else max(1 - alpha / 2, 0.5)
    inputs["beta"] = beta

    def sparse_report() -> BoundReport:
        core = non_isolated_core(work)
        alpha_eff = m / k
        nu, nu_kind = _nu_lower_bound(core)
        value = sparse_regime_bound(alpha_eff, nu)
        inputs.update({"alpha_eff": alpha_eff, "nu": nu, "nu_kind": nu_kind})
        return BoundReport(
            regime=REGIME_SPARSE,
            finite_value=value,
            asymptotic_only=False,
            inputs=inputs,
            citation="sparse core: (2 + 3e^2 a)/(2 + (e-2) nu) / e + 2a at"
            " a = m/k with nu a bright-labeling probability bound",
        )

    if m <= alpha * k:
        return sparse_report()

    if prof.max_degree >= _as_fraction(eps) * k:
        gap = find_degree_gap(work, eps, C)
        # derive T straight from the exact S rather than re-thresholding
        # with a rounded b, which could flip boundary degrees
        s_mask = sum(1 << v for v in gap.S)
        T = frozenset(
            v
            for v in range(k)
            if not (s_mask >> v) & 1 and (work.adj[v] & s_mask) != s_mask
        )
        inputs.update({"gap_a": gap.a, "gap_b": gap.b, "gap_delta": gap.delta,
                       "s": gap.s, "t": len(T)})
        if T:
            return BoundReport(
                regime=REGIME_HIGH_DEGREE_ST,
                finite_value=high_degree_pair_bound(gap.s, len(T)),
                asymptotic_only=False,
                inputs=inputs,
                citation="high-degree split with partially attached outside"
                " vertices: phi(s) * phi(t)",
            )
        return BoundReport(
            regime=REGIME_HIGH_DEGREE_S,
            finite_value=high_degree_bound(gap.s, 1.0),
            asymptotic_only=False,
            inputs=inputs,
            citation="high-degree split: phi(s), taking the reduced graph's"
            " density bound at 1",
        )

    # low maximum degree: look for a dominating repeated positive degree
    tau_best = None
    for tau, count in sorted(prof.k_hist.items()):
        if tau >= 1 and count >= beta * k:
            tau_best = tau
            break
    if tau_best is not None:
        beta_actual = prof.k_hist[tau_best] / k
        f, value = uniform_degree_bound(tau_best, beta_actual, eps)
        inputs.update({"tau": tau_best, "beta_actual": beta_actual, "f": f})
        return BoundReport(
            regime=REGIME_UNIFORM,
            finite_value=value,
            asymptotic_only=False,
            inputs=inputs,
            citation="repeated low degree: 2 (phi(tau)/beta)^f with"
            " f = floor(sqrt(beta/(tau eps)))",
        )

    if all(count <= beta * k for count in prof.k_hist.values()):
        return BoundReport(
            regime=REGIME_NON_UNIFORM,
            finite_value=None,
            asymptotic_only=True,
            inputs=inputs,
            citation="no dominating degree multiplicity: vanishing bound"
            " (asymptotic only)",
        )

    # only the zero degree dominates, so the core is small relative to k
    return sparse_report()
