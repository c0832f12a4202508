"""Named invariant suites behind the `verify` CLI command.

Each check returns its name, a pass flag, and a short detail string; on
failure the detail carries a graph6 counterexample whenever one exists.
These are the always-on deterministic checks; the pytest suite runs them
too, alongside the per-module unit tests.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction

from .bounds import phi
from .brightness import (
    brightness_exact,
    brightness_lower_bounds,
    brightness_mc,
)
from .coloring import run_trial, simulate
from .graphs import (
    Graph,
    automorphism_count,
    complement,
    to_graph6,
    with_isolated,
)
from .proba import (
    HypergeomParams,
    binom_point,
    binom_point_max_bound,
    hypergeom_point,
    lambda_split,
    multi_hypergeom_joint,
    poly_exp_check,
)
from .search import _classes
from .structure import (
    classify_vertices,
    is_obscure_oracle,
    minimal_taming_number,
    tame_witness_from,
)

E = math.e


@dataclass(frozen=True)
class CheckResult:
    name: str
    ok: bool
    detail: str


def _random_graph(rng: random.Random, n: int, p: float = 0.5) -> Graph:
    edges = [
        (i, j) for i in range(n) for j in range(i + 1, n) if rng.random() < p
    ]
    return Graph.from_edges(n, edges)


# -- appendix suite --------------------------------------------------------


def _check_hypergeom_normalization() -> CheckResult:
    rng = random.Random(20240)
    for _ in range(200):
        n = rng.randint(1, 60)
        r = rng.randint(0, n)
        k = rng.randint(0, n)
        total = sum(
            hypergeom_point(HypergeomParams(n, r, k, s)) for s in range(k + 1)
        )
        if total != 1:
            return CheckResult(
                "hypergeom_pmf_sums_to_one", False, f"n={n} r={r} k={k} sum={total}"
            )
    return CheckResult("hypergeom_pmf_sums_to_one", True, "200 random parameter sets")


def _check_hypergeom_binomial_cap() -> CheckResult:
    rng = random.Random(20241)
    for _ in range(40):
        k = rng.randint(2, 12)
        n = 10**4 * k
        r = rng.randint(1, n - 1)
        s = rng.randint(1, k - 1)
        pmf = hypergeom_point(HypergeomParams(n, r, k, s))
        cap = binom_point_max_bound(k, s)
        if float(pmf) > float(cap) + 0.01:
            return CheckResult(
                "hypergeom_capped_by_binomial_mode",
                False,
                f"n={n} r={r} k={k} s={s}: {float(pmf)} > {float(cap)}+0.01",
            )
    return CheckResult(
        "hypergeom_capped_by_binomial_mode", True, "40 random large-population sets"
    )


def _check_multi_joint_cap() -> CheckResult:
    rng = random.Random(20242)
    n, k = 10**4, 100
    for s in (1, 2):
        for f in (1, 2, 3):
            for _ in range(5):
                parts = tuple(rng.randint(1, n // (2 * f)) for _ in range(f))
                pmf = multi_hypergeom_joint(n, k, parts, s)
                if float(pmf) > phi(s) ** f + 0.05:
                    return CheckResult(
                        "joint_hits_capped_by_poisson_mass",
                        False,
                        f"s={s} f={f} parts={parts}: {float(pmf)}",
                    )
    return CheckResult(
        "joint_hits_capped_by_poisson_mass", True, "s in {1,2}, f in {1,2,3}"
    )


def _check_phi_decreasing() -> CheckResult:
    ok = all(phi(s) > phi(s + 1) for s in range(1, 100)) and phi(100) < 0.04
    return CheckResult(
        "poisson_mass_strictly_decreasing", ok, f"phi(100)={phi(100):.6f}"
    )


def _check_phi_binomial_limit() -> CheckResult:
    for s in (1, 2, 3):
        val = float(binom_point(10**4, Fraction(s, 10**4), s))
        if abs(val - phi(s)) >= 1e-3:
            return CheckResult(
                "poisson_mass_is_binomial_limit", False, f"s={s}: {val} vs {phi(s)}"
            )
    return CheckResult("poisson_mass_is_binomial_limit", True, "s in {1,2,3} at k=10^4")


def _check_poly_exp_grid() -> CheckResult:
    for s in range(1, 21):
        for i in range(501):
            x = i / 10
            lhs, rhs, ok = poly_exp_check(s, x)
            if not ok:
                return CheckResult(
                    "poly_times_exp_capped", False, f"s={s} x={x}: {lhs} > {rhs}"
                )
    return CheckResult("poly_times_exp_capped", True, "grid s<=20, x<=50")


def _check_lambda_grid() -> CheckResult:
    for i in range(101):
        for j in range(101):
            y, z = i / 20, j / 20
            ls = lambda_split(y, z)  # raises loudly if the interval is empty
            if not (0 <= ls.lam <= 1 and ls.lo <= ls.lam <= ls.hi + 1e-12):
                return CheckResult(
                    "lambda_interval_nonempty", False, f"y={y} z={z}: {ls}"
                )
    special = lambda_split(2 / E, 1 - 2 / E)
    ok = abs(special.lo - 1 / E) < 1e-12 and abs(special.hi - 2 / E) < 1e-12
    return CheckResult(
        "lambda_interval_nonempty",
        ok,
        f"grid y,z<=5 plus interval [{special.lo:.6f},{special.hi:.6f}] at the minimizer",
    )


def _check_binomial_mode_sweep() -> CheckResult:
    for k, s in ((4, 2), (7, 3), (12, 5), (9, 1)):
        cap = binom_point_max_bound(k, s)
        for i in range(21):
            p = Fraction(i, 20)
            if binom_point(k, p, s) > cap:
                return CheckResult(
                    "binomial_mode_is_maximum", False, f"k={k} s={s} p={p}"
                )
    return CheckResult("binomial_mode_is_maximum", True, "p grid step 1/20, exact")


def appendix_suite() -> list[CheckResult]:
    return [
        _check_hypergeom_normalization(),
        _check_hypergeom_binomial_cap(),
        _check_multi_joint_cap(),
        _check_phi_decreasing(),
        _check_phi_binomial_limit(),
        _check_poly_exp_grid(),
        _check_lambda_grid(),
        _check_binomial_mode_sweep(),
    ]


# -- structure suite -------------------------------------------------------


def _check_detectable_characterization(max_n: int) -> CheckResult:
    checks = 0
    for n in range(1, max_n + 1):
        for h in _classes(n):
            obscure = classify_vertices(h).obscure
            for v in range(n):
                if h.adj[v] == 0:
                    continue
                checks += 1
                if is_obscure_oracle(h, v) != (v in obscure):
                    return CheckResult(
                        "detectable_characterization",
                        False,
                        f"graph {to_graph6(h)} vertex {v}",
                    )
    return CheckResult(
        "detectable_characterization",
        True,
        f"{checks} vertex checks over all graphs with n <= {max_n}",
    )


def _check_happy_floor(max_n: int) -> CheckResult:
    for n in range(1, max_n + 1):
        for h in _classes(n):
            prof_m2 = sum(1 for v in range(n) if h.adj[v].bit_count() >= 2)
            if len(classify_vertices(h).happy) < prof_m2:
                return CheckResult("happy_count_floor", False, to_graph6(h))
    return CheckResult("happy_count_floor", True, f"all graphs with n <= {max_n}")


def _check_detectable_deletion(max_n: int) -> CheckResult:
    for n in range(2, max_n + 1):
        for h in _classes(n):
            if h.edge_count() < 2:
                continue
            for v in classify_vertices(h).detectable:
                if h.edge_count() - h.adj[v].bit_count() < 1:
                    return CheckResult(
                        "detectable_deletion_keeps_an_edge",
                        False,
                        f"graph {to_graph6(h)} vertex {v}",
                    )
    return CheckResult(
        "detectable_deletion_keeps_an_edge", True, f"all graphs with n <= {max_n}"
    )


def _check_closure_witness() -> CheckResult:
    rng = random.Random(4111)
    for _ in range(1000):
        n = rng.randint(1, 12)
        h = _random_graph(rng, n, rng.uniform(0.15, 0.85))
        s = {v for v in range(n) if rng.random() < 0.4}
        w = tame_witness_from(h, s)
        if not w.valid:
            return CheckResult(
                "closure_witness_always_tames", False, f"{to_graph6(h)} s={sorted(s)}"
            )
    return CheckResult("closure_witness_always_tames", True, "1000 random (h, s) pairs")


def _check_aut_vs_taming(max_n: int) -> CheckResult:
    for n in range(1, max_n + 1):
        for h in _classes(n):
            d, _ = minimal_taming_number(h)
            if automorphism_count(h) < math.factorial(n - d):
                return CheckResult("aut_floor_from_taming", False, to_graph6(h))
    return CheckResult("aut_floor_from_taming", True, f"all graphs with n <= {max_n}")


def _check_taming_complement(max_n: int) -> CheckResult:
    for n in range(1, max_n + 1):
        for h in _classes(n):
            if minimal_taming_number(h)[0] != minimal_taming_number(complement(h))[0]:
                return CheckResult("taming_complement_invariant", False, to_graph6(h))
    return CheckResult(
        "taming_complement_invariant", True, f"all graphs with n <= {max_n}"
    )


def structure_suite(max_n: int = 7) -> list[CheckResult]:
    return [
        _check_detectable_characterization(max_n),
        _check_happy_floor(max_n),
        _check_detectable_deletion(max_n),
        _check_closure_witness(),
        _check_aut_vs_taming(min(max_n, 7)),
        _check_taming_complement(min(max_n, 7)),
    ]


# -- brightness suite ------------------------------------------------------


def _core_family(max_m: int):
    for m in range(2, max_m + 1):
        for h in _classes(m):
            if h.isolated_mask() or h.edge_count() < 2:
                continue
            yield h


def _check_brightness_floor(max_m: int) -> CheckResult:
    floor = Fraction(1, 12)
    count = 0
    for h in _core_family(max_m):
        count += 1
        if brightness_exact(h) < floor:
            return CheckResult("brightness_floor_one_twelfth", False, to_graph6(h))
    return CheckResult(
        "brightness_floor_one_twelfth", True, f"{count} cores with m <= {max_m}"
    )


def _check_brightness_bounds(max_m: int) -> CheckResult:
    for h in _core_family(max_m):
        nu = brightness_exact(h)
        b = brightness_lower_bounds(h)
        if b.lb_m2 > nu or b.lb_m1 > nu or b.special_m1 > nu:
            return CheckResult("closed_form_bounds_below_exact", False, to_graph6(h))
    return CheckResult(
        "closed_form_bounds_below_exact", True, f"all cores with m <= {max_m}"
    )


def _check_all_detectable(max_m: int) -> CheckResult:
    for h in _core_family(max_m):
        if len(classify_vertices(h).detectable) == h.n and brightness_exact(h) != 1:
            return CheckResult("all_detectable_gives_one", False, to_graph6(h))
    return CheckResult("all_detectable_gives_one", True, f"all cores with m <= {max_m}")


def _check_isolated_invariance() -> CheckResult:
    rng = random.Random(555)
    for _ in range(30):
        m = rng.randint(2, 6)
        h = _random_graph(rng, m, 0.5)
        base = brightness_exact(h)
        for extra in (1, 3):
            if brightness_exact(with_isolated(h, extra)) != base:
                return CheckResult(
                    "brightness_ignores_isolated_vertices", False, to_graph6(h)
                )
    return CheckResult(
        "brightness_ignores_isolated_vertices", True, "30 random cores, +1/+3 isolated"
    )


def _check_named_brightness() -> CheckResult:
    p3 = Graph.path(3)
    two_k2 = Graph.from_edges(4, [(0, 1), (2, 3)])
    ok = (
        brightness_exact(p3) == Fraction(1, 3)
        and brightness_exact(two_k2) == 1
        and brightness_exact(Graph.complete(3)) == 1
    )
    return CheckResult("named_brightness_values", ok, "P3=1/3, 2K2=1, K3=1")


def _check_mc_coverage() -> CheckResult:
    p3 = Graph.path(3)
    truth = Fraction(1, 3)
    hits = 0
    for seed in range(100):
        est = brightness_mc(p3, 2000, seed)
        if est.ci_low <= float(truth) <= est.ci_high:
            hits += 1
    return CheckResult(
        "mc_interval_coverage", hits >= 90, f"{hits}/100 seeded intervals cover 1/3"
    )


def brightness_suite(max_m: int = 7) -> list[CheckResult]:
    return [
        _check_brightness_floor(max_m),
        _check_brightness_bounds(max_m),
        _check_all_detectable(max_m),
        _check_isolated_invariance(),
        _check_named_brightness(),
        _check_mc_coverage(),
    ]


# -- coloring suite --------------------------------------------------------


def _check_coloring_inclusions() -> CheckResult:
    g = with_isolated(Graph.path(3), 7)
    h = with_isolated(Graph.path(3), 2)
    s = simulate(g, h, 20000, seed=7)
    ok = s.match_outside_signatures == 0 and s.isolated_nonblack_violations == 0
    return CheckResult(
        "match_inside_signature_union",
        ok,
        f"violations={s.match_outside_signatures},"
        f" isolated={s.isolated_nonblack_violations} over {s.trials} trials",
    )


def _check_match_trace_shape() -> CheckResult:
    g = with_isolated(Graph.path(3), 7)
    h = with_isolated(Graph.path(3), 2)
    k = h.n
    seen = 0
    for seed in range(4000):
        tr = run_trial(g, h, seed=seed)
        if not tr.full_match or tr.truncated:
            continue
        seen += 1
        if tr.green_count + tr.red_count > 2 or tr.stop_index not in (k - 1, k):
            return CheckResult(
                "match_trace_shape",
                False,
                f"seed={seed} Y={tr.green_count} Z={tr.red_count} L={tr.stop_index}",
            )
    return CheckResult(
        "match_trace_shape", True, f"{seen} matching traces: Y+Z <= 2, L in {{k-1, k}}"
    )


def _check_conditional_consecutive() -> CheckResult:
    g = with_isolated(Graph.path(3), 27)
    h = with_isolated(Graph.path(3), 7)
    s = simulate(g, h, 20000, seed=11)
    ne = s.count_full_match
    if ne == 0:
        return CheckResult("consecutive_conditional_bound", True, "no matches drawn")
    p = s.count_consecutive_and_match / ne
    se = math.sqrt(max(p * (1 - p), 1e-12) / ne)
    bound = 3 * 3 / h.n + 4 * se
    return CheckResult(
        "consecutive_conditional_bound",
        p <= bound,
        f"P[consecutive|match]={p:.4f} <= {bound:.4f} ({ne} matches)",
    )


def _check_signature_caps() -> CheckResult:
    for extra_host, extra_pat, seed in ((7, 2, 3), (17, 5, 4)):
        g = with_isolated(Graph.path(3), extra_host)
        h = with_isolated(Graph.path(3), extra_pat)
        s = simulate(g, h, 20000, seed=seed)
        p1 = s.freq(s.count_two_green_no_consecutive)
        se1 = math.sqrt(max(p1 * (1 - p1), 1e-12) / s.trials)
        p2 = s.freq(s.count_one_red)
        se2 = math.sqrt(max(p2 * (1 - p2), 1e-12) / s.trials)
        if p1 > 2 / E**2 + 4 * se1 or p2 > 1 / E + 4 * se2:
            return CheckResult(
                "signature_probability_caps",
                False,
                f"host+{extra_host}: A1&!B={p1:.4f}, A2={p2:.4f}",
            )
    return CheckResult(
        "signature_probability_caps", True, "two host sizes, 20000 trials each"
    )


def coloring_suite() -> list[CheckResult]:
    return [
        _check_coloring_inclusions(),
        _check_match_trace_shape(),
        _check_conditional_consecutive(),
        _check_signature_caps(),
    ]


SUITES = {
    "appendix": lambda: appendix_suite(),
    "structure": lambda: structure_suite(),
    "brightness": lambda: brightness_suite(),
    "coloring": lambda: coloring_suite(),
}


def run_suite(name: str) -> list[CheckResult]:
    if name == "all":
        results = []
        for key in ("appendix", "structure", "brightness", "coloring"):
            results.extend(SUITES[key]())
        return results
    if name not in SUITES:
        raise ValueError(f"unknown suite {name!r}")
    return SUITES[name]()
