"""Exact-rational probability kernels and inequality verifiers.

All point masses are computed with big-integer rationals so the test
suites can compare them without tolerances.  The two inequality helpers
(`poly_exp_check`, `lambda_split`) work in doubles at a documented 1e-12
tolerance; `lambda_split` aborts loudly if its interval ever came out
empty, since that would falsify the inequality it implements rather than
signal bad input.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import InputError

FLOAT_TOL = 1e-12


@dataclass(frozen=True)
class HypergeomParams:
    population: int
    successes: int
    sample: int
    hits: int

    def __post_init__(self) -> None:
        if min(self.population, self.successes, self.sample, self.hits) < 0:
            raise InputError("hypergeometric parameters must be nonnegative")
        if not self.hits <= self.sample <= self.population:
            raise InputError("need hits <= sample <= population")
        if self.successes > self.population:
            raise InputError("successes exceed population")


def binom_point(k: int, p: Fraction, s: int) -> Fraction:
    """Exact C(k,s) p^s (1-p)^(k-s)."""
    p = Fraction(p)
    if not 0 <= p <= 1:
        raise InputError("p must be in [0, 1]")
    if not 0 <= s <= k:
        raise InputError("need 0 <= s <= k")
    return math.comb(k, s) * p**s * (1 - p) ** (k - s)


def binom_point_max_bound(k: int, s: int) -> Fraction:
    """Value of the binomial point mass at its maximizing p = s/k."""
    if not 1 <= s <= k - 1:
        raise InputError("need 1 <= s <= k-1")
    return binom_point(k, Fraction(s, k), s)


def hypergeom_point(params: HypergeomParams) -> Fraction:
    """Exact C(r,s) C(n-r,k-s) / C(n,k); zero when infeasible."""
    n, r, k, s = params.population, params.successes, params.sample, params.hits
    if s > r or k - s > n - r:
        return Fraction(0)
    return Fraction(math.comb(r, s) * math.comb(n - r, k - s), math.comb(n, k))


def multi_hypergeom_joint(
    n: int, k: int, part_sizes: tuple[int, ...] | list[int], s: int
) -> Fraction:
    """Probability a uniform k-subset meets every listed disjoint part in
    exactly s elements (the remainder comes from outside all parts)."""
    parts = tuple(part_sizes)
    if any(p < 0 for p in parts):
        raise InputError("part sizes must be nonnegative")
    if sum(parts) > n:
        raise InputError("parts exceed the population")
    if not 0 <= k <= n:
        raise InputError("need 0 <= k <= n")
    if not parts:
        return Fraction(1)
    if s < 0:
        raise InputError("s must be nonnegative")
    f = len(parts)
    rest = n - sum(parts)
    outside = k - f * s
    if outside < 0 or outside > rest or any(s > p for p in parts):
        return Fraction(0)
    ways = math.comb(rest, outside)
    for p in parts:
        ways *= math.comb(p, s)
    return Fraction(ways, math.comb(n, k))


def poly_exp_check(s: int, x: float) -> tuple[float, float, bool]:
    """lhs = x^s e^-x against rhs = (s/e)^s, in the log domain.

    Both sides use the same operation order so the equality point x = s
    lands exactly; the comparison tolerance is relative (1e-12), since an
    absolute slack is meaningless for the large magnitudes reached by big s.
    """
    if s < 1:
        raise InputError("s must be >= 1")
    if x < 0:
        raise InputError("x must be nonnegative")
    lhs = 0.0 if x == 0 else math.exp(s * math.log(x) - x)
    rhs = math.exp(s * math.log(s) - s)
    return lhs, rhs, lhs <= rhs + FLOAT_TOL * max(1.0, rhs)


@dataclass(frozen=True)
class LambdaSplit:
    y: float
    z: float
    lo: float
    hi: float
    lam: float


def lambda_split(y: float, z: float) -> LambdaSplit:
    """A weight in [0, 1] sitting between y^2 e^(2-y-z)/4 and 1 - z e^(1-y-z).

    The interval is provably nonempty for all y, z >= 0; an empty interval
    here would falsify that inequality, so it aborts instead of clamping.
    The midpoint is returned, keeping the weight away from both ends.
    """
    if y < 0 or z < 0:
        raise InputError("y and z must be nonnegative")
    lo = y * y * math.exp(2 - y - z) / 4
    hi = 1 - z * math.exp(1 - y - z)
    if lo > hi + FLOAT_TOL:
        raise RuntimeError(
            f"empty lambda interval at y={y}, z={z}: lo={lo} > hi={hi};"
            " this contradicts a proven inequality, aborting"
        )
    lam = min(1.0, max(0.0, (lo + hi) / 2))
    return LambdaSplit(y=y, z=z, lo=lo, hi=hi, lam=lam)
