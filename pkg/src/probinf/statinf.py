"""Interval estimation and testing procedures that end in an accepted statement.

Floating point is used here: Student-t quantiles need transcendental
functions.  Binomial tail probabilities are summed term by term from the
exact probability mass function rather than approximated.
"""

from __future__ import annotations

import csv
import math
import statistics
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, NamedTuple

from .credal import Interval
from .errors import DegenerateSampleError, InvariantError

__all__ = [
    "RealSample",
    "BinomialData",
    "ConfidenceSpec",
    "ProportionBound",
    "Reject",
    "FailToReject",
    "betainc",
    "t_cdf",
    "t_critical",
    "t_interval",
    "binom_pmf",
    "binom_tail_le",
    "binom_tail_ge",
    "binomial_ci",
    "proportion_bound",
    "exact_coverage",
    "hypothesis_test",
    "default_rule_reliability",
    "read_sample_csv",
    "read_binomial_csv",
]


@dataclass(frozen=True)
class RealSample:
    values: tuple[float, ...]

    def __post_init__(self):
        values = tuple(float(v) for v in self.values)
        object.__setattr__(self, "values", values)
        if len(values) < 2:
            raise InvariantError(f"a sample needs at least 2 values, got {len(values)}")
        if not all(math.isfinite(v) for v in values):
            raise InvariantError("sample values must be finite")

    @property
    def n(self) -> int:
        return len(self.values)

    @property
    def mean(self) -> float:
        return statistics.fmean(self.values)

    @property
    def std(self) -> float:
        """Sample standard deviation (divisor N - 1)."""
        return statistics.stdev(self.values)


@dataclass(frozen=True)
class BinomialData:
    n: int
    k: int

    def __post_init__(self):
        if self.n < 1:
            raise InvariantError(f"trial count must be positive, got {self.n}")
        if not 0 <= self.k <= self.n:
            raise InvariantError(f"successes must lie in [0, {self.n}], got {self.k}")

    @property
    def frequency(self) -> float:
        return self.k / self.n


@dataclass(frozen=True)
class ConfidenceSpec:
    level: float

    def __post_init__(self):
        if not 0 < self.level < 1:
            raise InvariantError(f"level must lie strictly between 0 and 1, got {self.level}")


def _level(value) -> float:
    if isinstance(value, ConfidenceSpec):
        return value.level
    return ConfidenceSpec(float(value)).level


# --- Student t --------------------------------------------------------------


def _betacf(a: float, b: float, x: float) -> float:
    # modified Lentz evaluation of the incomplete-beta continued fraction
    tiny = 1e-300
    qab, qap, qam = a + b, a + 1.0, a - 1.0
    c = 1.0
    d = 1.0 - qab * x / qap
    if abs(d) < tiny:
        d = tiny
    d = 1.0 / d
    h = d
    for m in range(1, 10_000):
        m2 = 2 * m
        aa = m * (b - m) * x / ((qam + m2) * (a + m2))
        d = 1.0 + aa * d
        d = tiny if abs(d) < tiny else d
        c = 1.0 + aa / c
        c = tiny if abs(c) < tiny else c
        d = 1.0 / d
        h *= d * c
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2))
        d = 1.0 + aa * d
        d = tiny if abs(d) < tiny else d
        c = 1.0 + aa / c
        c = tiny if abs(c) < tiny else c
        d = 1.0 / d
        delta = d * c
        h *= delta
        if abs(delta - 1.0) < 1e-16:
            return h
    raise ArithmeticError("incomplete beta continued fraction did not converge")


def betainc(a: float, b: float, x: float) -> float:
    """Regularized incomplete beta function I_x(a, b)."""
    if a <= 0 or b <= 0:
        raise InvariantError("betainc needs a, b > 0")
    if not 0.0 <= x <= 1.0:
        raise InvariantError(f"betainc needs x in [0, 1], got {x}")
    if x == 0.0 or x == 1.0:
        return x
    log_front = (
        math.lgamma(a + b) - math.lgamma(a) - math.lgamma(b) + a * math.log(x) + b * math.log1p(-x)
    )
    front = math.exp(log_front)
    if x < (a + 1.0) / (a + b + 2.0):
        return front * _betacf(a, b, x) / a
    return 1.0 - front * _betacf(b, a, 1.0 - x) / b


def t_cdf(t: float, df: float) -> float:
    """Student-t cumulative distribution function."""
    if df <= 0:
        raise InvariantError("degrees of freedom must be positive")
    tail = 0.5 * betainc(df / 2.0, 0.5, df / (df + t * t))
    return 1.0 - tail if t >= 0 else tail


def t_critical(level, df: float) -> float:
    """Two-sided critical value: P(|T| <= t) = level, by bisection on t_cdf."""
    target = (1.0 + _level(level)) / 2.0
    lo, hi = 0.0, 1.0
    while t_cdf(hi, df) < target:
        lo, hi = hi, hi * 2.0
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if t_cdf(mid, df) < target:
            lo = mid
        else:
            hi = mid
        if hi - lo <= 1e-13 * max(1.0, hi):
            break
    return 0.5 * (lo + hi)


def t_interval(sample: RealSample | Iterable[float], level) -> Interval:
    """Interval ``mean -/+ t * s / sqrt(N)`` for the population mean."""
    if not isinstance(sample, RealSample):
        sample = RealSample(tuple(sample))
    level = _level(level)
    s = sample.std
    if s == 0:
        raise DegenerateSampleError("sample standard deviation is zero")
    half = t_critical(level, sample.n - 1) * s / math.sqrt(sample.n)
    m = sample.mean
    return Interval(m - half, m + half)


# --- binomial ---------------------------------------------------------------


def binom_pmf(n: int, k: int, p: float) -> float:
    if k < 0 or k > n:
        return 0.0
    if p == 0.0:
        return 1.0 if k == 0 else 0.0
    if p == 1.0:
        return 1.0 if k == n else 0.0
    log_pmf = (
        math.lgamma(n + 1) - math.lgamma(k + 1) - math.lgamma(n - k + 1)
        + k * math.log(p) + (n - k) * math.log1p(-p)
    )
    return math.exp(log_pmf)


def binom_tail_le(n: int, k: int, p: float) -> float:
    """P(X <= k) for X ~ Binomial(n, p)."""
    return min(1.0, math.fsum(binom_pmf(n, j, p) for j in range(0, k + 1)))


def binom_tail_ge(n: int, k: int, p: float) -> float:
    """P(X >= k) for X ~ Binomial(n, p)."""
    return min(1.0, math.fsum(binom_pmf(n, j, p) for j in range(k, n + 1)))


def _bisect(f, target: float, increasing: bool) -> float:
    lo, hi = 0.0, 1.0
    for _ in range(100):
        mid = 0.5 * (lo + hi)
        if (f(mid) < target) == increasing:
            lo = mid
        else:
            hi = mid
        if hi - lo < 1e-15:
            break
    return 0.5 * (lo + hi)


def binomial_ci(data: BinomialData, level) -> Interval:
    """Exact (Clopper-Pearson) interval for the success probability.

    The lower end is the p at which P(X >= k) equals half the miss rate,
    the upper end the p at which P(X <= k) does; coverage is at least
    ``level`` whatever the true probability.
    """
    alpha2 = (1.0 - _level(level)) / 2.0
    n, k = data.n, data.k
    lower = 0.0 if k == 0 else _bisect(lambda p: binom_tail_ge(n, k, p), alpha2, increasing=True)
    upper = 1.0 if k == n else _bisect(lambda p: binom_tail_le(n, k, p), alpha2, increasing=False)
    return Interval(lower, upper)


class ProportionBound(NamedTuple):
    half_width: float
    vacuous: bool  # half-width >= 1 covers every possible frequency


def proportion_bound(n: int) -> ProportionBound:
    """Half-width 3 / sqrt(4n) around an observed sample frequency."""
    if n < 1:
        raise InvariantError(f"sample size must be positive, got {n}")
    h = 3.0 / math.sqrt(4 * n)
    return ProportionBound(h, h >= 1.0)


def exact_coverage(n: int, p: float, half_width: float) -> float:
    """P(|X/n - p| <= half_width) for X ~ Binomial(n, p), by enumeration."""
    if n < 1:
        raise InvariantError(f"sample size must be positive, got {n}")
    if not 0.0 < p < 1.0:
        raise InvariantError(f"p must lie in (0, 1), got {p}")
    if half_width <= 0:
        raise InvariantError("half-width must be positive")
    # absorb rounding in k/n - p when the frequency sits exactly on the boundary
    slack = 1e-12 * max(1.0, half_width)
    total = math.fsum(binom_pmf(n, k, p) for k in range(n + 1) if abs(k / n - p) <= half_width + slack)
    return min(total, 1.0)


@dataclass(frozen=True)
class Reject:
    p_value: float


@dataclass(frozen=True)
class FailToReject:
    p_value: float


_TAILS = ("upper", "lower", "two-sided")


def binomial_p_value(data: BinomialData, null_p: float, tail: str) -> float:
    if tail not in _TAILS:
        raise InvariantError(f"tail must be one of {_TAILS}, got {tail!r}")
    if not 0.0 < null_p < 1.0:
        raise InvariantError(f"null probability must lie in (0, 1), got {null_p}")
    n, k = data.n, data.k
    if tail == "upper":
        return binom_tail_ge(n, k, null_p)
    if tail == "lower":
        return binom_tail_le(n, k, null_p)
    return min(1.0, 2.0 * min(binom_tail_ge(n, k, null_p), binom_tail_le(n, k, null_p)))


def hypothesis_test(data: BinomialData, null_p: float, alpha, tail: str = "two-sided"):
    """Exact binomial test; rejects iff the p-value is at most ``alpha``."""
    alpha = _level(alpha)
    pv = binomial_p_value(data, null_p, tail)
    return Reject(pv) if pv <= alpha else FailToReject(pv)


def default_rule_reliability(successes: int, applications: int, gullibility: float) -> Interval:
    """Reliability interval for a default rule that held ``successes`` times
    out of ``applications``: the exact interval at level ``1 - gullibility``."""
    if not 0.0 < gullibility < 1.0:
        raise InvariantError(f"gullibility must lie strictly between 0 and 1, got {gullibility}")
    return binomial_ci(BinomialData(applications, successes), 1.0 - gullibility)


# --- CSV ingestion ------------------------------------------------------------


def read_sample_csv(path) -> RealSample:
    """One numeric value per line; blank lines are skipped."""
    values = []
    with open(Path(path), newline="") as fh:
        for lineno, row in enumerate(csv.reader(fh), start=1):
            if not row or not row[0].strip():
                continue
            try:
                values.append(float(row[0]))
            except ValueError:
                raise InvariantError(f"{path}:{lineno}: not a number: {row[0]!r}") from None
    return RealSample(tuple(values))


def read_binomial_csv(path) -> BinomialData:
    """A single header-less ``n,k`` line."""
    with open(Path(path), newline="") as fh:
        rows = [r for r in csv.reader(fh) if r and any(c.strip() for c in r)]
    if len(rows) != 1 or len(rows[0]) != 2:
        raise InvariantError(f"{path}: expected a single 'n,k' line")
    try:
        n, k = (int(c) for c in rows[0])
    except ValueError:
        raise InvariantError(f"{path}: 'n,k' must be integers") from None
    return BinomialData(n, k)
