"""Certified evaluation of the conflict-collection size bound.

The headline computation takes the floor of

    (log2(B(n)) - (n-4) - log2((n-3)!)) / (n - log2(16 n (n-1) (n-2)))

and adds 2, where B(n) is an upper bound on the number of simple labelled
order types of n planar points.  A one-ULP slip flips a floor, so nothing
here trusts machine floats: every logarithm is a rational interval with a
proven enclosure, produced by integer digit extraction, and a result is only
reported as certified when the whole pre-floor interval sits strictly inside
one integer gap.  A precision ladder doubles the fractional bit count until
the floor certifies (or fails loudly at the cap).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import List, Sequence

DEFAULT_FBITS = 128
MAX_FBITS = 1024
EXACT_MODE_MAX = 512  # beyond this the exact order-type sum is wasteful
WIDTH_REQUIREMENT = Fraction(1, 2**64)


@dataclass(frozen=True)
class Interval:
    """Closed rational interval [lo, hi] known to contain the true value."""

    lo: Fraction
    hi: Fraction

    def __post_init__(self):
        if self.lo > self.hi:
            raise ValueError(f"inverted interval [{self.lo}, {self.hi}]")

    @classmethod
    def exact(cls, v) -> "Interval":
        f = Fraction(v)
        return cls(f, f)

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    def __add__(self, other) -> "Interval":
        o = other if isinstance(other, Interval) else Interval.exact(other)
        return Interval(self.lo + o.lo, self.hi + o.hi)

    __radd__ = __add__

    def __neg__(self) -> "Interval":
        return Interval(-self.hi, -self.lo)

    def __sub__(self, other) -> "Interval":
        o = other if isinstance(other, Interval) else Interval.exact(other)
        return Interval(self.lo - o.hi, self.hi - o.lo)

    def __rsub__(self, other) -> "Interval":
        return Interval.exact(other) - self

    def __mul__(self, other) -> "Interval":
        o = other if isinstance(other, Interval) else Interval.exact(other)
        products = (self.lo * o.lo, self.lo * o.hi, self.hi * o.lo, self.hi * o.hi)
        return Interval(min(products), max(products))

    __rmul__ = __mul__

    def __truediv__(self, other) -> "Interval":
        o = other if isinstance(other, Interval) else Interval.exact(other)
        if o.lo <= 0 <= o.hi:
            raise ZeroDivisionError("divisor interval contains zero")
        quotients = (self.lo / o.lo, self.lo / o.hi, self.hi / o.lo, self.hi / o.hi)
        return Interval(min(quotients), max(quotients))

    def contains(self, v) -> bool:
        f = Fraction(v)
        return self.lo <= f <= self.hi

    def encloses(self, other: "Interval") -> bool:
        return self.lo <= other.lo and other.hi <= self.hi


# A CertifiedLog is an Interval bracketing log2 of a positive quantity; the
# producers below guarantee width <= 2^-64 at the default precision.
CertifiedLog = Interval


class FloorUncertified(RuntimeError):
    """The pre-floor interval straddles an integer at the current precision."""


def floor_certified(iv: Interval):
    """(floor, certified): certified iff both endpoints share the same floor."""
    f_lo = math.floor(iv.lo)
    f_hi = math.floor(iv.hi)
    return f_lo, f_lo == f_hi


# ---------------------------------------------------------------------------
# Certified log2 from integer arithmetic
# ---------------------------------------------------------------------------


class _Straddle(Exception):
    pass


def _log2_digits(t: int, fbits: int, B: int) -> int:
    """Integer D with log2(t / 2^(bitlen-1)) in [D, D+1] / 2^fbits.

    Squares a fixed-point enclosure of the mantissa and extracts one binary
    digit per step; a digit is only emitted when the whole enclosure agrees
    on it, so the emitted prefix is exact.  Raises _Straddle when the
    enclosure is too wide to decide a digit (caller retries with bigger B).
    """
    L = t.bit_length() - 1
    if B < L + 1:
        raise _Straddle
    u_lo = u_hi = t << (B - L)  # mantissa in [1, 2) scaled by 2^B, exact
    two = 1 << (2 * B + 1)
    digits = 0
    for _ in range(fbits):
        s_lo = u_lo * u_lo
        s_hi = u_hi * u_hi
        if s_hi < two:
            digits = digits << 1
            shift = B
        elif s_lo >= two:
            digits = (digits << 1) | 1
            shift = B + 1
        else:
            raise _Straddle
        u_lo = s_lo >> shift
        u_hi = -((-s_hi) >> shift)  # ceil division by 2^shift
    return digits


def _log2_small(t: int, fbits: int) -> Interval:
    """Certified log2 of a moderate-size integer, width <= 2^-fbits + tiny."""
    if t < 1:
        raise ValueError("need a positive integer")
    L = t.bit_length() - 1
    if t == 1 << L:
        return Interval.exact(L)
    B = 2 * fbits + 64
    while True:
        try:
            D = _log2_digits(t, fbits, B)
            break
        except _Straddle:
            B *= 2
            if B > 64 * (fbits + 64):
                raise RuntimeError(f"log2 digit extraction failed to converge for {t}")
    frac = Fraction(D, 1 << fbits)
    return Interval(L + frac, L + frac + Fraction(1, 1 << fbits))


def log2_certified(x: int, fbits: int = DEFAULT_FBITS) -> CertifiedLog:
    """Rigorous interval around log2 of a positive big integer.

    The integer part comes from the bit length; the fractional part from the
    top bits: with t = the top word of x, log2(x) lies between log2(t) and
    log2(t+1) shifted by the dropped exponent.  Exact powers of two yield a
    degenerate interval.
    """
    if x < 1:
        raise ValueError("log2 is certified for integers >= 1")
    L = x.bit_length() - 1
    if x == 1 << L:
        return Interval.exact(L)
    W = fbits + 16
    if x.bit_length() <= W:
        return _log2_small(x, fbits)
    shift = x.bit_length() - W
    t = x >> shift
    lo = _log2_small(t, fbits).lo
    hi = _log2_small(t + 1, fbits).hi
    return Interval(lo + shift, hi + shift)


def log2_fraction(f: Fraction, fbits: int = DEFAULT_FBITS) -> Interval:
    """Certified log2 of a positive rational."""
    if f <= 0:
        raise ValueError("log2 needs a positive value")
    num = log2_certified(f.numerator, fbits)
    den = log2_certified(f.denominator, fbits)
    return num - den


def log2_interval(iv: Interval, fbits: int = DEFAULT_FBITS) -> Interval:
    """Certified log2 of a positive rational interval."""
    if iv.lo <= 0:
        raise ValueError("log2 needs a positive interval")
    return Interval(log2_fraction(iv.lo, fbits).lo, log2_fraction(iv.hi, fbits).hi)


# ---------------------------------------------------------------------------
# Certified constants from classical series
# ---------------------------------------------------------------------------


@lru_cache(maxsize=None)
def ln2_interval(terms: int = 160) -> Interval:
    """ln 2 = sum 1/(k 2^k); tail after K terms is below 1/((K+1) 2^K)."""
    s = sum(Fraction(1, k * (1 << k)) for k in range(1, terms + 1))
    return Interval(s, s + Fraction(1, (terms + 1) * (1 << terms)))


@lru_cache(maxsize=None)
def e_interval(terms: int = 40) -> Interval:
    """e = sum 1/k!; tail after K terms is below 2/(K+1)!."""
    s = sum(Fraction(1, math.factorial(k)) for k in range(terms + 1))
    return Interval(s, s + Fraction(2, math.factorial(terms + 1)))


def _atan_interval(inv: int, terms: int) -> Interval:
    """arctan(1/inv) by its alternating series; partial sums bracket it."""
    x = Fraction(1, inv)
    partial = Fraction(0)
    lo = hi = None
    for j in range(terms):
        term = x ** (2 * j + 1) / (2 * j + 1)
        partial = partial + term if j % 2 == 0 else partial - term
        if j % 2 == 0:
            hi = partial
        else:
            lo = partial
    assert lo is not None and hi is not None
    return Interval(lo, hi)


@lru_cache(maxsize=None)
def pi_interval(terms: int = 40) -> Interval:
    """Machin: pi = 16 arctan(1/5) - 4 arctan(1/239)."""
    return _atan_interval(5, terms) * 16 - _atan_interval(239, terms) * 4


# ---------------------------------------------------------------------------
# Order-type count bounds
# ---------------------------------------------------------------------------


def warren_component_bound(m: int, nvars: int, d: int) -> int:
    """Warren's bound on components of a common non-zero set of polynomials.

    2 (2d)^nvars * sum_{k=0}^{nvars} 2^k C(m, k), for m polynomials of degree
    at most d in nvars variables.
    """
    if m < 1 or nvars < 1 or d < 1:
        raise ValueError("need m, nvars, d >= 1")
    total = sum((1 << k) * math.comb(m, k) for k in range(nvars + 1))
    return 2 * (2 * d) ** nvars * total


def order_type_count_bound(n: int) -> int:
    """Exact integer upper bound on simple labelled order types of n points.

    2 * 16^n * sum_{k=0}^{2n} 2^k C(C(n,3), k): Warren's bound applied to the
    C(n,3) orientation determinants, each a degree-2 polynomial in the 2n
    coordinates.
    """
    if n < 3:
        raise ValueError("need n >= 3")
    m = math.comb(n, 3)
    total = 0
    c = 1  # C(m, k), updated incrementally
    for k in range(2 * n + 1):
        total += c << k
        c = c * (m - k) // (k + 1)
    return 2 * (1 << (4 * n)) * total


def alon_order_type_bound_log2(n: int, fbits: int = DEFAULT_FBITS) -> CertifiedLog:
    """Certified log2 of the explicit bound (8 (en/2)^2 ln(n/2)) ^ (2n + ln(n/2)).

    Strictly weaker than the Warren-route bound for moderate n, which is the
    point of computing both.
    """
    if n < 3:
        raise ValueError("need n >= 3")
    ln2 = ln2_interval(max(160, fbits + 16))
    e = e_interval(max(40, fbits // 4))
    half_n = Fraction(n, 2)
    ln_half_n = log2_fraction(half_n, fbits) * ln2
    if ln_half_n.lo <= 0:
        raise ValueError("bound needs ln(n/2) > 0, i.e. n >= 3")
    base = (e * half_n) * (e * half_n) * 8 * ln_half_n
    exponent = ln_half_n + 2 * n
    return exponent * log2_interval(base, fbits)


# ---------------------------------------------------------------------------
# Stirling-certified mode for large n
# ---------------------------------------------------------------------------


def stirling_log2_factorial(k: int, fbits: int = DEFAULT_FBITS) -> Interval:
    """Two-sided log2(k!) via Robbins' bounds.

    sqrt(2 pi k) (k/e)^k e^(1/(12k+1)) < k! < sqrt(2 pi k) (k/e)^k e^(1/(12k)).
    """
    if k < 0:
        raise ValueError("factorial of a negative number")
    if k <= 64:
        return log2_certified(math.factorial(k), fbits)
    ln2 = ln2_interval(max(160, fbits + 16))
    log2_k = log2_certified(k, fbits)
    log2_2pi = log2_interval(pi_interval() * 2, fbits)
    main = (Fraction(k) + Fraction(1, 2)) * log2_k + Fraction(1, 2) * log2_2pi - Interval.exact(k) / ln2
    r = Interval(Fraction(1, 12 * k + 1), Fraction(1, 12 * k))
    return main + r / ln2


def stirling_log2_comb(m: int, k: int, fbits: int = DEFAULT_FBITS) -> Interval:
    """Certified log2 C(m, k); k! is taken exactly, the huge factorials via Stirling."""
    if not 0 <= k <= m:
        raise ValueError("need 0 <= k <= m")
    return (
        stirling_log2_factorial(m, fbits)
        - log2_certified(math.factorial(k), fbits)
        - stirling_log2_factorial(m - k, fbits)
    )


def log2_order_type_bound(
    n: int, fbits: int = DEFAULT_FBITS, mode: str = "auto"
) -> CertifiedLog:
    """Certified log2 of the order-type count bound.

    mode "exact" certifies the log of the exact integer; "stirling" brackets
    the dominant term of the sum and bounds the rest by a geometric series
    (the term ratio is at most 2n / (2 (C(n,3) - 2n))), avoiding any huge
    exact binomials.  "auto" switches at n = 512.
    """
    if n < 3:
        raise ValueError("need n >= 3")
    if mode == "auto":
        mode = "exact" if n <= EXACT_MODE_MAX else "stirling"
    if mode == "exact":
        return log2_certified(order_type_count_bound(n), fbits)
    if mode != "stirling":
        raise ValueError(f"unknown mode {mode!r}")

    m = math.comb(n, 3)
    N = 2 * n
    q = Fraction(N, 2 * (m - N))
    if q >= 1:
        raise ValueError("geometric bound needs C(n,3) far above 2n; use exact mode")
    log2_last = Interval.exact(N) + stirling_log2_comb(m, N, fbits)
    slack = log2_fraction(1 / (1 - q), fbits)
    log2_sum = Interval(log2_last.lo, log2_last.hi + slack.hi)
    return Interval.exact(1 + 4 * n) + log2_sum


# ---------------------------------------------------------------------------
# The bound pipeline
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SigmaBoundReport:
    """One certified evaluation of the conflict-collection size bound."""

    n: int
    ts_log2: CertifiedLog
    numerator: Interval
    denominator: Interval
    sigma_bound: int
    certified: bool


def sigma_upper_bound(n: int, ts_log2: CertifiedLog, fbits: int = DEFAULT_FBITS) -> SigmaBoundReport:
    """floor((ts_log2 - (n-4) - log2((n-3)!)) / (n - log2(16n(n-1)(n-2)))) + 2.

    Evaluated in interval arithmetic; certified only when the pre-floor
    interval avoids every integer.  An uncertified floor is reported, never
    silently rounded.
    """
    if n < 16:
        raise ValueError("the bound formula needs n >= 16 (positive denominator)")
    log_fact = log2_certified(math.factorial(n - 3), fbits)
    numerator = ts_log2 - (n - 4) - log_fact
    log_den = log2_certified(16 * n * (n - 1) * (n - 2), fbits)
    denominator = Interval.exact(n) - log_den
    if denominator.lo <= 0:
        raise ValueError(f"denominator not certifiably positive at n={n}")
    quotient = numerator / denominator
    k, certified = floor_certified(quotient)
    return SigmaBoundReport(
        n=n,
        ts_log2=ts_log2,
        numerator=numerator,
        denominator=denominator,
        sigma_bound=k + 2,
        certified=certified,
    )


def certified_sigma(
    n: int,
    mode: str = "auto",
    fbits: int = DEFAULT_FBITS,
    max_fbits: int = MAX_FBITS,
) -> SigmaBoundReport:
    """Run the pipeline, doubling precision until the floor certifies."""
    while True:
        report = sigma_upper_bound(n, log2_order_type_bound(n, fbits, mode), fbits)
        if report.certified:
            return report
        fbits *= 2
        if fbits > max_fbits:
            raise FloorUncertified(
                f"floor at n={n} still uncertified at {max_fbits} fractional bits"
            )


@dataclass
class RangeReport:
    ok: bool
    expected: int
    rows: List[SigmaBoundReport]
    mismatches: List[int]


def verify_sigma_range(from_n: int, to_n: int, expected: int) -> RangeReport:
    """Certify the bound for every n in [from_n, to_n] and compare to expected.

    Any floor that cannot be certified raises; a certified mismatch makes the
    report false but keeps going so every offending n is listed.
    """
    if not 16 <= from_n <= to_n:
        raise ValueError("need 16 <= from_n <= to_n")
    rows = []
    mismatches = []
    for n in range(from_n, to_n + 1):
        report = certified_sigma(n)
        rows.append(report)
        if report.sigma_bound != expected:
            mismatches.append(n)
    return RangeReport(not mismatches, expected, rows, mismatches)


@dataclass(frozen=True)
class TrendRow:
    n: int
    sigma_bound: int
    ratio: Interval  # sigma_bound / log2(n)
    certified: bool


def asymptotic_trend(ns: Sequence[int], fbits: int = DEFAULT_FBITS) -> List[TrendRow]:
    """Bound and bound/log2(n) for each n; exact mode small, Stirling mode large."""
    rows = []
    for n in ns:
        if n < 16:
            raise ValueError("trend rows need n >= 16")
        report = certified_sigma(n, mode="auto", fbits=fbits)
        log2_n = log2_certified(n, fbits)
        ratio = Interval.exact(report.sigma_bound) / log2_n
        rows.append(TrendRow(n, report.sigma_bound, ratio, report.certified))
    return rows
