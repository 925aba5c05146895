"""The ramp family, the staircases built from it, and the precision-n evaluator.

For q >= 1 and 0 <= p < q the ramp ``beta(p, q, .)`` is 0 up to p/q, rises
with slope 2**q until it reaches 1/q at (p + 2**-q)/q, and stays there.
``alpha(q, .)`` sums the q ramps of one level, and

    F(x) = sum_{q >= 1} alpha(q, x) / q**2.

Evaluation to precision n truncates the series after t = 2**(n+2) terms
(tail < 1/t), rounds each term to k = 2n + 8 fractional bits (total
rounding error <= t * 2**-k = 2**-(n+6)), and in oracle mode queries the
input once at m = t + n + 4 bits. Because alpha(q, .) is 2**q-Lipschitz, the
input error moves the truncated sum by at most 2**(t+1-m) = 2**-(n+3).
The three contributions add up to less than 2**-n.
"""

from __future__ import annotations

import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Optional

from .cauchy import CauchyOracle
from .errors import DomainError, ResourceLimitError
from .exact import Dyadic, check_unit_interval, floor_scaled, format_rational

DEFAULT_TERM_LIMIT = 1 << 24

Evaluator = Callable[[Fraction], Fraction]


@dataclass(frozen=True)
class Schedule:
    n: int
    t: int
    per_term_k: int
    oracle_m: int


@dataclass(frozen=True)
class EvalReport:
    result: Dyadic
    precision_n: int
    terms_summed: int
    max_oracle_precision: int
    wall_time_ns: int

    @property
    def error_bound(self) -> Fraction:
        return Fraction(1, 1 << self.precision_n)


def _check_level(q: int) -> None:
    if not isinstance(q, int) or q < 1:
        raise DomainError(f"q must be a positive integer, got {q!r}")


def beta(p: int, q: int, x: Fraction) -> Fraction:
    """Exact value of the ramp starting at p/q."""
    _check_level(q)
    if not 0 <= p < q:
        raise DomainError(f"p={p} outside [0, {q - 1}]")
    x = Fraction(x)
    check_unit_interval(x)
    start = Fraction(p, q)
    if x <= start:
        return Fraction(0)
    end = Fraction((p << q) + 1, q << q)
    if x >= end:
        return Fraction(1, q)
    return (x - start) * (1 << q)


def alpha_bruteforce(q: int, x: Fraction) -> Fraction:
    """alpha(q, x) as the literal sum of its q ramps."""
    _check_level(q)
    x = Fraction(x)
    check_unit_interval(x)
    return sum((beta(p, q, x) for p in range(q)), Fraction(0))


def alpha(q: int, x: Fraction) -> Fraction:
    """alpha(q, x) in closed form.

    Every ramp left of p* = floor(q x) is complete, ramps right of it have
    not started, so only the ramp at p*/q needs evaluating.
    """
    _check_level(q)
    x = Fraction(x)
    check_unit_interval(x)
    if x == 1:
        return Fraction(1)
    p = floor_scaled(q, x)
    a, b = x.numerator, x.denominator
    rem = q * a - p * b  # r = x - p/q = rem / (q b)
    if rem and (rem << q) >= b:
        return Fraction(p + 1, q)
    return Fraction(p * b + (rem << q), q * b)


def tail_bound(t: int) -> Fraction:
    """Upper bound 1/t on sum_{q > t} 1/q**2."""
    if t < 1:
        raise DomainError(f"t must be positive, got {t}")
    return Fraction(1, t)


def schedule_for(n: int, term_limit: int = DEFAULT_TERM_LIMIT) -> Schedule:
    if n < 0:
        raise DomainError(f"precision must be nonnegative, got {n}")
    t = 1 << (n + 2)
    if t > term_limit:
        raise ResourceLimitError(
            f"precision {n} needs {t} terms, above the limit of {term_limit}"
        )
    return Schedule(n=n, t=t, per_term_k=2 * n + 8, oracle_m=t + n + 4)


def _term_mantissa_sum(a: int, b: int, q_lo: int, q_hi: int, k: int) -> int:
    """Sum over q in [q_lo, q_hi) of alpha(q, a/b)/q**2 rounded to k bits.

    Returns the sum of the rounded mantissas (all at exponent -k).
    """
    total = 0
    blen = b.bit_length()
    for q in range(q_lo, q_hi):
        p, rem = divmod(q * a, b)
        q3 = q * q * q
        # ramp test: 2**q * r < 1/q  <=>  rem << q < b; the bit-length
        # guard settles most plateau cases without forming the shift
        if rem and (q >= blen or (rem << q) >= b):
            num, den = p + 1, q3
        else:
            num, den = p * b + (rem << q), q3 * b
        m, r = divmod(num << k, den)
        if 2 * r > den:
            m += 1
        total += m
    return total


def _chunks(t: int, parts: int) -> list[tuple[int, int]]:
    parts = max(1, min(parts, t))
    step = -(-t // parts)
    return [(lo, min(lo + step, t + 1)) for lo in range(1, t + 1, step)]


def _truncated_sum(x: Fraction, sched: Schedule, workers: int) -> Dyadic:
    a, b, k = x.numerator, x.denominator, sched.per_term_k
    if workers <= 1:
        total = _term_mantissa_sum(a, b, 1, sched.t + 1, k)
    else:
        # dyadic addition is exact, so the chunking cannot change the result
        bounds = _chunks(sched.t, 4 * workers)
        with ProcessPoolExecutor(max_workers=workers) as pool:
            parts = pool.map(
                _term_mantissa_sum,
                [a] * len(bounds),
                [b] * len(bounds),
                [lo for lo, _ in bounds],
                [hi for _, hi in bounds],
                [k] * len(bounds),
            )
            total = sum(parts)
    return Dyadic(total, -k)


def eval_f_rational(
    x: Fraction,
    n: int,
    *,
    term_limit: int = DEFAULT_TERM_LIMIT,
    workers: int = 1,
) -> EvalReport:
    """Dyadic within 2**-n of F(x) for an exact rational x in [0, 1]."""
    x = Fraction(x)
    check_unit_interval(x)
    sched = schedule_for(n, term_limit)
    start = time.perf_counter_ns()
    result = _truncated_sum(x, sched, workers)
    elapsed = time.perf_counter_ns() - start
    return EvalReport(result, n, sched.t, 0, elapsed)


def eval_f_oracle(
    phi: CauchyOracle,
    n: int,
    *,
    term_limit: int = DEFAULT_TERM_LIMIT,
    workers: int = 1,
) -> EvalReport:
    """Dyadic within 2**-n of F(x), where ``phi`` is any honest oracle for x."""
    sched = schedule_for(n, term_limit)
    start = time.perf_counter_ns()
    x_hat = phi.query(sched.oracle_m).to_fraction()
    x_hat = min(max(x_hat, Fraction(0)), Fraction(1))
    result = _truncated_sum(x_hat, sched, workers)
    elapsed = time.perf_counter_ns() - start
    return EvalReport(result, n, sched.t, sched.oracle_m, elapsed)


def glue(
    f: Evaluator,
    g: Evaluator,
    z: Fraction,
    fz: Fraction,
    lo: Optional[Fraction] = None,
    hi: Optional[Fraction] = None,
) -> Evaluator:
    """Join f (left of z) and g (right of z) into one evaluator.

    Requires f(z) == g(z) == fz. The result is
    h(x) = f(min(x, z)) + g(max(x, z)) - fz, which never evaluates f right
    of z or g left of it. ``lo``/``hi`` optionally bound the joint domain.
    """
    z = Fraction(z)
    fz = Fraction(fz)

    def h(x: Fraction) -> Fraction:
        x = Fraction(x)
        if (lo is not None and x < lo) or (hi is not None and x > hi):
            raise DomainError(f"x={format_rational(x)} outside [{lo}, {hi}]")
        return f(min(x, z)) + g(max(x, z)) - fz

    return h
