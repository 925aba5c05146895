"""Modulus-of-continuity witnesses and the invariant suites.

A witness is a point x = p/q with a step delta = 2**-n such that the ramp of
level q starting at x is fully crossed between x and x + delta. That ramp
alone lifts F by exactly 1/q**3 and every other term is nondecreasing, so
F(x + delta) - F(x) >= 1/q**3. With n <= q <= n**2 the jump is at least
1/n**6, hence any modulus of continuity must grow exponentially.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Optional, Sequence

from .cauchy import make_dithered_oracle
from .construction import (
    DEFAULT_TERM_LIMIT,
    alpha,
    alpha_bruteforce,
    beta,
    eval_f_oracle,
    eval_f_rational,
    glue,
    schedule_for,
)
from .errors import DomainError
from .exact import Dyadic, format_rational


@dataclass(frozen=True)
class Witness:
    x: Fraction
    delta: Fraction
    q: int
    n: int
    jump_lower_bound: Fraction

    @property
    def p(self) -> int:
        return int(self.x * self.q)

    def violations(self) -> list[str]:
        """Names of the witness invariants this instance breaks."""
        bad = []
        if not self.n <= self.q <= self.n * self.n:
            bad.append("n <= q <= n^2")
        if (self.x * self.q).denominator != 1 or not 0 < self.x < 1:
            bad.append("x = p/q with 1 <= p <= q-1")
        if self.x + self.delta > 1:
            bad.append("x + delta <= 1")
        if not Fraction(1, self.q << self.q) < self.delta:
            bad.append("ramp width < delta")
        return bad


@dataclass(frozen=True)
class Certification:
    witness: Witness
    measured_jump: Dyadic
    eval_precision: int
    certified: bool

    @property
    def guaranteed_jump(self) -> Fraction:
        """Rigorous lower bound on the true jump implied by the measurement."""
        return self.measured_jump.to_fraction() - Fraction(2, 1 << self.eval_precision)


@dataclass(frozen=True)
class ModulusRecord:
    m: int
    omega_upper: int
    omega_lower: int
    witness_n: int
    jump_achieved: Fraction  # 1/n^3, the q = n witness
    jump_paper_form: Fraction  # 1/n^6, the weakest case q = n^2
    jump_guaranteed: Fraction  # rigorous bound from the certified measurement


@dataclass
class SuiteReport:
    name: str
    checked: int = 0
    failures: list[str] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures

    def summary(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return f"{self.name}: {status} ({self.checked} checked, {len(self.failures)} failures)"


def make_witness(n: int) -> Witness:
    """Witness at x = 1/n with q = n and delta = 2**-n."""
    if n < 2:
        raise DomainError(f"witnesses need n >= 2, got {n}")
    q = n
    w = Witness(Fraction(1, q), Fraction(1, 1 << n), q, n, Fraction(1, q**3))
    assert not w.violations(), w.violations()
    return w


def make_witness_at(x: Fraction, n: int) -> Witness:
    """Witness located at a given rational x = p'/q' in (0, 1).

    Uses the smallest power q = q'**k >= n, writing x = p' q'**(k-1) / q.
    """
    x = Fraction(x)
    if not 0 < x < 1:
        raise DomainError(f"x={format_rational(x)} must lie in (0, 1)")
    base = x.denominator
    if base > n:
        raise DomainError(f"denominator {base} of x exceeds n={n}")
    delta = Fraction(1, 1 << n)
    if x + delta > 1:
        raise DomainError(f"x + 2^-{n} exceeds 1")
    q = base
    while q < n:
        q *= base
    w = Witness(x, delta, q, n, Fraction(1, q**3))
    assert not w.violations(), w.violations()
    return w


def certification_precision(q: int) -> int:
    """ceil(log2(4 q^3)) + 1."""
    return (4 * q**3 - 1).bit_length() + 1


def certify_witness(w: Witness, term_limit: int = DEFAULT_TERM_LIMIT) -> Certification:
    """Measure F(x + delta) - F(x) and compare it with the promised jump.

    At precision n' each evaluation is within 2**-n' of F, so the measured
    jump is within 2**-(n'-1) of the true one. Certification requires
    measured >= 1/q^3 - 2**-(n'-1), which leaves a true jump of at least
    1/(2 q^3).
    """
    n_eval = certification_precision(w.q)
    schedule_for(n_eval, term_limit)
    hi = eval_f_rational(w.x + w.delta, n_eval, term_limit=term_limit).result
    lo = eval_f_rational(w.x, n_eval, term_limit=term_limit).result
    jump = hi - lo
    threshold = w.jump_lower_bound - Fraction(2, 1 << n_eval)
    return Certification(w, jump, n_eval, jump.to_fraction() >= threshold)


def modulus_upper(m: int) -> int:
    """Input precision 2**(m+2) + m + 2 that suffices for output precision m.

    With T = 2**(m+2) and delta = 2**-(T+m+2): the first T terms move by at
    most delta * sum 2**q <= delta * 2**(T+1) = 2**-(m+1), the rest by
    less than 1/T = 2**-(m+2).
    """
    if m < 0:
        raise DomainError(f"m must be nonnegative, got {m}")
    return (1 << (m + 2)) + m + 2


def _largest_cube_below(bound: int) -> int:
    n = 1
    while (n + 1) ** 3 < bound:
        n += 1
    return n


def modulus_lower_table(
    n_max: int, term_limit: int = DEFAULT_TERM_LIMIT
) -> list[ModulusRecord]:
    """Lower bounds on any modulus of continuity, one row per output precision m.

    For row m the witness n is the largest with 1/n^3 > 2**-m. Its pair sits
    at distance 2**-n yet moves F by more than 2**-m, so a valid modulus has
    omega(m) >= n + 1. Rows run while n + 1 <= n_max, i.e. while the next
    witness would still be inside the computed family, so no row is
    saturated by the cutoff. A row is emitted only if the certified
    measurement also guarantees a jump above 2**-m.
    """
    if n_max < 2:
        raise DomainError(f"n_max must be at least 2, got {n_max}")
    certs: dict[int, Certification] = {}
    rows = []
    m = 0
    while True:
        n = _largest_cube_below(1 << m)
        if n + 1 > n_max:
            break
        if n >= 2:
            if n not in certs:
                certs[n] = certify_witness(make_witness(n), term_limit)
            cert = certs[n]
            bound = Fraction(1, 1 << m)
            if not (cert.certified and cert.guaranteed_jump > bound):
                raise ArithmeticError(f"witness n={n} failed to back row m={m}")
            rows.append(
                ModulusRecord(
                    m=m,
                    omega_upper=modulus_upper(m),
                    omega_lower=n + 1,
                    witness_n=n,
                    jump_achieved=Fraction(1, n**3),
                    jump_paper_form=Fraction(1, n**6),
                    jump_guaranteed=cert.guaranteed_jump,
                )
            )
        m += 1
    return rows


# invariant suites


def _random_rational(rng: random.Random) -> Fraction:
    den = rng.randint(1, 4096)
    return Fraction(rng.randint(0, den), den)


def monotonicity_suite(sample_count: int, n: int, seed: int = 0) -> SuiteReport:
    rng = random.Random(seed)
    report = SuiteReport("monotone")
    slack = Fraction(2, 1 << n)
    while report.checked < sample_count:
        x, y = _random_rational(rng), _random_rational(rng)
        if x == y:
            continue
        x, y = min(x, y), max(x, y)
        fx = eval_f_rational(x, n).result.to_fraction()
        fy = eval_f_rational(y, n).result.to_fraction()
        report.checked += 1
        if fy < fx - slack:
            report.failures.append(f"x={format_rational(x)} y={format_rational(y)}")
    return report


def tail_suite(t_values: Iterable[int]) -> SuiteReport:
    """Check sum_{q=t+1}^{1000 t} 1/q^2 < 1/t for each t.

    Each term is rounded up to K bits, so the integer total bounds the exact
    partial sum from above and the comparison with 1/t is exact.
    """
    report = SuiteReport("tail")
    for t in t_values:
        upper = 1000 * t
        k = 2 * upper.bit_length() + 64
        one = 1 << k
        total = sum(-(-one // (q * q)) for q in range(t + 1, upper + 1))
        report.checked += 1
        report.notes.append(f"t={t}: partial sum <= {total / one:.6f} vs 1/t = {1 / t:.6f}")
        if total * t >= one:
            report.failures.append(f"t={t}")
    return report


def alpha_probe_points(q: int) -> list[Fraction]:
    """Grid k/256 plus points on and around every ramp of levels 1..q."""
    points = {Fraction(k, 256) for k in range(257)}
    for level in range(1, q + 1):
        width = Fraction(1, level << level)
        for p in range(level):
            start = Fraction(p, level)
            for x in (start, start + width, start - width / 2, start + width / 2):
                if 0 <= x <= 1:
                    points.add(x)
    return sorted(points)


def alpha_suite(q_max: int = 12) -> SuiteReport:
    report = SuiteReport("alpha")
    points = alpha_probe_points(q_max)
    for q in range(1, q_max + 1):
        for x in points:
            report.checked += 1
            if alpha(q, x) != alpha_bruteforce(q, x):
                report.failures.append(f"q={q} x={format_rational(x)}")
    return report


def glue_suite() -> SuiteReport:
    """Rebuild the level-1 ramp from its two pieces and compare on a grid."""
    report = SuiteReport("glue")
    half = Fraction(1, 2)
    ramp = glue(lambda x: 2 * x, lambda x: Fraction(1), half, Fraction(1), 0, 1)
    for k in range(65):
        x = Fraction(k, 64)
        report.checked += 1
        if ramp(x) != beta(0, 1, x):
            report.failures.append(f"x={format_rational(x)}")
    return report


def oracle_suite(
    xs: Sequence[Fraction] = (Fraction(1, 3), Fraction(2, 3), Fraction(5, 7)),
    n: int = 8,
    seeds: int = 100,
    first_seed: int = 0,
) -> SuiteReport:
    report = SuiteReport("oracle")
    sched = schedule_for(n)
    tol = Fraction(2, 1 << n)
    for x in xs:
        exact = eval_f_rational(x, n).result
        for seed in range(first_seed, first_seed + seeds):
            phi = make_dithered_oracle(x, seed)
            rep = eval_f_oracle(phi, n)
            report.checked += 1
            if abs(rep.result - exact).to_fraction() > tol:
                report.failures.append(f"x={format_rational(x)} seed={seed}: too far")
            if rep.max_oracle_precision != sched.oracle_m or phi.stats.max_precision != sched.oracle_m:
                report.failures.append(f"x={format_rational(x)} seed={seed}: precision accounting")
    return report


MODULUS_PROBES = (Fraction(0), Fraction(1, 3), Fraction(1, 2), Fraction(2, 3), Fraction(5, 7))


def modulus_pair_gap(m: int, x: Fraction) -> Fraction:
    """Evaluated |F(y) - F(x)| for y = x + 2**-modulus_upper(m), at precision m + 3."""
    y = x + Fraction(1, 1 << modulus_upper(m))
    n_eval = m + 3
    fx = eval_f_rational(x, n_eval).result
    fy = eval_f_rational(y, n_eval).result
    return abs(fy - fx).to_fraction()


def modulus_suite(m_max: int = 6, n_max: int = 10) -> SuiteReport:
    report = SuiteReport("modulus")
    for m in range(m_max + 1):
        limit = Fraction(1, 1 << m) + Fraction(2, 1 << (m + 3))
        for x in MODULUS_PROBES:
            report.checked += 1
            gap = modulus_pair_gap(m, x)
            if gap > limit:
                report.failures.append(f"upper m={m} x={format_rational(x)} gap={float(gap):.3g}")
    rows = {r.m: r for r in modulus_lower_table(n_max)}
    for m, row in rows.items():
        report.checked += 1
        if row.omega_lower > row.omega_upper:
            report.failures.append(f"lower > upper at m={m}")
        later = rows.get(m + 3)
        if later is not None:
            report.checked += 1
            if 2 * later.omega_lower < 3 * row.omega_lower:
                report.failures.append(f"growth m={m}->{m + 3}")
    report.notes.append(
        "omega_lower: " + ", ".join(f"m={m}:{r.omega_lower}" for m, r in rows.items())
    )
    return report


def run_suite(name: str, seed: Optional[int] = None) -> SuiteReport:
    seed = 0 if seed is None else seed
    if name == "alpha":
        return alpha_suite()
    if name == "monotone":
        return monotonicity_suite(200, 8, seed)
    if name == "tail":
        return tail_suite([1, 2, 4, 16, 64])
    if name == "glue":
        return glue_suite()
    if name == "oracle":
        return oracle_suite(first_seed=seed)
    if name == "modulus":
        return modulus_suite()
    raise DomainError(f"unknown suite {name!r}")


SUITES = ("alpha", "monotone", "tail", "glue", "oracle", "modulus")
