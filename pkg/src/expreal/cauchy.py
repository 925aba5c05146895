"""Cauchy-function oracles for reals in [0, 1].

An oracle for a real x answers ``query(n)`` with a dyadic within ``2**-n``
of x. Each query is counted as one unit of cost; the oracle also records
the largest precision ever requested.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Optional

from .errors import DomainError
from .exact import Dyadic, check_unit_interval, round_to_dyadic

# Extra random bits below 2**-(n+1) used by the dithered oracle.
DITHER_BITS = 8


@dataclass(frozen=True)
class QueryStats:
    query_count: int = 0
    max_precision: int = 0


class CauchyOracle:
    """Precision-indexed approximator with query accounting.

    ``value`` is the exact real being represented when it is known (the
    oracles built here always know it); it is used only by tests and
    diagnostics, never by evaluators.
    """

    def __init__(self, approximator: Callable[[int], Dyadic], value: Optional[Fraction] = None):
        self._approximator = approximator
        self.value = value
        self._count = 0
        self._max_precision = 0

    def query(self, n: int) -> Dyadic:
        if n < 0:
            raise DomainError(f"precision must be nonnegative, got {n}")
        self._count += 1
        if n > self._max_precision:
            self._max_precision = n
        return self._approximator(n)

    __call__ = query

    @property
    def stats(self) -> QueryStats:
        return QueryStats(self._count, self._max_precision)


def stats(oracle: CauchyOracle) -> QueryStats:
    return oracle.stats


def make_rational_oracle(x: Fraction) -> CauchyOracle:
    """Oracle answering the nearest ``n``-bit dyadic to a rational x."""
    x = Fraction(x)
    check_unit_interval(x)
    return CauchyOracle(lambda n: round_to_dyadic(x, n), value=x)


def make_dithered_oracle(x: Fraction, seed: int) -> CauchyOracle:
    """Honest oracle whose answers wobble pseudo-randomly around x.

    ``query(n)`` rounds x to ``n + 1`` bits and adds a seeded offset of
    magnitude at most ``2**-(n+1)``, so answers may land on either side of x
    (and slightly outside [0, 1] near the endpoints) while staying within
    ``2**-n``.
    """
    x = Fraction(x)
    check_unit_interval(x)
    rng = random.Random(seed)
    half = 1 << DITHER_BITS

    def approximate(n: int) -> Dyadic:
        base = round_to_dyadic(x, n + 1)
        offset = Dyadic(rng.randint(-half, half), -(n + 1 + DITHER_BITS))
        return base + offset

    return CauchyOracle(approximate, value=x)
