from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from conftest import unit_rationals
from expreal.cauchy import QueryStats, make_dithered_oracle, make_rational_oracle, stats
from expreal.errors import DomainError
from expreal.exact import Dyadic


def test_rational_oracle_examples():
    assert make_rational_oracle(Fraction(1, 3)).query(2) == Dyadic(1, -2)
    assert make_rational_oracle(Fraction(1, 2)).query(10) == Dyadic(1, -1)
    assert make_rational_oracle(Fraction(2, 3)).query(3) == Dyadic(5, -3)


@pytest.mark.parametrize("factory", [make_rational_oracle, lambda x: make_dithered_oracle(x, 0)])
@pytest.mark.parametrize("x", [Fraction(-1, 2), Fraction(3, 2)])
def test_oracles_reject_points_outside_unit_interval(factory, x):
    with pytest.raises(DomainError):
        factory(x)


def test_stats_accounting():
    phi = make_rational_oracle(Fraction(1, 3))
    assert stats(phi) == QueryStats(0, 0)
    phi.query(5)
    phi.query(3)
    assert stats(phi) == QueryStats(2, 5)


@given(unit_rationals(), st.integers(0, 10**6), st.lists(st.integers(0, 300), min_size=1, max_size=20))
def test_oracles_are_honest(x, seed, precisions):
    for phi in (make_rational_oracle(x), make_dithered_oracle(x, seed)):
        for count, n in enumerate(precisions, start=1):
            assert abs(phi.query(n).to_fraction() - x) <= Fraction(1, 2**n)
            assert phi.stats.query_count == count
        assert phi.stats.max_precision == max(precisions)


@given(st.integers(0, 200), st.integers(0, 2**32))
def test_dithered_zero_stays_in_band(n, seed):
    answer = make_dithered_oracle(Fraction(0), seed).query(n).to_fraction()
    assert -Fraction(1, 2**n) <= answer <= Fraction(1, 2**n)


def test_dithered_replay_is_deterministic():
    ns = [3, 17, 4, 64, 64, 0]
    a = make_dithered_oracle(Fraction(5, 7), 42)
    b = make_dithered_oracle(Fraction(5, 7), 42)
    assert [a.query(n) for n in ns] == [b.query(n) for n in ns]


def test_dither_actually_moves_answers():
    answers = {make_dithered_oracle(Fraction(1, 3), s).query(20) for s in range(50)}
    assert len(answers) > 10
    below = [a for a in answers if a.to_fraction() < Fraction(1, 3)]
    assert below and len(below) < len(answers)


def test_negative_precision_rejected():
    with pytest.raises(DomainError):
        make_rational_oracle(Fraction(1, 2)).query(-1)
