import dataclasses
from fractions import Fraction

import pytest

from expreal.analysis import (
    alpha_suite,
    certification_precision,
    certify_witness,
    glue_suite,
    make_witness,
    make_witness_at,
    modulus_lower_table,
    modulus_pair_gap,
    modulus_upper,
    monotonicity_suite,
    oracle_suite,
    run_suite,
    tail_suite,
)
from expreal.construction import beta, eval_f_rational
from expreal.errors import DomainError


def test_witness_examples():
    w = make_witness(2)
    assert (w.x, w.delta, w.q, w.jump_lower_bound) == (Fraction(1, 2), Fraction(1, 4), 2, Fraction(1, 8))
    assert Fraction(5, 8) < w.x + w.delta
    w = make_witness(3)
    assert (w.x, w.delta, w.jump_lower_bound) == (Fraction(1, 3), Fraction(1, 8), Fraction(1, 27))
    assert Fraction(1, 24) < w.delta


@pytest.mark.parametrize("n", range(2, 30))
def test_witness_invariants(n):
    w = make_witness(n)
    assert w.violations() == []
    assert w.n <= w.q <= w.n**2 and w.p == 1


def test_witness_rejects_small_n():
    for n in (0, 1):
        with pytest.raises(DomainError):
            make_witness(n)


@pytest.mark.parametrize(
    "x, n, q, p",
    [(Fraction(1, 2), 5, 8, 4), (Fraction(1, 3), 7, 9, 3), (Fraction(2, 3), 3, 3, 2)],
)
def test_witness_at_examples(x, n, q, p):
    w = make_witness_at(x, n)
    assert (w.q, w.p, w.x) == (q, p, x)
    assert w.jump_lower_bound == Fraction(1, q**3) >= Fraction(1, n**6)
    assert w.violations() == []


@pytest.mark.parametrize(
    "x, n", [(Fraction(1, 5), 4), (Fraction(0), 4), (Fraction(1), 4), (Fraction(3, 4), 1), (Fraction(1, 2), 1)]
)
def test_witness_at_domain_errors(x, n):
    with pytest.raises(DomainError):
        make_witness_at(x, n)


def test_ramp_jump_is_exact():
    """The level-q term alone contributes exactly 1/q^3 across a witness."""
    for n in range(2, 9):
        w = make_witness(n)
        rise = beta(w.p, w.q, w.x + w.delta) - beta(w.p, w.q, w.x)
        assert rise / w.q**2 == w.jump_lower_bound


@pytest.mark.parametrize("n", [2, 3, 4, 6])
def test_certify_witness(n):
    w = make_witness(n)
    c = certify_witness(w)
    n_eval = certification_precision(w.q)
    assert 2 ** (n_eval - 1) >= 4 * w.q**3
    assert c.eval_precision == n_eval
    assert c.certified
    assert c.measured_jump.to_fraction() >= w.jump_lower_bound - Fraction(2, 2**n_eval)
    assert c.guaranteed_jump >= w.jump_lower_bound / 2


def test_corrupted_witness_fails():
    # delta inside the level-2 ramp: that ramp now contributes only half its rise,
    # and at x = 1/2 no other ramp makes up the difference
    w = make_witness(2)
    bad = dataclasses.replace(w, delta=Fraction(1, 2 ** (w.q + 1) * w.q))
    assert "ramp width < delta" in bad.violations()
    assert not certify_witness(bad).certified


def test_modulus_upper_examples():
    assert modulus_upper(0) == 6
    assert modulus_upper(3) == 37
    with pytest.raises(DomainError):
        modulus_upper(-1)


def test_modulus_upper_spot_check():
    x = Fraction(1, 3)
    y = x + Fraction(1, 2 ** modulus_upper(3))
    fx = eval_f_rational(x, 6).result
    fy = eval_f_rational(y, 6).result
    assert abs(fy - fx).to_fraction() <= Fraction(1, 8) + Fraction(1, 32)


@pytest.mark.parametrize("m", range(0, 5))
def test_modulus_pair_gap_bounded(m):
    for x in (Fraction(0), Fraction(1, 2), Fraction(2, 3)):
        assert modulus_pair_gap(m, x) <= Fraction(1, 2**m) + Fraction(2, 2 ** (m + 3))


def test_modulus_lower_table():
    rows = modulus_lower_table(10)
    assert [r.m for r in rows] == list(range(4, 10))
    m3 = rows[0]
    assert (m3.m, m3.omega_upper, m3.witness_n, m3.omega_lower) == (4, 70, 2, 3)
    lowers = [r.omega_lower for r in rows]
    assert lowers == sorted(lowers)
    for r in rows:
        assert r.omega_lower <= r.omega_upper
        assert r.jump_achieved > Fraction(1, 2**r.m)
        assert r.jump_guaranteed > Fraction(1, 2**r.m)
        assert r.jump_paper_form == r.jump_achieved**2
    by_m = {r.m: r for r in rows}
    for m in by_m:
        if m + 3 in by_m:
            assert by_m[m + 3].omega_lower >= 2 * by_m[m].omega_lower - 1


def test_modulus_lower_table_rejects_tiny_family():
    with pytest.raises(DomainError):
        modulus_lower_table(1)
    assert modulus_lower_table(2) == []


def test_monotonicity_suite():
    report = monotonicity_suite(200, 8, seed=1)
    assert report.passed and report.checked == 200


def test_monotone_endpoint_and_degenerate_pairs():
    n = 8
    f0 = eval_f_rational(Fraction(0), n).result.to_fraction()
    f1 = eval_f_rational(Fraction(1), n).result.to_fraction()
    assert f1 - f0 >= 1 - Fraction(2, 2**n) > 0
    x = Fraction(4, 9)
    assert eval_f_rational(x, n).result == eval_f_rational(x, n).result


def test_tail_suite():
    report = tail_suite([1, 4, 64])
    assert report.passed and report.checked == 3
    assert "0.2210" in report.notes[1]


@pytest.mark.parametrize("suite", [alpha_suite, glue_suite])
def test_exact_suites_pass(suite):
    assert suite().passed


def test_oracle_suite_small():
    report = oracle_suite(seeds=10)
    assert report.passed and report.checked == 30


def test_run_suite_unknown():
    with pytest.raises(DomainError):
        run_suite("nope")
