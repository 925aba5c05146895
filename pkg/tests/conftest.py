from fractions import Fraction

import pytest
from hypothesis import strategies as st


@st.composite
def unit_rationals(draw, max_den=10**6):
    den = draw(st.integers(min_value=1, max_value=max_den))
    num = draw(st.integers(min_value=0, max_value=den))
    return Fraction(num, den)


@st.composite
def rationals(draw, max_den=10**6, max_abs=10**6):
    den = draw(st.integers(min_value=1, max_value=max_den))
    num = draw(st.integers(min_value=-max_abs, max_value=max_abs))
    return Fraction(num, den)


@pytest.fixture
def thirds():
    return [Fraction(1, 3), Fraction(2, 3)]


ACCEPTANCE_RESULTS: dict[int, tuple[bool, str]] = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(ACCEPTANCE_RESULTS):
        ok, detail = ACCEPTANCE_RESULTS[number]
        terminalreporter.write_line(f"criterion {number}: {'PASS' if ok else 'FAIL'}  {detail}")
