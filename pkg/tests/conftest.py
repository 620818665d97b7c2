from fractions import Fraction

import pytest
from hypothesis import strategies as st

from tangentcones.poly import Polynomial, VariableTable
from tangentcones.verify import ConeStore

XYZ = VariableTable(("x", "y", "z"))

rationals = st.fractions(min_value=-20, max_value=20, max_denominator=12)
small_ints = st.integers(min_value=-5, max_value=5)
monomials = st.tuples(*[st.integers(min_value=0, max_value=3)] * 3)


@st.composite
def polynomials(draw, table=XYZ, max_terms=4, coeffs=small_ints):
    n = len(table)
    mono = st.tuples(*[st.integers(min_value=0, max_value=2)] * n)
    terms = draw(st.dictionaries(mono, coeffs, max_size=max_terms))
    return Polynomial(table, {m: Fraction(c) for m, c in terms.items()})


@pytest.fixture(scope="session")
def store():
    """Cones for ranks 1-4, computed once per test session."""
    s = ConeStore()
    for n in (1, 2, 3, 4):
        s.cones(n)
    return s


def pytest_terminal_summary(terminalreporter):
    from . import test_acceptance

    if test_acceptance.RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in sorted(test_acceptance.RESULTS):
            terminalreporter.write_line(line)
