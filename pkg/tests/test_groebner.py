import itertools
import random
from fractions import Fraction

import pytest
import sympy as sp
from hypothesis import given, settings
from hypothesis import strategies as st

from tangentcones.groebner import (
    Ideal,
    PreconditionError,
    buchberger,
    elimination_ideal,
    ideal_dimension,
    ideal_member,
    is_groebner,
    is_reduced,
    lowest_form_ideal,
    radical_member,
    s_polynomial,
    variety_contains,
    variety_equal,
)
from tangentcones.poly import GREVLEX, GRLEX, LEX, Polynomial, VariableTable, normal_form, parse_poly
from tangentcones.schubert import x_table

from .conftest import XYZ, polynomials

X3 = x_table(3)
X4 = x_table(4)
P_CELL = "x43*x31 + x42*x21 - x43*x32*x21"
P_CONE = "x43*x31 + x42*x21"


def P(text, table=X3):
    return parse_poly(text, table)


def I(*texts, table=X3):
    return Ideal([parse_poly(t, table) for t in texts], table)


# --- independent oracle: sympy's Groebner bases

def sympy_basis(polys, table, order):
    syms = sp.symbols(" ".join(table.names))
    syms = syms if isinstance(syms, tuple) else (syms,)
    exprs = [sp.sympify(str(p).replace("^", "**"), locals=dict(zip(table.names, syms))) for p in polys]
    gb = sp.groebner(exprs, *syms, order=order)
    out = []
    for g in gb.exprs:
        poly = sp.Poly(g, *syms)
        terms = {m: Fraction(int(c.p), int(c.q)) for m, c in poly.terms()}
        out.append(Polynomial(table, terms))
    return out


@pytest.mark.parametrize("order, name", [(LEX, "lex"), (GRLEX, "grlex"), (GREVLEX, "grevlex")])
@settings(max_examples=40, deadline=None)
@given(st.lists(polynomials(max_terms=3), min_size=1, max_size=3))
def test_buchberger_matches_sympy(order, name, gens):
    gens = [g for g in gens if g]
    if not gens:
        return
    ours = buchberger(gens, order).basis
    theirs = [g.monic(order) for g in sympy_basis(gens, XYZ, name)]
    assert set(ours) == set(theirs)
    assert is_groebner(ours, order) and is_reduced(ours, order)


def test_s_polynomial_examples():
    f, g = P("x41"), P(P_CELL)
    s = s_polynomial(f, g, GREVLEX)
    # leading monomials are coprime, so the S-polynomial reduces to zero
    assert normal_form(s, [f, g], GREVLEX)[0].is_zero()
    assert s_polynomial(g, g, GREVLEX).is_zero()
    T = VariableTable(("x", "y"))
    assert s_polynomial(parse_poly("x^2", T), parse_poly("x*y", T), LEX).is_zero()
    s = s_polynomial(parse_poly("x^2 + y", T), parse_poly("x*y + 1", T), LEX)
    assert s == parse_poly("y^2 - x", T)


def test_buchberger_examples():
    gb = buchberger(I("x41", P_CELL), GREVLEX)
    assert set(gb.basis) == {P("x41"), P(P_CELL).monic(GREVLEX)}
    p = P(P_CONE)
    assert buchberger(I(P_CONE, P_CONE)).basis == (p.monic(GREVLEX),)
    assert buchberger(Ideal([X3.one()])).is_unit()
    assert buchberger(I("x21 + 1", "x21")).is_unit()


def test_graph_ideal_elimination_example():
    table = VariableTable(("t1", "t2", "t3", "t4") + X3.names)
    gens = ["x21 - t2", "x31 - t1*t2", "x41", "x32 - t1 - t4", "x42 - t3*t4", "x43 - t3"]
    elim = elimination_ideal(Ideal([parse_poly(g, table) for g in gens]), 4)
    assert elim.table == X3
    assert set(elim.generators) == {P("x41"), P(P_CELL).monic(GREVLEX)}


def test_elimination_trivial_cases():
    table = VariableTable(("t1",) + X3.names)
    kept = Ideal([parse_poly("x41", table), parse_poly("x41*x21 + x32^2", table)])
    assert set(elimination_ideal(kept, 1).generators) == {P("x41"), P("x32^2")}
    assert elimination_ideal(Ideal([parse_poly("t1", table)]), 1).is_zero()


def test_lowest_form_ideal_examples():
    cone = lowest_form_ideal(I("x41", P_CELL))
    assert set(cone.generators) == {P("x41"), P(P_CONE)}
    homog = I("x41", P_CONE)
    assert set(lowest_form_ideal(homog).generators) == set(homog.generators)
    assert lowest_form_ideal(I("x21 + x21*x32")).generators == (P("x21"),)


def test_lowest_form_ideal_is_not_just_generators():
    # (y - x^2, y) has lowest forms y and x^2; the naive generator-wise answer misses x^2
    T = VariableTable(("x", "y"))
    cone = lowest_form_ideal(Ideal([parse_poly("y - x^2", T), parse_poly("y + x^3", T)]))
    assert set(cone.generators) == {parse_poly("y", T), parse_poly("x^2", T)}


def test_lowest_form_ideal_preconditions():
    with pytest.raises(PreconditionError):
        lowest_form_ideal(I("x41 + 1"))
    with pytest.raises(PreconditionError):
        lowest_form_ideal(Ideal([X3.one()]))
    assert lowest_form_ideal(Ideal([], X3)).is_zero()


def test_member_examples():
    gb = buchberger(I("x41"))
    assert ideal_member(P("x41*x21"), gb)
    assert not ideal_member(P("x32"), gb)
    cone_gb = buchberger(lowest_form_ideal(I("x41", P_CELL)))
    assert ideal_member(P(P_CONE), cone_gb)


def test_radical_member_examples():
    assert radical_member(P("x41"), I("x41^2"))
    assert not radical_member(P("x21"), I("x41"))
    assert radical_member(P("x51*x52 + x41*x52", X4), I("x51", "x41*x52", table=X4))
    assert radical_member(P("x41*x52", X4), I("x51", "x41*x52", table=X4))
    T = VariableTable(("x", "y"))
    # x*y vanishes where x^2 = y^2 = 0 only via the radical
    assert radical_member(parse_poly("x + y", T), Ideal([parse_poly("x^2", T), parse_poly("y^3", T)]))
    assert not radical_member(parse_poly("x", T), Ideal([parse_poly("x*y", T)]))


def test_variety_comparison_examples():
    assert variety_equal(I("x41", P_CONE), I("x41", P_CONE, "x41*x21"))
    X2 = x_table(2)
    assert not variety_equal(I("x31", "x32", table=X2), I("x31", "x21", table=X2))
    assert variety_equal(Ideal([], X3), Ideal([], X3))
    assert variety_contains(I("x41"), I("x41", P_CONE))
    assert not variety_contains(I("x41", P_CONE), I("x41"))


def dimension_oracle(ideal):
    """Largest coordinate subset S with I ∩ K[S] = 0, via sympy elimination."""
    table = ideal.table
    n = len(table)
    if not ideal.generators:
        return n
    for size in range(n, -1, -1):
        for S in itertools.combinations(range(n), size):
            rest = [i for i in range(n) if i not in S]
            names = [table.names[i] for i in rest] + [table.names[i] for i in S]
            t2 = VariableTable(tuple(names))
            gens = [g.change_table(t2) for g in ideal.generators]
            gb = sympy_basis(gens, t2, "lex")
            k = len(rest)
            if not any(all(not any(m[:k]) for m in g.terms) for g in gb):
                return size
    return -1


def test_dimension_examples():
    cone = I("x41", P_CONE)
    assert ideal_dimension(cone) == 4
    assert dimension_oracle(cone) == 4
    assert ideal_dimension(Ideal([], X3)) == 6
    assert ideal_dimension(I(*X3.names)) == 0
    assert ideal_dimension(I("x41 + 1", "x41")) == -1


@settings(max_examples=25, deadline=None)
@given(st.lists(polynomials(max_terms=2), min_size=1, max_size=2))
def test_dimension_matches_oracle(gens):
    gens = [g - g.constant_term() for g in gens]
    gens = [g for g in gens if g]
    if not gens:
        return
    ideal = Ideal(gens, XYZ)
    assert ideal_dimension(ideal) == dimension_oracle(ideal)


def test_canonical_under_permutation():
    rng = random.Random(3)
    gens = [P("x21*x32 - x41"), P("x31^2 - x42*x21"), P("x43*x31 + x42*x21 - x43*x32*x21"), P("x41*x42 - x21")]
    ref = buchberger(gens, GREVLEX).basis
    for _ in range(10):
        rng.shuffle(gens)
        assert buchberger([g.scale(rng.choice([1, -2, Fraction(1, 3)])) for g in gens], GREVLEX).basis == ref
