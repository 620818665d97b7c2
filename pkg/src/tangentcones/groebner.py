"""Buchberger's algorithm and ideal-level operations built on it.

The engine works on integer-coefficient term dictionaries internally
(fraction-free reduction with content removal) and hands back reduced,
monic bases over the rationals.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import gcd, lcm
from typing import Iterable, Sequence

from .poly import (
    GREVLEX,
    MonomialOrder,
    Polynomial,
    TableMismatchError,
    VariableTable,
    dehomogenize,
    elimination_order,
    homogenize,
    local_degree_order,
    monomial_coprime,
    monomial_divides,
    monomial_lcm,
    normal_form,
)


class PreconditionError(ValueError):
    pass


@dataclass(frozen=True)
class Ideal:
    generators: tuple[Polynomial, ...]
    table: VariableTable

    def __init__(self, generators: Iterable[Polynomial], table: VariableTable | None = None):
        gens = tuple(g for g in generators if g)
        if table is None:
            if not gens:
                raise ValueError("table required for an ideal without generators")
            table = gens[0].table
        for g in gens:
            if g.table != table:
                raise TableMismatchError("generators over different variable tables")
        object.__setattr__(self, "generators", gens)
        object.__setattr__(self, "table", table)

    def __iter__(self):
        return iter(self.generators)

    def __len__(self):
        return len(self.generators)

    def is_zero(self) -> bool:
        return not self.generators

    def __str__(self):
        return "(" + ", ".join(str(g) for g in self.generators) + ")"


@dataclass(frozen=True)
class GroebnerBasis:
    basis: tuple[Polynomial, ...]
    order: MonomialOrder
    table: VariableTable
    reduced: bool = True

    def __iter__(self):
        return iter(self.basis)

    def __len__(self):
        return len(self.basis)

    def is_unit(self) -> bool:
        return len(self.basis) == 1 and self.basis[0].is_constant()

    def leading_monomials(self) -> list[tuple]:
        return [g.leading_monomial(self.order) for g in self.basis]

    def ideal(self) -> Ideal:
        return Ideal(self.basis, self.table)


# --------------------------------------------------------------------------
# integer-coefficient engine


def _keyfunc(order: MonomialOrder):
    cache: dict = {}
    okey = order.key

    def key(m):
        k = cache.get(m)
        if k is None:
            k = cache[m] = okey(m)
        return k

    return key


def _to_int_terms(p: Polynomial) -> dict:
    den = 1
    for c in p.terms.values():
        den = lcm(den, c.denominator)
    terms = {m: int(c * den) for m, c in p.terms.items()}
    return _primitive(terms)


def _primitive(terms: dict) -> dict:
    g = 0
    for c in terms.values():
        g = gcd(g, c)
        if g == 1:
            return terms
    if g > 1:
        return {m: c // g for m, c in terms.items()}
    return terms


class _Element:
    __slots__ = ("lm", "lc", "terms")

    def __init__(self, terms: dict, key):
        self.terms = terms
        self.lm = max(terms, key=key)
        self.lc = terms[self.lm]


def _reduce(terms: dict, basis: Sequence[_Element], key, full: bool = True) -> dict:
    """Fraction-free reduction of ``terms`` modulo ``basis``; result is primitive."""
    work = dict(terms)
    rem: dict = {}
    while work:
        m = max(work, key=key)
        c = work[m]
        for g in basis:
            glm = g.lm
            if all(a <= b for a, b in zip(glm, m)):
                a = g.lc
                d = gcd(a, c)
                fa, fc = a // d, c // d
                if fa < 0:
                    fa, fc = -fa, -fc
                if fa != 1:
                    for t in work:
                        work[t] *= fa
                    for t in rem:
                        rem[t] *= fa
                    if _coeffs_large(work):
                        work = _primitive_joint(work, rem)
                shift = tuple([x - y for x, y in zip(m, glm)])
                for gm, gc in g.terms.items():
                    t = tuple([x + y for x, y in zip(gm, shift)])
                    s = work.get(t, 0) - fc * gc
                    if s:
                        work[t] = s
                    else:
                        del work[t]
                break
        else:
            if not full:
                rem.update(work)
                break
            rem[m] = c
            del work[m]
    return _primitive(rem) if rem else rem


def _coeffs_large(work: dict) -> bool:
    # content is only worth clearing once coefficients have grown
    for c in work.values():
        if c > 1 << 64 or c < -(1 << 64):
            return True
    return False


def _primitive_joint(work: dict, rem: dict) -> dict:
    g = 0
    for c in itertools.chain(work.values(), rem.values()):
        g = gcd(g, c)
        if g == 1:
            return work
    if g > 1:
        for t in rem:
            rem[t] //= g
        return {m: c // g for m, c in work.items()}
    return work


def _spoly_terms(f: _Element, g: _Element) -> dict:
    L = monomial_lcm(f.lm, g.lm)
    sf = tuple([x - y for x, y in zip(L, f.lm)])
    sg = tuple([x - y for x, y in zip(L, g.lm)])
    d = gcd(f.lc, g.lc)
    af, ag = g.lc // d, f.lc // d
    out: dict = {}
    for m, c in f.terms.items():
        t = tuple([x + y for x, y in zip(m, sf)])
        out[t] = out.get(t, 0) + af * c
    for m, c in g.terms.items():
        t = tuple([x + y for x, y in zip(m, sg)])
        s = out.get(t, 0) - ag * c
        if s:
            out[t] = s
        else:
            out.pop(t, None)
    return {m: c for m, c in out.items() if c}


def _update(G: list[int], B: list[tuple[int, int]], h: int, E: list[_Element]):
    # Gebauer-Moeller installation of a new element
    lmh = E[h].lm
    C = [(h, g) for g in G]
    D = []
    while C:
        _, g = pair = C.pop()
        lmg = E[g].lm
        lcm_hg = monomial_lcm(lmh, lmg)

        def lcm_divides(ip):
            return monomial_divides(monomial_lcm(lmh, E[ip[1]].lm), lcm_hg)

        if monomial_coprime(lmh, lmg) or (
            not any(lcm_divides(p) for p in C) and not any(lcm_divides(p) for p in D)
        ):
            D.append(pair)
    new_pairs = [p for p in D if not monomial_coprime(lmh, E[p[1]].lm)]
    B_new = []
    for g1, g2 in B:
        lm1, lm2 = E[g1].lm, E[g2].lm
        L = monomial_lcm(lm1, lm2)
        if (
            not monomial_divides(lmh, L)
            or monomial_lcm(lm1, lmh) == L
            or monomial_lcm(lm2, lmh) == L
        ):
            B_new.append((g1, g2))
    B_new.extend(new_pairs)
    G_new = [g for g in G if not monomial_divides(lmh, E[g].lm)]
    G_new.append(h)
    return G_new, B_new


def _groebner_terms(polys: list[dict], order: MonomialOrder) -> list[dict]:
    """Reduced Groebner basis of integer term dicts; each output is primitive
    with positive leading coefficient."""
    key = _keyfunc(order)
    polys = [p for p in polys if p]
    if not polys:
        return []
    n = len(next(iter(polys[0])))
    one = (0,) * n
    E: list[_Element] = []
    G: list[int] = []
    B: list[tuple[int, int]] = []

    def install(terms):
        nonlocal G, B
        E.append(_Element(terms, key))
        G, B = _update(G, B, len(E) - 1, E)

    # start from an interreduced, sorted input for determinism
    polys = sorted(polys, key=lambda p: key(max(p, key=key)))
    for p in polys:
        r = _reduce(p, [E[i] for i in G], key)
        if r:
            if len(r) == 1 and one in r:
                return [{one: 1}]
            install(r)

    while B:
        best = min(B, key=lambda p: (key(monomial_lcm(E[p[0]].lm, E[p[1]].lm)), p))
        B.remove(best)
        s = _spoly_terms(E[best[0]], E[best[1]])
        if not s:
            continue
        r = _reduce(s, [E[i] for i in G], key)
        if r:
            if len(r) == 1 and one in r:
                return [{one: 1}]
            install(r)

    # inter-reduce the minimal basis
    basis = sorted((E[i] for i in G), key=lambda e: key(e.lm))
    out: list[dict] = []
    for i, e in enumerate(basis):
        others = basis[:i] + basis[i + 1 :]
        r = _reduce(e.terms, others, key)
        lm = max(r, key=key)
        if r[lm] < 0:
            r = {m: -c for m, c in r.items()}
        out.append(r)
    return out


def _monic(table: VariableTable, terms: dict, order: MonomialOrder) -> Polynomial:
    lm = max(terms, key=order.key)
    lc = terms[lm]
    return Polynomial._raw(table, {m: Fraction(c, lc) for m, c in terms.items()})


# --------------------------------------------------------------------------
# public API


def s_polynomial(f: Polynomial, g: Polynomial, order: MonomialOrder) -> Polynomial:
    """``(L/LT(f))*f - (L/LT(g))*g`` with ``L`` the lcm of the leading monomials."""
    if not f or not g:
        raise ValueError("S-polynomial of a zero polynomial")
    f._check(g)
    mf, cf = f.leading_term(order)
    mg, cg = g.leading_term(order)
    L = monomial_lcm(mf, mg)
    a = f.mul_term(tuple(x - y for x, y in zip(L, mf)), 1 / cf)
    b = g.mul_term(tuple(x - y for x, y in zip(L, mg)), 1 / cg)
    return a - b


def buchberger(ideal: Ideal | Sequence[Polynomial], order: MonomialOrder = GREVLEX) -> GroebnerBasis:
    """Reduced Groebner basis; elements monic and sorted by increasing leading monomial."""
    if not isinstance(ideal, Ideal):
        ideal = Ideal(ideal)
    return _buchberger_cached(ideal.generators, ideal.table, order)


def clear_cache() -> None:
    """Forget memoised bases (for timing runs)."""
    _buchberger_cached.cache_clear()


@lru_cache(maxsize=4096)
def _buchberger_cached(gens: tuple[Polynomial, ...], table: VariableTable, order: MonomialOrder) -> GroebnerBasis:
    terms = _groebner_terms([_to_int_terms(g) for g in gens], order)
    basis = tuple(_monic(table, t, order) for t in terms)
    return GroebnerBasis(basis, order, table, True)


def reduce_polynomial(f: Polynomial, gb: GroebnerBasis) -> Polynomial:
    """Remainder of ``f`` modulo a Groebner basis (unique for the basis' order)."""
    if not gb.basis:
        return f
    return normal_form(f, list(gb.basis), gb.order)[0]


def is_groebner(basis: Sequence[Polynomial], order: MonomialOrder) -> bool:
    """Check that every S-polynomial of ``basis`` reduces to zero."""
    basis = [g for g in basis if g]
    for f, g in itertools.combinations(basis, 2):
        s = s_polynomial(f, g, order)
        if s and normal_form(s, basis, order)[0]:
            return False
    return True


def is_reduced(basis: Sequence[Polynomial], order: MonomialOrder) -> bool:
    leads = [g.leading_term(order) for g in basis]
    if any(c != 1 for _, c in leads):
        return False
    for i, g in enumerate(basis):
        for j, (lm, _) in enumerate(leads):
            if i != j and any(monomial_divides(lm, m) for m in g.terms):
                return False
    return True


def ideal_member(f: Polynomial, gb: GroebnerBasis) -> bool:
    if not f:
        return True
    if gb.is_unit():
        return True
    if not gb.basis:
        return False
    return not reduce_polynomial(f, gb)


def elimination_ideal(ideal: Ideal, k: int) -> Ideal:
    """Intersect with the ring of the variables after the first ``k``.

    Uses a block order, graded reverse lex in each block.  The result lives
    over the table of the kept variables and its generators form the reduced
    Groebner basis there.
    """
    table = ideal.table
    if not 0 <= k <= len(table):
        raise ValueError("bad elimination count")
    kept = VariableTable(table.names[k:])
    gb = buchberger(ideal, elimination_order(k))
    gens = []
    for g in gb.basis:
        if all(not any(m[:k]) for m in g.terms):
            gens.append(g.change_table(kept))
    return Ideal(gens, kept)


def _check_local(ideal: Ideal) -> None:
    for g in ideal.generators:
        if g.constant_term():
            raise PreconditionError(f"generator {g} does not vanish at the origin")


def lowest_form_ideal(ideal: Ideal) -> Ideal:
    """Ideal of lowest forms of all members of ``ideal``.

    Homogenize a graded Groebner basis with a fresh variable ``h``, recompute
    under a graded order in which higher powers of ``h`` win ties, then
    dehomogenize and keep lowest forms.  Returned as the reduced graded
    reverse lex basis.
    """
    _check_local(ideal)
    table = ideal.table
    if ideal.is_zero():
        return Ideal((), table)
    gb = buchberger(ideal, GREVLEX)
    if gb.is_unit():
        raise PreconditionError("unit ideal has no tangent cone")
    h = "_h"
    while h in table:
        h += "_"
    ext = table.extended(h)
    homog = [homogenize(g.change_table(ext), h) for g in gb.basis]
    order = local_degree_order(len(ext), len(ext) - 1)
    hgb = buchberger(Ideal(homog, ext), order)
    lows = []
    for g in hgb.basis:
        lows.append(dehomogenize(g, h).lowest_form().change_table(table))
    out = buchberger(Ideal(lows, table), GREVLEX)
    return Ideal(out.basis, table)


def _fresh(table: VariableTable, base: str) -> str:
    name = base
    while name in table:
        name += "_"
    return name


def radical_member(f: Polynomial, ideal: Ideal) -> bool:
    """Does ``f`` vanish on V(ideal)?  Decided by ``1 in ideal + (1 - y*f)``."""
    table = ideal.table
    if f.table != table:
        raise TableMismatchError("polynomial and ideal over different tables")
    if not f:
        return True
    gb = buchberger(ideal, GREVLEX)
    if ideal_member(f, gb):
        return True
    y = _fresh(table, "_y")
    ext = table.extended(y, front=True)
    gens = [g.change_table(ext) for g in gb.basis]
    gens.append(1 - Polynomial.variable(ext, y) * f.change_table(ext))
    return buchberger(Ideal(gens, ext), GREVLEX).is_unit()


def variety_contains(I: Ideal, J: Ideal) -> bool:
    """True iff V(J) is a subset of V(I), i.e. every generator of I lies in the radical of J."""
    return radical_witness(I, J) is None


def radical_witness(I: Ideal, J: Ideal) -> Polynomial | None:
    """A generator of ``I`` outside the radical of ``J``, or None."""
    if I.table != J.table:
        raise TableMismatchError("ideals over different tables")
    for g in I.generators:
        if not radical_member(g, J):
            return g
    return None


def variety_equal(I: Ideal, J: Ideal) -> bool:
    return variety_contains(I, J) and variety_contains(J, I)


def scheme_equal(I: Ideal, J: Ideal, order: MonomialOrder = GREVLEX) -> bool:
    return buchberger(I, order).basis == buchberger(J, order).basis


def max_independent_set(leads: Sequence[tuple], nvars: int) -> tuple[int, ...]:
    """Largest variable subset containing the support of no leading monomial.

    Brute force over subsets by decreasing size; the first hit in
    lexicographic index order is returned.
    """
    supports = [frozenset(i for i, e in enumerate(m) if e) for m in leads]
    for size in range(nvars, -1, -1):
        for S in itertools.combinations(range(nvars), size):
            s = set(S)
            if not any(sup <= s for sup in supports):
                return S
    return ()


def ideal_dimension(ideal: Ideal) -> int:
    """Krull dimension of V(ideal); -1 for the unit ideal."""
    n = len(ideal.table)
    if ideal.is_zero():
        return n
    gb = buchberger(ideal, GREVLEX)
    if gb.is_unit():
        return -1
    return len(max_independent_set(gb.leading_monomials(), n))
