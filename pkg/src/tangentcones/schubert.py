"""Tangent cones of type-A Schubert varieties at the origin.

The pipeline: reduced word -> product of lower elementary matrices in
parameters t1..tl -> graph ideal in (t, x) -> eliminate t -> cell ideal in the
coordinates x_ij (i > j) of the big cell -> ideal of lowest forms.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence

from .groebner import (
    Ideal,
    buchberger,
    elimination_ideal,
    ideal_dimension,
    lowest_form_ideal,
    radical_member,
)
from .poly import GREVLEX, Polynomial, VariableTable
from .weyl import Permutation, is_reduced_word, length, reduced_word


def x_name(i: int, j: int) -> str:
    return f"x{i}{j}"


@lru_cache(maxsize=None)
def x_table(n: int) -> VariableTable:
    """Coordinates of the strictly lower part of an (n+1)x(n+1) matrix, row-major."""
    return VariableTable(tuple(x_name(i, j) for i in range(2, n + 2) for j in range(1, i)))


@lru_cache(maxsize=None)
def t_table(l: int) -> VariableTable:
    return VariableTable(tuple(f"t{k}" for k in range(1, l + 1)))


def lower_positions(n: int) -> list[tuple[int, int]]:
    return [(i, j) for i in range(2, n + 2) for j in range(1, i)]


Matrix = list  # list[list[Polynomial]], 1-based math indices stored 0-based


def identity_matrix(size: int, table: VariableTable) -> Matrix:
    zero, one = table.zero(), table.one()
    return [[one if r == c else zero for c in range(size)] for r in range(size)]


def elementary_matrix(i: int, t: Polynomial, n: int) -> Matrix:
    """Identity plus ``t`` in entry (i+1, i): the one-parameter subgroup of the
    negative simple root alpha_i."""
    if not 1 <= i <= n:
        raise ValueError(f"simple root index {i} out of range 1..{n}")
    m = identity_matrix(n + 1, t.table)
    m[i][i - 1] = t
    return m


def matmul(a: Matrix, b: Matrix) -> Matrix:
    size = len(a)
    zero = a[0][0].table.zero()
    out = []
    for r in range(size):
        row = []
        for c in range(size):
            acc = zero
            for k in range(size):
                if a[r][k] and b[k][c]:
                    acc = acc + a[r][k] * b[k][c]
            row.append(acc)
        out.append(row)
    return out


def is_lower_unitriangular(m: Matrix) -> bool:
    size = len(m)
    for r in range(size):
        for c in range(size):
            v = m[r][c]
            if r == c and v != 1:
                return False
            if c > r and v:
                return False
    return True


def parametrization(word: Sequence[int], n: int) -> dict[str, Polynomial]:
    """Coordinates of x_{-a1}(t1) ... x_{-al}(tl) as polynomials in t1..tl."""
    table = t_table(len(word))
    m = identity_matrix(n + 1, table)
    for k, a in enumerate(word, 1):
        m = matmul(m, elementary_matrix(a, table.var(f"t{k}"), n))
    return {x_name(i, j): m[i - 1][j - 1] for i, j in lower_positions(n)}


@dataclass(frozen=True)
class CellIdeal:
    ideal: Ideal
    w: Permutation
    n: int
    word: tuple[int, ...]


@dataclass(frozen=True)
class TangentCone:
    ideal: Ideal
    w: Permutation
    n: int
    length: int
    dimension: int

    @property
    def dimension_ok(self) -> bool:
        return self.dimension == self.length

    @property
    def generators(self) -> tuple[Polynomial, ...]:
        return self.ideal.generators


def graph_ideal(word: Sequence[int], n: int) -> Ideal:
    """x_ij - F_ij(t) in the ring with t1..tl ahead of the x's."""
    l = len(word)
    xt = x_table(n)
    table = t_table(l).extended(*xt.names)
    par = parametrization(word, n)
    gens = []
    for name in xt.names:
        gens.append(table.var(name) - par[name].change_table(table))
    return Ideal(gens, table)


def cell_ideal(w: Permutation, n: int | None = None, word: Sequence[int] | None = None) -> CellIdeal:
    """Defining ideal of the Schubert variety in the big cell, in the x's."""
    n = w.rank if n is None else n
    if w.size != n + 1:
        raise ValueError(f"{w} is not in S_{n + 1}")
    if word is None:
        word = reduced_word(w)
    elif not is_reduced_word(word, w):
        raise ValueError(f"{list(word)} is not a reduced word for {w}")
    word = tuple(word)
    elim = elimination_ideal(graph_ideal(word, n), len(word))
    return CellIdeal(elim, w, n, word)


def tangent_cone(w: Permutation, n: int | None = None, word: Sequence[int] | None = None) -> TangentCone:
    n = w.rank if n is None else n
    cell = cell_ideal(w, n, word)
    cone = lowest_form_ideal(cell.ideal)
    return TangentCone(cone, w, n, length(w), ideal_dimension(cone))


def cone_from_generators(gens: Sequence[Polynomial], w: Permutation, n: int) -> TangentCone:
    """Rebuild a cone record from stored reduced-basis generators."""
    ideal = Ideal(gens, x_table(n))
    return TangentCone(ideal, w, n, length(w), ideal_dimension(ideal))


def coordinate_ideal(names: Sequence[str], n: int) -> Ideal:
    table = x_table(n)
    return Ideal([table.var(nm) for nm in names], table)


def coxeter_cone(n: int) -> Ideal:
    """Linear forms dual to the non-simple positive roots: x_ij with i - j >= 2."""
    return coordinate_ideal([x_name(i, j) for i, j in lower_positions(n) if i - j >= 2], n)


def subsystem_embed(cone: Ideal, k: int, a: int, n: int) -> Ideal:
    """Move a rank-k cone onto the consecutive window of points a..a+k inside rank n.

    Coordinates outside the window block are added as generators.
    """
    if a < 1 or a + k > n + 1 or k > n:
        raise ValueError(f"window of rank {k} starting at {a} does not fit in rank {n}")
    big = x_table(n)
    shift = a - 1
    rename = {x_name(i, j): x_name(i + shift, j + shift) for i, j in lower_positions(k)}
    gens = [g.change_table(big, rename) for g in cone.generators]
    window = range(a, a + k + 1)
    for i, j in lower_positions(n):
        if i not in window or j not in window:
            gens.append(big.var(x_name(i, j)))
    return Ideal(buchberger(Ideal(gens, big), GREVLEX).basis, big)


def embed_permutation(w: Permutation, a: int, n: int) -> Permutation:
    """Let ``w`` in S_{k+1} act on a..a+k inside S_{n+1}."""
    k = w.rank
    if a < 1 or a + k > n + 1:
        raise ValueError("window out of range")
    ol = list(range(1, n + 2))
    for i in range(1, k + 2):
        ol[a + i - 2] = w(i) + a - 1
    return Permutation(tuple(ol))


# --------------------------------------------------------------------------
# coadjoint action of the Borel subalgebra


def chevalley_generators(n: int) -> list[tuple[str, dict[tuple[int, int], int]]]:
    """Diagonal h_k = E_kk - E_{k+1,k+1} and upper e_k = E_{k,k+1}, k = 1..n."""
    gens = []
    for k in range(1, n + 1):
        gens.append((f"h{k}", {(k, k): 1, (k + 1, k + 1): -1}))
    for k in range(1, n + 1):
        gens.append((f"e{k}", {(k, k + 1): 1}))
    return gens


def coadjoint_derivation(xi: dict[tuple[int, int], int], n: int) -> dict[str, Polynomial]:
    """Images of the coordinates under X -> strictly-lower part of [xi, X]."""
    table = x_table(n)
    size = n + 1

    def X(a, b):
        return table.var(x_name(a, b)) if a > b else table.zero()

    out = {}
    for i, j in lower_positions(n):
        acc = table.zero()
        for (p, q), c in xi.items():
            # (xi X)_ij = sum_q xi_iq X_qj ; (X xi)_ij = sum_p X_ip xi_pj
            if p == i:
                acc = acc + X(q, j).scale(c)
            if q == j:
                acc = acc - X(i, p).scale(c)
        out[x_name(i, j)] = acc
    assert len(out) == size * (size - 1) // 2
    return out


def apply_derivation(images: dict[str, Polynomial], f: Polynomial) -> Polynomial:
    result = f.table.zero()
    for name in f.variables():
        result = result + f.derivative(name) * images[name]
    return result


def ad_invariance_failures(cone: TangentCone) -> list[tuple[str, Polynomial, Polynomial]]:
    """(generator name, cone generator, image) triples whose image leaves the radical."""
    failures = []
    for name, xi in chevalley_generators(cone.n):
        images = coadjoint_derivation(xi, cone.n)
        for g in cone.generators:
            d = apply_derivation(images, g)
            if not radical_member(d, cone.ideal):
                failures.append((name, g, d))
    return failures
