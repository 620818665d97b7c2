"""Multivariate polynomials over the rationals.

A polynomial is a sparse map from exponent tuples to nonzero
:class:`~fractions.Fraction` coefficients, tied to a :class:`VariableTable`.
Terms are stored unordered; monomial orders are separate objects that turn an
exponent tuple into a sort key, so the same polynomial can be viewed under
several orders (elimination, graded, local).
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Iterator, Mapping, Sequence

from .scalar import format_rational

Monomial = tuple  # tuple[int, ...], one exponent per table variable

MAX_EXPONENT = 2**31 - 1


class TableMismatchError(ValueError):
    pass


class PolynomialSyntaxError(ValueError):
    def __init__(self, message: str, position: int):
        super().__init__(f"{message} at position {position}")
        self.position = position


class UnknownVariableError(ValueError):
    pass


@dataclass(frozen=True)
class VariableTable:
    names: tuple[str, ...]
    index: Mapping[str, int] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        names = tuple(self.names)
        object.__setattr__(self, "names", names)
        if len(set(names)) != len(names):
            raise ValueError(f"duplicate variable names in {names}")
        object.__setattr__(self, "index", {n: i for i, n in enumerate(names)})

    def __len__(self) -> int:
        return len(self.names)

    def __iter__(self) -> Iterator[str]:
        return iter(self.names)

    def __contains__(self, name: object) -> bool:
        return name in self.index

    def var(self, name: str) -> "Polynomial":
        return Polynomial.variable(self, name)

    def vars(self) -> list["Polynomial"]:
        return [Polynomial.variable(self, n) for n in self.names]

    def extended(self, *names: str, front: bool = False) -> "VariableTable":
        if front:
            return VariableTable(tuple(names) + self.names)
        return VariableTable(self.names + tuple(names))

    def zero(self) -> "Polynomial":
        return Polynomial(self, {})

    def one(self) -> "Polynomial":
        return Polynomial.constant(self, 1)


# --------------------------------------------------------------------------
# monomial orders


class MonomialOrder:
    """Total, multiplicative well-order on exponent tuples.

    ``key(m)`` returns a tuple; a larger key means a larger monomial.
    """

    def key(self, m: Monomial) -> tuple:
        raise NotImplementedError

    def __call__(self, m: Monomial) -> tuple:
        return self.key(m)

    def compare(self, a: Monomial, b: Monomial) -> int:
        ka, kb = self.key(a), self.key(b)
        return (ka > kb) - (ka < kb)


@dataclass(frozen=True)
class Lex(MonomialOrder):
    def key(self, m):
        return m

    def __str__(self):
        return "lex"


@dataclass(frozen=True)
class GradedLex(MonomialOrder):
    def key(self, m):
        return (sum(m), m)

    def __str__(self):
        return "grlex"


@dataclass(frozen=True)
class GradedRevLex(MonomialOrder):
    def key(self, m):
        return (sum(m), tuple([-e for e in reversed(m)]))

    def __str__(self):
        return "grevlex"


@dataclass(frozen=True)
class BlockOrder(MonomialOrder):
    """First ``k`` variables compared by ``outer``; ties broken on the rest by ``inner``.

    Any monomial involving the first block dominates every monomial free of
    it, which is the elimination property.
    """

    k: int
    outer: MonomialOrder = GradedRevLex()
    inner: MonomialOrder = GradedRevLex()

    def key(self, m):
        return (self.outer.key(m[: self.k]), self.inner.key(m[self.k :]))

    def __str__(self):
        return f"block({self.k}, {self.outer}, {self.inner})"


@dataclass(frozen=True)
class WeightOrder(MonomialOrder):
    """Compare by integer weight vectors in turn, then by ``tiebreak``.

    With nonnegative weights whose first row is strictly positive this is a
    well-order.
    """

    weights: tuple[tuple[int, ...], ...]
    tiebreak: MonomialOrder = GradedRevLex()

    def __post_init__(self):
        if not self.weights or any(w <= 0 for w in self.weights[0]):
            raise ValueError("first weight row must be strictly positive")

    def key(self, m):
        ws = tuple(sum(w * e for w, e in zip(row, m)) for row in self.weights)
        return (ws, self.tiebreak.key(m))

    def __str__(self):
        return f"weight({self.weights}, {self.tiebreak})"


LEX = Lex()
GRLEX = GradedLex()
GREVLEX = GradedRevLex()


def elimination_order(k: int) -> BlockOrder:
    return BlockOrder(k, GREVLEX, GREVLEX)


def local_degree_order(nvars: int, h_index: int) -> WeightOrder:
    """Graded order on ``nvars`` variables in which, within a degree, a larger
    power of variable ``h_index`` makes a monomial larger.

    On polynomials homogeneous in all variables the leading term then sits in
    the lowest-degree part of the dehomogenization.
    """
    ones = tuple([1] * nvars)
    unit = tuple(1 if i == h_index else 0 for i in range(nvars))
    return WeightOrder((ones, unit), GREVLEX)


def monomial_mul(a: Monomial, b: Monomial) -> Monomial:
    return tuple([x + y for x, y in zip(a, b)])


def monomial_div(a: Monomial, b: Monomial) -> Monomial:
    return tuple([x - y for x, y in zip(a, b)])


def monomial_divides(a: Monomial, b: Monomial) -> bool:
    return all(x <= y for x, y in zip(a, b))


def monomial_lcm(a: Monomial, b: Monomial) -> Monomial:
    return tuple([x if x > y else y for x, y in zip(a, b)])


def monomial_coprime(a: Monomial, b: Monomial) -> bool:
    return all(not (x and y) for x, y in zip(a, b))


# --------------------------------------------------------------------------
# polynomials


class Polynomial:
    __slots__ = ("table", "terms", "_hash")

    def __init__(self, table: VariableTable, terms: Mapping[Monomial, Fraction] | None = None):
        self.table = table
        self.terms: dict[Monomial, Fraction] = {}
        if terms:
            n = len(table)
            for m, c in terms.items():
                if len(m) != n:
                    raise ValueError(f"monomial {m} does not fit table of {n} variables")
                if c:
                    self.terms[tuple(m)] = Fraction(c)
        self._hash = None

    @classmethod
    def _raw(cls, table: VariableTable, terms: dict) -> "Polynomial":
        # trusted constructor: terms already canonical
        p = cls.__new__(cls)
        p.table = table
        p.terms = terms
        p._hash = None
        return p

    @classmethod
    def constant(cls, table: VariableTable, c) -> "Polynomial":
        c = Fraction(c)
        if not c:
            return cls._raw(table, {})
        return cls._raw(table, {(0,) * len(table): c})

    @classmethod
    def variable(cls, table: VariableTable, name: str) -> "Polynomial":
        try:
            i = table.index[name]
        except KeyError:
            raise UnknownVariableError(f"unknown variable {name!r}") from None
        m = tuple(1 if j == i else 0 for j in range(len(table)))
        return cls._raw(table, {m: Fraction(1)})

    @classmethod
    def monomial(cls, table: VariableTable, m: Monomial, c=1) -> "Polynomial":
        return cls(table, {tuple(m): Fraction(c)})

    # --- basic queries

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __len__(self) -> int:
        return len(self.terms)

    def is_constant(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and not any(next(iter(self.terms))))

    def constant_term(self) -> Fraction:
        return self.terms.get((0,) * len(self.table), Fraction(0))

    def total_degree(self) -> int:
        if not self.terms:
            return -1
        return max(sum(m) for m in self.terms)

    def min_degree(self) -> int:
        if not self.terms:
            return -1
        return min(sum(m) for m in self.terms)

    def is_homogeneous(self) -> bool:
        return len({sum(m) for m in self.terms}) <= 1

    def support(self) -> set[int]:
        """Indices of the variables that occur in ``self``."""
        s: set[int] = set()
        for m in self.terms:
            s.update(i for i, e in enumerate(m) if e)
        return s

    def variables(self) -> list[str]:
        return [self.table.names[i] for i in sorted(self.support())]

    # --- arithmetic

    def _check(self, other: "Polynomial") -> None:
        if self.table != other.table:
            raise TableMismatchError(f"variable tables differ: {self.table.names} vs {other.table.names}")

    def _coerce(self, other) -> "Polynomial":
        if isinstance(other, Polynomial):
            self._check(other)
            return other
        if isinstance(other, (int, Fraction)):
            return Polynomial.constant(self.table, other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        terms = dict(self.terms)
        for m, c in other.terms.items():
            s = terms.get(m, 0) + c
            if s:
                terms[m] = s
            else:
                terms.pop(m, None)
        return Polynomial._raw(self.table, terms)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial._raw(self.table, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        terms: dict = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = tuple([a + b for a, b in zip(m1, m2)])
                s = terms.get(m, 0) + c1 * c2
                if s:
                    terms[m] = s
                else:
                    del terms[m]
        return Polynomial._raw(self.table, terms)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            raise ValueError("polynomial powers need a nonnegative integer exponent")
        if k and self.terms and self.total_degree() * k > MAX_EXPONENT:
            raise OverflowError("exponent overflow")
        result = self.table.one()
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def scale(self, c) -> "Polynomial":
        c = Fraction(c)
        if not c:
            return self.table.zero()
        return Polynomial._raw(self.table, {m: c * v for m, v in self.terms.items()})

    def mul_term(self, m: Monomial, c: Fraction) -> "Polynomial":
        return Polynomial._raw(
            self.table, {tuple([a + b for a, b in zip(mm, m)]): c * v for mm, v in self.terms.items()}
        )

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self.table == other.table and self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            return self == Polynomial.constant(self.table, other)
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.table.names, frozenset(self.terms.items())))
        return self._hash

    # --- order-dependent views

    def leading_term(self, order: MonomialOrder) -> tuple[Monomial, Fraction]:
        if not self.terms:
            raise ValueError("leading term of the zero polynomial")
        m = max(self.terms, key=order.key)
        return m, self.terms[m]

    def leading_monomial(self, order: MonomialOrder) -> Monomial:
        return self.leading_term(order)[0]

    def monic(self, order: MonomialOrder) -> "Polynomial":
        if not self.terms:
            return self
        _, c = self.leading_term(order)
        return self.scale(1 / c)

    def sorted_terms(self, order: MonomialOrder, reverse: bool = True) -> list[tuple[Monomial, Fraction]]:
        return sorted(self.terms.items(), key=lambda mc: order.key(mc[0]), reverse=reverse)

    # --- degree structure

    def homogeneous_part(self, d: int) -> "Polynomial":
        return Polynomial._raw(self.table, {m: c for m, c in self.terms.items() if sum(m) == d})

    def lowest_form(self) -> "Polynomial":
        """Sum of the terms of minimal total degree."""
        if not self.terms:
            raise ValueError("lowest form of the zero polynomial")
        return self.homogeneous_part(self.min_degree())

    def highest_form(self) -> "Polynomial":
        if not self.terms:
            raise ValueError("highest form of the zero polynomial")
        return self.homogeneous_part(self.total_degree())

    # --- change of ring

    def change_table(self, table: VariableTable, rename: Mapping[str, str] | None = None) -> "Polynomial":
        """Re-express over ``table``; variables are matched by (renamed) name."""
        rename = rename or {}
        targets = []
        for i, name in enumerate(self.table.names):
            new = rename.get(name, name)
            targets.append(table.index.get(new))
        n = len(table)
        terms: dict = {}
        for m, c in self.terms.items():
            out = [0] * n
            for i, e in enumerate(m):
                if e:
                    j = targets[i]
                    if j is None:
                        raise UnknownVariableError(
                            f"variable {self.table.names[i]!r} has no counterpart in {table.names}"
                        )
                    out[j] += e
            key = tuple(out)
            s = terms.get(key, 0) + c
            if s:
                terms[key] = s
            else:
                terms.pop(key, None)
        return Polynomial._raw(table, terms)

    def substitute(self, values: Mapping[str, "Polynomial | int | Fraction"], table: VariableTable | None = None) -> "Polynomial":
        """Substitute polynomials (over ``table``) for some variables.

        Variables not in ``values`` are carried over by name into ``table``.
        """
        table = self.table if table is None else table
        images = []
        for name in self.table.names:
            if name in values:
                v = values[name]
                images.append(v if isinstance(v, Polynomial) else Polynomial.constant(table, v))
            else:
                images.append(Polynomial.variable(table, name))
        result = table.zero()
        power_cache: dict = {}
        for m, c in self.terms.items():
            term = Polynomial.constant(table, c)
            for i, e in enumerate(m):
                if e:
                    key = (i, e)
                    if key not in power_cache:
                        power_cache[key] = images[i] ** e
                    term = term * power_cache[key]
            result = result + term
        return result

    def evaluate(self, point: Mapping[str, Fraction | int]) -> Fraction:
        total = Fraction(0)
        vals = [Fraction(point[n]) if n in point else None for n in self.table.names]
        for m, c in self.terms.items():
            v = c
            for i, e in enumerate(m):
                if e:
                    if vals[i] is None:
                        raise KeyError(self.table.names[i])
                    v *= vals[i] ** e
            total += v
        return total

    def derivative(self, name: str) -> "Polynomial":
        i = self.table.index[name]
        terms: dict = {}
        for m, c in self.terms.items():
            e = m[i]
            if e:
                mm = m[:i] + (e - 1,) + m[i + 1 :]
                terms[mm] = terms.get(mm, 0) + c * e
        return Polynomial._raw(self.table, {m: c for m, c in terms.items() if c})

    def content_primitive(self) -> "Polynomial":
        """Scale to an integer polynomial with coprime coefficients (sign kept)."""
        from math import gcd, lcm

        if not self.terms:
            return self
        den = 1
        for c in self.terms.values():
            den = lcm(den, c.denominator)
        nums = [int(c * den) for c in self.terms.values()]
        g = 0
        for x in nums:
            g = gcd(g, x)
        return self.scale(Fraction(den, g))

    # --- text

    def __str__(self):
        return print_poly(self)

    def __repr__(self):
        return f"Polynomial({print_poly(self)!r})"


def lowest_form(p: Polynomial) -> Polynomial:
    return p.lowest_form()


def leading_term(p: Polynomial, order: MonomialOrder) -> tuple[Monomial, Fraction]:
    return p.leading_term(order)


def homogenize(p: Polynomial, h: str) -> Polynomial:
    """Homogenize ``p`` to its total degree using variable ``h`` of its table.

    ``p`` must not involve ``h`` already.
    """
    if not p.terms:
        raise ValueError("cannot homogenize the zero polynomial")
    hi = p.table.index[h]
    d = p.total_degree()
    terms = {}
    for m, c in p.terms.items():
        if m[hi]:
            raise ValueError(f"{h} already occurs in the polynomial")
        mm = list(m)
        mm[hi] = d - sum(m)
        terms[tuple(mm)] = c
    return Polynomial._raw(p.table, terms)


def dehomogenize(p: Polynomial, h: str) -> Polynomial:
    """Set ``h = 1``; the result stays over the same table."""
    hi = p.table.index[h]
    terms: dict = {}
    for m, c in p.terms.items():
        mm = m[:hi] + (0,) + m[hi + 1 :]
        s = terms.get(mm, 0) + c
        if s:
            terms[mm] = s
        else:
            terms.pop(mm, None)
    return Polynomial._raw(p.table, terms)


def normal_form(
    p: Polynomial, divisors: Sequence[Polynomial], order: MonomialOrder
) -> tuple[Polynomial, list[Polynomial]]:
    """Multivariate division: ``p = sum(q_i * g_i) + r``.

    Leading terms of ``p`` are removed by the first divisor (in list order)
    whose leading monomial divides them; no term of ``r`` is divisible by any
    divisor's leading monomial.
    """
    if not divisors:
        raise ValueError("empty divisor list")
    for g in divisors:
        p._check(g)
        if not g:
            raise ValueError("zero divisor in normal_form")
    leads = [g.leading_term(order) for g in divisors]
    quotients: list[dict] = [{} for _ in divisors]
    work = dict(p.terms)
    rem: dict = {}
    key = order.key
    while work:
        m = max(work, key=key)
        c = work[m]
        for i, (lm, lc) in enumerate(leads):
            if all(a <= b for a, b in zip(lm, m)):
                qm = tuple([a - b for a, b in zip(m, lm)])
                qc = c / lc
                quotients[i][qm] = quotients[i].get(qm, 0) + qc
                for gm, gc in divisors[i].terms.items():
                    t = tuple([a + b for a, b in zip(gm, qm)])
                    s = work.get(t, 0) - qc * gc
                    if s:
                        work[t] = s
                    else:
                        work.pop(t, None)
                break
        else:
            rem[m] = c
            del work[m]
    table = p.table
    return Polynomial._raw(table, rem), [Polynomial(table, q) for q in quotients]


# --------------------------------------------------------------------------
# text I/O


def _print_key(m: Monomial):
    # ascending degree; within a degree, larger exponents of later variables first
    return (sum(m), tuple([-e for e in reversed(m)]))


def _format_monomial(table: VariableTable, m: Monomial) -> str:
    parts = []
    for i in range(len(m) - 1, -1, -1):
        e = m[i]
        if e == 1:
            parts.append(table.names[i])
        elif e:
            parts.append(f"{table.names[i]}^{e}")
    return "*".join(parts)


def print_poly(p: Polynomial) -> str:
    """Canonical text: explicit ``*`` and ``^``, terms by ascending degree."""
    if not p.terms:
        return "0"
    out = []
    for k, m in enumerate(sorted(p.terms, key=_print_key)):
        c = p.terms[m]
        neg = c < 0
        a = -c if neg else c
        mono = _format_monomial(p.table, m)
        if not mono:
            body = format_rational(a)
        elif a == 1:
            body = mono
        else:
            body = f"{format_rational(a)}*{mono}"
        if k == 0:
            out.append(f"-{body}" if neg else body)
        else:
            out.append(f" - {body}" if neg else f" + {body}")
    return "".join(out)


_TOKEN_RE = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(\*\*|[-+*/^()−]))")


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    tokens = []
    pos = 0
    n = len(text)
    while pos < n:
        if text[pos].isspace():
            pos += 1
            continue
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            raise PolynomialSyntaxError(f"unexpected character {text[pos]!r}", pos)
        start = m.start(m.lastindex)
        if m.group(1) is not None:
            tokens.append(("int", m.group(1), start))
        elif m.group(2) is not None:
            tokens.append(("name", m.group(2), start))
        else:
            op = m.group(3)
            op = {"**": "^", "−": "-"}.get(op, op)
            tokens.append(("op", op, start))
        pos = m.end()
    tokens.append(("end", "", n))
    return tokens


class _Parser:
    def __init__(self, text: str, table: VariableTable):
        self.tokens = _tokenize(text)
        self.i = 0
        self.table = table

    def peek(self):
        return self.tokens[self.i]

    def take(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def expect_op(self, op):
        kind, val, pos = self.take()
        if kind != "op" or val != op:
            raise PolynomialSyntaxError(f"expected {op!r}", pos)

    def parse(self) -> Polynomial:
        p = self.expr()
        kind, val, pos = self.peek()
        if kind != "end":
            raise PolynomialSyntaxError(f"unexpected {val!r}", pos)
        return p

    def expr(self) -> Polynomial:
        p = self.term()
        while True:
            kind, val, _ = self.peek()
            if kind == "op" and val in "+-":
                self.take()
                q = self.term()
                p = p + q if val == "+" else p - q
            else:
                return p

    def term(self) -> Polynomial:
        p = self.unary()
        while True:
            kind, val, pos = self.peek()
            if kind == "op" and val in "*/":
                self.take()
                q = self.unary()
                if val == "*":
                    p = p * q
                else:
                    if not q.is_constant() or q.is_zero():
                        raise PolynomialSyntaxError("division only by a nonzero constant", pos)
                    p = p.scale(1 / q.constant_term())
            else:
                return p

    def unary(self) -> Polynomial:
        kind, val, _ = self.peek()
        if kind == "op" and val in "+-":
            self.take()
            p = self.unary()
            return -p if val == "-" else p
        return self.power()

    def power(self) -> Polynomial:
        base = self.atom()
        kind, val, _ = self.peek()
        if kind == "op" and val == "^":
            self.take()
            k2, v2, p2 = self.take()
            if k2 != "int":
                raise PolynomialSyntaxError("exponent must be a nonnegative integer", p2)
            return base ** int(v2)
        return base

    def atom(self) -> Polynomial:
        kind, val, pos = self.take()
        if kind == "int":
            return Polynomial.constant(self.table, int(val))
        if kind == "name":
            if val not in self.table:
                raise UnknownVariableError(f"unknown variable {val!r} at position {pos}")
            return Polynomial.variable(self.table, val)
        if kind == "op" and val == "(":
            p = self.expr()
            self.expect_op(")")
            return p
        raise PolynomialSyntaxError("expected a number, variable or '('" if kind != "end" else "unexpected end of input", pos)


def parse_poly(text: str, table: VariableTable) -> Polynomial:
    """Parse integers, variable names, ``+ - * / ^`` and parentheses.

    ``/`` is accepted only with a constant divisor so that printed rational
    coefficients read back.
    """
    return _Parser(text, table).parse()


def parse_polys(texts: Iterable[str], table: VariableTable) -> list[Polynomial]:
    return [parse_poly(t, table) for t in texts]
