"""The Weyl group of type A_n, i.e. the symmetric group on {1, ..., n+1}.

Permutations compose as functions: ``compose(u, v)(i) == u(v(i))``.  A word
``[a1, ..., al]`` stands for the product ``s_a1 * ... * s_al`` where ``s_a``
swaps ``a`` and ``a+1``.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from typing import Iterator, Sequence


class CycleSyntaxError(ValueError):
    pass


@dataclass(frozen=True, order=True)
class Permutation:
    one_line: tuple[int, ...]

    def __post_init__(self):
        ol = tuple(self.one_line)
        object.__setattr__(self, "one_line", ol)
        if sorted(ol) != list(range(1, len(ol) + 1)):
            raise ValueError(f"not a permutation of 1..{len(ol)}: {ol}")

    @classmethod
    def identity(cls, size: int) -> "Permutation":
        return cls(tuple(range(1, size + 1)))

    @classmethod
    def simple(cls, i: int, size: int) -> "Permutation":
        if not 1 <= i < size:
            raise ValueError(f"simple reflection s_{i} out of range for S_{size}")
        ol = list(range(1, size + 1))
        ol[i - 1], ol[i] = ol[i], ol[i - 1]
        return cls(tuple(ol))

    @property
    def size(self) -> int:
        return len(self.one_line)

    @property
    def rank(self) -> int:
        return len(self.one_line) - 1

    def __call__(self, i: int) -> int:
        return self.one_line[i - 1]

    def __mul__(self, other: "Permutation") -> "Permutation":
        return compose(self, other)

    def is_identity(self) -> bool:
        return all(v == i for i, v in enumerate(self.one_line, 1))

    def __str__(self):
        return print_cycles(self)


def compose(u: Permutation, v: Permutation) -> Permutation:
    """``u * v``: apply ``v`` first."""
    if u.size != v.size:
        raise ValueError(f"size mismatch: S_{u.size} vs S_{v.size}")
    return Permutation(tuple(u(v(i)) for i in range(1, v.size + 1)))


def inverse(w: Permutation) -> Permutation:
    inv = [0] * w.size
    for i, v in enumerate(w.one_line, 1):
        inv[v - 1] = i
    return Permutation(tuple(inv))


def length(w: Permutation) -> int:
    """Inversion count."""
    ol = w.one_line
    return sum(1 for i, j in itertools.combinations(range(len(ol)), 2) if ol[i] > ol[j])


def word_product(word: Sequence[int], size: int) -> Permutation:
    w = Permutation.identity(size)
    for a in word:
        w = compose(w, Permutation.simple(a, size))
    return w


def reduced_word(w: Permutation) -> list[int]:
    """Reduced word built by repeatedly peeling off the smallest left descent."""
    word = []
    cur = w
    while True:
        inv = inverse(cur).one_line
        for i in range(1, cur.size):
            # s_i is a left descent iff i+1 appears before i in one-line notation
            if inv[i - 1] > inv[i]:
                word.append(i)
                cur = compose(Permutation.simple(i, cur.size), cur)
                break
        else:
            return word


def is_reduced_word(word: Sequence[int], w: Permutation) -> bool:
    return len(word) == length(w) and word_product(word, w.size) == w


def cycles(w: Permutation) -> list[tuple[int, ...]]:
    """Nontrivial cycles, each starting at its smallest point, sorted."""
    seen = set()
    out = []
    for start in range(1, w.size + 1):
        if start in seen:
            continue
        cyc = [start]
        seen.add(start)
        j = w(start)
        while j != start:
            cyc.append(j)
            seen.add(j)
            j = w(j)
        if len(cyc) > 1:
            out.append(tuple(cyc))
    return out


def print_cycles(w: Permutation) -> str:
    cs = cycles(w)
    if not cs:
        return "e"
    return "".join("(" + "".join(str(p) for p in c) + ")" for c in cs)


_CYCLE_RE = re.compile(r"\(([^()]*)\)")


def parse_cycles(text: str, n: int) -> Permutation:
    """Parse disjoint-cycle notation such as ``"(13)(24)"`` in S_{n+1}.

    Points are single digits; ``"e"`` is the identity.
    """
    size = n + 1
    if size > 9:
        raise CycleSyntaxError("cycle notation supports at most 9 points")
    s = text.strip()
    if s == "e":
        return Permutation.identity(size)
    if not s:
        raise CycleSyntaxError("empty permutation string")
    image = list(range(1, size + 1))
    used: set[int] = set()
    pos = 0
    while pos < len(s):
        if s[pos].isspace():
            pos += 1
            continue
        m = _CYCLE_RE.match(s, pos)
        if m is None:
            raise CycleSyntaxError(f"malformed cycle notation at position {pos}: {text!r}")
        body = m.group(1).replace(" ", "")
        if not body or not body.isdigit():
            raise CycleSyntaxError(f"bad cycle {m.group(0)!r} in {text!r}")
        pts = [int(ch) for ch in body]
        for p in pts:
            if not 1 <= p <= size:
                raise CycleSyntaxError(f"point {p} out of range 1..{size} in {text!r}")
            if p in used:
                raise CycleSyntaxError(f"point {p} repeated in {text!r}")
            used.add(p)
        for a, b in zip(pts, pts[1:] + pts[:1]):
            image[a - 1] = b
        pos = m.end()
    return Permutation(tuple(image))


def cycle_type(w: Permutation) -> tuple[int, ...]:
    """Cycle lengths including fixed points, in decreasing order."""
    lengths = [len(c) for c in cycles(w)]
    lengths += [1] * (w.size - sum(lengths))
    return tuple(sorted(lengths, reverse=True))


def is_conjugate(u: Permutation, v: Permutation) -> bool:
    return u.size == v.size and cycle_type(u) == cycle_type(v)


def enumerate_group(n: int) -> Iterator[Permutation]:
    """All of S_{n+1} in lexicographic one-line order."""
    if n < 0:
        raise ValueError("rank must be nonnegative")
    for ol in itertools.permutations(range(1, n + 2)):
        yield Permutation(ol)


def longest_element(n: int) -> Permutation:
    return Permutation(tuple(range(n + 1, 0, -1)))


def coxeter_elements(n: int) -> list[Permutation]:
    """Products of all n simple reflections, each used once, in every order."""
    found = {word_product(order, n + 1) for order in itertools.permutations(range(1, n + 1))}
    return sorted(found)
