"""Permutations of {1..m}, the point-permutation map of the marked sphere,
and the parity test that decides liftability to the balanced cover.

Products compose right to left: ``(g * f)(x) == g(f(x))``, so in ``g * f``
the permutation ``f`` acts first.
"""
from __future__ import annotations

import re
from collections import deque
from enum import Enum
from functools import lru_cache
from typing import Iterable, Sequence

from .words import Generator, Word


class UnknownGenerator(KeyError):
    pass


class OddSize(ValueError):
    pass


class IndexOutOfRange(ValueError):
    pass


class Permutation:
    __slots__ = ("images",)

    def __init__(self, images: Sequence[int]):
        imgs = tuple(int(v) for v in images)
        if sorted(imgs) != list(range(1, len(imgs) + 1)):
            raise ValueError(f"not a bijection of 1..{len(imgs)}: {imgs}")
        self.images = imgs

    @classmethod
    def identity(cls, m: int) -> "Permutation":
        return cls(range(1, m + 1))

    @classmethod
    def from_cycles(cls, cycles: Iterable[Sequence[int]], m: int) -> "Permutation":
        img = list(range(1, m + 1))
        for cyc in cycles:
            cyc = list(cyc)
            for pos, v in enumerate(cyc):
                if not 1 <= v <= m:
                    raise IndexOutOfRange(f"point {v} outside 1..{m}")
                img[v - 1] = cyc[(pos + 1) % len(cyc)]
        return cls(img)

    @classmethod
    def transposition(cls, i: int, j: int, m: int) -> "Permutation":
        return cls.from_cycles([(i, j)], m)

    @property
    def degree(self) -> int:
        return len(self.images)

    def __call__(self, v: int) -> int:
        return self.images[v - 1]

    def __mul__(self, other: "Permutation") -> "Permutation":
        if self.degree != other.degree:
            raise ValueError("degree mismatch")
        return Permutation(tuple(self.images[v - 1] for v in other.images))

    def inverse(self) -> "Permutation":
        inv = [0] * self.degree
        for i, v in enumerate(self.images, start=1):
            inv[v - 1] = i
        return Permutation(inv)

    def __pow__(self, e: int) -> "Permutation":
        base = self if e >= 0 else self.inverse()
        out = Permutation.identity(self.degree)
        for _ in range(abs(e)):
            out = out * base
        return out

    def is_identity(self) -> bool:
        return all(v == i for i, v in enumerate(self.images, start=1))

    def __eq__(self, other) -> bool:
        return isinstance(other, Permutation) and self.images == other.images

    def __hash__(self) -> int:
        return hash(self.images)

    def cycles(self) -> list:
        seen, out = set(), []
        for start in range(1, self.degree + 1):
            if start in seen or self(start) == start:
                continue
            cyc, v = [], start
            while v not in seen:
                seen.add(v)
                cyc.append(v)
                v = self(v)
            out.append(tuple(cyc))
        return out

    def __str__(self) -> str:
        cyc = self.cycles()
        if not cyc:
            return "()"
        return "".join("(" + " ".join(str(v) for v in c) + ")" for c in cyc)

    def __repr__(self) -> str:
        return f"Permutation({str(self)!r}, m={self.degree})"


def parse_cycles(text: str, m: int) -> Permutation:
    s = text.strip()
    if not re.fullmatch(r"(\(\s*(\d+\s*)*\)\s*)*", s):
        raise ValueError(f"bad cycle notation: {text!r}")
    cycles = [tuple(int(v) for v in body.split()) for body in re.findall(r"\(([^)]*)\)", s)]
    cycles = [c for c in cycles if len(c) > 1]
    return Permutation.from_cycles(cycles, m)


# ----------------------------------------------------------------- psi

def reversal(m: int) -> Permutation:
    return Permutation(range(m, 0, -1))


@lru_cache(maxsize=None)
def generator_image(g: Generator, m: int) -> Permutation:
    """Image of a single generator under the point-permutation map."""
    fam, idx = g.family, g.indices

    def need(cond):
        if not cond:
            raise IndexOutOfRange(f"{g} not defined for {m} points")

    if fam == "sigma":
        need(1 <= idx[0] <= m - 1)
        return Permutation.transposition(idx[0], idx[0] + 1, m)
    if fam == "h":
        need(1 <= idx[0] <= m - 2)
        return Permutation.transposition(idx[0], idx[0] + 2, m)
    if fam == "hij":
        i, j = idx
        need(1 <= i < j <= m)
        return Permutation.transposition(i, j, m)
    if fam == "a":
        need(1 <= 2 * idx[0] + 1 <= m)
        return Permutation.transposition(2 * idx[0] - 1, 2 * idx[0] + 1, m)
    if fam == "b":
        need(1 <= idx[0] and 2 * idx[0] + 2 <= m)
        return Permutation.transposition(2 * idx[0], 2 * idx[0] + 2, m)
    if fam == "t":
        i, j = idx
        need(0 <= i <= j <= m)
        return Permutation.identity(m)
    if fam == "r":
        return reversal(m)
    raise UnknownGenerator(str(g))


def psi(w: Word, m: int) -> Permutation:
    out = Permutation.identity(m)
    for g, e in w.letters:
        p = generator_image(g, m)
        # every generator image here is an involution except identity
        if p * p == Permutation.identity(m):
            if e % 2:
                out = out * p
        else:
            out = out * p ** e
    return out


# --------------------------------------------------------------- parity

class ParityClass(Enum):
    PRESERVING = "preserving"
    REVERSING = "reversing"
    NEITHER = "neither"

    @property
    def liftable(self) -> bool:
        return self is not ParityClass.NEITHER

    def __mul__(self, other: "ParityClass") -> "ParityClass":
        if ParityClass.NEITHER in (self, other):
            raise ValueError("product with a non-liftable class is not determined")
        if self is other:
            return ParityClass.PRESERVING
        return ParityClass.REVERSING


def parity_class(p: Permutation) -> ParityClass:
    m = p.degree
    if m % 2:
        raise OddSize(f"parity classes need an even number of points, got {m}")
    odd = set(range(1, m + 1, 2))
    image = {p(v) for v in odd}
    if image == odd:
        return ParityClass.PRESERVING
    if not image & odd:
        return ParityClass.REVERSING
    return ParityClass.NEITHER


def is_liftable(w: Word, n: int) -> ParityClass:
    return parity_class(psi(w, 2 * n + 2))


def w_star_membership(p: Permutation) -> bool:
    m = p.degree
    if m % 2:
        raise OddSize(str(m))
    return parity_class(p) is ParityClass.PRESERVING and p(m) == m


def w_order(n: int, starred: bool = False) -> int:
    from math import factorial
    if starred:
        return factorial(n + 1) * factorial(n)
    return 2 * factorial(n + 1) ** 2


def curve_lifts(i: int, j: int, n: int, k: int) -> bool:
    """Whether the round curve around points i..j lifts to closed curves.

    A loop around points i..j has monodromy (#odd - #even) mod k, which is
    0 for an even count of points and +-1 otherwise; k >= 3 so +-1 != 0.
    """
    if not 1 <= i < j <= 2 * n + 2:
        raise IndexOutOfRange(f"curve ({i},{j}) outside 1..{2 * n + 2}")
    if k < 2:
        raise ValueError("k must be at least 2")
    odd = sum(1 for v in range(i, j + 1) if v % 2)
    even = (j - i + 1) - odd
    return (odd - even) % k == 0


def closure(gens: Iterable[Permutation], m: int) -> set:
    """Subgroup generated by ``gens`` (breadth-first, small degrees only)."""
    gens = list(gens)
    e = Permutation.identity(m)
    seen = {e}
    queue = deque([e])
    while queue:
        p = queue.popleft()
        for g in gens:
            q = g * p
            if q not in seen:
                seen.add(q)
                queue.append(q)
    return seen


def w_group(n: int, starred: bool = False) -> set:
    """All permutations of 1..2n+2 in the parity subgroup (or its point stabilizer)."""
    from itertools import permutations
    m = 2 * n + 2
    out = set()
    for imgs in permutations(range(1, m + 1)):
        p = Permutation(imgs)
        c = parity_class(p)
        if starred:
            if c is ParityClass.PRESERVING and p(m) == m:
                out.add(p)
        elif c is not ParityClass.NEITHER:
            out.add(p)
    return out
