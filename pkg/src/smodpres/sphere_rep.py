"""Mapping classes of the m-marked sphere acting on the fundamental group of
the punctured sphere.

The group is free on x_1..x_{m-1}; the last puncture loop is
x_m = (x_1 ... x_{m-1})^-1.  Elements are tuples of nonzero ints, ``+i`` for
x_i and ``-i`` for its inverse, always freely reduced.  A mapping class is
represented by the automorphism it induces; two words give the same mapping
class exactly when their automorphisms differ by an inner automorphism.
"""
from __future__ import annotations

import json
import time
from dataclasses import dataclass
from functools import lru_cache
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from .perm import IndexOutOfRange, Permutation, UnknownGenerator, psi, reversal
from .words import Generator, Word

FreeWord = Tuple[int, ...]


# ----------------------------------------------------------- free group

def fmul(u: FreeWord, v: FreeWord) -> FreeWord:
    """Product of two reduced words, cancelling at the junction."""
    if not u:
        return v
    if not v:
        return u
    k, lu, lv = 0, len(u), len(v)
    while k < lu and k < lv and u[lu - 1 - k] == -v[k]:
        k += 1
    if k == 0:
        return u + v
    return u[: lu - k] + v[k:]


def finv(u: FreeWord) -> FreeWord:
    return tuple(-c for c in reversed(u))


def freduce(letters: Iterable[int]) -> FreeWord:
    out: List[int] = []
    for c in letters:
        if out and out[-1] == -c:
            out.pop()
        else:
            out.append(c)
    return tuple(out)


def fpow(u: FreeWord, e: int) -> FreeWord:
    if e < 0:
        u, e = finv(u), -e
    out: FreeWord = ()
    for _ in range(e):
        out = fmul(out, u)
    return out


def fconj(u: FreeWord, v: FreeWord) -> FreeWord:
    """u v u^-1"""
    return fmul(fmul(u, v), finv(u))


def fcyclic(u: FreeWord) -> Tuple[FreeWord, FreeWord]:
    """Cyclic reduction: returns (core, c) with u = c core c^-1."""
    i, j = 0, len(u) - 1
    while i < j and u[i] == -u[j]:
        i += 1
        j -= 1
    return u[i: j + 1], u[:i]


def fformat(u: FreeWord) -> str:
    if not u:
        return "1"
    return " * ".join(f"x[{abs(c)}]" + ("" if c > 0 else "^-1") for c in u)


# ------------------------------------------------------- automorphisms

class SphereAutomorphism:
    """Images of x_1..x_m (the last one is kept for convenience)."""

    __slots__ = ("m", "images")

    def __init__(self, m: int, images: Sequence[FreeWord]):
        self.m = m
        imgs = tuple(tuple(w) for w in images)
        if len(imgs) == m - 1:
            prod: FreeWord = ()
            for w in imgs:
                prod = fmul(prod, w)
            imgs = imgs + (finv(prod),)
        if len(imgs) != m:
            raise ValueError("need images of x_1..x_{m-1}")
        self.images = imgs

    @classmethod
    def identity(cls, m: int) -> "SphereAutomorphism":
        return cls(m, [(i,) for i in range(1, m)])

    def loop(self, i: int) -> FreeWord:
        return self.images[i - 1]

    def apply(self, w: FreeWord) -> FreeWord:
        out: FreeWord = ()
        for c in w:
            out = fmul(out, self.images[c - 1] if c > 0 else finv(self.images[-c - 1]))
        return out

    def compose(self, other: "SphereAutomorphism") -> "SphereAutomorphism":
        """self o other: apply ``other`` to x_j, then ``self``."""
        return SphereAutomorphism(self.m, [self.apply(other.images[j]) for j in range(self.m)])

    def max_length(self) -> int:
        return max(len(w) for w in self.images)

    def is_identity(self) -> bool:
        return all(self.images[j] == (j + 1,) for j in range(self.m - 1))

    def __eq__(self, other) -> bool:
        return isinstance(other, SphereAutomorphism) and self.images[:-1] == other.images[:-1]

    def __hash__(self) -> int:
        return hash(self.images[:-1])

    def __repr__(self) -> str:
        body = ", ".join(f"x{j + 1}->{fformat(w)}" for j, w in enumerate(self.images[:-1]))
        return f"SphereAutomorphism(m={self.m}: {body})"


def _sigma_step(images: List[FreeWord], i: int, sign: int) -> None:
    """Right-compose ``images`` (an automorphism) with the Artin action of s_i^sign.

    s_i:   x_i -> x_i x_{i+1} x_i^-1, x_{i+1} -> x_i
    s_i^-1: x_i -> x_{i+1},           x_{i+1} -> x_{i+1}^-1 x_i x_{i+1}
    Indices run over 1..m with x_m kept explicitly.
    """
    a, b = images[i - 1], images[i]
    if sign > 0:
        images[i - 1] = fconj(a, b)
        images[i] = a
    else:
        images[i - 1] = b
        images[i] = fconj(finv(b), a)


def artin(gen: Generator, m: int) -> SphereAutomorphism:
    if gen.family != "sigma":
        raise UnknownGenerator(str(gen))
    i = gen.indices[0]
    if not 1 <= i <= m - 1:
        raise IndexOutOfRange(f"{gen} needs 1 <= i <= {m - 1}")
    imgs = [(j,) for j in range(1, m)] + [finv(tuple(range(1, m)))]
    _sigma_step(imgs, i, 1)
    return SphereAutomorphism(m, imgs)


# -------------------------------------------------------- dictionary

def _chain(i: int, j: int) -> List[int]:
    """s_i s_{i+1} ... s_j as signed indices (empty if j < i)."""
    return list(range(i, j + 1))


def half_twist_word(m: int) -> List[int]:
    """Garside half twist (s_1...s_{m-1})(s_1...s_{m-2})...(s_1)."""
    out: List[int] = []
    for top in range(m - 1, 0, -1):
        out.extend(_chain(1, top))
    return out


def sigma_word(g: Generator, m: int) -> List[int]:
    """Braid word (signed s-indices) representing a dictionary generator."""
    fam, idx = g.family, g.indices
    if fam == "sigma":
        i = idx[0]
        if not 1 <= i <= m - 1:
            raise IndexOutOfRange(str(g))
        return [i]
    if fam == "h":
        i = idx[0]
        if not 1 <= i <= m - 2:
            raise IndexOutOfRange(str(g))
        return [i, i + 1, i]
    if fam == "a":
        i = idx[0]
        if not 2 * i + 1 <= m:
            raise IndexOutOfRange(str(g))
        return [2 * i, 2 * i - 1, -2 * i]
    if fam == "b":
        i = idx[0]
        if not 2 * i + 2 <= m:
            raise IndexOutOfRange(str(g))
        return [2 * i + 1, 2 * i, -(2 * i + 1)]
    if fam == "t":
        i, j = idx
        if not (1 <= i and j <= m and i <= j):
            raise IndexOutOfRange(str(g))
        return _chain(i, j - 1) * (j - i + 1)
    if fam == "hij":
        # half twist along an arc from i to j, same side as the a_i / b_i arcs
        i, j = idx
        if not 1 <= i < j <= m:
            raise IndexOutOfRange(str(g))
        lead = list(range(j - 1, i, -1))
        return lead + [i] + [-c for c in reversed(lead)]
    if fam == "r":
        return half_twist_word(m)
    raise UnknownGenerator(str(g))


@lru_cache(maxsize=4096)
def generator_automorphism(g: Generator, m: int, sign: int = 1) -> SphereAutomorphism:
    word = sigma_word(g, m)
    if sign < 0:
        word = [-c for c in reversed(word)]
    imgs = [(j,) for j in range(1, m)] + [finv(tuple(range(1, m)))]
    for c in word:
        _sigma_step(imgs, abs(c), 1 if c > 0 else -1)
    return SphereAutomorphism(m, imgs)


def rep_of_word(w: Word, m: int, track: Optional[list] = None) -> SphereAutomorphism:
    """Automorphism of the word, built left to right as F_w o F_g.

    ``track`` (a list) receives the largest image length seen along the way.
    """
    images = [(j,) for j in range(1, m)] + [finv(tuple(range(1, m)))]
    peak = 1
    for g, e in w.letters:
        step = generator_automorphism(g, m, 1 if e > 0 else -1)
        for _ in range(abs(e)):
            cur = SphereAutomorphism(m, images)
            images = [cur.apply(step.images[j]) for j in range(m)]
            if track is not None:
                peak = max(peak, max(len(v) for v in images))
    if track is not None:
        track.append(peak)
    return SphereAutomorphism(m, images)


def is_inner(f: SphereAutomorphism) -> Optional[FreeWord]:
    """Return u with f(x) = u x u^-1 for every x, or None."""
    m = f.m
    y1 = f.images[0]
    core, c = fcyclic(y1)
    if core != (1,):
        return None
    z = fmul(fmul(finv(c), f.images[1]), c) if m > 2 else ()
    p = 0
    if m > 2:
        # z must be x_1^p x_2 x_1^-p
        while p < len(z) and z[p] == 1:
            p += 1
        if p == 0:
            while p < len(z) and z[p] == -1:
                p += 1
            p = -p
    u = fmul(c, fpow((1,), p))
    for j in range(1, m):
        if f.images[j - 1] != fconj(u, (j,)):
            return None
    return u


def equal_in_mod(w1: Word, w2: Word, m: int) -> bool:
    f = rep_of_word(w1 * (~w2), m)
    return is_inner(f) is not None


def relator_holds(word: Word, m: int, exact: bool = False) -> bool:
    """``exact`` demands the identity automorphism (disk braid group check)."""
    f = rep_of_word(word, m)
    if exact:
        return f.is_identity()
    return is_inner(f) is not None


def check_dictionary(m: int) -> Dict[str, bool]:
    """Sanity checks of the braid dictionary against the permutation map."""
    out = {}
    r_img = psi(Word.gen(Generator("r")), m)
    out["r-permutation"] = r_img == reversal(m)
    word = half_twist_word(m)
    p = Permutation.identity(m)
    for c in word:
        p = p * Permutation.transposition(c, c + 1, m)
    out["r-word-permutation"] = p == reversal(m)
    for i in range(1, m):
        for j in range(i + 1, m + 1):
            q = Permutation.identity(m)
            for c in sigma_word(Generator("t", (i, j)), m):
                q = q * Permutation.transposition(c, c + 1, m)
            if not q.is_identity():
                out[f"t[{i},{j}]-pure"] = False
    out["r-squared-inner"] = is_inner(rep_of_word(Word.gen(Generator("r"), 2), m)) is not None
    return out


# ----------------------------------------------------------- reports

@dataclass
class RelatorResult:
    tag: str
    ok: bool
    max_image_length: int
    elapsed_ms: float

    def line(self) -> str:
        return f"{self.tag} {'OK' if self.ok else 'FAIL'} {self.max_image_length} {self.elapsed_ms:.1f}"

    def as_dict(self) -> dict:
        return {"tag": self.tag, "verdict": "OK" if self.ok else "FAIL",
                "max_image_length": self.max_image_length, "elapsed_ms": round(self.elapsed_ms, 3)}


def verify_words(items: Iterable[Tuple[str, Word]], m: int, exact: bool = False) -> List[RelatorResult]:
    out = []
    for tag, word in items:
        t0 = time.perf_counter()
        peak: list = []
        f = rep_of_word(word, m, track=peak)
        ok = f.is_identity() if exact else is_inner(f) is not None
        out.append(RelatorResult(tag, ok, peak[0], 1000 * (time.perf_counter() - t0)))
    return out


def report_text(results: Sequence[RelatorResult]) -> str:
    return "\n".join(r.line() for r in sorted(results, key=lambda r: r.tag))


def report_json(results: Sequence[RelatorResult]) -> str:
    return json.dumps([r.as_dict() for r in sorted(results, key=lambda r: r.tag)], indent=1)
