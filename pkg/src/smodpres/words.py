"""Free-group words over named generator families.

A word is stored as a tuple of ``(Generator, exponent)`` runs and is kept
freely reduced at all times: adjacent runs never share a generator and no
exponent is zero.  The text form is ``t[1,2]^-3 * h[4] * r`` and the empty
word prints as ``1``.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Callable, Iterable, Mapping, Sequence, Tuple, Union

FAMILIES = ("sigma", "h", "t", "a", "b", "r", "hij", "x", "zeta", "custom")

# printed name of each family; sigma is written ``s`` in text
_TEXT_NAME = {"sigma": "s", "h": "h", "t": "t", "a": "a", "b": "b", "r": "r",
              "hij": "hij", "x": "x", "zeta": "zeta"}
_FROM_TEXT = {v: k for k, v in _TEXT_NAME.items()}

_ARITY = {"sigma": 1, "h": 1, "t": 2, "a": 1, "b": 1, "r": 0, "hij": 2,
          "x": 1, "zeta": (0, 1)}


class MissingImage(KeyError):
    """A substitution map has no image for some generator."""


class WordSyntaxError(ValueError):
    pass


@dataclass(frozen=True, order=True)
class Generator:
    family: str
    indices: Tuple[int, ...] = ()
    label: str = ""  # only used by the custom family

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise ValueError(f"unknown generator family {self.family!r}")
        object.__setattr__(self, "indices", tuple(int(i) for i in self.indices))
        if any(i < 0 for i in self.indices):
            raise ValueError(f"negative index in {self.family}{self.indices}")
        arity = _ARITY.get(self.family)
        if arity is not None:
            allowed = arity if isinstance(arity, tuple) else (arity,)
            if len(self.indices) not in allowed:
                raise ValueError(f"{self.family} takes {arity} indices, got {self.indices}")
        if self.family == "custom":
            if not re.fullmatch(r"[A-Za-z_][A-Za-z0-9_]*", self.label or ""):
                raise ValueError("custom generators need an identifier label")
            if self.label in _FROM_TEXT:
                raise ValueError(f"label {self.label!r} collides with a family name")

    @property
    def name(self) -> str:
        return self.label if self.family == "custom" else _TEXT_NAME[self.family]

    def __str__(self) -> str:
        if not self.indices:
            return self.name
        return f"{self.name}[{','.join(str(i) for i in self.indices)}]"

    def __repr__(self) -> str:
        return f"Generator({str(self)!r})"


Letter = Tuple[Generator, int]
RawLetter = Union[Generator, Letter]


def _as_letter(item: RawLetter) -> Letter:
    if isinstance(item, Generator):
        return (item, 1)
    g, e = item
    return (g, int(e))


def reduce(raw: Iterable[RawLetter]) -> "Word":
    """Freely reduce a sequence of letters (generators or (generator, exp) pairs)."""
    stack: list = []
    for item in raw:
        g, e = _as_letter(item)
        if e == 0:
            continue
        if stack and stack[-1][0] == g:
            e += stack[-1][1]
            stack.pop()
            if e == 0:
                continue
        stack.append((g, e))
    return Word._trusted(tuple(stack))


class Word:
    """An element of a free group, in freely reduced run-length form."""

    __slots__ = ("letters", "_hash")

    def __init__(self, letters: Iterable[RawLetter] = ()):
        self.letters = reduce(letters).letters
        self._hash = None

    @classmethod
    def _trusted(cls, letters: Tuple[Letter, ...]) -> "Word":
        w = object.__new__(cls)
        w.letters = letters
        w._hash = None
        return w

    @classmethod
    def gen(cls, g: Generator, e: int = 1) -> "Word":
        return cls._trusted(((g, e),) if e else ())

    @classmethod
    def identity(cls) -> "Word":
        return cls._trusted(())

    def __mul__(self, other: "Word") -> "Word":
        if not isinstance(other, Word):
            return NotImplemented
        if not self.letters:
            return other
        if not other.letters:
            return self
        a, b = list(self.letters), other.letters
        k = 0
        while a and k < len(b):
            g, e = b[k]
            if a[-1][0] != g:
                break
            s = a[-1][1] + e
            a.pop()
            k += 1
            if s != 0:
                a.append((g, s))
                break
        return Word._trusted(tuple(a) + tuple(b[k:]))

    def __invert__(self) -> "Word":
        return invert(self)

    def __pow__(self, e: int) -> "Word":
        if e < 0:
            return invert(self) ** (-e)
        out = Word.identity()
        base = self
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    def __eq__(self, other) -> bool:
        return isinstance(other, Word) and self.letters == other.letters

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(self.letters)
        return self._hash

    def __len__(self) -> int:
        return sum(abs(e) for _, e in self.letters)

    def __bool__(self) -> bool:
        return bool(self.letters)

    def __iter__(self):
        return iter(self.letters)

    def __str__(self) -> str:
        return format_word(self)

    def __repr__(self) -> str:
        return f"Word({format_word(self)!r})"

    def generators(self) -> set:
        return {g for g, _ in self.letters}

    def exponent_sum(self, g: Generator) -> int:
        return sum(e for h, e in self.letters if h == g)

    def expand(self) -> list:
        """Single-letter expansion: list of (generator, +-1)."""
        out = []
        for g, e in self.letters:
            s = 1 if e > 0 else -1
            out.extend([(g, s)] * abs(e))
        return out


def invert(w: Word) -> Word:
    return Word._trusted(tuple((g, -e) for g, e in reversed(w.letters)))


def product(words: Iterable[Word]) -> Word:
    out = Word.identity()
    for w in words:
        out = out * w
    return out


def substitute(w: Word, images: Union[Mapping[Generator, Word], Callable[[Generator], Word]]) -> Word:
    """Apply the homomorphism defined by ``images`` to ``w``."""
    lookup = images if callable(images) else images.get
    out = Word.identity()
    cache = {}
    for g, e in w.letters:
        img = cache.get(g)
        if img is None:
            img = lookup(g)
            if img is None:
                raise MissingImage(str(g))
            cache[g] = img
        out = out * (img ** e)
    return out


def cyclically_reduce(w: Word) -> Tuple[Word, Word]:
    """Return ``(core, conjugator)`` with ``w == conjugator * core * conjugator^-1``."""
    letters = list(w.letters)
    conj = []
    # peel only mutually inverse end letters; g^a M g^b with a, b of equal sign is already reduced
    while len(letters) >= 2 and letters[0][0] == letters[-1][0] and letters[0][1] * letters[-1][1] < 0:
        g, e0 = letters[0]
        e1 = letters[-1][1]
        p = min(abs(e0), abs(e1)) * (1 if e0 > 0 else -1)
        conj.append((g, p))
        letters[0], letters[-1] = (g, e0 - p), (g, e1 + p)
        letters = [x for x in letters if x[1]]
    return Word(letters), reduce(conj)


# ---------------------------------------------------------------- text form

def format_word(w: Word) -> str:
    if not w.letters:
        return "1"
    parts = []
    for g, e in w.letters:
        parts.append(str(g) if e == 1 else f"{g}^{e}")
    return " * ".join(parts)


_TOKEN = re.compile(r"\s*([A-Za-z_][A-Za-z0-9_]*)\s*(?:\[\s*([0-9,\s]*)\])?\s*(?:\^\s*([+-]?\d+))?\s*")


def parse_generator(name: str, idx: Sequence[int] = ()) -> Generator:
    fam = _FROM_TEXT.get(name)
    if fam is None:
        return Generator("custom", tuple(idx), name)
    return Generator(fam, tuple(idx))


def parse_word(text: str) -> Word:
    """Parse the canonical text form.  ``1`` or an empty string is the identity."""
    s = text.strip()
    if s in ("", "1"):
        return Word.identity()
    letters = []
    for chunk in s.split("*"):
        m = _TOKEN.fullmatch(chunk)
        if not m:
            raise WordSyntaxError(f"cannot parse {chunk!r} in {text!r}")
        name, idx, exp = m.groups()
        if name == "1" or (name is None):
            raise WordSyntaxError(text)
        indices = tuple(int(v) for v in idx.split(",")) if idx and idx.strip() else ()
        try:
            g = parse_generator(name, indices)
        except ValueError as err:
            raise WordSyntaxError(str(err)) from None
        letters.append((g, int(exp) if exp is not None else 1))
    return Word(letters)


# ------------------------------------------------------------ constructors

def s(i: int, e: int = 1) -> Word:
    return Word.gen(Generator("sigma", (i,)), e)


def h(i: int, e: int = 1) -> Word:
    return Word.gen(Generator("h", (i,)), e)


def t(i: int, j: int, e: int = 1) -> Word:
    return Word.gen(Generator("t", (i, j)), e)


def a(i: int, e: int = 1) -> Word:
    return Word.gen(Generator("a", (i,)), e)


def b(i: int, e: int = 1) -> Word:
    return Word.gen(Generator("b", (i,)), e)


def r(e: int = 1) -> Word:
    return Word.gen(Generator("r"), e)


def x(i: int, e: int = 1) -> Word:
    return Word.gen(Generator("x", (i,)), e)


def commutator(u: Word, v: Word) -> Word:
    return u * v * invert(u) * invert(v)
