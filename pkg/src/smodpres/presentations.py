"""Builders for the finite presentations and their named relation families.

Every relator is stored as a single word.  For two-sided relations
``L = R`` the word is ``L * R^-1``; the tag records which family and which
indices produced it, so the two-sided form can be rebuilt.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from itertools import combinations
from typing import Dict, Iterable, List, Optional, Tuple

from .perm import IndexOutOfRange
from .words import (Generator, Word, commutator, format_word, h, invert,
                    parse_word, product, r, t)

FAMILIES = ("PMod0m", "W", "WStar", "LModBoundary", "LModMarked", "LModClosed",
            "SModBoundary", "SModMarked", "SModClosed")


class InvalidK(ValueError):
    pass


@dataclass(frozen=True)
class Tag:
    kind: str
    label: str = ""
    indices: Tuple[int, ...] = ()

    def __str__(self) -> str:
        lab = f"[{self.label}]" if self.label else ""
        return f"{self.kind}{lab}({','.join(str(i) for i in self.indices)})"

    @classmethod
    def parse(cls, text: str) -> "Tag":
        head, _, rest = text.partition("(")
        kind, _, label = head.partition("[")
        idx = rest.rstrip(")")
        return cls(kind, label.rstrip("]"), tuple(int(v) for v in idx.split(",") if v))


@dataclass(frozen=True)
class Relator:
    tag: Tag
    word: Word
    left: Optional[Word] = None
    right: Optional[Word] = None

    def two_sided(self) -> Tuple[Word, Word]:
        if self.left is None:
            return self.word, Word.identity()
        return self.left, self.right


def _rel(kind, label, idx, left: Word, right: Word = Word.identity()) -> Relator:
    return Relator(Tag(kind, label, tuple(idx)), left * invert(right), left, right)


def _comm(label, idx, u: Word, v: Word) -> Relator:
    return Relator(Tag("Comm", label, tuple(idx)), commutator(u, v), u * v, v * u)


@dataclass
class Presentation:
    family: str
    params: Dict[str, int]
    generators: List[Generator]
    relators: List[Relator] = field(default_factory=list)

    @property
    def n(self) -> Optional[int]:
        return self.params.get("n")

    @property
    def k(self) -> Optional[int]:
        return self.params.get("k")

    def check_declared(self) -> None:
        declared = set(self.generators)
        for rel in self.relators:
            extra = rel.word.generators() - declared
            if extra:
                raise ValueError(f"{rel.tag} uses undeclared {sorted(map(str, extra))}")

    def relators_by_tag(self) -> Dict[str, Relator]:
        return {str(rel.tag): rel for rel in self.relators}

    # -------------------------------------------------------- exports
    def to_json(self) -> str:
        data = {
            "family": self.family,
            "params": dict(sorted(self.params.items())),
            "generators": [str(g) for g in self.generators],
            "relators": [{"tag": str(rel.tag), "word": format_word(rel.word)} for rel in self.relators],
        }
        return json.dumps(data, indent=1)

    def to_text(self) -> str:
        head = ", ".join(f"{k}={v}" for k, v in sorted(self.params.items()))
        lines = [f"# {self.family} {head}",
                 "generators: " + " ".join(str(g) for g in self.generators),
                 f"relators: {len(self.relators)}"]
        for rel in self.relators:
            lhs, rhs = rel.two_sided()
            lines.append(f"{rel.tag}: {format_word(lhs)} = {format_word(rhs)}")
        return "\n".join(lines) + "\n"

    def to_algebra(self) -> str:
        """Free-group quotient syntax understood by common algebra systems."""
        def ident(g: Generator) -> str:
            return g.name + "_".join(str(i) for i in g.indices) if g.indices else g.name

        def render(w: Word) -> str:
            if not w:
                return "One(F)"
            return "*".join(ident(g) + (f"^{e}" if e != 1 else "") for g, e in w.letters)

        names = ", ".join(f'"{ident(g)}"' for g in self.generators)
        lines = [f"F := FreeGroup({names});;"]
        for pos, g in enumerate(self.generators, start=1):
            lines.append(f"{ident(g)} := F.{pos};;")
        rels = ",\n  ".join(render(rel.word) for rel in self.relators)
        lines.append(f"G := F/[\n  {rels}\n];;")
        return "\n".join(lines) + "\n"


def presentation_from_json(text: str) -> Presentation:
    data = json.loads(text)
    gens = [next(iter(parse_word(g).letters))[0] for g in data["generators"]]
    rels = [Relator(Tag.parse(item["tag"]), parse_word(item["word"])) for item in data["relators"]]
    return Presentation(data["family"], dict(data["params"]), gens, rels)


# ------------------------------------------------------------- helpers

def hprod(seq: Iterable[int], e: int = 1) -> Word:
    """h_{s1}^e h_{s2}^e ... in the given order."""
    return product(h(i, e) for i in seq)


def down(a: int, b: int, step: int = 1) -> range:
    """a, a-step, ..., down to b (inclusive, empty if a < b)."""
    return range(a, b - 1, -step)


def up(a: int, b: int, step: int = 1) -> range:
    return range(a, b + 1, step)


class Twists:
    """Twist lookup with the identifications valid in the marked sphere.

    With ``closed`` set, t_{i,2n+2} is rewritten as t_{1,i-1} and the
    degenerate twists t_{i,i}, t_{1,0}, t_{1,2n+2}, t_{2,2n+2} become 1.
    """

    def __init__(self, n: int, closed: bool = False, trivial_top: bool = False):
        self.n = n
        self.closed = closed
        self.trivial_top = trivial_top
        self.aliased = False

    def __call__(self, i: int, j: int, e: int = 1) -> Word:
        n = self.n
        if i == j or (i, j) == (1, 0):
            self.aliased = True
            return Word.identity()
        if j == 2 * n + 2:
            if not self.closed:
                raise IndexOutOfRange(f"t[{i},{j}] needs the closed group")
            self.aliased = True
            if i <= 2:
                return Word.identity()
            return self(1, i - 1, e)
        if self.trivial_top and (i, j) == (1, 2 * n + 1):
            self.aliased = True
            return Word.identity()
        if not 1 <= i < j <= 2 * n + 1:
            raise IndexOutOfRange(f"t[{i},{j}]")
        return t(i, j, e)


def chain_word(i: int, j: int, tw=t) -> Word:
    """Right-hand side of the chain relation expressing t_{i,j} through h's."""
    d = j - i
    if d < 2:
        raise IndexOutOfRange("chain relation needs j - i >= 2")
    if d == 2:
        return h(i, 2)
    if d % 2:
        e = -(d - 3) // 2
        head = product(tw(l, l + 1, e) for l in down(j - 1, i, 2))
        return head * hprod(down(j - 2, i)) ** ((d + 1) // 2)
    e = -(d - 2) // 2
    head = product(tw(l, l + 1, e) for l in down(j - 2, i, 2))
    pal = hprod(down(j - 2, i, 2)) * hprod(up(i, j - 2, 2))
    return head * pal * hprod(down(j - 3, i)) ** (d // 2)


def top_chain_word(n: int, tw=t) -> Word:
    """t_{1,2n}^{1-n} t_{2n-1,2n}^{1-n} ... t_{1,2}^{1-n} (h_{2n} ... h_1)^{n+1}."""
    e = 1 - n
    head = tw(1, 2 * n, e) * product(tw(l, l + 1, e) for l in down(2 * n - 1, 1, 2))
    return head * hprod(down(2 * n, 1)) ** (n + 1)


def _tpairs(top: int) -> List[Tuple[int, int]]:
    return [(i, j) for i in range(1, top + 1) for j in range(i + 1, top + 1)]


def _tt_commute(p, q) -> bool:
    (i, j), (k, l) = p, q
    return j < k or (k <= i and j <= l) or l < i


def _ht_commute(kk: int, i: int, j: int) -> bool:
    return kk + 2 < i or (i <= kk and kk + 2 <= j) or j < kk


def pentagon(i: int, j: int, k: int, l: int, m: int, tw=t) -> Relator:
    left = tw(j, m - 1, -1) * tw(k, m - 1) * tw(j, l - 1) * tw(i, k - 1) * tw(i, l - 1, -1)
    right = tw(i, l - 1, -1) * tw(i, k - 1) * tw(j, l - 1) * tw(k, m - 1) * tw(j, m - 1, -1)
    return _rel("Pentagonal", "", (i, j, k, l, m), left, right)


def chain_relator(i: int, j: int) -> Relator:
    rhs = chain_word(i, j)
    lhs = t(i, j)
    return Relator(Tag("Chain", "", (i, j)), invert(lhs) * rhs, lhs, rhs)


# ---------------------------------------------------------- families

def pmod_presentation(m: int) -> Presentation:
    if m < 1:
        raise IndexOutOfRange("m >= 1")
    pairs = [p for p in _tpairs(m - 1) if p != (1, m - 1)]
    gens = [Generator("t", p) for p in pairs]
    rels: List[Relator] = []
    for p, q in combinations(pairs, 2):
        if _tt_commute(p, q) or _tt_commute(q, p):
            rels.append(_comm("1", p + q, t(*p), t(*q)))
    for c in combinations(range(1, m + 1), 5):
        rels.append(pentagon(*c))
    return Presentation("PMod0m", {"m": m}, gens, rels)


def w_presentation(n: int, starred: bool = False) -> Presentation:
    if n < 1:
        raise IndexOutOfRange("n >= 1")
    top = 2 * n - 1 if starred else 2 * n
    gens = [Generator("h", (i,)) for i in range(1, top + 1)]
    rels = [_rel("Sym", "1", (i,), h(i, 2)) for i in range(1, top + 1)]
    for i in range(1, top + 1):
        for j in range(i + 1, top + 1):
            if j - i == 1 or j - i >= 3:
                rels.append(_comm("2", (i, j), h(i), h(j)))
    for i in range(1, top - 1):
        rels.append(_rel("Sym", "3", (i,), h(i) * h(i + 2) * h(i) * h(i + 2, -1) * h(i, -1) * h(i + 2, -1)))
    if not starred:
        gens.append(Generator("r"))
        rels.append(_rel("Sym", "4", (), r(2)))
        for i in range(1, 2 * n + 1):
            rels.append(_rel("Sym", "5", (i,), r() * h(i), h(2 * n - i + 1) * r()))
    return Presentation("WStar" if starred else "W", {"n": n}, gens, rels)


def _boundary_relators(n: int) -> List[Relator]:
    top_h, top_t = 2 * n - 1, 2 * n + 1
    rels: List[Relator] = []
    # (1) commutation
    for i in range(1, top_h + 1):
        for j in range(i + 3, top_h + 1):
            rels.append(_comm("1a", (i, j), h(i), h(j)))
    pairs = _tpairs(top_t)
    for p, q in combinations(pairs, 2):
        if _tt_commute(p, q) or _tt_commute(q, p):
            rels.append(_comm("1b", p + q, t(*p), t(*q)))
    for kk in range(1, top_h + 1):
        for (i, j) in pairs:
            if _ht_commute(kk, i, j):
                rels.append(_comm("1c", (kk, i, j), h(kk), t(i, j)))
    # (2) h's against adjacent twists
    for i in range(1, 2 * n):
        for e in (1, -1):
            rels.append(_rel("Conj", "2a", (i, e), h(i, e) * t(i, i + 1), t(i + 1, i + 2) * h(i, e)))
    for i in range(1, 2 * n - 1):
        for e in (1, -1):
            rels.append(_rel("Conj", "2b", (i, e), h(i, e) * h(i + 1, e) * t(i, i + 1),
                             t(i + 2, i + 3) * h(i, e) * h(i + 1, e)))
    for i in range(1, 2 * n - 2):
        for e in (1, -1):
            rels.append(_rel("Conj", "2c", (i, e), h(i, e) * h(i + 1, e) * h(i + 2, e) * h(i, e),
                             h(i + 2, e) * h(i, e) * h(i + 1, e) * h(i + 2, e)))
    for i in range(1, 2 * n - 1):
        rels.append(_rel("Conj", "2d", (i,), h(i) * h(i + 1) * t(i, i + 1), t(i, i + 1) * h(i + 1) * h(i)))
    for i in range(1, 2 * n - 2):
        rels.append(_rel("Conj", "2e", (i,), h(i) * h(i + 2) * h(i) * t(i + 1, i + 2, -1),
                         t(i + 2, i + 3, -1) * h(i + 2) * h(i) * h(i + 2)))
    # (3) pentagons
    for c in combinations(range(1, 2 * n + 3), 5):
        rels.append(pentagon(*c))
    # chain relations
    for (i, j) in pairs:
        if j - i >= 2:
            rels.append(chain_relator(i, j))
    return rels


def _generators(n: int, closed: bool) -> List[Generator]:
    top_h = 2 * n if closed else 2 * n - 1
    gens = [Generator("h", (i,)) for i in range(1, top_h + 1)]
    gens += [Generator("t", p) for p in _tpairs(2 * n + 1)]
    if closed:
        gens.append(Generator("r"))
    return gens


def _closed_extras(n: int, smod: bool) -> List[Relator]:
    rels: List[Relator] = []
    top = t(1, 2 * n + 1)
    if smod:
        rels.append(_comm("1d", (2 * n, 1, 2 * n + 1), h(2 * n), top))
    rels.append(_rel("Chain", "4c", (n,), top_chain_word(n)))
    rels.append(_rel("LiftSym", "5a", (), r(2)))
    for i in range(1, 2 * n + 1):
        rels.append(_rel("LiftSym", "5b", (i,), r() * h(i), h(2 * n - i + 1) * r()))
    for i in range(2, 2 * n + 1):
        rels.append(_rel("LiftSym", "5c", (i,), r() * t(i, i + 1),
                         t(2 * n - i + 2, 2 * n - i + 3) * r()))
    for j in range(2, 2 * n + 1):
        if smod and j % 2:
            continue
        rels.append(_rel("LiftSym", "5d", (j,), r() * t(1, j), t(1, 2 * n - j + 2) * r()))
    if smod:
        for j in range(3, 2 * n, 2):
            rels.append(_rel("RZeta", "5e", (j,), r() * t(1, j) * r(-1) * t(1, 2 * n - j + 2, -1),
                             invert(top)))
        rels.append(_rel("RZeta", "5f", (), r() * top, invert(top) * r()))
    return rels


def lmod_presentation(variant: str, n: int) -> Presentation:
    if n < 1:
        raise IndexOutOfRange("n >= 1")
    if variant not in ("boundary", "marked", "closed"):
        raise ValueError(f"unknown variant {variant!r}")
    closed = variant == "closed"
    rels = _boundary_relators(n)
    if variant in ("marked", "closed"):
        rels.append(_rel("Trivial", "4b", (1, 2 * n + 1), t(1, 2 * n + 1)))
    if closed:
        rels += _closed_extras(n, smod=False)
    fam = {"boundary": "LModBoundary", "marked": "LModMarked", "closed": "LModClosed"}[variant]
    pres = Presentation(fam, {"n": n}, _generators(n, closed), rels)
    pres.check_declared()
    return pres


def smod_presentation(variant: str, n: int, k: int) -> Presentation:
    if n < 1:
        raise IndexOutOfRange("n >= 1")
    if k < 3:
        raise InvalidK(f"k must be at least 3, got {k}")
    if variant not in ("boundary", "marked", "closed"):
        raise ValueError(f"unknown variant {variant!r}")
    closed = variant == "closed"
    rels = _boundary_relators(n)
    if variant in ("marked", "closed"):
        rels.append(_rel("Trivial", "4b", (1, 2 * n + 1), t(1, 2 * n + 1, k)))
    if closed:
        rels += _closed_extras(n, smod=True)
    fam = {"boundary": "SModBoundary", "marked": "SModMarked", "closed": "SModClosed"}[variant]
    pres = Presentation(fam, {"n": n, "k": k}, _generators(n, closed), rels)
    pres.check_declared()
    return pres


def build(family: str, n: Optional[int] = None, k: Optional[int] = None,
          m: Optional[int] = None) -> Presentation:
    """Dispatch on the family name used by the command line."""
    key = family.lower().replace("_", "-")
    if key in ("pmod", "pmod0m"):
        return pmod_presentation(m if m is not None else n)
    if key in ("w", "w-full"):
        return w_presentation(n, starred=False)
    if key in ("wstar", "w-star"):
        return w_presentation(n, starred=True)
    head, _, variant = key.partition("-")
    if head == "lmod" and variant:
        return lmod_presentation(variant, n)
    if head == "smod" and variant:
        if k is None:
            raise InvalidK("SMod families need k")
        return smod_presentation(variant, n, k)
    raise ValueError(f"unknown family {family!r}")


# ------------------------------------------------------ single relations

def lantern(variant: str, i: int, j: int, n: int) -> Relator:
    """Conjugation of t_{i,j} by a nearby h, written with five twists.

    ``variant`` is one of ``i-2``, ``i-1``, ``j``, ``j-1``; the index ranges
    are those of the marked group, plus the top-index cases that need h_{2n}.
    """
    tw = Twists(n, closed=True)
    if variant == "i-2":
        if not 3 <= i < j <= 2 * n + 1:
            raise IndexOutOfRange((variant, i, j))
        kk = i - 2
        rhs = tw(i + 1, j) * tw(i - 1, i) * tw(i - 2, j) * tw(i - 1, j, -1) * tw(i - 2, i, -1)
    elif variant == "i-1":
        if not 2 <= i < j <= 2 * n + 1:
            raise IndexOutOfRange((variant, i, j))
        kk = i - 1
        if j == i + 1:
            rhs = tw(i - 1, i)
        else:
            rhs = tw(i + 2, j) * tw(i - 1, j) * tw(i - 1, i) * tw(i + 1, j, -1) * tw(i - 1, i + 1, -1)
    elif variant == "j":
        if not 1 <= i < j <= 2 * n:
            raise IndexOutOfRange((variant, i, j))
        kk = j
        if j == 2 * n:
            rhs = tw(i, 2 * n - 1) * tw(2 * n, 2 * n + 1) * tw(1, i - 1) * tw(i, 2 * n + 1, -1) * tw(1, 2 * n - 1, -1)
        else:
            rhs = tw(i, j - 1) * tw(j, j + 1) * tw(i, j + 2) * tw(i, j + 1, -1) * tw(j, j + 2, -1)
    elif variant == "j-1":
        if not 1 <= i < j <= 2 * n + 1 or j < 2:
            raise IndexOutOfRange((variant, i, j))
        kk = j - 1
        if j == 2 * n + 1:
            if i == 2 * n:
                rhs = tw(1, 2 * n)
            else:
                rhs = tw(i, 2 * n - 1) * tw(1, 2 * n) * tw(1, i - 1) * tw(i, 2 * n, -1) * tw(1, 2 * n - 1, -1)
        elif i + 1 == j:
            rhs = tw(j, j + 1)
        else:
            rhs = tw(i, j - 2) * tw(j, j + 1) * tw(i, j + 1) * tw(i, j - 1, -1) * tw(j - 1, j + 1, -1)
    else:
        raise ValueError(f"unknown lantern variant {variant!r}")
    lhs = h(kk) * tw(i, j) * h(kk, -1)
    return _rel("Lantern", f"k={variant}", (i, j), lhs, rhs)


def relation(tag: Tag, n: Optional[int] = None) -> Relator:
    """Rebuild a single relator from its tag (n is needed for top-index families)."""
    kind, lab, idx = tag.kind, tag.label, tag.indices
    if kind == "Pentagonal":
        if not (len(idx) == 5 and list(idx) == sorted(set(idx)) and idx[0] >= 1):
            raise IndexOutOfRange(str(tag))
        return pentagon(*idx)
    if kind == "Chain" and not lab:
        i, j = idx
        if i < 1 or j - i < 2:
            raise IndexOutOfRange(str(tag))
        return chain_relator(i, j)
    if kind == "Lantern":
        if n is None:
            raise ValueError("lantern relations need n")
        return lantern(lab.split("=", 1)[1], idx[0], idx[1], n)
    if n is not None:
        for fam in (lmod_presentation("closed", n).relators,
                    smod_presentation("closed", n, 3).relators):
            for rel in fam:
                if rel.tag == tag:
                    return rel
    raise IndexOutOfRange(f"no relation with tag {tag}")


# ------------------------------------------------------ identity suite

@dataclass(frozen=True)
class LemmaIdentity:
    """A two-sided identity ``lhs = rhs`` expected to hold in LMod_{2n+2}.

    ``disk`` marks identities that use only disk generators and no index
    identifications; they should hold exactly in the braid group B_{2n+1}.
    """
    name: str
    lhs: Word
    rhs: Word
    disk: bool

    def relator(self) -> Word:
        return self.lhs * invert(self.rhs)


def _hinv(seq: Iterable[int]) -> Word:
    return product(h(i, -1) for i in seq)


def lemma_identities(n: int) -> List[LemmaIdentity]:
    """Derived word identities among the generators of the liftable group.

    Index ranges are the largest ones that stay inside the closed group;
    twists with index 2n+2 are rewritten via the marked-sphere identifications.
    """
    if n < 1:
        raise IndexOutOfRange("n >= 1")
    N = 2 * n
    tw = Twists(n, closed=True)
    out: List[LemmaIdentity] = []

    def add(name: str, build) -> None:
        tw.aliased = False
        try:
            lhs, rhs = build()
        except IndexOutOfRange:
            return
        gens = (lhs * rhs).generators() | lhs.generators() | rhs.generators()
        disk = not tw.aliased and all(
            (g.family == "h" and g.indices[0] <= N - 1) or (g.family == "t" and g.indices[1] <= N + 1)
            for g in gens)
        out.append(LemmaIdentity(name, lhs, rhs, disk))

    pairs = [(i, j) for i in range(1, N + 3) for j in range(i + 1, N + 3)]
    odd_pairs = [(i, j) for (i, j) in pairs if (j - i) % 2 and j - i >= 3]
    even_pairs = [(i, j) for (i, j) in pairs if (j - i) % 2 == 0 and j - i >= 4]

    # commutation ranges extended to the closed group
    for i in range(1, N + 1):
        for j in range(i + 3, N + 1):
            add(f"comm-hh({i},{j})", lambda i=i, j=j: (h(i) * h(j), h(j) * h(i)))
    for p, q in combinations([(i, j) for (i, j) in pairs if j <= N + 2], 2):
        if _tt_commute(p, q) or _tt_commute(q, p):
            add(f"comm-tt{p + q}", lambda p=p, q=q: (tw(*p) * tw(*q), tw(*q) * tw(*p)))
    for kk in range(1, N + 1):
        for (i, j) in pairs:
            if _ht_commute(kk, i, j):
                add(f"comm-ht({kk},{i},{j})", lambda kk=kk, i=i, j=j: (h(kk) * tw(i, j), tw(i, j) * h(kk)))

    # conjugation of adjacent twists by h's
    for i in range(1, N + 1):
        for e in (1, -1):
            add(f"conj-h-t({i},{e})", lambda i=i, e=e: (h(i, e) * tw(i, i + 1), tw(i + 1, i + 2) * h(i, e)))
    for i in range(1, N):
        for e in (1, -1):
            add(f"conj-hh-t({i},{e})", lambda i=i, e=e: (h(i, e) * h(i + 1, e) * tw(i, i + 1),
                                                         tw(i + 2, i + 3) * h(i, e) * h(i + 1, e)))
    for i in range(1, N - 1):
        for e in (1, -1):
            add(f"braid-hhh({i},{e})", lambda i=i, e=e: (h(i, e) * h(i + 1, e) * h(i + 2, e) * h(i, e),
                                                         h(i + 2, e) * h(i, e) * h(i + 1, e) * h(i + 2, e)))
    for i in range(1, N):
        add(f"hh-twist-swap({i})", lambda i=i: (h(i) * h(i + 1) * tw(i, i + 1), tw(i, i + 1) * h(i + 1) * h(i)))
    for i in range(1, N - 1):
        add(f"hhh-twist-swap({i})", lambda i=i: (h(i) * h(i + 2) * h(i) * tw(i + 1, i + 2, -1),
                                                tw(i + 2, i + 3, -1) * h(i + 2) * h(i) * h(i + 2)))
    for i in range(1, N + 1):
        add(f"conj-r-h({i})", lambda i=i: (r() * h(i) * r(-1), h(N - i + 1)))
    for (i, j) in pairs:
        add(f"conj-r-t({i},{j})", lambda i=i, j=j: (r() * tw(i, j) * r(-1), tw(N - j + 3, N - i + 3)))

    # images of the symmetric-group relations
    for i in range(1, N + 1):
        add(f"square-h({i})", lambda i=i: (h(i, 2), tw(i, i + 2)))
    for i in range(1, N):
        add(f"adjacent-h({i})", lambda i=i: (h(i) * h(i + 1) * h(i, -1) * h(i + 1, -1),
                                            tw(i, i + 1) * tw(i + 2, i + 3, -1)))
    for i in range(1, N - 1):
        add(f"braid-h({i})", lambda i=i: (h(i) * h(i + 2) * h(i) * h(i + 2, -1) * h(i, -1) * h(i + 2, -1),
                                         tw(i + 1, i + 2) * tw(i + 2, i + 3, -1)))
    add("square-r", lambda: (r(2), Word.identity()))

    # chain relations, all lengths up to the closed range
    for (i, j) in pairs:
        if j - i >= 2:
            add(f"chain({i},{j})", lambda i=i, j=j: (tw(i, j), chain_word(i, j, tw)))
    add("top-chain", lambda: (top_chain_word(n, tw), Word.identity()))

    # rearrangements of adjacent h's
    for i in range(1, N):
        a_, b_ = h(i), h(i + 1)
        P, Q = tw(i, i + 1), tw(i + 2, i + 3)
        forms = [(a_ * b_ * P, b_ * a_ * Q), (Q * a_ * b_, P * b_ * a_), (a_ * b_, b_ * a_ * ~P * Q),
                 (a_ * b_, P * ~Q * b_ * a_), (b_ * a_, a_ * b_ * P * ~Q), (b_ * a_, ~P * Q * a_ * b_)]
        for pos, pair in enumerate(forms, start=1):
            add(f"adjacent-h-forms({i},{pos})", lambda pair=pair: pair)
    for i in range(1, N - 1):
        a_, c_ = h(i), h(i + 2)
        P, Q = tw(i + 1, i + 2), tw(i + 2, i + 3)
        aca, cac = a_ * c_ * a_, c_ * a_ * c_
        forms = [(aca * ~P, ~Q * cac), (~P * aca, ~Q * cac), (aca * ~P, cac * ~Q), (~P * aca, cac * ~Q),
                 (aca, ~Q * cac * P), (aca, P * cac * ~Q), (aca, P * ~Q * cac), (aca, cac * ~Q * P)]
        for pos, pair in enumerate(forms):
            add(f"skip-h-forms({i},{pos})", lambda pair=pair: pair)

    # odd chains of h's
    for (i, j) in odd_pairs:
        pw = (j - i + 1) // 2
        for l in range(i, N + 2, 2):
            add(f"odd-chain-centralizes({i},{j},{l})",
                lambda i=i, j=j, l=l, pw=pw: (hprod(down(j - 2, i)) ** pw * tw(l, l + 1),
                                              tw(l, l + 1) * hprod(down(j - 2, i)) ** pw))
        add(f"odd-chain-reverse({i},{j})",
            lambda i=i, j=j, pw=pw: (hprod(down(j - 2, i)) ** pw, hprod(up(i, j - 2)) ** pw))
        add(f"odd-chain-shuffle({i},{j})", lambda i=i, j=j: (
            hprod(down(j - 2, i)) * hprod(up(i + 1, j - 2, 2)),
            tw(j - 1, j, (j - i - 3) // 2) * product(tw(l, l + 1, -1) for l in up(i + 1, j - 2, 2))
            * hprod(down(j - 2, i + 1, 2)) * tw(i, i + 1) * hprod(up(i + 1, j - 2, 2)) * hprod(down(j - 3, i, 2))))

        def shuffle_commute(i=i, j=j):
            A = hprod(down(j - 4, i)) ** ((j - i - 1) // 2)
            B = (product(tw(l, l + 1, -1) for l in up(i + 1, j - 2, 2)) * hprod(down(j - 2, i + 1, 2))
                 * tw(i, i + 1) * hprod(up(i + 1, j - 2, 2)))
            return A * B, B * A
        add(f"odd-chain-shuffle-commutes({i},{j})", shuffle_commute)
        add(f"odd-conjugate({i},{j})", lambda i=i, j=j: (
            ~hprod(up(i, j - 3, 2)) * hprod(down(j - 2, i + 1, 2)) * hprod(up(i, j - 3, 2)),
            hprod(down(j - 2, i + 1, 2)) * tw(i, i + 1) * tw(j - 1, j, -1)))
        if j <= N + 1:
            e = -(j - i - 3) // 2
            add(f"odd-chain-reverse-twisted({i},{j})", lambda i=i, j=j, e=e, pw=pw: (
                product(tw(l, l + 1, e) for l in down(j - 1, i, 2)) * hprod(down(j - 2, i)) ** pw,
                product(tw(l, l + 1, e) for l in up(i, j - 1, 2)) * hprod(up(i, j - 2)) ** pw))
            add(f"ascending-split({i},{j})", lambda i=i, j=j: (
                hprod(up(i, j - 1)),
                tw(i, i + 1, (j - i - 1) // 2) * hprod(up(i, j - 1, 2))
                * product(tw(l, l + 1, -1) for l in up(i + 2, j - 1, 2)) * hprod(up(i + 1, j - 2, 2))))
            add(f"palindrome-shift({i},{j})", lambda i=i, j=j: (
                hprod(down(j - 1, i, 2)) * hprod(up(i + 2, j - 1, 2))
                * product(tw(l, l + 1, -1) for l in up(i + 2, j - 1, 2)),
                hprod(up(i, j - 1, 2)) * hprod(down(j - 3, i, 2))
                * product(tw(l, l + 1, -1) for l in up(i + 1, j - 2, 2))))
        if j <= N:
            add(f"odd-power-extend-left({i},{j})", lambda i=i, j=j, pw=pw: (
                hprod(up(i, j - 1, 2)) * hprod(down(j - 2, i)) ** pw, hprod(down(j - 1, i)) ** pw))
            add(f"odd-power-extend-right({i},{j})", lambda i=i, j=j, pw=pw: (
                hprod(up(i, j - 2)) ** pw * hprod(down(j - 1, i, 2)), hprod(up(i, j - 1)) ** pw))
            add(f"odd-power-extend-top-left({i},{j})", lambda i=i, j=j, pw=pw: (
                hprod(up(i + 1, j, 2)) * hprod(down(j - 1, i)) ** pw, hprod(down(j, i)) ** pw))
            add(f"odd-power-extend-top-right({i},{j})", lambda i=i, j=j, pw=pw: (
                hprod(up(i, j - 1)) ** pw * hprod(down(j, i + 1, 2)), hprod(up(i, j)) ** pw))
            add(f"odd-power-extend-rev-left({i},{j})", lambda i=i, j=j, pw=pw: (
                hprod(down(j - 1, i, 2)) * hprod(up(i + 1, j - 1)) ** pw, hprod(up(i, j - 1)) ** pw))
            add(f"odd-power-extend-rev-right({i},{j})", lambda i=i, j=j, pw=pw: (
                hprod(down(j - 1, i + 1)) ** pw * hprod(up(i, j - 1, 2)), hprod(down(j - 1, i)) ** pw))
            add(f"odd-power-extend-rev-top-left({i},{j})", lambda i=i, j=j, pw=pw: (
                hprod(down(j - 1, i, 2)) * hprod(up(i + 1, j)) ** pw, hprod(up(i, j)) ** pw))
            add(f"odd-power-extend-rev-top-right({i},{j})", lambda i=i, j=j, pw=pw: (
                hprod(down(j, i + 1)) ** pw * hprod(up(i, j - 1, 2)), hprod(down(j, i)) ** pw))
            add(f"interleave-split({i},{j})", lambda i=i, j=j: (
                hprod(down(j, i + 1, 2)) * hprod(down(j - 1, i, 2)),
                tw(j + 1, j + 2, -(j - i - 1) // 2) * hprod(down(j, i))
                * product(tw(l, l + 1) for l in up(i + 3, j, 2))))

    # even chains of h's
    for (i, j) in even_pairs:
        half = (j - i) // 2
        q, p2 = (j - i - 4) // 2, (j - i - 2) // 2
        pal = hprod(down(j - 2, i, 2)) * hprod(up(i, j - 2, 2))
        for l in range(i, N + 2, 2):
            if l == j:
                continue
            add(f"palindrome-centralizes({i},{j},{l})",
                lambda pal=pal, l=l: (pal * tw(l, l + 1), tw(l, l + 1) * pal))
            add(f"palindrome-centralizes-padded({i},{j},{l})", lambda i=i, j=j, l=l: (
                hprod(down(j - 2, i, 2)) * tw(l + 1, l + 2) * hprod(up(i, j - 2, 2)) * tw(l, l + 1),
                tw(l, l + 1) * hprod(down(j - 2, i, 2)) * tw(l + 1, l + 2) * hprod(up(i, j - 2, 2))))
        # l = j - 2 has to be excluded as well: the identity fails there
        for l in range(2 - i % 2, N, 2):
            if l in (i - 2, j - 2, j):
                continue
            add(f"palindrome-commutes-pair({i},{j},{l})", lambda pal=pal, l=l: (
                pal * h(l + 1) * h(l), h(l + 1) * h(l) * pal))
        add(f"palindrome-commutes-power({i},{j})", lambda i=i, j=j, pal=pal, half=half: (
            pal * hprod(down(j - 3, i)) ** half, hprod(down(j - 3, i)) ** half * pal))
        if j <= N + 1:
            add(f"chain-even-regroup({i},{j})", lambda i=i, j=j, p2=p2, half=half: (
                chain_word(i, j, tw),
                product(tw(l, l + 1, -p2) for l in up(i + 1, j - 1, 2)) * hprod(up(i, j - 2, 2))
                * hprod(down(j - 2, i, 2)) * hprod(up(i + 1, j - 2)) ** half))
        if j > N:
            continue
        add(f"even-square-power({i},{j})", lambda i=i, j=j, half=half: (
            hprod(down(j - 2, i, 2)) * hprod(down(j - 2, i)) ** half,
            (h(j - 2, 2) * hprod(down(j - 3, i))) ** half))
        mid = (tw(i, i + 1, -q) * _hinv(up(i, j - 4, 2)) * h(j - 2) * hprod(down(j - 4, i, 2))
               * tw(j - 1, j, -1) * tw(i, i + 1, p2))
        add(f"even-conjugate({i},{j})", lambda i=i, j=j, mid=mid: (
            h(j - 2) * hprod(down(j - 3, i)), hprod(down(j - 3, i)) * mid))
        inner = tw(i + 2, i + 3, -q) * tw(i, i + 1, -p2) * h(i) * tw(i + 2, i + 3, p2) * tw(i, i + 1, q)
        add(f"even-push-through({i},{j})", lambda i=i, j=j, mid=mid, inner=inner: (
            mid * hprod(down(j - 2, i)), hprod(down(j - 2, i)) * inner))
        add(f"even-power-push-through({i},{j})", lambda i=i, j=j, inner=inner, q=q, p2=p2: (
            (inner * hprod(down(j - 2, i))) ** q,
            hprod(down(j - 2, i)) ** q * tw(j - 2, j - 1, -q)
            * product(tw(l, l + 1, -p2) for l in down(j - 4, i + 2, 2)) * hprod(down(j - 4, i + 2, 2))
            * tw(i + 2, i + 3, q) * product(tw(l, l + 1, p2) for l in up(i + 4, j - 2, 2))))
        add(f"even-palindrome-inverse({i},{j})", lambda i=i, j=j: (
            _hinv(up(i, j - 4, 2)) * h(j - 2) * hprod(down(j - 4, i, 2)),
            hprod(down(j - 2, i, 2)) * tw(i + 1, i + 2, -1) * _hinv(up(i + 2, j - 2, 2)) * tw(j - 1, j)))
        add(f"even-square-expand({i},{j})", lambda i=i, j=j, q=q, p2=p2, half=half: (
            (h(j - 2, 2) * hprod(down(j - 3, i))) ** half,
            hprod(down(j - 2, i)) ** half * tw(j - 2, j - 1, -q)
            * product(tw(l, l + 1, -p2) for l in down(j - 4, i, 2)) * hprod(down(j - 4, i, 2))
            * hprod(down(j - 2, i, 2)) * tw(i + 1, i + 2, -1) * _hinv(up(i + 2, j - 2, 2))
            * product(tw(l, l + 1, p2) for l in up(i, j - 2, 2))))

    # lantern relations, including the cases that need h_{2n}
    for i in range(1, N + 2):
        for j in range(i + 1, N + 2):
            for variant in ("i-2", "i-1", "j", "j-1"):
                add(f"lantern[k={variant}]({i},{j})",
                    lambda variant=variant, i=i, j=j: lantern(variant, i, j, n).two_sided())

    # relations specific to the top index
    if n >= 1:
        add("top-h-twist", lambda: (h(N) * tw(N, N + 1), tw(1, N) * h(N)))
        add("top-h-twist-inverse", lambda: (h(N, -1) * tw(N, N + 1), tw(1, N) * h(N, -1)))
        add("top-square", lambda: (tw(1, N - 1), h(N, 2)))
        add("top-adjacent", lambda: (h(N - 1) * h(N) * h(N - 1, -1) * h(N, -1), tw(N - 1, N) * tw(1, N, -1)))
        add("top-swap", lambda: (h(N - 1) * h(N) * tw(N - 1, N), tw(N - 1, N) * h(N) * h(N - 1)))
        for e in (1, -1):
            add(f"top-conj-hh-t({e})", lambda e=e: (h(N - 1, e) * h(N, e) * tw(N - 1, N),
                                                    tw(1, N) * h(N - 1, e) * h(N, e)))
    if n >= 2:
        add("top-braid", lambda: (h(N - 2) * h(N) * h(N - 2) * h(N, -1) * h(N - 2, -1) * h(N, -1),
                                  tw(N - 1, N) * tw(N, N + 1, -1)))
        add("top-skip-swap", lambda: (h(N - 2) * h(N) * h(N - 2) * tw(N - 1, N, -1),
                                      tw(N, N + 1, -1) * h(N) * h(N - 2) * h(N)))
        for e in (1, -1):
            add(f"top-braid-hhh({e})", lambda e=e: (h(N - 2, e) * h(N - 1, e) * h(N, e) * h(N - 2, e),
                                                    h(N, e) * h(N - 2, e) * h(N - 1, e) * h(N, e)))
    return out


def lemma_suite(n: int) -> List[Tuple[str, Tuple[Word, Word]]]:
    return [(li.name, (li.lhs, li.rhs)) for li in lemma_identities(n)]


def off_by_one_variants(rel: Relator) -> List[Relator]:
    """Copies of a relator with one exponent run changed by +1 or -1."""
    out = []
    letters = rel.word.letters
    for pos, (g, e) in enumerate(letters):
        for d in (1, -1):
            new = letters[:pos] + ((g, e + d),) + letters[pos + 1:]
            word = Word(new)
            label = f"{rel.tag.label}~{pos}{'+' if d > 0 else '-'}"
            out.append(Relator(Tag(rel.tag.kind, label, rel.tag.indices), word))
    return out
