from math import comb

import pytest

from smodpres.perm import IndexOutOfRange, psi
from smodpres.presentations import (InvalidK, Tag, build, chain_relator, lantern,
                                    lemma_suite, lmod_presentation, off_by_one_variants,
                                    pentagon, pmod_presentation, presentation_from_json,
                                    relation, smod_presentation, w_presentation)
from smodpres.words import (Generator, Word, cyclically_reduce, h, invert, parse_word, r,
                            reduce, t)


def same_normal_closure(u, v):
    """Cyclic rotation of u or u^-1 equals v after cyclic reduction."""
    target = cyclically_reduce(v)[0].expand()
    for w in (u, invert(u)):
        core = cyclically_reduce(w)[0].expand()
        if len(core) == len(target) and any(core[i:] + core[:i] == target for i in range(max(1, len(core)))):
            return True
    return False

FAMILIES = ["lmod-boundary", "lmod-marked", "lmod-closed",
            "smod-boundary", "smod-marked", "smod-closed"]


def test_pmod_small_cases():
    p4 = pmod_presentation(4)
    assert [str(g) for g in p4.generators] == ["t[1,2]", "t[2,3]"]
    assert p4.relators == []
    assert pmod_presentation(3).generators == []
    p7 = pmod_presentation(7)
    assert sum(1 for rel in p7.relators if rel.tag.kind == "Pentagonal") == comb(7, 5)


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_w_relator_count(n):
    pairs = sum(1 for i in range(1, 2 * n + 1) for j in range(i + 1, 2 * n + 1)
                if j - i == 1 or j - i >= 3)
    assert len(w_presentation(n).relators) == 2 * n + pairs + (2 * n - 2) + 1 + 2 * n


def test_w_star_n1():
    p = w_presentation(1, starred=True)
    assert [str(g) for g in p.generators] == ["h[1]"]
    assert [rel.word for rel in p.relators] == [h(1, 2)]


def _fp_order(pres):
    sympy = pytest.importorskip("sympy.combinatorics.fp_groups")
    from sympy.combinatorics.free_groups import free_group
    names = [str(g).replace("[", "_").replace("]", "").replace(",", "_") for g in pres.generators]
    F, *syms = free_group(",".join(names))
    sym = dict(zip(pres.generators, syms))
    rels = []
    for rel in pres.relators:
        w = F.identity
        for g, e in rel.word.letters:
            w = w * sym[g] ** e
        rels.append(w)
    return sympy.FpGroup(F, rels).order()


@pytest.mark.parametrize("n,starred,order", [(1, False, 8), (1, True, 2), (2, False, 72),
                                             (2, True, 12), (3, True, 144)])
def test_w_order_by_coset_enumeration(n, starred, order):
    assert _fp_order(w_presentation(n, starred)) == order


def test_lmod_boundary_n1():
    p = lmod_presentation("boundary", 1)
    assert {str(g) for g in p.generators} == {"h[1]", "t[1,2]", "t[2,3]", "t[1,3]"}
    words = {rel.word for rel in p.relators}
    assert invert(t(1, 3)) * h(1, 2) in words


@pytest.mark.parametrize("n", [1, 2, 3])
def test_closed_top_chain_relator(n):
    p = lmod_presentation("closed", n)
    rel = next(rel for rel in p.relators if rel.tag.label == "4c")
    e = -n + 1
    expect = t(1, 2 * n, e)
    for l in range(2 * n - 1, 0, -2):
        expect = expect * t(l, l + 1, e)
    expect = expect * Word([(Generator("h", (i,)), 1) for i in range(2 * n, 0, -1)]) ** (n + 1)
    assert rel.word == expect


def test_smod_specific_relators():
    p = smod_presentation("marked", 1, 3)
    assert t(1, 3, 3) in {rel.word for rel in p.relators}
    for n in (1, 2):
        c = smod_presentation("closed", n, 3)
        top = t(1, 2 * n + 1)
        assert r() * top * r(-1) * top in {rel.word for rel in c.relators}


@pytest.mark.parametrize("n", [1, 2, 3])
def test_boundary_is_k_independent(n):
    a, b = smod_presentation("boundary", n, 3), smod_presentation("boundary", n, 5)
    assert [(rel.tag, rel.word) for rel in a.relators] == [(rel.tag, rel.word) for rel in b.relators]


def test_parameter_errors():
    with pytest.raises(InvalidK):
        smod_presentation("closed", 1, 2)
    with pytest.raises(IndexOutOfRange):
        lmod_presentation("closed", 0)
    with pytest.raises(InvalidK):
        build("smod-closed", n=1)


@pytest.mark.parametrize("family", FAMILIES)
@pytest.mark.parametrize("n", [1, 2, 3])
def test_presentation_invariants(family, n):
    p = build(family, n=n, k=4)
    p.check_declared()
    m = 2 * n + 2
    tags = [str(rel.tag) for rel in p.relators]
    assert len(tags) == len(set(tags))
    for rel in p.relators:
        assert reduce(rel.word.letters) == rel.word
        assert psi(rel.word, m).is_identity(), rel.tag
        lhs, rhs = rel.two_sided()
        assert same_normal_closure(lhs * invert(rhs), rel.word), rel.tag
    assert build(family, n=n, k=4).to_json() == p.to_json()


@pytest.mark.parametrize("family", FAMILIES + ["w", "wstar"])
def test_json_round_trip(family):
    p = build(family, n=2, k=3)
    q = presentation_from_json(p.to_json())
    assert q.to_json() == p.to_json()
    assert [rel.word for rel in q.relators] == [rel.word for rel in p.relators]


def test_text_and_algebra_exports():
    p = lmod_presentation("boundary", 1)
    text = p.to_text()
    assert text.startswith("# LModBoundary n=1\n")
    assert "relators: " in text
    alg = p.to_algebra()
    assert alg.startswith("F := FreeGroup(") and "G := F/[" in alg


def test_chain_and_pentagon_examples():
    assert chain_relator(2, 4).word == t(2, 4, -1) * h(2, 2)
    left = t(2, 4, -1) * t(3, 4) * t(2, 3) * t(1, 2) * t(1, 3, -1)
    right = t(1, 3, -1) * t(1, 2) * t(2, 3) * t(3, 4) * t(2, 4, -1)
    assert pentagon(1, 2, 3, 4, 5).word == left * invert(right)
    pm = pmod_presentation(6)
    for rel in pm.relators:
        assert all(v == 0 for v in _exponent_sums(rel.word).values())


def _exponent_sums(w):
    out = {}
    for g, e in w.letters:
        out[g] = out.get(g, 0) + e
    return out


def test_lantern_j_example():
    i, j, n = 1, 3, 3
    rel = lantern("j", i, j, n)
    rhs = t(i, j - 1) * t(j, j + 1) * t(i, j + 2) * t(i, j + 1, -1) * t(j, j + 2, -1)
    assert rel.word == h(j) * t(i, j) * h(j, -1) * invert(rhs)


def test_relation_from_tag():
    assert relation(Tag.parse("Chain(1,3)")).word == t(1, 3, -1) * h(1, 2)
    assert relation(Tag.parse("Pentagonal(1,2,3,4,5)")) == pentagon(1, 2, 3, 4, 5)
    assert relation(Tag.parse("Lantern[k=j](1,3)"), n=2).word == lantern("j", 1, 3, 2).word
    with pytest.raises(IndexOutOfRange):
        relation(Tag.parse("Chain(1,2)"))
    with pytest.raises(IndexOutOfRange):
        relation(Tag.parse("Pentagonal(1,1,2,3,4)"))
    tag = lmod_presentation("closed", 2).relators[-1].tag
    assert relation(Tag.parse(str(tag)), n=2).tag == tag


def test_tag_round_trip():
    for s in ["Chain(1,3)", "Comm[1a](1,2,3,4)", "RZeta[5f]()", "Lantern[k=i-2](3,5)"]:
        assert str(Tag.parse(s)) == s


def test_lemma_suite_examples():
    suite = dict(lemma_suite(2))
    assert len(suite) == len(lemma_suite(2))
    # interleaved product of h's: the top twist t_{5,6} is written as t_{1,4}
    lhs, rhs = suite["interleave-split(1,4)"]
    assert lhs == h(4) * h(2) * h(3) * h(1)
    assert rhs == t(1, 4, -1) * h(4) * h(3) * h(2) * h(1) * t(4, 5)
    lhs, rhs = suite["conj-hh-t(1,1)"]
    assert (lhs, rhs) == (h(1) * h(2) * t(1, 2), t(3, 4) * h(1) * h(2))


def test_lemma_suite_sizes_grow():
    sizes = [len(lemma_suite(n)) for n in (1, 2, 3)]
    assert sizes == sorted(sizes) and sizes[0] > 0


def test_off_by_one_variants():
    rel = chain_relator(1, 3)
    variants = off_by_one_variants(rel)
    assert len(variants) == 2 * len(rel.word.letters)
    assert all(v.word != rel.word for v in variants)
    assert {v.word for v in variants} >= {t(1, 3, -2) * h(1, 2), t(1, 3, -1) * h(1, 3)}


def test_parse_rejects_malformed_tokens():
    for bad in ["h[1", "h[x]", "t[1,2]^", "* h[1]"]:
        with pytest.raises(ValueError):
            parse_word(bad)
