import random

import pytest
from hypothesis import given, settings, strategies as st

from smodpres.abelianize import (AbelianGroup, as_int_matrix, exponent_matrix, expected_h1,
                                 h1, h1_of, identity_matrix, invariant_factors,
                                 smith_normal_form)
from smodpres.presentations import build, lmod_presentation, pmod_presentation, smod_presentation
from smodpres.words import Generator


def sympy_factors(A):
    from sympy import Matrix, ZZ
    from sympy.matrices.normalforms import smith_normal_form as snf
    M = Matrix(A.tolist())
    if M.rows == 0 or M.cols == 0:
        return []
    D = snf(M, domain=ZZ)
    return sorted(abs(int(D[i, i])) for i in range(min(D.shape)) if D[i, i] != 0)


def exact_det(A):
    from sympy import Matrix
    return int(Matrix(A.tolist()).det()) if A.shape[0] else 1


def is_smith(D):
    d = [int(D[i, i]) for i in range(min(D.shape))]
    off = all(D[i, j] == 0 for i in range(D.shape[0]) for j in range(D.shape[1]) if i != j)
    nz = [v for v in d if v]
    chain = all(b % a == 0 for a, b in zip(nz, nz[1:]))
    tail = d[:len(nz)] == nz and all(v > 0 for v in nz)
    return off and chain and tail


def unimodular(n, rng, steps=12):
    U = identity_matrix(n)
    for _ in range(steps):
        i, j = rng.sample(range(n), 2) if n > 1 else (0, 0)
        if i == j:
            U[i] = -U[i]
            continue
        U[i] = U[i] + rng.randint(-3, 3) * U[j]
    if n > 1 and rng.random() < 0.5:
        perm = rng.sample(range(n), n)
        U = U[perm]
    return U


def test_zero_matrix():
    U, D, V = smith_normal_form(as_int_matrix([[0, 0], [0, 0]]))
    assert (D == 0).all() and (U == identity_matrix(2)).all() and (V == identity_matrix(2)).all()


def test_diag_6_4():
    U, D, V = smith_normal_form(as_int_matrix([[6, 0], [0, 4]]))
    assert [D[0, 0], D[1, 1]] == [2, 12]
    assert (U.dot(as_int_matrix([[6, 0], [0, 4]])).dot(V) == D).all()


@pytest.mark.parametrize("a,b", [(6, 4), (9, 6), (5, 7), (12, 18), (0, 3)])
def test_two_by_two_gcd_lcm(a, b):
    from math import gcd
    D = smith_normal_form(as_int_matrix([[a, 0], [0, b]]))[1]
    g = gcd(a, b)
    assert (D[0, 0], D[1, 1]) == ((g, a * b // g) if a and b else (g, 0))


def test_exponent_matrix_rows():
    p = lmod_presentation("boundary", 1)
    A = exponent_matrix(p)
    col = {g: j for j, g in enumerate(p.generators)}
    row = next(i for i, rel in enumerate(p.relators) if rel.tag.kind == "Chain")
    assert A[row, col[Generator("h", (1,))]] == 2 and A[row, col[Generator("t", (1, 3))]] == -1
    for i, rel in enumerate(pmod_presentation(7).relators):
        assert not exponent_matrix(pmod_presentation(7))[i].any()


matrices = st.integers(1, 6).flatmap(lambda r: st.integers(1, 6).flatmap(
    lambda c: st.lists(st.lists(st.integers(-9, 9), min_size=c, max_size=c), min_size=r, max_size=r)))


@settings(max_examples=300, deadline=None)
@given(matrices)
def test_snf_against_sympy(rows):
    A = as_int_matrix(rows)
    U, D, V = smith_normal_form(A)
    assert (U.dot(A).dot(V) == D).all()
    assert is_smith(D)
    assert abs(exact_det(U)) == 1 and abs(exact_det(V)) == 1
    assert sorted(int(D[i, i]) for i in range(min(D.shape)) if D[i, i]) == sympy_factors(A)
    assert invariant_factors(A) == [int(D[i, i]) for i in range(min(D.shape)) if D[i, i]]


@settings(max_examples=200, deadline=None)
@given(matrices, st.integers(0, 2 ** 32))
def test_snf_invariant_under_scrambling(rows, seed):
    rng = random.Random(seed)
    A = as_int_matrix(rows)
    P, Q = unimodular(A.shape[0], rng), unimodular(A.shape[1], rng)
    assert invariant_factors(P.dot(A).dot(Q)) == invariant_factors(A)


def test_canonical_form():
    assert AbelianGroup.canonical(1, [2, 4, 3]) == AbelianGroup(1, (2, 12))
    assert AbelianGroup.canonical(0, [6, 1, 0]) == AbelianGroup(1, (6,))
    assert str(AbelianGroup(1, (2, 2))) == "Z^1 (+) Z_2 (+) Z_2"
    assert str(AbelianGroup(0)) == "0"


def test_h1_examples():
    assert h1(lmod_presentation("boundary", 1)) == AbelianGroup(2)
    assert h1(lmod_presentation("closed", 1)) == AbelianGroup(1, (2, 2))
    for k in (3, 4, 5):
        assert h1(smod_presentation("marked", 1, k)) == AbelianGroup.canonical(1, [2 * k])
    assert str(h1_of("smod-marked", 2, 3)) == "Z^2 (+) Z_6"
    assert str(h1_of("smod-boundary", 2, 4)) == "Z^3"
    assert str(h1_of("lmod-closed", 3)) == "Z^1 (+) Z_2 (+) Z_2"


@pytest.mark.parametrize("m", [4, 5, 6, 7])
def test_pmod_is_free_abelian(m):
    assert h1(pmod_presentation(m)) == AbelianGroup(m * (m - 3) // 2)


@pytest.mark.parametrize("n", [1, 2, 3])
def test_h1_matches_sympy(n):
    for fam in ("lmod-closed", "smod-marked", "smod-closed"):
        p = build(fam, n=n, k=4)
        A = exponent_matrix(p)
        factors = sympy_factors(A)
        expect = AbelianGroup(len(p.generators) - len(factors), tuple(d for d in factors if d > 1))
        assert h1(p) == expect == expected_h1(fam, n, 4)
