import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from smodpres.abelianize import identity_matrix
from smodpres.cover import (InvalidParams, NotLiftable, automorphism_sign, boundary_twist_action,
                            build_cover, deck_matrix, int_det, lift_matrix, matrix_power,
                            partial_rotation_matrix, verify_presentation, verify_smod_relator)
from smodpres.perm import ParityClass, is_liftable
from smodpres.presentations import smod_presentation
from smodpres.sphere_rep import rep_of_word
from smodpres.words import Generator, Word, h, invert, r, s, t
from test_acceptance import corruption_table


@pytest.mark.parametrize("n,k,variant,rank", [(1, 3, "closed", 4), (2, 4, "closed", 12),
                                              (1, 3, "marked", 4), (2, 3, "boundary", 8)])
def test_ranks(n, k, variant, rank):
    model = build_cover(n, k, variant)
    assert model.rank == rank == 2 * model.genus
    assert model.euler_check()["ok"]


def test_invalid_params():
    with pytest.raises(InvalidParams):
        build_cover(1, 2)
    with pytest.raises(InvalidParams):
        build_cover(0, 3)
    with pytest.raises(NotLiftable):
        lift_matrix(build_cover(1, 3), s(1))


@pytest.mark.parametrize("n", [1, 2, 3])
@pytest.mark.parametrize("k", [3, 4, 5, 6])
def test_deck_matrix_lefschetz(n, k):
    model = build_cover(n, k, "closed")
    Z = deck_matrix(model).matrix
    m = 2 * n + 2
    P = identity_matrix(model.rank)
    for j in range(1, k):
        P = P.dot(Z)
        # Lefschetz: fixed points of a nontrivial deck power are the m branch points
        assert 2 - int(np.trace(P)) == m
        assert not np.array_equal(P, identity_matrix(model.rank))
    assert np.array_equal(P.dot(Z), identity_matrix(model.rank))
    assert int_det(Z - identity_matrix(model.rank)) == k ** (2 * n)


@pytest.mark.parametrize("variant", ["closed", "marked"])
@pytest.mark.parametrize("n,k", [(1, 3), (2, 4), (3, 5)])
def test_lift_relations_with_deck(variant, n, k):
    model = build_cover(n, k, variant)
    Z = deck_matrix(model)
    R = lift_matrix(model, r())
    Rinv = matrix_power(R.matrix, -1)
    assert np.array_equal(R.matrix.dot(Z.matrix).dot(Rinv), matrix_power(Z.matrix, -1))
    assert abs(R.det()) == 1
    for i in range(1, 2 * n + 1):
        H = lift_matrix(model, h(i)).matrix
        assert np.array_equal(H.dot(Z.matrix), Z.matrix.dot(H))
    assert lift_matrix(model, t(1, 2 * n + 1)) == Z
    assert matrix_power(lift_matrix(model, t(1, 2 * n + 1)).matrix, k).tolist() == identity_matrix(model.rank).tolist()


@pytest.mark.parametrize("n,k", [(1, 3), (2, 3), (2, 5)])
def test_partial_rotations(n, k):
    model = build_cover(n, k, "closed")
    for j in range(1, 2 * n + 2, 2):
        P = partial_rotation_matrix(model, j)
        if j == 1:
            assert P.is_identity()
        else:
            assert lift_matrix(model, t(1, j)) == P
    with pytest.raises(InvalidParams):
        partial_rotation_matrix(model, 2)


def test_signs_of_generators():
    model = build_cover(2, 4, "closed")
    for g in [h(1), h(4), t(1, 2), t(2, 5)]:
        assert automorphism_sign(model, rep_of_word(g, model.m)) == 1
    assert automorphism_sign(model, rep_of_word(r(), model.m)) == -1
    assert automorphism_sign(model, rep_of_word(s(1), model.m)) == 0


def test_verify_examples():
    n, k = 1, 3
    model = build_cover(n, k, "closed")
    assert verify_smod_relator(model, r(2)).holds
    assert verify_smod_relator(model, t(1, 3, k)).holds
    bad = verify_smod_relator(model, t(1, 3, k - 1))
    assert bad.verdict == "zeta_mismatch" and bad.zeta_power == k - 1
    assert str(bad) == "zeta_mismatch(2)"
    assert verify_smod_relator(model, h(1)).verdict == "projection_mismatch"


@pytest.mark.parametrize("variant", ["boundary", "marked", "closed"])
def test_presentation_holds_small(variant):
    model = build_cover(2, 3, variant)
    verdicts = verify_presentation(model, smod_presentation(variant, 2, 3).relators)
    assert all(v.holds for v in verdicts), [str(v.tag) for v in verdicts if not v.holds]


def test_boundary_twist_on_kernel():
    for n, k in [(1, 3), (2, 4)]:
        info = boundary_twist_action(build_cover(n, k, "boundary"))
        assert info["equals_boundary_twist"] and info["nontrivial_on_kernel"]


def test_dump_header():
    model = build_cover(1, 3)
    assert model.dump(deck_matrix(model)).startswith("rank=4 n=1 k=3 variant=closed\n")


LIFTABLE = [Generator("h", (i,)) for i in range(1, 5)] + [Generator("t", p) for p in [(1, 2), (2, 4), (3, 5), (1, 5)]] + [Generator("r")]
liftable_words = st.lists(st.tuples(st.sampled_from(LIFTABLE), st.integers(-2, 2)), max_size=6).map(Word)
MODEL = build_cover(2, 3, "closed")


@settings(max_examples=100, deadline=None)
@given(liftable_words, liftable_words)
def test_lift_is_homomorphism(u, v):
    assert is_liftable(u, 2) is not ParityClass.NEITHER
    assert lift_matrix(MODEL, u * v) == lift_matrix(MODEL, u) @ lift_matrix(MODEL, v)
    assert (lift_matrix(MODEL, u) @ lift_matrix(MODEL, invert(u))).is_identity()


@settings(max_examples=100, deadline=None)
@given(liftable_words)
def test_lifts_are_unimodular(w):
    assert abs(lift_matrix(MODEL, w).det()) == 1


@pytest.mark.parametrize("variant,accepted", [("marked", 2), ("closed", 6)])
def test_sphere_engine_blind_spot_is_exactly_top_twist(variant, accepted):
    # corruptions invisible on the sphere are exactly those touching only t_{1,2n+1} runs
    for n, k in [(1, 3), (2, 4)]:
        rows = corruption_table(n, k, variant)
        assert all(cov for _, cov, _, _ in rows)
        assert [tag for tag, _, sph, _ in rows if not sph] == [tag for tag, _, _, valid in rows if valid]
        assert sum(1 for _, _, sph, _ in rows if not sph) == accepted
