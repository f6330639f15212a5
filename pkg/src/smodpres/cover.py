"""Homology of the balanced superelliptic cover and the linear action of lifts.

The cover is described through the monodromy eps of the punctured-sphere
group F = <x_1..x_{m-1}>, m = 2n+2: eps(x_i) = +1 for odd i and -1 for even i,
taken mod k.  Its kernel K is the fundamental group of the Schreier graph with
vertices Z_k (the sheets) and an edge (s, i) from s to s + eps_i for every
sheet s and every i < m.  The first homology of K is the cycle space of that
graph; dividing by the classes of the puncture loops x_i^k gives the first
homology of the cover with its branch points filled in.

A liftable mapping class acts on F by an automorphism phi with
eps o phi = +-eps.  The lift fixing the sheet-0 basepoint restricts phi to K
and induces the integer matrix returned by ``lift_matrix``.  The deck
rotation is the based lift of conjugation by x_1 and shifts every sheet by one.
"""
from __future__ import annotations

import time
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from .abelianize import identity_matrix, smith_normal_form
from .perm import ParityClass, is_liftable
from .presentations import Relator
from .sphere_rep import (FreeWord, RelatorResult, SphereAutomorphism, finv, fmul,
                         is_inner, rep_of_word)
from .words import Word, t

VARIANTS = ("closed", "marked", "boundary")


class InvalidParams(ValueError):
    pass


class NotLiftable(ValueError):
    pass


def _matmul(A: np.ndarray, B: np.ndarray) -> np.ndarray:
    return np.dot(A, B)


def _inverse_unimodular(A: np.ndarray) -> np.ndarray:
    """Exact inverse of a unimodular integer matrix via its Smith form."""
    U, D, V = smith_normal_form(A)
    n = A.shape[0]
    for i in range(n):
        if D[i, i] != 1:
            raise ValueError("matrix is not unimodular")
    return _matmul(V, U)


def int_det(A: np.ndarray) -> int:
    """Exact determinant by fraction-free (Bareiss) elimination."""
    a = [[int(v) for v in row] for row in np.asarray(A, dtype=object).tolist()]
    n = len(a)
    if n == 0:
        return 1
    sign, prev = 1, 1
    for c in range(n - 1):
        if a[c][c] == 0:
            sw = next((r for r in range(c + 1, n) if a[r][c]), None)
            if sw is None:
                return 0
            a[c], a[sw] = a[sw], a[c]
            sign = -sign
        for r in range(c + 1, n):
            for j in range(c + 1, n):
                a[r][j] = (a[r][j] * a[c][c] - a[r][c] * a[c][j]) // prev
        prev = a[c][c]
    return sign * a[n - 1][n - 1]


def matrix_power(A: np.ndarray, e: int) -> np.ndarray:
    if e < 0:
        A, e = _inverse_unimodular(A), -e
    out = identity_matrix(A.shape[0])
    for _ in range(e):
        out = _matmul(out, A)
    return out


@dataclass
class LiftMatrix:
    matrix: np.ndarray
    zeta_exponent: int = 0

    @property
    def size(self) -> int:
        return self.matrix.shape[0]

    def det(self) -> int:
        return int_det(self.matrix)

    def __matmul__(self, other: "LiftMatrix") -> "LiftMatrix":
        return LiftMatrix(_matmul(self.matrix, other.matrix), self.zeta_exponent + other.zeta_exponent)

    def __eq__(self, other) -> bool:
        return isinstance(other, LiftMatrix) and np.array_equal(self.matrix, other.matrix)

    def is_identity(self) -> bool:
        return np.array_equal(self.matrix, identity_matrix(self.size))


@dataclass
class CoverModel:
    n: int
    k: int
    variant: str
    m: int
    eps: Tuple[int, ...]                    # eps[i-1] for i = 1..m
    edges: List[Tuple[int, int]]            # (sheet, puncture) in coordinate order
    tree: List[int]                         # edge positions in the spanning tree
    cotree: List[int]                       # positions of the remaining edges
    cycles: np.ndarray                      # E x c, fundamental cycle of each cotree edge
    fillings: np.ndarray                    # c x (m-1), puncture classes in cotree coordinates
    P: np.ndarray                           # change of basis splitting off the fillings
    P_inv: np.ndarray
    filled: int                             # number of filling directions split off
    rank: int
    schreier: Dict[Tuple[int, int], int] = field(default_factory=dict)

    @property
    def genus(self) -> int:
        return self.n * (self.k - 1)

    @property
    def edge_count(self) -> int:
        return len(self.edges)

    def edge_index(self, s: int, i: int) -> int:
        return (s % self.k) * (self.m - 1) + (i - 1)

    @property
    def kernel_basis(self) -> List[FreeWord]:
        """Schreier generators of K, one per cotree edge."""
        out = []
        for pos in self.cotree:
            s, i = self.edges[pos]
            head = (1,) * s
            tail_sheet = (s + self.eps[i - 1]) % self.k
            out.append(fmul(fmul(head, (i,)), finv((1,) * tail_sheet)))
        return out

    def euler_check(self) -> Dict[str, int]:
        """Rank bookkeeping from the graph against Riemann-Hurwitz."""
        V, E = self.k, self.edge_count
        punctured = E - V + 1
        chi_closed = 2 * self.k - self.m * (self.k - 1)
        if self.variant == "boundary":
            expected = 1 - (chi_closed - 1)
        else:
            expected = 2 - chi_closed
        return {"graph_rank": punctured, "filled": self.filled, "rank": self.rank,
                "expected_rank": expected, "two_g": 2 * self.genus,
                "ok": int(self.rank == expected == punctured - self.filled)}

    def dump(self, M) -> str:
        mat = M.matrix if isinstance(M, LiftMatrix) else M
        lines = [f"rank={self.rank} n={self.n} k={self.k} variant={self.variant}"]
        for row in np.asarray(mat, dtype=object).tolist():
            lines.append(" ".join(str(int(v)) for v in row))
        return "\n".join(lines) + "\n"


def build_cover(n: int, k: int, variant: str = "closed") -> CoverModel:
    if n < 1 or k < 3 or variant not in VARIANTS:
        raise InvalidParams(f"need n >= 1, k >= 3 and a variant in {VARIANTS}")
    m = 2 * n + 2
    eps = tuple(1 if i % 2 else -1 for i in range(1, m + 1))
    edges = [(s, i) for s in range(k) for i in range(1, m)]
    index = {e: pos for pos, e in enumerate(edges)}
    tree = [index[(s, 1)] for s in range(k - 1)]
    tree_set = set(tree)
    cotree = [pos for pos in range(len(edges)) if pos not in tree_set]
    E, c = len(edges), len(cotree)

    def tree_path(s: int) -> np.ndarray:
        v = np.zeros(E, dtype=object)
        for u in range(s):
            v[index[(u, 1)]] += 1
        return v

    cycles = np.zeros((E, c), dtype=object)
    for col, pos in enumerate(cotree):
        s, i = edges[pos]
        v = tree_path(s)
        v[pos] += 1
        v -= tree_path((s + eps[i - 1]) % k)
        cycles[:, col] = v

    # class of x_i^k from any sheet: every edge labelled i once
    fill = np.zeros((c, m - 1), dtype=object)
    for i in range(1, m):
        for s in range(k):
            pos = index[(s, i)]
            if pos in tree_set:
                continue
            fill[cotree.index(pos), i - 1] += 1
    U, D, V = smith_normal_form(fill)
    filled = sum(1 for j in range(min(D.shape)) if D[j, j])
    if any(D[j, j] != 1 for j in range(filled)):
        raise AssertionError("puncture classes do not span a direct summand")
    schreier = {(s, i): (s + eps[i - 1]) % k for s in range(k) for i in range(1, m)}
    return CoverModel(n, k, variant, m, eps, edges, tree, cotree, cycles, fill, U,
                      _inverse_unimodular(U), filled, c - filled, schreier)


# ---------------------------------------------------------------- lifts

def _walk(model: CoverModel, w: FreeWord, start: int) -> Tuple[np.ndarray, int]:
    """Chain traced by the word from ``start`` and the end sheet."""
    k = model.k
    v = np.zeros(model.edge_count, dtype=object)
    s = start % k
    for c in w:
        if c > 0:
            v[model.edge_index(s, c)] += 1
            s = (s + model.eps[c - 1]) % k
        else:
            s = (s - model.eps[-c - 1]) % k
            v[model.edge_index(s, -c)] -= 1
    return v, s


def _eps_of(model: CoverModel, w: FreeWord) -> int:
    return sum(model.eps[abs(c) - 1] * (1 if c > 0 else -1) for c in w) % model.k


def automorphism_sign(model: CoverModel, f: SphereAutomorphism) -> int:
    """+1 if eps o f = eps, -1 if eps o f = -eps, 0 otherwise."""
    k = model.k
    vals = [(_eps_of(model, f.images[i - 1]) - model.eps[i - 1]) % k for i in range(1, model.m)]
    if all(v == 0 for v in vals):
        return 1
    if all((_eps_of(model, f.images[i - 1]) + model.eps[i - 1]) % k == 0 for i in range(1, model.m)):
        return -1
    return 0


def _chain_map(model: CoverModel, f: SphereAutomorphism, sign: int) -> np.ndarray:
    """Edge-space map induced by the based lift of f."""
    E, k, m = model.edge_count, model.k, model.m
    L = np.zeros((E, E), dtype=object)
    base = [_walk(model, f.images[i - 1], 0)[0] for i in range(1, m)]
    for pos, (s, i) in enumerate(model.edges):
        shift = (sign * s) % k
        # walking from sheet ``shift`` is the sheet-0 walk rotated by ``shift``
        v = base[i - 1]
        rolled = np.zeros(E, dtype=object)
        for q in np.nonzero(v)[0]:
            qs, qi = model.edges[q]
            rolled[model.edge_index(qs + shift, qi)] += v[q]
        L[:, pos] = rolled
    return L


def homology_matrix(model: CoverModel, f: SphereAutomorphism, sign: Optional[int] = None) -> np.ndarray:
    """Matrix of the based lift of f on the filled homology."""
    if sign is None:
        sign = automorphism_sign(model, f)
    if sign == 0:
        raise NotLiftable("automorphism does not preserve the monodromy up to sign")
    L = _chain_map(model, f, sign)
    A = _matmul(L[model.cotree, :], model.cycles)  # action on the cycle space
    B = _matmul(_matmul(model.P, A), model.P_inv)
    q = model.filled
    if np.any(B[q:, :q] != 0):
        raise AssertionError("lift does not preserve the puncture classes")
    return B[q:, q:].copy()


def cycle_space_matrix(model: CoverModel, f: SphereAutomorphism, sign: Optional[int] = None) -> np.ndarray:
    """Matrix on the unfilled homology of K (cotree coordinates)."""
    if sign is None:
        sign = automorphism_sign(model, f)
    L = _chain_map(model, f, sign)
    return _matmul(L[model.cotree, :], model.cycles)


def _conjugation(m: int, u: FreeWord) -> SphereAutomorphism:
    return SphereAutomorphism(m, [fmul(fmul(u, (j,)), finv(u)) for j in range(1, m)])


def deck_matrix(model: CoverModel) -> LiftMatrix:
    return LiftMatrix(homology_matrix(model, _conjugation(model.m, (1,)), 1), 1)


def lift_matrix(model: CoverModel, w: Word) -> LiftMatrix:
    if is_liftable(w, model.n) is ParityClass.NEITHER:
        raise NotLiftable(str(w))
    f = rep_of_word(w, model.m)
    return LiftMatrix(homology_matrix(model, f), 0)


def partial_rotation_matrix(model: CoverModel, j: int) -> LiftMatrix:
    """Rotation by one sheet of the part of the cover over a disk around p_1..p_j.

    Built directly on the Schreier graph: an edge (s, l) with l <= j is
    replaced by the walk of d = x_1...x_j from s, the edge one sheet over, and
    the walk of d back; edges with l > j are kept.  j must be odd.
    """
    if j % 2 == 0 or not 1 <= j <= model.m - 1:
        raise InvalidParams("partial rotations need an odd j < m")
    E = model.edge_count
    d = tuple(range(1, j + 1))
    L = np.zeros((E, E), dtype=object)
    for pos, (s, l) in enumerate(model.edges):
        if l > j:
            L[pos, pos] = 1
            continue
        there, s1 = _walk(model, d, s)
        back, _ = _walk(model, d, s + model.eps[l - 1])
        col = there.copy()
        col[model.edge_index(s1, l)] += 1
        col -= back
        L[:, pos] = col
    A = _matmul(L[model.cotree, :], model.cycles)
    B = _matmul(_matmul(model.P, A), model.P_inv)
    q = model.filled
    return LiftMatrix(B[q:, q:].copy(), 0)


# ------------------------------------------------------- verification

@dataclass
class CoverVerdict:
    tag: str
    verdict: str            # holds | zeta_mismatch | matrix_mismatch | projection_mismatch
    zeta_power: Optional[int] = None
    max_image_length: int = 0
    elapsed_ms: float = 0.0

    @property
    def holds(self) -> bool:
        return self.verdict == "holds"

    def __str__(self) -> str:
        if self.verdict == "zeta_mismatch":
            return f"zeta_mismatch({self.zeta_power})"
        return self.verdict

    def as_result(self) -> RelatorResult:
        return RelatorResult(self.tag, self.holds, self.max_image_length, self.elapsed_ms)


def verify_smod_relator(model: CoverModel, relator, Z: Optional[LiftMatrix] = None) -> CoverVerdict:
    """Check a relator of the symmetric group on the cover.

    The relator must hold in the liftable group (checked on the sphere:
    exactly for the boundary variant, up to inner automorphisms otherwise)
    and its based lift must act as the identity on the cover's homology.
    A lift equal to a nontrivial deck power is reported as zeta_mismatch(j).
    """
    t0 = time.perf_counter()
    word = relator.word if isinstance(relator, Relator) else relator
    tag = str(relator.tag) if isinstance(relator, Relator) else str(word)
    peak: list = []
    f = rep_of_word(word, model.m, track=peak)
    ok = f.is_identity() if model.variant == "boundary" else is_inner(f) is not None

    def done(verdict, j=None):
        return CoverVerdict(tag, verdict, j, peak[0], 1000 * (time.perf_counter() - t0))

    if not ok:
        return done("projection_mismatch")
    M = homology_matrix(model, f)
    I = identity_matrix(model.rank)
    if np.array_equal(M, I):
        return done("holds")
    Z = Z or deck_matrix(model)
    P = I
    for j in range(1, model.k):
        P = _matmul(P, Z.matrix)
        if np.array_equal(M, P):
            return done("zeta_mismatch", j)
    return done("matrix_mismatch")


def verify_presentation(model: CoverModel, relators: Sequence[Relator]) -> List[CoverVerdict]:
    Z = deck_matrix(model)
    return [verify_smod_relator(model, rel, Z) for rel in relators]


# ------------------------------------------------------ boundary twist

def boundary_twist_action(model: CoverModel, power: int = 1) -> Dict[str, object]:
    """Compare the based lift of t_{1,2n+1}^(k*power) with the boundary twist on K.

    On K the boundary twist acts as conjugation by the loop x_m^(k*power)
    around the single preimage of the last puncture.  Returns whether the
    lift equals that conjugation on every Schreier generator, and whether it
    moves some generator (so it is not the identity of K).
    """
    m, n, k = model.m, model.n, model.k
    f = rep_of_word(t(1, 2 * n + 1, k * power), m)
    xm = finv(tuple(range(1, m)))
    loop: FreeWord = ()
    for _ in range(k * power):
        loop = fmul(loop, finv(xm))
    conj = _conjugation(m, loop)
    basis = model.kernel_basis
    same = all(f.apply(g) == conj.apply(g) for g in basis)
    moved = any(f.apply(g) != g for g in basis)
    return {"equals_boundary_twist": same, "nontrivial_on_kernel": moved, "loop_length": len(loop)}
