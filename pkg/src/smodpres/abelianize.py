"""Abelianization of finite presentations by exact integer Smith normal form."""
from __future__ import annotations

import json
from dataclasses import dataclass
from math import gcd
from typing import List, Optional, Sequence, Tuple

import numpy as np

from .presentations import Presentation, build


def as_int_matrix(rows: Sequence[Sequence[int]], ncols: Optional[int] = None) -> np.ndarray:
    """Exact integer matrix (numpy object array holding Python ints)."""
    rows = [list(map(int, r)) for r in rows]
    if ncols is None:
        ncols = len(rows[0]) if rows else 0
    out = np.zeros((len(rows), ncols), dtype=object)
    for i, r in enumerate(rows):
        if len(r) != ncols:
            raise ValueError("ragged matrix")
        out[i, :] = r
    return out


def identity_matrix(n: int) -> np.ndarray:
    out = np.zeros((n, n), dtype=object)
    for i in range(n):
        out[i, i] = 1
    return out


def exponent_matrix(p: Presentation) -> np.ndarray:
    """Rows are relators, columns generators, entries exponent sums."""
    col = {g: j for j, g in enumerate(p.generators)}
    out = np.zeros((len(p.relators), len(p.generators)), dtype=object)
    for i, rel in enumerate(p.relators):
        for g, e in rel.word.letters:
            out[i, col[g]] += e
    return out


def _to_lists(A) -> List[List[int]]:
    return [[int(v) for v in row] for row in np.asarray(A, dtype=object).tolist()] if len(A) else []


def smith_normal_form(A) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Return (U, D, V) with U A V = D, U and V unimodular, D diagonal with d1 | d2 | ...

    Pivots are chosen by smallest absolute value to keep entries small.
    """
    A0 = np.asarray(A, dtype=object)
    m, n = A0.shape
    a = _to_lists(A0) if m else []
    U = [[int(i == j) for j in range(m)] for i in range(m)]
    V = [[int(i == j) for j in range(n)] for i in range(n)]

    def swap_rows(i, j):
        a[i], a[j] = a[j], a[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for row in a:
            row[i], row[j] = row[j], row[i]
        for row in V:
            row[i], row[j] = row[j], row[i]

    def add_row(dst, src, q):  # row_dst -= q * row_src
        ra, rs = a[dst], a[src]
        for c in range(n):
            if rs[c]:
                ra[c] -= q * rs[c]
        ua, us = U[dst], U[src]
        for c in range(m):
            if us[c]:
                ua[c] -= q * us[c]

    def add_col(dst, src, q):  # col_dst -= q * col_src
        for row in a:
            if row[src]:
                row[dst] -= q * row[src]
        for row in V:
            if row[src]:
                row[dst] -= q * row[src]

    for t in range(min(m, n)):
        while True:
            best = None
            for i in range(t, m):
                row = a[i]
                for j in range(t, n):
                    v = row[j]
                    if v and (best is None or abs(v) < best[0]):
                        best = (abs(v), i, j)
                        if best[0] == 1:
                            break
                if best and best[0] == 1:
                    break
            if best is None:
                break
            _, i, j = best
            if i != t:
                swap_rows(i, t)
            if j != t:
                swap_cols(j, t)
            p = a[t][t]
            dirty = False
            for i in range(t + 1, m):
                if a[i][t]:
                    q = a[i][t] // p
                    add_row(i, t, q)
                    dirty = dirty or a[i][t] != 0
            for j in range(t + 1, n):
                if a[t][j]:
                    q = a[t][j] // p
                    add_col(j, t, q)
                    dirty = dirty or a[t][j] != 0
            if dirty:
                continue
            bad = next(((i, j) for i in range(t + 1, m) for j in range(t + 1, n) if a[i][j] % p), None)
            if bad is None:
                break
            add_row(t, bad[0], -1)
        if t < m and a[t][t] < 0:
            a[t] = [-v for v in a[t]]
            U[t] = [-v for v in U[t]]
        if all(a[i][j] == 0 for i in range(t, m) for j in range(t, n)):
            break
    return as_int_matrix(U, m), as_int_matrix(a, n), as_int_matrix(V, n)


def invariant_factors(A) -> List[int]:
    """Nonzero diagonal of the Smith form, computed without transforms."""
    rows = [r for r in _to_lists(np.asarray(A, dtype=object)) if any(r)]
    if not rows:
        return []
    _, D, _ = _smith_rows(rows)
    return D


def _smith_rows(rows: List[List[int]]):
    # elimination on the row space first keeps the matrix small for tall inputs
    n = len(rows[0])
    basis: List[List[int]] = []
    for r in rows:
        r = list(r)
        for b in basis:
            piv = next(c for c, v in enumerate(b) if v)
            if r[piv]:
                g = gcd(b[piv], r[piv])
                if r[piv] % b[piv] == 0:
                    q = r[piv] // b[piv]
                    r = [x - q * y for x, y in zip(r, b)]
                else:
                    # extended-gcd combination keeps the lattice unchanged
                    x0, y0 = _xgcd(b[piv], r[piv])
                    new_b = [x0 * u + y0 * v for u, v in zip(b, r)]
                    r = [(b[piv] // g) * v - (r[piv] // g) * u for u, v in zip(b, r)]
                    b[:] = new_b
        if any(r):
            basis.append(r)
            basis.sort(key=lambda v: next(c for c, x in enumerate(v) if x))
    _, D, _ = smith_normal_form(as_int_matrix(basis, n))
    return None, [int(D[i, i]) for i in range(min(D.shape)) if D[i, i]], None


def _xgcd(a: int, b: int) -> Tuple[int, int]:
    """x, y with x a + y b = gcd(a, b)."""
    x0, x1, y0, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    if a < 0:
        x0, y0 = -x0, -y0
    return x0, y0


@dataclass(frozen=True)
class AbelianGroup:
    free_rank: int
    torsion: Tuple[int, ...] = ()

    @classmethod
    def canonical(cls, free_rank: int, divisors: Sequence[int]) -> "AbelianGroup":
        """Canonical invariant-factor form from arbitrary cyclic orders."""
        primes: dict = {}
        for d in divisors:
            d = abs(int(d))
            if d == 0:
                free_rank += 1
                continue
            p = 2
            while d > 1:
                if p * p > d:
                    p = d
                e = 0
                while d % p == 0:
                    d //= p
                    e += 1
                if e:
                    primes.setdefault(p, []).append(p ** e)
                p += 1
        for v in primes.values():
            v.sort(reverse=True)
        length = max((len(v) for v in primes.values()), default=0)
        out = []
        for pos in range(length):
            d = 1
            for v in primes.values():
                if pos < len(v):
                    d *= v[pos]
            out.append(d)
        return cls(free_rank, tuple(sorted(out)))

    def __str__(self) -> str:
        parts = [f"Z^{self.free_rank}"] if self.free_rank else []
        parts += [f"Z_{d}" for d in self.torsion]
        return " (+) ".join(parts) if parts else "0"

    def as_dict(self) -> dict:
        return {"free_rank": self.free_rank, "torsion": list(self.torsion)}

    def to_json(self) -> str:
        return json.dumps(self.as_dict())


def h1(p: Presentation) -> AbelianGroup:
    A = exponent_matrix(p)
    factors = invariant_factors(A)
    return AbelianGroup(len(p.generators) - len(factors), tuple(d for d in factors if d > 1))


def expected_h1(family: str, n: int, k: Optional[int] = None) -> AbelianGroup:
    """Closed forms for the first homology of the liftable and symmetric groups."""
    fam = family.lower()
    odd = n % 2 == 1
    if fam in ("pmod", "pmod0m"):
        return AbelianGroup(max(0, n * (n - 3) // 2))
    if fam == "lmod-closed":
        return AbelianGroup(1, (2, 2) if odd else (2,))
    if fam == "lmod-marked":
        if n == 1:
            return AbelianGroup(1, (2,))
        return AbelianGroup(2, (2 * n,) if odd else (n,))
    if fam in ("lmod-boundary", "smod-boundary"):
        return AbelianGroup(2 if n == 1 else 3)
    if k is None:
        raise ValueError("SMod families need k")
    if fam == "smod-closed":
        if not odd:
            return AbelianGroup(1, (2,))
        return AbelianGroup(1, (2, 4) if k % 2 == 0 else (2, 2))
    if fam == "smod-marked":
        if n == 1:
            return AbelianGroup(1, (2 * k,))
        return AbelianGroup.canonical(2, [2 * k * n if odd else k * n])
    raise ValueError(f"no closed form for {family!r}")


def h1_of(family: str, n: int, k: Optional[int] = None) -> AbelianGroup:
    return h1(build(family, n=n, k=k))
