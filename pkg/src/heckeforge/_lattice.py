"""Integer linear algebra helpers: membership and solving in Z-spans."""
from __future__ import annotations

from fractions import Fraction
from typing import Sequence


def _echelon(rows: list[list[int]]):
    """Integer row echelon form ``H = U @ rows`` with U unimodular.

    Returns (H, U, pivots) where ``pivots[k]`` is the pivot column of row k.
    """
    m = len(rows)
    n = len(rows[0]) if rows else 0
    H = [list(r) for r in rows]
    U = [[int(i == j) for j in range(m)] for i in range(m)]
    pivots = []
    r = 0
    for col in range(n):
        if r >= m:
            break
        # euclid on column entries below r
        while True:
            nz = [i for i in range(r, m) if H[i][col] != 0]
            if not nz:
                break
            piv = min(nz, key=lambda i: abs(H[i][col]))
            H[r], H[piv] = H[piv], H[r]
            U[r], U[piv] = U[piv], U[r]
            done = True
            for i in range(r + 1, m):
                if H[i][col]:
                    f = H[i][col] // H[r][col]
                    H[i] = [a - f * b for a, b in zip(H[i], H[r])]
                    U[i] = [a - f * b for a, b in zip(U[i], U[r])]
                    if H[i][col]:
                        done = False
            if done:
                break
        if any(H[i][col] for i in range(r, m)):
            pivots.append(col)
            r += 1
    return H[:r], U[:r], pivots


class IntegerSpan:
    """The Z-span of a list of integer generators, with exact membership tests."""

    def __init__(self, generators: Sequence[Sequence[int]], dim: int):
        self.dim = dim
        self.generators = [tuple(int(x) for x in g) for g in generators]
        if self.generators:
            self._H, self._U, self._piv = _echelon([list(g) for g in self.generators])
        else:
            self._H, self._U, self._piv = [], [], []

    @property
    def rank(self) -> int:
        return len(self._piv)

    def solve(self, v: Sequence[int]) -> tuple[int, ...] | None:
        """Integer coefficients c with ``sum c_i g_i == v``, or None."""
        rem = [int(x) for x in v]
        d = []
        for row, col in zip(self._H, self._piv):
            f, r = divmod(rem[col], row[col])
            if r:
                return None
            d.append(f)
            if f:
                rem = [a - f * b for a, b in zip(rem, row)]
        if any(rem):
            return None
        k = len(self.generators)
        c = [0] * k
        for f, urow in zip(d, self._U):
            for j in range(k):
                c[j] += f * urow[j]
        return tuple(c)

    def contains(self, v: Sequence[int]) -> bool:
        return self.solve(v) is not None


def rational_rank(rows: Sequence[Sequence[int]]) -> int:
    """Rank over Q by fraction-exact Gaussian elimination."""
    M = [[Fraction(x) for x in r] for r in rows]
    rank = 0
    ncols = len(M[0]) if M else 0
    for col in range(ncols):
        piv = next((i for i in range(rank, len(M)) if M[i][col] != 0), None)
        if piv is None:
            continue
        M[rank], M[piv] = M[piv], M[rank]
        for i in range(len(M)):
            if i != rank and M[i][col] != 0:
                f = M[i][col] / M[rank][col]
                M[i] = [a - f * b for a, b in zip(M[i], M[rank])]
        rank += 1
    return rank


def modular_rank(rows: Sequence[Sequence[int]], p: int = 2_147_483_647) -> int:
    """Rank over F_p; a lower bound for the rank over Q."""
    M = [[x % p for x in r] for r in rows]
    rank = 0
    ncols = len(M[0]) if M else 0
    for col in range(ncols):
        piv = next((i for i in range(rank, len(M)) if M[i][col]), None)
        if piv is None:
            continue
        M[rank], M[piv] = M[piv], M[rank]
        inv = pow(M[rank][col], p - 2, p)
        M[rank] = [(a * inv) % p for a in M[rank]]
        for i in range(len(M)):
            if i != rank and M[i][col]:
                f = M[i][col]
                M[i] = [(a - f * b) % p for a, b in zip(M[i], M[rank])]
        rank += 1
    return rank
