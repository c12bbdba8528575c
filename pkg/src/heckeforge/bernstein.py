"""Bernstein elements theta_lambda and the orbit-sum basis z_mu of the center.

For dominant lambda, theta_lambda is the costandard class of t(lambda); for
antidominant lambda it is the standard class.  A general lambda is written as
lambda1 - lambda2 with both parts dominant and

    theta_lambda = q^(-k) * theta_lambda1 * theta_(-lambda2),
    k = (l(t(lambda1)) + l(t(lambda2)) - l(t(lambda))) / 2,

which is theta_lambda1 * theta_lambda2^{-1} rescaled; membership in Z[q] is
asserted on every result.
"""
from __future__ import annotations

import itertools
from typing import Sequence

from .errors import CentralityViolation, IntegralityViolation, ParityViolation
from .hecke import HeckeAlgebra, HeckeElement, hecke_algebra
from .rootdata import RootDatum

__all__ = [
    "theta",
    "theta_from_decomposition",
    "canonical_decomposition",
    "theta_relation_exponent",
    "z_basis_element",
    "is_central",
    "STANDARD",
    "OPPOSITE",
]

STANDARD = "standard"
OPPOSITE = "opposite"


def _algebra(obj) -> HeckeAlgebra:
    return obj if isinstance(obj, HeckeAlgebra) else hecke_algebra(obj)


def _tlen(H: HeckeAlgebra, lam) -> int:
    return H.G.length(H.G.translation(lam))


def theta_relation_exponent(rd_or_H, lam: Sequence[int], mu: Sequence[int]) -> int:
    """Exponent e in theta_lam * theta_mu = q^e * theta_(lam+mu)."""
    H = _algebra(rd_or_H)
    s = tuple(a + b for a, b in zip(lam, mu))
    twice = _tlen(H, lam) + _tlen(H, mu) - _tlen(H, s)
    if twice % 2 or twice < 0:
        raise ParityViolation(
            f"l(t({list(lam)})) + l(t({list(mu)})) - l(t({list(s)})) = {twice} is not a nonnegative even number",
            {"lam": list(lam), "mu": list(mu)},
        )
    return twice // 2


def _in_cone(rd: RootDatum, lam, borel: str) -> bool:
    if borel == STANDARD:
        return rd.is_dominant(lam)
    return rd.is_dominant(tuple(-a for a in lam))


def canonical_decomposition(rd: RootDatum, lam: Sequence[int], borel: str = STANDARD) -> tuple[tuple, tuple]:
    """``lam = lam1 - lam2`` with both parts in the closed cone and l(t(lam2)) minimal.

    For the opposite Borel the cone is the antidominant one.
    """
    lam = tuple(lam)
    sign = 1 if borel == STANDARD else -1
    r = rd.num_simple
    if _in_cone(rd, lam, borel) or r == 0:
        return lam, (0,) * rd.rank
    pair = [sign * sum(a * b for a, b in zip(al, lam)) for al in rd.simple_roots]
    need = [max(0, -p) for p in pair]
    # 2 rho = sum_i c_i alpha_i, so l(t(lam2)) = sum_i c_i <alpha_i, lam2> on the cone
    weights = [sum(c[i] for c in rd.root_coefficients) for i in range(r)]
    span = rd.pairing_span
    det = _abs_det(rd.cartan_matrix)
    best = None
    for d in itertools.product(range(det), repeat=r):
        p = tuple(n + e for n, e in zip(need, d))
        x = span.solve(p)
        if x is None:
            continue
        cost = sum(w * v for w, v in zip(weights, p))
        key = (cost, p)
        if best is None or key < best[0]:
            best = (key, x)
    assert best is not None, "lattice image misses a residue box"
    lam2 = tuple(sign * v for v in best[1])
    lam1 = tuple(a + b for a, b in zip(lam, lam2))
    return lam1, lam2


def _abs_det(C) -> int:
    from fractions import Fraction

    M = [[Fraction(x) for x in row] for row in C]
    n = len(M)
    det = Fraction(1)
    for c in range(n):
        p = next(i for i in range(c, n) if M[i][c] != 0)
        if p != c:
            M[c], M[p] = M[p], M[c]
            det = -det
        det *= M[c][c]
        for i in range(c + 1, n):
            f = M[i][c] / M[c][c]
            M[i] = [a - f * b for a, b in zip(M[i], M[c])]
    return max(1, abs(int(det)))


def theta_from_decomposition(rd_or_H, lam1: Sequence[int], lam2: Sequence[int], borel: str = STANDARD) -> HeckeElement:
    """theta_(lam1 - lam2) computed from the given cone decomposition."""
    H = _algebra(rd_or_H)
    rd = H.rd
    lam1, lam2 = tuple(lam1), tuple(lam2)
    if not (_in_cone(rd, lam1, borel) and _in_cone(rd, lam2, borel)):
        raise ValueError(f"{lam1}, {lam2} are not both in the {borel} dominant cone")
    G = H.G
    lam = tuple(a - b for a, b in zip(lam1, lam2))
    k = theta_relation_exponent(H, lam1, tuple(-b for b in lam2))
    # theta_(-lam2) is a signed standard class, a single term
    h = H.standard_class(G.translation(tuple(-b for b in lam2)))
    h = H.lmul_costandard(G.translation(lam1), h)
    res = h.shift(-k)
    if not res.is_polynomial():
        raise IntegralityViolation(
            f"theta_{list(lam)} has negative powers of q", {"lam": list(lam), "borel": borel}
        )
    return res


def theta(rd_or_H, lam: Sequence[int], borel: str = STANDARD) -> HeckeElement:
    """The Bernstein element theta_lam (memoized per algebra)."""
    H = _algebra(rd_or_H)
    lam = tuple(int(a) for a in lam)
    cache = H.rd._cache.setdefault(("theta", borel), {})
    hit = cache.get(lam)
    if hit is not None:
        return hit
    lam1, lam2 = canonical_decomposition(H.rd, lam, borel)
    res = theta_from_decomposition(H, lam1, lam2, borel)
    cache[lam] = res
    return res


def is_central(h: HeckeElement) -> bool:
    return h.algebra.is_central(h)


def z_basis_element(rd_or_H, mu: Sequence[int], borel: str = STANDARD, check: bool = True) -> HeckeElement:
    """z_mu = sum of theta_lam over the W0-orbit of the dominant mu."""
    H = _algebra(rd_or_H)
    mu = tuple(int(a) for a in mu)
    if not H.rd.is_dominant(mu):
        raise ValueError(f"{mu} is not dominant")
    cache = H.rd._cache.setdefault(("z", borel), {})
    hit = cache.get(mu)
    if hit is None:
        hit = H.zero()
        for lam in H.rd.orbit(mu):
            hit = hit + theta(H, lam, borel)
        cache[mu] = hit
    if check:
        bad = H.first_noncommuting(hit)
        if bad is not None:
            raise CentralityViolation(
                f"z_{list(mu)} does not commute with T[{H.G.format(bad)}]",
                {"mu": list(mu), "generator": H.G.to_json(bad)},
            )
    return hit
