"""Characters of the Langlands dual group.

The dual group has roots the coroots of G and weight lattice X_*(T), so all
weights here are cocharacters.  Multiplicities come from Freudenthal's
recursion with an integer W0-invariant form; the Weyl character formula
(alternant division in the group ring) is kept as an independent oracle.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Sequence

from .errors import NegativeMultiplicity, OracleMismatch
from .exactpoly import GroupRingElement, gr_weyl_symmetrize
from .rootdata import RootDatum

__all__ = [
    "Character",
    "DualSystem",
    "weight_multiplicities",
    "weyl_character_oracle",
    "weyl_dimension",
    "tensor_multiplicities",
    "character_product",
]


@dataclass(frozen=True)
class Character:
    highest_weight: tuple
    mults: dict

    def __getitem__(self, nu) -> int:
        return self.mults.get(tuple(nu), 0)

    @property
    def dimension(self) -> int:
        return sum(self.mults.values())

    def dominant_weights(self, rd: RootDatum) -> list[tuple]:
        return sorted((nu for nu in self.mults if rd.is_dominant(nu)), key=lambda nu: (-rd.rho_pairing(nu), nu))

    def to_group_ring(self) -> GroupRingElement:
        return GroupRingElement(self.mults)

    def to_json(self) -> dict:
        return {
            "hw": list(self.highest_weight),
            "mults": [{"wt": list(nu), "m": m} for nu, m in sorted(self.mults.items())],
        }

    @classmethod
    def from_json(cls, obj) -> "Character":
        return cls(tuple(obj["hw"]), {tuple(e["wt"]): int(e["m"]) for e in obj["mults"]})


class DualSystem:
    """Root system of the dual group on X_*(T): positive roots = positive coroots of G."""

    def __init__(self, rd: RootDatum):
        self.rd = rd
        self.pos = rd.positive_coroots
        n = rd.rank
        # sum_w w^T w is W0-invariant and positive definite
        B = [[0] * n for _ in range(n)]
        for w in rd.weyl:
            M = w.matrix
            for i in range(n):
                for j in range(n):
                    B[i][j] += sum(M[k][i] * M[k][j] for k in range(n))
        self.form = tuple(tuple(r) for r in B)
        self.two_rho = tuple(sum(a[k] for a in self.pos) for k in range(n))

    def inner(self, x, y) -> int:
        B = self.form
        return sum(x[i] * B[i][j] * y[j] for i in range(len(x)) for j in range(len(y)) if B[i][j])

    @cached_property
    def simple(self) -> tuple:
        return self.rd.simple_coroots


def _dual(rd: RootDatum) -> DualSystem:
    d = rd._cache.get("dual")
    if d is None:
        d = rd._cache["dual"] = DualSystem(rd)
    return d


def _check_dominant(rd: RootDatum, mu) -> tuple:
    mu = tuple(int(a) for a in mu)
    if not rd.is_dominant(mu):
        raise ValueError(f"{mu} is not dominant")
    return mu


def dominant_weights_below(rd: RootDatum, mu: Sequence[int]) -> list[tuple]:
    """Dominant nu with mu - nu a nonnegative combination of simple coroots."""
    mu = tuple(mu)
    r = rd.num_simple
    # <2 rho, mu - nu> = 2 * sum(c) and <2 rho, nu> >= 0 bound the search
    top = rd.rho_pairing(mu) // 2
    out = []
    for c in itertools.product(range(top + 1), repeat=r):
        if sum(c) > top:
            continue
        nu = tuple(
            mu[k] - sum(c[i] * rd.simple_coroots[i][k] for i in range(r)) for k in range(rd.rank)
        )
        if rd.is_dominant(nu):
            out.append(nu)
    return sorted(set(out), key=lambda nu: (-rd.rho_pairing(nu), nu))


def weight_multiplicities(rd: RootDatum, mu: Sequence[int], check_oracle: bool = False) -> Character:
    """Freudenthal's formula.

        (|mu+rho|^2 - |nu+rho|^2) m(nu) = 2 sum_{a>0} sum_{k>=1} m(nu+ka) (nu+ka, a)

    evaluated with doubled rho so everything stays integral.
    """
    mu = _check_dominant(rd, mu)
    cache = rd._cache.setdefault("freudenthal", {})
    if mu in cache and not check_oracle:
        return cache[mu]
    D = _dual(rd)
    doms = dominant_weights_below(rd, mu)
    dom_set = set(doms)
    m: dict[tuple, int] = {}

    def mult(x):
        d = rd.dominant_representative(x)[0]
        if d not in dom_set:
            return 0
        return m.get(d, 0)

    for nu in doms:
        if nu == mu:
            m[nu] = 1
            continue
        # |mu+rho|^2 - |nu+rho|^2 = (mu - nu, mu + nu + 2rho)
        s = tuple(a + b + c for a, b, c in zip(mu, nu, D.two_rho))
        lhs = D.inner(tuple(a - b for a, b in zip(mu, nu)), s)
        rhs = 0
        for a in D.pos:
            k = 1
            while True:
                x = tuple(p + k * q for p, q in zip(nu, a))
                mx = mult(x)
                if not mx:
                    break
                rhs += mx * D.inner(x, a)
                k += 1
        rhs *= 2
        val, rem = divmod(rhs, lhs)
        if rem:
            raise OracleMismatch(f"Freudenthal recursion not integral at {nu}")
        m[nu] = val
    mults = {}
    for nu, v in m.items():
        if v:
            for x in rd.orbit(nu):
                mults[x] = v
    ch = Character(mu, dict(sorted(mults.items())))
    if check_oracle:
        other = weyl_character_oracle(rd, mu)
        if other.mults != ch.mults:
            raise OracleMismatch(f"Freudenthal and Weyl character formula disagree for {mu}", {"mu": list(mu)})
    cache[mu] = ch
    return ch


def weyl_character_oracle(rd: RootDatum, mu: Sequence[int]) -> Character:
    """ch V(mu) = A(mu + rho) / A(rho), computed in the group ring on doubled coordinates."""
    mu = _check_dominant(rd, mu)
    D = _dual(rd)
    two_mu_rho = tuple(2 * a + b for a, b in zip(mu, D.two_rho))
    num = gr_weyl_symmetrize(rd, GroupRingElement.monomial(two_mu_rho))
    den = gr_weyl_symmetrize(rd, GroupRingElement.monomial(D.two_rho))
    # the quotient lives on the sublattice 2 X_*; halve exponents
    q = _halve(num.divide_exact(den))
    return Character(mu, dict(sorted(q.coeffs.items())))


def _halve(g: GroupRingElement) -> GroupRingElement:
    out = {}
    for k, v in g.coeffs.items():
        if any(x % 2 for x in k):
            raise OracleMismatch("Weyl character quotient has odd exponents")
        out[tuple(x // 2 for x in k)] = v
    return GroupRingElement(out)


def weyl_dimension(rd: RootDatum, mu: Sequence[int]) -> int:
    """prod over positive coroots a of <mu + rho_dual, a^vee> / <rho_dual, a^vee>, with a^vee the root of G."""
    mu = _check_dominant(rd, mu)
    D = _dual(rd)
    num = Fraction(1)
    for alpha in rd.positive_roots:
        r = Fraction(sum(a * b for a, b in zip(alpha, D.two_rho)), 2)
        num *= (sum(a * b for a, b in zip(alpha, mu)) + r) / r
    assert num.denominator == 1
    return int(num)


def character_product(a: Character, b: Character) -> GroupRingElement:
    return a.to_group_ring() * b.to_group_ring()


def tensor_multiplicities(rd: RootDatum, mu: Sequence[int], mu2: Sequence[int]) -> dict[tuple, int]:
    """Decompose V(mu) x V(mu2) by stripping highest weights off the product character."""
    mu = _check_dominant(rd, mu)
    mu2 = _check_dominant(rd, mu2)
    rest = character_product(weight_multiplicities(rd, mu), weight_multiplicities(rd, mu2))
    out: dict[tuple, int] = {}
    while rest:
        doms = [nu for nu, v in rest.coeffs.items() if rd.is_dominant(nu)]
        if not doms:
            raise NegativeMultiplicity("remaining character has no dominant weight")
        top = max(doms, key=lambda nu: (rd.rho_pairing(nu), nu))
        c = rest[top]
        if c < 0:
            raise NegativeMultiplicity(f"negative multiplicity {c} at {top}", {"weight": list(top)})
        out[top] = c
        rest = rest - weight_multiplicities(rd, top).to_group_ring().scale(c)
    return dict(sorted(out.items(), key=lambda kv: (-rd.rho_pairing(kv[0]), kv[0])))
