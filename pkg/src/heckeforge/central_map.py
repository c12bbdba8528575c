"""Central elements Z_mu, the z-basis expansion and generic Satake constants.

    Z_mu = sum_nu m_mu(nu) q^((l(t(mu)) - l(t(nu))) / 2) theta_nu

with m_mu(nu) the weight multiplicity of nu in the dual-group
representation V(mu).  Expansion of a central element in the orbit-sum
basis z_mu is read off from the T-coefficients at dominant translations,
largest length first.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Sequence

from .bernstein import STANDARD, _algebra, theta, z_basis_element
from .dual_weights import tensor_multiplicities, weight_multiplicities
from .errors import (
    BasisEscape,
    CentralityViolation,
    IntegralityViolation,
    NotInThetaSpan,
    ParityViolation,
)
from .exactpoly import LaurentPoly, GroupRingElement
from .hecke import HeckeAlgebra, HeckeElement
from .rootdata import RootDatum

__all__ = [
    "central_ic_class",
    "expand_in_z_basis",
    "satake_structure_constants",
    "verify_bernstein_iso",
    "dominant_cocharacters",
    "dominance_leq",
    "z_expansion_character",
    "BernsteinReport",
    "spherical_crosscheck",
]


def _tlen(H: HeckeAlgebra, lam) -> int:
    return H.G.length(H.G.translation(lam))


def central_ic_class(rd_or_H, mu: Sequence[int], borel: str = STANDARD, check: bool = True) -> HeckeElement:
    """Z_mu built from weight multiplicities and Bernstein elements."""
    H = _algebra(rd_or_H)
    rd = H.rd
    mu = tuple(int(a) for a in mu)
    if not rd.is_dominant(mu):
        raise ValueError(f"{mu} is not dominant")
    cache = rd._cache.setdefault(("Z", borel), {})
    hit = cache.get(mu)
    if hit is None:
        top = _tlen(H, mu)
        hit = H.zero()
        for nu, m in weight_multiplicities(rd, mu).mults.items():
            d = top - _tlen(H, nu)
            if d % 2 or d < 0:
                raise ParityViolation(
                    f"l(t(mu)) - l(t(nu)) = {d} for mu={list(mu)}, nu={list(nu)}",
                    {"mu": list(mu), "nu": list(nu)},
                )
            hit = hit + theta(H, nu, borel).shift(d // 2).scale(m)
        if not hit.is_polynomial():
            raise IntegralityViolation(f"Z_{list(mu)} has negative powers of q", {"mu": list(mu)})
        cache[mu] = hit
    if check:
        bad = H.first_noncommuting(hit)
        if bad is not None:
            raise CentralityViolation(
                f"Z_{list(mu)} does not commute with T[{H.G.format(bad)}]",
                {"mu": list(mu), "generator": H.G.to_json(bad)},
            )
    return hit


def _dominant_key(H: HeckeAlgebra, lam):
    return (_tlen(H, lam), lam)


def expand_in_z_basis(rd_or_H, h: HeckeElement, borel: str = STANDARD) -> dict[tuple, LaurentPoly]:
    """Coefficients c with h = sum_mu c_mu z_mu.

    The T-coefficient of z_kappa at t(kappa) is (-1)^l(t(kappa)), and every
    other z of no larger length vanishes there, so peeling off the longest
    dominant translation terminates.
    """
    H = _algebra(rd_or_H)
    rd = H.rd
    G = H.G
    rest = h
    out: dict[tuple, LaurentPoly] = {}
    guard = 0
    while not rest.is_zero():
        doms = [x.lam for x in rest.terms if x.w == 0 and rd.is_dominant(x.lam)]
        if not doms:
            raise NotInThetaSpan(
                "central element has no dominant translation in its support",
                {"residual": rest.to_json()},
            )
        kappa = max(doms, key=lambda lam: _dominant_key(H, lam))
        c = rest.coeff(G.translation(kappa))
        if _tlen(H, kappa) % 2:
            c = -c
        if kappa in out:
            raise NotInThetaSpan(f"z-expansion revisits {list(kappa)}", {"mu": list(kappa)})
        out[kappa] = c
        rest = rest - z_basis_element(H, kappa, borel, check=False).scale(c)
        guard += 1
        if guard > 10_000:
            raise NotInThetaSpan("z-expansion did not terminate")
    return dict(sorted(out.items(), key=lambda kv: (-_tlen(H, kv[0]), kv[0])))


def _solve_against_Z(H: HeckeAlgebra, zexp: dict, borel: str) -> dict[tuple, LaurentPoly]:
    """Rewrite a z-expansion in the basis {Z_mu} (unitriangular in z)."""
    rest = {k: v for k, v in zexp.items() if not v.is_zero()}
    out: dict[tuple, LaurentPoly] = {}
    while rest:
        kappa = max(rest, key=lambda lam: _dominant_key(H, lam))
        c = rest.pop(kappa)
        out[kappa] = c
        zk = expand_in_z_basis(H, central_ic_class(H, kappa, borel, check=False), borel)
        if zk.get(kappa) != LaurentPoly.const(1):
            raise BasisEscape(f"Z_{list(kappa)} is not unitriangular in the z-basis", {"mu": list(kappa)})
        for nu, v in zk.items():
            if nu == kappa:
                continue
            new = rest.get(nu, LaurentPoly()) - c * v
            if new.is_zero():
                rest.pop(nu, None)
            else:
                rest[nu] = new
    return dict(sorted(out.items(), key=lambda kv: (-_tlen(H, kv[0]), kv[0])))


def satake_structure_constants(
    rd_or_H, mu: Sequence[int], mu2: Sequence[int], borel: str = STANDARD
) -> dict[tuple, LaurentPoly]:
    """c with Z_mu * Z_mu2 = sum c_nu Z_nu, computed by multiplying in H(q)."""
    H = _algebra(rd_or_H)
    prod = central_ic_class(H, mu, borel, check=False) * central_ic_class(H, mu2, borel, check=False)
    return _solve_against_Z(H, expand_in_z_basis(H, prod, borel), borel)


def z_expansion_character(rd: RootDatum, zexp: dict, q0: int = 1) -> GroupRingElement:
    """Specialize sum c_mu z_mu at q = q0 and send theta_lam to e^lam."""
    out = GroupRingElement()
    for mu, c in zexp.items():
        v = c(q0)
        if v:
            out = out + GroupRingElement({lam: v for lam in rd.orbit(mu)})
    return out


def _central_lattice(rd: RootDatum, box: int) -> list[tuple]:
    out = []
    for v in itertools.product(range(-box, box + 1), repeat=rd.rank):
        if all(sum(a * b for a, b in zip(al, v)) == 0 for al in rd.simple_roots):
            out.append(v)
    return out


def dominant_cocharacters(rd: RootDatum, bound: int, central_box: int = 1) -> list[tuple]:
    """Dominant mu with l(t(mu)) <= bound.

    When X_*/Z Phi^vee is infinite the central directions are unbounded in
    length zero; they are cut off at ``central_box`` in each coordinate.
    """
    r = rd.num_simple
    weights = [sum(c[i] for c in rd.root_coefficients) for i in range(r)]
    span = rd.pairing_span
    centre = [(0,) * rd.rank] if rd.is_semisimple else _central_lattice(rd, central_box)
    found = set()
    ranges = [range(bound // w + 1) for w in weights]
    for p in itertools.product(*ranges):
        if sum(w * x for w, x in zip(weights, p)) > bound:
            continue
        x = span.solve(p)
        if x is None:
            continue
        for c in centre:
            found.add(tuple(a + b for a, b in zip(x, c)))
    return sorted(found, key=lambda mu: (rd.rho_pairing(mu), mu))


def dominance_leq(rd: RootDatum, nu, mu) -> bool:
    """mu - nu is a nonnegative integer combination of simple coroots."""
    c = rd.coroot_span.solve(tuple(a - b for a, b in zip(mu, nu)))
    return c is not None and all(x >= 0 for x in c)


@dataclass
class BernsteinReport:
    group: str
    bound: int
    checks: list = field(default_factory=list)
    products: list = field(default_factory=list)
    counterexample: dict | None = None

    @property
    def passed(self) -> bool:
        return self.counterexample is None and all(
            c["central"] and c["unitriangular"] and c["integral"] for c in self.checks
        ) and all(p["commute"] and p["constants_match"] for p in self.products)

    def to_json(self) -> dict:
        out = {"group": self.group, "bound": self.bound, "checks": self.checks, "products": self.products,
               "pass": self.passed}
        if self.counterexample is not None:
            out["counterexample"] = self.counterexample
        return out


def verify_bernstein_iso(
    rd_or_H,
    bound: int,
    borel: str = STANDARD,
    product_bound: int | None = None,
    central_box: int = 1,
) -> BernsteinReport:
    """Check Z_mu against z_mu for every dominant mu with l(t(mu)) <= bound.

    Per mu: Z_mu is central, its z-expansion has leading coefficient 1 at mu,
    only shorter (or equal-length, smaller) dominant weights below it, and
    Z[q] entries.  Products Z_mu Z_mu2 with l(t(mu)) + l(t(mu2)) <=
    ``product_bound`` are checked for commutativity and against tensor
    multiplicities at q = 1.  Stops at the first failure.
    """
    H = _algebra(rd_or_H)
    rd = H.rd
    report = BernsteinReport(rd.name, bound)
    mus = dominant_cocharacters(rd, bound, central_box)
    for mu in mus:
        Z = central_ic_class(H, mu, borel, check=False)
        bad = H.first_noncommuting(Z)
        central = bad is None
        zexp = expand_in_z_basis(H, Z, borel) if central else {}
        lead = zexp.get(mu)
        unitri = central and lead == LaurentPoly.const(1) and all(dominance_leq(rd, nu, mu) for nu in zexp)
        integral = central and Z.is_polynomial() and all(c.is_zero() or c.min_exp >= 0 for c in zexp.values())
        report.checks.append({"mu": list(mu), "central": central, "unitriangular": unitri, "integral": integral})
        if not (central and unitri and integral):
            report.counterexample = {
                "mu": list(mu),
                "noncommuting": H.G.to_json(bad) if bad is not None else None,
                "z_expansion": [{"mu": list(k), "coeff": v.to_json()} for k, v in zexp.items()],
            }
            return report
    pb = bound if product_bound is None else product_bound
    for i, mu in enumerate(mus):
        for mu2 in mus[i:]:
            if _tlen(H, mu) + _tlen(H, mu2) > pb:
                continue
            Za = central_ic_class(H, mu, borel, check=False)
            Zb = central_ic_class(H, mu2, borel, check=False)
            ab = Za * Zb
            commute = ab == Zb * Za
            consts = _solve_against_Z(H, expand_in_z_basis(H, ab, borel), borel) if commute else {}
            at1 = {nu: c(1) for nu, c in consts.items() if c(1)}
            oracle = tensor_multiplicities(rd, mu, mu2)
            match = commute and at1 == oracle
            report.products.append({"mu": list(mu), "mu2": list(mu2), "commute": commute, "constants_match": match})
            if not match:
                report.counterexample = {
                    "mu": list(mu),
                    "mu2": list(mu2),
                    "constants": [{"nu": list(k), "coeff": v.to_json()} for k, v in consts.items()],
                    "tensor": [{"nu": list(k), "m": v} for k, v in oracle.items()],
                }
                return report
    return report


def spherical_crosscheck(rd_or_H, bound: int, borel: str = STANDARD, central_box: int = 1) -> dict:
    """Compare products in the f0 compression with the Satake constants.

    For dominant mu, mu2 with l(t(mu)) + l(t(mu2)) <= bound, checks
    phi(Z_mu) * phi(Z_mu2) == sum_nu c_nu phi(Z_nu) in H^{f0}(q).
    """
    from .parahoric import parahoric_algebra

    H = _algebra(rd_or_H)
    A = parahoric_algebra(H, "f0")
    mus = dominant_cocharacters(H.rd, bound, central_box)
    checks = []
    for i, mu in enumerate(mus):
        for mu2 in mus[i:]:
            if _tlen(H, mu) + _tlen(H, mu2) > bound:
                continue
            lhs = A.phi(central_ic_class(H, mu, borel, check=False), check=False) * A.phi(
                central_ic_class(H, mu2, borel, check=False), check=False
            )
            rhs = A.zero()
            for nu, c in satake_structure_constants(H, mu, mu2, borel).items():
                rhs = rhs + A.phi(central_ic_class(H, nu, borel, check=False), check=False).scale(c)
            ok = lhs == rhs
            checks.append({"mu": list(mu), "mu2": list(mu2), "match": ok})
            if not ok:
                return {"group": H.rd.name, "bound": bound, "checks": checks, "pass": False,
                        "counterexample": {"mu": list(mu), "mu2": list(mu2), "lhs": lhs.to_json(), "rhs": rhs.to_json()}}
    return {"group": H.rd.name, "bound": bound, "checks": checks, "pass": True}
