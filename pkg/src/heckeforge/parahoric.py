"""Generic parahoric Hecke algebras as compressions of the Iwahori algebra.

For a facet f with finite parabolic W_f, H^f(q) is modelled on the span of

    m_C = sum_{x in C} T_x,      C in W_f \\ W / W_f,

inside H^I(q), with product ``a * b = (a b) / P_f(q)``; the unit is
m_{W_f} = T_{W_f}.  The central map sends a central h to h T_{W_f}.
"""
from __future__ import annotations

import hashlib
import json
import os
from pathlib import Path
from typing import Iterable, Sequence

from .affine_weyl import DoubleCoset, ExtAffineElement, Facet
from .bernstein import _algebra
from .errors import BasisEscape, ContextMismatch, IntegralityViolation, NotCentralInput
from .exactpoly import LaurentPoly
from .hecke import HeckeAlgebra, HeckeElement
from ._lattice import rational_rank
from .rootdata import RootDatum

__all__ = [
    "ParahoricAlgebra",
    "ParahoricElement",
    "parahoric_algebra",
    "parse_facet",
    "embed_monomial",
    "p_mul",
    "phi_f",
]


def parse_facet(rd: RootDatum, text: str | Facet | None) -> Facet:
    """``"a0"``/``""`` is the alcove, ``"f0"`` the hyperspecial vertex, else comma-separated node indices."""
    if isinstance(text, Facet):
        return text
    if text is None:
        return Facet.alcove()
    t = text.strip().lower()
    if t in ("", "a0", "alcove", "iwahori"):
        return Facet.alcove()
    if t in ("f0", "hyperspecial", "spherical"):
        return Facet.hyperspecial(rd)
    return Facet(tuple(int(a) for a in t.replace("{", "").replace("}", "").split(",") if a.strip()))


class ParahoricAlgebra:
    """H^f(q) for one facet, with a lazy structure-constant cache keyed by coset pairs."""

    def __init__(self, H: HeckeAlgebra, facet: Facet):
        self.H = H
        self.G = H.G
        self.rd = H.rd
        self.G.check_facet(facet)
        self.facet = facet
        self.Wf = self.G.parabolic_elements(facet)
        self.P = self.G.poincare_polynomial(facet)
        self._coset_of: dict[ExtAffineElement, DoubleCoset] = {}
        self._products: dict[tuple, ParahoricElement] = {}
        self.unit = self.monomial(self.G.identity)
        self.T_Wf = self.unit.carrier

    # -- cosets ----------------------------------------------------------
    def coset(self, x: ExtAffineElement) -> DoubleCoset:
        dc = self._coset_of.get(x)
        if dc is None:
            dc = self.G.double_coset(self.facet, x)
            for y in dc.elements:
                self._coset_of[y] = dc
        return dc

    def cosets_up_to_length(self, bound: int, omega_box: int = 1) -> list[DoubleCoset]:
        """Double cosets whose minimal representative has length <= bound."""
        omegas = None
        if self.G.omega_order is None:
            omegas = self.G.omega_elements(box=omega_box)[0]
        out = self.G.enumerate_double_cosets(self.facet, None, bound, omegas)
        for dc in out:
            for y in dc.elements:
                self._coset_of.setdefault(y, dc)
        return out

    # -- elements --------------------------------------------------------
    def monomial(self, C: DoubleCoset | ExtAffineElement | str, coeff=1) -> "ParahoricElement":
        if isinstance(C, str):
            C = self.G.parse(C)
        if isinstance(C, ExtAffineElement):
            C = self.coset(C)
        if C.facet_left != self.facet or C.facet_right != self.facet:
            raise ContextMismatch(f"coset for facet {C.facet_left} used in H^{self.facet}")
        carrier = self.H.from_terms({x: coeff for x in C.elements})
        return ParahoricElement(self, carrier, {C.min_rep: LaurentPoly._coerce(coeff)})

    def zero(self) -> "ParahoricElement":
        return ParahoricElement(self, self.H.zero(), {})

    def from_carrier(self, h: HeckeElement) -> "ParahoricElement":
        """Wrap an Iwahori element; it must be constant on every double coset."""
        terms = h.terms
        coeffs: dict[ExtAffineElement, LaurentPoly] = {}
        seen = set()
        for x, c in terms.items():
            if x in seen:
                continue
            dc = self.coset(x)
            for y in dc.elements:
                cy = terms.get(y)
                if cy is None or cy != c:
                    raise BasisEscape(
                        f"coefficient not constant on the double coset of {self.G.format(dc.min_rep)}",
                        {"coset": self.G.to_json(dc.min_rep), "at": self.G.to_json(y)},
                    )
            seen |= dc.elements
            coeffs[dc.min_rep] = c
        return ParahoricElement(self, h, coeffs)

    # -- products --------------------------------------------------------
    def mul(self, a: "ParahoricElement", b: "ParahoricElement") -> "ParahoricElement":
        if a.algebra is not self or b.algebra is not self:
            raise ContextMismatch("parahoric elements from different algebras")
        if len(a.coeffs) == 1 and len(b.coeffs) == 1:
            # cached monomial products, rescaled
            (x, ca), = a.coeffs.items()
            (y, cb), = b.coeffs.items()
            return self.monomial_product(x, y).scale(ca * cb)
        return self._mul_raw(a, b)

    def _mul_raw(self, a: "ParahoricElement", b: "ParahoricElement") -> "ParahoricElement":
        prod = a.carrier * b.carrier
        res = self.from_carrier(prod.divide_exact(self.P))
        if a.is_polynomial() and b.is_polynomial() and not res.is_polynomial():
            raise IntegralityViolation("parahoric product left Z[q]", {"facet": list(self.facet.gens)})
        return res

    def monomial_product(self, x: ExtAffineElement, y: ExtAffineElement) -> "ParahoricElement":
        key = (self.coset(x).min_rep, self.coset(y).min_rep)
        hit = self._products.get(key)
        if hit is None:
            hit = self._mul_raw(self.monomial(key[0]), self.monomial(key[1]))
            self._products[key] = hit
        return hit

    def phi(self, h: HeckeElement, check: bool = True) -> "ParahoricElement":
        """The central map h -> h T_{W_f}."""
        if h.algebra is not self.H:
            raise ContextMismatch("Hecke element from a different algebra")
        if check:
            bad = self.H.first_noncommuting(h)
            if bad is not None:
                raise NotCentralInput(
                    f"input does not commute with T[{self.G.format(bad)}]", {"generator": self.G.to_json(bad)}
                )
        return self.from_carrier(h * self.T_Wf)

    def is_central(self, a: "ParahoricElement", cosets: Iterable[DoubleCoset]) -> bool:
        for C in cosets:
            m = self.monomial(C)
            if self._mul_raw(a, m) != self._mul_raw(m, a):
                return False
        return True

    def phi_rank(self, hs: Sequence[HeckeElement], q0: int = 2) -> int:
        """Rank of the m_C-coordinate matrix of phi(h) specialized at q0.

        Specialization can only lower rank, so full rank here means full rank
        over Q(q).
        """
        images = [self.phi(h, check=False) for h in hs]
        cols = sorted({x for im in images for x in im.coeffs}, key=self.G.sort_key)
        rows = [[im.coeffs.get(x, LaurentPoly())(q0) for x in cols] for im in images]
        return rational_rank(rows)

    # -- tables ----------------------------------------------------------
    def structure_table(self, max_len: int, omega_box: int = 1) -> dict:
        """All products m_C * m_D for cosets of length <= max_len, as JSON."""
        cache_path = self._cache_path(max_len, omega_box)
        if cache_path is not None and cache_path.exists():
            with open(cache_path) as fh:
                return json.load(fh)
        cosets = self.cosets_up_to_length(max_len, omega_box)
        G = self.G
        entries = []
        for C in cosets:
            for D in cosets:
                prod = self.monomial_product(C.min_rep, D.min_rep)
                entries.append(
                    {
                        "C": G.to_json(C.min_rep),
                        "D": G.to_json(D.min_rep),
                        "expansion": [
                            {"E": G.to_json(x), "coeff": c.to_json()} for x, c in prod.sorted_coeffs()
                        ],
                    }
                )
        table = {"facet": list(self.facet.gens), "entries": entries}
        if cache_path is not None:
            cache_path.parent.mkdir(parents=True, exist_ok=True)
            tmp = cache_path.with_suffix(".tmp")
            with open(tmp, "w") as fh:
                json.dump(table, fh, sort_keys=True)
            os.replace(tmp, cache_path)
        return table

    def _cache_path(self, max_len: int, omega_box: int) -> Path | None:
        root = os.environ.get("HECKEFORGE_CACHE_DIR")
        if not root:
            return None
        digest = hashlib.sha256(json.dumps(self.rd.to_json(), sort_keys=True).encode()).hexdigest()[:16]
        gens = "-".join(map(str, self.facet.gens)) or "a0"
        return Path(root) / f"parahoric_{digest}_{gens}_L{max_len}_b{omega_box}.json"


class ParahoricElement:
    """An element of H^f(q): its Iwahori carrier plus coordinates in the m_C basis."""

    __slots__ = ("algebra", "carrier", "coeffs")

    def __init__(self, algebra: ParahoricAlgebra, carrier: HeckeElement, coeffs: dict):
        self.algebra = algebra
        self.carrier = carrier
        self.coeffs = {k: v for k, v in coeffs.items() if not v.is_zero()}

    @property
    def facet(self) -> Facet:
        return self.algebra.facet

    def sorted_coeffs(self) -> list:
        key = self.algebra.G.sort_key
        return sorted(self.coeffs.items(), key=lambda kv: key(kv[0]))

    def coeff(self, x: ExtAffineElement) -> LaurentPoly:
        return self.coeffs.get(self.algebra.coset(x).min_rep, LaurentPoly())

    def is_polynomial(self) -> bool:
        return self.carrier.is_polynomial()

    def is_zero(self) -> bool:
        return not self.coeffs

    def _check(self, other) -> None:
        if not isinstance(other, ParahoricElement) or other.algebra is not self.algebra:
            raise ContextMismatch("parahoric elements from different algebras")

    def __add__(self, other: "ParahoricElement") -> "ParahoricElement":
        self._check(other)
        c = dict(self.coeffs)
        for k, v in other.coeffs.items():
            c[k] = c.get(k, LaurentPoly()) + v
        return ParahoricElement(self.algebra, self.carrier + other.carrier, c)

    def __neg__(self) -> "ParahoricElement":
        return ParahoricElement(self.algebra, -self.carrier, {k: -v for k, v in self.coeffs.items()})

    def __sub__(self, other: "ParahoricElement") -> "ParahoricElement":
        return self + (-other)

    def scale(self, c) -> "ParahoricElement":
        p = LaurentPoly._coerce(c)
        return ParahoricElement(self.algebra, self.carrier.scale(p), {k: v * p for k, v in self.coeffs.items()})

    def __mul__(self, other) -> "ParahoricElement":
        if isinstance(other, ParahoricElement):
            self._check(other)
            return self.algebra.mul(self, other)
        return self.scale(other)

    def __eq__(self, other) -> bool:
        if not isinstance(other, ParahoricElement):
            return NotImplemented
        return other.algebra is self.algebra and self.coeffs == other.coeffs

    __hash__ = None  # type: ignore[assignment]

    def specialize(self, q0: int) -> dict[ExtAffineElement, int]:
        out = {}
        for x, c in self.sorted_coeffs():
            v = c(q0)
            if v:
                out[x] = v
        return out

    def __repr__(self) -> str:
        G = self.algebra.G
        if not self.coeffs:
            return "0"
        return " + ".join(f"({c})*m[{G.format(x)}]" for x, c in self.sorted_coeffs())

    def to_json(self) -> dict:
        G = self.algebra.G
        return {
            "facet": list(self.facet.gens),
            "terms": [{"C": G.to_json(x), "coeff": c.to_json()} for x, c in self.sorted_coeffs()],
        }


def parahoric_algebra(rd_or_H, facet: Facet | str | None) -> ParahoricAlgebra:
    H = _algebra(rd_or_H)
    f = parse_facet(H.rd, facet)
    key = ("parahoric_algebra", f)
    hit = H.rd._cache.get(key)
    if hit is None or hit.H is not H:
        hit = ParahoricAlgebra(H, f)
        H.rd._cache[key] = hit
    return hit


def embed_monomial(rd_or_H, facet, C) -> ParahoricElement:
    return parahoric_algebra(rd_or_H, facet).monomial(C)


def p_mul(a: ParahoricElement, b: ParahoricElement) -> ParahoricElement:
    return a.algebra.mul(a, b)


def phi_f(rd_or_H, facet, h: HeckeElement) -> ParahoricElement:
    return parahoric_algebra(rd_or_H, facet).phi(h)
