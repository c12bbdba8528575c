"""The extended affine Weyl group W = X_*(T) x| W0.

Elements are stored as pairs ``(lam, w)`` denoting ``t(lam) w`` where ``w`` is an
index into ``rd.weyl``; words are derived data.  Lengths use the
Iwahori-Matsumoto formula, Bruhat comparisons the lifting property.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, NamedTuple, Sequence

from .errors import InfiniteParabolic, NonFiniteOmega
from .exactpoly import LaurentPoly
from .rootdata import RootDatum

__all__ = [
    "ExtAffineElement",
    "Facet",
    "DoubleCoset",
    "AffineWeylGroup",
    "affine_weyl_group",
    "affine_simple_reflections",
    "length",
    "omega_elements",
    "reduced_word",
    "bruhat_leq",
    "parabolic_elements",
    "poincare_polynomial",
    "double_coset_min_rep",
    "enumerate_double_cosets",
    "admissible_set",
    "admissible_set_f",
]

PARABOLIC_CAP = 100_000


class ExtAffineElement(NamedTuple):
    """``t(lam) * w`` with ``w`` an index into the datum's W0 enumeration."""

    lam: tuple
    w: int


@dataclass(frozen=True)
class Facet:
    """A facet of the base alcove, named by the affine simple reflections fixing it.

    The empty set is the alcove a0; the finite indices ``1..r`` give the
    hyperspecial vertex f0.
    """

    gens: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "gens", tuple(sorted(set(int(g) for g in self.gens))))

    @classmethod
    def alcove(cls) -> "Facet":
        return cls(())

    @classmethod
    def hyperspecial(cls, rd: RootDatum) -> "Facet":
        return cls(tuple(range(1, rd.num_simple + 1)))

    def to_json(self) -> dict:
        return {"gens": list(self.gens)}

    @classmethod
    def from_json(cls, obj) -> "Facet":
        return cls(tuple(obj["gens"]))

    def __str__(self) -> str:
        return "{" + ",".join(map(str, self.gens)) + "}"


@dataclass(frozen=True)
class DoubleCoset:
    facet_left: Facet
    facet_right: Facet
    min_rep: ExtAffineElement
    length: int = field(compare=False)
    elements: frozenset = field(compare=False, repr=False, hash=False)


def _dot(a, b) -> int:
    return sum(x * y for x, y in zip(a, b))


class AffineWeylGroup:
    """Group-law, length and order computations for one root datum."""

    def __init__(self, rd: RootDatum):
        self.rd = rd
        W = rd.weyl
        self._mats = [w.matrix for w in W]
        self._mult = rd.weyl_mult
        self._inv = rd.weyl_inverse
        self._roots = rd.positive_roots
        self._flags = rd.inversion_flags
        self._len_cache: dict = {}
        self._word_cache: dict = {}
        self._bruhat_cache: dict = {}
        self.identity = ExtAffineElement((0,) * rd.rank, 0)
        gens = {}
        for i in range(1, rd.num_simple + 1):
            gens[i] = ExtAffineElement((0,) * rd.rank, rd.simple_reflection(i).index)
        for c, k in enumerate(rd.highest_roots):
            theta = rd.positive_roots[k]
            theta_v = rd.positive_coroots[k]
            n = rd.rank
            m = tuple(tuple(int(i == j) - theta_v[i] * theta[j] for j in range(n)) for i in range(n))
            idx = 0 if c == 0 else rd.num_simple + c
            gens[idx] = ExtAffineElement(tuple(theta_v), rd.weyl_index(m))
        self.gens = dict(sorted(gens.items()))
        self.gen_indices = tuple(self.gens)
        # affine node of each component, keyed by component number
        self._component_of = {}
        for c, comp in enumerate(rd.components):
            for i in comp:
                self._component_of[i + 1] = c
            self._component_of[0 if c == 0 else rd.num_simple + c] = c

    # -- group law -------------------------------------------------------
    def act(self, w: int, lam: Sequence[int]) -> tuple:
        return tuple(_dot(row, lam) for row in self._mats[w])

    def mul(self, x: ExtAffineElement, y: ExtAffineElement) -> ExtAffineElement:
        wl = self.act(x.w, y.lam)
        return ExtAffineElement(tuple(a + b for a, b in zip(x.lam, wl)), self._mult[x.w][y.w])

    def inverse(self, x: ExtAffineElement) -> ExtAffineElement:
        wi = self._inv[x.w]
        return ExtAffineElement(tuple(-a for a in self.act(wi, x.lam)), wi)

    def translation(self, lam: Sequence[int]) -> ExtAffineElement:
        return ExtAffineElement(tuple(int(a) for a in lam), 0)

    def finite(self, w: int) -> ExtAffineElement:
        return ExtAffineElement((0,) * self.rd.rank, w)

    def from_word(self, word: Iterable[int], omega: ExtAffineElement | None = None) -> ExtAffineElement:
        x = self.identity
        for i in word:
            x = self.mul(x, self.gens[i])
        return self.mul(x, omega) if omega is not None else x

    def conjugate(self, x, y):
        return self.mul(self.mul(x, y), self.inverse(x))

    # -- length ----------------------------------------------------------
    def length(self, x: ExtAffineElement) -> int:
        v = self._len_cache.get(x)
        if v is None:
            lam = x.lam
            flags = self._flags[x.w]
            v = 0
            for a, f in zip(self._roots, flags):
                v += abs(_dot(a, lam) - f)
            self._len_cache[x] = v
        return v

    def left_descents(self, x: ExtAffineElement) -> list[int]:
        lx = self.length(x)
        return [i for i, s in self.gens.items() if self.length(self.mul(s, x)) < lx]

    def right_descents(self, x: ExtAffineElement) -> list[int]:
        lx = self.length(x)
        return [i for i, s in self.gens.items() if self.length(self.mul(x, s)) < lx]

    def reduced_word(self, x: ExtAffineElement) -> tuple[tuple, ExtAffineElement]:
        """``x = s_{i1} ... s_{ik} * omega`` stripping the smallest left descent first."""
        hit = self._word_cache.get(x)
        if hit is not None:
            return hit
        word = []
        y = x
        while True:
            ly = self.length(y)
            if ly == 0:
                break
            for i, s in self.gens.items():
                z = self.mul(s, y)
                if self.length(z) < ly:
                    word.append(i)
                    y = z
                    break
            else:  # pragma: no cover
                raise AssertionError(f"no descent found for {y} of length {ly}")
        res = (tuple(word), y)
        self._word_cache[x] = res
        return res

    def omega_part(self, x: ExtAffineElement) -> ExtAffineElement:
        return self.reduced_word(x)[1]

    def same_omega_coset(self, x: ExtAffineElement, y: ExtAffineElement) -> bool:
        return self.rd.coroot_span.contains(tuple(a - b for a, b in zip(x.lam, y.lam)))

    # -- Bruhat order ----------------------------------------------------
    def bruhat_leq(self, v: ExtAffineElement, w: ExtAffineElement) -> bool:
        if not self.same_omega_coset(v, w):
            return False
        return self._bruhat(v, w)

    def _bruhat(self, v, w) -> bool:
        key = (v, w)
        hit = self._bruhat_cache.get(key)
        if hit is not None:
            return hit
        lv, lw = self.length(v), self.length(w)
        if lv > lw:
            res = False
        elif lv == lw:
            res = v == w
        elif lv == 0:
            # v is the omega-part of its coset; every element of the coset lies above it
            res = True
        else:
            s = self.gens[self.reduced_word(w)[0][0]]
            sw = self.mul(s, w)
            sv = self.mul(s, v)
            if self.length(sv) < lv:
                res = self._bruhat(sv, sw)
            else:
                res = self._bruhat(v, sw)
        self._bruhat_cache[key] = res
        return res

    def lower_interval(self, x: ExtAffineElement) -> set:
        """All y <= x, as products of subwords of one reduced word of x."""
        word, omega = self.reduced_word(x)
        cur = {self.identity}
        for i in word:
            s = self.gens[i]
            cur = cur | {self.mul(y, s) for y in cur}
        return {self.mul(y, omega) for y in cur}

    # -- Omega -----------------------------------------------------------
    @cached_property
    def omega_order(self) -> int | None:
        """|X_*/Z Phi^vee| when finite, else None."""
        rd = self.rd
        if not rd.is_semisimple:
            return None
        if rd.rank == 0:
            return 1
        from fractions import Fraction

        M = [[Fraction(x) for x in row] for row in rd.simple_coroots]
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
        return abs(int(det))

    def omega_elements(self, box: int | None = None) -> tuple[list[ExtAffineElement], bool]:
        """Length-zero elements, one per class of X_*/Z Phi^vee.

        Returns ``(elements, truncated)``.  For an infinite quotient a ``box``
        bound is required and the listing covers translations in [-box, box]^n.
        """
        order = self.omega_order
        if order is None and box is None:
            raise NonFiniteOmega("X_*(T)/Z Phi^vee is infinite; pass a box bound")
        found: dict = {}
        n = self.rd.rank
        b = 0
        while True:
            for lam in itertools.product(range(-b, b + 1), repeat=n):
                if max((abs(a) for a in lam), default=0) != b:
                    continue
                om = self.omega_part(self.translation(lam))
                found.setdefault(om, None)
            if order is not None and len(found) >= order:
                break
            if box is not None and b >= box:
                break
            b += 1
        out = sorted(found, key=self.sort_key)
        return out, order is None

    @cached_property
    def omega_generators(self) -> list[ExtAffineElement]:
        """Length-zero elements generating Omega: the images of the lattice basis."""
        n = self.rd.rank
        out = []
        for j in range(n):
            lam = tuple(int(i == j) for i in range(n))
            om = self.omega_part(self.translation(lam))
            if om != self.identity and om not in out:
                out.append(om)
        return out

    # -- ordering --------------------------------------------------------
    def sort_key(self, x: ExtAffineElement):
        return (self.length(x), x.lam, x.w)

    def elements_up_to_length(self, bound: int, omegas: Sequence[ExtAffineElement] | None = None) -> list:
        """All elements of length <= bound in the given Omega-cosets (default: all of Omega)."""
        if omegas is None:
            omegas = self.omega_elements()[0]
        level = set(omegas)
        out = set(level)
        for k in range(1, bound + 1):
            nxt = set()
            for y in level:
                for s in self.gens.values():
                    z = self.mul(s, y)
                    if self.length(z) == k:
                        nxt.add(z)
            out |= nxt
            level = nxt
        return sorted(out, key=self.sort_key)

    # -- parabolics ------------------------------------------------------
    def check_facet(self, f: Facet) -> None:
        for g in f.gens:
            if g not in self.gens:
                raise InfiniteParabolic(f"{g} is not an affine simple reflection index")
        for c in range(len(self.rd.components)):
            nodes = {i for i, cc in self._component_of.items() if cc == c}
            if nodes and nodes <= set(f.gens):
                raise InfiniteParabolic(f"facet {f} contains a whole affine component")

    def parabolic_elements(self, f: Facet) -> list[ExtAffineElement]:
        hit = self.rd._cache.get(("parabolic", f))
        if hit is not None:
            return hit
        self.check_facet(f)
        seen = {self.identity}
        level = [self.identity]
        while level:
            nxt = []
            for y in level:
                for g in f.gens:
                    z = self.mul(y, self.gens[g])
                    if z not in seen:
                        seen.add(z)
                        nxt.append(z)
            if len(seen) > PARABOLIC_CAP:
                raise InfiniteParabolic(f"W_f for {f} exceeds {PARABOLIC_CAP} elements")
            level = nxt
        out = sorted(seen, key=self.sort_key)
        self.rd._cache[("parabolic", f)] = out
        return out

    def poincare_polynomial(self, f: Facet) -> LaurentPoly:
        c: dict[int, int] = {}
        for x in self.parabolic_elements(f):
            l = self.length(x)
            c[l] = c.get(l, 0) + 1
        return LaurentPoly(c)

    def double_coset(self, f: Facet, x: ExtAffineElement, g: Facet | None = None) -> DoubleCoset:
        g = f if g is None else g
        left = self.parabolic_elements(f)
        right = self.parabolic_elements(g)
        elts = frozenset(self.mul(self.mul(a, x), b) for a in left for b in right)
        rep = min(elts, key=self.sort_key)
        return DoubleCoset(f, g, rep, self.length(rep), elts)

    def enumerate_double_cosets(
        self,
        f: Facet,
        g: Facet | None,
        length_bound: int,
        omegas: Sequence[ExtAffineElement] | None = None,
    ) -> list[DoubleCoset]:
        g = f if g is None else g
        seen: dict = {}
        for x in self.elements_up_to_length(length_bound, omegas):
            if any(x in dc.elements for dc in seen.values() if dc.length <= self.length(x)):
                continue
            dc = self.double_coset(f, x, g)
            seen[dc.min_rep] = dc
        return sorted(seen.values(), key=lambda dc: self.sort_key(dc.min_rep))

    # -- admissible sets -------------------------------------------------
    def admissible_set(self, mu: Sequence[int]) -> set:
        mu = tuple(mu)
        if not self.rd.is_dominant(mu):
            raise ValueError(f"{mu} is not dominant")
        out = set()
        for lam in self.rd.orbit(mu):
            out |= self.lower_interval(self.translation(lam))
        return out

    def admissible_set_f(self, mu: Sequence[int], f: Facet) -> list[DoubleCoset]:
        cosets: dict = {}
        for x in sorted(self.admissible_set(mu), key=self.sort_key):
            if any(x in dc.elements for dc in cosets.values()):
                continue
            dc = self.double_coset(f, x)
            cosets[dc.min_rep] = dc
        return sorted(cosets.values(), key=lambda dc: self.sort_key(dc.min_rep))

    # -- serialization ---------------------------------------------------
    def to_json(self, x: ExtAffineElement) -> dict:
        return {"lam": list(x.lam), "w": list(self.rd.weyl[x.w].word)}

    def from_json(self, obj) -> ExtAffineElement:
        return ExtAffineElement(tuple(int(a) for a in obj["lam"]), self.rd.word_to_weyl(obj["w"]))

    def format(self, x: ExtAffineElement) -> str:
        return ",".join(map(str, x.lam)) + ":" + ",".join(map(str, self.rd.weyl[x.w].word))

    def parse(self, text: str) -> ExtAffineElement:
        """Parse ``"lam:w-word"``, e.g. ``"1,-1:1,2"``; an ``s<i>`` token is an affine generator."""
        text = text.strip()
        if text.startswith("s") and text[1:].isdigit():
            return self.gens[int(text[1:])]
        lam_s, _, word_s = text.partition(":")
        lam = tuple(int(a) for a in lam_s.split(",") if a.strip()) if lam_s.strip() else (0,) * self.rd.rank
        if len(lam) != self.rd.rank:
            raise ValueError(f"expected {self.rd.rank} coordinates in {text!r}")
        word = [int(a) for a in word_s.replace(" ", ",").split(",") if a.strip()]
        return ExtAffineElement(lam, self.rd.word_to_weyl(word))


def affine_weyl_group(rd: RootDatum) -> AffineWeylGroup:
    g = rd._cache.get("affine_weyl")
    if g is None:
        g = rd._cache["affine_weyl"] = AffineWeylGroup(rd)
    return g


def affine_simple_reflections(rd: RootDatum) -> list[ExtAffineElement]:
    return list(affine_weyl_group(rd).gens.values())


def length(rd: RootDatum, x: ExtAffineElement) -> int:
    return affine_weyl_group(rd).length(x)


def omega_elements(rd: RootDatum, box: int | None = None):
    return affine_weyl_group(rd).omega_elements(box)


def reduced_word(rd: RootDatum, x: ExtAffineElement):
    return affine_weyl_group(rd).reduced_word(x)


def bruhat_leq(rd: RootDatum, v: ExtAffineElement, w: ExtAffineElement) -> bool:
    return affine_weyl_group(rd).bruhat_leq(v, w)


def parabolic_elements(rd: RootDatum, f: Facet):
    return affine_weyl_group(rd).parabolic_elements(f)


def poincare_polynomial(rd: RootDatum, f: Facet) -> LaurentPoly:
    return affine_weyl_group(rd).poincare_polynomial(f)


def double_coset_min_rep(rd: RootDatum, f: Facet, x: ExtAffineElement, g: Facet | None = None) -> DoubleCoset:
    return affine_weyl_group(rd).double_coset(f, x, g)


def enumerate_double_cosets(rd: RootDatum, f: Facet, g: Facet | None, length_bound: int, omegas=None):
    return affine_weyl_group(rd).enumerate_double_cosets(f, g, length_bound, omegas)


def admissible_set(rd: RootDatum, mu: Sequence[int]) -> set:
    return affine_weyl_group(rd).admissible_set(mu)


def admissible_set_f(rd: RootDatum, mu: Sequence[int], f: Facet):
    return affine_weyl_group(rd).admissible_set_f(mu, f)
