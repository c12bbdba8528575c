"""The generic Iwahori-Hecke algebra H(q) of a root datum.

Free Z[q, q^-1]-module on ``T_w`` (w in the extended affine Weyl group) with

* ``T_v T_w = T_{vw}`` when lengths add, and
* ``T_s^2 = q + (q - 1) T_s`` for every affine simple reflection s.

Group elements are interned per algebra; an element is a block of interned
ids with a dense q-degree coefficient matrix (see ``_kernels_py``).  All
products reduce to single-generator steps, which run in the kernel.
"""
from __future__ import annotations

from typing import Iterable, Mapping, Sequence

import numpy as np

from . import kernels
from .affine_weyl import AffineWeylGroup, ExtAffineElement, affine_weyl_group
from .errors import ContextMismatch, IntegralityViolation
from .exactpoly import LaurentPoly, lp_divide_exact
from .kernels import MODE_NABLA, MODE_T
from .rootdata import RootDatum

__all__ = [
    "HeckeAlgebra",
    "HeckeElement",
    "hecke_algebra",
    "h_mul",
    "h_invert_basis",
    "standard_class",
    "costandard_class",
    "h_specialize",
]

_EMPTY_IDS = np.zeros(0, dtype=np.int64)


def _as_poly(c) -> LaurentPoly:
    return c if isinstance(c, LaurentPoly) else LaurentPoly.const(int(c))


def _merge_blocks(blocks: list) -> tuple:
    """Sum a list of ``(ids, coef, lo)`` blocks into one normalized block."""
    blocks = [b for b in blocks if len(b[0])]
    if not blocks:
        return _EMPTY_IDS, np.zeros((0, 0), dtype=np.int64), 0
    lo = min(b[2] for b in blocks)
    hi = max(b[2] + b[1].shape[1] for b in blocks)
    obj = any(b[1].dtype == object for b in blocks)
    dtype = object if obj else np.int64
    width = hi - lo
    rows = sum(len(b[0]) for b in blocks)
    ids = np.empty(rows, dtype=np.int64)
    vals = np.zeros((rows, width), dtype=dtype)
    r = 0
    for bid, bc, blo in blocks:
        n = len(bid)
        ids[r:r + n] = bid
        vals[r:r + n, blo - lo: blo - lo + bc.shape[1]] = bc
        r += n
    if len(blocks) == 1 and len(np.unique(ids)) == len(ids):
        order = np.argsort(ids, kind="stable")
        ids, vals = ids[order], vals[order]
        keep = np.any(vals != 0, axis=1)
        ids, vals = ids[keep], vals[keep]
    else:
        from ._kernels_py import merge_rows

        if not obj and vals.size and int(np.abs(vals).max()) >= (1 << 62) // max(1, len(blocks)):
            vals = vals.astype(object)
        ids, vals = merge_rows(ids, vals)
    return _trim(ids, vals, lo)


def _trim(ids, coef, lo):
    if len(ids) == 0:
        return _EMPTY_IDS, np.zeros((0, 0), dtype=np.int64), 0
    nz = np.any(coef != 0, axis=0)
    idx = np.nonzero(nz)[0]
    a, b = int(idx[0]), int(idx[-1]) + 1
    coef = coef[:, a:b]
    if coef.dtype == object:
        # demote back to int64 when everything fits again
        m = max((abs(int(v)) for v in coef.flat), default=0)
        if m < kernels.INT64_SAFE:
            coef = coef.astype(np.int64)
    return ids, np.ascontiguousarray(coef), lo + a


class HeckeAlgebra:
    """Interning context for one root datum."""

    def __init__(self, rd: RootDatum, backend: str | None = None):
        self.rd = rd
        self.G: AffineWeylGroup = affine_weyl_group(rd)
        self.backend = backend
        self._elts: list[ExtAffineElement] = []
        self._ids: dict[ExtAffineElement, int] = {}
        self._cap = 0
        self._len = np.zeros(0, dtype=np.int64)
        self._left = {i: np.zeros(0, dtype=np.int64) for i in self.G.gen_indices}
        self._right = {i: np.zeros(0, dtype=np.int64) for i in self.G.gen_indices}
        self._scratch = np.zeros(0, dtype=np.int64)
        self._grow(1024)
        self.one = self.basis(self.G.identity)

    # -- interning -------------------------------------------------------
    def _grow(self, cap: int) -> None:
        old = self._cap
        if cap <= old:
            return
        def ext(a, fill):
            b = np.full(cap, fill, dtype=np.int64)
            b[:old] = a[:old]
            return b
        self._len = ext(self._len, 0)
        self._left = {i: ext(a, -1) for i, a in self._left.items()}
        self._right = {i: ext(a, -1) for i, a in self._right.items()}
        self._scratch = np.full(cap, -1, dtype=np.int64)
        self._cap = cap

    def intern(self, x: ExtAffineElement) -> int:
        k = self._ids.get(x)
        if k is None:
            k = len(self._elts)
            if k >= self._cap:
                self._grow(2 * self._cap)
            self._elts.append(x)
            self._ids[x] = k
            self._len[k] = self.G.length(x)
        return k

    def element(self, k: int) -> ExtAffineElement:
        return self._elts[k]

    def _neighbours(self, ids: np.ndarray, i: int, side: str) -> np.ndarray:
        table = self._left[i] if side == "left" else self._right[i]
        tgt = table[ids]
        missing = np.nonzero(tgt < 0)[0]
        if len(missing):
            s = self.G.gens[i]
            mul = self.G.mul
            for k in ids[missing].tolist():
                x = self._elts[k]
                y = mul(s, x) if side == "left" else mul(x, s)
                j = self.intern(y)
                table = self._left[i] if side == "left" else self._right[i]
                table[k] = j
                table[j] = k
            table = self._left[i] if side == "left" else self._right[i]
            tgt = table[ids]
        return tgt

    # -- constructors ----------------------------------------------------
    def _make(self, ids, coef, lo) -> "HeckeElement":
        return HeckeElement(self, ids, coef, lo)

    def zero(self) -> "HeckeElement":
        return self._make(_EMPTY_IDS, np.zeros((0, 0), dtype=np.int64), 0)

    def basis(self, x: ExtAffineElement, coeff=1) -> "HeckeElement":
        return self.from_terms({x: coeff})

    def T(self, x) -> "HeckeElement":
        """``T_x``; ``x`` may be an element, an ``"lam:word"`` string or a generator index."""
        if isinstance(x, int):
            x = self.G.gens[x]
        elif isinstance(x, str):
            x = self.G.parse(x)
        return self.basis(x)

    def from_terms(self, terms: Mapping[ExtAffineElement, LaurentPoly | int]) -> "HeckeElement":
        blocks = []
        for x, c in terms.items():
            c = _as_poly(c)
            if c.is_zero():
                continue
            lo, hi = c.min_exp, c.max_exp
            row = np.zeros((1, hi - lo + 1), dtype=object)
            for e, v in c.items():
                row[0, e - lo] = v
            blocks.append((np.array([self.intern(x)], dtype=np.int64), row, lo))
        return self._make(*_merge_blocks(blocks))

    # -- generator steps -------------------------------------------------
    def _step(self, h: "HeckeElement", i: int, side: str, mode: int) -> "HeckeElement":
        if not len(h.ids):
            return h
        tgt = self._neighbours(h.ids, i, side)
        up = (self._len[tgt] > self._len[h.ids]).astype(np.uint8)
        ids, coef = kernels.apply_generator(h.ids, h.coef, tgt, up, mode, self._scratch, self.backend)
        if not len(ids):
            return self.zero()
        if len(ids) > 1 and np.any(ids[1:] < ids[:-1]):
            order = np.argsort(ids, kind="stable")
            ids, coef = ids[order], coef[order]
        return self._make(*_trim(ids, coef, h.lo))

    def _omega(self, h: "HeckeElement", om: ExtAffineElement, side: str) -> "HeckeElement":
        if om == self.G.identity or not len(h.ids):
            return h
        mul = self.G.mul
        if side == "left":
            new = [self.intern(mul(om, self._elts[k])) for k in h.ids.tolist()]
        else:
            new = [self.intern(mul(self._elts[k], om)) for k in h.ids.tolist()]
        ids = np.array(new, dtype=np.int64)
        order = np.argsort(ids, kind="stable")
        return self._make(ids[order], h.coef[order], h.lo)

    def lmul_T(self, x: ExtAffineElement, h: "HeckeElement") -> "HeckeElement":
        """``T_x * h``."""
        word, om = self.G.reduced_word(x)
        h = self._omega(h, om, "left")
        for i in reversed(word):
            h = self._step(h, i, "left", MODE_T)
        return h

    def rmul_T(self, h: "HeckeElement", x: ExtAffineElement) -> "HeckeElement":
        """``h * T_x``."""
        word, om = self.G.reduced_word(x)
        for i in word:
            h = self._step(h, i, "right", MODE_T)
        return self._omega(h, om, "right")

    def lmul_costandard(self, x: ExtAffineElement, h: "HeckeElement") -> "HeckeElement":
        """``[nabla_x] * h``."""
        word, om = self.G.reduced_word(x)
        h = self._omega(h, om, "left")
        for i in reversed(word):
            h = self._step(h, i, "left", MODE_NABLA)
        return h

    def rmul_costandard(self, h: "HeckeElement", x: ExtAffineElement) -> "HeckeElement":
        word, om = self.G.reduced_word(x)
        for i in word:
            h = self._step(h, i, "right", MODE_NABLA)
        return self._omega(h, om, "right")

    def lmul_standard(self, x: ExtAffineElement, h: "HeckeElement") -> "HeckeElement":
        r = self.lmul_T(x, h)
        return -r if self.G.length(x) % 2 else r

    def rmul_standard(self, h: "HeckeElement", x: ExtAffineElement) -> "HeckeElement":
        r = self.rmul_T(h, x)
        return -r if self.G.length(x) % 2 else r

    # -- products --------------------------------------------------------
    def mul(self, a: "HeckeElement", b: "HeckeElement") -> "HeckeElement":
        if a.algebra is not self or b.algebra is not self:
            raise ContextMismatch("Hecke elements from different algebras")
        if not len(a.ids) or not len(b.ids):
            return self.zero()
        cost_left = sum(int(self._len[k]) for k in a.ids.tolist())
        cost_right = sum(int(self._len[k]) for k in b.ids.tolist())
        if cost_left <= cost_right:
            return self._mul_left(a, b)
        return self._mul_right(a, b)

    def _mul_left(self, a, b):
        # sum_v a_v * (T_v b), sharing suffixes of reduced words
        memo: dict[ExtAffineElement, HeckeElement] = {}
        G = self.G

        def tvb(v):
            hit = memo.get(v)
            if hit is not None:
                return hit
            word, om = G.reduced_word(v)
            if not word:
                res = self._omega(b, om, "left")
            else:
                rest = G.mul(G.gens[word[0]], v)
                res = self._step(tvb(rest), word[0], "left", MODE_T)
            memo[v] = res
            return res

        blocks = []
        for k, row in zip(a.ids.tolist(), a.coef):
            prod = tvb(self._elts[k])
            blocks.extend(_scale_block(prod, row, a.lo))
        return self._make(*_merge_blocks(blocks))

    def _mul_right(self, a, b):
        memo: dict[ExtAffineElement, HeckeElement] = {}
        G = self.G

        def atw(w):
            # a * T_w, built from a * T_{w s} with s the last letter before omega
            hit = memo.get(w)
            if hit is not None:
                return hit
            word, om = G.reduced_word(w)
            if om != G.identity:
                res = self._omega(atw(G.mul(w, G.inverse(om))), om, "right")
            elif not word:
                res = a
            else:
                s = word[-1]
                res = self._step(atw(G.mul(w, G.gens[s])), s, "right", MODE_T)
            memo[w] = res
            return res

        blocks = []
        for k, row in zip(b.ids.tolist(), b.coef):
            prod = atw(self._elts[k])
            blocks.extend(_scale_block(prod, row, b.lo))
        return self._make(*_merge_blocks(blocks))

    # -- named elements --------------------------------------------------
    def standard_class(self, x: ExtAffineElement) -> "HeckeElement":
        """``[Delta_x] = (-1)^{l(x)} T_x``."""
        return self.basis(x, -1 if self.G.length(x) % 2 else 1)

    def costandard_class(self, x: ExtAffineElement) -> "HeckeElement":
        """Product of ``-T_s + (q - 1)`` along a reduced word, times ``T_omega``."""
        return self.lmul_costandard(x, self.one)

    def invert_basis(self, x: ExtAffineElement) -> "HeckeElement":
        """``T_x^{-1}``, using ``T_s^{-1} = -q^{-1} [nabla_s]``."""
        word, om = self.G.reduced_word(x)
        h = self.basis(self.G.inverse(om))
        for i in reversed(word):
            h = self._step(h, i, "right", MODE_NABLA)
        h = h.shift(-len(word))
        return -h if len(word) % 2 else h

    def generators(self) -> list[ExtAffineElement]:
        """Algebra generators: affine simple reflections and generators of Omega."""
        return list(self.G.gens.values()) + list(self.G.omega_generators)

    def is_central(self, h: "HeckeElement") -> bool:
        return self.first_noncommuting(h) is None

    def first_noncommuting(self, h: "HeckeElement") -> ExtAffineElement | None:
        for i, s in self.G.gens.items():
            if self._step(h, i, "left", MODE_T) != self._step(h, i, "right", MODE_T):
                return s
        for om in self.G.omega_generators:
            if self._omega(h, om, "left") != self._omega(h, om, "right"):
                return om
        return None

    def from_json(self, obj) -> "HeckeElement":
        return self.from_terms(
            {self.G.from_json(t["elt"]): LaurentPoly.from_json(t["coeff"]) for t in obj["terms"]}
        )


def _scale_block(h: "HeckeElement", row, row_lo: int) -> list:
    """Blocks of ``p * h`` where the Laurent polynomial p is given densely by ``row``."""
    out = []
    if not len(h.ids):
        return out
    for d, c in enumerate(row.tolist()):
        if not c:
            continue
        coef = h.coef
        if coef.dtype == np.int64 and abs(c) * int(np.abs(coef).max()) >= (1 << 62):
            coef = coef.astype(object)
        out.append((h.ids, coef * c, h.lo + row_lo + d))
    return out


class HeckeElement:
    """Finitely supported ``sum_w c_w T_w`` with ``c_w`` in Z[q, q^-1]."""

    __slots__ = ("algebra", "ids", "coef", "lo")

    def __init__(self, algebra: HeckeAlgebra, ids, coef, lo: int):
        self.algebra = algebra
        self.ids = ids
        self.coef = coef
        self.lo = lo

    # -- views -----------------------------------------------------------
    @property
    def terms(self) -> dict[ExtAffineElement, LaurentPoly]:
        el = self.algebra._elts
        return {
            el[k]: LaurentPoly.from_dense([int(v) for v in row], self.lo)
            for k, row in zip(self.ids.tolist(), self.coef)
        }

    def coeff(self, x: ExtAffineElement) -> LaurentPoly:
        k = self.algebra._ids.get(x)
        if k is None:
            return LaurentPoly()
        pos = np.searchsorted(self.ids, k)
        if pos < len(self.ids) and self.ids[pos] == k:
            return LaurentPoly.from_dense([int(v) for v in self.coef[pos]], self.lo)
        return LaurentPoly()

    def support(self) -> list[ExtAffineElement]:
        el = self.algebra._elts
        return sorted((el[k] for k in self.ids.tolist()), key=self.algebra.G.sort_key)

    def __len__(self) -> int:
        return len(self.ids)

    def is_zero(self) -> bool:
        return not len(self.ids)

    def is_polynomial(self) -> bool:
        """All coefficients lie in Z[q]."""
        return self.is_zero() or self.lo >= 0

    def max_abs_coeff(self) -> int:
        if self.is_zero():
            return 0
        return max(abs(int(v)) for v in self.coef.flat)

    # -- arithmetic ------------------------------------------------------
    def _check(self, other: "HeckeElement") -> None:
        if not isinstance(other, HeckeElement) or other.algebra is not self.algebra:
            raise ContextMismatch("Hecke elements from different algebras")

    def __add__(self, other: "HeckeElement") -> "HeckeElement":
        self._check(other)
        return self.algebra._make(*_merge_blocks([(self.ids, self.coef, self.lo), (other.ids, other.coef, other.lo)]))

    def __neg__(self) -> "HeckeElement":
        return self.algebra._make(self.ids, -self.coef, self.lo)

    def __sub__(self, other: "HeckeElement") -> "HeckeElement":
        return self + (-other)

    def __mul__(self, other) -> "HeckeElement":
        if isinstance(other, HeckeElement):
            return self.algebra.mul(self, other)
        return self.scale(other)

    def __rmul__(self, other) -> "HeckeElement":
        return self.scale(other)

    def scale(self, c) -> "HeckeElement":
        p = _as_poly(c)
        if p.is_zero() or self.is_zero():
            return self.algebra.zero()
        lo = p.min_exp
        row = np.array([p[e] for e in range(lo, p.max_exp + 1)], dtype=object)
        return self.algebra._make(*_merge_blocks(_scale_block(self, row, lo)))

    def shift(self, k: int) -> "HeckeElement":
        """Multiply by ``q**k``."""
        if self.is_zero():
            return self
        return self.algebra._make(self.ids, self.coef, self.lo + k)

    def divide_by_q_power(self, k: int) -> "HeckeElement":
        """Divide by ``q**k``, insisting the result stays in Z[q]."""
        h = self.shift(-k)
        if not h.is_polynomial():
            raise IntegralityViolation(f"division by q^{k} leaves negative powers of q")
        return h

    def divide_exact(self, p: LaurentPoly) -> "HeckeElement":
        return self.algebra.from_terms({x: lp_divide_exact(c, p) for x, c in self.terms.items()})

    def __eq__(self, other) -> bool:
        if not isinstance(other, HeckeElement):
            return NotImplemented
        if other.algebra is not self.algebra:
            return False
        if len(self.ids) != len(other.ids):
            return False
        if not len(self.ids):
            return True
        if self.lo != other.lo or self.coef.shape != other.coef.shape:
            return False
        a, b = self._sorted(), other._sorted()
        return bool(np.array_equal(a[0], b[0]) and np.array_equal(a[1], b[1]))

    __hash__ = None  # type: ignore[assignment]

    def _sorted(self):
        ids = self.ids
        if len(ids) > 1 and np.any(ids[1:] < ids[:-1]):
            order = np.argsort(ids, kind="stable")
            return ids[order], self.coef[order]
        return ids, self.coef

    def specialize(self, q0: int) -> dict[ExtAffineElement, int]:
        return h_specialize(self, q0)

    def __repr__(self) -> str:
        G = self.algebra.G
        if self.is_zero():
            return "0"
        parts = []
        for x in self.support():
            parts.append(f"({self.coeff(x)})*T[{G.format(x)}]")
        return " + ".join(parts)

    def to_json(self) -> dict:
        G = self.algebra.G
        return {
            "terms": [
                {"elt": G.to_json(x), "coeff": self.coeff(x).to_json()} for x in self.support()
            ]
        }


def hecke_algebra(rd: RootDatum) -> HeckeAlgebra:
    H = rd._cache.get("hecke")
    if H is None:
        H = rd._cache["hecke"] = HeckeAlgebra(rd)
    return H


def h_mul(a: HeckeElement, b: HeckeElement) -> HeckeElement:
    return a.algebra.mul(a, b)


def h_invert_basis(H: HeckeAlgebra, x: ExtAffineElement) -> HeckeElement:
    return H.invert_basis(x)


def standard_class(H: HeckeAlgebra, x: ExtAffineElement) -> HeckeElement:
    return H.standard_class(x)


def costandard_class(H: HeckeAlgebra, x: ExtAffineElement) -> HeckeElement:
    return H.costandard_class(x)


def h_specialize(a: HeckeElement, q0: int) -> dict[ExtAffineElement, int]:
    """Coefficientwise evaluation at ``q = q0``; zero values are dropped."""
    out = {}
    for x, c in a.terms.items():
        v = c(q0)
        if v:
            out[x] = v
    return out
