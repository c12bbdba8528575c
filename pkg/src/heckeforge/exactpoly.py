"""Exact coefficient rings.

``LaurentPoly`` is Z[q, q^-1] with arbitrary-precision coefficients; it is the
coefficient ring of every Hecke algebra in the package.  ``GroupRingElement``
is the group ring Z[X] of a lattice X, used for characters of the dual group.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Mapping

from .errors import NotDivisible

__all__ = [
    "LaurentPoly",
    "GroupRingElement",
    "lp_add",
    "lp_mul",
    "lp_neg",
    "lp_divide_exact",
    "lp_is_polynomial",
    "lp_eval",
    "gr_mul",
    "gr_weyl_symmetrize",
]


class LaurentPoly:
    """Sparse Laurent polynomial in ``q`` with integer coefficients.

    Immutable.  Zero coefficients are never stored.
    """

    __slots__ = ("_c", "_hash")

    def __init__(self, coeffs: Mapping[int, int] | None = None):
        c = {}
        if coeffs:
            for e, v in coeffs.items():
                v = int(v)
                if v:
                    c[int(e)] = v
        self._c = c
        self._hash = None

    @classmethod
    def _raw(cls, c: dict) -> "LaurentPoly":
        p = cls.__new__(cls)
        p._c = c
        p._hash = None
        return p

    @classmethod
    def const(cls, n: int) -> "LaurentPoly":
        return cls._raw({0: int(n)} if n else {})

    @classmethod
    def monomial(cls, exp: int, coeff: int = 1) -> "LaurentPoly":
        return cls._raw({int(exp): int(coeff)} if coeff else {})

    @classmethod
    def from_dense(cls, coeffs: Iterable[int], lo: int = 0) -> "LaurentPoly":
        return cls({lo + i: v for i, v in enumerate(coeffs)})

    # -- inspection ------------------------------------------------------
    @property
    def coeffs(self) -> dict[int, int]:
        return dict(self._c)

    def items(self):
        return sorted(self._c.items())

    def __getitem__(self, e: int) -> int:
        return self._c.get(e, 0)

    def is_zero(self) -> bool:
        return not self._c

    def __bool__(self) -> bool:
        return bool(self._c)

    @property
    def min_exp(self) -> int:
        if not self._c:
            raise ValueError("zero polynomial has no exponents")
        return min(self._c)

    @property
    def max_exp(self) -> int:
        if not self._c:
            raise ValueError("zero polynomial has no exponents")
        return max(self._c)

    def __eq__(self, other) -> bool:
        if isinstance(other, LaurentPoly):
            return self._c == other._c
        if isinstance(other, int):
            return self._c == ({0: other} if other else {})
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._c.items()))
        return self._hash

    # -- ring operations -------------------------------------------------
    @staticmethod
    def _coerce(x) -> "LaurentPoly":
        if isinstance(x, LaurentPoly):
            return x
        if isinstance(x, int):
            return LaurentPoly.const(x)
        raise TypeError(f"cannot coerce {type(x).__name__} to LaurentPoly")

    def __add__(self, other) -> "LaurentPoly":
        try:
            other = self._coerce(other)
        except TypeError:
            return NotImplemented
        c = dict(self._c)
        for e, v in other._c.items():
            s = c.get(e, 0) + v
            if s:
                c[e] = s
            else:
                c.pop(e, None)
        return LaurentPoly._raw(c)

    __radd__ = __add__

    def __neg__(self) -> "LaurentPoly":
        return LaurentPoly._raw({e: -v for e, v in self._c.items()})

    def __sub__(self, other) -> "LaurentPoly":
        try:
            other = self._coerce(other)
        except TypeError:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> "LaurentPoly":
        return self._coerce(other) - self

    def __mul__(self, other) -> "LaurentPoly":
        if isinstance(other, int):
            if not other:
                return LaurentPoly._raw({})
            return LaurentPoly._raw({e: v * other for e, v in self._c.items()})
        try:
            other = self._coerce(other)
        except TypeError:
            return NotImplemented
        c: dict[int, int] = {}
        for e1, v1 in self._c.items():
            for e2, v2 in other._c.items():
                e = e1 + e2
                c[e] = c.get(e, 0) + v1 * v2
        return LaurentPoly._raw({e: v for e, v in c.items() if v})

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "LaurentPoly":
        if n < 0:
            if len(self._c) != 1:
                raise NotDivisible("only monomials are units in Z[q, q^-1]")
            (e, v), = self._c.items()
            if v not in (1, -1):
                raise NotDivisible("only +-q^k are units in Z[q, q^-1]")
            return LaurentPoly._raw({e * n: v ** (-n)})
        result = LaurentPoly.const(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def shift(self, k: int) -> "LaurentPoly":
        """Multiply by q**k."""
        return LaurentPoly._raw({e + k: v for e, v in self._c.items()})

    def __call__(self, q0: int) -> int:
        return lp_eval(self, q0)

    # -- display / serialization -----------------------------------------
    def __repr__(self) -> str:
        return f"LaurentPoly({self})"

    def __str__(self) -> str:
        if not self._c:
            return "0"
        parts = []
        for e, v in sorted(self._c.items()):
            if e == 0:
                mono = str(abs(v))
            else:
                base = "q" if e == 1 else f"q^{e}"
                mono = base if abs(v) == 1 else f"{abs(v)}*{base}"
            sign = "-" if v < 0 else "+"
            parts.append((sign, mono))
        head = ("-" if parts[0][0] == "-" else "") + parts[0][1]
        return head + "".join(f" {s} {m}" for s, m in parts[1:])

    def to_json(self) -> dict[str, str]:
        return {str(e): str(v) for e, v in sorted(self._c.items())}

    @classmethod
    def from_json(cls, obj: Mapping[str, str | int]) -> "LaurentPoly":
        return cls({int(e): int(v) for e, v in obj.items()})


Q = LaurentPoly.monomial(1)
ONE = LaurentPoly.const(1)
ZERO = LaurentPoly.const(0)


def lp_add(a: LaurentPoly, b: LaurentPoly) -> LaurentPoly:
    return a + b


def lp_mul(a: LaurentPoly, b: LaurentPoly) -> LaurentPoly:
    return a * b


def lp_neg(a: LaurentPoly) -> LaurentPoly:
    return -a


def lp_divide_exact(a: LaurentPoly, b: LaurentPoly) -> LaurentPoly:
    """Return ``c`` with ``a == b * c`` in Z[q, q^-1]; raise NotDivisible otherwise."""
    if b.is_zero():
        raise ZeroDivisionError("division by the zero polynomial")
    if a.is_zero():
        return ZERO
    # long division from the top degree; Laurent units absorb the low end
    bc = b._c
    b_top = max(bc)
    b_lead = bc[b_top]
    b_low = min(bc)
    rem = dict(a._c)
    quot: dict[int, int] = {}
    a_low = min(rem)
    floor = a_low - b_low
    while rem:
        top = max(rem)
        e = top - b_top
        if e < floor:
            raise NotDivisible(f"{a} is not divisible by {b}")
        v, r = divmod(rem[top], b_lead)
        if r:
            raise NotDivisible(f"{a} is not divisible by {b}")
        quot[e] = v
        for be, bv in bc.items():
            k = be + e
            s = rem.get(k, 0) - v * bv
            if s:
                rem[k] = s
            else:
                rem.pop(k, None)
    return LaurentPoly._raw(quot)


def lp_is_polynomial(a: LaurentPoly) -> bool:
    return all(e >= 0 for e in a._c)


def lp_eval(a: LaurentPoly, q0: int) -> int:
    """Evaluate at the integer ``q0``; raises if negative powers leave a non-integer."""
    if all(e >= 0 for e in a._c):
        return sum(v * q0 ** e for e, v in a._c.items())
    val = sum(v * Fraction(q0) ** e for e, v in a._c.items())
    if val.denominator != 1:
        raise ValueError(f"{a} at q={q0} is not an integer")
    return int(val)


class GroupRingElement:
    """Finite formal sum ``sum c_lam e^lam`` over an integer lattice."""

    __slots__ = ("_c",)

    def __init__(self, coeffs: Mapping[tuple, int] | None = None):
        self._c = {}
        if coeffs:
            for k, v in coeffs.items():
                v = int(v)
                if v:
                    self._c[tuple(int(x) for x in k)] = v

    @classmethod
    def _raw(cls, c: dict) -> "GroupRingElement":
        g = cls.__new__(cls)
        g._c = c
        return g

    @classmethod
    def monomial(cls, lam, coeff: int = 1) -> "GroupRingElement":
        return cls({tuple(lam): coeff})

    @property
    def coeffs(self) -> dict[tuple, int]:
        return dict(self._c)

    def items(self):
        return sorted(self._c.items())

    def __getitem__(self, lam) -> int:
        return self._c.get(tuple(lam), 0)

    def __bool__(self) -> bool:
        return bool(self._c)

    def __len__(self) -> int:
        return len(self._c)

    def __eq__(self, other) -> bool:
        if not isinstance(other, GroupRingElement):
            return NotImplemented
        return self._c == other._c

    def __hash__(self) -> int:
        return hash(frozenset(self._c.items()))

    def __repr__(self) -> str:
        return f"GroupRingElement({dict(sorted(self._c.items()))})"

    def __add__(self, other: "GroupRingElement") -> "GroupRingElement":
        c = dict(self._c)
        for k, v in other._c.items():
            s = c.get(k, 0) + v
            if s:
                c[k] = s
            else:
                c.pop(k, None)
        return GroupRingElement._raw(c)

    def __neg__(self) -> "GroupRingElement":
        return GroupRingElement._raw({k: -v for k, v in self._c.items()})

    def __sub__(self, other: "GroupRingElement") -> "GroupRingElement":
        return self + (-other)

    def scale(self, n: int) -> "GroupRingElement":
        if not n:
            return GroupRingElement._raw({})
        return GroupRingElement._raw({k: v * n for k, v in self._c.items()})

    def __mul__(self, other: "GroupRingElement") -> "GroupRingElement":
        c: dict[tuple, int] = {}
        for k1, v1 in self._c.items():
            for k2, v2 in other._c.items():
                k = tuple(a + b for a, b in zip(k1, k2))
                c[k] = c.get(k, 0) + v1 * v2
        return GroupRingElement._raw({k: v for k, v in c.items() if v})

    def divide_exact(self, other: "GroupRingElement") -> "GroupRingElement":
        """Exact quotient by lexicographic long division (lex is a group order on Z^n)."""
        if not other._c:
            raise ZeroDivisionError("division by zero in the group ring")
        lead = max(other._c)
        lead_c = other._c[lead]
        rem = dict(self._c)
        quot: dict[tuple, int] = {}
        steps = 0
        limit = (len(self._c) + 1) * (len(other._c) + 1) * 64
        while rem:
            top = max(rem)
            v, r = divmod(rem[top], lead_c)
            if r:
                raise NotDivisible("group ring element not divisible")
            k = tuple(a - b for a, b in zip(top, lead))
            quot[k] = quot.get(k, 0) + v
            for ok, ov in other._c.items():
                kk = tuple(a + b for a, b in zip(ok, k))
                s = rem.get(kk, 0) - v * ov
                if s:
                    rem[kk] = s
                else:
                    rem.pop(kk, None)
            steps += 1
            if steps > limit:
                raise NotDivisible("group ring long division does not terminate")
        return GroupRingElement._raw({k: v for k, v in quot.items() if v})


def gr_mul(a: GroupRingElement, b: GroupRingElement) -> GroupRingElement:
    return a * b


def gr_weyl_symmetrize(rd, a: GroupRingElement) -> GroupRingElement:
    """``sum_w det(w) w(a)`` with W0 acting on exponents through its cocharacter matrices."""
    out = GroupRingElement()
    for w in rd.weyl:
        sign = -1 if w.length % 2 else 1
        out = out + GroupRingElement._raw(
            {w.act(k): sign * v for k, v in a._c.items()}
        )
    return out
