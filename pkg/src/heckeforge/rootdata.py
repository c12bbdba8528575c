"""Based root data and the finite Weyl group acting on cocharacters.

A root datum is given by explicit simple roots (characters) and simple coroots
(cocharacters) in Z^n, paired by the dot product.  Giving vectors rather than a
Cartan matrix keeps isogenous groups apart (SL2 vs PGL2) and allows a central
torus (GL2).
"""
from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from pathlib import Path
from typing import Sequence

from ._lattice import IntegerSpan, rational_rank
from .errors import NotFiniteType, NotGCM, RankMismatch, UnknownPreset

__all__ = [
    "FiniteWeylElement",
    "RootDatum",
    "build_root_datum",
    "preset",
    "PRESETS",
    "positive_roots",
    "rho_pairing",
    "dominant_representative",
    "load_root_datum",
]

DEFAULT_WEYL_CAP = 10**6

Vec = tuple  # tuple[int, ...]


def _dot(a: Sequence[int], b: Sequence[int]) -> int:
    return sum(x * y for x, y in zip(a, b))


def _matvec(m: tuple, v: Sequence[int]) -> tuple:
    return tuple(sum(a * b for a, b in zip(row, v)) for row in m)


def _matmul(a: tuple, b: tuple) -> tuple:
    cols = list(zip(*b))
    return tuple(tuple(_dot(row, c) for c in cols) for row in a)


@dataclass(frozen=True)
class FiniteWeylElement:
    """An element of W0, acting on X_*(T) by ``matrix``.

    ``index`` is the position in the datum's deterministic enumeration and is
    what extended affine elements store.
    """

    index: int
    matrix: tuple
    word: tuple

    @property
    def length(self) -> int:
        return len(self.word)

    def act(self, lam: Sequence[int]) -> tuple:
        return _matvec(self.matrix, lam)

    def __repr__(self) -> str:
        w = "".join(f"s{i}" for i in self.word) or "e"
        return f"FiniteWeylElement({w})"


@dataclass(frozen=True, eq=False)
class RootDatum:
    name: str
    simple_roots: tuple
    simple_coroots: tuple
    rank: int
    weyl_cap: int = DEFAULT_WEYL_CAP
    _cache: dict = field(default_factory=dict, repr=False, compare=False)

    # -- basic data ------------------------------------------------------
    @property
    def num_simple(self) -> int:
        return len(self.simple_roots)

    @cached_property
    def cartan_matrix(self) -> tuple:
        """``C[i][j] = <alpha_i, alpha_j^vee>``."""
        return tuple(
            tuple(_dot(a, b) for b in self.simple_coroots) for a in self.simple_roots
        )

    @cached_property
    def _reflections(self) -> tuple:
        n = self.rank
        mats = []
        for a, av in zip(self.simple_roots, self.simple_coroots):
            # lam -> lam - <a, lam> av
            mats.append(
                tuple(
                    tuple(int(i == j) - av[i] * a[j] for j in range(n)) for i in range(n)
                )
            )
        return tuple(mats)

    # -- W0 --------------------------------------------------------------
    @cached_property
    def weyl(self) -> tuple[FiniteWeylElement, ...]:
        """All of W0, ordered by length then by discovery (deterministic)."""
        n = self.rank
        ident = tuple(tuple(int(i == j) for j in range(n)) for i in range(n))
        seen = {ident: ()}
        level = [ident]
        order = [ident]
        while level:
            nxt = []
            for m in level:
                word = seen[m]
                for i, s in enumerate(self._reflections):
                    m2 = _matmul(s, m)
                    if m2 not in seen:
                        seen[m2] = (i + 1,) + word
                        nxt.append(m2)
                        order.append(m2)
                        if len(order) > self.weyl_cap:
                            raise NotFiniteType(
                                f"W0 exceeds {self.weyl_cap} elements; not of finite type"
                            )
            level = sorted(nxt, key=lambda m: seen[m])
        order.sort(key=lambda m: (len(seen[m]), seen[m]))
        return tuple(
            FiniteWeylElement(k, m, seen[m]) for k, m in enumerate(order)
        )

    @cached_property
    def _weyl_index(self) -> dict:
        return {w.matrix: w.index for w in self.weyl}

    def weyl_index(self, matrix: tuple) -> int:
        return self._weyl_index[matrix]

    @cached_property
    def weyl_mult(self) -> tuple:
        """``weyl_mult[a][b]`` is the index of ``w_a w_b``."""
        idx = self._weyl_index
        W = self.weyl
        return tuple(tuple(idx[_matmul(a.matrix, b.matrix)] for b in W) for a in W)

    @cached_property
    def weyl_inverse(self) -> tuple:
        mult = self.weyl_mult
        return tuple(next(b for b in range(len(mult)) if mult[a][b] == 0) for a in range(len(mult)))

    def simple_reflection(self, i: int) -> FiniteWeylElement:
        """Finite simple reflection s_i, 1-based."""
        return self.weyl[self._weyl_index[self._reflections[i - 1]]]

    def word_to_weyl(self, word: Sequence[int]) -> int:
        k = 0
        for i in word:
            k = self.weyl_mult[k][self.simple_reflection(i).index]
        return k

    # -- roots -----------------------------------------------------------
    @cached_property
    def _positive_system(self):
        r = self.num_simple
        C = self.cartan_matrix
        simple = [tuple(int(i == j) for j in range(r)) for i in range(r)]
        # coefficient vectors of roots and of their coroots (in simple coroots)
        found = {c: c for c in simple}
        queue = deque(simple)
        while queue:
            c = queue.popleft()
            cv = found[c]
            for j in range(r):
                if c == simple[j]:
                    continue
                # <beta, alpha_j^vee> and <alpha_j, beta^vee>
                p = sum(c[i] * C[i][j] for i in range(r))
                pv = sum(C[j][i] * cv[i] for i in range(r))
                c2 = tuple(x - (p if i == j else 0) for i, x in enumerate(c))
                cv2 = tuple(x - (pv if i == j else 0) for i, x in enumerate(cv))
                if c2 not in found:
                    found[c2] = cv2
                    queue.append(c2)
                    if len(found) > 10_000:
                        raise NotFiniteType("root system is infinite")
        coeffs = sorted(found, key=lambda c: (sum(c), tuple(-x for x in c)))
        roots, coroots = [], []
        for c in coeffs:
            cv = found[c]
            roots.append(tuple(sum(c[i] * self.simple_roots[i][k] for i in range(r)) for k in range(self.rank)))
            coroots.append(tuple(sum(cv[i] * self.simple_coroots[i][k] for i in range(r)) for k in range(self.rank)))
        return tuple(coeffs), tuple(roots), tuple(coroots)

    @property
    def positive_roots(self) -> tuple:
        return self._positive_system[1]

    @property
    def positive_coroots(self) -> tuple:
        """``positive_coroots[k]`` is the coroot of ``positive_roots[k]``."""
        return self._positive_system[2]

    @property
    def root_coefficients(self) -> tuple:
        return self._positive_system[0]

    @cached_property
    def _root_index(self) -> dict:
        return {a: k for k, a in enumerate(self.positive_roots)}

    def is_positive_root(self, a: Sequence[int]) -> bool:
        return tuple(a) in self._root_index

    @cached_property
    def inversion_flags(self) -> tuple:
        """``inversion_flags[w][k] == 1`` iff ``w^{-1} alpha_k`` is negative."""
        out = []
        idx = self._root_index
        for w in self.weyl:
            mt = tuple(zip(*w.matrix))
            flags = []
            for a in self.positive_roots:
                b = _matvec(mt, a)  # w^{-1} acting on characters
                flags.append(0 if b in idx else 1)
            out.append(tuple(flags))
        return tuple(out)

    @cached_property
    def two_rho(self) -> tuple:
        """2 rho as a character (sum of positive roots)."""
        return tuple(sum(a[k] for a in self.positive_roots) for k in range(self.rank))

    def rho_pairing(self, lam: Sequence[int]) -> int:
        """<2 rho, lam>."""
        return _dot(self.two_rho, lam)

    def is_dominant(self, lam: Sequence[int]) -> bool:
        return all(_dot(a, lam) >= 0 for a in self.simple_roots)

    def orbit(self, lam: Sequence[int]) -> list[tuple]:
        """The W0-orbit of lam, sorted."""
        return sorted({w.act(lam) for w in self.weyl})

    def dominant_representative(self, lam: Sequence[int]) -> tuple[tuple, FiniteWeylElement]:
        lam = tuple(lam)
        for w in self.weyl:
            mu = w.act(lam)
            if self.is_dominant(mu):
                return mu, w
        raise AssertionError("no dominant element in a W0-orbit")  # pragma: no cover

    def coroot_pairings(self, lam: Sequence[int]) -> list[int]:
        return [_dot(a, lam) for a in self.positive_roots]

    # -- components ------------------------------------------------------
    @cached_property
    def components(self) -> tuple:
        """Irreducible components of the Dynkin diagram (tuples of 0-based simple indices)."""
        r = self.num_simple
        C = self.cartan_matrix
        seen, comps = set(), []
        for i in range(r):
            if i in seen:
                continue
            comp, stack = [], [i]
            seen.add(i)
            while stack:
                a = stack.pop()
                comp.append(a)
                for b in range(r):
                    if b not in seen and C[a][b] != 0:
                        seen.add(b)
                        stack.append(b)
            comps.append(tuple(sorted(comp)))
        return tuple(comps)

    @cached_property
    def highest_roots(self) -> tuple:
        """Per component: index into ``positive_roots`` of its highest root."""
        out = []
        for comp in self.components:
            best = None
            for k, c in enumerate(self.root_coefficients):
                if all(c[i] == 0 for i in range(len(c)) if i not in comp):
                    if best is None or sum(c) > sum(self.root_coefficients[best]):
                        best = k
            out.append(best)
        return tuple(out)

    @cached_property
    def coroot_span(self) -> IntegerSpan:
        return IntegerSpan(self.simple_coroots, self.rank)

    @cached_property
    def pairing_span(self) -> IntegerSpan:
        """Span of the images of the basis vectors under lam -> (<alpha_i, lam>)_i."""
        gens = [tuple(a[j] for a in self.simple_roots) for j in range(self.rank)]
        return IntegerSpan(gens, self.num_simple)

    @cached_property
    def is_semisimple(self) -> bool:
        return self.num_simple == self.rank

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "rank": self.rank,
            "simple_roots": [list(a) for a in self.simple_roots],
            "simple_coroots": [list(a) for a in self.simple_coroots],
        }

    def __repr__(self) -> str:
        return f"RootDatum({self.name!r}, rank={self.rank}, |W0|={len(self.weyl)})"


def build_root_datum(
    rank: int,
    simple_roots: Sequence[Sequence[int]],
    simple_coroots: Sequence[Sequence[int]],
    name: str = "custom",
    weyl_cap: int = DEFAULT_WEYL_CAP,
) -> RootDatum:
    """Validate the data and enumerate W0 eagerly."""
    if rank < 0:
        raise RankMismatch("rank must be nonnegative")
    if len(simple_roots) != len(simple_coroots):
        raise RankMismatch("need as many simple coroots as simple roots")
    for v in list(simple_roots) + list(simple_coroots):
        if len(v) != rank:
            raise RankMismatch(f"vector {list(v)} does not have length {rank}")
    roots = tuple(tuple(int(x) for x in a) for a in simple_roots)
    coroots = tuple(tuple(int(x) for x in a) for a in simple_coroots)
    r = len(roots)
    C = [[_dot(a, b) for b in coroots] for a in roots]
    for i in range(r):
        if C[i][i] != 2:
            raise NotGCM(f"<alpha_{i+1}, alpha_{i+1}^vee> = {C[i][i]} != 2")
        for j in range(r):
            if i != j:
                if C[i][j] > 0:
                    raise NotGCM(f"positive off-diagonal Cartan entry at ({i+1},{j+1})")
                if (C[i][j] == 0) != (C[j][i] == 0):
                    raise NotGCM(f"asymmetric zero pattern at ({i+1},{j+1})")
                if C[i][j] * C[j][i] >= 4:
                    raise NotFiniteType(f"rank-2 subsystem ({i+1},{j+1}) is of affine or hyperbolic type")
    if r and (rational_rank(roots) < r or rational_rank(coroots) < r):
        raise NotGCM("simple roots or coroots are linearly dependent")
    rd = RootDatum(name, roots, coroots, rank, weyl_cap)
    rd.weyl  # noqa: B018  eager enumeration doubles as the finite-type check
    rd._positive_system  # noqa: B018
    return rd


# simply connected forms use the coroot basis; adjoint forms use the coweight basis
PRESETS = {
    "SL2": dict(rank=1, simple_roots=[[2]], simple_coroots=[[1]]),
    "PGL2": dict(rank=1, simple_roots=[[1]], simple_coroots=[[2]]),
    "GL2": dict(rank=2, simple_roots=[[1, -1]], simple_coroots=[[1, -1]]),
    "SL3": dict(rank=2, simple_roots=[[2, -1], [-1, 2]], simple_coroots=[[1, 0], [0, 1]]),
    "PGL3": dict(rank=2, simple_roots=[[1, 0], [0, 1]], simple_coroots=[[2, -1], [-1, 2]]),
    # alpha_1 short, alpha_2 long
    "Sp4": dict(rank=2, simple_roots=[[2, -1], [-2, 2]], simple_coroots=[[1, 0], [0, 1]]),
    "SO5": dict(rank=2, simple_roots=[[1, 0], [0, 1]], simple_coroots=[[2, -2], [-1, 2]]),
    "G2": dict(rank=2, simple_roots=[[2, -1], [-3, 2]], simple_coroots=[[1, 0], [0, 1]]),
}

_PRESET_CACHE: dict[str, RootDatum] = {}


def preset(name: str) -> RootDatum:
    if name not in PRESETS:
        raise UnknownPreset(f"unknown preset {name!r}; choose from {sorted(PRESETS)}")
    if name not in _PRESET_CACHE:
        _PRESET_CACHE[name] = build_root_datum(name=name, **PRESETS[name])
    return _PRESET_CACHE[name]


def load_root_datum(source: str) -> RootDatum:
    """A preset name, or a path to a root-datum JSON file."""
    if source in PRESETS:
        return preset(source)
    path = Path(source)
    if not path.exists():
        raise UnknownPreset(f"{source!r} is neither a preset nor a file")
    data = json.loads(path.read_text())
    return build_root_datum(
        rank=data["rank"],
        simple_roots=data["simple_roots"],
        simple_coroots=data["simple_coroots"],
        name=data.get("name", path.stem),
    )


def positive_roots(rd: RootDatum) -> list[tuple]:
    return list(rd.positive_roots)


def rho_pairing(rd: RootDatum, lam: Sequence[int]) -> int:
    return rd.rho_pairing(lam)


def dominant_representative(rd: RootDatum, lam: Sequence[int]):
    return rd.dominant_representative(lam)
