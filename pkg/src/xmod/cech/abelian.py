"""Cech cochains with coefficients in a finite abelian group A.

A is split into cyclic factors Z/n_1 + ... + Z/n_r by brute force; every
question about cohomology is then answered factor by factor with the Smith
form of the integer coboundary matrices.
"""

from __future__ import annotations

from math import gcd
from dataclasses import dataclass, field
from functools import cached_property
from typing import Sequence

from ..errors import ValidationError
from ..groups import FiniteGroup
from .nerve import Nerve, enumerate_edge_labelings
from .snf import SmithForm, image_size_mod, invariant_factor_form, kernel_size_mod, smith_normal_form, solve_congruence

Cochain = tuple[int, ...]


@dataclass(frozen=True, eq=False)
class CyclicDecomposition:
    group: FiniteGroup
    generators: tuple[int, ...]
    orders: tuple[int, ...]
    coords: tuple[tuple[int, ...], ...]  # element -> exponent vector

    @cached_property
    def element_of(self) -> dict[tuple[int, ...], int]:
        return {c: x for x, c in enumerate(self.coords)}

    def element(self, coords: Sequence[int]) -> int:
        return self.element_of[tuple(c % n for c, n in zip(coords, self.orders))]


def cyclic_decomposition(A: FiniteGroup) -> CyclicDecomposition:
    """Greedy split: take an element of largest order modulo the span so far,
    corrected within its coset to have exactly that order."""
    if not A.is_abelian:
        raise ValidationError(f"coefficient group {A.name or ''} is not abelian")
    span: dict[int, tuple[int, ...]] = {0: ()}
    gens: list[int] = []
    orders: list[int] = []
    while len(span) < A.order:
        def order_mod_span(x):
            k, y = 1, x
            while y not in span:
                y = A.mul[y][x]
                k += 1
            return k

        best = max((x for x in range(A.order) if x not in span), key=lambda x: (order_mod_span(x), -x))
        m = order_mod_span(best)
        y = next(A.mul[best][s] for s in sorted(span) if A.orders[A.mul[best][s]] == m)
        new_span = {}
        power = 0
        for c in range(m):
            for s, cs in span.items():
                new_span[A.mul[power][s]] = cs + (c,)
            power = A.mul[power][y]
        span = new_span
        gens.append(y)
        orders.append(m)
    coords = tuple(span[x] for x in range(A.order))
    return CyclicDecomposition(A, tuple(gens), tuple(orders), coords)


def coboundary_matrix(nerve: Nerve, q: int) -> list[list[int]]:
    """Integer matrix of C^q -> C^(q+1); the face missing vertex p carries sign (-1)^p."""
    upper = nerve.simplices(q + 1)
    ncols = len(nerve.simplices(q))
    rows = []
    for s in upper:
        row = [0] * ncols
        for p in range(len(s)):
            face = s[:p] + s[p + 1:]
            row[nerve.index_of(face)] += (-1) ** p
        rows.append(row)
    return rows


@dataclass(frozen=True, eq=False)
class AbelianCochainComplex:
    nerve: Nerve
    A: FiniteGroup
    decomposition: CyclicDecomposition

    def dim(self, q: int) -> int:
        return len(self.nerve.simplices(q))

    @cached_property
    def matrices(self) -> tuple[list[list[int]], ...]:
        return tuple(coboundary_matrix(self.nerve, q) for q in range(3))

    @cached_property
    def smith(self) -> tuple[SmithForm, ...]:
        return tuple(smith_normal_form(M, cols=self.dim(q)) for q, M in enumerate(self.matrices))

    def coboundary(self, q: int, cochain: Sequence[int]) -> Cochain:
        """delta applied with the group law of A directly (no coordinates)."""
        A = self.A
        if len(cochain) != self.dim(q):
            raise ValidationError(f"cochain of length {len(cochain)} is not a {q}-cochain")
        out = []
        for s in self.nerve.simplices(q + 1):
            acc = 0
            for p in range(len(s)):
                v = cochain[self.nerve.index_of(s[:p] + s[p + 1:])]
                acc = A.mul[acc][v if p % 2 == 0 else A.inv[v]]
            out.append(acc)
        return tuple(out)

    def is_cocycle(self, q: int, cochain: Sequence[int]) -> bool:
        return all(v == 0 for v in self.coboundary(q, cochain))

    def to_coords(self, cochain: Sequence[int]) -> list[list[int]]:
        """One integer vector per cyclic factor."""
        coords = self.decomposition.coords
        return [[coords[v][i] for v in cochain] for i in range(len(self.decomposition.orders))]

    def from_coords(self, vectors: Sequence[Sequence[int]], length: int) -> Cochain:
        dec = self.decomposition
        return tuple(dec.element([vec[k] for vec in vectors]) for k in range(length))

    def add(self, a: Sequence[int], b: Sequence[int]) -> Cochain:
        return tuple(self.A.mul[x][y] for x, y in zip(a, b))

    def neg(self, a: Sequence[int]) -> Cochain:
        return tuple(self.A.inv[x] for x in a)

    def primitive(self, q: int, cochain: Sequence[int]) -> Cochain | None:
        """Some x with delta x = cochain (x a (q-1)-cochain), or None."""
        if q == 0:
            return () if all(v == 0 for v in cochain) else None
        snf = self.smith[q - 1]
        sols = []
        for vec, n in zip(self.to_coords(cochain), self.decomposition.orders):
            x = solve_congruence(snf, vec, n)
            if x is None:
                return None
            sols.append(x)
        prim = self.from_coords(sols, self.dim(q - 1))
        assert self.coboundary(q - 1, prim) == tuple(cochain)
        return prim


def cochain_complex(nerve: Nerve, A: FiniteGroup) -> AbelianCochainComplex:
    return AbelianCochainComplex(nerve, A, cyclic_decomposition(A))


@dataclass(frozen=True, eq=False)
class CechClass:
    complex: AbelianCochainComplex
    degree: int
    representative: Cochain
    is_zero: bool
    witness: Cochain | None = None

    def __post_init__(self):
        assert self.complex.is_cocycle(self.degree, self.representative)
        if self.is_zero:
            assert self.complex.coboundary(self.degree - 1, self.witness) == self.representative

    def same_class(self, other: "CechClass") -> bool:
        diff = self.complex.add(self.representative, self.complex.neg(other.representative))
        return self.complex.primitive(self.degree, diff) is not None


@dataclass(frozen=True, eq=False)
class CohomologyGroup:
    complex: AbelianCochainComplex
    degree: int
    invariant_factors: tuple[int, ...]
    per_factor: tuple[tuple[int, tuple[int, ...]], ...] = field(default=())

    @property
    def order(self) -> int:
        out = 1
        for d in self.invariant_factors:
            out *= d
        return out

    def is_cocycle(self, cochain: Sequence[int]) -> bool:
        return self.complex.is_cocycle(self.degree, cochain)

    def primitive(self, cochain: Sequence[int]) -> Cochain | None:
        return self.complex.primitive(self.degree, cochain)

    def classify(self, cochain: Sequence[int]) -> CechClass:
        cochain = tuple(cochain)
        if not self.is_cocycle(cochain):
            raise ValidationError(f"not a {self.degree}-cocycle")
        w = self.primitive(cochain)
        return CechClass(self.complex, self.degree, cochain, w is not None, w)


def abelian_cech_cohomology(nerve: Nerve, A: FiniteGroup, q: int) -> CohomologyGroup:
    """H^q(nerve, A) for q in {1, 2}.

    Each cyclic factor Z/n contributes H^q(C) (x) Z/n + Tor(H^(q+1)(C), Z/n)
    where C is the integral cochain complex; the order is cross-checked
    against |ker delta^q| / |im delta^(q-1)| computed mod n.
    """
    if q not in (1, 2):
        raise ValidationError(f"degree {q} not supported (1 or 2)")
    cx = cochain_complex(nerve, A)
    into, out = cx.smith[q - 1], cx.smith[q]
    free_rank = cx.dim(q) - out.rank - into.rank
    pieces_all = []
    per_factor = []
    for n in cx.decomposition.orders:
        pieces = [n] * free_rank
        pieces += [gcd(d, n) for d in into.invariant_factors if d > 1]
        pieces += [gcd(d, n) for d in out.invariant_factors if d > 1]
        pieces = [p for p in pieces if p > 1]
        size = 1
        for p in pieces:
            size *= p
        assert size * image_size_mod(into, n) == kernel_size_mod(out, n)
        per_factor.append((n, tuple(invariant_factor_form(pieces))))
        pieces_all += pieces
    return CohomologyGroup(cx, q, tuple(invariant_factor_form(pieces_all)), tuple(per_factor))


def enumerate_tree_normalized_cocycles(cx: AbelianCochainComplex) -> list[Cochain]:
    """All A-valued 1-cocycles vanishing on the spanning forest.

    Every class in H^1 has exactly one such representative, so this doubles
    as an enumeration of H^1.
    """
    A = cx.A
    return list(enumerate_edge_labelings(cx.nerve, A.order, lambda a, b, c: A.mul[a][b] == c))
