"""Finite groups as multiplication tables over dense indices.

Element 0 is always the identity.  Everything downstream (crossed modules,
bispaces, cocycles) stores group elements as these indices.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, NamedTuple, Sequence

from .errors import (
    ActionError,
    BudgetExceeded,
    GroupAxiomError,
    HomomorphismError,
    NotNormalError,
    NotSubgroupError,
    ValidationError,
)

DEFAULT_MAX_ORDER = 64


@dataclass(frozen=True, eq=False)
class FiniteGroup:
    mul: tuple[tuple[int, ...], ...]
    inv: tuple[int, ...]
    labels: tuple[str, ...] | None = None
    name: str = ""

    @property
    def order(self) -> int:
        return len(self.mul)

    @property
    def identity(self) -> int:
        return 0

    def __len__(self) -> int:
        return len(self.mul)

    def __iter__(self):
        return iter(range(len(self.mul)))

    def __eq__(self, other) -> bool:
        if not isinstance(other, FiniteGroup):
            return NotImplemented
        return self.mul == other.mul and self.labels == other.labels

    def __hash__(self) -> int:
        return hash(self.mul)

    def __repr__(self) -> str:
        return f"FiniteGroup({self.name or '?'}, order={self.order})"

    def m(self, *xs: int) -> int:
        """Product of any number of elements, left to right."""
        acc = 0
        for x in xs:
            acc = self.mul[acc][x]
        return acc

    def conj(self, g: int, x: int) -> int:
        """g x g^-1"""
        return self.mul[self.mul[g][x]][self.inv[g]]

    def power(self, x: int, k: int) -> int:
        if k < 0:
            x, k = self.inv[x], -k
        acc = 0
        for _ in range(k):
            acc = self.mul[acc][x]
        return acc

    def element_order(self, x: int) -> int:
        n, y = 1, x
        while y != 0:
            y = self.mul[y][x]
            n += 1
        return n

    @cached_property
    def orders(self) -> tuple[int, ...]:
        return tuple(self.element_order(x) for x in range(self.order))

    @cached_property
    def is_abelian(self) -> bool:
        n = self.order
        return all(self.mul[a][b] == self.mul[b][a] for a in range(n) for b in range(a + 1, n))

    def label(self, x: int) -> str:
        return self.labels[x] if self.labels else str(x)


@dataclass(frozen=True, eq=False)
class GroupHom:
    source: FiniteGroup
    target: FiniteGroup
    map: tuple[int, ...]

    def __call__(self, x: int) -> int:
        return self.map[x]

    def __eq__(self, other) -> bool:
        if not isinstance(other, GroupHom):
            return NotImplemented
        return self.source == other.source and self.target == other.target and self.map == other.map

    def __hash__(self) -> int:
        return hash(self.map)

    def compose(self, first: "GroupHom") -> "GroupHom":
        """self after first."""
        if first.target != self.source:
            raise HomomorphismError("cannot compose: target/source mismatch")
        return GroupHom(first.source, self.target, tuple(self.map[first.map[x]] for x in range(first.source.order)))

    @cached_property
    def kernel(self) -> "Subgroup":
        return Subgroup(self.source, tuple(x for x in range(self.source.order) if self.map[x] == 0))

    @cached_property
    def image(self) -> "Subgroup":
        return Subgroup(self.target, tuple(sorted(set(self.map))))

    @property
    def is_bijective(self) -> bool:
        return len(set(self.map)) == self.source.order == self.target.order


@dataclass(frozen=True, eq=False)
class Subgroup:
    parent: FiniteGroup
    elements: tuple[int, ...]

    def __contains__(self, x: int) -> bool:
        return x in self._members

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Subgroup):
            return NotImplemented
        return self.parent == other.parent and self.elements == other.elements

    def __hash__(self) -> int:
        return hash(self.elements)

    @cached_property
    def _members(self) -> frozenset[int]:
        return frozenset(self.elements)

    @cached_property
    def index_of(self) -> dict[int, int]:
        return {x: i for i, x in enumerate(self.elements)}

    def is_normal(self) -> bool:
        return normality_witness(self) is None

    def as_group(self, name: str = "") -> tuple[FiniteGroup, GroupHom]:
        """Materialize as a standalone group (indices = positions in ``elements``) plus its inclusion."""
        pos = self.index_of
        P = self.parent
        mul = tuple(tuple(pos[P.mul[a][b]] for b in self.elements) for a in self.elements)
        inv = tuple(pos[P.inv[a]] for a in self.elements)
        labels = tuple(P.label(a) for a in self.elements) if P.labels else None
        grp = FiniteGroup(mul, inv, labels, name)
        return grp, GroupHom(grp, P, self.elements)


@dataclass(frozen=True, eq=False)
class GroupAction:
    """Left action of ``actor`` on ``space`` by automorphisms: act[h][g]."""

    actor: FiniteGroup
    space: FiniteGroup
    act: tuple[tuple[int, ...], ...]

    def __call__(self, h: int, g: int) -> int:
        return self.act[h][g]

    def __eq__(self, other) -> bool:
        if not isinstance(other, GroupAction):
            return NotImplemented
        return self.actor == other.actor and self.space == other.space and self.act == other.act

    def __hash__(self) -> int:
        return hash(self.act)


@dataclass(frozen=True, eq=False)
class AutGroupData:
    base: FiniteGroup
    autos: tuple[tuple[int, ...], ...]
    group: FiniteGroup
    inner: Subgroup
    outer_reps: tuple[int, ...]
    ad: GroupHom = field(repr=False)

    @cached_property
    def index(self) -> dict[tuple[int, ...], int]:
        return {p: i for i, p in enumerate(self.autos)}

    @property
    def n_outer(self) -> int:
        return len(self.outer_reps)


class Quotient(NamedTuple):
    group: FiniteGroup
    projection: GroupHom
    section: tuple[int, ...]


# ---------------------------------------------------------------- validation


def validate_group(table: Sequence[Sequence[int]], labels: Sequence[str] | None = None, name: str = "") -> FiniteGroup:
    """Check a raw multiplication table and build a :class:`FiniteGroup`.

    Index 0 must be the identity.  Failures raise :class:`GroupAxiomError`
    whose ``witness`` is the first offending element, pair or triple.
    """
    n = len(table)
    if n == 0:
        raise GroupAxiomError("empty table", witness=None)
    rows = []
    for i, row in enumerate(table):
        row = list(row)
        if len(row) != n:
            raise GroupAxiomError(f"table is not square: row {i} has length {len(row)}, expected {n}", witness=i)
        for j, v in enumerate(row):
            if not isinstance(v, int) or isinstance(v, bool) or not 0 <= v < n:
                raise GroupAxiomError(f"entry mul({i},{j})={v!r} out of range 0..{n - 1}", witness=[i, j])
        rows.append(tuple(row))
    mul = tuple(rows)
    for a in range(n):
        if mul[0][a] != a or mul[a][0] != a:
            raise GroupAxiomError(f"0 is not an identity: fails at {a}", witness=a)
    inv = []
    for a in range(n):
        for b in range(n):
            if mul[a][b] == 0 and mul[b][a] == 0:
                inv.append(b)
                break
        else:
            raise GroupAxiomError(f"no inverse for {a}", witness=a)
    for a in range(n):
        ma = mul[a]
        for b in range(n):
            mab = mul[ma[b]]
            mb = mul[b]
            for c in range(n):
                if mab[c] != ma[mb[c]]:
                    raise GroupAxiomError(f"associativity fails at ({a},{b},{c})", witness=[a, b, c])
    if labels is not None:
        labels = tuple(str(s) for s in labels)
        if len(labels) != n:
            raise GroupAxiomError(f"{len(labels)} labels for {n} elements", witness=None)
    return FiniteGroup(mul, tuple(inv), labels, name)


def homomorphism_witness(source: FiniteGroup, target: FiniteGroup, fmap: Sequence[int]) -> tuple[int, int] | None:
    for a in range(source.order):
        fa = fmap[a]
        for b in range(source.order):
            if fmap[source.mul[a][b]] != target.mul[fa][fmap[b]]:
                return (a, b)
    return None


def validate_hom(source: FiniteGroup, target: FiniteGroup, fmap: Sequence[int]) -> GroupHom:
    fmap = tuple(int(v) for v in fmap)
    if len(fmap) != source.order:
        raise HomomorphismError(f"map has {len(fmap)} entries, source order is {source.order}")
    if any(not 0 <= v < target.order for v in fmap):
        raise HomomorphismError("map entry out of range of target")
    if fmap[0] != 0:
        raise HomomorphismError("identity not sent to identity", witness=0)
    w = homomorphism_witness(source, target, fmap)
    if w is not None:
        raise HomomorphismError(f"map is not multiplicative at {w}", witness=list(w))
    return GroupHom(source, target, fmap)


def make_subgroup(G: FiniteGroup, elements: Iterable[int]) -> Subgroup:
    els = tuple(sorted(set(int(x) for x in elements)))
    s = set(els)
    if 0 not in s:
        raise NotSubgroupError("subset does not contain the identity")
    for a in els:
        if G.inv[a] not in s:
            raise NotSubgroupError(f"not closed under inverse at {a}", witness=a)
        for b in els:
            if G.mul[a][b] not in s:
                raise NotSubgroupError(f"not closed under product at ({a},{b})", witness=[a, b])
    return Subgroup(G, els)


def generated_subgroup(G: FiniteGroup, gens: Iterable[int]) -> Subgroup:
    gens = list(gens)
    seen = {0}
    frontier = [0]
    while frontier:
        nxt = []
        for x in frontier:
            for s in gens:
                y = G.mul[x][s]
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
        frontier = nxt
    return Subgroup(G, tuple(sorted(seen)))


def validate_action(actor: FiniteGroup, space: FiniteGroup, act: Sequence[Sequence[int]]) -> GroupAction:
    act = tuple(tuple(int(v) for v in row) for row in act)
    if len(act) != actor.order or any(len(row) != space.order for row in act):
        raise ActionError("action table has wrong shape")
    for h, row in enumerate(act):
        if sorted(row) != list(range(space.order)):
            raise ActionError(f"act({h},-) is not a bijection", witness=h)
        w = homomorphism_witness(space, space, row)
        if w is not None:
            raise ActionError(f"act({h},-) is not multiplicative at {w}", witness=[h, *w])
    if act[0] != tuple(range(space.order)):
        raise ActionError("identity does not act trivially", witness=0)
    for h in range(actor.order):
        for h2 in range(actor.order):
            hh = actor.mul[h][h2]
            for g in range(space.order):
                if act[hh][g] != act[h][act[h2][g]]:
                    raise ActionError(f"action law fails at ({h},{h2},{g})", witness=[h, h2, g])
    return GroupAction(actor, space, act)


def trivial_action(actor: FiniteGroup, space: FiniteGroup) -> GroupAction:
    row = tuple(range(space.order))
    return GroupAction(actor, space, tuple(row for _ in range(actor.order)))


def conjugation_action(G: FiniteGroup) -> GroupAction:
    return GroupAction(G, G, tuple(tuple(G.conj(h, g) for g in range(G.order)) for h in range(G.order)))


def identity_hom(G: FiniteGroup) -> GroupHom:
    return GroupHom(G, G, tuple(range(G.order)))


def trivial_hom(source: FiniteGroup, target: FiniteGroup) -> GroupHom:
    return GroupHom(source, target, (0,) * source.order)


# ----------------------------------------------------------------- structure


def center(G: FiniteGroup) -> Subgroup:
    n = G.order
    return Subgroup(G, tuple(z for z in range(n) if all(G.mul[z][g] == G.mul[g][z] for g in range(n))))


def normality_witness(N: Subgroup) -> tuple[int, int] | None:
    """Least (g, n) with g n g^-1 outside N, or None if N is normal."""
    G = N.parent
    for g in range(G.order):
        for x in N.elements:
            if G.conj(g, x) not in N:
                return (g, x)
    return None


def quotient_group(G: FiniteGroup, N: Subgroup, name: str = "") -> Quotient:
    """G/N with cosets ordered by least representative; the section picks that representative."""
    if N.parent != G:
        raise NotSubgroupError("subgroup belongs to a different group")
    make_subgroup(G, N.elements)
    w = normality_witness(N)
    if w is not None:
        g, x = w
        raise NotNormalError(
            f"subgroup is not normal: {G.label(g)} {G.label(x)} {G.label(g)}^-1 = {G.label(G.conj(g, x))} lies outside",
            witness={"g": g, "n": x, "conjugate": G.conj(g, x)},
        )
    coset_of = [-1] * G.order
    section = []
    for x in range(G.order):
        if coset_of[x] < 0:
            k = len(section)
            section.append(x)
            for n in N.elements:
                coset_of[G.mul[x][n]] = k
    m = len(section)
    mul = tuple(tuple(coset_of[G.mul[a][b]] for b in section) for a in section)
    inv = tuple(coset_of[G.inv[a]] for a in section)
    labels = tuple(f"[{G.label(a)}]" for a in section) if G.labels else None
    Q = FiniteGroup(mul, inv, labels, name or (f"{G.name}/N" if G.name else ""))
    assert len(mul) == m
    return Quotient(Q, GroupHom(G, Q, tuple(coset_of)), tuple(section))


def direct_product(A: FiniteGroup, B: FiniteGroup, name: str = "") -> FiniteGroup:
    """Pairs (a, b) encoded as a*|B| + b."""
    nb = B.order
    els = [(a, b) for a in range(A.order) for b in range(nb)]
    mul = tuple(tuple(A.mul[a][c] * nb + B.mul[b][d] for (c, d) in els) for (a, b) in els)
    inv = tuple(A.inv[a] * nb + B.inv[b] for (a, b) in els)
    labels = tuple(f"({A.label(a)},{B.label(b)})" for a, b in els)
    return FiniteGroup(mul, inv, labels, name or f"{A.name}x{B.name}")


def semidirect_product(H: FiniteGroup, G: FiniteGroup, alpha: GroupAction, name: str = "") -> FiniteGroup:
    """H ⋉ G on pairs (h, g) encoded as h*|G| + g, with

        (h, g)(h', g') = (h h', alpha(h'^-1)(g) g')

    so that (h, g) -> h is a homomorphism.
    """
    if alpha.actor != H or alpha.space != G:
        raise ActionError("action does not match the factors")
    validate_action(H, G, alpha.act)
    ng = G.order
    els = [(h, g) for h in range(H.order) for g in range(ng)]
    act = alpha.act
    mul = tuple(
        tuple(H.mul[h][h2] * ng + G.mul[act[H.inv[h2]][g]][g2] for (h2, g2) in els) for (h, g) in els
    )
    # (h, g)^-1 = (h^-1, alpha(h)(g^-1))
    inv = tuple(H.inv[h] * ng + act[h][G.inv[g]] for (h, g) in els)
    labels = tuple(f"({H.label(h)},{G.label(g)})" for h, g in els)
    return FiniteGroup(mul, inv, labels, name or f"{H.name}x|{G.name}")


# ------------------------------------------------------------- automorphisms


def generating_set(G: FiniteGroup) -> list[int]:
    """Greedy small generating set: repeatedly add the element that enlarges the span most."""
    gens: list[int] = []
    span = generated_subgroup(G, gens)
    while len(span) < G.order:
        best, best_size = None, -1
        for x in range(G.order):
            if x in span:
                continue
            size = len(generated_subgroup(G, gens + [x]))
            if size > best_size:
                best, best_size = x, size
        gens.append(best)
        span = generated_subgroup(G, gens)
    return gens


def _extend_to_hom(G: FiniteGroup, gens: Sequence[int], images: Sequence[int], T: FiniteGroup) -> tuple[int, ...] | None:
    fmap = [-1] * G.order
    fmap[0] = 0
    queue = [0]
    for x in queue:
        fx = fmap[x]
        for s, img in zip(gens, images):
            y = G.mul[x][s]
            val = T.mul[fx][img]
            if fmap[y] < 0:
                fmap[y] = val
                queue.append(y)
            elif fmap[y] != val:
                return None
    return tuple(fmap)


def _hom_candidates(G: FiniteGroup, T: FiniteGroup, bijective: bool):
    gens = generating_set(G)
    choices = [[y for y in range(T.order) if T.orders[y] == G.orders[s]] for s in gens]
    for images in itertools.product(*choices):
        fmap = _extend_to_hom(G, gens, images, T)
        if fmap is None:
            continue
        if bijective and len(set(fmap)) != T.order:
            continue
        yield fmap


def enumerate_automorphisms(G: FiniteGroup, max_order: int = DEFAULT_MAX_ORDER) -> AutGroupData:
    if G.order > max_order:
        raise BudgetExceeded(f"group order {G.order} exceeds automorphism cap {max_order}", witness=G.order)
    autos = sorted(set(_hom_candidates(G, G, bijective=True)))
    index = {p: i for i, p in enumerate(autos)}
    mul = tuple(tuple(index[tuple(a[b[x]] for x in range(G.order))] for b in autos) for a in autos)
    inv_perm = []
    for a in autos:
        ia = [0] * G.order
        for x, y in enumerate(a):
            ia[y] = x
        inv_perm.append(index[tuple(ia)])
    labels = tuple("[" + ",".join(map(str, p)) + "]" for p in autos)
    A = FiniteGroup(mul, tuple(inv_perm), labels, f"Aut({G.name})" if G.name else "Aut")
    ad = GroupHom(G, A, tuple(index[tuple(G.conj(g, x) for x in range(G.order))] for g in range(G.order)))
    inner = ad.image
    q = quotient_group(A, inner)
    return AutGroupData(G, tuple(autos), A, inner, q.section, ad)


def find_group_isomorphism(A: FiniteGroup, B: FiniteGroup) -> GroupHom | None:
    if A.order != B.order or sorted(A.orders) != sorted(B.orders):
        return None
    for fmap in _hom_candidates(A, B, bijective=True):
        return GroupHom(A, B, fmap)
    return None


# ------------------------------------------------------------------ fixtures


def cyclic_group(n: int) -> FiniteGroup:
    mul = tuple(tuple((a + b) % n for b in range(n)) for a in range(n))
    return FiniteGroup(mul, tuple((-a) % n for a in range(n)), tuple(str(a) for a in range(n)), f"Z{n}")


def _cycle_label(p: Sequence[int]) -> str:
    seen, parts = set(), []
    for i in range(len(p)):
        if i in seen or p[i] == i:
            continue
        cyc, j = [], i
        while j not in seen:
            seen.add(j)
            cyc.append(str(j + 1))
            j = p[j]
        parts.append("(" + "".join(cyc) + ")")
    return "".join(parts) or "e"


def symmetric_group(n: int) -> FiniteGroup:
    """S_n on lexicographically ordered permutations; product p*q applies q first."""
    perms = list(itertools.permutations(range(n)))
    index = {p: i for i, p in enumerate(perms)}
    mul = tuple(tuple(index[tuple(p[q[i]] for i in range(n))] for q in perms) for p in perms)
    inv = []
    for p in perms:
        ip = [0] * n
        for i, v in enumerate(p):
            ip[v] = i
        inv.append(index[tuple(ip)])
    return FiniteGroup(mul, tuple(inv), tuple(_cycle_label(p) for p in perms), f"S{n}")


def dihedral_group(n: int) -> FiniteGroup:
    """Symmetries of the n-gon, order 2n: r^a s^b at index a + n*b."""
    els = [(a, b) for b in range(2) for a in range(n)]
    index = {e: i for i, e in enumerate(els)}

    def prod(x, y):
        (a, b), (c, d) = x, y
        return ((a + (c if b == 0 else -c)) % n, (b + d) % 2)

    mul = tuple(tuple(index[prod(x, y)] for y in els) for x in els)
    inv = tuple(next(j for j, y in enumerate(els) if prod(x, y) == (0, 0)) for x in els)
    labels = tuple(("r%d" % a if a else "e") if b == 0 else ("r%ds" % a if a else "s") for a, b in els)
    return FiniteGroup(mul, inv, labels, f"D{n}")


def trivial_group() -> FiniteGroup:
    return FiniteGroup(((0,),), (0,), ("e",), "1")


def builtin_groups() -> dict[str, FiniteGroup]:
    z2 = cyclic_group(2)
    v = direct_product(z2, z2, "Z2xZ2")
    return {
        "Z2": z2,
        "Z3": cyclic_group(3),
        "Z4": cyclic_group(4),
        "Z2xZ2": v,
        "S3": symmetric_group(3),
        "D4": dihedral_group(4),
    }


# ----------------------------------------------------------------- documents


def group_to_doc(G: FiniteGroup) -> dict:
    doc = {"order": G.order, "mul": [list(r) for r in G.mul]}
    if G.labels:
        doc["labels"] = list(G.labels)
    return doc


def group_from_doc(doc: dict, name: str = "") -> FiniteGroup:
    if not isinstance(doc, dict) or "mul" not in doc:
        raise ValidationError("group document needs a 'mul' table")
    G = validate_group(doc["mul"], doc.get("labels"), name)
    if "order" in doc and doc["order"] != G.order:
        raise GroupAxiomError(f"declared order {doc['order']} but table has {G.order} rows")
    return G
