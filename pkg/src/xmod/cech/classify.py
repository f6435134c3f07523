"""Gauge classes of bibundle cocycles on a fixed nerve and the exact sequence

    1 -> H^1(M, G1) -> pi0 Bibun(M) -> Map(M, pi0) -> H^2(M, G1)
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property

from ..crossed import CrossedModule
from ..errors import BudgetExceeded
from .abelian import abelian_cech_cohomology, enumerate_tree_normalized_cocycles
from .cocycle import (BibundleCocycle, canonical_form, dual_cocycle, iota, kernel_complex, tensor_cocycle,
                      type_map)
from .nerve import Nerve, enumerate_edge_labelings
from .obstruction import lifting_obstruction

DEFAULT_MAX_ENUM = 10 ** 7


def enumeration_size(nerve: Nerve, xm: CrossedModule) -> int:
    return xm.G.order ** len(nerve.loop_edges) * xm.pi0.order ** nerve.n_components


@dataclass(frozen=True, eq=False)
class Pi0Catalog:
    nerve: Nerve
    xm: CrossedModule
    classes: tuple[BibundleCocycle, ...]  # canonical representatives, trivial class first
    table: tuple[tuple[int, ...], ...]  # tensor product of classes
    inverse: tuple[int, ...]  # class of the dual

    @cached_property
    def _lookup(self) -> dict:
        return {c.key: n for n, c in enumerate(self.classes)}

    @property
    def order(self) -> int:
        return len(self.classes)

    def index_of(self, c: BibundleCocycle) -> int:
        return self._lookup[canonical_form(c).key]

    def types(self) -> tuple[tuple[int, ...], ...]:
        return tuple(type_map(c).values for c in self.classes)


def _check_group(table, inverse) -> None:
    n = len(table)
    for a in range(n):
        assert table[0][a] == a and table[a][0] == a, "trivial class is not the identity"
        assert table[a][inverse[a]] == 0 == table[inverse[a]][a], f"dual of class {a} is not its inverse"
    for a, b, c in itertools.product(range(n), repeat=3):
        assert table[table[a][b]][c] == table[a][table[b][c]], f"tensor is not associative on {(a, b, c)}"


def enumerate_pi0(nerve: Nerve, xm: CrossedModule, max_enum: int = DEFAULT_MAX_ENUM) -> Pi0Catalog:
    """All gauge classes with their tensor table.

    Every class has a representative with g = 1 on the spanning forest; such
    a cocycle has h constant on each component and t(g) = 1 on loop edges, so
    only those labelings are visited.
    """
    size = enumeration_size(nerve, xm)
    if size > max_enum:
        raise BudgetExceeded(f"enumeration needs {size} states, budget is {max_enum}",
                             witness={"states": size, "max_enum": max_enum})
    G, t = xm.G, xm.t.map
    section = xm.pi0_quotient.section
    comp = nerve.component_of
    labelings = list(enumerate_edge_labelings(nerve, G.order, lambda a, b, c: G.mul[a][b] == c,
                                              lambda e, v: t[v] == 0))
    found: dict = {}
    for roots in itertools.product(section, repeat=nerve.n_components):
        h = tuple(roots[comp[v]] for v in nerve.vertices)
        for g in labelings:
            c = canonical_form(BibundleCocycle(nerve, xm, g, h).check())
            found.setdefault(c.key, c)
    classes = tuple(found[k] for k in sorted(found))
    assert classes[0].key == ((0,) * len(nerve.edges), (0,) * nerve.n_vertices)
    lookup = {c.key: n for n, c in enumerate(classes)}
    table = tuple(tuple(lookup[canonical_form(tensor_cocycle(a, b)).key] for b in classes) for a in classes)
    inverse = tuple(lookup[canonical_form(dual_cocycle(a)).key] for a in classes)
    _check_group(table, inverse)
    return Pi0Catalog(nerve, xm, classes, table, inverse)


def vertexwise_tau(nerve: Nerve, xm: CrossedModule, phi) -> tuple[int, ...]:
    """tau_ij = lift_i^-1 lift_j for the least lift of phi at every vertex."""
    H = xm.H
    section = xm.pi0_quotient.section
    lift = [section[phi[c]] for c in nerve.component_of]
    return tuple(H.mul[H.inv[lift[i]]][lift[j]] for i, j in nerve.edges)


@dataclass
class ExactSequenceReport:
    nerve: str
    xm: str
    h1_order: int
    h1_invariants: tuple[int, ...]
    pi0_order: int
    map_order: int
    ker_eps_order: int
    iota_injective: bool
    ker_type_is_im_iota: bool
    im_type_is_ker_eps: bool
    iota_homomorphism: bool
    eps_homomorphism: bool
    cardinality_identity: bool
    witnesses: list

    @property
    def exact(self) -> bool:
        return (self.iota_injective and self.ker_type_is_im_iota and self.im_type_is_ker_eps
                and self.cardinality_identity)

    def to_dict(self) -> dict:
        return {
            "nerve": self.nerve,
            "xm": self.xm,
            "h1": {"order": self.h1_order, "invariant_factors": list(self.h1_invariants)},
            "pi0_bibun": self.pi0_order,
            "map": self.map_order,
            "ker_eps": self.ker_eps_order,
            "checks": {
                "iota_injective": self.iota_injective,
                "iota_homomorphism": self.iota_homomorphism,
                "ker_type_eq_im_iota": self.ker_type_is_im_iota,
                "im_type_eq_ker_eps": self.im_type_is_ker_eps,
                "cardinality": self.cardinality_identity,
            },
            "eps_homomorphism_observed": self.eps_homomorphism,
            "exact": self.exact,
            "witnesses": self.witnesses,
        }


def exact_sequence_report(nerve: Nerve, xm: CrossedModule, max_enum: int = DEFAULT_MAX_ENUM) -> ExactSequenceReport:
    cat = enumerate_pi0(nerve, xm, max_enum)
    witnesses: list = []

    # H^1(M, G1) and iota
    h1 = abelian_cech_cohomology(nerve, xm.G1_group[0], 1)
    cx = kernel_complex(nerve, xm)
    reps = enumerate_tree_normalized_cocycles(cx)
    assert len(reps) == h1.order, "H^1 enumeration disagrees with the Smith form"
    iota_idx = [cat.index_of(iota(nerve, r, xm)) for r in reps]
    injective = len(set(iota_idx)) == len(reps)
    if not injective:
        seen: dict = {}
        for r, n in zip(reps, iota_idx):
            if n in seen:
                witnesses.append({"iota_collision": [list(seen[n]), list(r)]})
                break
            seen[n] = r
    rep_index = {r: n for n, r in enumerate(reps)}
    hom_iota = True
    for a, b in itertools.product(range(len(reps)), repeat=2):
        ab = cx.add(reps[a], reps[b])
        # tree-normalized sums stay tree-normalized, so ab is itself a representative
        if cat.table[iota_idx[a]][iota_idx[b]] != iota_idx[rep_index[ab]]:
            hom_iota = False
            witnesses.append({"iota_not_homomorphic": [list(reps[a]), list(reps[b])]})
            break

    # Type and Map
    types = cat.types()
    trivial_type = (0,) * nerve.n_components
    ker_type = {n for n, ty in enumerate(types) if ty == trivial_type}
    ker_ok = ker_type == set(iota_idx)
    if not ker_ok:
        witnesses.append({"ker_type": sorted(ker_type), "im_iota": sorted(set(iota_idx))})
    maps = list(itertools.product(range(xm.pi0.order), repeat=nerve.n_components))

    # epsilon on each phi
    eps = {}
    for phi in maps:
        eps[phi] = lifting_obstruction(nerve, xm, vertexwise_tau(nerve, xm, phi)).cech_class
    ker_eps = {phi for phi in maps if eps[phi].is_zero}
    im_type = set(types)
    im_ok = im_type == ker_eps
    if not im_ok:
        witnesses.append({"im_type": sorted(map(list, im_type)), "ker_eps": sorted(map(list, ker_eps))})

    pi0 = xm.pi0
    h2 = abelian_cech_cohomology(nerve, xm.G1_group[0], 2)
    eps_hom = True
    for p, q in itertools.product(maps, repeat=2):
        pq = tuple(pi0.mul[a][b] for a, b in zip(p, q))
        c2 = h2.complex
        diff = c2.add(c2.add(eps[p].representative, eps[q].representative), c2.neg(eps[pq].representative))
        if h2.primitive(diff) is None:
            eps_hom = False
            witnesses.append({"eps_not_homomorphic": [list(p), list(q)]})
            break

    card = cat.order == h1.order * len(ker_eps)
    return ExactSequenceReport(nerve.name, xm.name, h1.order, h1.invariant_factors, cat.order, len(maps),
                               len(ker_eps), injective, ker_ok, im_ok, hom_iota, eps_hom, card, witnesses)
