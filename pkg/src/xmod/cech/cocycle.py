"""Cech models of (H, G) bibundles: edge labels g_ij in G, vertex labels h_i in H.

Conventions (ascending vertex order throughout):

* triangle condition   g_ij g_jk = g_ik
* edge condition       h_j = h_i t(g_ij)
* gauge k acts by      g_ij -> k_i^-1 g_ij k_j,   h_i -> h_i t(k_i)
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import NamedTuple, Sequence

from ..crossed import CrossedModule
from ..errors import CocycleError, MismatchError, ValidationError
from .abelian import AbelianCochainComplex, cochain_complex
from .nerve import Nerve


@dataclass(frozen=True, eq=False)
class BibundleCocycle:
    nerve: Nerve
    xm: CrossedModule
    g: tuple[int, ...]
    h: tuple[int, ...]

    def __eq__(self, other) -> bool:
        if not isinstance(other, BibundleCocycle):
            return NotImplemented
        return self.nerve == other.nerve and self.xm == other.xm and self.g == other.g and self.h == other.h

    def __hash__(self) -> int:
        return hash((self.g, self.h))

    def __repr__(self) -> str:
        return f"BibundleCocycle({self.xm.name}/{self.nerve.name}: g={list(self.g)}, h={list(self.h)})"

    def edge(self, i: int, j: int) -> int:
        """g_ij for either orientation (g_ji = g_ij^-1)."""
        if i < j:
            return self.g[self.nerve.edge_index[(i, j)]]
        return self.xm.G.inv[self.g[self.nerve.edge_index[(j, i)]]]

    @property
    def key(self) -> tuple[tuple[int, ...], tuple[int, ...]]:
        return (self.g, self.h)

    def check(self) -> "BibundleCocycle":
        failure = cocycle_failure(self.nerve, self.xm, self.g, self.h)
        if failure is not None:
            raise CocycleError(failure[0], witness=failure[1])
        return self


@dataclass(frozen=True)
class Gauge:
    nerve: Nerve
    k: tuple[int, ...]


class TypeAssignment(NamedTuple):
    xm: CrossedModule
    values: tuple[int, ...]  # component -> pi0 element
    lift: tuple[int, ...] | None = None  # component -> H, when known


def cocycle_failure(nerve: Nerve, xm: CrossedModule, g: Sequence[int], h: Sequence[int]):
    G, H, t = xm.G, xm.H, xm.t.map
    if len(g) != len(nerve.edges) or len(h) != nerve.n_vertices:
        return ("cocycle tables have the wrong length", None)
    if any(not 0 <= v < G.order for v in g) or any(not 0 <= v < H.order for v in h):
        return ("label out of range", None)
    eidx = nerve.edge_index
    for i, j, k in nerve.triangles:
        a, b, c = g[eidx[(i, j)]], g[eidx[(j, k)]], g[eidx[(i, k)]]
        if G.mul[a][b] != c:
            return (f"triangle condition fails on {[i, j, k]}: g_ij g_jk != g_ik",
                    {"triangle": [i, j, k], "g_ij": a, "g_jk": b, "g_ik": c})
    for e, (i, j) in enumerate(nerve.edges):
        if h[j] != H.mul[h[i]][t[g[e]]]:
            return (f"edge condition fails on {[i, j]}: h_j != h_i t(g_ij)",
                    {"edge": [i, j], "h_i": h[i], "h_j": h[j], "g_ij": g[e]})
    return None


def validate_cocycle(nerve: Nerve, xm: CrossedModule, g: Sequence[int], h: Sequence[int]) -> BibundleCocycle:
    return BibundleCocycle(nerve, xm, tuple(int(v) for v in g), tuple(int(v) for v in h)).check()


def trivial_cocycle(nerve: Nerve, xm: CrossedModule) -> BibundleCocycle:
    return BibundleCocycle(nerve, xm, (0,) * len(nerve.edges), (0,) * nerve.n_vertices)


def _same_base(c1: BibundleCocycle, c2: BibundleCocycle) -> None:
    if c1.nerve != c2.nerve or c1.xm != c2.xm:
        raise MismatchError("cocycles live on different nerves or crossed modules")


# ---------------------------------------------------------------- type / gauge


def type_map(c: BibundleCocycle) -> TypeAssignment:
    xm, nerve = c.xm, c.nerve
    values = [xm.coset(c.h[r]) for r in nerve.roots]
    for v in nerve.vertices:
        assert xm.coset(c.h[v]) == values[nerve.component_of[v]], "type is not locally constant"
    return TypeAssignment(xm, tuple(values))


def apply_gauge(c: BibundleCocycle, k: Gauge | Sequence[int]) -> BibundleCocycle:
    k = k.k if isinstance(k, Gauge) else tuple(k)
    G, H, t = c.xm.G, c.xm.H, c.xm.t.map
    if len(k) != c.nerve.n_vertices or any(not 0 <= v < G.order for v in k):
        raise ValidationError("gauge has the wrong length or an entry out of range")
    g = tuple(G.mul[G.mul[G.inv[k[i]]][c.g[e]]][k[j]] for e, (i, j) in enumerate(c.nerve.edges))
    h = tuple(H.mul[c.h[i]][t[k[i]]] for i in c.nerve.vertices)
    return BibundleCocycle(c.nerve, c.xm, g, h).check()


def inverse_gauge(k: Gauge, xm: CrossedModule) -> Gauge:
    return Gauge(k.nerve, tuple(xm.G.inv[v] for v in k.k))


def _propagate(nerve: Nerve, G, roots_k: Sequence[int], g1: Sequence[int], g2: Sequence[int]) -> list[int]:
    """Gauge values along the spanning forest forcing g1 -> g2 on tree edges."""
    k = [0] * nerve.n_vertices
    for r, kr in zip(nerve.roots, roots_k):
        k[r] = kr
    for p, v, e in nerve.tree_steps:
        if p < v:  # g2_pv = k_p^-1 g1_pv k_v
            k[v] = G.mul[G.mul[G.inv[g1[e]]][k[p]]][g2[e]]
        else:  # g2_vp = k_v^-1 g1_vp k_p
            k[v] = G.mul[G.mul[g1[e]][k[p]]][G.inv[g2[e]]]
    return k


def equivalent(c1: BibundleCocycle, c2: BibundleCocycle) -> Gauge | None:
    """A gauge k with apply_gauge(c1, k) == c2, or None.

    Once the root value of k is fixed in a component, the tree edges force
    the rest, so the search is |G| candidates per component.
    """
    _same_base(c1, c2)
    if type_map(c1).values != type_map(c2).values:
        return None
    nerve, xm = c1.nerve, c1.xm
    G, H, t = xm.G, xm.H, xm.t.map
    comp = nerve.component_of
    edges_of = [[] for _ in range(nerve.n_components)]
    for e, (i, _) in enumerate(nerve.edges):
        edges_of[comp[i]].append(e)
    chosen = [None] * nerve.n_components
    for ci, members in enumerate(nerve.components):
        for kr in range(G.order):
            roots_k = [0] * nerve.n_components
            roots_k[ci] = kr
            k = _propagate(nerve, G, roots_k, c1.g, c2.g)
            ok = all(H.mul[c1.h[v]][t[k[v]]] == c2.h[v] for v in members) and all(
                G.mul[G.mul[G.inv[k[i]]][c1.g[e]]][k[j]] == c2.g[e]
                for e in edges_of[ci] for i, j in [nerve.edges[e]])
            if ok:
                chosen[ci] = kr
                break
        else:
            return None
    k = _propagate(nerve, G, chosen, c1.g, c2.g)
    gauge = Gauge(nerve, tuple(k))
    assert apply_gauge(c1, gauge) == c2
    return gauge


def is_trivial(c: BibundleCocycle) -> Gauge | None:
    """A gauge taking c to g = 1, h = 1 (a central section), or None."""
    return equivalent(c, trivial_cocycle(c.nerve, c.xm))


def canonical_form(c: BibundleCocycle) -> BibundleCocycle:
    """Lexicographically least (g, h) among gauges that make g trivial on the spanning forest.

    Two cocycles are equivalent exactly when their canonical forms agree.
    """
    nerve, G = c.nerve, c.xm.G
    ident = (0,) * len(nerve.edges)
    # components are independent, so minimize each one separately
    per_comp = []
    for ci in range(nerve.n_components):
        cands = []
        for kr in range(G.order):
            roots_k = [0] * nerve.n_components
            roots_k[ci] = kr
            k = _propagate(nerve, G, roots_k, c.g, ident)
            cands.append(k)
        per_comp.append(cands)
    comp = nerve.component_of
    choice = []
    for ci in range(nerve.n_components):
        best, best_key = None, None
        for k in per_comp[ci]:
            d = apply_gauge(c, k)
            key = (tuple(v for e, v in enumerate(d.g) if comp[nerve.edges[e][0]] == ci),
                   tuple(v for i, v in enumerate(d.h) if comp[i] == ci))
            if best_key is None or key < best_key:
                best, best_key = k, key
        choice.append(best)
    k = [choice[comp[v]][v] for v in nerve.vertices]
    return apply_gauge(c, k)


# ------------------------------------------------------------- tensor / dual


def tensor_cocycle(c1: BibundleCocycle, c2: BibundleCocycle) -> BibundleCocycle:
    """Fibrewise product: h''_i = h_i h'_i and g''_ij = g'_ij alpha((h'_i t(g'_ij))^-1)(g_ij)."""
    _same_base(c1, c2)
    xm = c1.xm
    G, H, t, act = xm.G, xm.H, xm.t.map, xm.alpha.act
    h = tuple(H.mul[a][b] for a, b in zip(c1.h, c2.h))
    g = []
    for e, (i, _) in enumerate(c1.nerve.edges):
        gp = c2.g[e]
        twist = H.inv[H.mul[c2.h[i]][t[gp]]]
        g.append(G.mul[gp][act[twist][c1.g[e]]])
    return BibundleCocycle(c1.nerve, xm, tuple(g), h).check()


def dual_cocycle(c: BibundleCocycle) -> BibundleCocycle:
    """h*_i = h_i^-1, g*_ij = alpha(h_i)(g_ij^-1)."""
    xm = c.xm
    G, H, act = xm.G, xm.H, xm.alpha.act
    g = tuple(act[c.h[i]][G.inv[c.g[e]]] for e, (i, _) in enumerate(c.nerve.edges))
    return BibundleCocycle(c.nerve, xm, g, tuple(H.inv[v] for v in c.h)).check()


# ------------------------------------------------------- G1 reductions / lifts


def kernel_complex(nerve: Nerve, xm: CrossedModule) -> AbelianCochainComplex:
    """Cochains with coefficients in G1 = ker t (indices of the materialized G1 group)."""
    return cochain_complex(nerve, xm.G1_group[0])


def iota(nerve: Nerve, r: Sequence[int], xm: CrossedModule) -> BibundleCocycle:
    """Extension of a G1 bundle: g_ij = r_ij (in G), h_i = 1.

    ``r`` holds indices into the materialized G1 group.
    """
    G1, incl = xm.G1_group
    r = tuple(int(v) for v in r)
    if len(r) != len(nerve.edges) or any(not 0 <= v < G1.order for v in r):
        raise CocycleError("G1-cochain has the wrong length or an entry out of range")
    cx = kernel_complex(nerve, xm)
    if not cx.is_cocycle(1, r):
        bad = next(i for i, v in enumerate(cx.coboundary(1, r)) if v != 0)
        raise CocycleError(f"r is not a cocycle on triangle {list(nerve.triangles[bad])}",
                           witness={"triangle": list(nerve.triangles[bad])})
    return BibundleCocycle(nerve, xm, tuple(incl.map[v] for v in r), (0,) * nerve.n_vertices).check()


def standard_cocycle(nerve: Nerve, xm: CrossedModule, lift: Sequence[int]) -> BibundleCocycle:
    """T(lift): g = 1 and h_i = lift[component(i)]."""
    lift = tuple(int(v) for v in lift)
    if len(lift) != nerve.n_components or any(not 0 <= v < xm.H.order for v in lift):
        raise ValidationError("lift needs one H element per component")
    h = tuple(lift[nerve.component_of[v]] for v in nerve.vertices)
    return BibundleCocycle(nerve, xm, (0,) * len(nerve.edges), h).check()


def twist_by_lift(c: BibundleCocycle, lift: Sequence[int]) -> BibundleCocycle:
    return tensor_cocycle(c, standard_cocycle(c.nerve, c.xm, lift))


class Factorization(NamedTuple):
    r: tuple[int, ...]  # G1-cocycle (G1 group indices)
    gauge: Gauge  # apply_gauge(c, gauge) == twist_by_lift(iota(r), lift)
    untwisted: BibundleCocycle


def factor_through_lift(c: BibundleCocycle, lift: Sequence[int]) -> Factorization:
    """Write c as iota(r) twisted by T(lift), with a certifying gauge."""
    xm, nerve = c.xm, c.nerve
    lift = tuple(int(v) for v in lift)
    want = tuple(xm.coset(v) for v in lift)
    have = type_map(c).values
    if have != want:
        raise ValidationError("type of the cocycle does not match the lift", witness={"type": list(have),
                                                                                       "lift": list(want)})
    G, H = xm.G, xm.H
    untwisted = tensor_cocycle(c, dual_cocycle(standard_cocycle(nerve, xm, lift)))
    # h now lies in t(G); a central section needs t(k_i) = h_i^-1
    k = tuple(xm.t_section[H.inv[v]] for v in untwisted.h)
    assert all(v >= 0 for v in k)
    central = apply_gauge(untwisted, k)
    assert all(v == 0 for v in central.h)
    pos = xm.G1.index_of
    r = tuple(pos[v] for v in central.g)
    target = twist_by_lift(iota(nerve, r, xm), lift)
    gauge = equivalent(c, target)
    if gauge is None:
        raise AssertionError("factorization could not be certified")
    return Factorization(r, gauge, untwisted)


# ------------------------------------------------------------ h structures


class Structures(NamedTuple):
    solutions: list[tuple[int, ...]]
    witness: dict | None  # failing cycle when there are no solutions


def bibundle_structures(nerve: Nerve, g: Sequence[int], xm: CrossedModule) -> Structures:
    """Every h making (g, h) a bibundle cocycle: |H|^components of them, or none."""
    G, H, t = xm.G, xm.H, xm.t.map
    g = tuple(int(v) for v in g)
    eidx = nerve.edge_index
    for i, j, k in nerve.triangles:
        if G.mul[g[eidx[(i, j)]]][g[eidx[(j, k)]]] != g[eidx[(i, k)]]:
            raise CocycleError(f"g fails the triangle condition on {[i, j, k]}", witness={"triangle": [i, j, k]})
    # propagate from h_root = 1: h_v = t(holonomy along tree path)
    base = [0] * nerve.n_vertices
    for p, v, e in nerve.tree_steps:
        step = t[g[e]] if p < v else H.inv[t[g[e]]]
        base[v] = H.mul[base[p]][step]
    for e, (i, j) in enumerate(nerve.edges):
        if base[j] != H.mul[base[i]][t[g[e]]]:
            # root value multiplies on the left, so it cannot repair this
            cycle = [s[0] for s in nerve.tree_path(i)] + [i, j] + [s[0] for s in reversed(nerve.tree_path(j))]
            hol = H.mul[H.mul[base[i]][t[g[e]]]][H.inv[base[j]]]
            return Structures([], {"edge": [i, j], "cycle": cycle, "t_holonomy": hol})
    sols = []
    for roots in itertools.product(range(H.order), repeat=nerve.n_components):
        sols.append(tuple(H.mul[roots[nerve.component_of[v]]][base[v]] for v in nerve.vertices))
    for h in sols:
        assert cocycle_failure(nerve, xm, g, h) is None
    return Structures(sols, None)


# ---------------------------------------------------------------- documents


def cocycle_to_doc(c: BibundleCocycle, nerve_name: str | None = None, xm_name: str | None = None) -> dict:
    return {
        "nerve": nerve_name or c.nerve.name,
        "xm": xm_name or c.xm.name,
        "g": {f"[{i},{j}]": v for (i, j), v in zip(c.nerve.edges, c.g)},
        "h": list(c.h),
    }


def cocycle_from_doc(doc: dict, resolve_nerve, resolve_xm) -> BibundleCocycle:
    nerve = resolve_nerve(doc["nerve"])
    xm = resolve_xm(doc["xm"])
    g = [0] * len(nerve.edges)
    gdoc = doc.get("g", {})
    for key, v in gdoc.items():
        i, j = (int(s) for s in key.strip("[] ").split(","))
        if i > j:
            i, j, v = j, i, xm.G.inv[int(v)]
        if (i, j) not in nerve.edge_index:
            raise CocycleError(f"edge {key} is not in the nerve", witness=key)
        g[nerve.edge_index[(i, j)]] = int(v)
    missing = [list(e) for e in nerve.edges if f"[{e[0]},{e[1]}]" not in gdoc and f"[{e[1]},{e[0]}]" not in gdoc]
    if missing:
        raise CocycleError(f"edges without a label: {missing}", witness=missing)
    return validate_cocycle(nerve, xm, g, doc["h"])
