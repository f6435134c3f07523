"""Crossed modules (H, G): t: G -> H and an action alpha of H on G."""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

from .errors import CrossedModuleAxiomError, HomomorphismError, MorphismError, ValidationError, ActionError
from .groups import (
    DEFAULT_MAX_ORDER,
    FiniteGroup,
    GroupAction,
    GroupHom,
    Quotient,
    Subgroup,
    builtin_groups,
    center,
    conjugation_action,
    cyclic_group,
    enumerate_automorphisms,
    find_group_isomorphism,
    generated_subgroup,
    identity_hom,
    quotient_group,
    semidirect_product,
    trivial_action,
    trivial_group,
    trivial_hom,
    validate_action,
    validate_hom,
)


@dataclass(frozen=True, eq=False)
class CrossedModule:
    G: FiniteGroup
    H: FiniteGroup
    t: GroupHom
    alpha: GroupAction
    name: str = ""

    def __repr__(self) -> str:
        return f"CrossedModule({self.name or '?'}: |H|={self.H.order}, |G|={self.G.order})"

    def __eq__(self, other) -> bool:
        if not isinstance(other, CrossedModule):
            return NotImplemented
        return (self.G, self.H, self.t.map, self.alpha.act) == (other.G, other.H, other.t.map, other.alpha.act)

    def __hash__(self) -> int:
        return hash((self.t.map, self.alpha.act))

    def act(self, h: int, g: int) -> int:
        return self.alpha.act[h][g]

    def tt(self, g: int) -> int:
        return self.t.map[g]

    @cached_property
    def G1(self) -> Subgroup:
        return self.t.kernel

    @property
    def pi1(self) -> Subgroup:
        return self.G1

    @cached_property
    def tG(self) -> Subgroup:
        return self.t.image

    @cached_property
    def pi0_quotient(self) -> Quotient:
        return quotient_group(self.H, self.tG, name=f"pi0({self.name})" if self.name else "")

    @property
    def pi0(self) -> FiniteGroup:
        return self.pi0_quotient.group

    def coset(self, h: int) -> int:
        """Class of h in H/t(G)."""
        return self.pi0_quotient.projection.map[h]

    @cached_property
    def t_section(self) -> tuple[int, ...]:
        """For every y in t(G) (as an H index) the least g with t(g) = y; -1 elsewhere."""
        sec = [-1] * self.H.order
        for g in range(self.G.order - 1, -1, -1):
            sec[self.t.map[g]] = g
        return tuple(sec)

    @cached_property
    def G1_group(self) -> tuple[FiniteGroup, GroupHom]:
        return self.G1.as_group(name=f"ker t ({self.name})" if self.name else "ker t")


@dataclass(frozen=True, eq=False)
class CrossedModuleMorphism:
    source: CrossedModule
    target: CrossedModule
    u: GroupHom  # H -> H'
    v: GroupHom  # G -> G'

    def compose(self, first: "CrossedModuleMorphism") -> "CrossedModuleMorphism":
        """self after first."""
        return validate_morphism(first.source, self.target, self.u.compose(first.u).map, self.v.compose(first.v).map)


@dataclass(frozen=True, eq=False)
class TwoGroupGroupoid:
    xm: CrossedModule
    objects: FiniteGroup
    morphisms: FiniteGroup
    src: tuple[int, ...]
    tgt: tuple[int, ...]

    def split(self, m: int) -> tuple[int, int]:
        return divmod(m, self.xm.G.order)

    def compose(self, m1: int, m2: int) -> int | None:
        """m1 followed by m2, or None if tgt(m1) != src(m2)."""
        if self.tgt[m1] != self.src[m2]:
            return None
        h, g = self.split(m1)
        _, g2 = self.split(m2)
        return h * self.xm.G.order + self.xm.G.mul[g][g2]

    def inverse(self, m: int) -> int:
        h, g = self.split(m)
        return self.tgt[m] * self.xm.G.order + self.xm.G.inv[g]

    @cached_property
    def components(self) -> list[list[int]]:
        parent = list(range(self.objects.order))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for m in range(self.morphisms.order):
            a, b = find(self.src[m]), find(self.tgt[m])
            if a != b:
                parent[max(a, b)] = min(a, b)
        comps: dict[int, list[int]] = {}
        for x in range(self.objects.order):
            comps.setdefault(find(x), []).append(x)
        return [comps[k] for k in sorted(comps)]

    def vertex_group(self, obj: int = 0) -> FiniteGroup:
        """Automorphisms of ``obj`` under composition, as a standalone group."""
        loops = [m for m in range(self.morphisms.order) if self.src[m] == obj and self.tgt[m] == obj]
        pos = {m: i for i, m in enumerate(loops)}
        mul = tuple(tuple(pos[self.compose(a, b)] for b in loops) for a in loops)
        inv = tuple(pos[self.inverse(a)] for a in loops)
        return FiniteGroup(mul, inv, None, f"Aut({obj})")


# ---------------------------------------------------------------- validation


def _axiom_witnesses(G: FiniteGroup, H: FiniteGroup, t: tuple[int, ...], act) -> tuple[str, tuple] | None:
    for h in range(H.order):
        hinv = H.inv[h]
        for g in range(G.order):
            if t[act[h][g]] != H.mul[H.mul[h][t[g]]][hinv]:
                return ("axiom 1", (h, g))
    for g in range(G.order):
        for k in range(G.order):
            if act[t[g]][k] != G.conj(g, k):
                return ("axiom 2", (g, k))
    return None


def validate_crossed_module(G: FiniteGroup, H: FiniteGroup, t, alpha, name: str = "") -> CrossedModule:
    """Validate both crossed-module axioms exhaustively.

    Raises :class:`CrossedModuleAxiomError` with the lexicographically least
    failing pair: (h, g) for t(alpha(h)(g)) = h t(g) h^-1, (g, k) for
    alpha(t(g))(k) = g k g^-1.
    """
    tmap = t.map if isinstance(t, GroupHom) else tuple(t)
    act = alpha.act if isinstance(alpha, GroupAction) else alpha
    try:
        th = validate_hom(G, H, tmap)
    except HomomorphismError as e:
        raise CrossedModuleAxiomError(f"t is not a homomorphism: {e}", witness=e.witness) from e
    try:
        al = validate_action(H, G, act)
    except ActionError as e:
        raise CrossedModuleAxiomError(f"alpha is not an action: {e}", witness=e.witness) from e
    bad = _axiom_witnesses(G, H, th.map, al.act)
    if bad is not None:
        which, w = bad
        if which == "axiom 1":
            msg = f"axiom 1 fails: t(alpha(h)(g)) != h t(g) h^-1 at (h,g)={w}"
            witness = {"axiom": 1, "h": w[0], "g": w[1]}
        else:
            msg = f"axiom 2 fails: alpha(t(g))(k) != g k g^-1 at (g,k)={w}"
            witness = {"axiom": 2, "g": w[0], "k": w[1]}
        raise CrossedModuleAxiomError(msg, witness=witness)
    xm = CrossedModule(G, H, th, al, name)
    # consequences, cheap enough to assert every time
    Z = center(G)
    assert all(z in Z for z in xm.G1), "ker t not central"
    xm.pi0_quotient  # raises if t(G) is not normal
    return xm


def validate_morphism(source: CrossedModule, target: CrossedModule, u, v) -> CrossedModuleMorphism:
    umap = u.map if isinstance(u, GroupHom) else tuple(u)
    vmap = v.map if isinstance(v, GroupHom) else tuple(v)
    try:
        uh = validate_hom(source.H, target.H, umap)
        vh = validate_hom(source.G, target.G, vmap)
    except HomomorphismError as e:
        raise MorphismError(f"component is not a homomorphism: {e}", witness=e.witness) from e
    for g in range(source.G.order):
        if uh.map[source.t.map[g]] != target.t.map[vh.map[g]]:
            raise MorphismError(f"square does not commute at g={g}", witness={"g": g})
    for h in range(source.H.order):
        for g in range(source.G.order):
            if vh.map[source.act(h, g)] != target.act(uh.map[h], vh.map[g]):
                raise MorphismError(f"equivariance fails at (h,g)=({h},{g})", witness={"h": h, "g": g})
    return CrossedModuleMorphism(source, target, uh, vh)


def identity_morphism(xm: CrossedModule) -> CrossedModuleMorphism:
    return CrossedModuleMorphism(xm, xm, identity_hom(xm.H), identity_hom(xm.G))


# -------------------------------------------------------------- constructions


def adjoint_module(G: FiniteGroup, max_order: int = DEFAULT_MAX_ORDER, name: str = "") -> CrossedModule:
    """G -> Aut(G) by conjugation, Aut(G) acting by evaluation."""
    aut = enumerate_automorphisms(G, max_order)
    A = aut.group
    act = tuple(tuple(p) for p in aut.autos)
    return validate_crossed_module(G, A, aut.ad.map, act, name or (f"Ad({G.name})" if G.name else "Ad"))


def identity_module(G: FiniteGroup, name: str = "") -> CrossedModule:
    """(G, G, id, Ad)."""
    return validate_crossed_module(G, G, identity_hom(G), conjugation_action(G), name or f"D1{G.name}")


def jandl_module(n: int) -> CrossedModule:
    """J_n: Z2 acting on Z_n by inversion, t trivial."""
    G, H = cyclic_group(n), cyclic_group(2)
    act = (tuple(range(n)), tuple((-g) % n for g in range(n)))
    return validate_crossed_module(G, H, (0,) * n, act, f"J{n}")


def v4_module() -> CrossedModule:
    """Z4 -> Z2 reduction mod 2 with trivial action."""
    G, H = cyclic_group(4), cyclic_group(2)
    return validate_crossed_module(G, H, tuple(g % 2 for g in range(4)), trivial_action(H, G).act, "V4")


def abelian_module(A: FiniteGroup, name: str = "") -> CrossedModule:
    """(1, A) with trivial t and action: valid exactly when A is abelian."""
    one = trivial_group()
    return validate_crossed_module(A, one, (0,) * A.order, (tuple(range(A.order)),), name)


def kernel_submodule(xm: CrossedModule) -> tuple[CrossedModule, CrossedModuleMorphism]:
    """The crossed submodule (1, G1) and its inclusion into (H, G)."""
    G1, incl = xm.G1_group
    one = trivial_group()
    sub = validate_crossed_module(G1, one, trivial_hom(G1, one), trivial_action(one, G1), f"(1,G1)[{xm.name}]")
    return sub, validate_morphism(sub, xm, (0,), incl.map)


def image_module(xm: CrossedModule) -> tuple[CrossedModule, CrossedModuleMorphism]:
    """(H, t(G)) with inclusion and conjugation, and the morphism (id, t): (H, G) -> (H, t(G))."""
    tG, incl = xm.tG.as_group(name=f"t(G)[{xm.name}]")
    H = xm.H
    pos = xm.tG.index_of
    act = tuple(tuple(pos[H.conj(h, y)] for y in xm.tG.elements) for h in range(H.order))
    target = validate_crossed_module(tG, H, incl.map, act, f"(H,t(G))[{xm.name}]")
    v = tuple(pos[xm.t.map[g]] for g in range(xm.G.order))
    return target, validate_morphism(xm, target, tuple(range(H.order)), v)


def two_group(xm: CrossedModule) -> TwoGroupGroupoid:
    """Groupoid with objects H and morphisms H ⋉ G; (h, g): h -> h t(g)."""
    M = semidirect_product(xm.H, xm.G, xm.alpha, name=f"{xm.H.name}x|{xm.G.name}")
    ng = xm.G.order
    src = tuple(m // ng for m in range(M.order))
    tgt = tuple(xm.H.mul[m // ng][xm.t.map[m % ng]] for m in range(M.order))
    gpd = TwoGroupGroupoid(xm, xm.H, M, src, tgt)
    if len(gpd.components) != xm.pi0.order:
        raise ValidationError("component count differs from |H/t(G)|")
    pi1, _ = xm.G1.as_group()
    if find_group_isomorphism(gpd.vertex_group(0), pi1) is None:
        raise ValidationError("vertex group is not isomorphic to ker t")
    return gpd


def builtin_crossed_modules(max_order: int = DEFAULT_MAX_ORDER) -> dict[str, CrossedModule]:
    groups = builtin_groups()
    return {
        "J2": jandl_module(2),
        "J3": jandl_module(3),
        "J4": jandl_module(4),
        "V4": v4_module(),
        "AdS3": adjoint_module(groups["S3"], max_order, "AdS3"),
        "D1Z4": identity_module(groups["Z4"], "D1Z4"),
        "D1S3": identity_module(groups["S3"], "D1S3"),
    }


# ----------------------------------------------------------------- documents


def crossed_module_to_doc(xm: CrossedModule, group_name=None) -> dict:
    from .groups import group_to_doc

    def gdoc(G):
        if group_name is not None:
            n = group_name(G)
            if n is not None:
                return n
        return group_to_doc(G)

    return {"G": gdoc(xm.G), "H": gdoc(xm.H), "t": list(xm.t.map), "alpha": [list(r) for r in xm.alpha.act]}


def crossed_module_from_doc(doc: dict, resolve_group, resolve_xm=None, name: str = "",
                            max_order: int = DEFAULT_MAX_ORDER) -> CrossedModule:
    """Build from a document; ``resolve_group`` maps a name or inline doc to a group."""
    if isinstance(doc, str):
        if resolve_xm is None:
            raise ValidationError(f"unresolved crossed module {doc!r}")
        return resolve_xm(doc)
    if "adjoint" in doc:
        return adjoint_module(resolve_group(doc["adjoint"]), max_order, name)
    missing = [k for k in ("G", "H", "t", "alpha") if k not in doc]
    if missing:
        raise ValidationError(f"crossed module document missing {missing}")
    return validate_crossed_module(resolve_group(doc["G"]), resolve_group(doc["H"]), doc["t"], doc["alpha"], name)
