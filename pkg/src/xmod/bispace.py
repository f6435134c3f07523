"""(H, G) bispaces: finite right G-torsors X with an equivariant map psi: X -> H.

Points are opaque integers 0..n-1.  Constructions that quotient a product
(tensor, extension) enumerate orbits literally and number them by their
least representative pair, so results are deterministic.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import NamedTuple, Sequence

from .crossed import CrossedModule, CrossedModuleMorphism, adjoint_module, kernel_submodule
from .errors import BispaceError, MismatchError
from .groups import DEFAULT_MAX_ORDER, FiniteGroup, find_group_isomorphism


@dataclass(frozen=True, eq=False)
class Bispace:
    xm: CrossedModule
    raction: tuple[tuple[int, ...], ...]
    psi: tuple[int, ...]

    def __post_init__(self):
        _check_bispace(self.xm, self.raction, self.psi)

    @property
    def size(self) -> int:
        return len(self.psi)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Bispace):
            return NotImplemented
        return self.xm == other.xm and self.raction == other.raction and self.psi == other.psi

    def __hash__(self) -> int:
        return hash((self.raction, self.psi))

    def act(self, x: int, g: int) -> int:
        return self.raction[x][g]

    @cached_property
    def coord(self) -> tuple[int, ...]:
        """coord[y] is the g with 0*g = y."""
        c = [0] * self.size
        for g, y in enumerate(self.raction[0]):
            c[y] = g
        return tuple(c)

    def divide(self, x: int, y: int) -> int:
        """The unique g with x*g = y."""
        G = self.xm.G
        return G.mul[G.inv[self.coord[x]]][self.coord[y]]


class TypeValue(NamedTuple):
    xm: CrossedModule
    coset: int

    def __eq__(self, other) -> bool:
        return isinstance(other, TypeValue) and self.xm == other.xm and self.coset == other.coset

    def __hash__(self) -> int:
        return hash(self.coset)

    def __mul__(self, other: "TypeValue") -> "TypeValue":
        return TypeValue(self.xm, self.xm.pi0.mul[self.coset][other.coset])

    def inverse(self) -> "TypeValue":
        return TypeValue(self.xm, self.xm.pi0.inv[self.coset])


@dataclass(frozen=True, eq=False)
class BispaceMorphism:
    source: Bispace
    target: Bispace
    map: tuple[int, ...]

    def __post_init__(self):
        X, Y, f = self.source, self.target, self.map
        if X.xm != Y.xm:
            raise MismatchError("bispaces over different crossed modules")
        if sorted(f) != list(range(Y.size)) or len(f) != X.size:
            raise BispaceError("morphism is not a bijection")
        for x in range(X.size):
            if Y.psi[f[x]] != X.psi[x]:
                raise BispaceError(f"structure maps disagree at {x}", witness=x)
            for g in range(X.xm.G.order):
                if f[X.raction[x][g]] != Y.raction[f[x]][g]:
                    raise BispaceError(f"right action not preserved at ({x},{g})", witness=[x, g])

    def __call__(self, x: int) -> int:
        return self.map[x]


def _check_bispace(xm: CrossedModule, raction, psi) -> None:
    G, H = xm.G, xm.H
    n = len(psi)
    if n != G.order:
        raise BispaceError(f"carrier has {n} points, a G-torsor needs {G.order}")
    if len(raction) != n or any(len(r) != G.order for r in raction):
        raise BispaceError("right action table has the wrong shape")
    if any(not 0 <= v < H.order for v in psi):
        raise BispaceError("psi value out of range")
    for x in range(n):
        if raction[x][0] != x:
            raise BispaceError(f"identity moves point {x}", witness=x)
        for g in range(G.order):
            y = raction[x][g]
            if not 0 <= y < n:
                raise BispaceError(f"action value out of range at ({x},{g})", witness=[x, g])
    if sorted(raction[0]) != list(range(n)):
        raise BispaceError("right action is not free and transitive", witness=0)
    for x in range(n):
        for g in range(G.order):
            y = raction[x][g]
            row = raction[y]
            for g2 in range(G.order):
                if row[g2] != raction[x][G.mul[g][g2]]:
                    raise BispaceError(f"not a right action at ({x},{g},{g2})", witness=[x, g, g2])
            if psi[y] != H.mul[psi[x]][xm.t.map[g]]:
                raise BispaceError(f"psi is not equivariant at ({x},{g})", witness=[x, g])


def make_bispace(xm: CrossedModule, raction: Sequence[Sequence[int]], psi: Sequence[int]) -> Bispace:
    return Bispace(xm, tuple(tuple(int(v) for v in r) for r in raction), tuple(int(v) for v in psi))


def standard_bispace(xm: CrossedModule, xi: int) -> Bispace:
    """T(xi): G acting on itself on the right, psi(x) = xi t(x)."""
    G, H = xm.G, xm.H
    if not 0 <= xi < H.order:
        raise BispaceError(f"xi={xi} is not an element of H")
    return Bispace(xm, G.mul, tuple(H.mul[xi][xm.t.map[x]] for x in range(G.order)))


def trivial_bispace(xm: CrossedModule) -> Bispace:
    return standard_bispace(xm, 0)


def left_action(X: Bispace, g: int, x: int) -> int:
    """g x = x * alpha(psi(x))^-1 (g)."""
    xm = X.xm
    return X.raction[x][xm.alpha.act[xm.H.inv[X.psi[x]]][g]]


def from_biaction(G: FiniteGroup, left: Sequence[Sequence[int]], right: Sequence[Sequence[int]],
                  xm: CrossedModule | None = None, max_order: int = DEFAULT_MAX_ORDER) -> Bispace:
    """Turn a G bispace (commuting free transitive left/right actions) into an (Aut G, G) bispace.

    ``left[g][x]`` and ``right[x][g]``.  psi(x) is the automorphism with
    x g = psi(x)(g) x.
    """
    xm = xm or adjoint_module(G, max_order)
    n = len(right)
    if n != G.order or len(left) != G.order:
        raise BispaceError("action tables have the wrong shape")
    for g in range(G.order):
        for g2 in range(G.order):
            gg = G.mul[g][g2]
            for x in range(n):
                if left[g][left[g2][x]] != left[gg][x]:
                    raise BispaceError(f"left table is not a left action at ({g},{g2},{x})", witness=[g, g2, x])
    if sorted(left[k][0] for k in range(G.order)) != list(range(n)):
        raise BispaceError("left action is not free and transitive")
    for g in range(G.order):
        for x in range(n):
            for k in range(G.order):
                if left[g][right[x][k]] != right[left[g][x]][k]:
                    raise BispaceError(f"actions do not commute at (g={g}, x={x}, k={k})",
                                       witness={"g": g, "x": x, "k": k})
    # left_of[x][y] = the g with g x = y
    index = adjoint_module_index(xm)
    psi = []
    for x in range(n):
        left_of = {left[g][x]: g for g in range(G.order)}
        perm = tuple(left_of[right[x][k]] for k in range(G.order))
        if perm not in index:
            raise BispaceError(f"psi({x}) is not an automorphism of G", witness={"x": x, "psi": list(perm)})
        psi.append(index[perm])
    return make_bispace(xm, right, psi)


def adjoint_module_index(xm: CrossedModule) -> dict[tuple[int, ...], int]:
    return {tuple(xm.alpha.act[a]): a for a in range(xm.H.order)}


def left_action_table(X: Bispace) -> tuple[tuple[int, ...], ...]:
    return tuple(tuple(left_action(X, g, x) for x in range(X.size)) for g in range(X.xm.G.order))


def type_of(X: Bispace) -> TypeValue:
    xm = X.xm
    c = xm.coset(X.psi[0])
    assert all(xm.coset(v) == c for v in X.psi), "psi leaves a single t(G) coset"
    return TypeValue(xm, c)


def find_isomorphism(X: Bispace, Y: Bispace) -> BispaceMorphism | None:
    """x0*g -> y0*g where psi(y0) = psi(x0); None when the types differ."""
    if X.xm != Y.xm:
        raise MismatchError("bispaces over different crossed modules")
    target = X.psi[0]
    y0 = next((y for y in range(Y.size) if Y.psi[y] == target), None)
    if y0 is None:
        return None
    f = [0] * X.size
    for g in range(X.xm.G.order):
        f[X.raction[0][g]] = Y.raction[y0][g]
    return BispaceMorphism(X, Y, tuple(f))


def canonicalize(X: Bispace) -> tuple[Bispace, BispaceMorphism]:
    """Relabel X as T(psi(0)) via 0*g -> g."""
    T = standard_bispace(X.xm, X.psi[0])
    return T, BispaceMorphism(X, T, X.coord)


class OrbitQuotient(NamedTuple):
    bispace: Bispace
    reps: tuple[tuple[int, int], ...]
    point_of: dict[tuple[int, int], int]


def tensor_orbits(X: Bispace, Y: Bispace) -> OrbitQuotient:
    """(X x Y)/G for (x, y)g = (xg, g^-1 y), with its orbit bookkeeping."""
    if X.xm != Y.xm:
        raise MismatchError("bispaces over different crossed modules")
    xm = X.xm
    G, H = xm.G, xm.H
    point_of: dict[tuple[int, int], int] = {}
    reps = []
    for x in range(X.size):
        for y in range(Y.size):
            if (x, y) in point_of:
                continue
            k = len(reps)
            reps.append((x, y))
            for g in range(G.order):
                point_of[(X.raction[x][g], left_action(Y, G.inv[g], y))] = k
    raction = tuple(tuple(point_of[(x, Y.raction[y][g])] for g in range(G.order)) for x, y in reps)
    psi = tuple(H.mul[X.psi[x]][Y.psi[y]] for x, y in reps)
    return OrbitQuotient(Bispace(xm, raction, psi), tuple(reps), point_of)


def tensor(X: Bispace, Y: Bispace) -> Bispace:
    return tensor_orbits(X, Y).bispace


def dual(X: Bispace) -> Bispace:
    """Same points; psi* = psi^-1 and x.g = x alpha(psi(x)^-1)(g^-1)."""
    xm = X.xm
    G, H = xm.G, xm.H
    act = xm.alpha.act
    raction = tuple(
        tuple(X.raction[x][act[H.inv[X.psi[x]]][G.inv[g]]] for g in range(G.order)) for x in range(X.size)
    )
    return Bispace(xm, raction, tuple(H.inv[v] for v in X.psi))


def twist(X: Bispace, xi: int) -> Bispace:
    """X(xi) realized on the points of X: x o g = x alpha(xi)(g), psi(x) xi."""
    xm = X.xm
    act = xm.alpha.act[xi]
    raction = tuple(tuple(X.raction[x][act[g]] for g in range(xm.G.order)) for x in range(X.size))
    return Bispace(xm, raction, tuple(xm.H.mul[v][xi] for v in X.psi))


class Reduction(NamedTuple):
    bispace: Bispace  # over (1, G1)
    points: tuple[int, ...]  # ids in the original bispace
    submodule: CrossedModule
    inclusion: CrossedModuleMorphism


def reduce_to_kernel(X: Bispace) -> Reduction | None:
    """X1 = {x : psi(x) = 1} as a (1, G1) bispace, or None when Type(X) != 1."""
    pts = tuple(x for x in range(X.size) if X.psi[x] == 0)
    if not pts:
        return None
    sub, incl = kernel_submodule(X.xm)
    pos = {x: i for i, x in enumerate(pts)}
    G1 = X.xm.G1.elements
    raction = tuple(tuple(pos[X.raction[x][g]] for g in G1) for x in pts)
    return Reduction(Bispace(sub, raction, (0,) * len(pts)), pts, sub, incl)


def extend_orbits(X: Bispace, m: CrossedModuleMorphism) -> OrbitQuotient:
    """X x_G G' for (x, g')g = (xg, v(g^-1) g'); psi[x, g'] = u(psi(x)) t'(g')."""
    if X.xm != m.source:
        raise MismatchError("bispace is not over the morphism's source")
    G, G2, H2 = m.source.G, m.target.G, m.target.H
    v, u, t2 = m.v.map, m.u.map, m.target.t.map
    point_of: dict[tuple[int, int], int] = {}
    reps = []
    for x in range(X.size):
        for g2 in range(G2.order):
            if (x, g2) in point_of:
                continue
            k = len(reps)
            reps.append((x, g2))
            for g in range(G.order):
                point_of[(X.raction[x][g], G2.mul[v[G.inv[g]]][g2])] = k
    raction = tuple(tuple(point_of[(x, G2.mul[g2][h])] for h in range(G2.order)) for x, g2 in reps)
    psi = tuple(H2.mul[u[X.psi[x]]][t2[g2]] for x, g2 in reps)
    return OrbitQuotient(Bispace(m.target, raction, psi), tuple(reps), point_of)


def extend(X: Bispace, m: CrossedModuleMorphism) -> Bispace:
    return extend_orbits(X, m).bispace


@dataclass(frozen=True)
class Pi0Group:
    xm: CrossedModule
    classes: tuple[Bispace, ...]  # T(xi) for xi in the pi0 section
    table: tuple[tuple[int, ...], ...]  # class index of tensor(classes[a], classes[b])
    inverse: tuple[int, ...]  # class index of dual(classes[a])
    type_map: tuple[int, ...]  # class index -> pi0 element


def classify(X: Bispace, classes: Sequence[Bispace]) -> int:
    """Index of the class isomorphic to X (found by explicit isomorphism search)."""
    for i, C in enumerate(classes):
        if find_isomorphism(X, C) is not None:
            return i
    raise BispaceError("bispace matches no class")


def pi0_group(xm: CrossedModule) -> Pi0Group:
    """Isomorphism classes of bispaces under tensor, checked against H/t(G)."""
    section = xm.pi0_quotient.section
    classes = tuple(standard_bispace(xm, xi) for xi in section)
    type_map = tuple(type_of(C).coset for C in classes)
    n = len(classes)
    table = tuple(tuple(classify(tensor(classes[a], classes[b]), classes) for b in range(n)) for a in range(n))
    inverse = tuple(classify(dual(C), classes) for C in classes)
    # type is a bijective homomorphism onto pi0
    pi0 = xm.pi0
    assert sorted(type_map) == list(range(pi0.order))
    for a in range(n):
        assert type_map[inverse[a]] == pi0.inv[type_map[a]]
        for b in range(n):
            assert type_map[table[a][b]] == pi0.mul[type_map[a]][type_map[b]]
    # iso iff same type, over all standard bispaces
    everything = [standard_bispace(xm, h) for h in range(xm.H.order)]
    for X in everything:
        for Y in everything:
            assert (find_isomorphism(X, Y) is not None) == (type_of(X) == type_of(Y))
    return Pi0Group(xm, classes, table, inverse, type_map)


def pi0_table_group(p: Pi0Group) -> FiniteGroup:
    """The class table as a group (class of T(1) is index 0)."""
    return FiniteGroup(p.table, p.inverse, None, f"pi0Bisp({p.xm.name})")


def pi0_isomorphic_to_quotient(p: Pi0Group) -> bool:
    return find_group_isomorphism(pi0_table_group(p), p.xm.pi0) is not None


# ----------------------------------------------------------------- documents


def bispace_to_doc(X: Bispace, xm_name: str | None = None) -> dict:
    return {
        "xm": xm_name or X.xm.name,
        "carrier": X.size,
        "raction": [list(r) for r in X.raction],
        "psi": list(X.psi),
    }


def bispace_from_doc(doc: dict, resolve_xm) -> Bispace:
    xm = resolve_xm(doc["xm"])
    if "standard" in doc:
        return standard_bispace(xm, int(doc["standard"]))
    if "carrier" in doc and doc["carrier"] != len(doc["psi"]):
        raise BispaceError("carrier size does not match psi")
    return make_bispace(xm, doc["raction"], doc["psi"])
