"""Finite simplicial complexes standing in for the nerve of a good cover."""

from __future__ import annotations

import itertools
import math
import warnings
from dataclasses import dataclass
from functools import cached_property
from typing import Sequence

from ..errors import NerveError

Simplex = tuple[int, ...]


@dataclass(frozen=True, eq=False)
class Nerve:
    n_vertices: int
    edges: tuple[tuple[int, int], ...]
    triangles: tuple[tuple[int, int, int], ...]
    tetrahedra: tuple[tuple[int, int, int, int], ...] = ()
    name: str = ""

    def __eq__(self, other) -> bool:
        if not isinstance(other, Nerve):
            return NotImplemented
        return (self.n_vertices, self.edges, self.triangles, self.tetrahedra) == (
            other.n_vertices, other.edges, other.triangles, other.tetrahedra)

    def __hash__(self) -> int:
        return hash((self.n_vertices, self.edges, self.triangles))

    def __repr__(self) -> str:
        return (f"Nerve({self.name or '?'}: V={self.n_vertices}, E={len(self.edges)}, "
                f"T={len(self.triangles)}, Tet={len(self.tetrahedra)})")

    @property
    def vertices(self) -> range:
        return range(self.n_vertices)

    def simplices(self, q: int) -> tuple[Simplex, ...]:
        if q == 0:
            return tuple((v,) for v in range(self.n_vertices))
        return (self.edges, self.triangles, self.tetrahedra)[q - 1] if 1 <= q <= 3 else ()

    @cached_property
    def edge_index(self) -> dict[tuple[int, int], int]:
        return {e: i for i, e in enumerate(self.edges)}

    @cached_property
    def triangle_index(self) -> dict[tuple[int, int, int], int]:
        return {t: i for i, t in enumerate(self.triangles)}

    def index_of(self, simplex: Simplex) -> int:
        q = len(simplex) - 1
        if q == 0:
            return simplex[0]
        if q == 1:
            return self.edge_index[simplex]
        if q == 2:
            return self.triangle_index[simplex]
        return self.tetrahedra.index(simplex)

    @cached_property
    def euler_characteristic(self) -> int:
        return self.n_vertices - len(self.edges) + len(self.triangles) - len(self.tetrahedra)

    @cached_property
    def component_of(self) -> tuple[int, ...]:
        parent = list(range(self.n_vertices))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for i, j in self.edges:
            a, b = find(i), find(j)
            if a != b:
                parent[max(a, b)] = min(a, b)
        roots = sorted({find(v) for v in range(self.n_vertices)})
        label = {r: k for k, r in enumerate(roots)}
        return tuple(label[find(v)] for v in range(self.n_vertices))

    @property
    def n_components(self) -> int:
        return max(self.component_of, default=-1) + 1

    @cached_property
    def components(self) -> tuple[tuple[int, ...], ...]:
        out: list[list[int]] = [[] for _ in range(self.n_components)]
        for v, c in enumerate(self.component_of):
            out[c].append(v)
        return tuple(tuple(c) for c in out)

    @cached_property
    def roots(self) -> tuple[int, ...]:
        return tuple(c[0] for c in self.components)

    @cached_property
    def adjacency(self) -> tuple[tuple[tuple[int, int], ...], ...]:
        """adjacency[v] = ((neighbour, edge index), ...) in edge order."""
        adj: list[list[tuple[int, int]]] = [[] for _ in range(self.n_vertices)]
        for e, (i, j) in enumerate(self.edges):
            adj[i].append((j, e))
            adj[j].append((i, e))
        return tuple(tuple(a) for a in adj)

    @cached_property
    def spanning_forest(self) -> tuple[tuple[tuple[int, int, int], ...], frozenset[int]]:
        """BFS from each component root.

        Returns (steps, tree edge indices) where every step (parent, child,
        edge) is listed after its parent has been reached.
        """
        seen = [False] * self.n_vertices
        steps = []
        tree = set()
        for r in self.roots:
            seen[r] = True
            queue = [r]
            for v in queue:
                for w, e in self.adjacency[v]:
                    if not seen[w]:
                        seen[w] = True
                        steps.append((v, w, e))
                        tree.add(e)
                        queue.append(w)
        return tuple(steps), frozenset(tree)

    @property
    def tree_steps(self) -> tuple[tuple[int, int, int], ...]:
        return self.spanning_forest[0]

    @property
    def tree_edges(self) -> frozenset[int]:
        return self.spanning_forest[1]

    @cached_property
    def loop_edges(self) -> tuple[int, ...]:
        return tuple(e for e in range(len(self.edges)) if e not in self.tree_edges)

    def tree_path(self, v: int) -> list[tuple[int, int, int]]:
        """Tree steps from the component root down to v."""
        by_child = {c: (p, c, e) for p, c, e in self.tree_steps}
        path = []
        while v in by_child:
            step = by_child[v]
            path.append(step)
            v = step[0]
        return path[::-1]


def _normalize(simplex, arity: int, n: int, kind: str) -> tuple[int, ...]:
    s = tuple(int(v) for v in simplex)
    if len(s) != arity:
        raise NerveError(f"{kind} {list(simplex)} should have {arity} vertices", witness=list(simplex))
    if any(not 0 <= v < n for v in s):
        raise NerveError(f"{kind} {list(simplex)} has a vertex out of range 0..{n - 1}", witness=list(simplex))
    if len(set(s)) != arity:
        raise NerveError(f"{kind} {list(simplex)} repeats a vertex", witness=list(simplex))
    return tuple(sorted(s))


def validate_nerve(data: dict, strict: bool = False, name: str = "") -> Nerve:
    """Build a :class:`Nerve` from ``{"vertices", "edges", "triangles", "tetrahedra"}``.

    Missing faces are inserted with a warning, or rejected when ``strict``.
    """
    n = data.get("vertices")
    if not isinstance(n, int) or n < 0:
        raise NerveError("'vertices' must be a non-negative integer")
    levels = []
    for key, arity in (("edges", 2), ("triangles", 3), ("tetrahedra", 4)):
        seen = set()
        out = []
        for s in data.get(key, []) or []:
            t = _normalize(s, arity, n, key[:-1])
            if t in seen:
                raise NerveError(f"duplicate {key[:-1]} {list(t)}", witness=list(t))
            seen.add(t)
            out.append(t)
        levels.append(seen)
    edges, tris, tets = levels
    for upper, lower, kind in ((tets, tris, "triangle"), (tris, edges, "edge")):
        for s in sorted(upper):
            for face in itertools.combinations(s, len(s) - 1):
                if face not in lower:
                    if strict:
                        raise NerveError(f"missing {kind} {list(face)} of {list(s)}", witness=list(face))
                    warnings.warn(f"inserting missing {kind} {list(face)} of {list(s)}", stacklevel=2)
                    lower.add(face)
    return Nerve(n, tuple(sorted(edges)), tuple(sorted(tris)), tuple(sorted(tets)), name)


def nerve_to_doc(N: Nerve) -> dict:
    doc = {
        "vertices": N.n_vertices,
        "edges": [list(e) for e in N.edges],
        "triangles": [list(t) for t in N.triangles],
    }
    if N.tetrahedra:
        doc["tetrahedra"] = [list(t) for t in N.tetrahedra]
    return doc


# ------------------------------------------------------------------ fixtures


def disc2() -> Nerve:
    return validate_nerve({"vertices": 3, "edges": [[0, 1], [1, 2], [0, 2]], "triangles": [[0, 1, 2]]},
                          strict=True, name="Disc2")


def circ3() -> Nerve:
    return validate_nerve({"vertices": 3, "edges": [[0, 1], [1, 2], [0, 2]]}, strict=True, name="Circ3")


def sphere() -> Nerve:
    """Boundary of the 3-simplex."""
    tris = [list(t) for t in itertools.combinations(range(4), 3)]
    edges = [list(e) for e in itertools.combinations(range(4), 2)]
    return validate_nerve({"vertices": 4, "edges": edges, "triangles": tris}, strict=True, name="Sphere")


def icosahedron() -> tuple[list[tuple[float, float, float]], list[tuple[int, int, int]]]:
    phi = (1 + math.sqrt(5)) / 2
    verts = []
    for a in (1, -1):
        for b in (phi, -phi):
            verts += [(0.0, a, b), (a, b, 0.0), (b, 0.0, a)]

    def d2(p, q):
        return sum((x - y) ** 2 for x, y in zip(p, q))

    adjacent = {(i, j) for i in range(12) for j in range(12) if i != j and abs(d2(verts[i], verts[j]) - 4) < 1e-9}
    faces = [f for f in itertools.combinations(range(12), 3)
             if all((a, b) in adjacent for a, b in itertools.combinations(f, 2))]
    return verts, faces


def rp26() -> Nerve:
    """Six-vertex projective plane: the icosahedron modulo the antipodal map."""
    verts, faces = icosahedron()
    cls = [-1] * len(verts)
    k = 0
    for i, p in enumerate(verts):
        if cls[i] >= 0:
            continue
        j = next(j for j, q in enumerate(verts) if all(abs(a + b) < 1e-9 for a, b in zip(p, q)))
        cls[i] = cls[j] = k
        k += 1
    tris = {tuple(sorted(cls[v] for v in f)) for f in faces}
    if any(len(set(t)) != 3 for t in tris):
        raise NerveError("antipodal quotient is not simplicial")
    edges = {e for t in tris for e in itertools.combinations(t, 2)}
    N = validate_nerve({"vertices": k, "edges": sorted(edges), "triangles": sorted(tris)}, strict=True, name="RP26")
    if (N.n_vertices, len(N.edges), len(N.triangles), N.euler_characteristic) != (6, 15, 10, 1):
        raise NerveError("RP26 construction produced the wrong counts")
    return N


def builtin_nerves() -> dict[str, Nerve]:
    return {"Disc2": disc2(), "Circ3": circ3(), "Sphere": sphere(), "RP26": rp26()}


def make_nerve(n_vertices: int, simplices: Sequence[Sequence[int]], name: str = "") -> Nerve:
    """Downward closure of a list of top simplices (any dimension up to 3)."""
    faces: dict[int, set] = {1: set(), 2: set(), 3: set()}
    for s in simplices:
        s = tuple(sorted(s))
        for r in range(2, min(len(s), 4) + 1):
            for f in itertools.combinations(s, r):
                faces[r - 1].add(f)
    return Nerve(n_vertices, tuple(sorted(faces[1])), tuple(sorted(faces[2])), tuple(sorted(faces[3])), name)


def enumerate_edge_labelings(nerve: Nerve, n_values: int, triangle_ok, edge_ok=None, values=None):
    """Yield every edge labeling that is 0 on the spanning forest and passes the checks.

    ``triangle_ok(a_ij, a_jk, a_ik)`` is tested as soon as the last loop edge
    of a triangle is assigned; ``edge_ok(e, value)`` prunes single labels.
    ``values`` restricts the candidate labels (default: all ``n_values``).
    """
    loops = nerve.loop_edges
    position = {e: k for k, e in enumerate(loops)}
    tri_at: list[list[tuple[int, int, int]]] = [[] for _ in loops]
    labels = [0] * len(nerve.edges)
    eidx = nerve.edge_index
    for i, j, k in nerve.triangles:
        es = (eidx[(i, j)], eidx[(j, k)], eidx[(i, k)])
        last = max((position[e] for e in es if e in position), default=-1)
        if last < 0:
            if not triangle_ok(0, 0, 0):
                return
        else:
            tri_at[last].append(es)
    candidates = list(range(n_values)) if values is None else list(values)

    def rec(k):
        if k == len(loops):
            yield tuple(labels)
            return
        e = loops[k]
        for v in candidates:
            if edge_ok is not None and not edge_ok(e, v):
                continue
            labels[e] = v
            if all(triangle_ok(labels[a], labels[b], labels[c]) for a, b, c in tri_at[k]):
                yield from rec(k + 1)
        labels[e] = 0

    yield from rec(0)
