"""Shared fixtures and brute-force oracles used across the test modules."""

import itertools
from pathlib import Path

import pytest

from xmod.cech.nerve import builtin_nerves
from xmod.crossed import builtin_crossed_modules
from xmod.groups import builtin_groups


@pytest.fixture(scope="session")
def groups():
    return builtin_groups()


@pytest.fixture(scope="session")
def xms():
    return builtin_crossed_modules()


@pytest.fixture(scope="session")
def nerves():
    return builtin_nerves()


def brute_automorphisms(G):
    """Every bijection fixing 0 that respects the table; n! search, small n only."""
    n = G.order
    out = []
    for rest in itertools.permutations(range(1, n)):
        p = (0,) + rest
        if all(p[G.mul[a][b]] == G.mul[p[a]][p[b]] for a in range(n) for b in range(n)):
            out.append(p)
    return out


def brute_cocycles(nerve, xm):
    """All (g, h) satisfying both cocycle conditions, by exhaustive product search."""
    from xmod.cech.cocycle import BibundleCocycle, cocycle_failure

    G, H = xm.G, xm.H
    out = []
    for g in itertools.product(range(G.order), repeat=len(nerve.edges)):
        eidx = nerve.edge_index
        if any(G.mul[g[eidx[(i, j)]]][g[eidx[(j, k)]]] != g[eidx[(i, k)]] for i, j, k in nerve.triangles):
            continue
        for h in itertools.product(range(H.order), repeat=nerve.n_vertices):
            if cocycle_failure(nerve, xm, g, h) is None:
                out.append(BibundleCocycle(nerve, xm, g, h))
    return out


def brute_orbits(cocycles, xm, nerve):
    """Partition cocycles into gauge orbits by applying every k in G^V."""
    from xmod.cech.cocycle import apply_gauge

    remaining = {c.key: c for c in cocycles}
    orbits = []
    gauges = list(itertools.product(range(xm.G.order), repeat=nerve.n_vertices))
    while remaining:
        key = min(remaining)
        c = remaining[key]
        orbit = {apply_gauge(c, k).key for k in gauges}
        for o in orbit:
            remaining.pop(o, None)
        orbits.append(orbit)
    return orbits


def random_cocycle(rng, nerve, xm):
    """A valid cocycle: tree-normalized data with random loop labels, then a random gauge."""
    from xmod.cech.cocycle import BibundleCocycle, apply_gauge
    from xmod.cech.nerve import enumerate_edge_labelings

    G, t = xm.G, xm.t.map
    labelings = list(enumerate_edge_labelings(nerve, G.order, lambda a, b, c: G.mul[a][b] == c,
                                              lambda e, v: t[v] == 0))
    g = rng.choice(labelings)
    roots = [rng.randrange(xm.H.order) for _ in range(nerve.n_components)]
    h = tuple(roots[nerve.component_of[v]] for v in nerve.vertices)
    c = BibundleCocycle(nerve, xm, g, h).check()
    k = [rng.randrange(G.order) for _ in nerve.vertices]
    return apply_gauge(c, k)


def fibre_tensor_oracle(c1, c2):
    """Tensor of two cocycles computed edge by edge with explicit bispace tensors.

    Over vertex i the fibres are T(h_i) and T(h'_i) with sections at the
    identity point; the section over j is the point (g_ij, g'_ij) of the
    product, and the new edge label is the torsor quotient of that orbit by
    the orbit of (1, 1).
    """
    from xmod.bispace import standard_bispace, tensor_orbits

    xm, nerve = c1.xm, c1.nerve
    H = xm.H
    g, h = [], []
    for i in nerve.vertices:
        q = tensor_orbits(standard_bispace(xm, c1.h[i]), standard_bispace(xm, c2.h[i]))
        h.append(q.bispace.psi[q.point_of[(0, 0)]])
        assert h[-1] == H.mul[c1.h[i]][c2.h[i]]
    for e, (i, j) in enumerate(nerve.edges):
        q = tensor_orbits(standard_bispace(xm, c1.h[i]), standard_bispace(xm, c2.h[i]))
        base = q.point_of[(0, 0)]
        there = q.point_of[(c1.g[e], c2.g[e])]
        g.append(q.bispace.divide(base, there))
    return tuple(g), tuple(h)


def fibre_dual_oracle(c):
    """Dual cocycle read off from dual(T(h_i)) with the same section points."""
    from xmod.bispace import dual, standard_bispace

    xm, nerve = c.xm, c.nerve
    g, h = [], []
    for i in nerve.vertices:
        h.append(dual(standard_bispace(xm, c.h[i])).psi[0])
    for e, (i, j) in enumerate(nerve.edges):
        D = dual(standard_bispace(xm, c.h[i]))
        g.append(D.divide(0, c.g[e]))
    return tuple(g), tuple(h)


def holonomy_circ3(c_or_g, n):
    """g_01 + g_12 - g_02 in Z_n for edge order (01, 02, 12)."""
    g = getattr(c_or_g, "g", c_or_g)
    return (g[0] + g[2] - g[1]) % n


WORKSPACE = str(Path(__file__).parent / "data" / "workspace.json")

# (argv, expected exit code); every subcommand appears with each outcome it can have
CLI_INVOCATIONS = [
    (["check"], 0),
    (["check", "J3", "Sphere", "S3"], 0),
    (["check", "flat", "T1", "Square", "MyAdS3", "--workspace", WORKSPACE], 0),
    (["check", "Nope"], 2),
    (["aut", "S3"], 0),
    (["aut", "D4"], 0),
    (["aut"], 2),
    (["bispace", "--xm", "J3"], 0),
    (["bispace", "--xm", "AdS3"], 0),
    (["bispace", "T1", "--workspace", WORKSPACE], 0),
    (["bispace", "T1", "T1b", "--workspace", WORKSPACE], 0),
    (["bispace", "T0", "T1", "--workspace", WORKSPACE], 1),
    (["cocycle", "--xm", "J3", "--nerve", "Circ3"], 0),
    (["cocycle", "flat", "gauged", "--workspace", WORKSPACE], 0),
    (["cocycle", "flat", "twisted", "--workspace", WORKSPACE], 1),
    (["cocycle", "--xm", "AdS3", "--nerve", "RP26"], 2),
    (["cohomology", "--nerve", "RP26", "--coeff", "Z2"], 0),
    (["cohomology", "--nerve", "Sphere", "--xm", "J2"], 0),
    (["cohomology", "--nerve", "Sphere"], 2),
    (["obstruction", "--xm", "V4", "--nerve", "RP26", "--tau", "w1"], 1),
    (["obstruction", "--xm", "V4", "--nerve", "Sphere", "--tau", "trivial"], 0),
    (["obstruction", "--xm", "J3", "--nerve", "Circ3", "--tau", "[1,0,0]"], 2),
    (["exactseq", "--xm", "J3", "--nerve", "Circ3"], 0),
    (["exactseq", "--xm", "MyAdS3", "--nerve", "Square", "--workspace", WORKSPACE], 0),
    (["exactseq", "--xm", "AdS3", "--nerve", "RP26"], 2),
    (["structures", "loopy", "--workspace", WORKSPACE], 0),
    (["structures", "--xm", "D1Z4", "--nerve", "Circ3", "--g", "[1,0,0]"], 1),
    (["structures", "--xm", "J3", "--nerve", "Circ3", "--g", "[1,0,0]"], 0),
    (["frobnicate"], 2),
]
