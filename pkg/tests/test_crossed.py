import itertools

import pytest

from xmod.crossed import (abelian_module, adjoint_module, crossed_module_from_doc, crossed_module_to_doc,
                          identity_morphism, image_module, jandl_module, kernel_submodule, two_group,
                          validate_crossed_module, validate_morphism)
from xmod.errors import CrossedModuleAxiomError, MorphismError
from xmod.groups import (builtin_groups, center, conjugation_action, cyclic_group, enumerate_automorphisms,
                         find_group_isomorphism, group_from_doc, symmetric_group, trivial_action,
                         trivial_group)

FIXTURES = ["J2", "J3", "J4", "V4", "AdS3", "D1Z4", "D1S3"]


def axioms_hold(xm):
    G, H, t, act = xm.G, xm.H, xm.t.map, xm.alpha.act
    one = all(t[act[h][g]] == H.m(h, t[g], H.inv[h]) for h in range(H.order) for g in range(G.order))
    two = all(act[t[g]][k] == G.m(g, k, G.inv[g]) for g in range(G.order) for k in range(G.order))
    return one and two


@pytest.mark.parametrize("name", FIXTURES)
def test_fixture_axioms_and_consequences(xms, name):
    xm = xms[name]
    assert axioms_hold(xm)
    Z = center(xm.G)
    assert all(z in Z for z in xm.G1)
    assert xm.tG.is_normal
    G1, _ = xm.G1_group
    assert G1.is_abelian
    assert xm.pi0.order * len(xm.tG.elements) == xm.H.order


def test_abelian_case_valid_and_s3_fails_axiom_2():
    xm = abelian_module(cyclic_group(3))
    assert xm.pi0.order == 1 and len(xm.G1.elements) == 3
    with pytest.raises(CrossedModuleAxiomError) as ei:
        abelian_module(symmetric_group(3))
    w = ei.value.witness
    assert w["axiom"] == 2
    S3 = symmetric_group(3)
    assert w["k"] != S3.conj(w["g"], w["k"])


def test_axiom_1_failure():
    # A3 included in S3 with trivial action: t(g) is not conjugation-equivariant
    Z3, S3 = cyclic_group(3), symmetric_group(3)
    a3 = [0, S3.labels.index("(123)"), S3.labels.index("(132)")]
    with pytest.raises(CrossedModuleAxiomError) as ei:
        validate_crossed_module(Z3, S3, a3, trivial_action(S3, Z3).act)
    w = ei.value.witness
    assert w["axiom"] == 1
    h, g = w["h"], w["g"]
    assert a3[g] != S3.conj(h, a3[g])


def test_jandl_invariants():
    for n in (2, 3, 4):
        xm = jandl_module(n)
        assert len(xm.G1.elements) == n and xm.pi0.order == 2


def test_adjoint_modules():
    gs = builtin_groups()
    ad = adjoint_module(gs["S3"])
    assert ad.pi0.order == 1 and len(ad.G1.elements) == 1
    ad4 = adjoint_module(gs["Z4"])
    assert ad4.H.order == 2 and set(ad4.t.map) == {0}
    assert ad4.pi0.order == 2 and len(ad4.G1.elements) == 4
    ad2 = adjoint_module(gs["Z2"])
    assert ad2.H.order == 1 and ad2.pi0.order == 1 and len(ad2.G1.elements) == 2
    for name in ("S3", "Z4", "D4", "Z2xZ2"):
        data = enumerate_automorphisms(gs[name])
        ad = adjoint_module(gs[name])
        assert ad.pi0.order == len(data.outer_reps)


def test_morphisms(xms):
    for xm in xms.values():
        identity_morphism(xm)
        validate_morphism(xm, xm, tuple(range(xm.H.order)), tuple(range(xm.G.order)))
        sub, incl = kernel_submodule(xm)
        assert sub.G.order == len(xm.G1.elements)
        _, proj = image_module(xm)
        # closure under composition
        comp = proj.compose(incl)
        assert comp.source is sub
    J4, J2 = xms["J4"], xms["J2"]
    red = validate_morphism(J4, J2, (0, 1), tuple(g % 2 for g in range(4)))
    assert red.v.map == (0, 1, 0, 1)


def test_morphism_failures(xms):
    J3, V4 = xms["J3"], xms["V4"]
    with pytest.raises(MorphismError):
        # square fails: t' o v = mod 2 nonzero while u o t = 0
        validate_morphism(jandl_module(4), V4, (0, 0), (0, 1, 2, 3))
    with pytest.raises(MorphismError):
        # equivariance fails: u kills the inversion while v commutes with nothing to compensate
        validate_morphism(J3, J3, (0, 0), (0, 1, 2))


@pytest.mark.parametrize("name,components,vertex", [("J3", 2, 3), ("D1S3", 1, 1), ("D1Z4", 1, 1),
                                                    ("AdS3", 1, 1), ("V4", 1, 2)])
def test_two_group(xms, name, components, vertex):
    xm = xms[name]
    gpd = two_group(xm)
    assert gpd.objects.order == xm.H.order
    assert gpd.morphisms.order == xm.H.order * xm.G.order
    assert len(gpd.components) == components
    assert gpd.vertex_group(0).order == vertex
    # composition and inverses
    for m in range(gpd.morphisms.order):
        inv = gpd.inverse(m)
        assert gpd.src[inv] == gpd.tgt[m] and gpd.tgt[inv] == gpd.src[m]
        loop = gpd.compose(m, inv)
        assert loop is not None and gpd.split(loop)[1] == 0
    for m1, m2 in itertools.product(range(gpd.morphisms.order), repeat=2):
        c = gpd.compose(m1, m2)
        if gpd.tgt[m1] != gpd.src[m2]:
            assert c is None
        else:
            assert gpd.src[c] == gpd.src[m1] and gpd.tgt[c] == gpd.tgt[m2]


def test_two_group_ads3_counts(xms):
    gpd = two_group(xms["AdS3"])
    assert (gpd.objects.order, gpd.morphisms.order, len(gpd.components)) == (6, 36, 1)


def test_vertex_group_iso_pi1(xms):
    for xm in xms.values():
        gpd = two_group(xm)
        assert find_group_isomorphism(gpd.vertex_group(0), xm.G1_group[0]) is not None


def test_doc_round_trip(xms, groups):
    for name, xm in xms.items():
        back = crossed_module_from_doc(crossed_module_to_doc(xm), group_from_doc, name=name)
        assert back == xm
    ad = crossed_module_from_doc({"adjoint": "S3"}, lambda n: groups[n], name="X")
    assert ad == xms["AdS3"]


def test_trivial_group_module():
    one = trivial_group()
    xm = validate_crossed_module(one, one, (0,), ((0,),))
    assert xm.pi0.order == 1
    validate_crossed_module(cyclic_group(3), cyclic_group(3), (0, 1, 2), conjugation_action(cyclic_group(3)).act)
