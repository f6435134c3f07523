import itertools
import random

import pytest
from hypothesis import given, settings, strategies as st

from xmod.bispace import (BispaceMorphism, bispace_from_doc, bispace_to_doc, canonicalize, dual, extend,
                          find_isomorphism, from_biaction, left_action, make_bispace, pi0_group,
                          pi0_isomorphic_to_quotient, reduce_to_kernel, standard_bispace, tensor, tensor_orbits,
                          trivial_bispace, twist, type_of)
from xmod.crossed import adjoint_module, builtin_crossed_modules, identity_morphism, image_module, kernel_submodule
from xmod.errors import BispaceError, MismatchError
from xmod.groups import cyclic_group, symmetric_group

FIXTURES = ["J2", "J3", "J4", "V4", "AdS3", "D1Z4", "D1S3"]
XMS = builtin_crossed_modules()


def relabel(X, perm):
    """The same bispace with point x renamed perm[x]."""
    n = X.size
    raction = [None] * n
    psi = [None] * n
    for x in range(n):
        raction[perm[x]] = [perm[y] for y in X.raction[x]]
        psi[perm[x]] = X.psi[x]
    return make_bispace(X.xm, raction, psi)


def brute_isomorphic(X, Y):
    G = X.xm.G
    for f in itertools.permutations(range(Y.size)):
        if all(Y.psi[f[x]] == X.psi[x] for x in range(X.size)) and all(
                f[X.raction[x][g]] == Y.raction[f[x]][g] for x in range(X.size) for g in range(G.order)):
            return True
    return False


def test_standard_bispace_examples(xms):
    T = trivial_bispace(xms["V4"])
    assert T.psi == xms["V4"].t.map
    assert type_of(standard_bispace(xms["J3"], 1)).coset == 1
    assert type_of(standard_bispace(xms["V4"], 1)).coset == 0
    with pytest.raises(BispaceError):
        standard_bispace(xms["J3"], 5)


def test_bad_bispaces(xms):
    J3 = xms["J3"]
    T = standard_bispace(J3, 0)
    with pytest.raises(BispaceError, match="equivariant"):
        make_bispace(xms["V4"], trivial_bispace(xms["V4"]).raction, (0, 0, 0, 0))
    with pytest.raises(BispaceError):
        make_bispace(J3, [[0, 0, 0]] * 3, T.psi)
    with pytest.raises(BispaceError, match="torsor"):
        make_bispace(J3, T.raction, T.psi[:2])


def test_from_biaction_s3_multiplication():
    S3 = symmetric_group(3)
    left = [[S3.mul[g][x] for x in range(6)] for g in range(6)]
    right = [[S3.mul[x][g] for g in range(6)] for x in range(6)]
    X = from_biaction(S3, left, right)
    # x g = (x g x^-1) x, so psi(x) = Ad(x): identity only at the identity point
    assert X.psi == X.xm.t.map
    assert X.psi[0] == 0
    assert type_of(X).coset == 0
    assert find_isomorphism(X, trivial_bispace(X.xm)) is not None
    for g, x in itertools.product(range(6), repeat=2):
        assert left_action(X, g, x) == left[g][x]


def test_from_biaction_inversion_structure_map():
    Z3 = cyclic_group(3)
    left = [[(x - a) % 3 for x in range(3)] for a in range(3)]
    right = [[(x + b) % 3 for b in range(3)] for x in range(3)]
    X = from_biaction(Z3, left, right)
    xm = X.xm
    inversion = (0, 2, 1)
    assert all(xm.alpha.act[p] == inversion for p in X.psi)
    # round trip through Eq. left action
    for a, x in itertools.product(range(3), repeat=2):
        assert left_action(X, a, x) == left[a][x]


def test_from_biaction_commuting_failure():
    S3 = symmetric_group(3)
    left = [[S3.mul[x][S3.inv[g]] for x in range(6)] for g in range(6)]
    right = [[S3.mul[x][g] for g in range(6)] for x in range(6)]
    with pytest.raises(BispaceError, match="commute") as ei:
        from_biaction(S3, left, right)
    assert set(ei.value.witness) == {"g", "x", "k"}


def test_left_action_examples(xms):
    X = trivial_bispace(xms["D1S3"])
    G = xms["D1S3"].G
    for g, x in itertools.product(range(6), repeat=2):
        assert left_action(X, g, x) == G.mul[g][x]
    T1 = standard_bispace(xms["J3"], 1)
    for g, x in itertools.product(range(3), repeat=2):
        assert left_action(T1, g, x) == (x - g) % 3


@pytest.mark.parametrize("name", FIXTURES)
def test_left_action_equivariance(xms, name):
    xm = xms[name]
    H, t = xm.H, xm.t.map
    for xi in range(H.order):
        X = standard_bispace(xm, xi)
        for g, x in itertools.product(range(xm.G.order), range(X.size)):
            y = left_action(X, g, x)
            assert X.psi[y] == H.mul[t[g]][X.psi[x]]
            # commutes with the right action
            for k in range(xm.G.order):
                assert left_action(X, g, X.raction[x][k]) == X.raction[y][k]


@pytest.mark.parametrize("name", FIXTURES)
def test_iso_iff_same_type(xms, name):
    xm = xms[name]
    Ts = [standard_bispace(xm, xi) for xi in range(xm.H.order)]
    for X, Y in itertools.product(Ts, repeat=2):
        f = find_isomorphism(X, Y)
        assert (f is not None) == (type_of(X) == type_of(Y))


@pytest.mark.parametrize("name", ["J2", "J3", "J4", "V4", "D1Z4"])
def test_find_isomorphism_against_brute_force(xms, name):
    xm = xms[name]
    Ts = [standard_bispace(xm, xi) for xi in range(xm.H.order)]
    for X, Y in itertools.product(Ts, repeat=2):
        assert (find_isomorphism(X, Y) is not None) == brute_isomorphic(X, Y)


def test_find_isomorphism_mismatch(xms):
    with pytest.raises(MismatchError):
        find_isomorphism(trivial_bispace(xms["J2"]), trivial_bispace(xms["J3"]))


def test_same_coset_isomorphic(xms):
    for xm in xms.values():
        for xi, g in itertools.product(range(xm.H.order), range(xm.G.order)):
            X = standard_bispace(xm, xi)
            Y = standard_bispace(xm, xm.H.mul[xi][xm.t.map[g]])
            assert find_isomorphism(X, Y) is not None


@pytest.mark.parametrize("name", FIXTURES)
def test_tensor_unit_and_inverse(xms, name):
    xm = xms[name]
    T = trivial_bispace(xm)
    for xi in range(xm.H.order):
        X = standard_bispace(xm, xi)
        assert find_isomorphism(tensor(X, T), X) is not None
        assert find_isomorphism(tensor(T, X), X) is not None
        assert find_isomorphism(tensor(X, dual(X)), T) is not None
        assert find_isomorphism(tensor(dual(X), X), T) is not None
        assert find_isomorphism(dual(dual(X)), X) is not None
        assert type_of(dual(X)) == type_of(X).inverse()
        for eta in range(xm.H.order):
            Y = standard_bispace(xm, eta)
            assert type_of(tensor(X, Y)) == type_of(X) * type_of(Y)


def test_tensor_orbit_psi(xms):
    xm = xms["AdS3"]
    H = xm.H
    for a, b in itertools.product(range(H.order), repeat=2):
        X, Y = standard_bispace(xm, a), standard_bispace(xm, b)
        q = tensor_orbits(X, Y)
        assert len(q.reps) == xm.G.order
        for (x, y), p in q.point_of.items():
            assert q.bispace.psi[p] == H.mul[X.psi[x]][Y.psi[y]]


def test_j3_tensor_square(xms):
    T1 = standard_bispace(xms["J3"], 1)
    assert find_isomorphism(tensor(T1, T1), standard_bispace(xms["J3"], 0)) is not None


@pytest.mark.parametrize("name", ["J3", "V4"])
def test_associativity_all_triples(xms, name):
    xm = xms[name]
    Ts = [standard_bispace(xm, xi) for xi in range(xm.H.order)]
    for X, Y, Z in itertools.product(Ts, repeat=3):
        assert find_isomorphism(tensor(tensor(X, Y), Z), tensor(X, tensor(Y, Z))) is not None


@pytest.mark.parametrize("name", FIXTURES)
def test_twist_simplification(xms, name):
    xm = xms[name]
    act = xm.alpha.act
    for x0, xi in itertools.product(range(xm.H.order), repeat=2):
        X = standard_bispace(xm, x0)
        q = tensor_orbits(X, standard_bispace(xm, xi))
        W = twist(X, xi)
        f = [None] * q.bispace.size
        for (x, g), p in q.point_of.items():
            f[p] = X.raction[x][act[xi][g]]
        BispaceMorphism(q.bispace, W, tuple(f))


def test_dual_of_trivial(xms):
    for xm in xms.values():
        T = trivial_bispace(xm)
        assert find_isomorphism(dual(T), T) is not None


def test_reduce_to_kernel(xms):
    red = reduce_to_kernel(trivial_bispace(xms["V4"]))
    assert red.points == (0, 2) and red.bispace.size == 2
    assert reduce_to_kernel(standard_bispace(xms["J3"], 1)) is None
    red = reduce_to_kernel(trivial_bispace(xms["AdS3"]))
    assert red.bispace.size == 1


@pytest.mark.parametrize("name", FIXTURES)
def test_extension(xms, name):
    xm = xms[name]
    ident = identity_morphism(xm)
    for xi in range(xm.H.order):
        X = standard_bispace(xm, xi)
        assert find_isomorphism(extend(X, ident), X) is not None
        red = reduce_to_kernel(X)
        if red is not None:
            _, incl = kernel_submodule(xm)
            assert find_isomorphism(extend(red.bispace, incl), X) is not None
        target, proj = image_module(xm)
        Y = extend(X, proj)
        assert Y.size == len(xm.tG.elements)
        assert type_of(Y).coset == target.coset(X.psi[0])


def test_extension_mismatch(xms):
    with pytest.raises(MismatchError):
        extend(trivial_bispace(xms["J2"]), identity_morphism(xms["J3"]))


@pytest.mark.parametrize("name,order", [("J2", 2), ("J3", 2), ("J4", 2), ("V4", 1), ("AdS3", 1), ("D1Z4", 1),
                                        ("D1S3", 1)])
def test_pi0_group(xms, name, order):
    p = pi0_group(xms[name])
    assert len(p.classes) == order
    assert pi0_isomorphic_to_quotient(p)


def test_pi0_adjoint_z4():
    p = pi0_group(adjoint_module(cyclic_group(4)))
    assert len(p.classes) == 2 and pi0_isomorphic_to_quotient(p)


def test_doc_round_trip(xms):
    for xm in xms.values():
        for xi in range(xm.H.order):
            X = standard_bispace(xm, xi)
            assert bispace_from_doc(bispace_to_doc(X), lambda n: xm) == X
        assert bispace_from_doc({"xm": "x", "standard": 0}, lambda n: xm) == trivial_bispace(xm)


@settings(max_examples=40, deadline=None)
@given(st.sampled_from(FIXTURES), st.data())
def test_relabelled_bispaces(name, data):
    xm = XMS[name]
    xi = data.draw(st.integers(0, xm.H.order - 1))
    perm = data.draw(st.permutations(range(xm.G.order)))
    X = relabel(standard_bispace(xm, xi), perm)
    T, f = canonicalize(X)
    assert T == standard_bispace(xm, X.psi[0])
    assert type_of(X).coset == xm.coset(xi)
    eta = data.draw(st.integers(0, xm.H.order - 1))
    Y = standard_bispace(xm, eta)
    assert (find_isomorphism(X, Y) is not None) == (xm.coset(xi) == xm.coset(eta))
    assert find_isomorphism(tensor(X, dual(X)), trivial_bispace(xm)) is not None


def test_random_relabel_tensor_types():
    rng = random.Random(7)
    xm = XMS["J4"]
    for _ in range(20):
        a, b = rng.randrange(2), rng.randrange(2)
        p1, p2 = list(range(4)), list(range(4))
        rng.shuffle(p1)
        rng.shuffle(p2)
        X = relabel(standard_bispace(xm, a), p1)
        Y = relabel(standard_bispace(xm, b), p2)
        assert type_of(tensor(X, Y)).coset == (a + b) % 2
