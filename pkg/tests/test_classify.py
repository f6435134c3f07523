import itertools

import pytest

from xmod.cech.classify import (enumerate_pi0, enumeration_size, exact_sequence_report, vertexwise_tau)
from xmod.cech.cocycle import BibundleCocycle, dual_cocycle, equivalent, is_trivial, tensor_cocycle, type_map
from xmod.cech.nerve import builtin_nerves
from xmod.crossed import builtin_crossed_modules
from xmod.errors import BudgetExceeded

from conftest import brute_cocycles, brute_orbits

XMS = builtin_crossed_modules()
NERVES = builtin_nerves()


def test_catalog_examples():
    cat = enumerate_pi0(NERVES["Disc2"], XMS["J3"])
    assert cat.order == 2 and cat.types() == ((0,), (1,))
    assert cat.table == ((0, 1), (1, 0))
    assert enumerate_pi0(NERVES["Circ3"], XMS["J3"]).order == 6
    assert enumerate_pi0(NERVES["Disc2"], XMS["V4"]).order == 1


def test_j3_circ3_group_is_s3():
    cat = enumerate_pi0(NERVES["Circ3"], XMS["J3"])
    assert any(cat.table[a][b] != cat.table[b][a] for a in range(6) for b in range(6))
    # 3 classes of type 0 (a Z3) and 3 involutions of type 1: the dihedral group of order 6
    orders = []
    for a in range(6):
        k, x = 1, a
        while x != 0:
            x = cat.table[x][a]
            k += 1
        orders.append(k)
    assert sorted(orders) == [1, 2, 2, 2, 3, 3]
    assert sum(ty == (0,) for ty in cat.types()) == 3


@pytest.mark.parametrize("xm,nerve", [("J3", "Circ3"), ("J2", "Sphere"), ("V4", "Disc2"), ("D1Z4", "Circ3"),
                                      ("V4", "Circ3"), ("J4", "Disc2"), ("D1S3", "Disc2")])
def test_catalog_matches_brute_orbits(xm, nerve):
    xm, N = XMS[xm], NERVES[nerve]
    cat = enumerate_pi0(N, xm)
    orbits = brute_orbits(brute_cocycles(N, xm), xm, N)
    assert cat.order == len(orbits)
    for o in orbits:
        assert len({cat.index_of(BibundleCocycle(N, xm, *key)) for key in o}) == 1


@pytest.mark.parametrize("xm,nerve", [("J3", "Circ3"), ("J4", "Circ3"), ("AdS3", "Circ3"), ("J2", "RP26")])
def test_catalog_table_is_tensor(xm, nerve):
    xm, N = XMS[xm], NERVES[nerve]
    cat = enumerate_pi0(N, xm)
    triv = cat.classes[0]
    assert is_trivial(triv) is not None
    for a, b in itertools.product(range(cat.order), repeat=2):
        ab = tensor_cocycle(cat.classes[a], cat.classes[b])
        assert equivalent(ab, cat.classes[cat.table[a][b]]) is not None
    for a in range(cat.order):
        assert cat.index_of(dual_cocycle(cat.classes[a])) == cat.inverse[a]
        assert type_map(cat.classes[a]).values == cat.types()[a]


def test_budget():
    N, xm = NERVES["RP26"], XMS["AdS3"]
    assert enumeration_size(N, xm) == 6 ** 10
    with pytest.raises(BudgetExceeded) as ei:
        enumerate_pi0(N, xm)
    assert ei.value.witness == {"states": 6 ** 10, "max_enum": 10 ** 7}
    with pytest.raises(BudgetExceeded):
        enumerate_pi0(NERVES["Circ3"], XMS["J3"], max_enum=5)
    assert enumerate_pi0(NERVES["Circ3"], XMS["J3"], max_enum=6).order == 6


def test_vertexwise_tau_is_trivial():
    for N in NERVES.values():
        xm = XMS["J3"]
        for phi in itertools.product(range(2), repeat=N.n_components):
            assert vertexwise_tau(N, xm, phi) == (0,) * len(N.edges)


EXPECTED = {
    # (h1, pi0_bibun, map, ker_eps)
    ("J3", "Circ3"): (3, 6, 2, 2),
    ("J2", "Sphere"): (1, 2, 2, 2),
    ("V4", "Disc2"): (1, 1, 1, 1),
    ("V4", "RP26"): (2, 2, 1, 1),
    ("J2", "RP26"): (2, 4, 2, 2),
    ("J3", "RP26"): (1, 2, 2, 2),
}


@pytest.mark.parametrize("xm", ["J2", "J3", "V4", "AdS3"])
@pytest.mark.parametrize("nerve", ["Disc2", "Circ3", "Sphere", "RP26"])
def test_exact_sequence_grid(xm, nerve):
    N = NERVES[nerve]
    if xm == "AdS3" and nerve == "RP26":
        with pytest.raises(BudgetExceeded):
            exact_sequence_report(N, XMS[xm])
        return
    rep = exact_sequence_report(N, XMS[xm])
    assert rep.exact and rep.iota_homomorphism and rep.eps_homomorphism
    assert rep.witnesses == []
    assert rep.pi0_order == rep.h1_order * rep.ker_eps_order
    if (xm, nerve) in EXPECTED:
        assert (rep.h1_order, rep.pi0_order, rep.map_order, rep.ker_eps_order) == EXPECTED[(xm, nerve)]


def test_report_dict_layout():
    d = exact_sequence_report(NERVES["Circ3"], XMS["J3"]).to_dict()
    assert list(d) == ["nerve", "xm", "h1", "pi0_bibun", "map", "ker_eps", "checks", "eps_homomorphism_observed",
                       "exact", "witnesses"]
    assert d["h1"] == {"order": 3, "invariant_factors": [3]}
    assert d["exact"] is True
