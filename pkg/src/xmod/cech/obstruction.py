"""Obstruction to lifting a t(G)-valued 1-cocycle through 1 -> G1 -> G -> t(G) -> 1."""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Sequence

from ..crossed import CrossedModule
from ..errors import CocycleError
from .abelian import CechClass, abelian_cech_cohomology, cochain_complex, enumerate_tree_normalized_cocycles
from .gfp import solve_mod_p
from .nerve import Nerve


@dataclass(frozen=True, eq=False)
class ObstructionResult:
    cech_class: CechClass  # in H^2(nerve, G1)
    lift: tuple[int, ...]  # chosen g-hat per edge (G indices)
    corrected_lift: tuple[int, ...] | None  # a genuine G-cocycle over tau when the class vanishes
    certificate: dict

    @property
    def is_zero(self) -> bool:
        return self.cech_class.is_zero


def _check_tau(nerve: Nerve, xm: CrossedModule, tau: Sequence[int]) -> tuple[int, ...]:
    tau = tuple(int(v) for v in tau)
    H = xm.H
    if len(tau) != len(nerve.edges):
        raise CocycleError("tau needs one value per edge")
    for e, v in enumerate(tau):
        if not 0 <= v < H.order or v not in xm.tG:
            raise CocycleError(f"tau on edge {list(nerve.edges[e])} is not in t(G)", witness={"edge": list(nerve.edges[e])})
    eidx = nerve.edge_index
    for i, j, k in nerve.triangles:
        if H.mul[tau[eidx[(i, j)]]][tau[eidx[(j, k)]]] != tau[eidx[(i, k)]]:
            raise CocycleError(f"tau is not a cocycle on {[i, j, k]}", witness={"triangle": [i, j, k]})
    return tau


def _defect(nerve: Nerve, xm: CrossedModule, lift: Sequence[int]) -> tuple[int, ...]:
    """c_ijk = g_ij g_jk g_ik^-1 as G1-group indices."""
    G = xm.G
    pos = xm.G1.index_of
    eidx = nerve.edge_index
    out = []
    for i, j, k in nerve.triangles:
        v = G.mul[G.mul[lift[eidx[(i, j)]]][lift[eidx[(j, k)]]]][G.inv[lift[eidx[(i, k)]]]]
        if v not in pos:
            raise AssertionError("lift defect left ker t")
        out.append(pos[v])
    return tuple(out)


def lifting_obstruction(nerve: Nerve, xm: CrossedModule, tau: Sequence[int],
                        recheck: int = 3, seed: int = 0) -> ObstructionResult:
    """Class in H^2(nerve, G1) of the defect of a lift of tau to G.

    The lift uses the least preimage of each tau_ij.  ``recheck`` further
    random lifts are drawn and their defects must land in the same class.
    """
    tau = _check_tau(nerve, xm, tau)
    G = xm.G
    lift = tuple(xm.t_section[v] for v in tau)
    c = _defect(nerve, xm, lift)
    coh = abelian_cech_cohomology(nerve, xm.G1_group[0], 2)
    cx = coh.complex
    assert cx.is_cocycle(2, c), "lift defect is not a 2-cocycle"
    cls = coh.classify(c)

    G1 = xm.G1.elements
    rng = random.Random(seed)
    for _ in range(recheck):
        other = tuple(G.mul[g][rng.choice(G1)] for g in lift)
        c2 = _defect(nerve, xm, other)
        assert cls.same_class(coh.classify(c2)), "obstruction class depends on the lift"

    certificate = {"method": "smith", "primitive_exists": cls.is_zero}
    orders = cx.decomposition.orders
    if len(orders) == 1 and _is_prime(orders[0]):
        p = orders[0]
        vec = cx.to_coords(c)[0]
        sol = solve_mod_p(cx.matrices[1], vec, p, cx.dim(1))
        certificate["gf"] = {"p": p, "solvable": sol is not None}
        assert (sol is not None) == cls.is_zero, "GF(p) and Smith solvers disagree"
    elif len(orders) == 0:
        certificate["gf"] = {"p": None, "solvable": True}

    corrected = None
    if cls.is_zero:
        _, incl = xm.G1_group
        x = cls.witness
        corrected = tuple(G.mul[g][G.inv[incl.map[x[e]]]] for e, g in enumerate(lift))
        assert all(v == 0 for v in _defect(nerve, xm, corrected))
        assert all(xm.t.map[g] == tv for g, tv in zip(corrected, tau))
    return ObstructionResult(cls, lift, corrected, certificate)


def _is_prime(n: int) -> bool:
    return n > 1 and all(n % d for d in range(2, int(n ** 0.5) + 1))


def nontrivial_h1_generator(nerve: Nerve, xm: CrossedModule) -> tuple[int, ...] | None:
    """Least nonzero tree-normalized t(G)-valued 1-cocycle (as H indices), e.g. w1 on RP26."""
    tG, incl = xm.tG.as_group()
    if not tG.is_abelian:
        return None
    reps = enumerate_tree_normalized_cocycles(cochain_complex(nerve, tG))
    nonzero = [r for r in reps if any(r)]
    if not nonzero:
        return None
    return tuple(incl.map[v] for v in min(nonzero))
