from __future__ import annotations

import pytest
from hypothesis import given, settings

from sqbgg.betti import (
    BettiTable,
    betti_bgg,
    betti_hochster,
    betti_koszul,
    betti_resolution,
    extremal,
    projdim_reg,
)
from sqbgg.exactla import GF2, QQ
from sqbgg.simplicial import SimplicialComplex, alexander_dual
from sqbgg.sqmod import alexander, free_module, residue_field, sr_module, zero_module

from strategies import complexes, cone_complexes, fields


def cx(n, facets):
    return SimplicialComplex.from_vertex_lists(n, facets)


def mask(*vs):
    return sum(1 << (v - 1) for v in vs)


TRI = cx(3, [[1, 2], [1, 3], [2, 3]])
MAXIDEAL3 = sr_module(SimplicialComplex.irrelevant(3), "ideal")


def test_hochster_examples():
    t = betti_hochster(TRI)
    assert t[(1, mask(1, 2, 3))] == 1
    assert betti_hochster(SimplicialComplex.simplex(3)).entries == {(0, 0): 1}
    t = betti_hochster(cx(4, [[1, 2], [3, 4]]))
    assert t[(3, mask(1, 2, 3, 4))] == 1


def test_hochster_ideal_shift_and_void():
    assert betti_hochster(TRI, "ideal").entries == {(0, mask(1, 2, 3)): 1}
    assert betti_hochster(SimplicialComplex.void(3), "ideal").entries == {(0, 0): 1}
    assert betti_hochster(SimplicialComplex.void(3)).entries == {}
    with pytest.raises(ValueError):
        betti_hochster(TRI, "bogus")


def test_bgg_route_examples():
    assert betti_bgg(sr_module(TRI, "face-ring")).entries == {(0, 0): 1, (1, mask(1, 2, 3)): 1}
    K = betti_bgg(residue_field(3, QQ))
    assert sorted(K.coarse().items()) == [((0, 0), 1), ((1, 1), 3), ((2, 2), 3), ((3, 3), 1)]
    assert betti_bgg(zero_module(3, QQ)).entries == {}


@settings(max_examples=80, deadline=None)
@given(complexes(n_max=5), fields)
def test_four_routes_agree(d, field):
    for which in ("face-ring", "ideal"):
        M = sr_module(d, which, "S", field)
        k = betti_koszul(M)
        assert k == betti_hochster(d, which, field) == betti_resolution(M) == betti_bgg(M)
        assert all(0 <= i <= d.n for i, _ in k.entries)


@settings(max_examples=40, deadline=None)
@given(cone_complexes(n_max=4))
def test_koszul_and_bgg_agree_on_complexes(C):
    assert betti_koszul(C) == betti_bgg(C)


def test_resolution_route_refuses_complexes():
    from sqbgg.harness import random_cone_complex
    import random

    C = random_cone_complex(3, random.Random(0), QQ)
    assert not C.is_module()
    with pytest.raises(ValueError):
        betti_resolution(C)


def test_extremal_examples():
    assert extremal(betti_koszul(sr_module(TRI, "face-ring"))).entries == {(1, mask(1, 2, 3)): 1}
    assert extremal(BettiTable(3, {(0, 0): 1})).entries == {(0, 0): 1}
    assert extremal(betti_koszul(MAXIDEAL3)).entries == {(2, mask(1, 2, 3)): 1}


def test_extremal_weak_inequality_is_needed_for_bcp():
    # Δ = <12, 13>: K[Δ] has table {(0,∅), (1,{23})}; 𝐀(K[Δ]) = (x2, x3)
    d = cx(3, [[1, 2], [1, 3]])
    M = sr_module(d, "face-ring")
    tM, tA = betti_koszul(M), betti_koszul(alexander(M))
    assert tA.entries == {(0, mask(2)): 1, (0, mask(3)): 1, (1, mask(2, 3)): 1}

    def moved(t, variant):
        return {(bin(F).count("1") - i, F): v for (i, F), v in extremal(t, "fine", variant).entries.items()}

    assert moved(tM, "weak") == extremal(tA, "fine", "weak").entries
    # with a strict ">" the generators of (x2, x3) would count as extremal, with no partner
    assert moved(tM, "strict") != extremal(tA, "fine", "strict").entries


def test_extremal_coarse_uses_coarsened_table():
    t = betti_koszul(MAXIDEAL3)
    assert extremal(t, "coarse").entries == {(2, 3): 1}
    ring = betti_koszul(sr_module(TRI, "face-ring"))
    assert extremal(ring, "coarse").entries == {(1, 3): 1}
    with pytest.raises(ValueError):
        extremal(t, "diagonal")


@settings(max_examples=80, deadline=None)
@given(complexes(n_max=5))
def test_top_degree_betti_numbers_are_extremal(d):
    t = betti_koszul(sr_module(d, "face-ring"))
    full = d.full
    ext = extremal(t).entries
    for (i, F), v in t.entries.items():
        if F == full:
            # nothing lies north-east of the top degree with the same or larger index
            later = [(j, G) for (j, G) in t.entries if G == full and j > i]
            if not later:
                assert ext.get((i, F)) == v


def test_projdim_reg_examples():
    assert projdim_reg(betti_koszul(sr_module(TRI, "face-ring"))) == (1, 2)
    assert projdim_reg(betti_koszul(MAXIDEAL3)) == (2, 1)
    assert projdim_reg(betti_koszul(residue_field(4, QQ))) == (4, 0)
    assert projdim_reg(BettiTable(3, {})) == (None, None)


@settings(max_examples=60, deadline=None)
@given(complexes(n_max=5), fields)
def test_projdim_is_reg_of_alexander_dual(d, field):
    M = sr_module(d, "face-ring", "S", field)
    pd, reg = projdim_reg(betti_koszul(M))
    pdA, regA = projdim_reg(betti_koszul(sr_module(alexander_dual(d), "ideal", "S", field)))
    assert (pd, reg) == (regA, pdA)


def test_table_formats():
    t = betti_koszul(sr_module(TRI, "face-ring"))
    assert t.to_tsv() == "0\t-\t1\n1\t1,2,3\t1\n"
    assert t.grid() == "       0 1\ntotal: 1 1\n    0: 1 .\n    1: . .\n    2: . 1\n"
    assert BettiTable(3, {}).to_tsv() == ""
    with pytest.raises(ValueError):
        BettiTable(2, {(0, 0): 0})
    with pytest.raises(ValueError):
        BettiTable(2, {(0, 0b100): 1})


def test_free_module_table():
    assert betti_koszul(free_module(4, GF2)).entries == {(0, 0): 1}
