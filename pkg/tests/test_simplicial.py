from __future__ import annotations

import json
from itertools import combinations

import pytest
from hypothesis import given, settings

from sqbgg.exactla import GF2, QQ, MalformedInputError
from sqbgg.simplicial import (
    SimplicialComplex,
    alexander_dual,
    format_subset,
    induced_subcomplex,
    mask_to_vertices,
    popcount,
    reduced_homology,
    vertices_to_mask,
)

from strategies import complexes, fields


def cx(n, facets):
    return SimplicialComplex.from_vertex_lists(n, facets)


TRI = cx(3, [[1, 2], [1, 3], [2, 3]])
TWO_EDGES = cx(4, [[1, 2], [3, 4]])


def test_masks_and_formatting():
    assert vertices_to_mask([1, 3]) == 0b101
    assert mask_to_vertices(0b101) == [1, 3]
    assert format_subset(0) == "-"
    assert format_subset(0b111) == "1,2,3"


def test_degenerate_states_are_distinct():
    void, irr, full = SimplicialComplex.void(3), SimplicialComplex.irrelevant(3), SimplicialComplex.simplex(3)
    assert void.faces == frozenset()
    assert irr.faces == frozenset({0})
    assert len(full.faces) == 8
    assert len({void, irr, full}) == 3


def test_facets_form_antichain():
    d = SimplicialComplex.from_facets(3, [0b011, 0b001, 0b110])
    assert d.facets == frozenset({0b011, 0b110})
    with pytest.raises(ValueError):
        SimplicialComplex(3, frozenset({0b011, 0b001}))


def test_alexander_dual_examples():
    assert alexander_dual(SimplicialComplex.simplex(3)).is_void
    assert alexander_dual(TRI) == SimplicialComplex.irrelevant(3)
    assert alexander_dual(TWO_EDGES) == cx(4, [[1, 3], [1, 4], [2, 3], [2, 4]])
    assert alexander_dual(SimplicialComplex.void(3)) == SimplicialComplex.simplex(3)


@settings(max_examples=200, deadline=None)
@given(complexes(n_max=6))
def test_alexander_dual_definition_and_involution(d):
    full = d.full
    expected = {F for F in range(1 << d.n) if (full ^ F) not in d.faces}
    dd = alexander_dual(d)
    assert dd.faces == frozenset(expected)
    assert alexander_dual(dd) == d


def test_induced_subcomplex_examples():
    assert induced_subcomplex(TRI, 0b011) == cx(2, [[1, 2]])
    assert induced_subcomplex(TRI, 0) == SimplicialComplex.irrelevant(0)
    assert induced_subcomplex(SimplicialComplex.void(3), 0b101).is_void


def test_induced_subcomplex_relabels_in_order():
    d = cx(4, [[2, 4], [3]])
    sub = induced_subcomplex(d, vertices_to_mask([2, 3, 4]))
    assert sub == cx(3, [[1, 3], [2]])


def test_reduced_homology_examples():
    irr = reduced_homology(SimplicialComplex.irrelevant(3))
    assert irr[0] == 1 and sum(irr) == 1
    tri = reduced_homology(TRI)
    assert tri[2] == 1 and sum(tri) == 1          # index k holds degree k - 1
    two = reduced_homology(TWO_EDGES)
    assert two[1] == 1 and sum(two) == 1


def test_reduced_homology_vector_shape():
    assert len(reduced_homology(TRI)) == TRI.n + 1   # degrees -1 .. n-1


@pytest.mark.parametrize("n", [1, 2, 3, 5])
def test_full_simplex_and_void_are_acyclic(n):
    assert not any(reduced_homology(SimplicialComplex.simplex(n)))
    assert not any(reduced_homology(SimplicialComplex.void(n)))


def test_projective_plane_depends_on_characteristic():
    # 6-vertex triangulation of RP^2
    rp2 = cx(6, [[1, 2, 3], [1, 3, 4], [1, 4, 5], [1, 5, 6], [1, 2, 6],
                 [2, 3, 5], [2, 4, 5], [2, 4, 6], [3, 4, 6], [3, 5, 6]])
    assert not any(reduced_homology(rp2, QQ))
    h2 = reduced_homology(rp2, GF2)
    assert h2[2] == 1 and h2[3] == 1


@settings(max_examples=150, deadline=None)
@given(complexes(n_max=6), fields)
def test_euler_characteristic(d, field):
    # alternating sum of reduced Betti numbers = reduced Euler characteristic of the face counts
    chi = sum((-1) ** (popcount(F) - 1) for F in d.faces)
    h = reduced_homology(d, field)
    assert sum((-1) ** (k - 1) * v for k, v in enumerate(h)) == chi


@settings(max_examples=150, deadline=None)
@given(complexes(n_min=1, n_max=6), fields)
def test_homology_duality_identity(d, field):
    n = d.n
    h = reduced_homology(d, field)
    hd = reduced_homology(alexander_dual(d), field)

    def at(v, deg):
        return v[deg + 1] if 0 <= deg + 1 < len(v) else 0

    for i in range(n + 2):
        assert at(h, n - i - 1) == at(hd, i - 2)


def test_json_roundtrip_and_format():
    text = TRI.to_json()
    assert json.loads(text) == {"n": 3, "facets": [[1, 2], [1, 3], [2, 3]]}
    assert SimplicialComplex.from_json(text) == TRI
    void = SimplicialComplex.void(2)
    assert json.loads(void.to_json()) == {"n": 2, "facets": [], "void": True}
    assert SimplicialComplex.from_json(void.to_json()) == void
    assert SimplicialComplex.from_json('{"n": 3, "facets": [[]]}') == SimplicialComplex.irrelevant(3)


@settings(max_examples=100, deadline=None)
@given(complexes(n_max=6))
def test_json_roundtrip_property(d):
    assert SimplicialComplex.from_json(d.to_json()) == d


@pytest.mark.parametrize("text", [
    '{"n": 2, "facets": [[1, 3]]}',
    '{"n": 2, "facets": [[0]]}',
    '{"facets": [[1]]}',
    '{"n": "3", "facets": []}',
    '{"n": 2, "facets": [[1]], "void": true}',
    '{"n": 2, "facets": [1, 2]}',
    '[1, 2]',
    '{"n": 2,',
])
def test_malformed_complex_json(text):
    with pytest.raises(MalformedInputError):
        SimplicialComplex.from_json(text)


def test_faces_are_downward_closure():
    d = cx(4, [[1, 2, 3], [3, 4]])
    expected = set()
    for f in ([1, 2, 3], [3, 4]):
        for k in range(len(f) + 1):
            for sub in combinations(f, k):
                expected.add(vertices_to_mask(sub))
    assert d.faces == frozenset(expected)
    assert d.minimal_nonfaces() == frozenset({vertices_to_mask([1, 4]), vertices_to_mask([2, 4])})
